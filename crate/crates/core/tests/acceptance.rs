//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::Instant;

use itertools::Itertools;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semires::cli::selftest;
use semires::indispensability::{cross_validate, strong_indisp, UniquenessOutcome};
use semires::invariants::{default_truncation, hilbert_series, k_polynomial, pf_from_betti};
use semires::presentation::{
    classify, from_bresinsky, from_komeda, BresinskyParams, ClassTag, KomedaParams,
};
use semires::resolution::{
    duality_check, expected_betti_numbers, resolve, verify_complex, verify_pfaffian,
    verify_witness_minors, GradedResolution,
};
use semires::semigroup::NumericalSemigroup;

const PER_CLASS: usize = 500;

/// Membership in `S` up to a bound past the Frobenius number, by dynamic
/// programming over the generators.
struct Oracle {
    member: Vec<bool>,
}

impl Oracle {
    fn new(gens: &[u64]) -> Self {
        let lo = *gens.iter().min().unwrap();
        let hi = *gens.iter().max().unwrap();
        // Every integer >= (lo - 1)(hi - 1) lies in S.
        let bound = (lo * hi + hi) as usize;
        let mut member = vec![false; bound + 1];
        member[0] = true;
        for x in 1..=bound {
            member[x] = gens
                .iter()
                .any(|&g| g as usize <= x && member[x - g as usize]);
        }
        Oracle { member }
    }

    fn contains(&self, x: i64) -> bool {
        x >= 0 && (x as usize >= self.member.len() || self.member[x as usize])
    }

    fn frobenius(&self) -> i64 {
        self.member
            .iter()
            .rposition(|&m| !m)
            .map_or(-1, |x| x as i64)
    }

    fn pseudofrobenius(&self, gens: &[u64]) -> Vec<i64> {
        (1..=self.frobenius())
            .filter(|&x| !self.contains(x) && gens.iter().all(|&g| self.contains(x + g as i64)))
            .collect()
    }

    /// No two Betti degrees of one level differ by an element of `S`.
    fn differences_verdict(
        &self,
        r: &GradedResolution,
        levels: impl Iterator<Item = usize>,
    ) -> bool {
        levels.into_iter().all(|i| {
            r.level(i)
                .iter()
                .tuple_combinations()
                .all(|(a, b)| !self.contains(*b as i64 - *a as i64))
        })
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn report(n: usize, name: &str, o: Outcome, t: Instant) -> bool {
    println!(
        "{} criterion {n}: {name} ({}; {:.1}s)",
        if o.passed { "PASS" } else { "FAIL" },
        o.detail,
        t.elapsed().as_secs_f64()
    );
    o.passed
}

fn distinct(
    rng: &mut ChaCha8Rng,
    want: ClassTag,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Option<NumericalSemigroup>,
) -> Vec<NumericalSemigroup> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..200 * PER_CLASS {
        if out.len() == PER_CLASS {
            break;
        }
        let Some(s) = draw(rng) else { continue };
        let mut key = s.generators().to_vec();
        key.sort_unstable();
        if seen.contains(&key) || classify(&s).map(|c| c.tag()).ok() != Some(want) {
            continue;
        }
        seen.insert(key);
        out.push(s);
    }
    out
}

fn herzog_instances(rng: &mut ChaCha8Rng) -> Vec<NumericalSemigroup> {
    distinct(rng, ClassTag::ThreeGenNonSymmetric, |rng| {
        let g: Vec<u64> = (0..3).map(|_| rng.gen_range(3..=200)).collect();
        NumericalSemigroup::new(&g).ok()
    })
}

fn bresinsky_instances(rng: &mut ChaCha8Rng) -> Vec<NumericalSemigroup> {
    distinct(rng, ClassTag::FourGenSymmetricNonCI, |rng| {
        let mut a = || rng.gen_range(1..=5);
        from_bresinsky(BresinskyParams {
            alpha_21: a(),
            alpha_31: a(),
            alpha_32: a(),
            alpha_42: a(),
            alpha_13: a(),
            alpha_43: a(),
            alpha_14: a(),
            alpha_24: a(),
        })
        .ok()
    })
}

fn komeda_instances(rng: &mut ChaCha8Rng) -> Vec<NumericalSemigroup> {
    distinct(rng, ClassTag::FourGenPseudosymmetric, |rng| {
        let alpha = [(); 4].map(|_| rng.gen_range(2..=9));
        let alpha_21 = rng.gen_range(1..alpha[0]);
        from_komeda(KomedaParams { alpha, alpha_21 }).ok()
    })
}

/// Resolution checks shared by every class.
fn verified_resolution(s: &NumericalSemigroup) -> Result<(), String> {
    let gens = s.generators();
    let oracle = Oracle::new(gens);
    let c = classify(s).map_err(|e| e.to_string())?;
    let r = resolve(s).map_err(|e| e.to_string())?;
    let complex = verify_complex(&r);
    if !complex.passed {
        return Err(format!(
            "{s}: not a graded complex: {:?}",
            complex.failures.first()
        ));
    }
    let betti = r.betti_numbers();
    if Some(betti.as_slice()) != expected_betti_numbers(c.tag()) {
        return Err(format!("{s}: Betti numbers {betti:?}"));
    }
    let euler: i64 = betti
        .iter()
        .enumerate()
        .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
        .sum();
    if euler != 0 {
        return Err(format!("{s}: alternating Betti sum {euler}"));
    }
    let pf = oracle.pseudofrobenius(gens);
    if betti[s.k() - 1] != pf.len() {
        return Err(format!(
            "{s}: last Betti number {} but type {}",
            betti[s.k() - 1],
            pf.len()
        ));
    }
    if pf_from_betti(&r) != pf {
        return Err(format!(
            "{s}: PF {:?} from Betti degrees, {pf:?} by definition",
            pf_from_betti(&r)
        ));
    }
    let d = default_truncation(s);
    let series = hilbert_series(&k_polynomial(&r), gens, d);
    if let Some(x) = (0..=d as i64).find(|&x| (series[x as usize] == 1) != oracle.contains(x)) {
        return Err(format!(
            "{s}: Hilbert coefficient {} at degree {x}",
            series[x as usize]
        ));
    }
    if series.iter().any(|&c| c != 0 && c != 1) {
        return Err(format!("{s}: Hilbert series has a coefficient outside 0/1"));
    }
    Ok(())
}

fn first_errors(errors: &[String]) -> String {
    errors.iter().take(3).join("; ")
}

fn criterion_examples(names: &[&str]) -> Outcome {
    let checks: Vec<_> = selftest()
        .into_iter()
        .filter(|c| names.iter().any(|n| c.name.contains(n)))
        .collect();
    let failing: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    Outcome {
        passed: !checks.is_empty() && failing.is_empty(),
        detail: if failing.is_empty() {
            format!("{} checks", checks.len())
        } else {
            first_errors(&failing)
        },
    }
}

fn criterion_1() -> Outcome {
    criterion_examples(&["<7,9,10>"])
}

fn criterion_2() -> Outcome {
    criterion_examples(&["<7,9,8,13>"])
}

fn criterion_3() -> Outcome {
    criterion_examples(&["<13,9,11,14>", "Komeda ("])
}

fn criterion_4() -> Outcome {
    let cases: &[(&[u64], bool)] = &[
        (&[4, 6, 5], true),
        (&[4, 6, 7], true),
        (&[4, 6, 9], false),
        (&[4, 6, 11], false),
        (&[4, 6, 13], false),
        (&[4, 6, 15], false),
        (&[8, 12, 10, 9], true),
        (&[8, 12, 10, 11], true),
        (&[8, 12, 10, 13], true),
        (&[8, 12, 10, 17], false),
        (&[8, 12, 10, 19], false),
        (&[75, 180, 119, 136], true),
        (&[5, 12, 11, 14], false),
        (&[5, 11, 8, 12], false),
    ];
    let mut errors = Vec::new();
    for (g, want) in cases {
        let s = NumericalSemigroup::new(g).unwrap();
        match strong_indisp(&s) {
            Ok(r) if r.verdict == *want => {}
            Ok(r) => errors.push(format!("{s}: verdict {}", r.verdict)),
            Err(e) => errors.push(format!("{s}: {e}")),
        }
    }
    // Which levels fail, recomputed from the Betti degrees.
    for (g, failing) in [
        (&[5u64, 12, 11, 14][..], vec![2]),
        (&[5, 11, 8, 12], vec![1, 2]),
    ] {
        let s = NumericalSemigroup::new(g).unwrap();
        let oracle = Oracle::new(g);
        let r = resolve(&s).unwrap();
        let got: Vec<usize> = (1..=2)
            .filter(|&i| !oracle.differences_verdict(&r, std::iter::once(i)))
            .collect();
        if got != failing {
            errors.push(format!("{s}: failing levels {got:?}"));
        }
    }
    Outcome {
        passed: errors.is_empty(),
        detail: if errors.is_empty() {
            format!("{} semigroups", cases.len())
        } else {
            first_errors(&errors)
        },
    }
}

fn criterion_5(families: &[(&str, Vec<NumericalSemigroup>)]) -> Outcome {
    let mut errors = Vec::new();
    let mut counts = Vec::new();
    for (name, instances) in families {
        counts.push(format!("{name} {}", instances.len()));
        if instances.len() < PER_CLASS {
            errors.push(format!("only {} {name} instances", instances.len()));
        }
        errors.extend(
            instances
                .iter()
                .filter_map(|s| verified_resolution(s).err()),
        );
    }
    Outcome {
        passed: errors.is_empty(),
        detail: if errors.is_empty() {
            counts.join(", ")
        } else {
            first_errors(&errors)
        },
    }
}

fn criterion_6(instances: &[NumericalSemigroup]) -> Outcome {
    let mut errors = Vec::new();
    for s in instances {
        let r = resolve(s).unwrap();
        let p = verify_pfaffian(&r);
        if !(p.applicable
            && p.alternating
            && p.pfaffians.len() == 5
            && p.pfaffians.iter().all(|c| c.holds)
            && p.det_11_is_f1_squared
            && p.phi3_is_phi1_transpose)
        {
            errors.push(format!("{s}: pfaffian structure {p:?}"));
        }
        if !duality_check(&r).passed {
            errors.push(format!("{s}: duality pairing"));
        }
    }
    Outcome {
        passed: !instances.is_empty() && errors.is_empty(),
        detail: if errors.is_empty() {
            format!("{} instances", instances.len())
        } else {
            first_errors(&errors)
        },
    }
}

fn criterion_7(instances: &[NumericalSemigroup]) -> Outcome {
    let mut errors = Vec::new();
    for s in instances {
        let r = resolve(s).unwrap();
        let w = verify_witness_minors(&r);
        if !w.all_two_minors_found {
            errors.push(format!("{s}: 2-minors {:?}", w.two_minors));
        }
        let oracle = Oracle::new(s.generators());
        let g = oracle.frobenius();
        let c = r.level(3);
        if c.len() != 2 || (c[1] - c[0]) as i64 * 2 != g || oracle.contains(g / 2) {
            errors.push(format!("{s}: last Betti degrees {c:?}, g = {g}"));
        }
    }
    Outcome {
        passed: !instances.is_empty() && errors.is_empty(),
        detail: if errors.is_empty() {
            format!("{} instances", instances.len())
        } else {
            first_errors(&errors)
        },
    }
}

fn criterion_8() -> Outcome {
    const MAX: u64 = 60;
    let mut errors = Vec::new();
    let (mut ci3, mut ci4, mut unamended) = (0usize, 0usize, 0usize);
    for d in [3, 4] {
        for g in (2..=MAX).combinations(d) {
            if g.iter().fold(0u64, |a, &b| a.gcd(&b)) != 1 {
                continue;
            }
            // A complete intersection glues along some pair or triple with a
            // common factor.
            let glued = g.iter().combinations(2).any(|p| p[0].gcd(p[1]) > 1)
                && (d == 3
                    || (0..4).any(|o| {
                        g.iter()
                            .enumerate()
                            .filter(|&(i, _)| i != o)
                            .fold(0u64, |a, (_, &b)| a.gcd(&b))
                            > 1
                    })
                    || [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]]
                        .iter()
                        .any(|p| g[p[0]].gcd(&g[p[1]]) > 1 && g[p[2]].gcd(&g[p[3]]) > 1));
            if !glued {
                continue;
            }
            let Ok(s) = NumericalSemigroup::new(&g) else {
                continue;
            };
            let tag = classify(&s).map(|c| c.tag()).unwrap();
            if !matches!(tag, ClassTag::ThreeGenSymmetricCI | ClassTag::FourGenCI) {
                continue;
            }
            if d == 3 {
                ci3 += 1
            } else {
                ci4 += 1
            }
            let cv = match cross_validate(&s) {
                Ok(cv) => cv,
                Err(e) => {
                    errors.push(format!("{s}: {e}"));
                    continue;
                }
            };
            let r = resolve(&s).unwrap();
            let truth = Oracle::new(&g).differences_verdict(&r, 1..d);
            if cv.closed_form.verdict != truth {
                errors.push(format!(
                    "{s}: closed form {} against oracle {truth}",
                    cv.closed_form.verdict
                ));
            }
            if cv.closed_form.criteria.iter().all(UniquenessOutcome::holds) != truth {
                unamended += 1;
            }
        }
    }
    Outcome {
        passed: errors.is_empty() && ci3 > 0 && ci4 > 0,
        detail: if errors.is_empty() {
            format!(
                "{ci3} three-generated and {ci4} four-generated complete intersections, 0 mismatches; \
                 uniqueness conditions alone would disagree on {unamended}"
            )
        } else {
            format!("{} mismatches: {}", errors.len(), first_errors(&errors))
        },
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e31_9e50);
    let mut ok = true;
    let t = Instant::now();
    ok &= report(1, "<7,9,10> reproduced", criterion_1(), t);
    let t = Instant::now();
    ok &= report(2, "<7,9,8,13> reproduced", criterion_2(), t);
    let t = Instant::now();
    ok &= report(3, "<13,9,11,14> reproduced", criterion_3(), t);
    let t = Instant::now();
    ok &= report(4, "indispensability families", criterion_4(), t);
    let t = Instant::now();
    let herzog = herzog_instances(&mut rng);
    let bresinsky = bresinsky_instances(&mut rng);
    let komeda = komeda_instances(&mut rng);
    let families = [
        ("Herzog", herzog),
        ("Bresinsky", bresinsky),
        ("Komeda", komeda),
    ];
    ok &= report(5, "verified resolutions", criterion_5(&families), t);
    let t = Instant::now();
    ok &= report(6, "pfaffian structure", criterion_6(&families[1].1), t);
    let t = Instant::now();
    ok &= report(
        7,
        "pseudosymmetric witnesses",
        criterion_7(&families[2].1),
        t,
    );
    let t = Instant::now();
    ok &= report(8, "complete intersection scan up to 60", criterion_8(), t);
    if !ok {
        std::process::exit(1);
    }
}
