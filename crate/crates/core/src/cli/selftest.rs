use serde::Serialize;

use crate::indispensability::{cross_validate, strong_indisp, uniqueness_check, Positivity};
use crate::invariants::{
    closed_form_pf, degree_relations, hilbert_check, k_polynomial, pf_from_betti, DegreeValues,
};
use crate::polyalg::sdegree;
use crate::presentation::BresinskyParams;
use crate::presentation::{
    bresinsky, ci4, classify, from_komeda, generators_ideal, herzog, komeda, Ci4Case, ClassTag,
    KomedaParams,
};
use crate::resolution::{
    duality_check, resolve, verify_complex, verify_pfaffian, verify_witness_minors,
};
use crate::semigroup::{NumericalSemigroup, Symmetry};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn sg(g: &[u64]) -> NumericalSemigroup {
    NumericalSemigroup::new(g).expect("reference generators are valid")
}

fn check<T: PartialEq + std::fmt::Debug>(name: &str, got: T, want: T) -> SelftestCheck {
    SelftestCheck {
        name: name.into(),
        passed: got == want,
        detail: format!("got {got:?}, expected {want:?}"),
    }
}

fn k_string(g: &[u64]) -> String {
    resolve(&sg(g)).map_or_else(|e| e.to_string(), |r| k_polynomial(&r).to_string())
}

fn verdict(g: &[u64]) -> Option<bool> {
    strong_indisp(&sg(g)).ok().map(|r| r.verdict)
}

fn levels(g: &[u64]) -> Vec<Vec<u64>> {
    resolve(&sg(g))
        .map(|r| r.betti_degrees())
        .unwrap_or_default()
}

/// Reference examples: the three worked semigroups, the indispensability
/// families, and the structural identities on them.
pub fn selftest() -> Vec<SelftestCheck> {
    let mut out = Vec::new();

    // <7,9,10>
    let s = sg(&[7, 9, 10]);
    out.push(check(
        "<7,9,10> class",
        classify(&s).map(|c| c.tag()).ok(),
        Some(ClassTag::ThreeGenNonSymmetric),
    ));
    out.push(check(
        "<7,9,10> not symmetric",
        s.classify_symmetry(),
        Symmetry::Pseudosymmetric,
    ));
    out.push(check("22 not in <7,9,10>", s.contains(22), false));
    out.push(check(
        "S-degrees of x1^4 and x2^3 in <7,9,10>",
        (
            sdegree(&[4, 0, 0], s.generators()).ok(),
            sdegree(&[0, 3, 0], s.generators()).ok(),
        ),
        (Some(28), Some(27)),
    ));
    out.push(check(
        "<7,9,10> f1 homogeneous of degree 28",
        resolve(&s).ok().and_then(|r| r.ideal()[0].is_homogeneous()),
        Some(28),
    ));
    out.push(check(
        "<7,9,10> resolution is a graded complex",
        resolve(&s).map(|r| verify_complex(&r).passed).ok(),
        Some(true),
    ));
    let h = herzog(&s).ok();
    out.push(check(
        "<7,9,10> Herzog parameters",
        h.map(|h| {
            (
                h.alpha, h.alpha_12, h.alpha_13, h.alpha_21, h.alpha_23, h.alpha_31, h.alpha_32,
            )
        }),
        Some(([4, 3, 3], 2, 1, 1, 2, 3, 1)),
    ));
    out.push(check(
        "<7,9,10> Betti degrees",
        levels(&[7, 9, 10]),
        vec![vec![0], vec![27, 28, 30], vec![37, 48]],
    ));
    out.push(check(
        "<7,9,10> PF by definition",
        s.pseudofrobenius(),
        vec![11, 22],
    ));
    out.push(check(
        "<7,9,10> PF from Betti degrees",
        resolve(&s).map(|r| pf_from_betti(&r)).ok(),
        Some(vec![11, 22]),
    ));
    out.push(check(
        "<7,9,10> PF closed form",
        closed_form_pf(&classify(&s).expect("classifiable"), &s).ok(),
        Some(vec![11, 22]),
    ));
    out.push(check("<7,9,10> Frobenius number", s.frobenius(), 22));
    out.push(check(
        "<7,9,10> K-polynomial",
        k_string(&[7, 9, 10]),
        "1 - z^27 - z^28 - z^30 + z^37 + z^48".to_string(),
    ));
    out.push(check(
        "<7,9,10> binomials",
        generators_ideal(&s, &classify(&s).expect("classifiable"))
            .map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>())
            .ok(),
        Some(vec![
            "x1^4 - x2^2*x3".to_string(),
            "x2^3 - x1*x3^2".to_string(),
            "x3^3 - x1^3*x2".to_string(),
        ]),
    ));
    out.push(check(
        "<7,9,10> strongly indispensable",
        verdict(&[7, 9, 10]),
        Some(true),
    ));

    // <7,9,8,13>
    let s = sg(&[7, 9, 8, 13]);
    let c = classify(&s).expect("classifiable");
    out.push(check(
        "<7,9,8,13> class",
        c.tag(),
        ClassTag::FourGenSymmetricNonCI,
    ));
    out.push(check(
        "<7,9,8,13> symmetric",
        s.classify_symmetry(),
        Symmetry::Symmetric,
    ));
    out.push(check(
        "<7,9,8,13> not a complete intersection",
        ci4(&s).is_none(),
        true,
    ));
    let b = bresinsky(&s).ok();
    out.push(check(
        "<7,9,8,13> Bresinsky parameters",
        b.map(|b| {
            let p = b.params;
            (
                b.alpha,
                [
                    p.alpha_13, p.alpha_14, p.alpha_24, p.alpha_31, p.alpha_32, p.alpha_43,
                ],
                [p.alpha_21, p.alpha_42],
            )
        }),
        Some(([3, 3, 2, 2], [1; 6], [2, 2])),
    ));
    out.push(check(
        "<7,9,8,13> n1 from the Bresinsky parameters",
        bresinsky(&s).ok().map(|b| b.params.generators()[0]),
        Some(7),
    ));
    let r = resolve(&s).expect("resolvable");
    out.push(check(
        "<7,9,8,13> resolution is a graded complex",
        verify_complex(&r).passed,
        true,
    ));
    out.push(check(
        "<7,9,8,13> Betti degrees",
        r.betti_degrees(),
        vec![
            vec![0],
            vec![16, 21, 22, 26, 27],
            vec![29, 30, 34, 35, 40],
            vec![56],
        ],
    ));
    out.push(check(
        "<7,9,8,13> PF closed form",
        closed_form_pf(&c, &s).ok(),
        Some(vec![19]),
    ));
    out.push(check(
        "<7,9,8,13> degree relations",
        degree_relations(&c, &s, &r).ok().map(|d| d.values),
        Some(DegreeValues::Symmetric {
            a: [35, 29, 40, 30, 34],
            s0: 56,
        }),
    ));
    out.push(check(
        "<7,9,8,13> degree relations consistent",
        degree_relations(&c, &s, &r)
            .map(|d| d.ensure_consistent().is_ok())
            .ok(),
        Some(true),
    ));
    out.push(check("<7,9,8,13> Frobenius number", s.frobenius(), 19));
    out.push(check(
        "<7,9,8,13> PF from Betti degrees",
        pf_from_betti(&r),
        vec![19],
    ));
    out.push(check(
        "<7,9,8,13> K-polynomial",
        k_polynomial(&r).to_string(),
        "1 - z^16 - z^21 - z^22 - z^26 - z^27 + z^29 + z^30 + z^34 + z^35 + z^40 - z^56"
            .to_string(),
    ));
    let mut members: Vec<usize> = vec![0, 7, 8, 9, 13, 14, 15, 16, 17, 18];
    members.extend(20..=40);
    out.push(check(
        "<7,9,8,13> Hilbert series to degree 40",
        hilbert_check(&r, &s, 40).ok().map(|h| {
            h.coefficients
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect::<Vec<_>>()
        }),
        Some(members.iter().map(|&i| (i, 1i64)).collect()),
    ));
    let d = duality_check(&r);
    out.push(check(
        "<7,9,8,13> duality sums",
        (
            d.passed,
            d.pairs
                .iter()
                .filter(|p| p.level == 1)
                .map(|p| p.sum)
                .collect::<Vec<_>>(),
        ),
        (true, vec![56; 5]),
    ));
    let pf = verify_pfaffian(&r);
    out.push(check(
        "<7,9,8,13> pfaffians of phi_2",
        (
            pf.alternating,
            pf.pfaffians.iter().all(|p| p.holds),
            pf.det_11_is_f1_squared,
            pf.det_22_is_f2_squared,
            pf.phi3_is_phi1_transpose,
        ),
        (true, true, true, true, true),
    ));
    out.push(check(
        "<7,9,8,13> strongly indispensable",
        verdict(&[7, 9, 8, 13]),
        Some(true),
    ));

    // <13,9,11,14>
    let s = sg(&[13, 9, 11, 14]);
    let c = classify(&s).expect("classifiable");
    out.push(check(
        "<13,9,11,14> Komeda parameters",
        komeda(&s).ok().map(|k| k.params),
        Some(KomedaParams {
            alpha: [3, 3, 2, 3],
            alpha_21: 1,
        }),
    ));
    out.push(check(
        "<13,9,11,14> pseudosymmetric",
        s.classify_symmetry(),
        Symmetry::Pseudosymmetric,
    ));
    let r = resolve(&s).expect("resolvable");
    out.push(check(
        "<13,9,11,14> resolution is a graded complex",
        verify_complex(&r).passed,
        true,
    ));
    out.push(check(
        "<13,9,11,14> Betti degrees",
        r.betti_degrees(),
        vec![
            vec![0],
            vec![22, 27, 37, 39, 42],
            vec![48, 49, 50, 51, 53, 55],
            vec![62, 77],
        ],
    ));
    out.push(check(
        "<13,9,11,14> c2 - c1 = g/2 is a gap",
        (77 - 62, s.frobenius() / 2, s.contains(15)),
        (15, 15, false),
    ));
    out.push(check(
        "<13,9,11,14> degree relations",
        degree_relations(&c, &s, &r).ok().map(|d| d.values),
        Some(DegreeValues::Pseudosymmetric {
            b: [48, 49, 50, 51, 53, 55],
            c: [62, 77],
        }),
    ));
    out.push(check(
        "<13,9,11,14> PF by definition",
        s.pseudofrobenius(),
        vec![15, 30],
    ));
    out.push(check(
        "<13,9,11,14> PF from Betti degrees",
        pf_from_betti(&r),
        vec![15, 30],
    ));
    out.push(check(
        "<13,9,11,14> PF closed form",
        closed_form_pf(&c, &s).ok(),
        Some(vec![15, 30]),
    ));
    out.push(check(
        "<13,9,11,14> K-polynomial",
        k_polynomial(&r).to_string(),
        "1 - z^22 - z^27 - z^37 - z^39 - z^42 + z^48 + z^49 + z^50 + z^51 + z^53 + z^55 - z^62 - z^77"
            .to_string(),
    ));
    out.push(check(
        "<13,9,11,14> f_5",
        generators_ideal(&s, &c).ok().map(|f| f[4].to_string()),
        Some("x1^2*x3 - x2*x4^2".to_string()),
    ));
    let ind = strong_indisp(&s).ok();
    out.push(check(
        "<13,9,11,14> not strongly indispensable, level-1 witness 20",
        ind.as_ref().map(|r| {
            (
                r.verdict,
                r.witnesses.iter().any(|w| w.level == 1 && w.diff == 20),
            )
        }),
        Some((false, true)),
    ));
    out.push(check(
        "<13,9,11,14> level-1 differences",
        ind.as_ref().and_then(|r| r.differences.get(&1).cloned()),
        Some(vec![2, 3, 5, 10, 12, 15, 17, 20]),
    ));
    let w = verify_witness_minors(&r);
    out.push(check(
        "<13,9,11,14> 2-minors of phi_3",
        w.two_minors
            .iter()
            .map(|m| (m.label.clone(), m.rows.is_some()))
            .collect::<Vec<_>>(),
        ["f1", "f4", "f5", "x3*f2", "x3*f3"]
            .iter()
            .map(|l| (l.to_string(), true))
            .collect(),
    ));
    out.push(check(
        "<13,9,11,14> 4-minor divisible by x2*f2*f4",
        w.named_products.iter().any(|(n, f)| n == "x2*f2*f4" && *f),
        true,
    ));

    // Komeda constructions and the other pseudosymmetric examples.
    out.push(check(
        "Komeda (5,2,2,2;2)",
        from_komeda(KomedaParams {
            alpha: [5, 2, 2, 2],
            alpha_21: 2,
        })
        .ok()
        .map(|s| s.generators().to_vec()),
        Some(vec![5, 12, 11, 14]),
    ));
    out.push(check(
        "Komeda (4,2,2,2;2)",
        from_komeda(KomedaParams {
            alpha: [4, 2, 2, 2],
            alpha_21: 2,
        })
        .ok()
        .map(|s| s.generators().to_vec()),
        Some(vec![5, 11, 8, 12]),
    ));
    let levels_failing = |g: &[u64]| {
        strong_indisp(&sg(g)).ok().map(|r| {
            let mut l: Vec<(usize, u64)> = r.witnesses.iter().map(|w| (w.level, w.diff)).collect();
            l.sort_unstable();
            l.dedup();
            (r.verdict, l)
        })
    };
    out.push(check(
        "<5,12,11,14> fails at level 2 only, with 10",
        levels_failing(&[5, 12, 11, 14]),
        Some((false, vec![(2, 10)])),
    ));
    out.push(check(
        "<5,11,8,12> fails at level 1 with 8 and level 2 with 10",
        levels_failing(&[5, 11, 8, 12]),
        Some((false, vec![(1, 8), (2, 10)])),
    ));

    // Complete-intersection families.
    for n3 in [5u64, 7, 9, 11, 13, 15] {
        out.push(check(
            &format!("<4,6,{n3}> strongly indispensable iff n3 in {{5,7}}"),
            verdict(&[4, 6, n3]),
            Some(n3 == 5 || n3 == 7),
        ));
    }
    for n4 in [9u64, 11, 13, 17, 19] {
        out.push(check(
            &format!("<8,12,10,{n4}> strongly indispensable iff n4 in {{9,11,13}}"),
            verdict(&[8, 12, 10, n4]),
            Some(matches!(n4, 9 | 11 | 13)),
        ));
    }
    let s = sg(&[4, 6, 5]);
    out.push(check(
        "<4,6,5> binomials",
        classify(&s)
            .and_then(|c| generators_ideal(&s, &c))
            .map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>())
            .ok(),
        Some(vec!["x1^3 - x2^2".to_string(), "x3^2 - x1*x2".to_string()]),
    ));
    let s = sg(&[75, 180, 119, 136]);
    out.push(check(
        "<75,180,119,136> class",
        classify(&s).map(|c| c.tag()).ok(),
        Some(ClassTag::FourGenCI),
    ));
    out.push(check(
        "<75,180,119,136> case II with p = 15, p' = 17 and quadruple (1,1,1,1)",
        ci4(&s).map(|d| match d.decomposition {
            Ci4Case::CaseII {
                p,
                p_prime,
                quadruple,
                pairs_12,
                pairs_34,
                ..
            } => (p, p_prime, quadruple, pairs_12.len() * pairs_34.len()),
            Ci4Case::CaseI { .. } => (0, 0, [0; 4], 0),
        }),
        Some((15, 17, [1, 1, 1, 1], 1)),
    ));
    out.push(check(
        "<75,180,119,136> strongly indispensable",
        verdict(&[75, 180, 119, 136]),
        Some(true),
    ));
    out.push(check(
        "17 over (5,12) unique and positive",
        uniqueness_check(17, &[5, 12], Positivity::AllNonzero).holds(),
        true,
    ));
    let s = sg(&[8, 12, 10, 9]);
    out.push(check(
        "<8,12,10,9> case I with l = 2 over <4,6,5>",
        ci4(&s).map(|d| match d.decomposition {
            Ci4Case::CaseI { ell, inner, .. } => Some((ell, inner.m1, inner.m2, inner.alpha_3)),
            Ci4Case::CaseII { .. } => None,
        }),
        Some(Some((2, 2, 3, 2))),
    ));
    for g in [
        &[4u64, 6, 5][..],
        &[13, 9, 11, 14],
        &[7, 9, 8, 13],
        &[75, 180, 119, 136],
    ] {
        out.push(check(
            &format!("cross-validation on {}", sg(g)),
            cross_validate(&sg(g)).is_ok(),
            true,
        ));
    }
    out.push(bresinsky_batch(200));
    out
}

/// Both indispensability routes agree on the first `n` distinct semigroups
/// of the Bresinsky family, and all of them are strongly indispensable.
fn bresinsky_batch(n: usize) -> SelftestCheck {
    let mut seen = std::collections::BTreeSet::new();
    let mut bad = Vec::new();
    'outer: for v in 0u32..3u32.pow(8) {
        let d = |i: u32| u64::from(v / 3u32.pow(i) % 3 + 1);
        let p = BresinskyParams {
            alpha_21: d(0),
            alpha_31: d(1),
            alpha_32: d(2),
            alpha_42: d(3),
            alpha_13: d(4),
            alpha_43: d(5),
            alpha_14: d(6),
            alpha_24: d(7),
        };
        let Ok(s) = crate::presentation::from_bresinsky(p) else {
            continue;
        };
        let mut key = s.generators().to_vec();
        key.sort_unstable();
        if !seen.insert(key) {
            continue;
        }
        match cross_validate(&s) {
            Ok(cv) if cv.closed_form.verdict => {}
            _ => bad.push(s.to_string()),
        }
        if seen.len() == n {
            break 'outer;
        }
    }
    SelftestCheck {
        name: format!("{n} Bresinsky semigroups strongly indispensable by both routes"),
        passed: seen.len() == n && bad.is_empty(),
        detail: format!("checked {}, failing {:?}", seen.len(), bad),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_reference_check_passes() {
        let failing: Vec<_> = selftest().into_iter().filter(|c| !c.passed).collect();
        assert!(failing.is_empty(), "{failing:#?}");
    }
}
