//! Explicit graded minimal free resolutions
//! `0 -> A^{b_{k-1}} -> ... -> A^{b_1} -> A -> k[S] -> 0`.
//!
//! Complete intersections get the Koszul complex on their binomials. The
//! other families get the explicit matrices below, with entries exactly as
//! in the closed forms. If a product of consecutive maps does not vanish,
//! [`resolve`] looks for a single entry of the later map whose sign change
//! repairs it and records the change as a [`SignAdjustment`].
//!
//! Koszul convention: the basis of level `i` is the `i`-subsets of
//! `{1, .., r}` in lex order, and the entry of `phi_i` at `(T \ {t}, T)` is
//! `(-1)^p f_t` where `p` is the zero-based position of `t` in `T`.

mod verify;

pub use verify::{
    duality_check, verify_complex, verify_pfaffian, verify_witness_minors, ComplexFailure,
    ComplexReport, DualityPair, DualityReport, FourMinorMatch, PfaffianCheck, PfaffianReport,
    TwoMinorCheck, WitnessReport,
};

use itertools::Itertools;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::polyalg::{GradedMatrix, Poly, PolyError, PolyRing};
use crate::presentation::{
    classify, generators_ideal, BresinskyData, ClassTag, Classification, HerzogData, KomedaData,
    PresentationError, RoleRing,
};
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error("no explicit resolution for class {0}")]
    UnsupportedClass(ClassTag),
    #[error("generator {index} of the complete intersection is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("expected {expected} complete-intersection generators, got {found}")]
    WrongGeneratorCount { expected: usize, found: usize },
    #[error("internal verification failure: {0}")]
    VerificationFailure(String),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

type Result<T> = std::result::Result<T, ResolutionError>;

/// A sign change applied to one entry of a closed-form matrix so that
/// consecutive maps compose to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignAdjustment {
    /// One-based index `i` of the map `phi_i` that was changed.
    pub map: usize,
    pub row: usize,
    pub col: usize,
    pub printed: String,
    pub used: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedResolution {
    class: ClassTag,
    generators: Vec<u64>,
    ideal: Vec<Poly>,
    /// `roles[r]` is the variable index playing role `x_{r+1}` in the
    /// closed-form matrices.
    roles: Vec<usize>,
    maps: Vec<GradedMatrix>,
    adjustments: Vec<SignAdjustment>,
}

impl GradedResolution {
    pub fn class(&self) -> ClassTag {
        self.class
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// `N`, the sum of the generators.
    pub fn generator_sum(&self) -> u64 {
        self.generators.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.generators.len()
    }

    /// The binomials `f_1, .., f_r` forming `phi_1`.
    pub fn ideal(&self) -> &[Poly] {
        &self.ideal
    }

    /// `phi_1, .., phi_{k-1}`.
    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    /// `phi_i`, one-based.
    pub fn map(&self, i: usize) -> &GradedMatrix {
        &self.maps[i - 1]
    }

    pub fn adjustments(&self) -> &[SignAdjustment] {
        &self.adjustments
    }

    /// Twists of level `i` in basis order.
    pub fn level_in_basis_order(&self, i: usize) -> Vec<u64> {
        if i == 0 {
            vec![0]
        } else {
            self.maps[i - 1].col_degrees().to_vec()
        }
    }

    /// Sorted twists `s_{i,1} <= .. <= s_{i,b_i}` of level `i`.
    pub fn level(&self, i: usize) -> Vec<u64> {
        let mut v = self.level_in_basis_order(i);
        v.sort_unstable();
        v
    }

    /// Sorted Betti degrees for levels `0..=k-1`.
    pub fn betti_degrees(&self) -> Vec<Vec<u64>> {
        (0..=self.maps.len()).map(|i| self.level(i)).collect()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.maps.len())
            .map(|i| if i == 0 { 1 } else { self.maps[i - 1].cols() })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let maps: Vec<Value> = self
            .maps
            .iter()
            .map(|m| {
                json!({
                    "rows": m.rows(),
                    "cols": m.cols(),
                    "row_degrees": m.row_degrees(),
                    "col_degrees": m.col_degrees(),
                    "entries": m.entry_strings(),
                })
            })
            .collect();
        json!({
            "class": self.class.as_str(),
            "generators": self.generators,
            "betti_degrees": self.betti_degrees(),
            "betti_numbers": self.betti_numbers(),
            "maps": maps,
            "adjustments": self.adjustments,
        })
    }

    /// Matrices as aligned text, one block per map.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("class: {}\n", self.class));
        out.push_str(&format!(
            "betti numbers: {}\n",
            self.betti_numbers().iter().join(" ")
        ));
        for (i, level) in self.betti_degrees().iter().enumerate() {
            out.push_str(&format!("level {i}: {}\n", level.iter().join(" ")));
        }
        for (i, m) in self.maps.iter().enumerate() {
            out.push_str(&format!(
                "\nphi_{} ({}x{}), column twists {}\n",
                i + 1,
                m.rows(),
                m.cols(),
                m.col_degrees().iter().join(" ")
            ));
            out.push_str(&render_matrix(&m.entry_strings()));
        }
        for a in &self.adjustments {
            out.push_str(&format!(
                "\nadjusted phi_{} entry ({},{}): {} -> {}\n",
                a.map,
                a.row + 1,
                a.col + 1,
                a.printed,
                a.used
            ));
        }
        out
    }
}

pub(crate) fn render_matrix(cells: &[Vec<String>]) -> String {
    let cols = cells.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in cells {
        let line = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .join("  ");
        out.push_str("  [ ");
        out.push_str(&line);
        out.push_str(" ]\n");
    }
    out
}

/// Betti numbers `(b_0, .., b_{k-1})` of each family.
pub fn expected_betti_numbers(class: ClassTag) -> Option<&'static [usize]> {
    match class {
        ClassTag::TwoGen => Some(&[1, 1]),
        ClassTag::ThreeGenSymmetricCI => Some(&[1, 2, 1]),
        ClassTag::ThreeGenNonSymmetric => Some(&[1, 3, 2]),
        ClassTag::FourGenCI => Some(&[1, 3, 3, 1]),
        ClassTag::FourGenSymmetricNonCI => Some(&[1, 5, 5, 1]),
        ClassTag::FourGenPseudosymmetric => Some(&[1, 5, 6, 2]),
        ClassTag::Unsupported => None,
    }
}

pub fn resolve(s: &NumericalSemigroup) -> Result<GradedResolution> {
    let c = classify(s)?;
    resolve_classified(s, &c)
}

pub fn resolve_classified(s: &NumericalSemigroup, c: &Classification) -> Result<GradedResolution> {
    let res = match c {
        Classification::Unsupported => return Err(ResolutionError::UnsupportedClass(c.tag())),
        Classification::TwoGen
        | Classification::ThreeGenSymmetricCI(_)
        | Classification::FourGenCI(_) => koszul(&generators_ideal(s, c)?, s)?,
        _ => {
            let printed = printed_resolution(s, c)?;
            let (maps, adjustments) = repair_signs(printed.maps)?;
            GradedResolution {
                maps,
                adjustments,
                ..printed
            }
        }
    };
    let report = verify_complex(&res);
    if !report.passed {
        return Err(ResolutionError::VerificationFailure(format!(
            "{} failing entries, first: {:?}",
            report.failures.len(),
            report.failures.first()
        )));
    }
    Ok(res)
}

/// The closed-form matrices with no sign repair, for the three families
/// that are not complete intersections.
pub fn printed_resolution(s: &NumericalSemigroup, c: &Classification) -> Result<GradedResolution> {
    let ring = PolyRing::new(s.generators());
    let ideal = generators_ideal(s, c)?;
    let phi1 = GradedMatrix::row_vector(&ring, ideal.clone())?;
    let roles: Vec<usize> = match c {
        Classification::FourGenSymmetricNonCI(b) => b.perm.to_vec(),
        Classification::FourGenPseudosymmetric(k) => k.perm.to_vec(),
        _ => (0..s.k()).collect(),
    };
    let later: Vec<Vec<Vec<Poly>>> = match c {
        Classification::ThreeGenNonSymmetric(h) => vec![herzog_phi2(&ring, h)],
        Classification::FourGenSymmetricNonCI(b) => {
            vec![
                bresinsky_phi2(&ring, b),
                ideal.iter().map(|f| vec![f.clone()]).collect(),
            ]
        }
        Classification::FourGenPseudosymmetric(k) => {
            let (phi2, phi3) = komeda_phi23(&ring, k, &ideal);
            vec![phi2, phi3]
        }
        other => return Err(ResolutionError::UnsupportedClass(other.tag())),
    };
    let mut maps = vec![phi1];
    for entries in later {
        let rows = maps.last().expect("phi_1 present").col_degrees().to_vec();
        maps.push(GradedMatrix::with_inferred_columns(&ring, entries, rows)?);
    }
    Ok(GradedResolution {
        class: c.tag(),
        generators: s.generators().to_vec(),
        ideal,
        roles,
        maps,
        adjustments: Vec::new(),
    })
}

fn herzog_phi2(ring: &PolyRing, h: &HerzogData) -> Vec<Vec<Poly>> {
    let rr = RoleRing::new(ring, &[0, 1, 2]);
    let m = |v: usize, e: u64| rr.mono(&[(v, e)]);
    vec![
        vec![m(3, h.alpha_23), m(2, h.alpha_32)],
        vec![m(1, h.alpha_31), m(3, h.alpha_13)],
        vec![m(2, h.alpha_12), m(1, h.alpha_21)],
    ]
}

fn bresinsky_phi2(ring: &PolyRing, b: &BresinskyData) -> Vec<Vec<Poly>> {
    let rr = RoleRing::new(ring, &b.perm);
    let p = &b.params;
    let m = |v: usize, e: u64| rr.mono(&[(v, e)]);
    let z = ring.zero();
    vec![
        vec![
            z.clone(),
            -m(3, p.alpha_43),
            z.clone(),
            -m(2, p.alpha_32),
            -m(4, p.alpha_24),
        ],
        vec![
            m(3, p.alpha_43),
            z.clone(),
            m(4, p.alpha_14),
            z.clone(),
            -m(1, p.alpha_31),
        ],
        vec![
            z.clone(),
            -m(4, p.alpha_14),
            z.clone(),
            -m(1, p.alpha_21),
            -m(2, p.alpha_42),
        ],
        vec![
            m(2, p.alpha_32),
            z.clone(),
            m(1, p.alpha_21),
            z.clone(),
            -m(3, p.alpha_13),
        ],
        vec![
            m(4, p.alpha_24),
            m(1, p.alpha_31),
            m(2, p.alpha_42),
            m(3, p.alpha_13),
            z,
        ],
    ]
}

/// `phi_2` (5x6) and `phi_3` (6x2, the transpose of the 2x6 closed form).
fn komeda_phi23(ring: &PolyRing, k: &KomedaData, f: &[Poly]) -> (Vec<Vec<Poly>>, Vec<Vec<Poly>>) {
    let rr = RoleRing::new(ring, &k.perm);
    let [a1, a2, a3, a4] = k.params.alpha;
    let a21 = k.params.alpha_21;
    let m = |factors: &[(usize, u64)]| rr.mono(factors);
    let z = ring.zero();
    let (f2, f3) = (f[1].clone(), f[2].clone());
    let phi2 = vec![
        vec![
            m(&[(2, 1)]),
            z.clone(),
            m(&[(3, a3 - 1)]),
            z.clone(),
            m(&[(4, 1)]),
            z.clone(),
        ],
        vec![
            z.clone(),
            f3.clone(),
            z.clone(),
            m(&[(1, 1), (3, a3 - 1)]),
            m(&[(1, a1 - a21)]),
            m(&[(4, a4 - 1)]),
        ],
        vec![
            m(&[(1, a21 + 1)]),
            -&f2,
            m(&[(4, a4 - 1)]),
            z.clone(),
            m(&[(1, 1), (2, a2 - 1)]),
            z.clone(),
        ],
        vec![
            z.clone(),
            z.clone(),
            z.clone(),
            m(&[(2, 1)]),
            m(&[(3, 1)]),
            m(&[(1, a21)]),
        ],
        vec![
            -m(&[(3, 1)]),
            z.clone(),
            -m(&[(1, a1 - a21 - 1)]),
            m(&[(4, 1)]),
            z,
            m(&[(2, a2 - 1)]),
        ],
    ];
    let printed_rows = [
        vec![
            m(&[(4, 1)]),
            -m(&[(1, 1)]),
            ring.zero(),
            m(&[(3, 1)]),
            -m(&[(2, 1)]),
            ring.zero(),
        ],
        vec![
            -m(&[(2, a2 - 1), (3, a3 - 1)]),
            m(&[(4, a4 - 1)]),
            f2,
            -m(&[(1, a1 - 1)]),
            m(&[(1, a21), (3, a3 - 1)]),
            f3,
        ],
    ];
    let phi3 = (0..6)
        .map(|r| vec![printed_rows[0][r].clone(), printed_rows[1][r].clone()])
        .collect();
    (phi2, phi3)
}

fn product_vanishes(a: &GradedMatrix, b: &GradedMatrix) -> Result<bool> {
    Ok(a.mat_mul(b)?.is_zero())
}

/// For every `phi_i phi_{i+1} != 0`, flips the sign of the first entry of
/// `phi_{i+1}` that makes both adjacent products vanish. Unrepairable
/// products are left alone for [`verify_complex`] to report.
pub fn repair_signs(
    mut maps: Vec<GradedMatrix>,
) -> Result<(Vec<GradedMatrix>, Vec<SignAdjustment>)> {
    let mut adjustments = Vec::new();
    for i in 0..maps.len().saturating_sub(1) {
        if product_vanishes(&maps[i], &maps[i + 1])? {
            continue;
        }
        let target = &maps[i + 1];
        let mut found = None;
        'search: for r in 0..target.rows() {
            for c in 0..target.cols() {
                let e = target.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let flipped = target.with_entry(r, c, -e)?;
                if !product_vanishes(&maps[i], &flipped)? {
                    continue;
                }
                if let Some(next) = maps.get(i + 2) {
                    if !product_vanishes(&flipped, next)? {
                        continue;
                    }
                }
                found = Some((r, c, flipped));
                break 'search;
            }
        }
        if let Some((r, c, flipped)) = found {
            adjustments.push(SignAdjustment {
                map: i + 2,
                row: r,
                col: c,
                printed: maps[i + 1].get(r, c).to_string(),
                used: flipped.get(r, c).to_string(),
            });
            maps[i + 1] = flipped;
        }
    }
    Ok((maps, adjustments))
}

/// Koszul complex on a complete-intersection generator list of length
/// `k - 1`.
pub fn koszul(f: &[Poly], s: &NumericalSemigroup) -> Result<GradedResolution> {
    let r = f.len();
    if r + 1 != s.k() {
        return Err(ResolutionError::WrongGeneratorCount {
            expected: s.k() - 1,
            found: r,
        });
    }
    let class = match r {
        1 => ClassTag::TwoGen,
        2 => ClassTag::ThreeGenSymmetricCI,
        3 => ClassTag::FourGenCI,
        _ => return Err(PresentationError::UnsupportedEmbeddingDimension(s.k()).into()),
    };
    let degrees: Vec<u64> = f
        .iter()
        .enumerate()
        .map(|(index, p)| {
            p.is_homogeneous()
                .ok_or(ResolutionError::NotHomogeneous { index })
        })
        .collect::<Result<_>>()?;
    let ring = PolyRing::new(s.generators());
    let subsets = |i: usize| -> Vec<Vec<usize>> { (0..r).combinations(i).collect() };
    let twist = |t: &[usize]| t.iter().map(|&j| degrees[j]).sum::<u64>();
    let mut maps = Vec::with_capacity(r);
    for i in 1..=r {
        let rows = subsets(i - 1);
        let cols = subsets(i);
        let mut entries = vec![vec![ring.zero(); cols.len()]; rows.len()];
        for (cj, t) in cols.iter().enumerate() {
            for (pos, &drop) in t.iter().enumerate() {
                let face: Vec<usize> = t.iter().copied().filter(|&x| x != drop).collect();
                let ri = rows
                    .iter()
                    .position(|x| *x == face)
                    .expect("face is a subset");
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                entries[ri][cj] = f[drop].scale(sign);
            }
        }
        maps.push(GradedMatrix::new(
            &ring,
            entries,
            rows.iter().map(|t| twist(t)).collect(),
            cols.iter().map(|t| twist(t)).collect(),
        )?);
    }
    Ok(GradedResolution {
        class,
        generators: s.generators().to_vec(),
        ideal: f.to_vec(),
        roles: (0..s.k()).collect(),
        maps,
        adjustments: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{from_bresinsky, from_komeda, BresinskyParams, KomedaParams};
    use proptest::prelude::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    #[test]
    fn herzog_levels() {
        let r = resolve(&sg(&[7, 9, 10])).unwrap();
        assert_eq!(
            r.betti_degrees(),
            vec![vec![0], vec![27, 28, 30], vec![37, 48]]
        );
        assert!(r.adjustments().is_empty());
        assert_eq!(r.map(2).entry_strings()[0], ["x3^2", "x2"]);
    }

    #[test]
    fn bresinsky_levels() {
        let r = resolve(&sg(&[7, 9, 8, 13])).unwrap();
        assert_eq!(r.level(1), vec![16, 21, 22, 26, 27]);
        assert_eq!(r.level_in_basis_order(2), vec![35, 29, 40, 30, 34]);
        assert_eq!(r.level(3), vec![56]);
        assert!(r.adjustments().is_empty());
    }

    #[test]
    fn komeda_levels_and_sign_repair() {
        let s = sg(&[13, 9, 11, 14]);
        let r = resolve(&s).unwrap();
        assert_eq!(r.level_in_basis_order(2), vec![48, 49, 50, 51, 53, 55]);
        assert_eq!(r.level_in_basis_order(3), vec![62, 77]);
        assert_eq!(r.level(1), vec![22, 27, 37, 39, 42]);
        assert_eq!(r.adjustments().len(), 1);
        let a = &r.adjustments()[0];
        assert_eq!((a.map, a.row, a.col), (3, 5, 1));
        assert_eq!(a.used, (-&r.ideal()[2]).to_string());

        let printed = printed_resolution(&s, &classify(&s).unwrap()).unwrap();
        assert!(!printed.map(2).mat_mul(printed.map(3)).unwrap().is_zero());
    }

    #[test]
    fn koszul_examples() {
        let s = sg(&[4, 6, 5]);
        let r = resolve(&s).unwrap();
        assert_eq!(r.betti_degrees(), vec![vec![0], vec![10, 12], vec![22]]);

        let s = sg(&[2, 3]);
        let r = resolve(&s).unwrap();
        assert_eq!(r.betti_degrees(), vec![vec![0], vec![6]]);

        let s = sg(&[8, 12, 10, 9]);
        let r = resolve(&s).unwrap();
        let f: u64 = r.level(1).iter().sum();
        assert_eq!(r.level(3), vec![f]);
        assert_eq!(r.betti_numbers(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn koszul_rejects_bad_input() {
        let s = sg(&[4, 6, 5]);
        let ring = PolyRing::new(s.generators());
        let bad = &ring.var(0).unwrap() + &ring.var(1).unwrap();
        assert_eq!(
            koszul(&[bad.clone(), bad.clone()], &s),
            Err(ResolutionError::NotHomogeneous { index: 0 })
        );
        assert!(matches!(
            koszul(&[bad], &s),
            Err(ResolutionError::WrongGeneratorCount { .. })
        ));
    }

    #[test]
    fn unsupported_and_wrong_dimension() {
        assert!(matches!(
            resolve(&sg(&[6, 7, 9, 10])),
            Err(ResolutionError::UnsupportedClass(ClassTag::Unsupported))
        ));
        assert!(resolve(&sg(&[19, 27, 28, 31, 32])).is_err());
    }

    #[test]
    fn level_one_matches_generator_degrees() {
        for g in [
            &[7u64, 9, 10][..],
            &[7, 9, 8, 13],
            &[13, 9, 11, 14],
            &[75, 180, 119, 136],
        ] {
            let r = resolve(&sg(g)).unwrap();
            let mut d: Vec<u64> = r
                .ideal()
                .iter()
                .map(|f| f.is_homogeneous().unwrap())
                .collect();
            d.sort_unstable();
            assert_eq!(d, r.level(1));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bresinsky_instances_form_complexes(v in prop::collection::vec(1u64..4, 8)) {
            let p = BresinskyParams {
                alpha_21: v[0], alpha_31: v[1], alpha_32: v[2], alpha_42: v[3],
                alpha_13: v[4], alpha_43: v[5], alpha_14: v[6], alpha_24: v[7],
            };
            if let Ok(s) = from_bresinsky(p) {
                let r = resolve(&s).unwrap();
                prop_assert_eq!(r.betti_numbers(), vec![1, 5, 5, 1]);
                prop_assert!(r.adjustments().is_empty());
            }
        }

        #[test]
        fn komeda_instances_need_exactly_one_flip(
            a in prop::collection::vec(2u64..5, 4), a21 in 1u64..4
        ) {
            let p = KomedaParams { alpha: [a[0], a[1], a[2], a[3]], alpha_21: a21 };
            if let Ok(s) = from_komeda(p) {
                let r = resolve(&s).unwrap();
                prop_assert_eq!(r.betti_numbers(), vec![1, 5, 6, 2]);
                prop_assert_eq!(r.adjustments().len(), 1);
            }
        }
    }
}
