//! K-polynomial, Hilbert series and pseudo-Frobenius numbers read off the
//! Betti degrees, and the closed-form degree relations of the four-generated
//! families.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::presentation::{ClassTag, Classification};
use crate::resolution::GradedResolution;
use crate::semigroup::NumericalSemigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("no closed form for class {0}")]
    UnsupportedClass(ClassTag),
    #[error("{relation}: '{first}' = {first_value} but '{second}' = {second_value}")]
    ConsistencyFailure {
        relation: String,
        first: String,
        first_value: i128,
        second: String,
        second_value: i128,
    },
    #[error("truncation degree {given} is below g(S) + 1 = {needed}")]
    TruncationTooSmall { given: u64, needed: u64 },
}

type Result<T> = std::result::Result<T, InvariantsError>;

/// Numerator `K_S(z)` of the Hilbert series over `prod (1 - z^{n_i})`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KPolynomial {
    pub terms: BTreeMap<u64, i64>,
}

impl KPolynomial {
    pub fn coefficient(&self, e: u64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// `K_S(1)`.
    pub fn value_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!({"exp": e, "coeff": c}))
            .collect();
        json!({"terms": terms, "text": self.to_string()})
    }
}

impl fmt::Display for KPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => write!(f, "z^{e}")?,
                _ => write!(f, "{a}*z^{e}")?,
            }
        }
        Ok(())
    }
}

/// `1 + sum_i (-1)^i sum_j z^{s_{i,j}}`.
pub fn k_polynomial(r: &GradedResolution) -> KPolynomial {
    let mut terms: BTreeMap<u64, i64> = BTreeMap::new();
    for (i, level) in r.betti_degrees().iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        for &s in level {
            *terms.entry(s).or_insert(0) += sign;
        }
    }
    terms.retain(|_, c| *c != 0);
    KPolynomial { terms }
}

/// Coefficients of `K(z) / prod (1 - z^{n_i})` up to `z^d`.
pub fn hilbert_series(k: &KPolynomial, generators: &[u64], d: u64) -> Vec<i64> {
    let len = d as usize + 1;
    let mut c = vec![0i64; len];
    for (&e, &v) in &k.terms {
        if (e as usize) < len {
            c[e as usize] += v;
        }
    }
    for &n in generators {
        let n = n as usize;
        for i in n..len {
            c[i] += c[i - n];
        }
    }
    c
}

/// `g(S) + N + 5`, past every Betti degree.
pub fn default_truncation(s: &NumericalSemigroup) -> u64 {
    (s.frobenius() + 5).max(0) as u64 + s.generator_sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertCheck {
    pub passed: bool,
    pub max_degree: u64,
    /// Degrees where the series coefficient differs from membership in `S`.
    pub mismatches: Vec<u64>,
    pub coefficients: Vec<i64>,
}

/// Expands the Hilbert series to degree `d` and compares every coefficient
/// with the indicator function of `S`.
pub fn hilbert_check(r: &GradedResolution, s: &NumericalSemigroup, d: u64) -> Result<HilbertCheck> {
    let needed = (s.frobenius() + 1).max(0) as u64;
    if d < needed {
        return Err(InvariantsError::TruncationTooSmall { given: d, needed });
    }
    let coefficients = hilbert_series(&k_polynomial(r), s.generators(), d);
    let mismatches: Vec<u64> = coefficients
        .iter()
        .enumerate()
        .filter(|&(i, &c)| c != i64::from(s.contains_u(i as u64)))
        .map(|(i, _)| i as u64)
        .collect();
    Ok(HilbertCheck {
        passed: mismatches.is_empty(),
        max_degree: d,
        mismatches,
        coefficients,
    })
}

/// `{ s - N : s a Betti degree of the last level }`, sorted.
pub fn pf_from_betti(r: &GradedResolution) -> Vec<i64> {
    let n = r.generator_sum() as i64;
    let mut v: Vec<i64> = r
        .level(r.maps().len())
        .iter()
        .map(|&s| s as i64 - n)
        .collect();
    v.sort_unstable();
    v
}

/// Generators in role order for the classes with closed forms.
fn role_generators(s: &NumericalSemigroup, perm: &[usize]) -> Vec<i128> {
    perm.iter().map(|&i| s.generators()[i] as i128).collect()
}

/// Pseudo-Frobenius numbers straight from the family parameters.
pub fn closed_form_pf(c: &Classification, s: &NumericalSemigroup) -> Result<Vec<i64>> {
    let total = s.generator_sum() as i128;
    let mut v: Vec<i128> = match c {
        Classification::ThreeGenNonSymmetric(h) => {
            let n = role_generators(s, &[0, 1, 2]);
            let a1n1 = h.alpha[0] as i128 * n[0];
            vec![
                a1n1 + h.alpha_23 as i128 * n[2] - total,
                a1n1 + h.alpha_32 as i128 * n[1] - total,
            ]
        }
        Classification::FourGenSymmetricNonCI(b) => {
            let n = role_generators(s, &b.perm);
            let a = b.alpha.map(|x| x as i128);
            vec![a[0] * n[0] + b.params.alpha_32 as i128 * n[1] + a[3] * n[3] - total]
        }
        Classification::FourGenPseudosymmetric(k) => {
            let n = role_generators(s, &k.perm);
            let a = k.params.alpha.map(|x| x as i128);
            vec![
                a[0] * n[0] + n[1] + n[3] - total,
                a[0] * n[0] + a[1] * n[1] + (a[2] - 1) * n[2] - total,
            ]
        }
        other => return Err(InvariantsError::UnsupportedClass(other.tag())),
    };
    v.sort_unstable();
    Ok(v.into_iter().map(|x| x as i64).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alternative {
    pub expression: String,
    pub value: i128,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: String,
    /// The twist of the matching basis element in the resolution.
    pub resolution_value: i128,
    pub alternatives: Vec<Alternative>,
}

impl Relation {
    fn new(name: &str, resolution_value: u64, alts: Vec<(&str, i128)>) -> Self {
        let resolution_value = resolution_value as i128;
        Relation {
            name: name.into(),
            resolution_value,
            alternatives: alts
                .into_iter()
                .map(|(e, v)| Alternative {
                    expression: e.into(),
                    value: v,
                    agrees: v == resolution_value,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum DegreeValues {
    Symmetric { a: [u64; 5], s0: u64 },
    Pseudosymmetric { b: [u64; 6], c: [u64; 2] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeRelations {
    pub values: DegreeValues,
    pub relations: Vec<Relation>,
}

impl DegreeRelations {
    /// Alternatives whose value differs from the resolution's twist.
    pub fn discrepancies(&self) -> Vec<(&str, &Alternative)> {
        self.relations
            .iter()
            .flat_map(|r| {
                r.alternatives
                    .iter()
                    .filter(|a| !a.agrees)
                    .map(move |a| (r.name.as_str(), a))
            })
            .collect()
    }

    /// Fails on the first relation whose alternatives do not all agree.
    pub fn ensure_consistent(&self) -> Result<()> {
        for r in &self.relations {
            let Some(first) = r.alternatives.first() else {
                continue;
            };
            if let Some(bad) = r.alternatives.iter().find(|a| a.value != first.value) {
                return Err(InvariantsError::ConsistencyFailure {
                    relation: r.name.clone(),
                    first: first.expression.clone(),
                    first_value: first.value,
                    second: bad.expression.clone(),
                    second_value: bad.value,
                });
            }
            if first.value != r.resolution_value {
                return Err(InvariantsError::ConsistencyFailure {
                    relation: r.name.clone(),
                    first: first.expression.clone(),
                    first_value: first.value,
                    second: "resolution twist".into(),
                    second_value: r.resolution_value,
                });
            }
        }
        Ok(())
    }
}

/// Evaluates every closed-form expression for the level-2 and level-3
/// twists and pairs each with the twist found in the resolution.
pub fn degree_relations(
    c: &Classification,
    s: &NumericalSemigroup,
    r: &GradedResolution,
) -> Result<DegreeRelations> {
    match c {
        Classification::FourGenSymmetricNonCI(b) => Ok(symmetric_relations(b, s, r)),
        Classification::FourGenPseudosymmetric(k) => Ok(pseudosymmetric_relations(k, s, r)),
        other => Err(InvariantsError::UnsupportedClass(other.tag())),
    }
}

fn symmetric_relations(
    b: &crate::presentation::BresinskyData,
    s: &NumericalSemigroup,
    r: &GradedResolution,
) -> DegreeRelations {
    let n = role_generators(s, &b.perm);
    let [a1, a2, a3, a4] = b.alpha.map(|x| x as i128);
    let p = b.params;
    let [a21, a31, a32, a42, a13, a43, a14, a24] = [
        p.alpha_21, p.alpha_31, p.alpha_32, p.alpha_42, p.alpha_13, p.alpha_43, p.alpha_14,
        p.alpha_24,
    ]
    .map(|x| x as i128);
    let (n1, n2, n3, n4) = (n[0], n[1], n[2], n[3]);
    let lv2 = r.level_in_basis_order(2);
    let s0 = r.level(3)[0];
    let av = [lv2[0], lv2[1], lv2[2], lv2[3], lv2[4]];
    let a = av.map(|x| x as i128);
    let relations = vec![
        Relation::new(
            "a1",
            av[0],
            vec![
                ("alpha_2*n_2 + alpha_43*n_3", a2 * n2 + a43 * n3),
                ("alpha_4*n_4 + alpha_32*n_2", a4 * n4 + a32 * n2),
                (
                    "alpha_21*n_1 + alpha_43*n_3 + alpha_24*n_4",
                    a21 * n1 + a43 * n3 + a24 * n4,
                ),
            ],
        ),
        Relation::new(
            "a2",
            av[1],
            vec![
                ("alpha_1*n_1 + alpha_43*n_3", a1 * n1 + a43 * n3),
                ("alpha_3*n_3 + alpha_14*n_4", a3 * n3 + a14 * n4),
                (
                    "alpha_32*n_2 + alpha_14*n_4 + alpha_31*n_1",
                    a32 * n2 + a14 * n4 + a31 * n1,
                ),
            ],
        ),
        Relation::new(
            "a3",
            av[2],
            vec![
                ("alpha_2*n_2 + alpha_14*n_4", a2 * n2 + a14 * n4),
                ("alpha_4*n_4 + alpha_21*n_1", a4 * n4 + a21 * n1),
                (
                    "alpha_21*n_1 + alpha_43*n_3 + alpha_42*n_2",
                    a21 * n1 + a43 * n3 + a42 * n2,
                ),
            ],
        ),
        Relation::new(
            "a4",
            av[3],
            vec![
                ("alpha_1*n_1 + alpha_32*n_2", a1 * n1 + a32 * n2),
                ("alpha_3*n_3 + alpha_21*n_1", a3 * n3 + a21 * n1),
                (
                    "alpha_32*n_2 + alpha_14*n_4 + alpha_13*n_3",
                    a32 * n2 + a14 * n4 + a13 * n3,
                ),
            ],
        ),
        Relation::new(
            "a5",
            av[4],
            vec![
                ("alpha_1*n_1 + alpha_24*n_4", a1 * n1 + a24 * n4),
                ("alpha_2*n_2 + alpha_31*n_1", a2 * n2 + a31 * n1),
                ("alpha_3*n_3 + alpha_42*n_2", a3 * n3 + a42 * n2),
                ("alpha_4*n_4 + alpha_13*n_3", a4 * n4 + a13 * n3),
            ],
        ),
        Relation::new(
            "s0",
            s0,
            vec![
                ("a_1 + alpha_1*n_1", a[0] + a1 * n1),
                ("a_2 + alpha_2*n_2", a[1] + a2 * n2),
                ("a_3 + alpha_3*n_3", a[2] + a3 * n3),
                ("a_4 + alpha_4*n_4", a[3] + a4 * n4),
                (
                    "a_5 + alpha_21*n_1 + alpha_43*n_3",
                    a[4] + a21 * n1 + a43 * n3,
                ),
            ],
        ),
    ];
    DegreeRelations {
        values: DegreeValues::Symmetric { a: av, s0 },
        relations,
    }
}

fn pseudosymmetric_relations(
    k: &crate::presentation::KomedaData,
    s: &NumericalSemigroup,
    r: &GradedResolution,
) -> DegreeRelations {
    let n = role_generators(s, &k.perm);
    let [a1, a2, a3, a4] = k.params.alpha.map(|x| x as i128);
    let a21 = k.params.alpha_21 as i128;
    let (n1, n2, n3, n4) = (n[0], n[1], n[2], n[3]);
    let lv2 = r.level_in_basis_order(2);
    let lv3 = r.level_in_basis_order(3);
    let bv = [lv2[0], lv2[1], lv2[2], lv2[3], lv2[4], lv2[5]];
    let cv = [lv3[0], lv3[1]];
    let b = bv.map(|x| x as i128);
    let relations = vec![
        Relation::new(
            "b1",
            bv[0],
            vec![
                ("alpha_1*n_1 + n_2", a1 * n1 + n2),
                ("alpha_3*n_3 + (alpha_21+1)*n_1", a3 * n3 + (a21 + 1) * n1),
                ("n_2 + n_3 + (alpha_4-1)*n_4", n2 + n3 + (a4 - 1) * n4),
            ],
        ),
        Relation::new("b2", bv[1], vec![("deg f_2 + deg f_3", a2 * n2 + a3 * n3)]),
        Relation::new(
            "b3",
            bv[2],
            vec![
                ("alpha_1*n_1 + (alpha_3-1)*n_3", a1 * n1 + (a3 - 1) * n3),
                ("alpha_3*n_3 + (alpha_4-1)*n_4", a3 * n3 + (a4 - 1) * n4),
                (
                    "(alpha_1-alpha_21-1)*n_1 + n_2 + (alpha_4-1)*n_4",
                    (a1 - a21 - 1) * n1 + n2 + (a4 - 1) * n4,
                ),
            ],
        ),
        Relation::new(
            "b4",
            bv[3],
            vec![
                (
                    "alpha_2*n_2 + n_1 + (alpha_3-1)*n_3",
                    a2 * n2 + n1 + (a3 - 1) * n3,
                ),
                ("alpha_4*n_4 + n_2", a4 * n4 + n2),
                (
                    "(alpha_21+1)*n_1 + (alpha_3-1)*n_3 + n_4",
                    (a21 + 1) * n1 + (a3 - 1) * n3 + n4,
                ),
            ],
        ),
        Relation::new(
            "b5",
            bv[4],
            vec![
                ("alpha_1*n_1 + n_4", a1 * n1 + n4),
                (
                    "(alpha_1-alpha_21)*n_1 + alpha_2*n_2",
                    (a1 - a21) * n1 + a2 * n2,
                ),
                (
                    "n_1 + (alpha_2-1)*n_2 + alpha_3*n_3",
                    n1 + (a2 - 1) * n2 + a3 * n3,
                ),
                ("n_3 + alpha_4*n_4", n3 + a4 * n4),
            ],
        ),
        Relation::new(
            "b6",
            bv[5],
            vec![
                ("alpha_2*n_2 + (alpha_4-1)*n_4", a2 * n2 + (a4 - 1) * n4),
                ("alpha_21*n_1 + alpha_4*n_4", a21 * n1 + a4 * n4),
                (
                    "(alpha_21+1)*n_1 + (alpha_2-1)*n_2 + (alpha_3-1)*n_3",
                    (a21 + 1) * n1 + (a2 - 1) * n2 + (a3 - 1) * n3,
                ),
            ],
        ),
        Relation::new(
            "c1",
            cv[0],
            vec![
                ("b_1 + n_4", b[0] + n4),
                ("b_3 + (alpha_21+1)*n_1", b[2] + (a21 + 1) * n1),
                ("b_4 + n_3", b[3] + n3),
                ("b_5 + n_2", b[4] + n2),
                ("b_6 + alpha_3*n_3", b[5] + a3 * n3),
            ],
        ),
        Relation::new(
            "c2",
            cv[1],
            vec![
                (
                    "b_1 + (alpha_2-1)*n_2 + (alpha_3-1)*n_3",
                    b[0] + (a2 - 1) * n2 + (a3 - 1) * n3,
                ),
                (
                    "alpha_2*n_2 + alpha_3*n_3 + (alpha_4-1)*n_4",
                    a2 * n2 + a3 * n3 + (a4 - 1) * n4,
                ),
                ("b_3 + alpha_2*n_2", b[2] + a2 * n2),
                ("b_4 + (alpha_1-1)*n_1", b[3] + (a1 - 1) * n1),
                (
                    "b_5 + alpha_21*n_1 + (alpha_3-1)*n_3",
                    b[4] + a21 * n1 + (a3 - 1) * n3,
                ),
                ("b_6 + alpha_3*n_3", b[5] + a3 * n3),
            ],
        ),
    ];
    DegreeRelations {
        values: DegreeValues::Pseudosymmetric { b: bv, c: cv },
        relations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::classify;
    use crate::resolution::resolve;

    fn setup(g: &[u64]) -> (NumericalSemigroup, Classification, GradedResolution) {
        let s = NumericalSemigroup::new(g).unwrap();
        let c = classify(&s).unwrap();
        let r = resolve(&s).unwrap();
        (s, c, r)
    }

    fn kpoly(terms: &[(u64, i64)]) -> KPolynomial {
        KPolynomial {
            terms: terms.iter().copied().collect(),
        }
    }

    #[test]
    fn k_polynomials() {
        let (_, _, r) = setup(&[7, 9, 10]);
        assert_eq!(
            k_polynomial(&r),
            kpoly(&[(0, 1), (27, -1), (28, -1), (30, -1), (37, 1), (48, 1)])
        );
        assert_eq!(
            k_polynomial(&r).to_string(),
            "1 - z^27 - z^28 - z^30 + z^37 + z^48"
        );
        let (_, _, r) = setup(&[13, 9, 11, 14]);
        let k = k_polynomial(&r);
        assert_eq!(
            k.to_string(),
            "1 - z^22 - z^27 - z^37 - z^39 - z^42 + z^48 + z^49 + z^50 + z^51 + z^53 + z^55 - z^62 - z^77"
        );
        assert_eq!(k.value_at_one(), 0);
    }

    #[test]
    fn hilbert_series_matches_membership() {
        let (s, _, r) = setup(&[7, 9, 8, 13]);
        let h = hilbert_check(&r, &s, 25).unwrap();
        assert!(h.passed);
        let ones: Vec<usize> = (0..=25).filter(|&i| h.coefficients[i] == 1).collect();
        let mut expected = vec![0, 7, 8, 9, 13, 14, 15, 16, 17, 18];
        expected.extend(20..=25);
        assert_eq!(ones, expected);

        let (s, _, r) = setup(&[2, 3]);
        assert_eq!(
            hilbert_check(&r, &s, 5).unwrap().coefficients,
            vec![1, 0, 1, 1, 1, 1]
        );
        assert!(matches!(
            hilbert_check(&r, &s, 0),
            Err(InvariantsError::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn pf_two_routes() {
        for (g, pf) in [
            (&[7u64, 9, 10][..], vec![11, 22]),
            (&[13, 9, 11, 14], vec![15, 30]),
            (&[7, 9, 8, 13], vec![19]),
        ] {
            let (s, c, r) = setup(g);
            assert_eq!(pf_from_betti(&r), pf);
            assert_eq!(closed_form_pf(&c, &s).unwrap(), pf);
            assert_eq!(s.pseudofrobenius(), pf);
        }
        let (s, c, _) = setup(&[4, 6, 5]);
        assert_eq!(
            closed_form_pf(&c, &s),
            Err(InvariantsError::UnsupportedClass(
                ClassTag::ThreeGenSymmetricCI
            ))
        );
    }

    #[test]
    fn symmetric_degree_relations() {
        let (s, c, r) = setup(&[7, 9, 8, 13]);
        let d = degree_relations(&c, &s, &r).unwrap();
        assert_eq!(
            d.values,
            DegreeValues::Symmetric {
                a: [35, 29, 40, 30, 34],
                s0: 56
            }
        );
        assert!(d.ensure_consistent().is_ok());
        assert!(d.discrepancies().is_empty());
    }

    #[test]
    fn pseudosymmetric_degree_relations() {
        let (s, c, r) = setup(&[13, 9, 11, 14]);
        let d = degree_relations(&c, &s, &r).unwrap();
        assert_eq!(
            d.values,
            DegreeValues::Pseudosymmetric {
                b: [48, 49, 50, 51, 53, 55],
                c: [62, 77]
            }
        );
        let bad: Vec<(&str, &str, i128)> = d
            .discrepancies()
            .into_iter()
            .map(|(n, a)| (n, a.expression.as_str(), a.value))
            .collect();
        assert_eq!(
            bad,
            [
                ("c1", "b_3 + (alpha_21+1)*n_1", 76),
                ("c1", "b_6 + alpha_3*n_3", 77)
            ]
        );
        assert!(d.ensure_consistent().is_err());
    }
}
