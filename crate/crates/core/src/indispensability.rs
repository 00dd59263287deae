//! Strong indispensability of the minimal graded free resolution.
//!
//! A minimal resolution is strongly indispensable exactly when, for every
//! level `i`, no difference of two `i`-Betti degrees lies in `S` (with
//! `0 in S`, so a repeated degree already fails). Each family also has a
//! closed-form criterion; [`cross_validate`] computes both and compares.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{classify, Ci4Case, ClassTag, Classification, PresentationError};
use crate::resolution::{resolve_classified, GradedResolution, ResolutionError};
use crate::semigroup::{NumericalSemigroup, DEFAULT_REPRESENTATION_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndispensabilityError {
    #[error("no indispensability criterion for class {0}")]
    UnsupportedClass(ClassTag),
    #[error(
        "closed-form verdict {closed_form} disagrees with the Betti-degree verdict {differences}"
    )]
    CrossValidationMismatch {
        closed_form: bool,
        differences: bool,
        closed_form_report: Box<IndispensabilityReport>,
        differences_report: Box<IndispensabilityReport>,
    },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
}

type Result<T> = std::result::Result<T, IndispensabilityError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    DifferencesLemma,
    SymmetricHalfCheck,
    CI3Criterion,
    CI4Criterion,
    AlwaysTrue4SymNonCI,
    PseudoLevels12,
}

/// Two Betti degrees of the same level whose difference lies in `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub level: usize,
    /// One-based positions in the sorted level.
    pub pair: [usize; 2],
    pub diff: u64,
    pub in_semigroup: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Positivity {
    AllNonzero,
    AtMostOneZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Uniqueness {
    UniqueAndPositive,
    NotUnique,
    HasForbiddenZero,
    Unrepresentable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessOutcome {
    pub label: String,
    pub target: u64,
    pub base: Vec<u64>,
    pub constraint: Positivity,
    pub verdict: Uniqueness,
    pub representations: Vec<Vec<u64>>,
}

impl UniquenessOutcome {
    pub fn holds(&self) -> bool {
        self.verdict == Uniqueness::UniqueAndPositive
    }
}

/// A second minimal generator reachable from the closed-form data alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub label: String,
    /// Degree difference of the two generators involved; it lies in `S`.
    pub gap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndispensabilityReport {
    pub verdict: bool,
    pub method: Method,
    pub witnesses: Vec<Witness>,
    pub levels_checked: Vec<usize>,
    /// Distinct nonnegative differences of the Betti degrees, per checked level.
    pub differences: BTreeMap<usize, Vec<u64>>,
    /// Representation counts behind a closed-form criterion.
    pub criteria: Vec<UniquenessOutcome>,
    pub obstructions: Vec<Obstruction>,
}

/// Classifies the nonnegative representations of `target` over `base`.
pub fn uniqueness_check(target: u64, base: &[u64], constraint: Positivity) -> UniquenessOutcome {
    let representations =
        crate::semigroup::representations_over(base, target, DEFAULT_REPRESENTATION_LIMIT)
            .coefficient_vectors();
    let verdict = match representations.as_slice() {
        [] => Uniqueness::Unrepresentable,
        [only] => {
            let zeros = only.iter().filter(|&&c| c == 0).count();
            let allowed = match constraint {
                Positivity::AllNonzero => 0,
                Positivity::AtMostOneZero => 1,
            };
            if zeros <= allowed {
                Uniqueness::UniqueAndPositive
            } else {
                Uniqueness::HasForbiddenZero
            }
        }
        _ => Uniqueness::NotUnique,
    };
    UniquenessOutcome {
        label: String::new(),
        target,
        base: base.to_vec(),
        constraint,
        verdict,
        representations,
    }
}

fn labelled(label: &str, mut o: UniquenessOutcome) -> UniquenessOutcome {
    o.label = label.into();
    o
}

/// Tests every pair of Betti degrees at the requested levels.
pub fn differences_check(
    r: &GradedResolution,
    s: &NumericalSemigroup,
    levels: &[usize],
) -> IndispensabilityReport {
    let mut witnesses = Vec::new();
    let mut differences = BTreeMap::new();
    for &i in levels {
        let degrees = r.level(i);
        let mut diffs = Vec::new();
        for a in 0..degrees.len() {
            for b in a + 1..degrees.len() {
                let diff = degrees[b] - degrees[a];
                diffs.push(diff);
                if s.contains_u(diff) {
                    witnesses.push(Witness {
                        level: i,
                        pair: [a + 1, b + 1],
                        diff,
                        in_semigroup: true,
                    });
                }
            }
        }
        diffs.sort_unstable();
        diffs.dedup();
        differences.insert(i, diffs);
    }
    IndispensabilityReport {
        verdict: witnesses.is_empty(),
        method: Method::DifferencesLemma,
        witnesses,
        levels_checked: levels.to_vec(),
        differences,
        criteria: Vec::new(),
        obstructions: Vec::new(),
    }
}

fn closed_form(
    s: &NumericalSemigroup,
    c: &Classification,
    r: &GradedResolution,
) -> Result<IndispensabilityReport> {
    let n = s.generators();
    let criterion = |method: Method, criteria: Vec<UniquenessOutcome>| IndispensabilityReport {
        verdict: criteria.iter().all(UniquenessOutcome::holds),
        method,
        witnesses: Vec::new(),
        levels_checked: Vec::new(),
        differences: BTreeMap::new(),
        criteria,
        obstructions: Vec::new(),
    };
    Ok(match c {
        Classification::Unsupported => {
            return Err(IndispensabilityError::UnsupportedClass(
                ClassTag::Unsupported,
            ))
        }
        Classification::TwoGen => criterion(Method::SymmetricHalfCheck, Vec::new()),
        Classification::ThreeGenNonSymmetric(_) => differences_check(r, s, &[1, 2]),
        Classification::ThreeGenSymmetricCI(d) => criterion(
            Method::CI3Criterion,
            vec![labelled(
                "n_3 over (m_1, m_2)",
                uniqueness_check(n[d.perm[2]], &[d.m1, d.m2], Positivity::AllNonzero),
            )],
        ),
        Classification::FourGenCI(d) => match &d.decomposition {
            Ci4Case::CaseI {
                perm,
                ell,
                inner,
                alpha_4,
                ..
            } => {
                let scaled = |i: usize| n[i] / ell;
                let mut report = criterion(
                    Method::CI4Criterion,
                    vec![
                        labelled(
                            "n_3/l over (m_1, m_2)",
                            uniqueness_check(
                                scaled(inner.perm[2]),
                                &[inner.m1, inner.m2],
                                Positivity::AllNonzero,
                            ),
                        ),
                        labelled(
                            "l*n_4 over (n_1, n_2, n_3)",
                            uniqueness_check(
                                ell * n[perm[3]],
                                &[n[perm[0]], n[perm[1]], n[perm[2]]],
                                Positivity::AtMostOneZero,
                            ),
                        ),
                    ],
                );
                // x_1^a x_2^b F_3 cancels the mixed term of F_2 when the
                // exponents of F_3 sit below those of F_2.
                if alpha_4[2] == 0 && alpha_4[0] <= inner.alpha_31 && alpha_4[1] <= inner.alpha_32 {
                    let a = inner.alpha_31 - alpha_4[0];
                    let b = inner.alpha_32 - alpha_4[1];
                    report.obstructions.push(Obstruction {
                        label: "F_2 - x_1^a x_2^b F_3 with alpha_43 = 0".into(),
                        gap: a * n[perm[0]] + b * n[perm[1]],
                    });
                    report.verdict = false;
                }
                report
            }
            Ci4Case::CaseII {
                perm, p, p_prime, ..
            } => criterion(
                Method::CI4Criterion,
                vec![
                    labelled(
                        "p' over (n_1/p, n_2/p)",
                        uniqueness_check(
                            *p_prime,
                            &[n[perm[0]] / p, n[perm[1]] / p],
                            Positivity::AllNonzero,
                        ),
                    ),
                    labelled(
                        "p over (n_3/p', n_4/p')",
                        uniqueness_check(
                            *p,
                            &[n[perm[2]] / p_prime, n[perm[3]] / p_prime],
                            Positivity::AllNonzero,
                        ),
                    ),
                ],
            ),
        },
        Classification::FourGenSymmetricNonCI(_) => {
            criterion(Method::AlwaysTrue4SymNonCI, Vec::new())
        }
        Classification::FourGenPseudosymmetric(_) => IndispensabilityReport {
            method: Method::PseudoLevels12,
            ..differences_check(r, s, &[1, 2])
        },
    })
}

/// Levels the Betti-degree route inspects for each family.
pub fn cross_check_levels(class: ClassTag, k: usize) -> Vec<usize> {
    match class {
        ClassTag::FourGenPseudosymmetric => vec![1, 2],
        ClassTag::ThreeGenNonSymmetric => (1..k).collect(),
        _ => (1..=(k - 1) / 2).collect(),
    }
}

/// Verdict from the closed-form criterion of the semigroup's family.
pub fn strong_indisp(s: &NumericalSemigroup) -> Result<IndispensabilityReport> {
    let c = classify(s)?;
    if c.tag() == ClassTag::Unsupported {
        return Err(IndispensabilityError::UnsupportedClass(
            ClassTag::Unsupported,
        ));
    }
    let r = resolve_classified(s, &c)?;
    closed_form(s, &c, &r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub class: ClassTag,
    pub closed_form: IndispensabilityReport,
    pub differences: IndispensabilityReport,
}

/// Both verdicts, or [`IndispensabilityError::CrossValidationMismatch`] when
/// they differ.
pub fn cross_validate(s: &NumericalSemigroup) -> Result<CrossValidation> {
    let c = classify(s)?;
    if c.tag() == ClassTag::Unsupported {
        return Err(IndispensabilityError::UnsupportedClass(
            ClassTag::Unsupported,
        ));
    }
    let r = resolve_classified(s, &c)?;
    cross_validate_with(s, &c, &r)
}

pub fn cross_validate_with(
    s: &NumericalSemigroup,
    c: &Classification,
    r: &GradedResolution,
) -> Result<CrossValidation> {
    let closed = closed_form(s, c, r)?;
    let mut diff = differences_check(r, s, &cross_check_levels(c.tag(), s.k()));
    if c.tag().is_symmetric_family() {
        diff.method = Method::SymmetricHalfCheck;
    }
    if closed.verdict != diff.verdict {
        return Err(IndispensabilityError::CrossValidationMismatch {
            closed_form: closed.verdict,
            differences: diff.verdict,
            closed_form_report: Box::new(closed),
            differences_report: Box::new(diff),
        });
    }
    Ok(CrossValidation {
        class: c.tag(),
        closed_form: closed,
        differences: diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::resolve;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    fn verdict(g: &[u64]) -> bool {
        strong_indisp(&sg(g)).unwrap().verdict
    }

    #[test]
    fn uniqueness_examples() {
        let o = uniqueness_check(5, &[2, 3], Positivity::AllNonzero);
        assert_eq!(o.verdict, Uniqueness::UniqueAndPositive);
        assert_eq!(o.representations, vec![vec![1, 1]]);
        let o = uniqueness_check(9, &[2, 3], Positivity::AllNonzero);
        assert_eq!(o.verdict, Uniqueness::NotUnique);
        assert_eq!(o.representations.len(), 2);
        assert!(o.representations.contains(&vec![3, 1]));
        assert!(o.representations.contains(&vec![0, 3]));
        let o = uniqueness_check(17, &[5, 12], Positivity::AllNonzero);
        assert_eq!(o.verdict, Uniqueness::UniqueAndPositive);
        assert_eq!(
            uniqueness_check(3, &[2, 3], Positivity::AllNonzero).verdict,
            Uniqueness::HasForbiddenZero
        );
        assert_eq!(
            uniqueness_check(1, &[2, 3], Positivity::AllNonzero).verdict,
            Uniqueness::Unrepresentable
        );
    }

    #[test]
    fn case_one_uniqueness_is_not_enough() {
        // 42 = 3*14 = 2*12 + 18 = 12 + 2*15: two minimal generators in degree 42.
        let s = sg(&[12, 14, 15, 18]);
        let rep = strong_indisp(&s).unwrap();
        assert!(rep.criteria.iter().all(UniquenessOutcome::holds));
        assert_eq!(rep.obstructions.len(), 1);
        assert_eq!(rep.obstructions[0].gap, 12);
        assert!(!rep.verdict);
        assert!(cross_validate(&s).is_ok());
        assert_eq!(resolve(&s).unwrap().level(1), vec![30, 36, 42]);
        assert!(verdict(&[8, 12, 10, 9]));
        assert!(strong_indisp(&sg(&[8, 12, 10, 9]))
            .unwrap()
            .obstructions
            .is_empty());
    }

    #[test]
    fn differences_of_pseudosymmetric_examples() {
        let s = sg(&[13, 9, 11, 14]);
        let r = resolve(&s).unwrap();
        let rep = differences_check(&r, &s, &[1, 2]);
        assert!(!rep.verdict);
        assert_eq!(rep.differences[&1], vec![2, 3, 5, 10, 12, 15, 17, 20]);
        assert_eq!(rep.differences[&2], vec![1, 2, 3, 4, 5, 6, 7]);
        assert!(rep.witnesses.iter().any(|w| w.level == 1 && w.diff == 20));

        let s = sg(&[5, 12, 11, 14]);
        let r = resolve(&s).unwrap();
        assert!(differences_check(&r, &s, &[1]).verdict);
        let rep = differences_check(&r, &s, &[2]);
        assert!(!rep.verdict);
        assert_eq!(rep.differences[&2], vec![1, 2, 3, 4, 6, 7, 8, 9, 10]);
        assert!(rep.witnesses.iter().all(|w| w.diff == 10));

        let s = sg(&[5, 11, 8, 12]);
        let r = resolve(&s).unwrap();
        let rep = differences_check(&r, &s, &[1, 2]);
        assert_eq!(rep.differences[&1], vec![1, 2, 3, 4, 6, 7, 8]);
        assert_eq!(rep.differences[&2], vec![1, 2, 3, 4, 6, 7, 10]);
        assert!(rep.witnesses.iter().any(|w| w.level == 1 && w.diff == 8));
        assert!(rep.witnesses.iter().any(|w| w.level == 2 && w.diff == 10));
    }

    #[test]
    fn family_verdicts() {
        for n3 in [5, 7] {
            assert!(verdict(&[4, 6, n3]));
        }
        for n3 in [9, 11, 13, 15] {
            assert!(!verdict(&[4, 6, n3]));
        }
        for n4 in [9, 11, 13] {
            assert!(verdict(&[8, 12, 10, n4]));
        }
        for n4 in [17, 19] {
            assert!(!verdict(&[8, 12, 10, n4]));
        }
        assert!(verdict(&[75, 180, 119, 136]));
        assert!(verdict(&[7, 9, 8, 13]));
        assert!(verdict(&[7, 9, 10]));
        assert!(verdict(&[2, 3]));
        assert!(!verdict(&[13, 9, 11, 14]));
    }

    #[test]
    fn cross_validation_agrees() {
        for g in [
            &[4u64, 6, 5][..],
            &[4, 6, 9],
            &[13, 9, 11, 14],
            &[7, 9, 8, 13],
            &[75, 180, 119, 136],
            &[8, 12, 10, 17],
            &[7, 9, 10],
        ] {
            let cv = cross_validate(&sg(g)).unwrap();
            assert_eq!(cv.closed_form.verdict, cv.differences.verdict, "{g:?}");
        }
    }

    #[test]
    fn unsupported_is_rejected() {
        assert_eq!(
            strong_indisp(&sg(&[6, 7, 9, 10])),
            Err(IndispensabilityError::UnsupportedClass(
                ClassTag::Unsupported
            ))
        );
    }
}
