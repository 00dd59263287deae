//! Classification into the supported families and extraction of the
//! parameters that pin down the binomial generators of the toric ideal.
//!
//! Families:
//! - two generators: a single binomial;
//! - three generators, symmetric: complete intersection `<a m1, a m2, n3>`
//!   with `n3` in `<m1, m2>`;
//! - three generators, not symmetric: Herzog's three binomials;
//! - four generators, complete intersection: gluing of a symmetric triple
//!   with one generator (case I) or of two pairs (case II);
//! - four generators, symmetric but not a complete intersection: Bresinsky's
//!   five binomials;
//! - four generators, pseudosymmetric: Komeda's five binomials.
//!
//! The four-generator families are only determined up to a relabelling of
//! the generators. Every record keeps a `perm` array: `perm[r]` is the
//! position in the caller's generator tuple that plays role `r + 1`.

use itertools::Itertools;
use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::polyalg::{Poly, PolyError, PolyRing};
use crate::semigroup::{
    representations_over, NumericalSemigroup, SemigroupError, Symmetry,
    DEFAULT_REPRESENTATION_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("embedding dimension {0} is not supported (expected 2, 3 or 4)")]
    UnsupportedEmbeddingDimension(usize),
    #[error("semigroup is not in the {expected} family: {reason}")]
    NotInClass {
        expected: &'static str,
        reason: String,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

type Result<T> = std::result::Result<T, PresentationError>;

/// Class tags used in reports and serialized output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassTag {
    TwoGen,
    ThreeGenSymmetricCI,
    ThreeGenNonSymmetric,
    FourGenCI,
    FourGenSymmetricNonCI,
    FourGenPseudosymmetric,
    Unsupported,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::TwoGen => "TwoGen",
            ClassTag::ThreeGenSymmetricCI => "ThreeGenSymmetricCI",
            ClassTag::ThreeGenNonSymmetric => "ThreeGenNonSymmetric",
            ClassTag::FourGenCI => "FourGenCI",
            ClassTag::FourGenSymmetricNonCI => "FourGenSymmetricNonCI",
            ClassTag::FourGenPseudosymmetric => "FourGenPseudosymmetric",
            ClassTag::Unsupported => "Unsupported",
        }
    }

    pub fn parse(s: &str) -> Option<ClassTag> {
        [
            ClassTag::TwoGen,
            ClassTag::ThreeGenSymmetricCI,
            ClassTag::ThreeGenNonSymmetric,
            ClassTag::FourGenCI,
            ClassTag::FourGenSymmetricNonCI,
            ClassTag::FourGenPseudosymmetric,
            ClassTag::Unsupported,
        ]
        .into_iter()
        .find(|t| t.as_str() == s)
    }

    pub fn is_symmetric_family(self) -> bool {
        matches!(
            self,
            ClassTag::TwoGen
                | ClassTag::ThreeGenSymmetricCI
                | ClassTag::FourGenCI
                | ClassTag::FourGenSymmetricNonCI
        )
    }
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Three generators, not symmetric: `alpha_i n_i = alpha_ik n_k + alpha_il n_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HerzogData {
    pub alpha: [u64; 3],
    pub alpha_12: u64,
    pub alpha_13: u64,
    pub alpha_21: u64,
    pub alpha_23: u64,
    pub alpha_31: u64,
    pub alpha_32: u64,
    /// More than one parameter set satisfied every constraint.
    pub ambiguous: bool,
}

/// Three generators, symmetric: `S = <a m1, a m2, alpha_31 m1 + alpha_32 m2>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ci3Data {
    pub perm: [usize; 3],
    /// `gcd` of the first two role generators.
    pub alpha_3: u64,
    pub m1: u64,
    pub m2: u64,
    pub alpha_31: u64,
    pub alpha_32: u64,
    /// Every `(alpha_31, alpha_32)` with `n_3 = alpha_31 m1 + alpha_32 m2`.
    pub representations: Vec<(u64, u64)>,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BresinskyParams {
    pub alpha_21: u64,
    pub alpha_31: u64,
    pub alpha_32: u64,
    pub alpha_42: u64,
    pub alpha_13: u64,
    pub alpha_43: u64,
    pub alpha_14: u64,
    pub alpha_24: u64,
}

impl BresinskyParams {
    pub fn alpha(&self) -> [u64; 4] {
        [
            self.alpha_21 + self.alpha_31,
            self.alpha_32 + self.alpha_42,
            self.alpha_13 + self.alpha_43,
            self.alpha_14 + self.alpha_24,
        ]
    }

    /// The four generators produced by the product formulas.
    pub fn generators(&self) -> [u64; 4] {
        let [a1, a2, a3, a4] = self.alpha();
        let p = self;
        [
            a2 * a3 * p.alpha_14 + p.alpha_32 * p.alpha_13 * p.alpha_24,
            a3 * a4 * p.alpha_21 + p.alpha_31 * p.alpha_43 * p.alpha_24,
            a1 * a4 * p.alpha_32 + p.alpha_14 * p.alpha_42 * p.alpha_31,
            a1 * a2 * p.alpha_43 + p.alpha_42 * p.alpha_21 * p.alpha_13,
        ]
    }
}

/// Four generators, symmetric, not a complete intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BresinskyData {
    pub perm: [usize; 4],
    pub alpha: [u64; 4],
    pub params: BresinskyParams,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KomedaParams {
    pub alpha: [u64; 4],
    pub alpha_21: u64,
}

impl KomedaParams {
    /// The four generators produced by Komeda's formulas, or `None` when a
    /// formula leaves the nonnegative integers.
    pub fn generators(&self) -> Option<[u64; 4]> {
        let [a1, a2, a3, a4] = self.alpha.map(|a| a as i128);
        let a21 = self.alpha_21 as i128;
        let n1 = a2 * a3 * (a4 - 1) + 1;
        let n2 = a21 * a3 * a4 + (a1 - a21 - 1) * (a3 - 1) + a3;
        let n3 = a1 * a4 + (a1 - a21 - 1) * (a2 - 1) * (a4 - 1) - a4 + 1;
        let n4 = a1 * a2 * (a3 - 1) + a21 * (a2 - 1) + a2;
        let out = [n1, n2, n3, n4];
        if out.iter().any(|&n| n <= 0 || n > u64::MAX as i128) {
            return None;
        }
        Some(out.map(|n| n as u64))
    }
}

/// Four generators, pseudosymmetric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KomedaData {
    pub perm: [usize; 4],
    pub params: KomedaParams,
}

/// One gluing decomposition of a four-generated complete intersection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case")]
pub enum Ci4Case {
    /// `S = ell * S' + n_4 N` with `S'` a symmetric three-generated semigroup.
    CaseI {
        perm: [usize; 4],
        ell: u64,
        /// Decomposition of `S'`; its `perm` indexes the caller's tuple.
        inner: Ci3Data,
        alpha_4: [u64; 3],
        /// Every `(alpha_41, alpha_42, alpha_43)` with
        /// `ell n_4 = sum alpha_4j n_j`.
        representations: Vec<[u64; 3]>,
    },
    /// Gluing of `<n_1, n_2>` and `<n_3, n_4>` along `p p'`.
    CaseII {
        perm: [usize; 4],
        p: u64,
        p_prime: u64,
        alpha: [u64; 4],
        quadruple: [u64; 4],
        /// Every `(p_1, p_2)` with `p' = p_1 n_1/p + p_2 n_2/p`.
        pairs_12: Vec<(u64, u64)>,
        /// Every `(p_3, p_4)` with `p = p_3 n_3/p' + p_4 n_4/p'`.
        pairs_34: Vec<(u64, u64)>,
    },
}

impl Ci4Case {
    pub fn perm(&self) -> [usize; 4] {
        match self {
            Ci4Case::CaseI { perm, .. } | Ci4Case::CaseII { perm, .. } => *perm,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ci4Data {
    pub decomposition: Ci4Case,
    /// A case II decomposition found alongside a case I one.
    pub alternate: Option<Ci4Case>,
}

/// Family of a semigroup together with its defining parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "parameters")]
pub enum Classification {
    TwoGen,
    ThreeGenSymmetricCI(Ci3Data),
    ThreeGenNonSymmetric(HerzogData),
    FourGenCI(Ci4Data),
    FourGenSymmetricNonCI(BresinskyData),
    FourGenPseudosymmetric(KomedaData),
    Unsupported,
}

impl Classification {
    pub fn tag(&self) -> ClassTag {
        match self {
            Classification::TwoGen => ClassTag::TwoGen,
            Classification::ThreeGenSymmetricCI(_) => ClassTag::ThreeGenSymmetricCI,
            Classification::ThreeGenNonSymmetric(_) => ClassTag::ThreeGenNonSymmetric,
            Classification::FourGenCI(_) => ClassTag::FourGenCI,
            Classification::FourGenSymmetricNonCI(_) => ClassTag::FourGenSymmetricNonCI,
            Classification::FourGenPseudosymmetric(_) => ClassTag::FourGenPseudosymmetric,
            Classification::Unsupported => ClassTag::Unsupported,
        }
    }
}

pub fn classify(s: &NumericalSemigroup) -> Result<Classification> {
    match s.k() {
        2 => Ok(Classification::TwoGen),
        3 => {
            if s.classify_symmetry() == Symmetry::Symmetric {
                Ok(Classification::ThreeGenSymmetricCI(ci3(s)?))
            } else {
                Ok(Classification::ThreeGenNonSymmetric(herzog(s)?))
            }
        }
        4 => {
            if let Some(data) = ci4(s) {
                return Ok(Classification::FourGenCI(data));
            }
            match s.classify_symmetry() {
                Symmetry::Symmetric => Ok(Classification::FourGenSymmetricNonCI(bresinsky(s)?)),
                Symmetry::Pseudosymmetric => Ok(Classification::FourGenPseudosymmetric(komeda(s)?)),
                Symmetry::Neither => Ok(Classification::Unsupported),
            }
        }
        k => Err(PresentationError::UnsupportedEmbeddingDimension(k)),
    }
}

fn reps2(base: [u64; 2], target: u64) -> Vec<(u64, u64)> {
    representations_over(&base, target, DEFAULT_REPRESENTATION_LIMIT)
        .items
        .into_iter()
        .map(|r| (r.coefficients[0], r.coefficients[1]))
        .collect()
}

fn positive_reps2(base: [u64; 2], target: u64) -> Vec<(u64, u64)> {
    reps2(base, target)
        .into_iter()
        .filter(|&(a, b)| a > 0 && b > 0)
        .collect()
}

fn minimal_multiples(s: &NumericalSemigroup) -> Result<Vec<u64>> {
    (0..s.k())
        .map(|i| s.minimal_multiple(i).map_err(Into::into))
        .collect()
}

pub fn herzog(s: &NumericalSemigroup) -> Result<HerzogData> {
    let not_in = |reason: &str| PresentationError::NotInClass {
        expected: "three-generated non-symmetric",
        reason: reason.into(),
    };
    if s.k() != 3 {
        return Err(not_in("embedding dimension is not 3"));
    }
    if s.classify_symmetry() == Symmetry::Symmetric {
        return Err(not_in("semigroup is symmetric"));
    }
    let n = s.generators();
    let alpha = minimal_multiples(s)?;
    // (alpha_12, alpha_13), (alpha_21, alpha_23), (alpha_31, alpha_32)
    let c1 = positive_reps2([n[1], n[2]], alpha[0] * n[0]);
    let c2 = positive_reps2([n[0], n[2]], alpha[1] * n[1]);
    let c3 = positive_reps2([n[0], n[1]], alpha[2] * n[2]);
    let mut valid = Vec::new();
    for (&(a12, a13), &(a21, a23), &(a31, a32)) in
        itertools::iproduct!(c1.iter(), c2.iter(), c3.iter())
    {
        if a21 + a31 == alpha[0] && a12 + a32 == alpha[1] && a13 + a23 == alpha[2] {
            valid.push((a12, a13, a21, a23, a31, a32));
        }
    }
    valid.sort();
    let &(a12, a13, a21, a23, a31, a32) = valid
        .first()
        .ok_or_else(|| not_in("no parameter set satisfies the Herzog relations"))?;
    Ok(HerzogData {
        alpha: [alpha[0], alpha[1], alpha[2]],
        alpha_12: a12,
        alpha_13: a13,
        alpha_21: a21,
        alpha_23: a23,
        alpha_31: a31,
        alpha_32: a32,
        ambiguous: valid.len() > 1,
    })
}

/// Complete-intersection data for a symmetric three-generated semigroup.
/// Index pairs are scanned in the order (1,2), (1,3), (2,3).
pub fn ci3(s: &NumericalSemigroup) -> Result<Ci3Data> {
    if s.k() != 3 {
        return Err(PresentationError::NotInClass {
            expected: "three-generated symmetric",
            reason: "embedding dimension is not 3".into(),
        });
    }
    ci3_of(s.generators(), [0, 1, 2]).ok_or_else(|| PresentationError::NotInClass {
        expected: "three-generated symmetric",
        reason: "no pair with gcd > 1 whose quotient semigroup contains the third generator".into(),
    })
}

/// `labels` are the caller-visible indices of `gens`.
fn ci3_of(gens: &[u64], labels: [usize; 3]) -> Option<Ci3Data> {
    for (i, j, l) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let d = gens[i].gcd(&gens[j]);
        if d <= 1 {
            continue;
        }
        let (m1, m2) = (gens[i] / d, gens[j] / d);
        let reps = reps2([m1, m2], gens[l]);
        if reps.is_empty() {
            continue;
        }
        let designated = if reps.len() == 1 {
            reps[0]
        } else {
            reps.iter()
                .copied()
                .find(|&(a, b)| a > 0 && b > 0)
                .unwrap_or(reps[0])
        };
        return Some(Ci3Data {
            perm: [labels[i], labels[j], labels[l]],
            alpha_3: d,
            m1,
            m2,
            alpha_31: designated.0,
            alpha_32: designated.1,
            ambiguous: reps.len() > 1,
            representations: reps,
        });
    }
    None
}

/// Gluing decomposition of a four-generated complete intersection, or `None`.
///
/// Case I is tried first, with the outer generator taken from the last
/// position backwards; case II is tried over the three pair partitions.
pub fn ci4(s: &NumericalSemigroup) -> Option<Ci4Data> {
    if s.k() != 4 {
        return None;
    }
    let case_one = ci4_case_one(s);
    let case_two = ci4_case_two(s);
    match (case_one, case_two) {
        (Some(a), b) => Some(Ci4Data {
            decomposition: a,
            alternate: b,
        }),
        (None, Some(b)) => Some(Ci4Data {
            decomposition: b,
            alternate: None,
        }),
        (None, None) => None,
    }
}

fn ci4_case_one(s: &NumericalSemigroup) -> Option<Ci4Case> {
    let n = s.generators();
    for outer in (0..4).rev() {
        let triple: Vec<usize> = (0..4).filter(|&i| i != outer).collect();
        let ell = triple.iter().fold(0u64, |g, &i| g.gcd(&n[i]));
        if ell <= 1 {
            continue;
        }
        let scaled: Vec<u64> = triple.iter().map(|&i| n[i] / ell).collect();
        let Ok(inner_sg) = NumericalSemigroup::new(&scaled) else {
            continue;
        };
        if inner_sg.classify_symmetry() != Symmetry::Symmetric || !inner_sg.contains_u(n[outer]) {
            continue;
        }
        let Some(inner) = ci3_of(&scaled, [triple[0], triple[1], triple[2]]) else {
            continue;
        };
        let perm = [inner.perm[0], inner.perm[1], inner.perm[2], outer];
        let base = [n[perm[0]], n[perm[1]], n[perm[2]]];
        let representations: Vec<[u64; 3]> =
            representations_over(&base, ell * n[outer], DEFAULT_REPRESENTATION_LIMIT)
                .items
                .into_iter()
                .map(|r| [r.coefficients[0], r.coefficients[1], r.coefficients[2]])
                .collect();
        let alpha_4 = *representations.first()?;
        return Some(Ci4Case::CaseI {
            perm,
            ell,
            inner,
            alpha_4,
            representations,
        });
    }
    None
}

fn ci4_case_two(s: &NumericalSemigroup) -> Option<Ci4Case> {
    let n = s.generators();
    for perm in [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]] {
        let [a, b, c, d] = perm.map(|i| n[i]);
        let p = a.gcd(&b);
        let q = c.gcd(&d);
        if p <= 1 || q <= 1 {
            continue;
        }
        let pairs_12 = reps2([a / p, b / p], q);
        let pairs_34 = reps2([c / q, d / q], p);
        if pairs_12.is_empty() || pairs_34.is_empty() {
            continue;
        }
        let quadruple = [pairs_12[0].0, pairs_12[0].1, pairs_34[0].0, pairs_34[0].1];
        return Some(Ci4Case::CaseII {
            perm,
            p,
            p_prime: q,
            alpha: [b / p, a / p, d / q, c / q],
            quadruple,
            pairs_12,
            pairs_34,
        });
    }
    None
}

pub fn bresinsky(s: &NumericalSemigroup) -> Result<BresinskyData> {
    let not_in = |reason: &str| PresentationError::NotInClass {
        expected: "four-generated symmetric non-complete-intersection",
        reason: reason.into(),
    };
    if s.k() != 4 {
        return Err(not_in("embedding dimension is not 4"));
    }
    if s.classify_symmetry() != Symmetry::Symmetric {
        return Err(not_in("semigroup is not symmetric"));
    }
    if ci4(s).is_some() {
        return Err(not_in("semigroup is a complete intersection"));
    }
    let mins = minimal_multiples(s)?;
    for perm in (0..4).permutations(4) {
        let perm = [perm[0], perm[1], perm[2], perm[3]];
        let n = perm.map(|i| s.generators()[i]);
        let alpha = perm.map(|i| mins[i]);
        let c1 = positive_reps2([n[2], n[3]], alpha[0] * n[0]); // (a13, a14)
        let c2 = positive_reps2([n[0], n[3]], alpha[1] * n[1]); // (a21, a24)
        let c3 = positive_reps2([n[0], n[1]], alpha[2] * n[2]); // (a31, a32)
        let c4 = positive_reps2([n[1], n[2]], alpha[3] * n[3]); // (a42, a43)
        let mut valid: Vec<BresinskyParams> = Vec::new();
        for (&(a13, a14), &(a21, a24), &(a31, a32), &(a42, a43)) in
            itertools::iproduct!(c1.iter(), c2.iter(), c3.iter(), c4.iter())
        {
            let params = BresinskyParams {
                alpha_21: a21,
                alpha_31: a31,
                alpha_32: a32,
                alpha_42: a42,
                alpha_13: a13,
                alpha_43: a43,
                alpha_14: a14,
                alpha_24: a24,
            };
            if params.alpha() == alpha && params.generators() == n {
                valid.push(params);
            }
        }
        valid.sort();
        if let Some(&params) = valid.first() {
            return Ok(BresinskyData {
                perm,
                alpha,
                params,
                ambiguous: valid.len() > 1,
            });
        }
    }
    Err(not_in("no relabelling satisfies the Bresinsky relations"))
}

pub fn komeda(s: &NumericalSemigroup) -> Result<KomedaData> {
    let not_in = |reason: &str| PresentationError::NotInClass {
        expected: "four-generated pseudosymmetric",
        reason: reason.into(),
    };
    if s.k() != 4 {
        return Err(not_in("embedding dimension is not 4"));
    }
    if s.classify_symmetry() != Symmetry::Pseudosymmetric {
        return Err(not_in("semigroup is not pseudosymmetric"));
    }
    let mins = minimal_multiples(s)?;
    for perm in (0..4).permutations(4) {
        let perm = [perm[0], perm[1], perm[2], perm[3]];
        let n = perm.map(|i| s.generators()[i]);
        let alpha = perm.map(|i| mins[i]);
        // x2^{a2} - x1^{a21} x4 fixes alpha_21.
        let Some(rest) = (alpha[1] * n[1]).checked_sub(n[3]) else {
            continue;
        };
        if rest == 0 || rest % n[0] != 0 {
            continue;
        }
        let alpha_21 = rest / n[0];
        if alpha_21 >= alpha[0] {
            continue;
        }
        let params = KomedaParams { alpha, alpha_21 };
        if params.generators() == Some(n) {
            return Ok(KomedaData { perm, params });
        }
    }
    Err(not_in("no relabelling satisfies the Komeda relations"))
}

/// Semigroup from Komeda parameters, rejecting tuples whose generators are
/// not coprime, not minimal or not pseudosymmetric.
pub fn from_komeda(params: KomedaParams) -> Result<NumericalSemigroup> {
    if params.alpha.contains(&0) || params.alpha_21 == 0 || params.alpha_21 >= params.alpha[0] {
        return Err(PresentationError::InvalidParameters(format!(
            "need positive alphas and 0 < alpha_21 < alpha_1, got {params:?}"
        )));
    }
    let gens = params.generators().ok_or_else(|| {
        PresentationError::InvalidParameters(format!(
            "formulas leave the positive integers for {params:?}"
        ))
    })?;
    let s = NumericalSemigroup::new(&gens)
        .map_err(|e| PresentationError::InvalidParameters(format!("{gens:?}: {e}")))?;
    if s.classify_symmetry() != Symmetry::Pseudosymmetric {
        return Err(PresentationError::InvalidParameters(format!(
            "{gens:?} is not pseudosymmetric"
        )));
    }
    Ok(s)
}

/// Semigroup from Bresinsky parameters, rejecting tuples whose generators are
/// not coprime, not minimal, not symmetric or a complete intersection.
pub fn from_bresinsky(params: BresinskyParams) -> Result<NumericalSemigroup> {
    let p = params;
    if [
        p.alpha_21, p.alpha_31, p.alpha_32, p.alpha_42, p.alpha_13, p.alpha_43, p.alpha_14,
        p.alpha_24,
    ]
    .contains(&0)
    {
        return Err(PresentationError::InvalidParameters(
            "every alpha_ij must be positive".into(),
        ));
    }
    let gens = p.generators();
    let s = NumericalSemigroup::new(&gens)
        .map_err(|e| PresentationError::InvalidParameters(format!("{gens:?}: {e}")))?;
    if s.classify_symmetry() != Symmetry::Symmetric {
        return Err(PresentationError::InvalidParameters(format!(
            "{gens:?} is not symmetric"
        )));
    }
    if ci4(&s).is_some() {
        return Err(PresentationError::InvalidParameters(format!(
            "{gens:?} is a complete intersection"
        )));
    }
    Ok(s)
}

/// Builds monomials in role coordinates and places them at the caller's
/// variable positions.
pub(crate) struct RoleRing<'a> {
    ring: &'a PolyRing,
    perm: &'a [usize],
}

impl<'a> RoleRing<'a> {
    pub(crate) fn new(ring: &'a PolyRing, perm: &'a [usize]) -> Self {
        Self { ring, perm }
    }

    /// Monomial from `(role, exponent)` pairs, roles one-based.
    pub(crate) fn mono(&self, factors: &[(usize, u64)]) -> Poly {
        let mapped: Vec<(usize, u32)> = factors
            .iter()
            .map(|&(r, e)| {
                (
                    self.perm[r - 1],
                    u32::try_from(e).expect("exponent fits in u32"),
                )
            })
            .collect();
        self.ring
            .monomial_sparse(&mapped)
            .expect("role index in range")
    }

    pub(crate) fn binom(&self, plus: &[(usize, u64)], minus: &[(usize, u64)]) -> Poly {
        &self.mono(plus) - &self.mono(minus)
    }
}

/// Minimal binomial generators of the toric ideal, in the order used by the
/// matching family (`f_1, ..., f_r`).
pub fn generators_ideal(s: &NumericalSemigroup, c: &Classification) -> Result<Vec<Poly>> {
    let ring = PolyRing::new(s.generators());
    let n = s.generators();
    let polys = match c {
        Classification::TwoGen => {
            let rr = RoleRing::new(&ring, &[0, 1]);
            vec![rr.binom(&[(1, n[1])], &[(2, n[0])])]
        }
        Classification::ThreeGenSymmetricCI(d) => ci3_generators(&ring, d),
        Classification::ThreeGenNonSymmetric(h) => {
            let rr = RoleRing::new(&ring, &[0, 1, 2]);
            vec![
                rr.binom(&[(1, h.alpha[0])], &[(2, h.alpha_12), (3, h.alpha_13)]),
                rr.binom(&[(2, h.alpha[1])], &[(1, h.alpha_21), (3, h.alpha_23)]),
                rr.binom(&[(3, h.alpha[2])], &[(1, h.alpha_31), (2, h.alpha_32)]),
            ]
        }
        Classification::FourGenCI(d) => match &d.decomposition {
            Ci4Case::CaseI {
                perm,
                ell,
                inner,
                alpha_4,
                ..
            } => {
                let mut f = ci3_generators(&ring, inner);
                let rr = RoleRing::new(&ring, perm);
                f.push(rr.binom(
                    &[(4, *ell)],
                    &[(1, alpha_4[0]), (2, alpha_4[1]), (3, alpha_4[2])],
                ));
                f
            }
            Ci4Case::CaseII {
                perm,
                alpha,
                quadruple,
                ..
            } => {
                let rr = RoleRing::new(&ring, perm);
                vec![
                    rr.binom(&[(1, alpha[0])], &[(2, alpha[1])]),
                    rr.binom(&[(3, alpha[2])], &[(4, alpha[3])]),
                    rr.binom(
                        &[(1, quadruple[0]), (2, quadruple[1])],
                        &[(3, quadruple[2]), (4, quadruple[3])],
                    ),
                ]
            }
        },
        Classification::FourGenSymmetricNonCI(b) => bresinsky_generators(&ring, b),
        Classification::FourGenPseudosymmetric(k) => komeda_generators(&ring, k),
        Classification::Unsupported => {
            return Err(PresentationError::NotInClass {
                expected: "a supported family",
                reason: "no explicit presentation is known for this semigroup".into(),
            })
        }
    };
    Ok(polys)
}

fn ci3_generators(ring: &PolyRing, d: &Ci3Data) -> Vec<Poly> {
    let rr = RoleRing::new(ring, &d.perm);
    vec![
        rr.binom(&[(1, d.m2)], &[(2, d.m1)]),
        rr.binom(&[(3, d.alpha_3)], &[(1, d.alpha_31), (2, d.alpha_32)]),
    ]
}

pub(crate) fn bresinsky_generators(ring: &PolyRing, b: &BresinskyData) -> Vec<Poly> {
    let rr = RoleRing::new(ring, &b.perm);
    let p = &b.params;
    let a = b.alpha;
    vec![
        rr.binom(&[(1, a[0])], &[(3, p.alpha_13), (4, p.alpha_14)]),
        rr.binom(&[(2, a[1])], &[(1, p.alpha_21), (4, p.alpha_24)]),
        rr.binom(&[(3, a[2])], &[(1, p.alpha_31), (2, p.alpha_32)]),
        rr.binom(&[(4, a[3])], &[(2, p.alpha_42), (3, p.alpha_43)]),
        rr.binom(
            &[(3, p.alpha_43), (1, p.alpha_21)],
            &[(2, p.alpha_32), (4, p.alpha_14)],
        ),
    ]
}

pub(crate) fn komeda_generators(ring: &PolyRing, k: &KomedaData) -> Vec<Poly> {
    let rr = RoleRing::new(ring, &k.perm);
    let [a1, a2, a3, a4] = k.params.alpha;
    let a21 = k.params.alpha_21;
    vec![
        rr.binom(&[(1, a1)], &[(3, 1), (4, a4 - 1)]),
        rr.binom(&[(2, a2)], &[(1, a21), (4, 1)]),
        rr.binom(&[(3, a3)], &[(1, a1 - a21 - 1), (2, 1)]),
        rr.binom(&[(4, a4)], &[(1, 1), (2, a2 - 1), (3, a3 - 1)]),
        rr.binom(&[(3, a3 - 1), (1, a21 + 1)], &[(2, 1), (4, a4 - 1)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::new(g).unwrap()
    }

    fn strings(polys: &[Poly]) -> Vec<String> {
        polys.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&sg(&[7, 9, 10])).unwrap().tag(),
            ClassTag::ThreeGenNonSymmetric
        );
        assert_eq!(
            classify(&sg(&[7, 9, 8, 13])).unwrap().tag(),
            ClassTag::FourGenSymmetricNonCI
        );
        let c = classify(&sg(&[75, 180, 119, 136])).unwrap();
        assert_eq!(c.tag(), ClassTag::FourGenCI);
        let Classification::FourGenCI(d) = c else {
            unreachable!()
        };
        assert!(matches!(d.decomposition, Ci4Case::CaseII { .. }));
        assert_eq!(classify(&sg(&[2, 3])).unwrap().tag(), ClassTag::TwoGen);
        assert_eq!(
            classify(&sg(&[19, 27, 28, 31, 32])),
            Err(PresentationError::UnsupportedEmbeddingDimension(5))
        );
    }

    #[test]
    fn herzog_parameters() {
        let h = herzog(&sg(&[7, 9, 10])).unwrap();
        assert_eq!(h.alpha, [4, 3, 3]);
        assert_eq!((h.alpha_12, h.alpha_13), (2, 1));
        assert_eq!((h.alpha_21, h.alpha_23), (1, 2));
        assert_eq!((h.alpha_31, h.alpha_32), (3, 1));
        assert!(!h.ambiguous);

        let h = herzog(&sg(&[3, 5, 7])).unwrap();
        assert_eq!(h.alpha, [4, 2, 2]);
        assert_eq!((h.alpha_12, h.alpha_13), (1, 1));
        assert_eq!((h.alpha_21, h.alpha_23), (1, 1));
        assert_eq!((h.alpha_31, h.alpha_32), (3, 1));

        assert!(matches!(
            herzog(&sg(&[4, 6, 5])),
            Err(PresentationError::NotInClass { .. })
        ));
    }

    #[test]
    fn ci3_parameters() {
        let d = ci3(&sg(&[4, 6, 5])).unwrap();
        assert_eq!((d.alpha_3, d.m1, d.m2), (2, 2, 3));
        assert_eq!(d.representations, vec![(1, 1)]);

        let d = ci3(&sg(&[4, 6, 9])).unwrap();
        assert_eq!(d.perm, [0, 1, 2]);
        assert_eq!(d.representations, vec![(0, 3), (3, 1)]);
        assert!(d.ambiguous);

        let d = ci3(&sg(&[6, 9, 10])).unwrap();
        assert_eq!(d.perm, [0, 1, 2]);
        assert_eq!((d.alpha_3, d.m1, d.m2), (3, 2, 3));
        assert_eq!(d.representations, vec![(2, 2), (5, 0)]);
        assert_eq!((d.alpha_31, d.alpha_32), (2, 2));
    }

    #[test]
    fn bresinsky_parameters() {
        let b = bresinsky(&sg(&[7, 9, 8, 13])).unwrap();
        assert_eq!(b.perm, [0, 1, 2, 3]);
        assert_eq!(b.alpha, [3, 3, 2, 2]);
        let p = b.params;
        for v in [
            p.alpha_13, p.alpha_14, p.alpha_24, p.alpha_31, p.alpha_32, p.alpha_43,
        ] {
            assert_eq!(v, 1);
        }
        assert_eq!((p.alpha_21, p.alpha_42), (2, 2));
        // n_1 = a2 a3 a14 + a32 a13 a24
        assert_eq!(3 * 2 * p.alpha_14 + p.alpha_32 * p.alpha_13 * p.alpha_24, 7);
        assert_eq!(p.generators(), [7, 9, 8, 13]);
        assert!(matches!(
            bresinsky(&sg(&[8, 12, 10, 9])),
            Err(PresentationError::NotInClass { .. })
        ));
    }

    #[test]
    fn komeda_parameters_and_constructor() {
        let k = komeda(&sg(&[13, 9, 11, 14])).unwrap();
        assert_eq!(k.perm, [0, 1, 2, 3]);
        assert_eq!(
            k.params,
            KomedaParams {
                alpha: [3, 3, 2, 3],
                alpha_21: 1
            }
        );
        let s = from_komeda(KomedaParams {
            alpha: [5, 2, 2, 2],
            alpha_21: 2,
        })
        .unwrap();
        assert_eq!(s.generators(), &[5, 12, 11, 14]);
        let s = from_komeda(KomedaParams {
            alpha: [4, 2, 2, 2],
            alpha_21: 2,
        })
        .unwrap();
        assert_eq!(s.generators(), &[5, 11, 8, 12]);
        assert!(matches!(
            from_komeda(KomedaParams {
                alpha: [3, 2, 2, 2],
                alpha_21: 3
            }),
            Err(PresentationError::InvalidParameters(_))
        ));
    }

    #[test]
    fn ci4_decompositions() {
        let d = ci4(&sg(&[75, 180, 119, 136])).unwrap();
        match d.decomposition {
            Ci4Case::CaseII {
                p,
                p_prime,
                quadruple,
                ref pairs_12,
                ref pairs_34,
                ..
            } => {
                assert_eq!((p, p_prime), (15, 17));
                assert_eq!(quadruple, [1, 1, 1, 1]);
                assert_eq!(pairs_12.len(), 1);
                assert_eq!(pairs_34.len(), 1);
            }
            _ => panic!("expected case II"),
        }
        let d = ci4(&sg(&[8, 12, 10, 9])).unwrap();
        match d.decomposition {
            Ci4Case::CaseI {
                ell,
                ref inner,
                perm,
                ..
            } => {
                assert_eq!(ell, 2);
                assert_eq!(perm, [0, 1, 2, 3]);
                assert_eq!((inner.m1, inner.m2, inner.alpha_3), (2, 3, 2));
            }
            _ => panic!("expected case I"),
        }
        assert!(ci4(&sg(&[7, 9, 8, 13])).is_none());
    }

    #[test]
    fn ideal_generators() {
        let s = sg(&[7, 9, 10]);
        let f = generators_ideal(&s, &classify(&s).unwrap()).unwrap();
        assert_eq!(
            strings(&f),
            ["x1^4 - x2^2*x3", "x2^3 - x1*x3^2", "x3^3 - x1^3*x2"]
        );

        let s = sg(&[13, 9, 11, 14]);
        let f = generators_ideal(&s, &classify(&s).unwrap()).unwrap();
        assert_eq!(f[4].to_string(), "x1^2*x3 - x2*x4^2");

        let s = sg(&[4, 6, 5]);
        let f = generators_ideal(&s, &classify(&s).unwrap()).unwrap();
        assert_eq!(strings(&f), ["x1^3 - x2^2", "x3^2 - x1*x2"]);

        for gens in [
            &[7u64, 9, 8, 13][..],
            &[75, 180, 119, 136],
            &[8, 12, 10, 9],
            &[2, 3],
            &[5, 11, 8, 12],
        ] {
            let s = sg(gens);
            for p in generators_ideal(&s, &classify(&s).unwrap()).unwrap() {
                assert!(p.is_homogeneous().is_some(), "{p} in {s}");
                assert!(p.specialize().is_empty());
            }
        }
    }

    #[test]
    fn relabelled_inputs_are_recognised() {
        // Same semigroups with generators in sorted order.
        let b = bresinsky(&sg(&[7, 8, 9, 13])).unwrap();
        assert_eq!(b.perm.map(|i| [7, 8, 9, 13][i]), [7, 9, 8, 13]);
        let k = komeda(&sg(&[9, 11, 13, 14])).unwrap();
        assert_eq!(k.perm.map(|i| [9, 11, 13, 14][i]), [13, 9, 11, 14]);
    }
}
