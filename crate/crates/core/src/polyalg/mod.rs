//! Sparse multivariate polynomials over the integers, graded by a weight
//! vector (the semigroup generators), plus graded matrices between twisted
//! free modules.
//!
//! Terms are stored keyed by `(weighted degree, exponent vector)` so two
//! polynomials are equal exactly when their term maps are equal. Display
//! puts positive terms before negative ones, each group descending in that
//! key, so a binomial `m - m'` prints as written.

mod matrix;
mod parse;

pub use matrix::{determinant, pfaffian4, GradedMatrix, GradingViolation};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomials live in rings with different gradings")]
    RingMismatch,
    #[error("matrix shapes or degrees do not chain: {0}")]
    DegreeMismatch(String),
    #[error("entry ({row},{col}) violates the grading: {reason}")]
    GradingViolation {
        row: usize,
        col: usize,
        reason: String,
    },
    #[error("matrix is not skew-symmetric with zero diagonal")]
    NotSkewSymmetric,
    #[error("matrix is not square")]
    NotSquare,
    #[error("variable index {0} out of range")]
    VariableOutOfRange(usize),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Exponent vector of a monomial in `x_1, ..., x_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }
}

/// Weighted degree `sum e_i * n_i` of an exponent vector.
pub fn sdegree(exponents: &[u32], weights: &[u64]) -> Result<u64, PolyError> {
    if exponents.len() != weights.len() {
        return Err(PolyError::DimensionMismatch {
            expected: weights.len(),
            found: exponents.len(),
        });
    }
    let mut total = 0u64;
    for (&e, &w) in exponents.iter().zip(weights) {
        total = (e as u64)
            .checked_mul(w)
            .and_then(|t| total.checked_add(t))
            .expect("degree overflow");
    }
    Ok(total)
}

/// The graded polynomial ring `Z[x_1..x_k]` with `deg x_i = weights[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    weights: Arc<[u64]>,
}

impl PolyRing {
    pub fn new(weights: &[u64]) -> Self {
        Self {
            weights: weights.into(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn zero(&self) -> Poly {
        Poly {
            weights: self.weights.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: i128) -> Poly {
        self.term(c, &vec![0; self.nvars()])
            .expect("constant has the right arity")
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    /// `x_{i+1}` (zero-based index).
    pub fn var(&self, i: usize) -> Result<Poly, PolyError> {
        if i >= self.nvars() {
            return Err(PolyError::VariableOutOfRange(i + 1));
        }
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.term(1, &e)
    }

    pub fn monomial(&self, exponents: &[u32]) -> Result<Poly, PolyError> {
        self.term(1, exponents)
    }

    pub fn term(&self, coeff: i128, exponents: &[u32]) -> Result<Poly, PolyError> {
        let degree = sdegree(exponents, &self.weights)?;
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(
                TermKey {
                    degree,
                    monomial: Monomial(exponents.to_vec()),
                },
                coeff,
            );
        }
        Ok(Poly {
            weights: self.weights.clone(),
            terms,
        })
    }

    /// Monomial given as sparse `(zero-based variable, exponent)` pairs.
    pub fn monomial_sparse(&self, factors: &[(usize, u32)]) -> Result<Poly, PolyError> {
        let mut e = vec![0u32; self.nvars()];
        for &(i, p) in factors {
            if i >= self.nvars() {
                return Err(PolyError::VariableOutOfRange(i + 1));
            }
            e[i] += p;
        }
        self.monomial(&e)
    }

    /// `m_plus - m_minus` for two sparse monomials.
    pub fn binomial(
        &self,
        plus: &[(usize, u32)],
        minus: &[(usize, u32)],
    ) -> Result<Poly, PolyError> {
        Ok(self.monomial_sparse(plus)? - self.monomial_sparse(minus)?)
    }

    /// Parse the ASCII grammar produced by `Display` for [`Poly`].
    pub fn parse(&self, s: &str) -> Result<Poly, PolyError> {
        parse::parse(self, s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct TermKey {
    degree: u64,
    monomial: Monomial,
}

/// A polynomial with integer coefficients. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    weights: Arc<[u64]>,
    terms: BTreeMap<TermKey, i128>,
}

impl Poly {
    pub fn ring(&self) -> PolyRing {
        PolyRing {
            weights: self.weights.clone(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in display order: positive coefficients first, then weighted
    /// degree descending, then lex descending.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i128)> + '_ {
        let pos = self.terms.iter().rev().filter(|(_, &c)| c > 0);
        let neg = self.terms.iter().rev().filter(|(_, &c)| c < 0);
        pos.chain(neg).map(|(k, &c)| (&k.monomial, c))
    }

    /// The common weighted degree of all terms, or `None` when the terms
    /// disagree or the polynomial is zero.
    pub fn is_homogeneous(&self) -> Option<u64> {
        let first = self.terms.keys().next()?.degree;
        let last = self.terms.keys().next_back()?.degree;
        (first == last).then_some(first)
    }

    fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.weights.len() != other.weights.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.weights.len(),
                found: other.weights.len(),
            });
        }
        if self.weights != other.weights {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (k, &c) in &other.terms {
            accumulate(&mut terms, k.clone(), c);
        }
        Ok(Poly {
            weights: self.weights.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut terms = BTreeMap::new();
        for (ka, &ca) in &self.terms {
            for (kb, &cb) in &other.terms {
                let c = ca.checked_mul(cb).expect("coefficient overflow");
                let key = TermKey {
                    degree: ka.degree + kb.degree,
                    monomial: ka.monomial.mul(&kb.monomial),
                };
                accumulate(&mut terms, key, c);
            }
        }
        Ok(Poly {
            weights: self.weights.clone(),
            terms,
        })
    }

    fn neg_ref(&self) -> Poly {
        Poly {
            weights: self.weights.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, &c)| (k.clone(), c.checked_neg().expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: i128) -> Poly {
        if c == 0 {
            return self.ring().zero();
        }
        Poly {
            weights: self.weights.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, &v)| (k.clone(), v.checked_mul(c).expect("coefficient overflow")))
                .collect(),
        }
    }

    /// Substitute `x_i -> t^{w_i}` and return the resulting univariate
    /// polynomial as `(exponent, coefficient)` pairs with zero sums dropped.
    pub fn specialize(&self) -> BTreeMap<u64, i128> {
        let mut out: BTreeMap<u64, i128> = BTreeMap::new();
        for (k, &c) in &self.terms {
            let e = out.entry(k.degree).or_insert(0);
            *e = e.checked_add(c).expect("coefficient overflow");
        }
        out.retain(|_, c| *c != 0);
        out
    }
}

fn accumulate(terms: &mut BTreeMap<TermKey, i128>, key: TermKey, c: i128) {
    use std::collections::btree_map::Entry;
    match terms.entry(key) {
        Entry::Vacant(v) => {
            if c != 0 {
                v.insert(c);
            }
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().checked_add(c).expect("coefficient overflow");
            if sum == 0 {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let abs = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if abs != 1 || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", v + 1)),
                    _ => factors.push(format!("x{}^{}", v + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::new(&[7, 9, 10])
    }

    #[test]
    fn sdegree_examples() {
        let w = [7, 9, 10];
        assert_eq!(sdegree(&[4, 0, 0], &w).unwrap(), 28);
        assert_eq!(sdegree(&[0, 3, 0], &w).unwrap(), 27);
        assert_eq!(sdegree(&[0, 0, 0], &w).unwrap(), 0);
        assert!(matches!(
            sdegree(&[1, 2], &w),
            Err(PolyError::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn herzog_binomial_is_homogeneous() {
        let r = ring();
        let f1 = r.binomial(&[(0, 4)], &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(f1.is_homogeneous(), Some(28));
        assert_eq!(f1.to_string(), "x1^4 - x2^2*x3");
        let g = &f1 + &r.var(0).unwrap();
        assert_eq!(g.is_homogeneous(), None);
    }

    #[test]
    fn zero_laws() {
        let r = ring();
        let p = r.binomial(&[(0, 4)], &[(1, 2), (2, 1)]).unwrap() + r.constant(3);
        assert!((&p * &r.zero()).is_zero());
        assert!((&p + &(-&p)).is_zero());
        assert_eq!(r.zero().is_homogeneous(), None);
        assert_eq!(r.zero().to_string(), "0");
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = PolyRing::new(&[2, 3]).var(0).unwrap();
        let b = PolyRing::new(&[2, 3, 5]).var(0).unwrap();
        assert!(matches!(
            a.try_add(&b),
            Err(PolyError::DimensionMismatch { .. })
        ));
        let c = PolyRing::new(&[2, 5]).var(0).unwrap();
        assert_eq!(a.try_mul(&c), Err(PolyError::RingMismatch));
    }

    #[test]
    fn rendering() {
        let r = PolyRing::new(&[7, 9, 8, 13]);
        let p = r.binomial(&[(0, 3)], &[(2, 1), (3, 1)]).unwrap();
        assert_eq!(p.to_string(), "x1^3 - x3*x4");
        let q = r.term(-2, &[0, 1, 0, 0]).unwrap() + r.constant(5);
        assert_eq!(q.to_string(), "5 - 2*x2");
    }

    #[test]
    fn specialization_of_binomial_vanishes() {
        let r = ring();
        let f = r.binomial(&[(1, 3)], &[(0, 1), (2, 2)]).unwrap();
        assert!(f.specialize().is_empty());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let r = ring();
        let f = r.binomial(&[(0, 1)], &[(1, 1)]).unwrap();
        assert_eq!(f.pow(3), &(&f * &f) * &f);
        assert_eq!(f.pow(0), r.one());
    }
}
