//! Numerical semigroups given by an ordered tuple of minimal generators.
//!
//! Membership is decided through the Apéry set of the smallest generator,
//! which is built once at construction time. Every other invariant in this
//! module (gaps, Frobenius number, pseudo-Frobenius numbers) is read off
//! that table or computed straight from the definitions, so the functions
//! here double as the reference oracle for the Betti-degree formulas in
//! [`crate::invariants`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

/// Default cap on the number of representations returned by
/// [`representations_over`].
pub const DEFAULT_REPRESENTATION_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("at least one generator is required")]
    Empty,
    #[error("generator at index {index} is not positive")]
    ZeroOrNegativeGenerator { index: usize },
    #[error("generators have gcd {gcd}, expected 1")]
    GcdNotOne { gcd: u64 },
    #[error("generator {value} at index {index} lies in the semigroup generated by the others")]
    NonMinimalGenerator { index: usize, value: u64 },
    #[error("{value} is not a positive element of the semigroup")]
    NotInSemigroup { value: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

/// Symmetry type of a numerical semigroup, read off its pseudo-Frobenius set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Symmetry {
    Symmetric,
    Pseudosymmetric,
    Neither,
}

/// One way of writing an element as a nonnegative combination of a base.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Representation {
    pub coefficients: Vec<u64>,
    pub value: u64,
}

/// Result of a bounded representation search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representations {
    /// Sorted lexicographically by coefficient vector.
    pub items: Vec<Representation>,
    /// Set when the search stopped at the limit.
    pub truncated: bool,
}

impl Representations {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn coefficient_vectors(&self) -> Vec<Vec<u64>> {
        self.items.iter().map(|r| r.coefficients.clone()).collect()
    }
}

/// A numerical semigroup `<n_1, ..., n_k>` with validated minimal generators.
///
/// Generator order is kept exactly as given; several constructions downstream
/// attach meaning to the position of each generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    /// Index of the smallest generator.
    modulus_index: usize,
    /// `apery[r]` is the least element of S congruent to `r` modulo the
    /// smallest generator.
    apery: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self, SemigroupError> {
        if generators.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if let Some(index) = generators.iter().position(|&n| n == 0) {
            return Err(SemigroupError::ZeroOrNegativeGenerator { index });
        }
        let gcd = generators.iter().fold(0u64, |acc, &n| acc.gcd(&n));
        if gcd != 1 {
            return Err(SemigroupError::GcdNotOne { gcd });
        }
        for (index, &value) in generators.iter().enumerate() {
            let others: Vec<u64> = generators
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != index)
                .map(|(_, &n)| n)
                .collect();
            if in_monoid(&others, value) {
                return Err(SemigroupError::NonMinimalGenerator { index, value });
            }
        }
        let (modulus_index, &modulus) = generators
            .iter()
            .enumerate()
            .min_by_key(|&(_, n)| *n)
            .expect("nonempty");
        let apery = apery_table(generators, modulus)?;
        Ok(Self {
            generators: generators.to_vec(),
            modulus_index,
            apery,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Embedding dimension.
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    /// Sum of the generators, the shift between top Betti degrees and PF(S).
    pub fn generator_sum(&self) -> u64 {
        self.generators.iter().sum()
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[self.modulus_index]
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        let m = self.multiplicity();
        n >= self.apery[(n % m) as usize]
    }

    pub fn contains_u(&self, n: u64) -> bool {
        let m = self.multiplicity();
        n >= self.apery[(n % m) as usize]
    }

    /// Largest integer outside S; `-1` when S is all of N.
    pub fn frobenius(&self) -> i64 {
        let max = *self.apery.iter().max().expect("nonempty table");
        max as i64 - self.multiplicity() as i64
    }

    pub fn gaps(&self) -> Vec<u64> {
        let g = self.frobenius();
        if g < 1 {
            return Vec::new();
        }
        (1..=g as u64).filter(|&n| !self.contains_u(n)).collect()
    }

    /// The Apéry set of the smallest generator, indexed by residue.
    pub fn apery_of_multiplicity(&self) -> &[u64] {
        &self.apery
    }

    /// `Ap(S, m)`: for each residue class modulo `m`, the least element of S
    /// in that class. Indexed by residue.
    pub fn apery(&self, m: u64) -> Result<Vec<u64>, SemigroupError> {
        if m == 0 || !self.contains_u(m) {
            return Err(SemigroupError::NotInSemigroup { value: m });
        }
        apery_table(&self.generators, m)
    }

    /// PF(S) straight from the definition: gaps `n` with `n + n_i` in S for
    /// every generator. Sorted ascending.
    pub fn pseudofrobenius(&self) -> Vec<i64> {
        let gaps = self.gaps();
        if gaps.is_empty() {
            return vec![-1];
        }
        gaps.into_iter()
            .filter(|&n| self.generators.iter().all(|&g| self.contains_u(n + g)))
            .map(|n| n as i64)
            .collect()
    }

    /// Cardinality of PF(S).
    pub fn type_number(&self) -> usize {
        self.pseudofrobenius().len()
    }

    pub fn classify_symmetry(&self) -> Symmetry {
        let pf = self.pseudofrobenius();
        let g = self.frobenius();
        match pf.as_slice() {
            [only] if *only == g => Symmetry::Symmetric,
            [half, top] if *top == g && g % 2 == 0 && *half == g / 2 => Symmetry::Pseudosymmetric,
            _ => Symmetry::Neither,
        }
    }

    pub fn representations(&self, s: u64, limit: usize) -> Representations {
        representations_over(&self.generators, s, limit)
    }

    /// Least `t >= 1` such that `t * n_i` lies in the semigroup generated by
    /// the other generators.
    pub fn minimal_multiple(&self, i: usize) -> Result<u64, SemigroupError> {
        let others: Vec<u64> = self
            .generators
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &n)| n)
            .collect();
        minimal_multiple_in(&others, self.generators[i])
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, n) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ">")
    }
}

/// Dijkstra over residues modulo `m`; edges add a generator.
fn apery_table(generators: &[u64], m: u64) -> Result<Vec<u64>, SemigroupError> {
    let m_us = usize::try_from(m).map_err(|_| SemigroupError::Overflow("Apéry table size"))?;
    let mut dist = vec![u64::MAX; m_us];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in generators {
            let nd = d
                .checked_add(g)
                .ok_or(SemigroupError::Overflow("Apéry table"))?;
            let nr = ((r as u64 + g) % m) as usize;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    if dist.contains(&u64::MAX) {
        // Only reachable when gcd(generators, m) > 1.
        return Err(SemigroupError::GcdNotOne {
            gcd: generators.iter().fold(m, |acc, &n| acc.gcd(&n)),
        });
    }
    Ok(dist)
}

/// Whether `target` is a nonnegative integer combination of `base`.
/// An empty base only reaches 0.
pub fn in_monoid(base: &[u64], target: u64) -> bool {
    if target == 0 {
        return true;
    }
    let Ok(len) = usize::try_from(target) else {
        return false;
    };
    let mut reach = vec![false; len + 1];
    reach[0] = true;
    for v in 1..=len {
        reach[v] = base
            .iter()
            .any(|&b| b > 0 && (b as usize) <= v && reach[v - b as usize]);
    }
    reach[len]
}

/// Least `t >= 1` with `t * n` in the monoid generated by `base`.
///
/// The search stops at `prod(base)`: `(prod base) * n` is always a multiple
/// of any single base element, so a hit exists at or below the cap whenever
/// the base is nonempty.
pub fn minimal_multiple_in(base: &[u64], n: u64) -> Result<u64, SemigroupError> {
    if base.is_empty() {
        return Err(SemigroupError::NotInSemigroup { value: n });
    }
    let cap = base
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b))
        .ok_or(SemigroupError::Overflow("minimal multiple cap"))?;
    // Incremental reachability, extended as t grows.
    let mut reach: Vec<bool> = vec![true];
    for t in 1..=cap {
        let target = t
            .checked_mul(n)
            .ok_or(SemigroupError::Overflow("minimal multiple"))? as usize;
        let start = reach.len();
        reach.resize(target + 1, false);
        for v in start..=target {
            reach[v] = base
                .iter()
                .any(|&b| (b as usize) <= v && reach[v - b as usize]);
        }
        if reach[target] {
            return Ok(t);
        }
    }
    Err(SemigroupError::NotInSemigroup { value: n })
}

/// All nonnegative solutions of `sum u_i * base_i = target`, by depth-first
/// search from the last index down. At most `limit` solutions are returned.
pub fn representations_over(base: &[u64], target: u64, limit: usize) -> Representations {
    fn go(
        base: &[u64],
        idx: usize,
        remaining: u64,
        coeffs: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        limit: usize,
    ) -> bool {
        if out.len() >= limit {
            return false;
        }
        if idx == 0 {
            let b = base[0];
            if b == 0 {
                if remaining == 0 {
                    coeffs[0] = 0;
                    out.push(coeffs.clone());
                }
            } else if remaining.is_multiple_of(b) {
                coeffs[0] = remaining / b;
                out.push(coeffs.clone());
            }
            return true;
        }
        let b = base[idx];
        let max = if b == 0 { 0 } else { remaining / b };
        for u in (0..=max).rev() {
            coeffs[idx] = u;
            if !go(base, idx - 1, remaining - u * b, coeffs, out, limit) {
                return false;
            }
        }
        coeffs[idx] = 0;
        true
    }

    if base.is_empty() {
        let items = if target == 0 {
            vec![Representation {
                coefficients: Vec::new(),
                value: 0,
            }]
        } else {
            Vec::new()
        };
        return Representations {
            items,
            truncated: false,
        };
    }
    let mut out = Vec::new();
    let mut coeffs = vec![0; base.len()];
    let complete = go(base, base.len() - 1, target, &mut coeffs, &mut out, limit);
    let mut items: Vec<Representation> = out
        .into_iter()
        .map(|coefficients| Representation {
            coefficients,
            value: target,
        })
        .collect();
    items.sort();
    Representations {
        items,
        truncated: !complete,
    }
}
