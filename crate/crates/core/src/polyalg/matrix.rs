use serde::Serialize;

use super::{Poly, PolyError, PolyRing};

/// A nonzero entry whose degree does not match its row and column twists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingViolation {
    pub row: usize,
    pub col: usize,
    pub expected: i64,
    /// `None` when the entry is not homogeneous at all.
    pub found: Option<u64>,
}

/// Matrix of a degree-zero map `⊕_j A[-col_degrees[j]] -> ⊕_i A[-row_degrees[i]]`.
///
/// Every nonzero entry `(i, j)` is homogeneous of degree
/// `col_degrees[j] - row_degrees[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    ring: PolyRing,
    entries: Vec<Vec<Poly>>,
    row_degrees: Vec<u64>,
    col_degrees: Vec<u64>,
}

impl GradedMatrix {
    pub fn new(
        ring: &PolyRing,
        entries: Vec<Vec<Poly>>,
        row_degrees: Vec<u64>,
        col_degrees: Vec<u64>,
    ) -> Result<Self, PolyError> {
        check_shape(&entries, row_degrees.len(), col_degrees.len())?;
        let m = Self {
            ring: ring.clone(),
            entries,
            row_degrees,
            col_degrees,
        };
        if let Some(v) = m.grading_violations().into_iter().next() {
            return Err(PolyError::GradingViolation {
                row: v.row,
                col: v.col,
                reason: format!("expected degree {}, found {:?}", v.expected, v.found),
            });
        }
        Ok(m)
    }

    /// Builds the matrix taking the column twists from the first nonzero
    /// entry of each column, then validates the rest.
    pub fn with_inferred_columns(
        ring: &PolyRing,
        entries: Vec<Vec<Poly>>,
        row_degrees: Vec<u64>,
    ) -> Result<Self, PolyError> {
        let cols = entries.first().map_or(0, Vec::len);
        check_shape(&entries, row_degrees.len(), cols)?;
        let mut col_degrees = Vec::with_capacity(cols);
        for j in 0..cols {
            let (i, d) = (0..entries.len())
                .find_map(|i| entries[i][j].is_homogeneous().map(|d| (i, d)))
                .ok_or_else(|| PolyError::GradingViolation {
                    row: 0,
                    col: j,
                    reason: "column has no homogeneous nonzero entry".into(),
                })?;
            col_degrees.push(row_degrees[i] + d);
        }
        Self::new(ring, entries, row_degrees, col_degrees)
    }

    /// Row vector `(f_1, ..., f_n)` out of the free module of rank one.
    pub fn row_vector(ring: &PolyRing, polys: Vec<Poly>) -> Result<Self, PolyError> {
        Self::with_inferred_columns(ring, vec![polys], vec![0])
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn row_degrees(&self) -> &[u64] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[u64] {
        &self.col_degrees
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn grading_violations(&self) -> Vec<GradingViolation> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let expected = self.col_degrees[j] as i64 - self.row_degrees[i] as i64;
                let found = p.is_homogeneous();
                if found.map(|d| d as i64) != Some(expected) {
                    out.push(GradingViolation {
                        row: i,
                        col: j,
                        expected,
                        found,
                    });
                }
            }
        }
        out
    }

    /// Matrix product; the column twists of `self` must equal the row twists
    /// of `other`.
    pub fn mat_mul(&self, other: &GradedMatrix) -> Result<GradedMatrix, PolyError> {
        if self.col_degrees != other.row_degrees {
            return Err(PolyError::DegreeMismatch(format!(
                "left columns {:?} vs right rows {:?}",
                self.col_degrees, other.row_degrees
            )));
        }
        let mut entries = vec![vec![self.ring.zero(); other.cols()]; self.rows()];
        for (i, out_row) in entries.iter_mut().enumerate() {
            for (j, out) in out_row.iter_mut().enumerate() {
                for t in 0..self.cols() {
                    let (a, b) = (&self.entries[i][t], &other.entries[t][j]);
                    if !a.is_zero() && !b.is_zero() {
                        *out = &*out + &a.try_mul(b)?;
                    }
                }
            }
        }
        GradedMatrix::new(
            &self.ring,
            entries,
            self.row_degrees.clone(),
            other.col_degrees.clone(),
        )
    }

    /// Entries of the transposed matrix (twists are not carried over).
    pub fn transpose_entries(&self) -> Vec<Vec<Poly>> {
        (0..self.cols())
            .map(|j| {
                (0..self.rows())
                    .map(|i| self.entries[i][j].clone())
                    .collect()
            })
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Poly>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect()
    }

    /// Determinant of the square submatrix on `rows x cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Poly, PolyError> {
        if rows.len() != cols.len() {
            return Err(PolyError::NotSquare);
        }
        Ok(determinant(&self.ring, &self.submatrix(rows, cols)))
    }

    /// Copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, p: Poly) -> Result<GradedMatrix, PolyError> {
        let mut entries = self.entries.clone();
        entries[i][j] = p;
        GradedMatrix::new(
            &self.ring,
            entries,
            self.row_degrees.clone(),
            self.col_degrees.clone(),
        )
    }

    /// Entries rendered with the ASCII polynomial grammar.
    pub fn entry_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect()
    }
}

fn check_shape(entries: &[Vec<Poly>], rows: usize, cols: usize) -> Result<(), PolyError> {
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        return Err(PolyError::DegreeMismatch(format!(
            "entries do not form a {rows}x{cols} matrix"
        )));
    }
    Ok(())
}

/// Cofactor expansion along the first row. Intended for the small matrices
/// that occur here (at most 5x5).
pub fn determinant(ring: &PolyRing, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    match n {
        0 => return ring.one(),
        1 => return m[0][0].clone(),
        2 => return &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {}
    }
    let mut acc = ring.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &determinant(ring, &sub);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// Pfaffian of a 4x4 alternating matrix: `a01 a23 - a02 a13 + a03 a12`.
pub fn pfaffian4(m: &[Vec<Poly>]) -> Result<Poly, PolyError> {
    if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
        return Err(PolyError::NotSquare);
    }
    for i in 0..4 {
        if !m[i][i].is_zero() {
            return Err(PolyError::NotSkewSymmetric);
        }
        for j in (i + 1)..4 {
            if m[i][j] != -&m[j][i] {
                return Err(PolyError::NotSkewSymmetric);
            }
        }
    }
    Ok(&(&(&m[0][1] * &m[2][3]) - &(&m[0][2] * &m[1][3])) + &(&m[0][3] * &m[1][2]))
}
