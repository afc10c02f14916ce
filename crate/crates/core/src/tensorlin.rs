//! Dense exact matrices on tensor powers.
//!
//! Basis convention: in `V^{⊗a} ⊗ V^{⊗b}` the vector `e_i ⊗ e_j` has flat
//! index `i * d^b + j` (left factor most significant, 0-based). Rank and
//! kernel computations use fraction-free Gauss–Jordan elimination, so
//! Laurent entries are handled over their fraction field without ever
//! leaving the polynomial ring.

use std::fmt;

use thiserror::Error;

use crate::scalar::{format_scalar, Ring, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    Shape(usize, usize, usize, usize),
    #[error("ring mismatch: {0} vs {1}")]
    Ring(Ring, Ring),
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    /// Builds a matrix from row-major entries, checking that every entry lives in `ring`.
    pub fn from_entries(
        ring: Ring,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.ring() != ring) {
            return Err(MatrixError::Ring(ring, bad.ring()));
        }
        Ok(ExactMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(MatrixError::Shape(r, c, 1, bad.len()));
        }
        Self::from_entries(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(ring: Ring, rows: &[&[i64]]) -> Self {
        let scalars = rows
            .iter()
            .map(|row| row.iter().map(|&v| Scalar::from_i64(ring, v)).collect())
            .collect();
        Self::from_rows(ring, scalars).expect("rectangular integer rows")
    }

    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            entries: vec![Scalar::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(ring);
        }
        m
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert_eq!(value.ring(), self.ring, "entry ring");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    fn check_same(&self, other: &ExactMatrix) -> Result<(), MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::Ring(self.ring, other.ring));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.with_entries(entries))
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        self.check_same(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.with_entries(entries))
    }

    /// In-place `self += other`.
    pub fn add_assign(&mut self, other: &ExactMatrix) -> Result<(), MatrixError> {
        self.check_same(other)?;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Result<ExactMatrix, MatrixError> {
        if c.ring() != self.ring {
            return Err(MatrixError::Ring(self.ring, c.ring()));
        }
        let entries = self.entries.iter().map(|a| a * c).collect();
        Ok(self.with_entries(entries))
    }

    fn with_entries(&self, entries: Vec<Scalar>) -> ExactMatrix {
        ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Matrix product `self · other`. Zero entries of `self` are skipped, which
    /// matters for the sparse operators that dominate this crate.
    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::Ring(self.ring, other.ring));
        }
        if self.cols != other.rows {
            return Err(MatrixError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let zero = Scalar::zero(self.ring);
        let mut entries = vec![zero; self.rows * other.cols];
        for r in 0..self.rows {
            let out = &mut entries[r * other.cols..(r + 1) * other.cols];
            for (k, a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (c, b) in other.row(k).iter().enumerate() {
                    if !b.is_zero() {
                        out[c] = &out[c] + &(a * b);
                    }
                }
            }
        }
        Ok(ExactMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix {
            ring: self.ring,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Kronecker product; `(A ⊗ B)[i·rB + k, j·cB + l] = A[i, j] · B[k, l]`.
    pub fn kron(&self, other: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
        if self.ring != other.ring {
            return Err(MatrixError::Ring(self.ring, other.ring));
        }
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ExactMatrix::zeros(self.ring, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies `f` to every entry, producing a matrix over `ring`.
    pub fn try_map<F>(&self, ring: Ring, f: F) -> Result<ExactMatrix, MatrixError>
    where
        F: Fn(&Scalar) -> Result<Scalar, ScalarError>,
    {
        let entries = self
            .entries
            .iter()
            .map(&f)
            .collect::<Result<Vec<_>, _>>()?;
        ExactMatrix::from_entries(ring, self.rows, self.cols, entries)
    }

    /// Embeds the entries into another ring (integers into anything, rationals
    /// into Laurent or a prime field).
    pub fn convert(&self, ring: Ring) -> Result<ExactMatrix, MatrixError> {
        self.try_map(ring, |s| s.convert(ring))
    }

    /// First position (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &ExactMatrix) -> Option<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols || self.ring != other.ring {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.cols, i % self.cols))
    }

    /// First nonzero position in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|i| (i / self.cols, i % self.cols))
    }

    /// Rank over the fraction field of the entry ring.
    pub fn rank(&self) -> usize {
        Echelon::compute(self).pivots.len()
    }

    /// Basis of `{v : self · v = 0}` over the fraction field.
    pub fn kernel_basis(&self) -> KernelBasis {
        Echelon::compute(self).kernel()
    }
}

/// A basis of a null space; each vector has `ambient` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub ambient: usize,
    pub vectors: Vec<Vec<Scalar>>,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The basis vectors stacked as the rows of a matrix.
    pub fn as_rows(&self, ring: Ring) -> ExactMatrix {
        ExactMatrix::from_entries(
            ring,
            self.vectors.len(),
            self.ambient,
            self.vectors.iter().flatten().cloned().collect(),
        )
        .expect("kernel vectors share the ring")
    }
}

/// Fraction-free reduced echelon form.
///
/// After elimination every pivot entry equals the same ring element (the last
/// pivot, a minor of the input) and every pivot column is zero off its pivot.
struct Echelon {
    ring: Ring,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn compute(m: &ExactMatrix) -> Echelon {
        let work_ring = match m.ring {
            Ring::Integers => Ring::Rationals,
            r => r,
        };
        let src = if work_ring == m.ring {
            m.clone()
        } else {
            m.convert(work_ring).expect("integers embed in rationals")
        };
        let mut rows: Vec<Vec<Scalar>> = (0..src.rows)
            .map(|r| src.row(r).to_vec())
            .filter(|row| row.iter().any(|e| !e.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut prev = Scalar::one(work_ring);
        let mut rank = 0;
        for col in 0..src.cols {
            if rank == rows.len() {
                break;
            }
            let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            let p = pivot_row[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank {
                    continue;
                }
                let factor = row[col].clone();
                for j in 0..src.cols {
                    // entries left of `col` in non-pivot columns are already zero
                    // below the pivot row; above it they must still be rescaled.
                    let updated = &(&p * &row[j]) - &(&factor * &pivot_row[j]);
                    row[j] = updated
                        .exact_div(&prev)
                        .expect("fraction-free elimination divides exactly");
                }
            }
            prev = p;
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        Echelon {
            ring: work_ring,
            cols: src.cols,
            rows,
            pivots,
        }
    }

    /// Kernel vectors, one per free column in increasing order. Over a field the
    /// free coordinate is 1; over the Laurent ring the vector is scaled to have
    /// polynomial entries with no common factor.
    fn kernel(&self) -> KernelBasis {
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains(c)).collect();
        let mut vectors = Vec::with_capacity(free.len());
        let d = self
            .pivots
            .first()
            .map(|&c| self.rows[0][c].clone())
            .unwrap_or_else(|| Scalar::one(self.ring));
        for &f in &free {
            let mut v = vec![Scalar::zero(self.ring); self.cols];
            v[f] = d.clone();
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                v[pc] = -&row[f];
            }
            vectors.push(normalize_vector(v, f));
        }
        KernelBasis {
            ambient: self.cols,
            vectors,
        }
    }
}

fn normalize_vector(v: Vec<Scalar>, free: usize) -> Vec<Scalar> {
    let lead = v[free].clone();
    match lead {
        Scalar::Laurent(_) => {
            let g = v
                .iter()
                .filter_map(Scalar::as_laurent)
                .fold(crate::scalar::Laurent::zero(), |acc, p| acc.gcd(p));
            // Strip the common polynomial factor and the q-power and scale of the
            // free coordinate, so that coordinate becomes a monic polynomial.
            let lead = lead.as_laurent().expect("laurent");
            let unit_shift = lead.low_exponent().unwrap_or(0);
            let mut divisor = g.shift(unit_shift);
            let lead_over_g = lead.exact_div(&divisor).expect("gcd divides");
            divisor = divisor.scale(&lead_over_g.leading_coefficient());
            v.into_iter()
                .map(|e| {
                    let p = e.as_laurent().expect("laurent");
                    Scalar::Laurent(p.exact_div(&divisor).expect("gcd divides every entry"))
                })
                .collect()
        }
        _ => {
            let inv = lead.invert().expect("field pivot is invertible");
            v.iter().map(|e| e * &inv).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    const Q: Ring = Ring::Rationals;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64(Q, rows)
    }

    #[test]
    fn product_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.mul(&ExactMatrix::identity(Q, 2)).unwrap(), a);
        assert_eq!(
            a.mul(&m(&[&[0, 1], &[1, 0]])).unwrap(),
            m(&[&[2, 1], &[4, 3]])
        );
        assert!(matches!(
            a.mul(&m(&[&[1, 2, 3]])),
            Err(MatrixError::Shape(..))
        ));
    }

    #[test]
    fn kron_examples() {
        let i2 = ExactMatrix::identity(Q, 2);
        assert!(i2.kron(&i2).unwrap().is_identity());
        let e11 = m(&[&[1, 0], &[0, 0]]);
        let e22 = m(&[&[0, 0], &[0, 1]]);
        let k = e11.kron(&e22).unwrap();
        assert_eq!(k.first_nonzero(), Some((1, 1)));
        assert_eq!(k.entries().iter().filter(|e| !e.is_zero()).count(), 1);
    }

    #[test]
    fn transpose_examples() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.transpose().transpose(), a);
        assert!(ExactMatrix::identity(Q, 3).transpose().is_identity());
        let b = m(&[&[0, 1], &[7, 0]]);
        assert_eq!(
            a.kron(&b).unwrap().transpose(),
            a.transpose().kron(&b.transpose()).unwrap()
        );
    }

    #[test]
    fn ranks() {
        assert_eq!(ExactMatrix::zeros(Q, 3, 4).rank(), 0);
        assert_eq!(ExactMatrix::identity(Q, 5).rank(), 5);
        let l = |s: &str| parse_scalar(s, Ring::Laurent).unwrap();
        let a = ExactMatrix::from_rows(
            Ring::Laurent,
            vec![vec![l("1"), l("q")], vec![l("q"), l("q^2")]],
        )
        .unwrap();
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(ExactMatrix::identity(Q, 3).kernel_basis().is_empty());
        let k = ExactMatrix::zeros(Q, 2, 2).kernel_basis();
        assert_eq!(
            k.vectors,
            vec![
                vec![Scalar::one(Q), Scalar::zero(Q)],
                vec![Scalar::zero(Q), Scalar::one(Q)]
            ]
        );
    }

    #[test]
    fn laurent_kernel_is_annihilated() {
        let l = |s: &str| parse_scalar(s, Ring::Laurent).unwrap();
        let a = ExactMatrix::from_rows(
            Ring::Laurent,
            vec![
                vec![l("q"), l("q^2 - 1"), l("1")],
                vec![l("q^2"), l("q^3 - q"), l("q")],
            ],
        )
        .unwrap();
        let k = a.kernel_basis();
        assert_eq!(k.dimension(), 2);
        for v in &k.vectors {
            let col = ExactMatrix::from_entries(Ring::Laurent, 3, 1, v.clone()).unwrap();
            assert!(a.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn integer_matrices_are_promoted() {
        let a = ExactMatrix::from_i64(Ring::Integers, &[&[2, 4], &[1, 2]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.vectors[0][0].ring(), Ring::Rationals);
    }
}
