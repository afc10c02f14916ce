//! Yang–Baxter operators and the braid group representation they induce.
//!
//! Maps are stored as matrices acting on row vectors: the composite "first
//! `F`, then `G`" is the product `F · G`. Under this convention `ρ_B` sends a
//! braid word `σ_{a_1} ⋯ σ_{a_m}` to `B_{a_1} ⋯ B_{a_m}` (product in word
//! order), so `ρ_B(σ_1 σ_2) = (B ⊗ id)(id ⊗ B)` literally, and the shuffle
//! product built from it is the braided version of the usual riffle shuffle.

use thiserror::Error;

use crate::braidperm::{permutations, BraidWord, PermError};
use crate::scalar::{parse_scalar, Ring, Scalar, ScalarError};
use crate::tensorlin::{ExactMatrix, MatrixError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YbError {
    #[error("operator must be {expected}x{expected} for dim {dim}, got {rows}x{cols}")]
    Shape {
        dim: usize,
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("operator is not invertible (rank {rank} < {full})")]
    NotInvertible { rank: usize, full: usize },
    #[error("braid equation fails at basis index {0:?}")]
    BraidEquation(Vec<usize>),
    #[error("unknown catalog operator `{0}`")]
    UnknownOperator(String),
    #[error("catalog operator `{name}`: {reason}")]
    BadParameters { name: String, reason: String },
    #[error("generator position {k} out of range for {n} strands")]
    Position { k: usize, n: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Outcome of checking `(id⊗B)(B⊗id)(id⊗B) = (B⊗id)(id⊗B)(B⊗id)`.
#[derive(Clone, Debug)]
pub struct BraidCheck {
    pub residual: ExactMatrix,
    /// First nonzero residual entry in row-major order, if any.
    pub first_nonzero: Option<(usize, usize)>,
    pub dim: usize,
}

impl BraidCheck {
    pub fn passed(&self) -> bool {
        self.first_nonzero.is_none()
    }

    /// Tensor multi-index (0-based digits) of the row of the first failing entry.
    pub fn failing_index(&self) -> Option<Vec<usize>> {
        self.first_nonzero.map(|(r, _)| digits(r, self.dim, 3))
    }
}

/// Base-`d` digits of a flat index into `V^{⊗n}`, most significant first.
pub fn digits(mut flat: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

pub fn verify_braid_equation(m: &ExactMatrix, d: usize) -> Result<BraidCheck, YbError> {
    check_shape(m, d)?;
    let id = ExactMatrix::identity(m.ring(), d);
    let b1 = m.kron(&id)?;
    let b2 = id.kron(m)?;
    let lhs = b2.mul(&b1)?.mul(&b2)?;
    let rhs = b1.mul(&b2)?.mul(&b1)?;
    let residual = lhs.sub(&rhs)?;
    let first_nonzero = residual.first_nonzero();
    Ok(BraidCheck {
        residual,
        first_nonzero,
        dim: d,
    })
}

fn check_shape(m: &ExactMatrix, d: usize) -> Result<(), YbError> {
    let expected = d * d;
    if m.rows() != expected || m.cols() != expected {
        return Err(YbError::Shape {
            dim: d,
            expected,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// A validated Yang–Baxter operator on `V ⊗ V` with `dim V = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbOperator {
    dim: usize,
    matrix: ExactMatrix,
    name: Option<String>,
    verified: bool,
}

impl YbOperator {
    /// Validates shape, invertibility over the fraction field and the braid equation.
    pub fn new(matrix: ExactMatrix, dim: usize, name: Option<String>) -> Result<Self, YbError> {
        let check = verify_braid_equation(&matrix, dim)?;
        if let Some(idx) = check.failing_index() {
            return Err(YbError::BraidEquation(idx));
        }
        let rank = matrix.rank();
        if rank < dim * dim {
            return Err(YbError::NotInvertible {
                rank,
                full: dim * dim,
            });
        }
        Ok(YbOperator {
            dim,
            matrix,
            name,
            verified: true,
        })
    }

    /// Accepts any operator of the right shape without validation. Results
    /// derived from it must be reported as unverified.
    pub fn new_unchecked(
        matrix: ExactMatrix,
        dim: usize,
        name: Option<String>,
    ) -> Result<Self, YbError> {
        check_shape(&matrix, dim)?;
        Ok(YbOperator {
            dim,
            matrix,
            name,
            verified: false,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> Ring {
        self.matrix.ring()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Identity on `V^{⊗n}`.
    pub fn identity(&self, n: usize) -> ExactMatrix {
        ExactMatrix::identity(self.ring(), self.dim.pow(n as u32))
    }

    /// The operator transported to the dual space under the reversed pairing
    /// `<α⊗β, v⊗w> = <β,v><α,w>`: `R · Bᵀ · R` with `R` the factor swap.
    pub fn dual(&self) -> YbOperator {
        let r = reversal_matrix(self.ring(), self.dim, 2);
        let matrix = r
            .mul(&self.matrix.transpose())
            .and_then(|m| m.mul(&r))
            .expect("square operator");
        YbOperator {
            dim: self.dim,
            matrix,
            name: self.name.as_ref().map(|n| format!("{n}^dual")),
            verified: self.verified,
        }
    }

    /// `B_k = id_{k-1} ⊗ B ⊗ id_{n-k-1}` on `V^{⊗n}` (1-based `k`).
    pub fn lift_generator(&self, n: usize, k: usize) -> Result<ExactMatrix, YbError> {
        if k == 0 || k >= n {
            return Err(YbError::Position { k, n });
        }
        let d = self.dim;
        let left = ExactMatrix::identity(self.ring(), d.pow(k as u32 - 1));
        let right = ExactMatrix::identity(self.ring(), d.pow((n - k - 1) as u32));
        Ok(left.kron(&self.matrix)?.kron(&right)?)
    }

    /// `m · B_k` on `V^{⊗n}` without materializing `B_k`.
    pub fn apply_generator(&self, m: &ExactMatrix, n: usize, k: usize) -> Result<ExactMatrix, YbError> {
        if k == 0 || k >= n {
            return Err(YbError::Position { k, n });
        }
        let d = self.dim;
        let size = d.pow(n as u32);
        if m.cols() != size {
            return Err(MatrixError::Shape(m.rows(), m.cols(), size, size).into());
        }
        let ring = self.ring();
        let stride = d.pow((n - k - 1) as u32);
        let dd = d * d;
        // nonzero entries of B grouped by row
        let local: Vec<Vec<(usize, &Scalar)>> = (0..dd)
            .map(|a| {
                (0..dd)
                    .filter_map(|b| {
                        let e = self.matrix.get(a, b);
                        (!e.is_zero()).then_some((b, e))
                    })
                    .collect()
            })
            .collect();
        let mut out = ExactMatrix::zeros(ring, m.rows(), size);
        for r in 0..m.rows() {
            for (src, x) in m.row(r).iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let a = (src / stride) % dd;
                let base = src - a * stride;
                for &(b, coeff) in &local[a] {
                    let dst = base + b * stride;
                    let acc = out.get(r, dst) + &(x * coeff);
                    out.set(r, dst, acc);
                }
            }
        }
        Ok(out)
    }

    /// `m · ρ_B(w)`.
    pub fn apply_word(&self, m: &ExactMatrix, w: &BraidWord) -> Result<ExactMatrix, YbError> {
        let mut acc = m.clone();
        for &k in w.letters() {
            acc = self.apply_generator(&acc, w.strands(), k)?;
        }
        Ok(acc)
    }

    /// `ρ_B(w) = B_{a_1} ⋯ B_{a_m}`; the empty word gives the identity.
    pub fn rho(&self, w: &BraidWord) -> Result<ExactMatrix, YbError> {
        self.apply_word(&self.identity(w.strands()), w)
    }
}

/// Compares `ρ_B` over all reduced words of every permutation of `S_n`;
/// returns the first entry where two words of one permutation disagree.
pub fn matsumoto_defect(
    op: &YbOperator,
    n: usize,
    cap: usize,
) -> Result<Option<(usize, usize)>, YbError> {
    for p in permutations(n, cap)? {
        let mut words = p.all_reduced_words().into_iter();
        let Some(first) = words.next() else { continue };
        let reference = op.rho(&BraidWord::new(n, first)?)?;
        for w in words {
            if let Some(at) = op.rho(&BraidWord::new(n, w)?)?.first_difference(&reference) {
                return Ok(Some(at));
            }
        }
    }
    Ok(None)
}

/// Matrix of `v_1 ⊗ ... ⊗ v_m ↦ v_m ⊗ ... ⊗ v_1` on `V^{⊗m}`.
pub fn reversal_matrix(ring: Ring, d: usize, m: usize) -> ExactMatrix {
    let size = d.pow(m as u32);
    let mut out = ExactMatrix::zeros(ring, size, size);
    for i in 0..size {
        let mut ds = digits(i, d, m);
        ds.reverse();
        let j = ds.iter().fold(0, |acc, &x| acc * d + x);
        out.set(i, j, Scalar::one(ring));
    }
    out
}

/// Flip `τ(e_i ⊗ e_j) = e_j ⊗ e_i`.
pub fn flip_matrix(ring: Ring, d: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(ring, d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + j, j * d + i, Scalar::one(ring));
        }
    }
    m
}

/// The standard one-parameter Hecke operator `Ř` on a two-dimensional space:
/// `Ř = q` on `e_1⊗e_1` and `e_2⊗e_2`, swaps `e_1⊗e_2 ↔ e_2⊗e_1`, plus
/// `(q - q⁻¹)` on the diagonal entry of `e_2⊗e_1`. It satisfies
/// `(Ř - q)(Ř + q⁻¹) = 0`.
pub fn hecke_r_matrix() -> ExactMatrix {
    let l = |s: &str| parse_scalar(s, Ring::Laurent).expect("literal");
    let z = || l("0");
    ExactMatrix::from_rows(
        Ring::Laurent,
        vec![
            vec![l("q"), z(), z(), z()],
            vec![z(), z(), l("1"), z()],
            vec![z(), l("1"), l("q - q^-1"), z()],
            vec![z(), z(), z(), l("q")],
        ],
    )
    .expect("4x4")
}

/// Description of a built-in operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub rings: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "flip",
        rings: "any",
        params: "dim d (default 2)",
        summary: "tau(e_i x e_j) = e_j x e_i",
    },
    CatalogEntry {
        name: "signed-flip",
        rings: "any",
        params: "dim d (default 2)",
        summary: "-tau; W_n is the classical antisymmetrizer",
    },
    CatalogEntry {
        name: "scalar-q",
        rings: "laurent",
        params: "none (d = 1)",
        summary: "the 1x1 matrix (q); W_n = [n]_q!",
    },
    CatalogEntry {
        name: "hecke-q",
        rings: "laurent",
        params: "none (d = 2)",
        summary: "-q^-1 R for the standard Hecke R-matrix; equals -tau at q = 1",
    },
    CatalogEntry {
        name: "diagonal",
        rings: "any",
        params: "dim d (default 2), param c != 0 (default 2)",
        summary: "c * tau",
    },
];

/// Optional parameters for [`catalog`].
#[derive(Clone, Debug, Default)]
pub struct CatalogParams {
    pub dim: Option<usize>,
    pub param: Option<Scalar>,
}

pub fn catalog(name: &str, ring: Ring, params: &CatalogParams) -> Result<YbOperator, YbError> {
    let bad = |reason: &str| YbError::BadParameters {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    let need_laurent = |fixed_dim: usize| -> Result<(), YbError> {
        if ring != Ring::Laurent {
            return Err(bad("requires the laurent ring"));
        }
        if params.dim.is_some_and(|d| d != fixed_dim) {
            return Err(bad(&format!("dimension is fixed to {fixed_dim}")));
        }
        if params.param.is_some() {
            return Err(bad("takes no parameter"));
        }
        Ok(())
    };
    let dim = params.dim.unwrap_or(2);
    if dim == 0 {
        return Err(bad("dimension must be at least 1"));
    }
    let matrix = match name {
        "flip" | "signed-flip" => {
            if params.param.is_some() {
                return Err(bad("takes no parameter"));
            }
            let tau = flip_matrix(ring, dim);
            if name == "flip" {
                tau
            } else {
                tau.scale(&Scalar::from_i64(ring, -1))?
            }
        }
        "scalar-q" => {
            need_laurent(1)?;
            return YbOperator::new(
                ExactMatrix::from_entries(ring, 1, 1, vec![Scalar::q()])?,
                1,
                Some(name.into()),
            );
        }
        "hecke-q" => {
            need_laurent(2)?;
            let factor = parse_scalar("-q^-1", Ring::Laurent)?;
            return YbOperator::new(hecke_r_matrix().scale(&factor)?, 2, Some(name.into()));
        }
        "diagonal" => {
            let c = match &params.param {
                Some(c) => c.convert(ring)?,
                None => Scalar::from_i64(ring, 2),
            };
            if c.is_zero() {
                return Err(bad("parameter must be nonzero"));
            }
            flip_matrix(ring, dim).scale(&c)?
        }
        other => return Err(YbError::UnknownOperator(other.to_string())),
    };
    YbOperator::new(matrix, dim, Some(name.into()))
}

/// The default instance of every catalog entry (dimension at most 2), each in
/// its natural ring: rationals, or Laurent polynomials for the q-operators.
pub fn default_catalog() -> Vec<YbOperator> {
    let p = CatalogParams::default();
    vec![
        catalog("flip", Ring::Rationals, &p).expect("flip"),
        catalog("signed-flip", Ring::Rationals, &p).expect("signed-flip"),
        catalog("scalar-q", Ring::Laurent, &p).expect("scalar-q"),
        catalog("hecke-q", Ring::Laurent, &p).expect("hecke-q"),
        catalog("diagonal", Ring::Rationals, &p).expect("diagonal"),
    ]
}
