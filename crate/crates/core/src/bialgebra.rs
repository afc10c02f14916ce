//! The braided shuffle bialgebra `(V̄, μ(B), Δ^⊗)` and the free braided
//! tensor bialgebra `(V̄, ⊗, Δ^μ(B))`, truncated at a maximal degree.
//!
//! Every product or coproduct component of bidegree `(k, l)` is a square
//! `d^{k+l}` matrix: `V^{⊗k} ⊗ V^{⊗l}` is identified with `V^{⊗(k+l)}` by
//! concatenating basis indices. Matrices act on row vectors (see [`crate::yb`]),
//! so a composite "first `F`, then `G`" is checked as the product `F · G`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::braidperm::{
    block_transposition, coshuffle_braids, perm_to_braid, shuffle_braids, BraidWord, ShuffleType,
};
use crate::scalar::Ring;
use crate::tensorlin::{ExactMatrix, MatrixError};
use crate::yb::{reversal_matrix, YbError, YbOperator};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BialgebraError {
    #[error("degree {degree} exceeds the truncation degree {max}")]
    Truncation { degree: usize, max: usize },
    #[error("component {key:?} has shape {rows}x{cols}, expected {expected}x{expected}")]
    ComponentShape {
        key: Vec<usize>,
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("module rank must be at least 1")]
    ZeroDimension,
    #[error(transparent)]
    Yb(#[from] YbError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Rank of `V`, truncation degree and coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationConfig {
    pub dim: usize,
    pub max_degree: usize,
    pub ring: Ring,
}

impl TruncationConfig {
    pub fn new(dim: usize, max_degree: usize, ring: Ring) -> Result<Self, BialgebraError> {
        if dim == 0 {
            return Err(BialgebraError::ZeroDimension);
        }
        Ok(TruncationConfig {
            dim,
            max_degree,
            ring,
        })
    }

    pub fn for_operator(op: &YbOperator, max_degree: usize) -> Self {
        TruncationConfig {
            dim: op.dim(),
            max_degree,
            ring: op.ring(),
        }
    }

    /// `d^n`, the rank of the degree-`n` component.
    pub fn component_dim(&self, n: usize) -> usize {
        self.dim.pow(n as u32)
    }

    pub fn check_degree(&self, n: usize) -> Result<(), BialgebraError> {
        if n > self.max_degree {
            return Err(BialgebraError::Truncation {
                degree: n,
                max: self.max_degree,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradedKind {
    /// Keys `[n]`, components `V^{⊗n} → V^{⊗n}`.
    Endomorphism,
    /// Keys `[k, l]`, components `V^{⊗k} ⊗ V^{⊗l} → V^{⊗(k+l)}`.
    Product,
    /// Keys `[k, l]`, components `V^{⊗(k+l)} → V^{⊗k} ⊗ V^{⊗l}`.
    Coproduct,
}

/// A degree- or bidegree-indexed family of square matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    kind: GradedKind,
    dim: usize,
    components: BTreeMap<Vec<usize>, ExactMatrix>,
}

impl GradedMap {
    pub fn new(kind: GradedKind, dim: usize) -> Self {
        GradedMap {
            kind,
            dim,
            components: BTreeMap::new(),
        }
    }

    pub fn kind(&self) -> GradedKind {
        self.kind
    }

    /// Inserts a component, enforcing the `d^{total degree}` square shape.
    pub fn insert(&mut self, key: Vec<usize>, m: ExactMatrix) -> Result<(), BialgebraError> {
        let arity = match self.kind {
            GradedKind::Endomorphism => 1,
            GradedKind::Product | GradedKind::Coproduct => 2,
        };
        assert_eq!(key.len(), arity, "key arity for {:?}", self.kind);
        let expected = self.dim.pow(key.iter().sum::<usize>() as u32);
        if m.rows() != expected || m.cols() != expected {
            return Err(BialgebraError::ComponentShape {
                key,
                rows: m.rows(),
                cols: m.cols(),
                expected,
            });
        }
        self.components.insert(key, m);
        Ok(())
    }

    pub fn get(&self, key: &[usize]) -> Option<&ExactMatrix> {
        self.components.get(key)
    }

    /// Components in increasing key order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &ExactMatrix)> {
        self.components.iter()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// The `n + 1` components `(k, n-k)` of `Δ^⊗` on `V^{⊗n}`, all identities.
pub fn deconcat_components(
    cfg: &TruncationConfig,
    n: usize,
) -> Result<Vec<ExactMatrix>, BialgebraError> {
    cfg.check_degree(n)?;
    let id = ExactMatrix::identity(cfg.ring, cfg.component_dim(n));
    Ok(vec![id; n + 1])
}

/// Concatenation product component `(k, l)`: the identity of `V^{⊗(k+l)}`.
pub fn concat_mult(cfg: &TruncationConfig, k: usize, l: usize) -> Result<ExactMatrix, BialgebraError> {
    cfg.check_degree(k + l)?;
    Ok(ExactMatrix::identity(cfg.ring, cfg.component_dim(k + l)))
}

fn sum_over_words(
    op: &YbOperator,
    m: &ExactMatrix,
    words: &[BraidWord],
) -> Result<ExactMatrix, BialgebraError> {
    let mut acc = ExactMatrix::zeros(m.ring(), m.rows(), m.cols());
    for w in words {
        acc.add_assign(&op.apply_word(m, w)?)?;
    }
    Ok(acc)
}

/// `μ_{k,l}(B) = Σ_{b ∈ bSh_{k,l}} ρ_B(b)`.
pub fn shuffle_mult(op: &YbOperator, k: usize, l: usize) -> Result<ExactMatrix, BialgebraError> {
    right_shuffle(op, &op.identity(k + l), k, l)
}

/// `m · μ_{k,l}(B)` computed word by word.
pub fn right_shuffle(
    op: &YbOperator,
    m: &ExactMatrix,
    k: usize,
    l: usize,
) -> Result<ExactMatrix, BialgebraError> {
    sum_over_words(op, m, &shuffle_braids(ShuffleType::new(k, l)))
}

/// `Δ^μ_{k,l}(B) = Σ_{s ∈ Sh_{k,l}} ρ_B(π(s⁻¹))`.
pub fn coshuffle(op: &YbOperator, k: usize, l: usize) -> Result<ExactMatrix, BialgebraError> {
    right_coshuffle(op, &op.identity(k + l), k, l)
}

/// `m · Δ^μ_{k,l}(B)` computed word by word.
pub fn right_coshuffle(
    op: &YbOperator,
    m: &ExactMatrix,
    k: usize,
    l: usize,
) -> Result<ExactMatrix, BialgebraError> {
    sum_over_words(op, m, &coshuffle_braids(ShuffleType::new(k, l)))
}

/// Braiding `V^{⊗a} ⊗ V^{⊗b} → V^{⊗b} ⊗ V^{⊗a}`: `ρ_B` of the positive lift
/// of the block transposition carrying the first `a` factors past the last `b`.
pub fn block_braiding(op: &YbOperator, a: usize, b: usize) -> Result<ExactMatrix, BialgebraError> {
    Ok(op.rho(&perm_to_braid(&block_transposition(a, b)))?)
}

/// All components `μ_{k,l}` with `k + l ≤ N`.
pub fn shuffle_product_map(op: &YbOperator, max_degree: usize) -> Result<GradedMap, BialgebraError> {
    bidegree_map(op, max_degree, GradedKind::Product, shuffle_mult)
}

/// All components `Δ^μ_{k,l}` with `k + l ≤ N`.
pub fn coshuffle_map(op: &YbOperator, max_degree: usize) -> Result<GradedMap, BialgebraError> {
    bidegree_map(op, max_degree, GradedKind::Coproduct, coshuffle)
}

fn bidegree_map(
    op: &YbOperator,
    max_degree: usize,
    kind: GradedKind,
    build: fn(&YbOperator, usize, usize) -> Result<ExactMatrix, BialgebraError>,
) -> Result<GradedMap, BialgebraError> {
    let mut map = GradedMap::new(kind, op.dim());
    for n in 0..=max_degree {
        for k in 0..=n {
            map.insert(vec![k, n - k], build(op, k, n - k)?)?;
        }
    }
    Ok(map)
}

/// Result of one exact identity check on one (bi)degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub degree: Vec<usize>,
    /// First failing entry `(row, col)`, 0-based; `None` on success.
    pub failure: Option<(usize, usize)>,
}

impl Verdict {
    pub fn pass(check: &str, degree: Vec<usize>) -> Self {
        Verdict {
            check: check.to_string(),
            degree,
            failure: None,
        }
    }

    /// Compares two matrices entrywise.
    pub fn compare(check: &str, degree: Vec<usize>, lhs: &ExactMatrix, rhs: &ExactMatrix) -> Self {
        Verdict {
            check: check.to_string(),
            degree,
            failure: lhs.first_difference(rhs),
        }
    }

    /// Passes iff `m` is the zero matrix.
    pub fn zero(check: &str, degree: Vec<usize>, m: &ExactMatrix) -> Self {
        Verdict {
            check: check.to_string(),
            degree,
            failure: m.first_nonzero(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Verdict {
    /// `CHECK <name> (<degree>) PASS`, or `... FAIL at entry (<row>,<col>)` 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degree: Vec<String> = self.degree.iter().map(|n| n.to_string()).collect();
        write!(f, "CHECK {} ({}) ", self.check, degree.join(","))?;
        match self.failure {
            None => f.write_str("PASS"),
            Some((r, c)) => write!(f, "FAIL at entry ({},{})", r + 1, c + 1),
        }
    }
}

/// An ordered list of verdicts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub verdicts: Vec<Verdict>,
}

impl CheckReport {
    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.verdicts.extend(other.verdicts);
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(Verdict::passed)
    }

    pub fn failed(&self) -> usize {
        self.verdicts.iter().filter(|v| !v.passed()).count()
    }

    pub fn len(&self) -> usize {
        self.verdicts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verdicts.is_empty()
    }
}

fn kron3(a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix) -> Result<ExactMatrix, BialgebraError> {
    Ok(a.kron(b)?.kron(c)?)
}

fn triples(max_degree: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..=max_degree).flat_map(move |i| {
        (0..=max_degree - i)
            .flat_map(move |j| (0..=max_degree - i - j).map(move |k| (i, j, k)))
    })
}

/// `μ_{0,n} = μ_{n,0} = Δ^μ_{0,n} = Δ^μ_{n,0} = id` and the counit laws of
/// `Δ^⊗`, for every `n ≤ N`.
pub fn check_unit_counit(op: &YbOperator, max_degree: usize) -> Result<CheckReport, BialgebraError> {
    let cfg = TruncationConfig::for_operator(op, max_degree);
    let mut report = CheckReport::default();
    for n in 0..=max_degree {
        let id = op.identity(n);
        let deconcat = deconcat_components(&cfg, n)?;
        let candidates = [
            shuffle_mult(op, 0, n)?,
            shuffle_mult(op, n, 0)?,
            coshuffle(op, 0, n)?,
            coshuffle(op, n, 0)?,
            deconcat[0].clone(),
            deconcat[n].clone(),
        ];
        let failure = candidates.iter().find_map(|m| m.first_difference(&id));
        report.push(Verdict {
            check: "unit-counit".into(),
            degree: vec![n],
            failure,
        });
    }
    Ok(report)
}

/// `(μ_{i,j} ⊗ id_k) · μ_{i+j,k} = (id_i ⊗ μ_{j,k}) · μ_{i,j+k}` for `i+j+k ≤ N`.
pub fn check_associativity(op: &YbOperator, max_degree: usize) -> Result<CheckReport, BialgebraError> {
    let mut report = CheckReport::default();
    for (i, j, k) in triples(max_degree) {
        let lhs = right_shuffle(op, &shuffle_left(op, i, j, k)?, i + j, k)?;
        let rhs = right_shuffle(op, &shuffle_right(op, i, j, k)?, i, j + k)?;
        report.push(Verdict::compare("associativity", vec![i, j, k], &lhs, &rhs));
    }
    Ok(report)
}

/// `Δ^μ_{i+j,k} · (Δ^μ_{i,j} ⊗ id_k) = Δ^μ_{i,j+k} · (id_i ⊗ Δ^μ_{j,k})`.
pub fn check_coassociativity(
    op: &YbOperator,
    max_degree: usize,
) -> Result<CheckReport, BialgebraError> {
    let mut report = CheckReport::default();
    for (i, j, k) in triples(max_degree) {
        let inner_left = coshuffle(op, i, j)?.kron(&op.identity(k))?;
        let inner_right = op.identity(i).kron(&coshuffle(op, j, k)?)?;
        let lhs = coshuffle(op, i + j, k)?.mul(&inner_left)?;
        let rhs = coshuffle(op, i, j + k)?.mul(&inner_right)?;
        report.push(Verdict::compare("coassociativity", vec![i, j, k], &lhs, &rhs));
    }
    Ok(report)
}

/// Coassociativity of the deconcatenation coproduct: every route from
/// `V^{⊗(i+j+k)}` to `V^{⊗i} ⊗ V^{⊗j} ⊗ V^{⊗k}` is a product of identities.
pub fn check_deconcat_coassociativity(
    cfg: &TruncationConfig,
) -> Result<CheckReport, BialgebraError> {
    let mut report = CheckReport::default();
    for (i, j, k) in triples(cfg.max_degree) {
        let outer_l = &deconcat_components(cfg, i + j + k)?[i + j];
        let outer_r = &deconcat_components(cfg, i + j + k)?[i];
        let inner_l = deconcat_components(cfg, i + j)?[i]
            .kron(&ExactMatrix::identity(cfg.ring, cfg.component_dim(k)))?;
        let inner_r = ExactMatrix::identity(cfg.ring, cfg.component_dim(i))
            .kron(&deconcat_components(cfg, j + k)?[j])?;
        report.push(Verdict::compare(
            "coassociativity-deconcat",
            vec![i, j, k],
            &outer_l.mul(&inner_l)?,
            &outer_r.mul(&inner_r)?,
        ));
    }
    Ok(report)
}

/// Splits of an input bidegree `(a, b)` feeding output component `(c, n-c)`:
/// `a = a1 + a2`, `b = b1 + b2`, `a1 + b1 = c`.
fn splits(a: usize, b: usize, c: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..=a.min(c)).filter_map(move |a1| {
        let b1 = c - a1;
        (b1 <= b).then(|| (a1, a - a1, b1, b - b1))
    })
}

/// `Δ∘m = (m⊗m)∘(id⊗B⊗id)∘(Δ⊗Δ)` for both braided bialgebras, on every
/// input bidegree `(a, b)` and output bidegree `(c, a+b-c)` with `a+b ≤ N`.
/// Check names: `compatibility-shuffle` for `(μ(B), Δ^⊗)` and
/// `compatibility-tensor` for `(⊗, Δ^μ(B))`.
pub fn check_compatibility(op: &YbOperator, max_degree: usize) -> Result<CheckReport, BialgebraError> {
    let mut shuffle_report = CheckReport::default();
    let mut tensor_report = CheckReport::default();
    for n in 0..=max_degree {
        for a in 0..=n {
            let b = n - a;
            let mu_ab = shuffle_mult(op, a, b)?;
            for c in 0..=n {
                let e = n - c;
                let mut shuffle_rhs = ExactMatrix::zeros(op.ring(), mu_ab.rows(), mu_ab.cols());
                let mut tensor_rhs = shuffle_rhs.clone();
                for (a1, a2, b1, b2) in splits(a, b, c) {
                    let middle = kron3(
                        &op.identity(a1),
                        &block_braiding(op, a2, b1)?,
                        &op.identity(b2),
                    )?;
                    let products = shuffle_mult(op, a1, b1)?.kron(&shuffle_mult(op, a2, b2)?)?;
                    shuffle_rhs.add_assign(&middle.mul(&products)?)?;
                    let coproducts = coshuffle(op, a1, a2)?.kron(&coshuffle(op, b1, b2)?)?;
                    tensor_rhs.add_assign(&coproducts.mul(&middle)?)?;
                }
                let degree = vec![a, b, c, e];
                shuffle_report.push(Verdict::compare(
                    "compatibility-shuffle",
                    degree.clone(),
                    &mu_ab,
                    &shuffle_rhs,
                ));
                tensor_report.push(Verdict::compare(
                    "compatibility-tensor",
                    degree,
                    &coshuffle(op, c, e)?,
                    &tensor_rhs,
                ));
            }
        }
    }
    shuffle_report.extend(tensor_report);
    Ok(shuffle_report)
}

/// Graded duality of the two bialgebras under the reversed pairing
/// `<α⊗β, v⊗w> = <β,v><α,w>`: `Δ^μ_{k,l}(B) = R_n · μ_{l,k}(B^g)ᵀ · R_n`,
/// where `R_n` reverses the `n = k+l` tensor factors and `B^g = R_2 Bᵀ R_2`
/// is the operator transported to the dual space.
pub fn check_duality(op: &YbOperator, max_degree: usize) -> Result<CheckReport, BialgebraError> {
    let dual = op.dual();
    let mut report = CheckReport::default();
    for n in 0..=max_degree {
        let r = reversal_matrix(op.ring(), op.dim(), n);
        for k in 0..=n {
            let l = n - k;
            let rhs = r.mul(&shuffle_mult(&dual, l, k)?.transpose())?.mul(&r)?;
            report.push(Verdict::compare("duality", vec![k, l], &coshuffle(op, k, l)?, &rhs));
        }
    }
    Ok(report)
}

/// `μ_{i,j} ⊗ id_k`.
fn shuffle_left(op: &YbOperator, i: usize, j: usize, k: usize) -> Result<ExactMatrix, BialgebraError> {
    Ok(shuffle_mult(op, i, j)?.kron(&op.identity(k))?)
}

/// `id_i ⊗ μ_{j,k}`.
fn shuffle_right(op: &YbOperator, i: usize, j: usize, k: usize) -> Result<ExactMatrix, BialgebraError> {
    Ok(op.identity(i).kron(&shuffle_mult(op, j, k)?)?)
}
