//! The braided antisymmetrizer `W_n(B) = Σ_{b ∈ Ξ_n} ρ_B(b)`: direct and
//! recursive construction, factorizations, the homomorphism `bTV → bShV`,
//! and kernel (biideal) analysis.
//!
//! With matrices acting on row vectors, the factorizations read
//! `W_{k+l} = (W_k ⊗ W_l) · μ_{k,l}(B)` and `W_{k+l} = Δ^μ_{k,l}(B) · (W_k ⊗ W_l)`,
//! and the kernel of `W_n` as a map is the left null space of its matrix.

use num_rational::BigRational;
use thiserror::Error;

use crate::bialgebra::{
    coshuffle, right_coshuffle, right_shuffle, shuffle_mult, BialgebraError, CheckReport, GradedKind, GradedMap,
    Verdict,
};
use crate::braidperm::{enumerate_xi, PermError};
use crate::scalar::{Ring, ScalarError};
use crate::tensorlin::{ExactMatrix, KernelBasis, MatrixError};
use crate::yb::{YbError, YbOperator};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AntisymError {
    #[error("{0}; use the recursive construction for larger degrees")]
    Cap(#[from] PermError),
    #[error("degree {degree} is outside the family (max {max})")]
    Degree { degree: usize, max: usize },
    #[error("q-specialization requires the laurent ring, operator is over {0}")]
    NotLaurent(Ring),
    #[error(transparent)]
    Bialgebra(#[from] BialgebraError),
    #[error(transparent)]
    Yb(#[from] YbError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `W_n(B)` as the sum of `ρ_B` over all `n!` positive lifts.
pub fn w_direct(op: &YbOperator, n: usize, cap: usize) -> Result<ExactMatrix, AntisymError> {
    let words = enumerate_xi(n, cap)?;
    let id = op.identity(n);
    let mut acc = ExactMatrix::zeros(op.ring(), id.rows(), id.cols());
    for w in &words {
        acc.add_assign(&op.apply_word(&id, w)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Direct,
    Recursive,
}

/// The components `W_0, ..., W_N` of one operator.
#[derive(Clone, Debug)]
pub struct AntisymmetrizerFamily {
    pub operator: YbOperator,
    pub max_degree: usize,
    pub provenance: Provenance,
    components: GradedMap,
}

impl AntisymmetrizerFamily {
    /// Wraps precomputed components `W_0..W_N`; they must be nonempty.
    pub fn from_parts(
        op: &YbOperator,
        provenance: Provenance,
        ws: Vec<ExactMatrix>,
    ) -> Result<Self, AntisymError> {
        let mut components = GradedMap::new(GradedKind::Endomorphism, op.dim());
        let max_degree = ws.len() - 1;
        for (n, w) in ws.into_iter().enumerate() {
            components.insert(vec![n], w)?;
        }
        Ok(AntisymmetrizerFamily {
            operator: op.clone(),
            max_degree,
            provenance,
            components,
        })
    }

    /// All `W_n` by direct summation over `Ξ_n`.
    pub fn direct(op: &YbOperator, max_degree: usize, cap: usize) -> Result<Self, AntisymError> {
        let ws = (0..=max_degree)
            .map(|n| w_direct(op, n, cap))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_parts(op, Provenance::Direct, ws)
    }

    pub fn get(&self, n: usize) -> Result<&ExactMatrix, AntisymError> {
        self.components
            .get(&[n])
            .ok_or(AntisymError::Degree {
                degree: n,
                max: self.max_degree,
            })
    }

    pub fn components(&self) -> &GradedMap {
        &self.components
    }
}

/// One step of the recurrence: `W_{n+1} = (W_n ⊗ id) · μ_{n,1}(B)`, with
/// `W_1 = id` following from `W_0 = (1)`.
pub fn next_w(op: &YbOperator, w_n: &ExactMatrix, n: usize) -> Result<ExactMatrix, AntisymError> {
    let lifted = w_n.kron(&op.identity(1))?;
    Ok(right_shuffle(op, &lifted, n, 1)?)
}

fn left_recurrence(op: &YbOperator, max_degree: usize) -> Result<Vec<ExactMatrix>, AntisymError> {
    let mut ws = vec![op.identity(0)];
    for n in 0..max_degree {
        let next = next_w(op, &ws[n], n)?;
        ws.push(next);
    }
    Ok(ws)
}

/// Builds `W_0..W_N` by the left recurrence and checks the right recurrence
/// `W_{n+1} = Δ^μ_{1,n}(B) · (id ⊗ W_n)` against it (`recurrence-right`).
pub fn w_recursive(
    op: &YbOperator,
    max_degree: usize,
) -> Result<(AntisymmetrizerFamily, CheckReport), AntisymError> {
    let ws = left_recurrence(op, max_degree)?;
    let mut report = CheckReport::default();
    for n in 1..max_degree {
        let right = coshuffle(op, 1, n)?.mul(&op.identity(1).kron(&ws[n])?)?;
        report.push(Verdict::compare("recurrence-right", vec![n + 1], &ws[n + 1], &right));
    }
    Ok((
        AntisymmetrizerFamily::from_parts(op, Provenance::Recursive, ws)?,
        report,
    ))
}

/// `recurrence-direct`: the recursive family equals the direct `n!` sums.
pub fn check_against_direct(
    family: &AntisymmetrizerFamily,
    cap: usize,
) -> Result<CheckReport, AntisymError> {
    let mut report = CheckReport::default();
    for n in 0..=family.max_degree {
        let direct = w_direct(&family.operator, n, cap)?;
        report.push(Verdict::compare("recurrence-direct", vec![n], family.get(n)?, &direct));
    }
    Ok(report)
}

/// `W_{k+l} = (W_k ⊗ W_l) · μ_{k,l}(B)`.
pub fn check_factorization(
    family: &AntisymmetrizerFamily,
    k: usize,
    l: usize,
) -> Result<Verdict, AntisymError> {
    let op = &family.operator;
    let rhs = right_shuffle(op, &family.get(k)?.kron(family.get(l)?)?, k, l)?;
    Ok(Verdict::compare("factorization", vec![k, l], family.get(k + l)?, &rhs))
}

/// `W_{k+l} = Δ^μ_{k,l}(B) · (W_k ⊗ W_l)`.
pub fn check_dual_factorization(
    family: &AntisymmetrizerFamily,
    k: usize,
    l: usize,
) -> Result<Verdict, AntisymError> {
    let op = &family.operator;
    let rhs = coshuffle(op, k, l)?.mul(&family.get(k)?.kron(family.get(l)?)?)?;
    Ok(Verdict::compare("dual-factorization", vec![k, l], family.get(k + l)?, &rhs))
}

/// Both factorizations for every `(k, l)` with `k + l ≤ N`.
pub fn check_factorizations(family: &AntisymmetrizerFamily) -> Result<CheckReport, AntisymError> {
    let mut primal = CheckReport::default();
    let mut dual = CheckReport::default();
    for n in 0..=family.max_degree {
        for k in 0..=n {
            primal.push(check_factorization(family, k, n - k)?);
            dual.push(check_dual_factorization(family, k, n - k)?);
        }
    }
    primal.extend(dual);
    Ok(primal)
}

/// The algebra map `H: bTV → bShV` fixed by `H|k = id`, `H|V = id`.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub components: GradedMap,
    pub report: CheckReport,
}

/// Builds `H_n = (H_{n-1} ⊗ id) · μ_{n-1,1}(B)` from the algebra-map property
/// alone, then checks `hom-equals-w` (`H_n = W_n` with `W_n` the direct sum)
/// and `hom-coalgebra` (`Δ^⊗ ∘ H = (H ⊗ H) ∘ Δ^μ(B)` on bidegree `(k, l)`,
/// i.e. `H_{k+l} = Δ^μ_{k,l}(B) · (H_k ⊗ H_l)`).
pub fn build_hom(op: &YbOperator, max_degree: usize, cap: usize) -> Result<Homomorphism, AntisymError> {
    let mut hs = vec![op.identity(0)];
    if max_degree >= 1 {
        hs.push(op.identity(1));
    }
    for n in 2..=max_degree {
        let lifted = hs[n - 1].kron(&op.identity(1))?;
        let mu = shuffle_mult(op, n - 1, 1)?;
        hs.push(lifted.mul(&mu)?);
    }
    let mut report = CheckReport::default();
    for (n, h) in hs.iter().enumerate() {
        let w = w_direct(op, n, cap)?;
        report.push(Verdict::compare("hom-equals-w", vec![n], h, &w));
    }
    for n in 0..=max_degree {
        for k in 0..=n {
            let l = n - k;
            let rhs = right_coshuffle(op, &op.identity(n), k, l)?.mul(&hs[k].kron(&hs[l])?)?;
            report.push(Verdict::compare("hom-coalgebra", vec![k, l], &hs[n], &rhs));
        }
    }
    let mut components = GradedMap::new(GradedKind::Endomorphism, op.dim());
    for (n, h) in hs.into_iter().enumerate() {
        components.insert(vec![n], h)?;
    }
    Ok(Homomorphism { components, report })
}

/// The ring in which kernels are expressed: integers are promoted to rationals.
fn kernel_ring(ring: Ring) -> Ring {
    match ring {
        Ring::Integers => Ring::Rationals,
        other => other,
    }
}

/// Basis of `{x : x · W = 0}`, the kernel of `W` acting on row vectors.
pub fn map_kernel(w: &ExactMatrix) -> Result<KernelBasis, AntisymError> {
    Ok(w.convert(kernel_ring(w.ring()))?.transpose().kernel_basis())
}

/// Rank data of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeKernel {
    pub degree: usize,
    pub dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub basis: Option<KernelBasis>,
}

/// Ranks of every `W_n` after substituting a rational value for `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedRanks {
    pub q: BigRational,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub degrees: Vec<DegreeKernel>,
    pub specializations: Vec<SpecializedRanks>,
}

impl KernelReport {
    /// Graded dimensions of the image: `rank W_0, rank W_1, ...`.
    pub fn hilbert(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }
}

/// Ranks (generic over `Q(q)` for Laurent operators), kernel dimensions,
/// optional kernel bases and ranks at the requested `q` values.
pub fn kernel_analysis(
    family: &AntisymmetrizerFamily,
    with_bases: bool,
    specialize_at: &[BigRational],
) -> Result<KernelReport, AntisymError> {
    let ring = family.operator.ring();
    if !specialize_at.is_empty() && ring != Ring::Laurent {
        return Err(AntisymError::NotLaurent(ring));
    }
    let mut degrees = Vec::new();
    for n in 0..=family.max_degree {
        let w = family.get(n)?;
        let rank = w.rank();
        let basis = if with_bases { Some(map_kernel(w)?) } else { None };
        degrees.push(DegreeKernel {
            degree: n,
            dim: w.rows(),
            rank,
            kernel_dim: w.rows() - rank,
            basis,
        });
    }
    let mut specializations = Vec::new();
    for q in specialize_at {
        let mut ranks = Vec::new();
        for n in 0..=family.max_degree {
            let w = family.get(n)?;
            ranks.push(w.try_map(Ring::Rationals, |s| s.specialize_q(q))?.rank());
        }
        specializations.push(SpecializedRanks {
            q: q.clone(),
            ranks,
        });
    }
    Ok(KernelReport {
        degrees,
        specializations,
    })
}

/// Degreewise biideal check of `ker W` in `bTV`, for every `k + l = n ≤ N`:
///
/// * `biideal-ideal (k,l)`: `(v ⊗ e) · W_n = 0` and `(e' ⊗ v') · W_n = 0` for
///   kernel vectors `v` of `W_k`, `v'` of `W_l` and standard basis vectors `e`, `e'`.
/// * `biideal-coideal (k,l)`: `v · Δ^μ_{k,l}(B) · (W_k ⊗ W_l) = 0` for kernel
///   vectors `v` of `W_n`. Over a field `ker(W_k ⊗ W_l) = ker W_k ⊗ V^{⊗l} +
///   V^{⊗k} ⊗ ker W_l`, so this is exactly `Δ^μ(ker) ⊆ ker ⊗ V̄ + V̄ ⊗ ker`.
pub fn check_biideal(family: &AntisymmetrizerFamily) -> Result<CheckReport, AntisymError> {
    let op = &family.operator;
    let ring = kernel_ring(op.ring());
    let ws = (0..=family.max_degree)
        .map(|n| Ok(family.get(n)?.convert(ring)?))
        .collect::<Result<Vec<_>, AntisymError>>()?;
    let kernels = ws
        .iter()
        .map(|w| Ok(map_kernel(w)?.as_rows(ring)))
        .collect::<Result<Vec<_>, AntisymError>>()?;
    let id = |n: usize| ExactMatrix::identity(ring, op.dim().pow(n as u32));
    let mut ideal = CheckReport::default();
    let mut coideal = CheckReport::default();
    for n in 0..=family.max_degree {
        for k in 0..=n {
            let l = n - k;
            let left = kernels[k].kron(&id(l))?.mul(&ws[n])?;
            let right = id(k).kron(&kernels[l])?.mul(&ws[n])?;
            let failure = left
                .first_nonzero()
                .or_else(|| right.first_nonzero());
            ideal.push(Verdict {
                check: "biideal-ideal".into(),
                degree: vec![k, l],
                failure,
            });
            let split = coshuffle(op, k, l)?.convert(ring)?;
            let image = kernels[n].mul(&split)?.mul(&ws[k].kron(&ws[l])?)?;
            coideal.push(Verdict::zero("biideal-coideal", vec![k, l], &image));
        }
    }
    ideal.extend(coideal);
    Ok(ideal)
}
