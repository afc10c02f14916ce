//! Independent oracles shared by the integration tests. Nothing here calls the
//! crate's braid, shuffle or elimination code; only scalars and matrix storage
//! are borrowed.

#![allow(dead_code)]

use std::collections::BTreeMap;

use braidw::scalar::{Ring, Scalar};
use braidw::tensorlin::ExactMatrix;
use braidw::yb::{catalog, CatalogParams, YbOperator};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Every operator the acceptance criteria quantify over ("all catalog
/// operators, d ≤ 2").
pub fn catalog_d_le_2() -> Vec<YbOperator> {
    let mut out = Vec::new();
    for name in ["flip", "signed-flip", "diagonal"] {
        for dim in [1, 2] {
            let params = CatalogParams {
                dim: Some(dim),
                param: None,
            };
            out.push(catalog(name, Ring::Rationals, &params).unwrap());
        }
    }
    let p = CatalogParams::default();
    out.push(catalog("scalar-q", Ring::Laurent, &p).unwrap());
    out.push(catalog("hecke-q", Ring::Laurent, &p).unwrap());
    out
}

pub fn label(op: &YbOperator) -> String {
    format!("{}/d{}", op.name().unwrap_or("?"), op.dim())
}

/// All permutations of `0..n` as image vectors, any order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn inversions(p: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                count += 1;
            }
        }
    }
    count
}

pub fn sign(p: &[usize]) -> i64 {
    if inversions(p).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `Σ_{p ∈ S_n} q^{I(p)}` as exponent ↦ multiplicity.
pub fn q_factorial_oracle(n: usize) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    for p in all_perms(n) {
        *out.entry(inversions(&p) as i64).or_insert(0) += 1;
    }
    out
}

pub type Dense = Vec<Vec<BigRational>>;

fn digits(mut x: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for slot in out.iter_mut().rev() {
        *slot = x % d;
        x /= d;
    }
    out
}

fn undigits(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

/// Matrix of the place permutation `e_{i_1} ⊗ ... ⊗ e_{i_n} ↦ e_{i_{p(1)}} ⊗ ... ⊗ e_{i_{p(n)}}`.
pub fn place_permutation(d: usize, p: &[usize]) -> Dense {
    let n = p.len();
    let size = d.pow(n as u32);
    let mut m = vec![vec![BigRational::zero(); size]; size];
    for (x, row) in m.iter_mut().enumerate() {
        let ds = digits(x, d, n);
        let moved: Vec<usize> = p.iter().map(|&k| ds[k]).collect();
        row[undigits(&moved, d)] = BigRational::one();
    }
    m
}

/// `Σ_p ε(p) · P_p` with `ε = sgn` (antisymmetrizer) or `ε = 1` (symmetrizer).
pub fn classical_sum(d: usize, n: usize, signed: bool) -> Dense {
    let size = d.pow(n as u32);
    let mut acc = vec![vec![BigRational::zero(); size]; size];
    for p in all_perms(n) {
        let c = BigRational::from_integer(if signed { sign(&p) } else { 1 }.into());
        let m = place_permutation(d, &p);
        for (r, row) in m.iter().enumerate() {
            for (col, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    acc[r][col] += &c * x;
                }
            }
        }
    }
    acc
}

/// Rank by textbook Gaussian elimination with rational division.
pub fn naive_rank(mut m: Dense) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][c].recip();
        let pivot_row: Vec<BigRational> = m[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

pub fn to_dense(m: &ExactMatrix) -> Dense {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|x| x.as_rational().expect("rational entries").clone())
                .collect()
        })
        .collect()
}

pub fn from_dense(m: &Dense) -> ExactMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let entries = m
        .iter()
        .flatten()
        .map(|x| Scalar::Rat(x.clone()))
        .collect();
    ExactMatrix::from_entries(Ring::Rationals, rows, cols, entries).unwrap()
}

pub fn abs_max(m: &Dense) -> BigRational {
    m.iter()
        .flatten()
        .map(|x| x.abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

type ScalarMatrix = Vec<Vec<Scalar>>;

fn identity(ring: Ring, n: usize) -> ScalarMatrix {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { Scalar::one(ring) } else { Scalar::zero(ring) })
                .collect()
        })
        .collect()
}

fn kron(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    let (ar, ac) = (a.len(), a[0].len());
    let (br, bc) = (b.len(), b[0].len());
    let mut out = vec![vec![Scalar::zero(a[0][0].ring()); ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

fn matmul(a: &ScalarMatrix, b: &ScalarMatrix) -> ScalarMatrix {
    let zero = Scalar::zero(b[0][0].ring());
    (0..a.len())
        .map(|i| {
            (0..b[0].len())
                .map(|j| {
                    let mut acc = zero.clone();
                    for k in 0..b.len() {
                        acc = acc + &a[i][k] * &b[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// A reduced word by rightmost-descent sorting: while the sequence has a
/// descent, swap the rightmost one and record its 1-based position.
pub fn rightmost_reduced_word(p: &[usize]) -> Vec<usize> {
    let mut seq = p.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..seq.len().saturating_sub(1)).rev().find(|&i| seq[i] > seq[i + 1]) {
        seq.swap(i, i + 1);
        word.push(i + 1);
    }
    word
}

/// `W_n` from dense generator matrices `B_a = id ⊗ B ⊗ id`, multiplied in word
/// order, over the rightmost-descent reduced words.
pub fn w_oracle(op: &YbOperator, n: usize) -> ExactMatrix {
    let ring = op.ring();
    let d = op.dim();
    let size = d.pow(n as u32);
    let b: ScalarMatrix = (0..d * d).map(|r| op.matrix().row(r).to_vec()).collect();
    let generators: Vec<ScalarMatrix> = (1..n)
        .map(|a| {
            let left = identity(ring, d.pow(a as u32 - 1));
            let right = identity(ring, d.pow((n - a - 1) as u32));
            kron(&kron(&left, &b), &right)
        })
        .collect();
    let mut acc: ScalarMatrix = vec![vec![Scalar::zero(ring); size]; size];
    for p in all_perms(n) {
        let mut m = identity(ring, size);
        for a in rightmost_reduced_word(&p) {
            m = matmul(&m, &generators[a - 1]);
        }
        for r in 0..size {
            for c in 0..size {
                acc[r][c] = &acc[r][c] + &m[r][c];
            }
        }
    }
    ExactMatrix::from_rows(ring, acc).unwrap()
}
