//! Permutations, reduced words, positive braid lifts and shuffles.
//!
//! Conventions used throughout the crate:
//!
//! * A [`Permutation`] is stored in one-line notation `(p(1), ..., p(n))`,
//!   and [`Permutation::compose`] is `(p∘r)(i) = p(r(i))`.
//! * The reduced word of `p` is the bubble-sort word: repeatedly swap the
//!   leftmost descent of the evolving sequence and record its position. The
//!   recorded letters `a_1, ..., a_m` satisfy `p∘t_{a_1}∘...∘t_{a_m} = id`,
//!   i.e. `p = t_{a_m}∘...∘t_{a_1}`: applying the letters left to right as
//!   position swaps sorts `p` back to the identity. Concatenation of words
//!   corresponds to `perm(u ++ v) = perm(v)∘perm(u)`.
//! * Braid words are the letter-for-letter positive lifts `t_i ↦ σ_i`.

use std::fmt;

use thiserror::Error;

/// Largest strand count enumerated by default (8! braid words).
pub const DEFAULT_ENUMERATION_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("{0:?} is not a permutation of 1..n")]
    NotAPermutation(Vec<usize>),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("generator σ_{letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: usize, strands: usize },
    #[error("enumerating S_{n} exceeds the cap of {cap} strands")]
    CapExceeded { n: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation (1-based images).
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotAPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The adjacent transposition `t_i` of `S_n` (1-based `i`).
    pub fn transposition(n: usize, i: usize) -> Result<Self, PermError> {
        if i == 0 || i >= n {
            return Err(PermError::LetterOutOfRange {
                letter: i,
                strands: n,
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `p(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `(self∘other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.len() != other.len() {
            return Err(PermError::SizeMismatch(self.len(), other.len()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Block sum `self × other ∈ S_{k+l}`: `self` on the first `k` points,
    /// `other` shifted onto the last `l`.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let k = self.len();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&v| v + k));
        Permutation { images }
    }

    /// Number of inversions `|{(i, j) : i < j, p(i) > p(j)}|`.
    pub fn inversion_count(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .map(|i| p[i + 1..].iter().filter(|&&v| v < p[i]).count())
            .sum()
    }

    /// Canonical reduced word (1-based letters) by leftmost-descent bubble sort.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut seq = self.images.clone();
        let mut word = Vec::with_capacity(self.inversion_count());
        while let Some(i) = (0..seq.len().saturating_sub(1)).find(|&i| seq[i] > seq[i + 1]) {
            seq.swap(i, i + 1);
            word.push(i + 1);
        }
        word
    }

    /// Every reduced word of the permutation, in lexicographic order.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        let descents: Vec<usize> = (0..self.len().saturating_sub(1))
            .filter(|&i| self.images[i] > self.images[i + 1])
            .collect();
        if descents.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in descents {
            let mut next = self.images.clone();
            next.swap(i, i + 1);
            for tail in (Permutation { images: next }).all_reduced_words() {
                let mut word = Vec::with_capacity(tail.len() + 1);
                word.push(i + 1);
                word.extend(tail);
                out.push(word);
            }
        }
        out
    }

    /// The permutation `t_{w_m}∘...∘t_{w_1}` denoted by a word under this
    /// module's convention (inverse of [`Permutation::reduced_word`]).
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation, PermError> {
        let mut seq: Vec<usize> = (1..=n).collect();
        for &a in word.iter().rev() {
            if a == 0 || a >= n {
                return Err(PermError::LetterOutOfRange {
                    letter: a,
                    strands: n,
                });
            }
            seq.swap(a - 1, a);
        }
        Ok(Permutation { images: seq })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A word in the positive braid generators `σ_1, ..., σ_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self, PermError> {
        if let Some(&bad) = letters.iter().find(|&&k| k == 0 || k >= strands) {
            return Err(PermError::LetterOutOfRange {
                letter: bad,
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.letters.iter().map(|k| format!("s{k}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Positive lift `π(p)` of the canonical reduced word.
pub fn perm_to_braid(p: &Permutation) -> BraidWord {
    BraidWord {
        strands: p.len(),
        letters: p.reduced_word(),
    }
}

/// All permutations of `S_n` in lexicographic one-line order.
pub fn permutations(n: usize, cap: usize) -> Result<Vec<Permutation>, PermError> {
    if n > cap {
        return Err(PermError::CapExceeded { n, cap });
    }
    let mut current: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation {
        images: current.clone(),
    }];
    while next_permutation(&mut current) {
        out.push(Permutation {
            images: current.clone(),
        });
    }
    Ok(out)
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rfind(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = a.iter().rposition(|&x| x > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// `Ξ_n = π(S_n)`: one positive braid per permutation, lexicographic order.
pub fn enumerate_xi(n: usize, cap: usize) -> Result<Vec<BraidWord>, PermError> {
    Ok(permutations(n, cap)?.iter().map(perm_to_braid).collect())
}

/// Shape `(k, l)` of a shuffle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShuffleType {
    pub k: usize,
    pub l: usize,
}

impl ShuffleType {
    pub fn new(k: usize, l: usize) -> Self {
        ShuffleType { k, l }
    }

    pub fn total(self) -> usize {
        self.k + self.l
    }
}

/// The `(k, l)`-shuffles: permutations increasing on positions `1..=k` and on
/// `k+1..=k+l`. Ordered lexicographically by the image set of the first block.
pub fn enumerate_shuffles(t: ShuffleType) -> Vec<Permutation> {
    let n = t.total();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = (1..=t.k).collect();
    loop {
        let mut images = chosen.clone();
        images.extend((1..=n).filter(|v| !chosen.contains(v)));
        out.push(Permutation { images });
        // next k-subset of 1..=n in lexicographic order
        let Some(i) = (0..t.k).rfind(|&i| chosen[i] < n - t.k + i + 1) else {
            break;
        };
        chosen[i] += 1;
        for j in i + 1..t.k {
            chosen[j] = chosen[j - 1] + 1;
        }
    }
    out
}

/// `bSh_{k,l} = π(Sh_{k,l})`.
pub fn shuffle_braids(t: ShuffleType) -> Vec<BraidWord> {
    enumerate_shuffles(t).iter().map(perm_to_braid).collect()
}

/// Positive lifts of the inverse shuffles `{s⁻¹ : s ∈ Sh_{k,l}}`, index-aligned
/// with [`shuffle_braids`].
pub fn coshuffle_braids(t: ShuffleType) -> Vec<BraidWord> {
    enumerate_shuffles(t)
        .iter()
        .map(|s| perm_to_braid(&s.inverse()))
        .collect()
}

/// The maximal `(a, b)`-shuffle `(b+1, ..., b+a, 1, ..., b)`: it carries the
/// first `a` tensor factors past the last `b`.
pub fn block_transposition(a: usize, b: usize) -> Permutation {
    let mut images: Vec<usize> = (b + 1..=b + a).collect();
    images.extend(1..=b);
    Permutation { images }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_rejects_non_bijections() {
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(Permutation::identity(3).inversion_count(), 0);
        assert_eq!(perm(&[2, 1, 3]).inversion_count(), 1);
        assert_eq!(perm(&[3, 2, 1]).inversion_count(), 3);
    }

    #[test]
    fn reduced_words_small() {
        assert!(Permutation::identity(4).reduced_word().is_empty());
        assert_eq!(perm(&[2, 1, 3]).reduced_word(), vec![1]);
        assert_eq!(perm(&[3, 1, 2]).reduced_word(), vec![1, 2]);
    }

    #[test]
    fn longest_word_matches_brute_force_product() {
        // Multiply out every length-3 word in t_1, t_2 as position swaps applied
        // to the identity sequence and keep those landing on (3,2,1).
        let target = perm(&[3, 2, 1]);
        let mut hits = Vec::new();
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    let t = |i| Permutation::transposition(3, i).unwrap();
                    // perm(w) = t_{w3}∘t_{w2}∘t_{w1}
                    let p = t(c).compose(&t(b)).unwrap().compose(&t(a)).unwrap();
                    if p == target {
                        hits.push(vec![a, b, c]);
                    }
                }
            }
        }
        assert_eq!(hits, vec![vec![1, 2, 1], vec![2, 1, 2]]);
        assert!(hits.contains(&target.reduced_word()));
        assert_eq!(target.all_reduced_words(), hits);
    }

    #[test]
    fn word_round_trip() {
        for p in permutations(5, 8).unwrap() {
            let w = p.reduced_word();
            assert_eq!(w.len(), p.inversion_count());
            assert_eq!(Permutation::from_word(5, &w).unwrap(), p);
            for other in p.all_reduced_words() {
                assert_eq!(Permutation::from_word(5, &other).unwrap(), p);
            }
        }
    }

    #[test]
    fn lift_of_transposition() {
        assert!(perm_to_braid(&Permutation::identity(3)).is_empty());
        assert_eq!(perm_to_braid(&perm(&[2, 1, 3])).letters(), &[1]);
    }

    #[test]
    fn xi_enumeration() {
        assert_eq!(enumerate_xi(0, 8).unwrap(), vec![BraidWord::empty(0)]);
        assert_eq!(enumerate_xi(1, 8).unwrap(), vec![BraidWord::empty(1)]);
        let two = enumerate_xi(2, 8).unwrap();
        assert_eq!(two, vec![BraidWord::empty(2), BraidWord::new(2, vec![1]).unwrap()]);
        let mut lengths: Vec<usize> = enumerate_xi(3, 8).unwrap().iter().map(|w| w.len()).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(
            enumerate_xi(9, 8),
            Err(PermError::CapExceeded { n: 9, cap: 8 })
        );
    }

    #[test]
    fn shuffles_small() {
        assert_eq!(enumerate_shuffles(ShuffleType::new(0, 3)), vec![Permutation::identity(3)]);
        assert_eq!(enumerate_shuffles(ShuffleType::new(3, 0)), vec![Permutation::identity(3)]);
        assert_eq!(
            enumerate_shuffles(ShuffleType::new(1, 2)),
            vec![perm(&[1, 2, 3]), perm(&[2, 1, 3]), perm(&[3, 1, 2])]
        );
        let mut lengths: Vec<usize> = shuffle_braids(ShuffleType::new(1, 2))
            .iter()
            .map(|w| w.len())
            .collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 2]);
    }

    #[test]
    fn two_two_shuffles_by_filtering() {
        let mut expected: Vec<Permutation> = permutations(4, 8)
            .unwrap()
            .into_iter()
            .filter(|p| p.apply(1) < p.apply(2) && p.apply(3) < p.apply(4))
            .collect();
        let mut got = enumerate_shuffles(ShuffleType::new(2, 2));
        assert_eq!(got.len(), 6);
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn coshuffles() {
        let t = ShuffleType::new(1, 1);
        let expected = vec![BraidWord::empty(2), BraidWord::new(2, vec![1]).unwrap()];
        assert_eq!(shuffle_braids(t), expected);
        assert_eq!(coshuffle_braids(t), expected);
        for n in 0..=6 {
            for k in 0..=n {
                let t = ShuffleType::new(k, n - k);
                let a = shuffle_braids(t);
                let b = coshuffle_braids(t);
                assert_eq!(a.len(), b.len());
                assert!(a.iter().zip(&b).all(|(x, y)| x.len() == y.len()));
            }
        }
    }

    #[test]
    fn composition_and_inverse() {
        let p = perm(&[2, 3, 1]);
        assert_eq!(p.compose(&Permutation::identity(3)).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert_eq!(p.inverse(), perm(&[3, 1, 2]));
        assert_eq!(p.inverse().inverse(), p);
        assert_eq!(
            p.compose(&Permutation::identity(2)),
            Err(PermError::SizeMismatch(3, 2))
        );
    }

    #[test]
    fn block_transposition_is_a_shuffle() {
        let b = block_transposition(2, 3);
        assert_eq!(b.images(), &[4, 5, 1, 2, 3]);
        assert!(enumerate_shuffles(ShuffleType::new(2, 3)).contains(&b));
        assert_eq!(b.inversion_count(), 6);
    }

    #[test]
    fn braid_word_validation() {
        assert!(BraidWord::new(3, vec![1, 2, 1]).is_ok());
        assert_eq!(
            BraidWord::new(3, vec![3]),
            Err(PermError::LetterOutOfRange { letter: 3, strands: 3 })
        );
    }
}
