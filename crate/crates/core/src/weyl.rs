//! Symmetric-group machinery: one-line permutations, reduced words, Bruhat
//! order, Grassmannian elements, and positive subexpressions.
//!
//! Conventions, used uniformly by every module:
//!
//! - Permutations act on `{1, .., n}`; `image(i)` is 1-based.
//! - A word `[i1, .., il]` multiplies out left to right starting from the
//!   identity, each letter `s_i` swapping the entries in positions `i, i+1`.
//!   The result equals the composition `s_{i1} ∘ .. ∘ s_{il}` (rightmost
//!   factor applied first), matching the matrix products in [`crate::exactlin`].
//! - Right multiplication `v·s_i` swaps positions `i, i+1` of the one-line
//!   form, so `ℓ(v·s_i) < ℓ(v)` iff `v(i) > v(i+1)`: an O(1) descent test.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("one-line form {0:?} is not a permutation of 1..=n")]
    InvalidImages(Vec<usize>),
    #[error("letter {letter} out of range for rank {rank} (need 1..={max})", max = rank.saturating_sub(1))]
    LetterOutOfRange { letter: usize, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid block list {0:?} for k={1}, n={2}: need 1 <= a_1 < .. < a_k <= n-1 and a_r >= r")]
    InvalidBlocks(Vec<usize>, usize, usize),
    #[error("target is not below the word's product in Bruhat order")]
    NotBelow,
    #[error("greedy subexpression violates positivity at position {0} (1-based)")]
    NotPositive(usize),
}

/// A permutation of `{1, .., n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Builds from a 1-based one-line form, validating it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, WeylError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(WeylError::InvalidImages(images));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of `i` (1-based).
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(idx, &v)| v == idx + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (idx, &v) in self.images.iter().enumerate() {
            images[v - 1] = idx + 1;
        }
        Permutation { images }
    }

    /// Composition `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self, WeylError> {
        if self.n() != other.n() {
            return Err(WeylError::RankMismatch(self.n(), other.n()));
        }
        let images = (1..=self.n()).map(|i| self.image(other.image(i))).collect();
        Ok(Permutation { images })
    }

    /// Coxeter length: the number of inversions `i < j` with `v(i) > v(j)`.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Right multiplication by `s_i`: swaps positions `i, i+1` (1-based).
    pub fn right_s(&self, i: usize) -> Result<Self, WeylError> {
        if i < 1 || i + 1 > self.n() {
            return Err(WeylError::LetterOutOfRange { letter: i, rank: self.n() });
        }
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Ok(Permutation { images })
    }

    /// True iff `ℓ(v·s_i) < ℓ(v)`, i.e. `v(i) > v(i+1)`.
    pub fn right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// Positions `i` with `v(i) > v(i+1)`.
    pub fn descent_set(&self) -> BTreeSet<usize> {
        (1..self.n()).filter(|&i| self.right_descent(i)).collect()
    }
}

/// A word in the generators `s_1, .., s_{rank-1}`.
///
/// Words are plain letter sequences; reducedness is a property checked by
/// [`is_reduced`], not a constructor invariant, so that subwords and scratch
/// words can share the type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<usize>,
    rank: usize,
}

impl fmt::Debug for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}@S{}", self.letters, self.rank)
    }
}

impl ReducedWord {
    /// Builds a word, validating every letter lies in `1..=rank-1`.
    pub fn new(letters: Vec<usize>, rank: usize) -> Result<Self, WeylError> {
        for &l in &letters {
            if l < 1 || l + 1 > rank {
                return Err(WeylError::LetterOutOfRange { letter: l, rank });
            }
        }
        Ok(ReducedWord { letters, rank })
    }

    pub fn empty(rank: usize) -> Self {
        ReducedWord { letters: Vec::new(), rank }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation (same rank required).
    pub fn concat(&self, other: &Self) -> Result<Self, WeylError> {
        if self.rank != other.rank {
            return Err(WeylError::RankMismatch(self.rank, other.rank));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(ReducedWord { letters, rank: self.rank })
    }
}

/// A marked-position mask over a word, `bits[j]` marking position `j+1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubexprMask {
    bits: Vec<bool>,
}

impl fmt::Debug for SubexprMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let marked: Vec<usize> = self.marked_positions().collect();
        write!(f, "Mask{:?}/{}", marked, self.bits.len())
    }
}

impl SubexprMask {
    pub fn new(bits: Vec<bool>) -> Self {
        SubexprMask { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_marked(&self, pos: usize) -> bool {
        self.bits[pos - 1]
    }

    /// Marked positions, 1-based, ascending.
    pub fn marked_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter_map(|(idx, &b)| b.then_some(idx + 1))
    }

    pub fn count_marked(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// Multiplies a word out to its permutation.
pub fn word_to_perm(word: &ReducedWord) -> Permutation {
    let mut images: Vec<usize> = (1..=word.rank()).collect();
    for &l in word.letters() {
        images.swap(l - 1, l);
    }
    Permutation { images }
}

/// True iff the word's length equals the Coxeter length of its product.
pub fn is_reduced(word: &ReducedWord) -> bool {
    word_to_perm(word).length() == word.len()
}

/// Bruhat order by the tableau criterion: `u <= w` iff for every prefix
/// length `j`, the ascending sort of `u(1..=j)` is entrywise `<=` that of
/// `w(1..=j)`.
pub fn bruhat_leq(u: &Permutation, w: &Permutation) -> Result<bool, WeylError> {
    if u.n() != w.n() {
        return Err(WeylError::RankMismatch(u.n(), w.n()));
    }
    let n = u.n();
    let mut up: Vec<usize> = Vec::with_capacity(n);
    let mut wp: Vec<usize> = Vec::with_capacity(n);
    for j in 1..=n {
        let ui = u.image(j);
        let wi = w.image(j);
        up.insert(up.partition_point(|&x| x < ui), ui);
        wp.insert(wp.partition_point(|&x| x < wi), wi);
        if up.iter().zip(wp.iter()).any(|(a, b)| a > b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The decreasing run `s_a s_{a-1} .. s_b`; empty when `a < b`.
pub fn s_range(a: usize, b: usize, rank: usize) -> Result<ReducedWord, WeylError> {
    if a < b {
        return Ok(ReducedWord::empty(rank));
    }
    ReducedWord::new((b..=a).rev().collect(), rank)
}

/// Canonical word for the Grassmannian element with block list `a`:
/// `s_{[a_1,1]} s_{[a_2,2]} .. s_{[a_k,k]}`. Requires
/// `1 <= a_1 < .. < a_k <= n-1` (which forces `a_r >= r`, so every block is
/// nonempty); the product `w'` satisfies `w'(r) = a_r + 1` for `r <= k` and
/// lies in `W^J(k)`.
pub fn wj_word(a: &[usize], k: usize, n: usize) -> Result<ReducedWord, WeylError> {
    if a.len() != k {
        return Err(WeylError::InvalidBlocks(a.to_vec(), k, n));
    }
    for (idx, &ar) in a.iter().enumerate() {
        let ok = ar >= 1 && ar <= n.saturating_sub(1) && (idx == 0 || a[idx - 1] < ar);
        if !ok {
            return Err(WeylError::InvalidBlocks(a.to_vec(), k, n));
        }
    }
    let subset: Vec<usize> = a.iter().map(|&ar| ar + 1).collect();
    wj_word_from_subset(&subset, n)
}

/// Canonical word for the Grassmannian element `w'` with `w'([k])` equal to
/// the given sorted `k`-subset: blocks `s_{[I_r - 1, r]}`, where entries with
/// `I_r = r` (a fixed prefix) contribute empty blocks. This covers every
/// element of `W^J(k)`, including those [`wj_word`]'s strict block-list form
/// cannot express.
pub fn wj_word_from_subset(subset: &[usize], n: usize) -> Result<ReducedWord, WeylError> {
    let k = subset.len();
    for (idx, &v) in subset.iter().enumerate() {
        let r = idx + 1;
        let ok = v >= r && v <= n && (idx == 0 || subset[idx - 1] < v);
        if !ok {
            return Err(WeylError::InvalidBlocks(subset.to_vec(), k, n));
        }
    }
    let mut word = ReducedWord::empty(n);
    for (idx, &v) in subset.iter().enumerate() {
        if v > idx + 1 {
            word = word.concat(&s_range(v - 1, idx + 1, n)?)?;
        }
    }
    debug_assert!(is_reduced(&word));
    debug_assert!(is_in_wj(&word_to_perm(&word), k) || word.is_empty());
    Ok(word)
}

/// True iff every descent of `p` lies in `{k}` (minimal-coset form for the
/// maximal parabolic dropping `s_k`). For `k = 0` or `k = n` only the
/// identity qualifies.
pub fn is_in_wj(p: &Permutation, k: usize) -> bool {
    p.descent_set().iter().all(|&d| d == k)
}

/// The unique positive subexpression for `w` inside `word`: the rightmost
/// reduced subword, found by a right-to-left greedy scan, then validated
/// against the positivity condition (`u_{j-1}·s_{i_j} > u_{j-1}` at every
/// position `j`, marked or not).
///
/// Errors with [`WeylError::NotBelow`] when `w` is not Bruhat-below the
/// word's product.
pub fn positive_subexpression(
    w: &Permutation,
    word: &ReducedWord,
) -> Result<SubexprMask, WeylError> {
    if w.n() != word.rank() {
        return Err(WeylError::RankMismatch(w.n(), word.rank()));
    }
    let letters = word.letters();
    let mut bits = vec![false; letters.len()];
    let mut v = w.clone();
    for (idx, &l) in letters.iter().enumerate().rev() {
        if v.right_descent(l) {
            v = v.right_s(l)?;
            bits[idx] = true;
        }
    }
    if !v.is_identity() {
        return Err(WeylError::NotBelow);
    }
    // The greedy mask of a reduced word is positive by construction; this
    // check guards the invariant rather than assuming it.
    let mut u = Permutation::identity(w.n());
    for (idx, &l) in letters.iter().enumerate() {
        if u.right_descent(l) {
            return Err(WeylError::NotPositive(idx + 1));
        }
        if bits[idx] {
            u = u.right_s(l)?;
        }
    }
    debug_assert_eq!(&u, w);
    Ok(SubexprMask::new(bits))
}
