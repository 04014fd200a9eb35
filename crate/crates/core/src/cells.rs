//! Positroid cells of the totally nonnegative Grassmannian in interval form:
//! a cell is a Bruhat interval pair `(w <= w')` with `w'` Grassmannian,
//! carried as a reduced word for `w'` plus the positive-subexpression mask
//! cutting out `w`. Points of `Gr_{k,n}^{>=0}` are `n x k` matrices whose
//! columns span the subspace; maximal minors live on row subsets.
//!
//! The exact sampler realizes a cell as a product of signed lifts `ṡ_i`
//! (masked positions) and lower generators `y_i(t)` (free positions, one
//! positive parameter each) applied right to left against the identity-top
//! base, so the number of free positions equals the cell dimension
//! `ℓ(w') - ℓ(w)` and every maximal minor of the result is nonnegative.

use std::collections::BTreeSet;

use num::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactlin::{k_subsets, LinError, Rational, RationalMatrix};
use crate::weyl::{
    is_in_wj, is_reduced, positive_subexpression, word_to_perm, Permutation, ReducedWord,
    SubexprMask, WeylError,
};

#[derive(Debug, Error)]
pub enum CellError {
    #[error("weyl: {0}")]
    Weyl(#[from] WeylError),
    #[error("linear algebra: {0}")]
    Lin(#[from] LinError),
    #[error("invalid cell data: {0}")]
    Invalid(String),
    #[error("word is not reduced")]
    NotReduced,
    #[error("word product is not Grassmannian for k={0}")]
    NotGrassmannian(usize),
    #[error("mask is not the canonical positive subexpression")]
    NonCanonicalMask,
    #[error("expected {expected} positive parameters, got {got}")]
    ParamCount { expected: usize, got: usize },
    #[error("parameters must be strictly positive")]
    ParamSign,
    #[error("sample violates nonnegativity or rank (internal bug)")]
    BadSample,
    #[error("positroid extraction is sample-dependent (internal bug)")]
    Unstable,
    #[error("basis collection violates the exchange axiom")]
    NotPositroid,
    #[error("cannot parse dotted word {0:?}")]
    BadDotted(String),
    #[error("interval lookup: {0}")]
    Lookup(String),
    #[error("interval lookup budget is n <= 8, got n = {0}")]
    LookupBudget(usize),
}

/// A cell in interval form. Invariants (constructor-checked): the word is a
/// reduced word of rank `n` whose product lies in `W^J(k)`, and the mask is
/// the canonical (rightmost, positive) subexpression for the subproduct it
/// selects.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MRCell {
    n: usize,
    k: usize,
    word: ReducedWord,
    mask: SubexprMask,
}

impl std::fmt::Debug for MRCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MRCell(n={}, k={}, {})", self.n, self.k, self.render_dotted())
    }
}

impl MRCell {
    pub fn new(
        n: usize,
        k: usize,
        word: ReducedWord,
        mask: SubexprMask,
    ) -> Result<Self, CellError> {
        if word.rank() != n {
            return Err(CellError::Invalid(format!(
                "word rank {} does not match n={}",
                word.rank(),
                n
            )));
        }
        if k > n {
            return Err(CellError::Invalid(format!("k={} exceeds n={}", k, n)));
        }
        if mask.len() != word.len() {
            return Err(CellError::Invalid(format!(
                "mask length {} does not match word length {}",
                mask.len(),
                word.len()
            )));
        }
        if !is_reduced(&word) {
            return Err(CellError::NotReduced);
        }
        if !is_in_wj(&word_to_perm(&word), k) {
            return Err(CellError::NotGrassmannian(k));
        }
        let w = masked_product(&word, &mask);
        let canonical = positive_subexpression(&w, &word)?;
        if canonical != mask {
            return Err(CellError::NonCanonicalMask);
        }
        Ok(MRCell { n, k, word, mask })
    }

    /// The unique zero-dimensional cell of the `k = 0` Grassmannian.
    pub fn k0_point(n: usize) -> Self {
        MRCell {
            n,
            k: 0,
            word: ReducedWord::empty(n),
            mask: SubexprMask::new(Vec::new()),
        }
    }

    /// The dense top cell: `w` the identity below the maximal Grassmannian
    /// element (dimension `k(n-k)`); its positroid has every basis.
    pub fn top_cell(n: usize, k: usize) -> Result<Self, CellError> {
        let subset: Vec<usize> = (n - k + 1..=n).collect();
        let word = crate::weyl::wj_word_from_subset(&subset, n)?;
        cell_from_interval(&Permutation::identity(n), &word, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn mask(&self) -> &SubexprMask {
        &self.mask
    }

    /// Lower interval endpoint: the product of the masked letters.
    pub fn w(&self) -> Permutation {
        masked_product(&self.word, &self.mask)
    }

    /// Upper interval endpoint: the product of the whole word.
    pub fn w_prime(&self) -> Permutation {
        word_to_perm(&self.word)
    }

    /// Block list of the Grassmannian top element: `a_r = w'(r) - 1`.
    pub fn a_list(&self) -> Vec<usize> {
        let wp = self.w_prime();
        (1..=self.k).map(|r| wp.image(r) - 1).collect()
    }

    /// `ℓ(w') - ℓ(w)`: the number of free (unmasked) positions.
    pub fn dimension(&self) -> usize {
        self.word.len() - self.mask.count_marked()
    }

    /// Free positions (1-based, ascending): these consume parameters.
    pub fn free_positions(&self) -> Vec<usize> {
        (1..=self.word.len()).filter(|&p| !self.mask.is_marked(p)).collect()
    }

    /// Deterministic positive parameters for draw `d`: consecutive primes,
    /// with disjoint blocks for distinct draws.
    pub fn default_params(&self, draw: usize) -> Vec<Rational> {
        let dim = self.dimension();
        crate::exactlin::primes(dim, draw * dim)
            .into_iter()
            .map(|p| Rational::from_integer(p.into()))
            .collect()
    }

    /// Exact point of the cell: parameters bind to free positions in word
    /// order; letters act right to left on the identity-top base, masked
    /// positions as `ṡ_i`, free positions as `y_i(t)`.
    pub fn sample_point(&self, params: &[Rational]) -> Result<PointSample, CellError> {
        let free = self.free_positions();
        if params.len() != free.len() {
            return Err(CellError::ParamCount { expected: free.len(), got: params.len() });
        }
        if params.iter().any(|p| crate::exactlin::sign_of(p) <= 0) {
            return Err(CellError::ParamSign);
        }
        let mut by_position = vec![None; self.word.len() + 1];
        for (t, &pos) in params.iter().zip(free.iter()) {
            by_position[pos] = Some(t);
        }
        let mut m = identity_top(self.n, self.k);
        for pos in (1..=self.word.len()).rev() {
            let letter = self.word.letters()[pos - 1];
            match by_position[pos] {
                None => m.apply_sdot_left(letter)?,
                Some(t) => m.apply_y_left(letter, t)?,
            }
        }
        PointSample::new(m, self.clone(), params.to_vec())
    }

    /// Sample with the deterministic prime parameters of draw `d`.
    pub fn sample_default(&self, draw: usize) -> Result<PointSample, CellError> {
        self.sample_point(&self.default_params(draw))
    }

    /// The cell's matroid of nonvanishing maximal minors, extracted from one
    /// sample and confirmed on an independent second draw. Disagreement
    /// means a broken invariant, not user error.
    pub fn positroid_of(&self) -> Result<Positroid, CellError> {
        let first = self.sample_point(&self.default_params(0))?.support()?;
        let second = self.sample_point(&self.default_params(1))?.support()?;
        if first != second {
            return Err(CellError::Unstable);
        }
        Positroid::new(self.n, self.k, first)
    }

    /// Dotted word: space-separated letters, `.` marking masked positions.
    pub fn render_dotted(&self) -> String {
        self.word
            .letters()
            .iter()
            .enumerate()
            .map(|(idx, l)| {
                if self.mask.is_marked(idx + 1) {
                    format!(".{}", l)
                } else {
                    l.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Product of the masked letters, in word order.
fn masked_product(word: &ReducedWord, mask: &SubexprMask) -> Permutation {
    let mut images: Vec<usize> = (1..=word.rank()).collect();
    for (idx, &l) in word.letters().iter().enumerate() {
        if mask.is_marked(idx + 1) {
            images.swap(l - 1, l);
        }
    }
    Permutation::from_images(images).expect("swaps preserve bijectivity")
}

/// The `n x k` base matrix with `I_k` on top and zero rows below.
pub fn identity_top(n: usize, k: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, k);
    for i in 0..k.min(n) {
        m.set(i, i, Rational::from_integer(1.into()));
    }
    m
}

/// Builds the cell for an interval `(w <= w')` given a reduced word for `w'`;
/// the mask is recomputed canonically, never trusted from the caller.
pub fn cell_from_interval(
    w: &Permutation,
    word: &ReducedWord,
    k: usize,
) -> Result<MRCell, CellError> {
    if !is_reduced(word) {
        return Err(CellError::NotReduced);
    }
    if !is_in_wj(&word_to_perm(word), k) {
        return Err(CellError::NotGrassmannian(k));
    }
    let mask = positive_subexpression(w, word)?;
    MRCell::new(word.rank(), k, word.clone(), mask)
}

/// `ℓ(w') - ℓ(w)`.
pub fn dimension(cell: &MRCell) -> usize {
    cell.dimension()
}

/// An exact representative together with the cell and parameters that
/// produced it. Constructor-checked: totally nonnegative of rank `k`.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSample {
    matrix: RationalMatrix,
    provenance: MRCell,
    params: Vec<Rational>,
}

impl PointSample {
    pub fn new(
        matrix: RationalMatrix,
        provenance: MRCell,
        params: Vec<Rational>,
    ) -> Result<Self, CellError> {
        if matrix.rows() != provenance.n() || matrix.cols() != provenance.k() {
            return Err(CellError::Invalid(format!(
                "sample shape {}x{} does not match cell ({}, {})",
                matrix.rows(),
                matrix.cols(),
                provenance.n(),
                provenance.k()
            )));
        }
        if !matrix.is_totally_nonnegative()? || matrix.rank() != provenance.k() {
            return Err(CellError::BadSample);
        }
        Ok(PointSample { matrix, provenance, params })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn provenance(&self) -> &MRCell {
        &self.provenance
    }

    pub fn params(&self) -> &[Rational] {
        &self.params
    }

    /// The set of row subsets with nonvanishing maximal minor.
    pub fn support(&self) -> Result<BTreeSet<Vec<usize>>, CellError> {
        support_of(&self.matrix)
    }
}

/// Nonvanishing maximal row minors of an `n x k` matrix.
pub fn support_of(matrix: &RationalMatrix) -> Result<BTreeSet<Vec<usize>>, CellError> {
    let mut bases = BTreeSet::new();
    for subset in k_subsets(matrix.rows(), matrix.cols()) {
        if !matrix.maximal_minor(&subset)?.is_zero() {
            bases.insert(subset);
        }
    }
    Ok(bases)
}

/// A realizable matroid given by its bases; construction validates the
/// exchange axiom (for `n <= 10`, per budget) and basic well-formedness.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Positroid {
    n: usize,
    k: usize,
    bases: BTreeSet<Vec<usize>>,
}

impl std::fmt::Debug for Positroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Positroid(n={}, k={}, {} bases)", self.n, self.k, self.bases.len())
    }
}

impl Positroid {
    pub fn new(n: usize, k: usize, bases: BTreeSet<Vec<usize>>) -> Result<Self, CellError> {
        if bases.is_empty() {
            return Err(CellError::Invalid("empty basis collection".into()));
        }
        for b in &bases {
            let sorted = b.windows(2).all(|w| w[0] < w[1]);
            let in_range = b.iter().all(|&e| e >= 1 && e <= n);
            if b.len() != k || !sorted || !in_range {
                return Err(CellError::Invalid(format!("bad basis {:?} for ({}, {})", b, n, k)));
            }
        }
        let p = Positroid { n, k, bases };
        if n <= 10 && !p.exchange_axiom_holds() {
            return Err(CellError::NotPositroid);
        }
        Ok(p)
    }

    fn exchange_axiom_holds(&self) -> bool {
        // The uniform matroid satisfies exchange trivially; skipping it keeps
        // top-cell validation cheap.
        if self.bases.len() == crate::exactlin::binomial(self.n, self.k) {
            return true;
        }
        let masks: Vec<u32> = self
            .bases
            .iter()
            .map(|b| b.iter().fold(0u32, |acc, &e| acc | (1 << (e - 1))))
            .collect();
        let mut sorted = masks.clone();
        sorted.sort_unstable();
        for &a in &masks {
            for &b in &masks {
                let mut x_bits = a & !b;
                while x_bits != 0 {
                    let x = x_bits & x_bits.wrapping_neg();
                    x_bits ^= x;
                    let mut found = false;
                    let mut y_bits = b & !a;
                    while y_bits != 0 {
                        let y = y_bits & y_bits.wrapping_neg();
                        y_bits ^= y;
                        if sorted.binary_search(&((a ^ x) | y)).is_ok() {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bases(&self) -> &BTreeSet<Vec<usize>> {
        &self.bases
    }

    pub fn contains(&self, basis: &[usize]) -> bool {
        self.bases.contains(basis)
    }

    /// Ground-set elements contained in no basis.
    pub fn loops(&self) -> BTreeSet<usize> {
        (1..=self.n).filter(|e| self.bases.iter().all(|b| !b.contains(e))).collect()
    }

    /// Ground-set elements contained in every basis.
    pub fn coloops(&self) -> BTreeSet<usize> {
        (1..=self.n).filter(|e| self.bases.iter().all(|b| b.contains(e))).collect()
    }

    /// Set-complement dual inside the rank `n - k` Grassmannian; preserves
    /// cell dimension and swaps loops with coloops.
    pub fn complement(&self) -> Result<Positroid, CellError> {
        let bases = self
            .bases
            .iter()
            .map(|b| (1..=self.n).filter(|e| !b.contains(e)).collect())
            .collect();
        Positroid::new(self.n, self.n - self.k, bases)
    }

    /// Combinatorial cyclic shift: relabels every basis element `e` to
    /// `e + p` modulo `n` (into `1..=n`). Matches the row action of the
    /// twisted shift on representatives for any `k`.
    pub fn shift(&self, p: i64) -> Result<Positroid, CellError> {
        let n = self.n as i64;
        let bases = self
            .bases
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> =
                    b.iter().map(|&e| ((e as i64 - 1 + p).rem_euclid(n) + 1) as usize).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        Positroid::new(self.n, self.k, bases)
    }
}

/// Parses a dotted word (`.` marks masked positions) into the
/// cell it denotes. When the word's product is Grassmannian for `k` the cell
/// is built directly; when it is Grassmannian for `n - k` instead, the
/// string denotes the complement-dual cell, and the primal cell is recovered
/// through its positroid.
pub fn parse_dotted(text: &str, n: usize, k: usize) -> Result<MRCell, CellError> {
    let mut letters = Vec::new();
    let mut bits = Vec::new();
    for token in text.split_whitespace() {
        let (dotted, digits) = match token.strip_prefix('.') {
            Some(rest) => (true, rest),
            None => (false, token),
        };
        let letter: usize = digits
            .parse()
            .map_err(|_| CellError::BadDotted(text.to_string()))?;
        letters.push(letter);
        bits.push(dotted);
    }
    if letters.is_empty() && !(k == 0 || k == n) {
        return Err(CellError::BadDotted(text.to_string()));
    }
    let word = ReducedWord::new(letters, n)?;
    if !is_reduced(&word) {
        return Err(CellError::NotReduced);
    }
    let mask = SubexprMask::new(bits);
    let product = word_to_perm(&word);
    if is_in_wj(&product, k) {
        let w = masked_product(&word, &mask);
        let canonical = positive_subexpression(&w, &word)?;
        if canonical != mask {
            return Err(CellError::NonCanonicalMask);
        }
        return MRCell::new(n, k, word, mask);
    }
    if is_in_wj(&product, n - k) {
        // Dual reading: the same string labels a rank n-k cell whose
        // positroid complement identifies the rank k cell.
        let dual = {
            let w = masked_product(&word, &mask);
            let canonical = positive_subexpression(&w, &word)?;
            if canonical != mask {
                return Err(CellError::NonCanonicalMask);
            }
            MRCell::new(n, n - k, word, mask)?
        };
        let primal = dual.positroid_of()?.complement()?;
        let (w, wp_word) =
            crate::recursion::interval_of_positroid(&primal).map_err(|e| match e {
                crate::recursion::RecError::LookupBudget(m) => CellError::LookupBudget(m),
                other => CellError::Lookup(other.to_string()),
            })?;
        return cell_from_interval(&w, &wp_word, k);
    }
    Err(CellError::NotGrassmannian(k))
}

/// Inverse of [`parse_dotted`] for directly-encoded cells.
pub fn render_dotted(cell: &MRCell) -> String {
    cell.render_dotted()
}

#[derive(Serialize, Deserialize)]
struct CellRepr {
    n: usize,
    k: usize,
    word: Vec<usize>,
    mask: Vec<bool>,
}

impl Serialize for MRCell {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CellRepr {
            n: self.n,
            k: self.k,
            word: self.word.letters().to_vec(),
            mask: self.mask.bits().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MRCell {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = CellRepr::deserialize(deserializer)?;
        let word = ReducedWord::new(repr.word, repr.n).map_err(D::Error::custom)?;
        MRCell::new(repr.n, repr.k, word, SubexprMask::new(repr.mask)).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PositroidRepr {
    n: usize,
    k: usize,
    bases: Vec<Vec<usize>>,
}

impl Serialize for Positroid {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PositroidRepr {
            n: self.n,
            k: self.k,
            bases: self.bases.iter().cloned().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Positroid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PositroidRepr::deserialize(deserializer)?;
        Positroid::new(repr.n, repr.k, repr.bases.into_iter().collect())
            .map_err(D::Error::custom)
    }
}

#[derive(Serialize)]
struct SampleRepr<'a> {
    matrix: &'a RationalMatrix,
    provenance: &'a MRCell,
    params: Vec<String>,
}

impl Serialize for PointSample {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SampleRepr {
            matrix: &self.matrix,
            provenance: &self.provenance,
            params: self.params.iter().map(crate::exactlin::rational_to_string).collect(),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_int;

    #[test]
    fn interval_cell_sample_is_exact() {
        // w = s_1 below the word [1, 3, 2] in rank 4, k = 2.
        let w = Permutation::from_images(vec![2, 1, 3, 4]).unwrap();
        let word = ReducedWord::new(vec![1, 3, 2], 4).unwrap();
        let cell = cell_from_interval(&w, &word, 2).unwrap();
        assert_eq!(cell.mask().bits(), &[true, false, false]);
        assert_eq!(cell.dimension(), 2);

        let sample = cell.sample_point(&[rat_int(3), rat_int(2)]).unwrap();
        let expect = RationalMatrix::from_rows(vec![
            vec![rat_int(0), rat_int(-1)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(2)],
            vec![rat_int(0), rat_int(6)],
        ])
        .unwrap();
        assert_eq!(sample.matrix(), &expect);

        let p = cell.positroid_of().unwrap();
        let expect: BTreeSet<Vec<usize>> =
            [vec![1, 2], vec![2, 3], vec![2, 4]].into_iter().collect();
        assert_eq!(p.bases(), &expect);
    }

    #[test]
    fn dotted_round_trip_direct() {
        let cell = parse_dotted("3 .2 1 4 .3 2", 5, 2).unwrap();
        assert_eq!(cell.render_dotted(), "3 .2 1 4 .3 2");
        assert_eq!(cell.dimension(), 4);
        let p = cell.positroid_of().unwrap();
        assert!(p.loops().contains(&2));
    }

    #[test]
    fn shift_relabels_cyclically() {
        let cell = parse_dotted("2 1", 4, 1).unwrap();
        let p = cell.positroid_of().unwrap();
        let shifted = p.shift(-1).unwrap();
        let expect: BTreeSet<Vec<usize>> =
            [vec![1], vec![2], vec![4]].into_iter().collect();
        assert_eq!(shifted.bases(), &expect);
    }
}
