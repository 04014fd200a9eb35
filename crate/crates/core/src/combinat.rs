//! Combinatorial encodings of positroids: Grassmann necklaces, decorated
//! permutations with anti-excedance sets, and Le diagrams.
//!
//! The Le diagram of a rank `k` cell is computed through complement duality:
//! the positroid's set-complement lives in the rank `n - k` Grassmannian,
//! its canonical interval `(w* <= w'*)` is recovered by exact lookup, and
//! the diagram's columns transcribe the blocks of the dual canonical word,
//! bottom to top, with zeros exactly at the dual mask positions. This
//! reproduces the displayed diagrams letter for letter and makes the
//! diagram-to-positroid direction exact.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::cells::{CellError, MRCell, Positroid};
use crate::weyl::{
    positive_subexpression, word_to_perm, Permutation, ReducedWord, SubexprMask, WeylError,
};

#[derive(Debug, Error)]
pub enum CombinatError {
    #[error("cell: {0}")]
    Cell(#[from] CellError),
    #[error("weyl: {0}")]
    Weyl(#[from] WeylError),
    #[error("necklace step at {0} is not a single exchange (internal bug)")]
    BadNecklaceStep(usize),
    #[error("decorated permutation disagrees with matroid loops/coloops (internal bug)")]
    LoopMismatch,
    #[error("anti-excedance count differs from rank (internal bug)")]
    BadAntiExcedances,
    #[error("invalid Le diagram: {0}")]
    BadDiagram(String),
    #[error("interval lookup: {0}")]
    Lookup(String),
}

/// The cyclic family `I_1, .., I_n`, where `I_r` is the lexicographic
/// minimum of the bases with respect to the shifted order
/// `r < r+1 < .. < n < 1 < .. < r-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrassmannNecklace {
    n: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
}

impl GrassmannNecklace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `I_r`, sorted ascending (1-based `r`).
    pub fn set(&self, r: usize) -> &[usize] {
        &self.sets[r - 1]
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }
}

/// Shifted-order key: position of `e` in the rotation starting at `r`.
fn shifted_key(e: usize, r: usize, n: usize) -> usize {
    (e + n - r) % n
}

pub fn necklace_of(p: &Positroid) -> GrassmannNecklace {
    let n = p.n();
    let mut sets = Vec::with_capacity(n);
    for r in 1..=n {
        let min = p
            .bases()
            .iter()
            .min_by_key(|b| {
                let mut key: Vec<usize> = b.iter().map(|&e| shifted_key(e, r, n)).collect();
                key.sort_unstable();
                key
            })
            .expect("positroids are nonempty");
        sets.push(min.clone());
    }
    GrassmannNecklace { n, k: p.k(), sets }
}

/// A permutation with coloop decoration on its fixed points (undecorated
/// fixed points are loops).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecoratedPermutation {
    perm: Vec<usize>,
    coloops: BTreeSet<usize>,
    #[serde(skip)]
    loops: BTreeSet<usize>,
}

impl DecoratedPermutation {
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i - 1]
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn coloops(&self) -> &BTreeSet<usize> {
        &self.coloops
    }

    pub fn loops(&self) -> &BTreeSet<usize> {
        &self.loops
    }
}

/// Reads the decorated permutation off the necklace: when `r` lies in
/// `I_r`, `π(r)` is the unique element replacing `r` in `I_{r+1}` (a fixed
/// point here is a coloop); when `r` does not, `π(r) = r` is a loop.
pub fn decperm_of(p: &Positroid) -> Result<DecoratedPermutation, CombinatError> {
    let n = p.n();
    let necklace = necklace_of(p);
    let mut perm = vec![0usize; n];
    let mut coloops = BTreeSet::new();
    let mut loops = BTreeSet::new();
    for r in 1..=n {
        let cur: BTreeSet<usize> = necklace.set(r).iter().copied().collect();
        let next_r = if r == n { 1 } else { r + 1 };
        let next: BTreeSet<usize> = necklace.set(next_r).iter().copied().collect();
        if !cur.contains(&r) {
            if next != cur {
                return Err(CombinatError::BadNecklaceStep(r));
            }
            perm[r - 1] = r;
            loops.insert(r);
            continue;
        }
        let mut without = cur.clone();
        without.remove(&r);
        let gained: Vec<usize> = next.difference(&without).copied().collect();
        if gained.len() != 1 || !without.is_subset(&next) {
            return Err(CombinatError::BadNecklaceStep(r));
        }
        let j = gained[0];
        perm[r - 1] = j;
        if j == r {
            coloops.insert(r);
        }
    }
    Permutation::from_images(perm.clone()).map_err(CombinatError::Weyl)?;
    if loops != p.loops() || coloops != p.coloops() {
        return Err(CombinatError::LoopMismatch);
    }
    let dp = DecoratedPermutation { perm, coloops, loops };
    if anti_excedances(&dp).len() != p.k() {
        return Err(CombinatError::BadAntiExcedances);
    }
    Ok(dp)
}

/// Anti-excedance set: positions `i` with `π^{-1}(i) > i`, together with all
/// coloops; its size equals the rank.
pub fn anti_excedances(dp: &DecoratedPermutation) -> BTreeSet<usize> {
    let n = dp.n();
    let mut inverse = vec![0usize; n];
    for i in 1..=n {
        inverse[dp.image(i) - 1] = i;
    }
    let mut out: BTreeSet<usize> = (1..=n).filter(|&i| inverse[i - 1] > i).collect();
    out.extend(dp.coloops().iter().copied());
    out
}

/// One box of a Le diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeEntry {
    Zero,
    Plus,
}

/// A filled Young diagram inside the `k x (n-k)` box. Rows are stored top
/// to bottom, left-justified; `rows` may have fewer than `k` entries when
/// lower rows are empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeDiagram {
    n: usize,
    k: usize,
    rows: Vec<Vec<LeEntry>>,
}

impl LeDiagram {
    pub fn new(n: usize, k: usize, rows: Vec<Vec<LeEntry>>) -> Result<Self, CombinatError> {
        if k > n {
            return Err(CombinatError::BadDiagram(format!("k={} exceeds n={}", k, n)));
        }
        let widths: Vec<usize> = rows.iter().map(|r| r.len()).collect();
        let shape_ok = widths.windows(2).all(|w| w[0] >= w[1])
            && widths.iter().all(|&w| w >= 1 && w <= n - k)
            && rows.len() <= k;
        if !rows.is_empty() && !shape_ok {
            return Err(CombinatError::BadDiagram(format!(
                "shape {:?} does not fit the {} x {} box",
                widths,
                k,
                n - k
            )));
        }
        Ok(LeDiagram { n, k, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Row lengths, top to bottom.
    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.len()).collect()
    }

    pub fn rows(&self) -> &[Vec<LeEntry>] {
        &self.rows
    }

    /// The defining condition: no zero box has both a plus somewhere to its
    /// left in the same row and a plus somewhere above it in the same column.
    pub fn condition_holds(&self) -> bool {
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if e != LeEntry::Zero {
                    continue;
                }
                let plus_left = row[..c].iter().any(|&x| x == LeEntry::Plus);
                let plus_above = self.rows[..r]
                    .iter()
                    .any(|above| above.get(c) == Some(&LeEntry::Plus));
                if plus_left && plus_above {
                    return false;
                }
            }
        }
        true
    }

    /// Text form: one row per line, boxes as `+` or `0`, space-separated.
    pub fn render(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        LeEntry::Zero => "0",
                        LeEntry::Plus => "+",
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Block geometry of a canonical Grassmannian word: for `w'` in `W^J(k)`
/// with `w'(j) = I_j`, block `j` is `s_{[I_j - 1, j]}` (empty when
/// `I_j = j`), occupying `len_j = I_j - j` word positions after
/// `start_j = len_1 + .. + len_{j-1}`.
struct Blocks {
    lens: Vec<usize>,
    starts: Vec<usize>,
}

fn blocks_of(wp: &Permutation, k: usize) -> Blocks {
    let mut lens = Vec::with_capacity(k);
    let mut starts = Vec::with_capacity(k);
    let mut acc = 0usize;
    for j in 1..=k {
        let len = wp.image(j) - j;
        starts.push(acc);
        lens.push(len);
        acc += len;
    }
    Blocks { lens, starts }
}

/// The Le diagram of a cell, through the complement-dual canonical interval.
/// Column `c` (from the left) transcribes dual block `j = (n-k) - c + 1`,
/// bottom box first; a box is zero exactly when its dual word position is
/// masked.
pub fn le_of(cell: &MRCell) -> Result<LeDiagram, CombinatError> {
    let n = cell.n();
    let k = cell.k();
    if k == 0 || k == n {
        return LeDiagram::new(n, k, Vec::new());
    }
    let k_star = n - k;
    let dual = cell.positroid_of()?.complement()?;
    let (w_star, word_star) = crate::recursion::interval_of_positroid(&dual)
        .map_err(|e| CombinatError::Lookup(e.to_string()))?;
    let mask_star = positive_subexpression(&w_star, &word_star)?;
    let wp_star = word_to_perm(&word_star);
    let blocks = blocks_of(&wp_star, k_star);

    // Column heights, left to right: reversed block lengths (weakly
    // decreasing because strictly increasing dual images force weakly
    // increasing block lengths).
    let heights: Vec<usize> = (0..k_star).map(|c| blocks.lens[k_star - 1 - c]).collect();
    debug_assert!(heights.windows(2).all(|w| w[0] >= w[1]));
    let max_h = heights.first().copied().unwrap_or(0);

    let mut rows = Vec::with_capacity(max_h);
    for r in 1..=max_h {
        let width = heights.partition_point(|&h| h >= r);
        let mut row = Vec::with_capacity(width);
        for c in 1..=width {
            let j = k_star - c + 1;
            let pos = blocks.starts[j - 1] + 1 + (heights[c - 1] - r);
            // Block j descends to the letter j, so row r from the top holds
            // the letter j + r - 1.
            debug_assert_eq!(word_star.letters()[pos - 1], j + r - 1);
            let entry = if mask_star.is_marked(pos) { LeEntry::Zero } else { LeEntry::Plus };
            row.push(entry);
        }
        rows.push(row);
    }
    let d = LeDiagram::new(n, k, rows)?;
    debug_assert!(d.condition_holds());
    Ok(d)
}

/// Exact inverse: rebuilds the dual canonical word and mask from the
/// diagram, then returns the complement of the dual cell's positroid.
pub fn le_to_positroid(d: &LeDiagram) -> Result<Positroid, CombinatError> {
    let n = d.n();
    let k = d.k();
    if k == 0 {
        let bases: BTreeSet<Vec<usize>> = std::iter::once(Vec::new()).collect();
        return Ok(Positroid::new(n, 0, bases)?);
    }
    if k == n {
        let bases: BTreeSet<Vec<usize>> = std::iter::once((1..=n).collect()).collect();
        return Ok(Positroid::new(n, n, bases)?);
    }
    let k_star = n - k;
    let shape = d.shape();
    let width = shape.first().copied().unwrap_or(0);
    if width > k_star {
        return Err(CombinatError::BadDiagram(format!(
            "width {} exceeds n-k = {}",
            width, k_star
        )));
    }
    // Column heights from the shape; absent columns are empty dual blocks.
    let heights: Vec<usize> =
        (1..=width).map(|c| shape.iter().filter(|&&w| w >= c).count()).collect();

    let mut letters = Vec::new();
    let mut bits = Vec::new();
    for j in 1..=k_star {
        // Block j corresponds to column c = k_star - j + 1 when present.
        let c = k_star - j + 1;
        if c > width {
            continue;
        }
        let h = heights[c - 1];
        if h > k {
            return Err(CombinatError::BadDiagram(format!("column {} taller than k", c)));
        }
        // Bottom-to-top boxes are the block letters left to right: the
        // block descends from j + h - 1 to j.
        for t in 0..h {
            let r = h - t;
            letters.push(j + r - 1);
            let entry = d.rows()[r - 1][c - 1];
            bits.push(entry == LeEntry::Zero);
        }
    }
    let word = ReducedWord::new(letters, n).map_err(CombinatError::Weyl)?;
    let mask = SubexprMask::new(bits);
    let dual_cell = MRCell::new(n, k_star, word, mask).map_err(|e| {
        CombinatError::BadDiagram(format!("diagram does not encode a dual cell: {}", e))
    })?;
    Ok(dual_cell.positroid_of()?.complement()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::parse_dotted;

    #[test]
    fn necklace_and_decperm_of_small_cell() {
        let cell = parse_dotted(".1 3 2", 4, 2).unwrap();
        let p = cell.positroid_of().unwrap();
        let neck = necklace_of(&p);
        assert_eq!(neck.sets(), &[vec![1, 2], vec![2, 3], vec![2, 3], vec![2, 4]]);
        let dp = decperm_of(&p).unwrap();
        assert_eq!(dp.perm(), &[3, 2, 4, 1]);
        assert_eq!(dp.coloops().iter().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(anti_excedances(&dp).into_iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn le_condition_flags_forbidden_pattern() {
        let bad = LeDiagram::new(4, 2, vec![
            vec![LeEntry::Plus, LeEntry::Plus],
            vec![LeEntry::Plus, LeEntry::Zero],
        ])
        .unwrap();
        assert!(!bad.condition_holds());
        let good = LeDiagram::new(4, 2, vec![
            vec![LeEntry::Plus, LeEntry::Plus],
            vec![LeEntry::Zero, LeEntry::Plus],
        ])
        .unwrap();
        assert!(good.condition_holds());
    }
}
