//! The explicit 2k-dimensional cell family: for each block list
//! `1 < a_1 < .. < a_k <= n-1` the interval cell with
//! `w = s_[a_1-1, 2] .. s_[a_k-1, k+1]` and `w' = s_[a_1, 1] .. s_[a_k, k]`,
//! plus direct enumeration and the exact check that the family satisfies the
//! same recursion that generates the collections.

use serde::Serialize;
use thiserror::Error;

use crate::cells::{cell_from_interval, CellError, MRCell, Positroid};
use crate::exactlin::binomial;
use crate::recursion::{
    collection_from_explicit, iota_pre_positroid, shifted_u_inc_support, CellCollection, RecError,
};
use crate::weyl::{wj_word, wj_word_from_subset, word_to_perm};

#[derive(Debug, Error)]
pub enum ExplicitError {
    #[error("cell: {0}")]
    Cell(#[from] CellError),
    #[error("invalid block list {alist:?} for (n, k) = ({n}, {k}): need 1 < a_1 < .. < a_k <= n-1")]
    BadAlist { n: usize, k: usize, alist: Vec<usize> },
}

/// All admissible block lists for `(n, k)`: ascending `k`-subsets of
/// `{2, .., n-1}`, in lexicographic order. There are `C(n-2, k)` of them.
pub fn admissible_alists(n: usize, k: usize) -> Vec<Vec<usize>> {
    crate::exactlin::k_subsets(n.saturating_sub(2), k)
        .into_iter()
        .map(|s| s.into_iter().map(|e| e + 1).collect())
        .collect()
}

/// The cell for block list `a`: always 2k-dimensional, with
/// `w'(r) = a_r + 1` on `r <= k` and `w` the Grassmannian element (for the
/// parabolic dropping `s_{k+1}`) mapping `[k+1]` onto `{1} ∪ a`. The mask is
/// recomputed canonically from the interval, not assumed block-aligned.
pub fn explicit_cell(n: usize, k: usize, a: &[usize]) -> Result<MRCell, ExplicitError> {
    let bad = || ExplicitError::BadAlist { n, k, alist: a.to_vec() };
    if a.len() != k {
        return Err(bad());
    }
    for (idx, &ar) in a.iter().enumerate() {
        let lower = if idx == 0 { 1 } else { a[idx - 1] };
        if ar <= lower || ar > n.saturating_sub(1) {
            return Err(bad());
        }
    }
    if k == 0 {
        return Ok(MRCell::k0_point(n));
    }
    let mut w_subset = vec![1usize];
    w_subset.extend_from_slice(a);
    let w = word_to_perm(&wj_word_from_subset(&w_subset, n).map_err(CellError::from)?);
    let word = wj_word(a, k, n).map_err(CellError::from)?;
    let cell = cell_from_interval(&w, &word, k)?;
    debug_assert_eq!(cell.dimension(), 2 * k);
    Ok(cell)
}

/// The whole family as a collection: `C(n-2, k)` members, each carrying its
/// cell and block list.
pub fn enumerate_explicit(n: usize, k: usize) -> Result<CellCollection, RecError> {
    collection_from_explicit(n, k)
}

/// Outcome of checking the family against the two-branch recursion, with
/// both inclusion directions and branch disjointness reported separately.
#[derive(Debug, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub k: usize,
    pub pre_count: usize,
    pub inc_count: usize,
    /// Family members produced by neither branch.
    pub missing: Vec<Positroid>,
    /// Branch outputs outside the family.
    pub extra: Vec<Positroid>,
    /// Positroids produced by both branches.
    pub overlap: Vec<Positroid>,
    pub pass: bool,
}

/// Checks that the `(n, k)` family is the disjoint union of the embedded
/// `(n-1, k)` family and the image of the twisted `(n-1, k-1)` family under
/// the k-increasing branch map. Valid for `1 <= k <= n-2`; at `k = n-2` the
/// k-preserving branch is empty.
pub fn verify_recursive_identity(n: usize, k: usize) -> Result<IdentityReport, RecError> {
    if n < 3 || k < 1 || k > n - 2 {
        return Err(RecError::BadInput(format!("need 1 <= k <= n-2, got n={}, k={}", n, k)));
    }
    let family = enumerate_explicit(n, k)?.positroid_set();

    let mut pre = std::collections::BTreeSet::new();
    if k <= n - 3 {
        for p in enumerate_explicit(n - 1, k)?.positroid_set() {
            pre.insert(iota_pre_positroid(&p)?);
        }
    }

    let mut inc = std::collections::BTreeSet::new();
    for sub_a in admissible_alists(n - 1, k - 1) {
        let sub_cell = explicit_cell(n - 1, k - 1, &sub_a)
            .map_err(|e| RecError::BadInput(e.to_string()))?;
        inc.insert(shifted_u_inc_support(&sub_cell, true)?);
    }

    let overlap: Vec<Positroid> = pre.intersection(&inc).cloned().collect();
    let union: std::collections::BTreeSet<Positroid> = pre.union(&inc).cloned().collect();
    let missing: Vec<Positroid> = family.difference(&union).cloned().collect();
    let extra: Vec<Positroid> = union.difference(&family).cloned().collect();
    let pass = overlap.is_empty() && missing.is_empty() && extra.is_empty();
    debug_assert!(!pass || pre.len() + inc.len() == binomial(n - 2, k));
    Ok(IdentityReport {
        n,
        k,
        pre_count: pre.len(),
        inc_count: inc.len(),
        missing,
        extra,
        overlap,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_cells_render_as_expected() {
        let c = explicit_cell(5, 2, &[3, 4]).unwrap();
        assert_eq!(c.render_dotted(), "3 .2 1 4 .3 2");
        let c = explicit_cell(4, 1, &[2]).unwrap();
        assert_eq!(c.render_dotted(), "2 1");
        let c = explicit_cell(4, 1, &[3]).unwrap();
        assert_eq!(c.render_dotted(), "3 .2 1");
    }

    #[test]
    fn family_sizes_are_binomial() {
        assert_eq!(admissible_alists(6, 2).len(), 6);
        assert_eq!(enumerate_explicit(7, 3).unwrap().cardinality(), 10);
    }

    #[test]
    fn recursion_identity_holds_at_small_sizes() {
        let r = verify_recursive_identity(5, 2).unwrap();
        assert!(r.pass, "missing={:?} extra={:?} overlap={:?}", r.missing, r.extra, r.overlap);
        assert_eq!((r.pre_count, r.inc_count), (1, 2));
        let r = verify_recursive_identity(6, 2).unwrap();
        assert!(r.pass);
        assert_eq!((r.pre_count, r.inc_count), (3, 3));
    }
}
