//! Exact-arithmetic construction and verification of the cell collections
//! that triangulate the second-order positive image of the totally
//! nonnegative Grassmannian `Gr_{k,n}`.
//!
//! The crate builds the collections two ways, a two-branch recursion on
//! `(n, k)` and a closed-form family indexed by block lists, proves them
//! equal, and converts cells between their combinatorial encodings:
//! interval form (reduced word plus positive-subexpression mask), positroid,
//! Grassmann necklace, decorated permutation, and Le diagram. A
//! verification harness checks the geometric triangulation properties
//! (branch sign lemma, signature separation, surjectivity and injectivity
//! probes, the `k = 1` polygon tiling, cyclic-shift stability) over random
//! totally positive data, entirely in rational arithmetic with zero
//! tolerance.
//!
//! All randomness is seeded and per-task streamed, so every artifact and
//! report is byte-reproducible for a given seed regardless of `--jobs`.

pub mod cells;
pub mod combinat;
pub mod exactlin;
pub mod explicit;
pub mod harness;
pub mod recursion;
pub mod weyl;
