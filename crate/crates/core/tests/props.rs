//! Property suites: sampled matrices stay totally nonnegative of full rank,
//! cell supports do not depend on the parameters, positive subexpressions
//! are unique, generated Le fillings satisfy the shape condition, images
//! under a totally positive Z have strictly positive Plucker vectors, and
//! bracket signs ignore the representative.

use std::collections::BTreeSet;

use amp2::combinat::{le_of, le_to_positroid};
use amp2::exactlin::{rat, rat_int, vandermonde_z, Rational, RationalMatrix};
use amp2::explicit::{admissible_alists, explicit_cell};
use amp2::harness::{apply_z, probe_pairs, sign_vector};
use amp2::recursion::{generate_collection, Variant};
use amp2::weyl::{is_reduced, positive_subexpression, word_to_perm, Permutation, ReducedWord};
use proptest::prelude::*;

/// All (n, k) with 1 <= k <= n-2 and n bounded.
fn nk_pairs(max_n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for k in 1..=n - 2 {
            out.push((n, k));
        }
    }
    out
}

/// Positive rationals cut from a raw (numerator, denominator) pool.
fn params_from(raw: &[(u32, u32)], dim: usize) -> Vec<Rational> {
    (0..dim).map(|i| rat(raw[i % raw.len()].0 as i64, raw[i % raw.len()].1 as i64)).collect()
}

fn nodes_from(pool: &BTreeSet<u32>, n: usize) -> Vec<Rational> {
    pool.iter().take(n).map(|&v| rat_int(v as i64)).collect()
}

/// Scan check: every letter must lengthen the running marked product.
fn mask_is_positive(word: &ReducedWord, bits: &[bool], rank: usize) -> bool {
    let mut u = Permutation::identity(rank);
    for (pos, &l) in word.letters().iter().enumerate() {
        if u.right_descent(l) {
            return false;
        }
        if bits[pos] {
            u = u.right_s(l).unwrap();
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn samples_are_nonnegative_of_full_rank(
        pair in proptest::sample::select(nk_pairs(7)),
        variant in proptest::sample::select(vec![Variant::Twisted, Variant::Plain]),
        member_idx in any::<proptest::sample::Index>(),
        raw in proptest::collection::vec((1u32..1000, 1u32..1000), 10),
    ) {
        let (n, k) = pair;
        let collection = generate_collection(n, k, variant).unwrap();
        let member = member_idx.get(collection.members());
        let cell = member.cell.as_ref().unwrap();
        let sample = cell.sample_point(&params_from(&raw, cell.dimension())).unwrap();
        prop_assert!(sample.matrix().is_totally_nonnegative().unwrap());
        prop_assert_eq!(sample.matrix().rank(), k);
        prop_assert_eq!(&sample.support().unwrap(), member.positroid.bases());
    }

    #[test]
    fn support_does_not_depend_on_parameters(
        pair in proptest::sample::select(nk_pairs(7)),
        member_idx in any::<proptest::sample::Index>(),
        raw in proptest::collection::vec((1u32..1000, 1u32..1000), 50),
    ) {
        let (n, k) = pair;
        let collection = generate_collection(n, k, Variant::Twisted).unwrap();
        let member = member_idx.get(collection.members());
        let cell = member.cell.as_ref().unwrap();
        let dim = cell.dimension();
        for chunk in 0..5 {
            let params = params_from(&raw[chunk * dim..], dim);
            let sample = cell.sample_point(&params).unwrap();
            prop_assert_eq!(&sample.support().unwrap(), member.positroid.bases());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn positive_subexpression_is_unique(
        rank in 3usize..=5,
        letters in proptest::collection::vec(1usize..=4, 1..=8),
        bits in proptest::collection::vec(any::<bool>(), 8),
    ) {
        prop_assume!(letters.iter().all(|&l| l < rank));
        let word = ReducedWord::new(letters.clone(), rank).unwrap();
        prop_assume!(is_reduced(&word));
        let marked: Vec<usize> = letters
            .iter()
            .enumerate()
            .filter(|(i, _)| bits[*i])
            .map(|(_, &l)| l)
            .collect();
        let target = word_to_perm(&ReducedWord::new(marked, rank).unwrap());

        let greedy = positive_subexpression(&target, &word).unwrap();
        prop_assert!(mask_is_positive(&word, greedy.bits(), rank));
        let product: Vec<usize> = greedy.marked_positions().map(|p| word.letters()[p - 1]).collect();
        prop_assert_eq!(word_to_perm(&ReducedWord::new(product, rank).unwrap()), target.clone());

        // Brute force: the positive mask with this product is unique.
        let len = word.len();
        let mut hits = Vec::new();
        for code in 0..(1u32 << len) {
            let mask: Vec<bool> = (0..len).map(|p| code >> p & 1 == 1).collect();
            if !mask_is_positive(&word, &mask, rank) {
                continue;
            }
            let sub: Vec<usize> = (0..len).filter(|&p| mask[p]).map(|p| word.letters()[p]).collect();
            if word_to_perm(&ReducedWord::new(sub, rank).unwrap()) == target {
                hits.push(mask);
            }
        }
        prop_assert_eq!(hits.len(), 1);
        prop_assert_eq!(hits[0].as_slice(), greedy.bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn le_fillings_satisfy_the_condition(
        pair in proptest::sample::select(nk_pairs(6)),
        alist_idx in any::<proptest::sample::Index>(),
    ) {
        let (n, k) = pair;
        let alists = admissible_alists(n, k);
        let a = alist_idx.get(&alists);
        let cell = explicit_cell(n, k, a).unwrap();
        let diagram = le_of(&cell).unwrap();
        prop_assert!(diagram.condition_holds());
        prop_assert_eq!(diagram.n(), n);
        prop_assert_eq!(diagram.k(), k);
        prop_assert_eq!(le_to_positroid(&diagram).unwrap(), cell.positroid_of().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn images_have_positive_plucker_vectors(
        pair in proptest::sample::select(nk_pairs(6)),
        member_idx in any::<proptest::sample::Index>(),
        raw in proptest::collection::vec((1u32..1000, 1u32..1000), 10),
        pool in proptest::collection::btree_set(1u32..=60, 12),
    ) {
        let (n, k) = pair;
        let collection = generate_collection(n, k, Variant::Twisted).unwrap();
        let member = member_idx.get(collection.members());
        let cell = member.cell.as_ref().unwrap();
        let sample = cell.sample_point(&params_from(&raw, cell.dimension())).unwrap();
        let z = vandermonde_z(k + 2, &nodes_from(&pool, n)).unwrap();
        let y = apply_z(&z, sample.matrix()).unwrap();
        // Cauchy-Binet: every maximal minor of Z C is a positive sum.
        for entry in y.plucker_normalized().unwrap() {
            prop_assert!(entry > Rational::from_integer(0.into()));
        }
    }

    #[test]
    fn brackets_ignore_the_representative(
        pair in proptest::sample::select(nk_pairs(6)),
        member_idx in any::<proptest::sample::Index>(),
        raw in proptest::collection::vec((1u32..1000, 1u32..1000), 10),
        pool in proptest::collection::btree_set(1u32..=60, 12),
        diag in proptest::collection::vec(1i64..=9, 5),
        upper in proptest::collection::vec(-9i64..=9, 10),
    ) {
        let (n, k) = pair;
        let collection = generate_collection(n, k, Variant::Twisted).unwrap();
        let member = member_idx.get(collection.members());
        let cell = member.cell.as_ref().unwrap();
        let c = cell.sample_point(&params_from(&raw, cell.dimension())).unwrap().matrix().clone();
        let z = vandermonde_z(k + 2, &nodes_from(&pool, n)).unwrap();

        // Right action by upper-triangular G with positive diagonal: same
        // column span with positive determinant, so identical bracket signs.
        let mut g = RationalMatrix::zeros(k, k);
        let mut t = 0;
        for i in 0..k {
            g.set(i, i, rat_int(diag[i]));
            for j in i + 1..k {
                g.set(i, j, rat_int(upper[t % upper.len()]));
                t += 1;
            }
        }
        let moved = c.mul(&g).unwrap();
        let pairs = probe_pairs(n);
        prop_assert_eq!(
            sign_vector(&z, &c, &pairs).unwrap(),
            sign_vector(&z, &moved, &pairs).unwrap()
        );
    }
}
