use std::collections::BTreeSet;

use amp2::cells::Positroid;
use amp2::combinat::necklace_of;
use amp2::exactlin::binomial;
use amp2::explicit::{
    admissible_alists, enumerate_explicit, explicit_cell, verify_recursive_identity,
};
use amp2::recursion::{collection_from_explicit, Provenance};

fn positroid(n: usize, k: usize, bases: &[&[usize]]) -> Positroid {
    let set: BTreeSet<Vec<usize>> = bases.iter().map(|b| b.to_vec()).collect();
    Positroid::new(n, k, set).unwrap()
}

#[test]
fn block_lists_enumerate_increasing_runs() {
    assert_eq!(admissible_alists(4, 1), vec![vec![2], vec![3]]);
    assert_eq!(
        admissible_alists(5, 2),
        vec![vec![2, 3], vec![2, 4], vec![3, 4]]
    );
    assert_eq!(admissible_alists(6, 0), vec![Vec::<usize>::new()]);
    for n in 3..=10 {
        for k in 0..=n - 2 {
            assert_eq!(admissible_alists(n, k).len(), binomial(n - 2, k));
        }
    }
}

#[test]
fn explicit_cells_validate_their_block_lists() {
    assert!(explicit_cell(5, 2, &[2]).is_err());
    assert!(explicit_cell(5, 2, &[1, 3]).is_err());
    assert!(explicit_cell(5, 2, &[2, 5]).is_err());
    assert!(explicit_cell(5, 2, &[3, 3]).is_err());
    assert!(explicit_cell(5, 2, &[4, 3]).is_err());
}

#[test]
fn explicit_cells_are_two_k_dimensional() {
    for n in 3..=9 {
        for k in 1..=n - 2 {
            for a in admissible_alists(n, k) {
                let cell = explicit_cell(n, k, &a).unwrap();
                assert_eq!(cell.dimension(), 2 * k, "({}, {}) a={:?}", n, k, a);
                assert_eq!(cell.a_list(), a);
            }
        }
    }
}

#[test]
fn five_two_family_renders_to_fixtures() {
    assert_eq!(explicit_cell(5, 2, &[2, 3]).unwrap().render_dotted(), "2 1 3 2");
    assert_eq!(explicit_cell(5, 2, &[2, 4]).unwrap().render_dotted(), "2 1 4 .3 2");
    assert_eq!(explicit_cell(5, 2, &[3, 4]).unwrap().render_dotted(), "3 .2 1 4 .3 2");
}

#[test]
fn six_two_family_renders_to_fixtures() {
    let expect: BTreeSet<String> = [
        "2 1 3 2",
        "2 1 4 .3 2",
        "3 .2 1 4 .3 2",
        "4 .3 .2 1 5 .4 .3 2",
        "3 .2 1 5 .4 .3 2",
        "2 1 5 .4 .3 2",
    ]
    .map(String::from)
    .into_iter()
    .collect();
    let got: BTreeSet<String> = enumerate_explicit(6, 2)
        .unwrap()
        .dotted_list()
        .unwrap()
        .into_iter()
        .collect();
    assert_eq!(got, expect);
}

#[test]
fn seven_three_family_renders_to_fixtures() {
    let expect: BTreeSet<String> = [
        "2 1 3 2 4 3",
        "2 1 3 2 5 .4 3",
        "2 1 3 2 6 .5 .4 3",
        "2 1 4 .3 2 5 .4 3",
        "2 1 4 .3 2 6 .5 .4 3",
        "2 1 5 .4 .3 2 6 .5 .4 3",
        "3 .2 1 4 .3 2 5 .4 3",
        "3 .2 1 4 .3 2 6 .5 .4 3",
        "3 .2 1 5 .4 .3 2 6 .5 .4 3",
        "4 .3 .2 1 5 .4 .3 2 6 .5 .4 3",
    ]
    .map(String::from)
    .into_iter()
    .collect();
    let got: BTreeSet<String> = enumerate_explicit(7, 3)
        .unwrap()
        .dotted_list()
        .unwrap()
        .into_iter()
        .collect();
    assert_eq!(got, expect);
}

#[test]
fn rank_one_cells_are_consecutive_triples() {
    for n in 4..=8 {
        for a in 2..=n - 1 {
            let p = explicit_cell(n, 1, &[a]).unwrap().positroid_of().unwrap();
            assert_eq!(
                p,
                positroid(n, 1, &[&[1], &[a], &[a + 1]]),
                "n={}, a={}",
                n,
                a
            );
        }
    }
}

#[test]
fn six_two_positroid_fixtures() {
    let cases: &[(&[usize], &[&[usize]])] = &[
        (
            &[2, 3],
            &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]],
        ),
        (
            &[2, 4],
            &[&[1, 2], &[1, 3], &[1, 4], &[1, 5], &[2, 4], &[2, 5], &[3, 4], &[3, 5]],
        ),
        (
            &[2, 5],
            &[&[1, 2], &[1, 3], &[1, 5], &[1, 6], &[2, 5], &[2, 6], &[3, 5], &[3, 6]],
        ),
        (
            &[3, 4],
            &[&[1, 3], &[1, 4], &[1, 5], &[3, 4], &[3, 5], &[4, 5]],
        ),
        (
            &[3, 5],
            &[&[1, 3], &[1, 4], &[1, 5], &[1, 6], &[3, 5], &[3, 6], &[4, 5], &[4, 6]],
        ),
        (
            &[4, 5],
            &[&[1, 4], &[1, 5], &[1, 6], &[4, 5], &[4, 6], &[5, 6]],
        ),
    ];
    for (a, bases) in cases {
        assert_eq!(
            explicit_cell(6, 2, a).unwrap().positroid_of().unwrap(),
            positroid(6, 2, bases),
            "a = {:?}",
            a
        );
    }
}

#[test]
fn necklace_starts_at_one_with_the_leading_blocks() {
    // I_1 of the explicit cell is {1, a_1, .., a_{k-1}}.
    for (n, k, a) in [
        (5, 2, vec![2, 3]),
        (5, 2, vec![3, 4]),
        (6, 2, vec![2, 5]),
        (6, 3, vec![2, 3, 5]),
        (7, 3, vec![3, 4, 6]),
    ] {
        let p = explicit_cell(n, k, &a).unwrap().positroid_of().unwrap();
        let mut expect = vec![1usize];
        expect.extend_from_slice(&a[..k - 1]);
        expect.sort_unstable();
        assert_eq!(necklace_of(&p).set(1), &expect[..], "({}, {}) a={:?}", n, k, a);
    }
}

#[test]
fn family_collections_carry_explicit_provenance() {
    let c = collection_from_explicit(6, 2).unwrap();
    assert_eq!(c.cardinality(), 6);
    let alists: BTreeSet<Vec<usize>> = c
        .members()
        .iter()
        .map(|m| match &m.provenance {
            Provenance::Explicit { alist } => alist.clone(),
            other => panic!("unexpected provenance {:?}", other),
        })
        .collect();
    let expect: BTreeSet<Vec<usize>> = admissible_alists(6, 2).into_iter().collect();
    assert_eq!(alists, expect);
    for m in c.members() {
        assert!(m.cell.is_some());
    }
}

#[test]
fn identity_splits_into_the_two_branches() {
    let r = verify_recursive_identity(5, 2).unwrap();
    assert!(r.pass);
    assert_eq!((r.pre_count, r.inc_count), (1, 2));
    assert!(r.missing.is_empty() && r.extra.is_empty() && r.overlap.is_empty());

    let r = verify_recursive_identity(6, 2).unwrap();
    assert!(r.pass);
    assert_eq!((r.pre_count, r.inc_count), (3, 3));

    let r = verify_recursive_identity(6, 3).unwrap();
    assert!(r.pass);
    assert_eq!((r.pre_count, r.inc_count), (1, 3));

    let r = verify_recursive_identity(4, 1).unwrap();
    assert!(r.pass);
    assert_eq!((r.pre_count, r.inc_count), (1, 1));

    // At k = n-2 the k-preserving branch is empty.
    let r = verify_recursive_identity(5, 3).unwrap();
    assert!(r.pass);
    assert_eq!((r.pre_count, r.inc_count), (0, 1));

    assert!(verify_recursive_identity(5, 4).is_err());
    assert!(verify_recursive_identity(4, 0).is_err());
}

#[test]
fn identity_holds_across_small_sizes() {
    for n in 3..=8 {
        for k in 1..=n - 2 {
            let r = verify_recursive_identity(n, k).unwrap();
            assert!(
                r.pass,
                "({}, {}): missing={:?} extra={:?} overlap={:?}",
                n, k, r.missing, r.extra, r.overlap
            );
            assert_eq!(r.pre_count + r.inc_count, binomial(n - 2, k));
        }
    }
}
