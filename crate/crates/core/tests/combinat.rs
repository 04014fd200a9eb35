use std::collections::BTreeSet;

use serde_json::json;

use amp2::cells::{parse_dotted, MRCell, Positroid};
use amp2::combinat::{
    anti_excedances, decperm_of, le_of, le_to_positroid, necklace_of, LeDiagram, LeEntry,
};
use amp2::exactlin::k_subsets;

fn positroid(n: usize, k: usize, bases: &[&[usize]]) -> Positroid {
    let set: BTreeSet<Vec<usize>> = bases.iter().map(|b| b.to_vec()).collect();
    Positroid::new(n, k, set).unwrap()
}

fn rows(pattern: &[&str]) -> Vec<Vec<LeEntry>> {
    pattern.iter()
        .map(|row| {
            row.split_whitespace()
                .map(|t| if t == "+" { LeEntry::Plus } else { LeEntry::Zero })
                .collect()
        })
        .collect()
}

#[test]
fn necklace_of_worked_cell() {
    let p = positroid(4, 2, &[&[1, 2], &[2, 3], &[2, 4]]);
    let necklace = necklace_of(&p);
    assert_eq!(necklace.n(), 4);
    assert_eq!(necklace.k(), 2);
    assert_eq!(necklace.set(1), &[1, 2]);
    assert_eq!(necklace.set(2), &[2, 3]);
    assert_eq!(necklace.set(3), &[2, 3]);
    assert_eq!(necklace.set(4), &[2, 4]);
}

#[test]
fn necklace_of_top_cell_rotates() {
    let p = MRCell::top_cell(5, 2).unwrap().positroid_of().unwrap();
    let necklace = necklace_of(&p);
    for r in 1..=4 {
        assert_eq!(necklace.set(r), &[r, r + 1]);
    }
    assert_eq!(necklace.set(5), &[1, 5]);
}

#[test]
fn decorated_permutation_of_worked_cell() {
    let p = positroid(4, 2, &[&[1, 2], &[2, 3], &[2, 4]]);
    let dp = decperm_of(&p).unwrap();
    assert_eq!(dp.perm(), &[3, 2, 4, 1]);
    assert_eq!(dp.image(3), 4);
    assert_eq!(dp.coloops(), &BTreeSet::from([2]));
    assert!(dp.loops().is_empty());
    assert_eq!(anti_excedances(&dp), BTreeSet::from([1, 2]));
}

#[test]
fn decorated_permutation_catalogue() {
    // Top cell: the double cyclic shift, no decorations.
    let top = MRCell::top_cell(4, 2).unwrap().positroid_of().unwrap();
    let dp = decperm_of(&top).unwrap();
    assert_eq!(dp.perm(), &[3, 4, 1, 2]);
    assert!(dp.coloops().is_empty());
    assert!(dp.loops().is_empty());
    assert_eq!(anti_excedances(&dp), BTreeSet::from([1, 2]));

    // A rank-1 three-point set: 4 is a loop.
    let p = parse_dotted("2 1", 4, 1).unwrap().positroid_of().unwrap();
    let dp = decperm_of(&p).unwrap();
    assert_eq!(dp.perm(), &[2, 3, 1, 4]);
    assert_eq!(dp.loops(), &BTreeSet::from([4]));
    assert!(dp.coloops().is_empty());
    assert_eq!(anti_excedances(&dp), BTreeSet::from([1]));

    // Rank n: everything is a coloop.
    let p = positroid(3, 3, &[&[1, 2, 3]]);
    let dp = decperm_of(&p).unwrap();
    assert_eq!(dp.perm(), &[1, 2, 3]);
    assert_eq!(dp.coloops(), &BTreeSet::from([1, 2, 3]));
    assert_eq!(anti_excedances(&dp), BTreeSet::from([1, 2, 3]));
}

#[test]
fn tall_worked_cell_conversions() {
    let cell = parse_dotted("3 2 1 4 .3 2", 5, 3).unwrap();
    let p = cell.positroid_of().unwrap();
    let all: BTreeSet<Vec<usize>> = k_subsets(5, 3).into_iter().collect();
    let expect: BTreeSet<Vec<usize>> =
        all.into_iter().filter(|b| b != &vec![1, 4, 5]).collect();
    assert_eq!(p.bases(), &expect);

    let dp = decperm_of(&p).unwrap();
    assert_eq!(dp.perm(), &[4, 5, 2, 1, 3]);
    assert!(dp.coloops().is_empty());
    assert!(dp.loops().is_empty());
    assert_eq!(anti_excedances(&dp), BTreeSet::from([1, 2, 3]));

    let diagram = le_of(&cell).unwrap();
    assert_eq!(diagram.n(), 5);
    assert_eq!(diagram.k(), 3);
    assert_eq!(diagram.shape(), vec![2, 2, 2]);
    assert_eq!(diagram.rows(), &rows(&["+ +", "0 +", "+ +"]));
    assert!(diagram.condition_holds());
    assert_eq!(diagram.render(), "+ +\n0 +\n+ +");
    assert_eq!(le_to_positroid(&diagram).unwrap(), p);
}

#[test]
fn le_of_worked_cell() {
    let cell = parse_dotted(".1 3 2", 4, 2).unwrap();
    let diagram = le_of(&cell).unwrap();
    assert_eq!(diagram.shape(), vec![2, 2]);
    assert_eq!(diagram.rows(), &rows(&["+ +", "0 0"]));
    assert!(diagram.condition_holds());
    assert_eq!(le_to_positroid(&diagram).unwrap(), cell.positroid_of().unwrap());
}

#[test]
fn le_diagram_validation_and_condition() {
    assert!(LeDiagram::new(5, 2, rows(&["+ + +", "+"])).is_ok());
    // Widths must be weakly decreasing and at most n - k, with at most k
    // rows.
    assert!(LeDiagram::new(5, 2, rows(&["+", "+ +"])).is_err());
    assert!(LeDiagram::new(5, 2, rows(&["+ + + +"])).is_err());
    assert!(LeDiagram::new(5, 2, rows(&["+", "+", "+"])).is_err());

    // A zero with a plus to its left and a plus above violates the
    // condition.
    let bad = LeDiagram::new(5, 2, rows(&["+ +", "+ 0"])).unwrap();
    assert!(!bad.condition_holds());
    let bad = LeDiagram::new(5, 2, rows(&["0 +", "+ 0"])).unwrap();
    assert!(!bad.condition_holds());
    let ok = LeDiagram::new(5, 2, rows(&["0 +", "0 +"])).unwrap();
    assert!(ok.condition_holds());
    let ok = LeDiagram::new(5, 2, rows(&["+ 0", "+ 0"])).unwrap();
    assert!(ok.condition_holds());
}

#[test]
fn le_round_trips_through_positroids() {
    // Every directly-encoded cell at small sizes: diagram satisfies the
    // condition and recovers the cell's positroid.
    let strings = [
        ("2 1 3 2", 5, 2),
        ("2 1 4 .3 2", 5, 2),
        ("3 .2 1 4 .3 2", 5, 2),
        ("3 2 .1 4 .3 2", 5, 2),
        (".3 2 1 .4 3 2", 5, 2),
        ("2 1", 4, 1),
        ("3 .2 1", 4, 1),
        (".1 3 2", 4, 2),
        ("1 .3 2", 4, 2),
        ("2 1 5 .4 .3 2", 6, 2),
        ("4 .3 .2 1 5 .4 .3 2", 6, 2),
    ];
    for (s, n, k) in strings {
        let cell = parse_dotted(s, n, k).unwrap();
        let diagram = le_of(&cell).unwrap();
        assert!(diagram.condition_holds(), "{}", s);
        assert_eq!(
            le_to_positroid(&diagram).unwrap(),
            cell.positroid_of().unwrap(),
            "{}",
            s
        );
    }
}

#[test]
fn trivial_ranks_have_empty_diagrams() {
    let zero = MRCell::k0_point(4);
    let diagram = le_of(&zero).unwrap();
    assert_eq!(diagram.shape(), Vec::<usize>::new());
    assert_eq!(
        le_to_positroid(&diagram).unwrap(),
        zero.positroid_of().unwrap()
    );

    let full = parse_dotted("", 4, 4).unwrap();
    let diagram = le_of(&full).unwrap();
    assert_eq!(diagram.shape(), Vec::<usize>::new());
    assert_eq!(
        le_to_positroid(&diagram).unwrap(),
        full.positroid_of().unwrap()
    );
}

#[test]
fn encodings_are_injective_on_a_cell_bank() {
    let strings = [
        ("2 1 3 2", 5, 2),
        ("2 1 4 .3 2", 5, 2),
        ("3 .2 1 4 .3 2", 5, 2),
        ("3 2 .1 4 .3 2", 5, 2),
        (".3 2 1 .4 3 2", 5, 2),
        ("2 1 5 .4 3 2", 6, 2),
        ("2 1 5 4 .3 2", 6, 2),
    ];
    let mut necklaces = BTreeSet::new();
    let mut perms = BTreeSet::new();
    let mut diagrams = BTreeSet::new();
    for (s, n, k) in strings {
        let cell = parse_dotted(s, n, k).unwrap();
        let p = cell.positroid_of().unwrap();
        necklaces.insert(format!("{:?}", necklace_of(&p).sets()));
        let dp = decperm_of(&p).unwrap();
        perms.insert(format!("{:?}{:?}", dp.perm(), dp.coloops()));
        diagrams.insert(format!("{}|{}|{}", n, k, le_of(&cell).unwrap().render()));
    }
    assert_eq!(necklaces.len(), strings.len());
    assert_eq!(perms.len(), strings.len());
    assert_eq!(diagrams.len(), strings.len());
}

#[test]
fn decperm_json_schema() {
    let p = positroid(4, 2, &[&[1, 2], &[2, 3], &[2, 4]]);
    let dp = decperm_of(&p).unwrap();
    let v = serde_json::to_value(&dp).unwrap();
    assert_eq!(v, json!({"perm": [3, 2, 4, 1], "coloops": [2]}));
}
