//! The recursive generator for the cell collections: the k-preserving and
//! k-increasing embeddings, sample-level `y`/`σ` actions with stability
//! checks, the branch engine `σ^{-2}·U^-(s2 s1)·ι_inc(·)`, and exact inverse
//! lookup from a positroid back to its interval.
//!
//! Collections carry their members as positroids (parameter-free identity);
//! interval cells ride along when known and are otherwise recovered on
//! demand by [`interval_of_positroid`]. Only the k-preserving branch
//! recurses, so generation is a linear chain and runs single-threaded and
//! deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::cells::{
    cell_from_interval, support_of, CellError, MRCell, PointSample, Positroid,
};
use crate::exactlin::{binomial, k_subsets, primes, LinError, Rational, RationalMatrix};
use crate::weyl::{Permutation, ReducedWord, WeylError};

#[derive(Debug, Error)]
pub enum RecError {
    #[error("cell: {0}")]
    Cell(#[from] CellError),
    #[error("weyl: {0}")]
    Weyl(#[from] WeylError),
    #[error("linear algebra: {0}")]
    Lin(#[from] LinError),
    #[error("explicit cell: {0}")]
    Explicit(#[from] crate::explicit::ExplicitError),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("sample-level action is parameter-dependent: {0} (internal bug)")]
    Unstable(String),
    #[error("recursion branches overlap on a positroid (violates disjointness)")]
    BranchOverlap,
    #[error("collection cardinality {got} differs from expected {expected}")]
    Cardinality { expected: usize, got: usize },
    #[error("member dimension {got} differs from 2k = {expected}")]
    BadDimension { expected: usize, got: usize },
    #[error("k-increasing branch output matches no candidate cell (internal bug)")]
    Branch2Unresolved,
    #[error("interval lookup budget is n <= 8, got n = {0}")]
    LookupBudget(usize),
    #[error("no interval cell has this positroid")]
    LookupNotFound,
}

/// Which sub-collection feeds the k-increasing branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `σ^{-1}`-twisted explicit family (default; output equals the explicit
    /// family verbatim).
    Twisted,
    /// Untwisted explicit family.
    Plain,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Twisted => "twisted",
            Variant::Plain => "plain",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "twisted" => Ok(Variant::Twisted),
            "plain" => Ok(Variant::Plain),
            other => Err(format!("unknown variant {:?}", other)),
        }
    }
}

/// How a collection was produced (recursion variants or direct enumeration).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CollectionKind {
    Twisted,
    Plain,
    Explicit,
}

impl From<Variant> for CollectionKind {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Twisted => CollectionKind::Twisted,
            Variant::Plain => CollectionKind::Plain,
        }
    }
}

/// Per-member derivation record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Provenance {
    /// Base case: the k = 0 point or the n = k+2 top cell.
    Base,
    /// Image of a member of the (n-1, k) collection under the k-preserving
    /// embedding.
    Pre { child: Box<Provenance> },
    /// Image of the explicit sub-family member with the given block list
    /// under `σ^{-2}·U^-(s2 s1)·ι_inc`, twisted or not.
    Inc { twisted: bool, alist: Vec<usize> },
    /// Direct enumeration of the explicit family.
    Explicit { alist: Vec<usize> },
}

/// One collection member: the positroid is the identity; the interval cell
/// is carried when known (always, except the plain variant's k-increasing
/// members beyond the interval-lookup budget).
#[derive(Clone, Debug)]
pub struct Member {
    pub cell: Option<MRCell>,
    pub positroid: Positroid,
    pub provenance: Provenance,
}

/// A collection of 2k-dimensional cells of `Gr_{k,n}` (the m = 2 case).
#[derive(Clone, Debug)]
pub struct CellCollection {
    n: usize,
    k: usize,
    kind: CollectionKind,
    members: Vec<Member>,
}

impl CellCollection {
    fn assemble(
        n: usize,
        k: usize,
        kind: CollectionKind,
        mut members: Vec<Member>,
    ) -> Result<Self, RecError> {
        members.sort_by(|a, b| a.positroid.cmp(&b.positroid));
        let mut seen = BTreeSet::new();
        for m in &members {
            if m.positroid.n() != n || m.positroid.k() != k {
                return Err(RecError::BadInput("member rank mismatch".into()));
            }
            if !seen.insert(m.positroid.clone()) {
                return Err(RecError::BranchOverlap);
            }
            if let Some(cell) = &m.cell {
                if cell.dimension() != 2 * k {
                    return Err(RecError::BadDimension { expected: 2 * k, got: cell.dimension() });
                }
            }
        }
        let expected = binomial(n.saturating_sub(2), k);
        if members.len() != expected {
            return Err(RecError::Cardinality { expected, got: members.len() });
        }
        Ok(CellCollection { n, k, kind, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The amplituhedron parameter this artifact specializes to.
    pub const fn m(&self) -> usize {
        2
    }

    pub fn kind(&self) -> CollectionKind {
        self.kind
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }

    pub fn positroid_set(&self) -> BTreeSet<Positroid> {
        self.members.iter().map(|m| m.positroid.clone()).collect()
    }

    /// Canonical dotted strings, one per member, recovered through interval
    /// lookup (carried cells serve as verified hints).
    pub fn dotted_list(&self) -> Result<Vec<String>, RecError> {
        self.members
            .iter()
            .map(|m| {
                let (w, word) = interval_of_positroid_with_hint(&m.positroid, m.cell.as_ref())?;
                Ok(cell_from_interval(&w, &word, self.k)?.render_dotted())
            })
            .collect()
    }
}

impl Serialize for CellCollection {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CellCollection", 5)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("k", &self.k)?;
        s.serialize_field("variant", &self.kind)?;
        let cells: Vec<&Positroid> = self.members.iter().map(|m| &m.positroid).collect();
        s.serialize_field("cells", &cells)?;
        let prov: Vec<&Provenance> = self.members.iter().map(|m| &m.provenance).collect();
        s.serialize_field("provenance", &prov)?;
        s.end()
    }
}

impl fmt::Display for CollectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CollectionKind::Twisted => "twisted",
            CollectionKind::Plain => "plain",
            CollectionKind::Explicit => "explicit",
        };
        f.write_str(s)
    }
}

/// K-preserving embedding on positroids: same bases, ground set `[n+1]`
/// (the appended zero row contributes to no basis).
pub fn iota_pre_positroid(p: &Positroid) -> Result<Positroid, RecError> {
    Ok(Positroid::new(p.n() + 1, p.k(), p.bases().clone())?)
}

/// K-preserving embedding on interval cells: the same word and mask read at
/// rank `n + 1`.
pub fn iota_pre_cell(c: &MRCell) -> Result<MRCell, RecError> {
    let word = ReducedWord::new(c.word().letters().to_vec(), c.n() + 1)?;
    Ok(MRCell::new(c.n() + 1, c.k(), word, c.mask().clone())?)
}

/// K-increasing embedding on positroids: bases `{1} ∪ (I + 1)`.
pub fn iota_inc_positroid(p: &Positroid) -> Result<Positroid, RecError> {
    let bases = p
        .bases()
        .iter()
        .map(|b| {
            let mut nb = vec![1usize];
            nb.extend(b.iter().map(|&e| e + 1));
            nb
        })
        .collect();
    Ok(Positroid::new(p.n() + 1, p.k() + 1, bases)?)
}

/// K-increasing embedding on interval cells: every letter shifted up by one,
/// the mask unchanged.
pub fn iota_inc_cell(c: &MRCell) -> Result<MRCell, RecError> {
    let letters: Vec<usize> = c.word().letters().iter().map(|&l| l + 1).collect();
    let word = ReducedWord::new(letters, c.n() + 1)?;
    Ok(MRCell::new(c.n() + 1, c.k() + 1, word, c.mask().clone())?)
}

/// Block-embeds an `(n-1) x (k-1)` representative as `[[1, 0], [0, M]]`.
fn inc_embed(m: &RationalMatrix) -> RationalMatrix {
    let mut e = RationalMatrix::zeros(m.rows() + 1, m.cols() + 1);
    e.set(0, 0, Rational::from_integer(1.into()));
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            e.set(r + 1, c + 1, m.entry(r, c).clone());
        }
    }
    e
}

/// Prime parameter stream for draw `d`: `count` values from a block that is
/// disjoint across draws.
fn prime_stream(count: usize, draw: usize) -> Vec<Rational> {
    primes(count, draw * count).into_iter().map(|p| Rational::from_integer(p.into())).collect()
}

const STABILITY_DRAWS: usize = 3;

/// Positroid of `y_i(t) · C` for fresh generic `t > 0`, extracted from
/// samples and required stable across independent draws.
pub fn act_y(c: &MRCell, i: usize) -> Result<Positroid, RecError> {
    let dim = c.dimension();
    let mut result: Option<BTreeSet<Vec<usize>>> = None;
    for d in 0..STABILITY_DRAWS {
        let stream = prime_stream(dim + 1, d);
        let mut m = c.sample_point(&stream[..dim])?.matrix().clone();
        m.apply_y_left(i, &stream[dim])?;
        let support = support_of(&m)?;
        match &result {
            None => result = Some(support),
            Some(prev) if *prev == support => {}
            Some(_) => return Err(RecError::Unstable(format!("act_y({})", i))),
        }
    }
    Ok(Positroid::new(c.n(), c.k(), result.expect("at least one draw"))?)
}

/// Positroid of `σ^p · C`, extracted from samples (stability-checked) and
/// cross-checked against the combinatorial basis relabeling.
pub fn act_sigma(c: &MRCell, power: i64) -> Result<Positroid, RecError> {
    let n = c.n();
    let pw = power.rem_euclid(n as i64) as usize;
    let dim = c.dimension();
    let mut result: Option<BTreeSet<Vec<usize>>> = None;
    for d in 0..STABILITY_DRAWS {
        let params = prime_stream(dim, d);
        let mut m = c.sample_point(&params)?.matrix().clone();
        m.apply_sigma_left(c.k(), pw);
        let support = support_of(&m)?;
        match &result {
            None => result = Some(support),
            Some(prev) if *prev == support => {}
            Some(_) => return Err(RecError::Unstable(format!("act_sigma({})", power))),
        }
    }
    let sampled = Positroid::new(n, c.k(), result.expect("at least one draw"))?;
    let combinatorial = c.positroid_of()?.shift(power)?;
    if sampled != combinatorial {
        return Err(RecError::Unstable("act_sigma vs basis relabeling".into()));
    }
    Ok(sampled)
}

/// The k-increasing branch map on a sub-cell of `Gr_{k-1,n-1}`: realizes
/// `σ^{-2}_{k,n} · U^-(s2 s1) · ι_inc( σ · sample )` on independent draws
/// (the twist is one forward cyclic shift, dropped in the plain variant)
/// and returns the stable support. `σ^{-2}` is applied as `σ^{n-2}`
/// (equal on minors).
pub fn shifted_u_inc_support(sub: &MRCell, twist: bool) -> Result<Positroid, RecError> {
    let n = sub.n() + 1;
    let k = sub.k() + 1;
    let dim = sub.dimension();
    let mut result: Option<BTreeSet<Vec<usize>>> = None;
    for d in 0..STABILITY_DRAWS {
        let stream = prime_stream(dim + 2, d);
        let mut m = sub.sample_point(&stream[..dim])?.matrix().clone();
        if twist {
            m.apply_sigma_left(sub.k(), 1);
        }
        let mut e = inc_embed(&m);
        // U^-(s2 s1): word positions left to right get the stream's last two
        // parameters; right-to-left application puts y_1 before y_2.
        e.apply_y_left(1, &stream[dim + 1])?;
        e.apply_y_left(2, &stream[dim])?;
        e.apply_sigma_left(k, n - 2);
        let support = support_of(&e)?;
        match &result {
            None => result = Some(support),
            Some(prev) if *prev == support => {}
            Some(_) => return Err(RecError::Unstable("k-increasing branch".into())),
        }
    }
    Ok(Positroid::new(n, k, result.expect("at least one draw"))?)
}

fn branch2_members(n: usize, k: usize, variant: Variant) -> Result<Vec<Member>, RecError> {
    let sub_alists = crate::explicit::admissible_alists(n - 1, k - 1);
    // With the twist, the branch sends the (a_1..a_{k-1}) sub-cell to the
    // explicit cell (a_1..a_{k-1}, n-1). Resolving through the sampled
    // positroid rather than trusting the pairing keeps this a checked
    // identity: a mismatch surfaces as Branch2Unresolved.
    let mut candidates: BTreeMap<Positroid, MRCell> = BTreeMap::new();
    if variant == Variant::Twisted {
        for sub_a in &sub_alists {
            let mut full = sub_a.clone();
            full.push(n - 1);
            let cell = crate::explicit::explicit_cell(n, k, &full)?;
            candidates.insert(cell.positroid_of()?, cell);
        }
    }
    let mut members = Vec::with_capacity(sub_alists.len());
    for sub_a in sub_alists {
        let sub_cell = crate::explicit::explicit_cell(n - 1, k - 1, &sub_a)?;
        let positroid = shifted_u_inc_support(&sub_cell, variant == Variant::Twisted)?;
        let cell = match variant {
            Variant::Twisted => {
                Some(candidates.get(&positroid).cloned().ok_or(RecError::Branch2Unresolved)?)
            }
            Variant::Plain => match interval_cell_of_positroid(&positroid) {
                Ok(c) => Some(c),
                Err(RecError::LookupBudget(_)) => None,
                Err(e) => return Err(e),
            },
        };
        members.push(Member {
            cell,
            positroid,
            provenance: Provenance::Inc { twisted: variant == Variant::Twisted, alist: sub_a },
        });
    }
    Ok(members)
}

/// Builds the collection for `Gr_{k,n}`: base cases are the k = 0 point and
/// the n = k+2 top cell; otherwise the k-preserving branch recurses on
/// `(n-1, k)` and the k-increasing branch maps the explicit `(n-1, k-1)`
/// family (cyclically shifted by default). Branch disjointness, member
/// dimensions, and the total count `C(n-2, k)` are verified on every call.
pub fn generate_collection(n: usize, k: usize, variant: Variant) -> Result<CellCollection, RecError> {
    if n < 2 || k > n.saturating_sub(2) {
        return Err(RecError::BadInput(format!("need 0 <= k <= n-2, got n={}, k={}", n, k)));
    }
    let kind = CollectionKind::from(variant);
    if k == 0 {
        let cell = MRCell::k0_point(n);
        let positroid = cell.positroid_of()?;
        let member = Member { cell: Some(cell), positroid, provenance: Provenance::Base };
        return CellCollection::assemble(n, 0, kind, vec![member]);
    }
    if n == k + 2 {
        let alist: Vec<usize> = (2..=k + 1).collect();
        let cell = crate::explicit::explicit_cell(n, k, &alist)?;
        let positroid = cell.positroid_of()?;
        let member = Member { cell: Some(cell), positroid, provenance: Provenance::Base };
        return CellCollection::assemble(n, k, kind, vec![member]);
    }
    let sub = generate_collection(n - 1, k, variant)?;
    let mut members = Vec::with_capacity(binomial(n - 2, k));
    for m in sub.members() {
        let cell = match &m.cell {
            Some(c) => Some(iota_pre_cell(c)?),
            None => None,
        };
        members.push(Member {
            cell,
            positroid: iota_pre_positroid(&m.positroid)?,
            provenance: Provenance::Pre { child: Box::new(m.provenance.clone()) },
        });
    }
    members.extend(branch2_members(n, k, variant)?);
    CellCollection::assemble(n, k, kind, members)
}

/// The explicit family packaged as a collection (members carry their cells
/// and block lists).
pub fn collection_from_explicit(n: usize, k: usize) -> Result<CellCollection, RecError> {
    if n < 2 || k > n.saturating_sub(2) {
        return Err(RecError::BadInput(format!("need 0 <= k <= n-2, got n={}, k={}", n, k)));
    }
    if k == 0 {
        let cell = MRCell::k0_point(n);
        let positroid = cell.positroid_of()?;
        let member =
            Member { cell: Some(cell), positroid, provenance: Provenance::Explicit { alist: vec![] } };
        return CellCollection::assemble(n, 0, CollectionKind::Explicit, vec![member]);
    }
    let mut members = Vec::new();
    for alist in crate::explicit::admissible_alists(n, k) {
        let cell = crate::explicit::explicit_cell(n, k, &alist)?;
        let positroid = cell.positroid_of()?;
        members.push(Member {
            cell: Some(cell),
            positroid,
            provenance: Provenance::Explicit { alist },
        });
    }
    CellCollection::assemble(n, k, CollectionKind::Explicit, members)
}

/// Componentwise maximum of the sorted bases, when it is itself a basis
/// (for positroids it is, and equals `w'([k])`; used as a search
/// accelerator only, never trusted).
fn gale_max_candidate(p: &Positroid) -> Option<Vec<usize>> {
    let k = p.k();
    let mut max = vec![0usize; k];
    for b in p.bases() {
        for (i, &e) in b.iter().enumerate() {
            max[i] = max[i].max(e);
        }
    }
    p.contains(&max).then_some(max)
}

/// Exact inverse lookup: the unique interval `(w, w')` whose cell has the
/// given positroid, by candidate-`w'` enumeration and subword search, with
/// final acceptance by exact positroid equality. Budget: `n <= 8`.
pub fn interval_of_positroid(p: &Positroid) -> Result<(Permutation, ReducedWord), RecError> {
    interval_of_positroid_with_hint(p, None)
}

/// [`interval_of_positroid`] with a verified hint: when the hint's positroid
/// equals `p` the hint's interval is returned directly (any `n`), which lets
/// callers with carried cells stay within budget.
pub fn interval_of_positroid_with_hint(
    p: &Positroid,
    hint: Option<&MRCell>,
) -> Result<(Permutation, ReducedWord), RecError> {
    if let Some(c) = hint {
        if c.n() == p.n() && c.k() == p.k() && &c.positroid_of()? == p {
            return Ok((c.w(), c.word().clone()));
        }
    }
    let n = p.n();
    let k = p.k();
    if n > 8 {
        return Err(RecError::LookupBudget(n));
    }
    let i1 = p.bases().iter().next().cloned().expect("positroids are nonempty");
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    if let Some(gale) = gale_max_candidate(p) {
        subsets.push(gale);
    }
    for s in k_subsets(n, k) {
        if subsets.first() != Some(&s) {
            subsets.push(s);
        }
    }
    // Pass 1 prunes candidate w by the lex-min basis (w([k]) = I_1 for
    // interval cells); pass 2 drops the pruning in case the heuristic ever
    // misses, so the final answer rests on exact positroid equality alone.
    for use_prefilter in [true, false] {
        for subset in &subsets {
            let word = crate::weyl::wj_word_from_subset(subset, n)?;
            let mut interval: BTreeSet<Permutation> = BTreeSet::new();
            interval.insert(Permutation::identity(n));
            for &l in word.letters() {
                let grown: Vec<Permutation> = interval
                    .iter()
                    .map(|u| u.right_s(l).expect("letter in range"))
                    .collect();
                interval.extend(grown);
            }
            let mut us: Vec<Permutation> = interval.into_iter().collect();
            us.sort_by_key(|u| (u.length(), u.one_line().to_vec()));
            debug_assert_eq!(us.first().map(|u| u.length()), Some(0));
            for u in us {
                if use_prefilter {
                    let mut first_k: Vec<usize> = (1..=k).map(|r| u.image(r)).collect();
                    first_k.sort_unstable();
                    if first_k != i1 {
                        continue;
                    }
                }
                let Ok(cell) = cell_from_interval(&u, &word, k) else { continue };
                if &cell.positroid_of()? == p {
                    return Ok((u, word));
                }
            }
        }
    }
    Err(RecError::LookupNotFound)
}

/// Convenience wrapper returning the looked-up interval as a cell.
pub fn interval_cell_of_positroid(p: &Positroid) -> Result<MRCell, RecError> {
    let (w, word) = interval_of_positroid(p)?;
    Ok(cell_from_interval(&w, &word, p.k())?)
}

/// Realizes the k-preserving embedding on a sample (zero row appended) and
/// confirms the combinatorial positroid image; used by property tests.
pub fn iota_pre_sample_check(c: &MRCell, draw: usize) -> Result<bool, RecError> {
    let sample = c.sample_point(&c.default_params(draw))?;
    let mut rows: Vec<Vec<Rational>> = (0..sample.matrix().rows())
        .map(|r| sample.matrix().row(r).to_vec())
        .collect();
    rows.push(vec![Rational::from_integer(0.into()); c.k()]);
    let embedded = RationalMatrix::from_rows(rows)?;
    let support = support_of(&embedded)?;
    Ok(support == *iota_pre_positroid(&c.positroid_of()?)?.bases())
}

/// Realizes the k-increasing embedding on a sample and confirms the
/// combinatorial positroid image; used by property tests.
pub fn iota_inc_sample_check(c: &MRCell, draw: usize) -> Result<bool, RecError> {
    let sample = c.sample_point(&c.default_params(draw))?;
    let embedded = inc_embed(sample.matrix());
    let support = support_of(&embedded)?;
    Ok(support == *iota_inc_positroid(&c.positroid_of()?)?.bases())
}

/// A seeded random sample of a cell (positive rational parameters).
pub fn random_sample<R: rand::Rng>(c: &MRCell, rng: &mut R) -> Result<PointSample, RecError> {
    let params: Vec<Rational> =
        (0..c.dimension()).map(|_| crate::exactlin::random_positive_rational(rng)).collect();
    Ok(c.sample_point(&params)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::parse_dotted;

    #[test]
    fn small_collections_have_binomial_cardinality() {
        for (n, k, expect) in [(4usize, 1usize, 2usize), (5, 2, 3), (6, 2, 6)] {
            for variant in [Variant::Twisted, Variant::Plain] {
                let c = generate_collection(n, k, variant).unwrap();
                assert_eq!(c.cardinality(), expect, "({}, {}) {:?}", n, k, variant);
            }
        }
    }

    #[test]
    fn twisted_five_two_matches_fixture_strings() {
        let c = generate_collection(5, 2, Variant::Twisted).unwrap();
        let mut got = c.dotted_list().unwrap();
        got.sort();
        let mut expect =
            vec!["2 1 3 2".to_string(), "2 1 4 .3 2".to_string(), "3 .2 1 4 .3 2".to_string()];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn plain_five_two_matches_fixture_strings() {
        let c = generate_collection(5, 2, Variant::Plain).unwrap();
        let mut got = c.dotted_list().unwrap();
        got.sort();
        let mut expect =
            vec!["2 1 3 2".to_string(), "3 2 .1 4 .3 2".to_string(), ".3 2 1 .4 3 2".to_string()];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn interval_lookup_recovers_known_cell() {
        let cell = parse_dotted(".1 3 2", 4, 2).unwrap();
        let p = cell.positroid_of().unwrap();
        let (w, word) = interval_of_positroid(&p).unwrap();
        assert_eq!(w.one_line(), &[2, 1, 3, 4]);
        assert_eq!(word.letters(), &[1, 3, 2]);
    }

    #[test]
    fn sigma_action_matches_relabeling() {
        let cell = parse_dotted("2 1", 4, 1).unwrap();
        let p = act_sigma(&cell, -1).unwrap();
        let expect: BTreeSet<Vec<usize>> = [vec![1], vec![2], vec![4]].into_iter().collect();
        assert_eq!(p.bases(), &expect);
    }
}
