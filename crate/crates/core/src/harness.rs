//! Verification harness: exact amplituhedron points `Y = Z C`, bracket
//! signs, the per-branch sign lemma, signature separation and surjectivity
//! probes, within-cell injectivity probes, the `k = 1` polygon oracle, the
//! cyclic-pattern identity, and the cyclic-shift stability check.
//!
//! Every check runs on exact rationals with zero tolerance: a failure is a
//! counterexample, not noise. Genericity failures (a zero bracket at a
//! random probe) are logged and resampled with a fresh seed; they never
//! count as matches. Probes parallelize over (cell, sample) tasks whose
//! seeds derive from (master seed, cell index, sample index), so reports
//! are byte-identical for every `--jobs` value.

use std::collections::{BTreeMap, BTreeSet};

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cells::{CellError, MRCell, Positroid};
use crate::exactlin::{
    binomial, k_subsets, random_positive_rational, vandermonde_z, LinError, Rational,
    RationalMatrix,
};
use crate::recursion::{
    generate_collection, interval_cell_of_positroid, shifted_u_inc_support, CellCollection,
    Provenance, RecError, Variant,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cell: {0}")]
    Cell(#[from] CellError),
    #[error("linear algebra: {0}")]
    Lin(#[from] LinError),
    #[error("recursion: {0}")]
    Rec(#[from] RecError),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

/// How the positive moment matrices `Z` are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZMode {
    /// Power matrix on random distinct positive nodes (totally positive by
    /// the classical determinant identity).
    Vandermonde,
    /// Random product of positive elementary generators, truncated; checked
    /// totally positive defensively.
    Elementary,
}

impl ZMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ZMode::Vandermonde => "vandermonde",
            ZMode::Elementary => "elementary",
        }
    }
}

impl std::str::FromStr for ZMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "vandermonde" => Ok(ZMode::Vandermonde),
            "elementary" => Ok(ZMode::Elementary),
            other => Err(format!("unknown zmode {:?}", other)),
        }
    }
}

/// A point of the small Grassmannian `Gr_{k,k+2}` as a `(k+2) x k` matrix.
#[derive(Clone, Debug)]
pub struct AmpPoint {
    matrix: RationalMatrix,
}

impl AmpPoint {
    pub fn new(matrix: RationalMatrix) -> Result<Self, HarnessError> {
        if matrix.rows() != matrix.cols() + 2 {
            return Err(HarnessError::BadInput(format!(
                "expected (k+2) x k matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rank() != matrix.cols() {
            return Err(HarnessError::Degenerate("image has deficient rank".into()));
        }
        Ok(AmpPoint { matrix })
    }

    pub fn k(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// Maximal minors in lexicographic row-subset order, scaled so the first
    /// nonzero one is `+1`: a projective invariant of the row span.
    pub fn plucker_normalized(&self) -> Result<Vec<Rational>, HarnessError> {
        let k = self.k();
        let mut minors = Vec::new();
        for subset in k_subsets(k + 2, k) {
            minors.push(self.matrix.maximal_minor(&subset)?);
        }
        let first = minors
            .iter()
            .find(|m| !num::Zero::is_zero(*m))
            .cloned()
            .ok_or_else(|| HarnessError::Degenerate("zero Plucker vector".into()))?;
        Ok(minors.into_iter().map(|m| m / &first).collect())
    }

    /// Sign of the first nonzero maximal minor; multiplies bracket signs so
    /// they do not depend on the representative.
    fn orientation(&self) -> Result<i8, HarnessError> {
        for subset in k_subsets(self.k() + 2, self.k()) {
            let s = crate::exactlin::sign_of(&self.matrix.maximal_minor(&subset)?);
            if s != 0 {
                return Ok(s);
            }
        }
        Err(HarnessError::Degenerate("zero Plucker vector".into()))
    }
}

/// `Y = Z C` for a cell representative `C` (columns span the subspace).
pub fn apply_z(z: &RationalMatrix, c: &RationalMatrix) -> Result<AmpPoint, HarnessError> {
    AmpPoint::new(z.mul(c)?)
}

/// Sign of `det[Y | Z_i | Z_j]` times the orientation of `Y`: independent of
/// the representative matrix chosen for the span of `Y`.
pub fn bracket(
    z: &RationalMatrix,
    y: &AmpPoint,
    i: usize,
    j: usize,
) -> Result<i8, HarnessError> {
    let k = y.k();
    let n = z.cols();
    if z.rows() != k + 2 {
        return Err(HarnessError::BadInput(format!(
            "Z has {} rows, expected k+2 = {}",
            z.rows(),
            k + 2
        )));
    }
    if i < 1 || j < 1 || i > n || j > n {
        return Err(HarnessError::BadInput(format!("bad bracket pair ({}, {})", i, j)));
    }
    if i == j {
        // Repeated column: the determinant vanishes identically.
        return Ok(0);
    }
    let mut m = RationalMatrix::zeros(k + 2, k + 2);
    for r in 0..k + 2 {
        for c in 0..k {
            m.set(r, c, y.matrix.entry(r, c).clone());
        }
        m.set(r, k, z.entry(r, i - 1).clone());
        m.set(r, k + 1, z.entry(r, j - 1).clone());
    }
    Ok(crate::exactlin::sign_of(&m.det()?) * y.orientation()?)
}

/// The bracket pairs a probe evaluates: consecutive pairs `(i, i+1)`, the
/// wrap pairs `(1, n-1)` and `(1, n)`, and the full first-column fan
/// `(1, j)`. The fan extension is what makes the signatures separate every
/// cell pairwise; the subset without it is also scored, separately, in the
/// stats.
pub fn probe_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 1..n {
        set.insert((i, i + 1));
    }
    if n >= 2 {
        set.insert((1, n));
    }
    if n >= 3 {
        set.insert((1, n - 1));
    }
    for j in 2..=n {
        set.insert((1, j));
    }
    set.into_iter().collect()
}

/// The pairs without the fan extension.
pub fn base_probe_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 1..n {
        set.insert((i, i + 1));
    }
    if n >= 2 {
        set.insert((1, n));
    }
    if n >= 3 {
        set.insert((1, n - 1));
    }
    set.into_iter().collect()
}

/// Bracket signs of `Z C` over a pair list.
pub fn sign_vector(
    z: &RationalMatrix,
    c: &RationalMatrix,
    pairs: &[(usize, usize)],
) -> Result<Vec<i8>, HarnessError> {
    let y = apply_z(z, c)?;
    pairs.iter().map(|&(i, j)| bracket(z, &y, i, j)).collect()
}

/// A cell's sign signature: per pair, the constant nonzero sign across the
/// sampled draws, or `None` when signs vary or vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignSignature {
    pub pairs: Vec<(usize, usize)>,
    pub signs: Vec<Option<i8>>,
}

impl SignSignature {
    fn from_draws(pairs: &[(usize, usize)], draws: &[Vec<i8>]) -> Self {
        let signs = (0..pairs.len())
            .map(|q| {
                let first = draws[0][q];
                let constant = first != 0 && draws.iter().all(|d| d[q] == first);
                constant.then_some(first)
            })
            .collect();
        SignSignature { pairs: pairs.to_vec(), signs }
    }

    pub fn constant_count(&self) -> usize {
        self.signs.iter().filter(|s| s.is_some()).count()
    }

    /// True when `signs` agrees with the probe's full sign vector on every
    /// constant pair.
    fn matches(&self, probe: &[i8]) -> bool {
        self.signs
            .iter()
            .zip(probe.iter())
            .all(|(s, &p)| s.map_or(true, |v| v == p))
    }

    /// True when some pair is constant in both signatures with opposite
    /// signs, restricted to pair indices in `allowed`.
    fn separated_from(&self, other: &SignSignature, allowed: &[bool]) -> bool {
        self.signs
            .iter()
            .zip(other.signs.iter())
            .zip(allowed.iter())
            .any(|((a, b), &ok)| ok && matches!((a, b), (Some(x), Some(y)) if x != y))
    }
}

/// Deterministic per-task generator: stream id packs the purpose and two
/// task coordinates, so any (purpose, a, b) triple is an independent stream
/// of the master seed.
fn task_rng(master: u64, purpose: u64, a: u64, b: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream((purpose << 56) | ((a & 0x0fff_ffff) << 28) | (b & 0x0fff_ffff));
    rng
}

const P_ZGEN: u64 = 1;
const P_SIGNS: u64 = 2;
const P_CONST: u64 = 3;
const P_PROBE: u64 = 4;
const P_INJ: u64 = 5;
const P_K1: u64 = 6;
const P_CYC: u64 = 7;

/// Index-stable parallel map: worker `w` takes items `w, w+jobs, ..`; results
/// are reassembled in input order, so output never depends on `jobs`.
pub fn par_map<T, U, F>(jobs: usize, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> U + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        return items.iter().enumerate().map(|(i, t)| f(i, t)).collect();
    }
    let mut indexed: Vec<(usize, U)> = std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut i = w;
                    while i < items.len() {
                        out.push((i, f(i, &items[i])));
                        i += jobs;
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("probe worker panicked")).collect()
    });
    indexed.sort_by_key(|(i, _)| *i);
    indexed.into_iter().map(|(_, u)| u).collect()
}

fn random_params<R: RngCore>(dim: usize, rng: &mut R) -> Vec<Rational> {
    (0..dim).map(|_| random_positive_rational(rng)).collect()
}

/// Draws `count` totally positive `rows x n` matrices.
pub fn make_zs(
    rows: usize,
    n: usize,
    count: usize,
    mode: ZMode,
    seed: u64,
) -> Result<Vec<RationalMatrix>, HarnessError> {
    let mut rng = task_rng(seed, P_ZGEN, rows as u64, n as u64);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let z = match mode {
            ZMode::Vandermonde => {
                let mut nodes: BTreeSet<Rational> = BTreeSet::new();
                while nodes.len() < n {
                    nodes.insert(random_positive_rational(&mut rng));
                }
                let nodes: Vec<Rational> = nodes.into_iter().collect();
                vandermonde_z(rows, &nodes)?
            }
            ZMode::Elementary => {
                let z = crate::exactlin::elementary_tp_matrix(rows, n, &mut rng)?;
                if !z.is_totally_positive()? {
                    return Err(HarnessError::Degenerate(
                        "elementary product failed total positivity".into(),
                    ));
                }
                z
            }
        };
        out.push(z);
    }
    Ok(out)
}

/// Expected sign of `bracket(1, n-1)` on each branch: `(-1)^k` for the
/// k-preserving embedding, `(-1)^(k-1)` for the shifted k-increasing branch.
fn branch_expectation(provenance: &Provenance, k: usize) -> Option<i8> {
    let pre_sign = if k % 2 == 0 { 1 } else { -1 };
    match provenance {
        Provenance::Pre { .. } => Some(pre_sign),
        Provenance::Inc { .. } => Some(-pre_sign),
        Provenance::Base | Provenance::Explicit { .. } => None,
    }
}

/// Checks the branch sign lemma on every non-base member of the collection:
/// `samples` random points per cell, `bracket(1, n-1)` must equal the branch
/// prediction, and a zero bracket counts as a failure (interior points of
/// either branch never produce one).
pub fn family_sign_lemma_check(
    collection: &CellCollection,
    z: &RationalMatrix,
    samples: usize,
    seed: u64,
    salt: u64,
    jobs: usize,
) -> Result<(Vec<String>, BTreeMap<String, Value>), HarnessError> {
    let n = collection.n();
    let k = collection.k();
    let mut tasks = Vec::new();
    let mut skipped_base = 0usize;
    for (idx, member) in collection.members().iter().enumerate() {
        match branch_expectation(&member.provenance, k) {
            Some(expected) => {
                let cell = member.cell.as_ref().ok_or_else(|| {
                    HarnessError::BadInput("sign lemma needs carried cells".into())
                })?;
                for s in 0..samples {
                    tasks.push((idx, cell.clone(), expected, s));
                }
            }
            None => skipped_base += 1,
        }
    }
    let results = par_map(jobs, &tasks, |_, (idx, cell, expected, s)| {
        let mut rng = task_rng(seed, P_SIGNS, salt * 1024 + *idx as u64, *s as u64);
        let params = random_params(cell.dimension(), &mut rng);
        let run = || -> Result<Option<String>, HarnessError> {
            let m = cell.sample_point(&params)?;
            let y = apply_z(z, m.matrix())?;
            let got = bracket(z, &y, 1, n - 1)?;
            if got == 0 {
                return Ok(Some(format!("cell {} sample {}: zero bracket(1,{})", idx, s, n - 1)));
            }
            if got != *expected {
                return Ok(Some(format!(
                    "cell {} sample {}: bracket(1,{}) = {}, branch predicts {}",
                    idx,
                    s,
                    n - 1,
                    got,
                    expected
                )));
            }
            Ok(None)
        };
        run().unwrap_or_else(|e| Some(format!("cell {} sample {}: {}", idx, s, e)))
    });
    let failures: Vec<String> = results.into_iter().flatten().collect();
    let mut stats = BTreeMap::new();
    stats.insert("samples_per_cell".into(), json!(samples));
    stats.insert("members_checked".into(), json!(collection.cardinality() - skipped_base));
    stats.insert("base_members_skipped".into(), json!(skipped_base));
    Ok((failures, stats))
}

/// Per-cell signatures over the probe pairs, from `draws` random samples per
/// cell.
fn collection_signatures(
    collection: &CellCollection,
    z: &RationalMatrix,
    pairs: &[(usize, usize)],
    draws: usize,
    seed: u64,
    purpose: u64,
    jobs: usize,
) -> Result<Vec<SignSignature>, HarnessError> {
    let mut tasks = Vec::new();
    for (idx, member) in collection.members().iter().enumerate() {
        let cell = member
            .cell
            .as_ref()
            .ok_or_else(|| HarnessError::BadInput("signature probe needs carried cells".into()))?;
        for d in 0..draws {
            tasks.push((idx, cell.clone(), d));
        }
    }
    let results = par_map(jobs, &tasks, |_, (idx, cell, d)| {
        let mut rng = task_rng(seed, purpose, *idx as u64, *d as u64);
        let params = random_params(cell.dimension(), &mut rng);
        let run = || -> Result<Vec<i8>, HarnessError> {
            let m = cell.sample_point(&params)?;
            sign_vector(z, m.matrix(), pairs)
        };
        run().map_err(|e| format!("cell {} draw {}: {}", idx, d, e))
    });
    let mut per_cell: Vec<Vec<Vec<i8>>> = vec![Vec::new(); collection.cardinality()];
    for (task, res) in tasks.iter().zip(results.into_iter()) {
        per_cell[task.0].push(res.map_err(HarnessError::BadInput)?);
    }
    Ok(per_cell.iter().map(|draws| SignSignature::from_draws(pairs, draws)).collect())
}

fn separation_failures(
    sigs: &[SignSignature],
    pairs: &[(usize, usize)],
    allowed: &[bool],
    label: &str,
) -> Vec<String> {
    let mut failures = Vec::new();
    for i in 0..sigs.len() {
        for j in i + 1..sigs.len() {
            if !sigs[i].separated_from(&sigs[j], allowed) {
                failures.push(format!(
                    "{}: cells {} and {} share every constant sign over {} pairs",
                    label,
                    i,
                    j,
                    pairs.len()
                ));
            }
        }
    }
    failures
}

/// Signature probe: (a) determines the constant-sign pairs of every cell,
/// (b) requires the signatures to separate the cells pairwise, (c) draws
/// `probe_count` random interior points of the top cell and requires each to
/// match exactly one cell signature. Zero-bracket probe draws are logged as
/// degeneracies and resampled with a fresh stream.
pub fn signature_probe(
    collection: &CellCollection,
    z: &RationalMatrix,
    constancy_draws: usize,
    probe_count: usize,
    seed: u64,
    jobs: usize,
) -> Result<(Vec<String>, BTreeMap<String, Value>), HarnessError> {
    let n = collection.n();
    let k = collection.k();
    let pairs = probe_pairs(n);
    let base_pairs: BTreeSet<(usize, usize)> = base_probe_pairs(n).into_iter().collect();
    let base_allowed: Vec<bool> = pairs.iter().map(|p| base_pairs.contains(p)).collect();
    let all_allowed = vec![true; pairs.len()];

    let sigs =
        collection_signatures(collection, z, &pairs, constancy_draws, seed, P_CONST, jobs)?;
    let mut failures = separation_failures(&sigs, &pairs, &all_allowed, "separation");
    let base_pair_separation =
        separation_failures(&sigs, &pairs, &base_allowed, "base").is_empty();

    // Pairs any signature depends on: a zero there stops the probe from
    // being scored and triggers a resample.
    let needed: Vec<bool> = (0..pairs.len())
        .map(|q| sigs.iter().any(|s| s.signs[q].is_some()))
        .collect();

    let top = MRCell::top_cell(n, k)?;
    let dim = top.dimension();
    let probe_tasks: Vec<usize> = (0..probe_count).collect();
    const MAX_RESAMPLES: usize = 25;
    let outcomes = par_map(jobs, &probe_tasks, |_, &p_idx| {
        for attempt in 0..MAX_RESAMPLES {
            let mut rng = task_rng(seed, P_PROBE, p_idx as u64, attempt as u64);
            let params = random_params(dim, &mut rng);
            let v = match top
                .sample_point(&params)
                .map_err(HarnessError::from)
                .and_then(|m| sign_vector(z, m.matrix(), &pairs))
            {
                Ok(v) => v,
                Err(e) => return Err(format!("probe {}: {}", p_idx, e)),
            };
            if v.iter().zip(needed.iter()).any(|(&s, &need)| need && s == 0) {
                continue;
            }
            let matched = sigs.iter().filter(|sig| sig.matches(&v)).count();
            return Ok((matched, attempt));
        }
        Err(format!("probe {}: still degenerate after {} resamples", p_idx, MAX_RESAMPLES))
    });

    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    let mut degenerate_resamples = 0usize;
    let mut exactly_one = 0usize;
    for (p_idx, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok((matched, attempts)) => {
                degenerate_resamples += attempts;
                *histogram.entry(matched).or_insert(0) += 1;
                if matched == 1 {
                    exactly_one += 1;
                } else {
                    failures.push(format!(
                        "probe {}: matched {} cell signatures, expected exactly 1",
                        p_idx, matched
                    ));
                }
            }
            Err(e) => failures.push(e),
        }
    }

    let mut stats = BTreeMap::new();
    stats.insert("pairs".into(), json!(pairs.len()));
    stats.insert(
        "constant_pairs_per_cell".into(),
        json!(sigs.iter().map(|s| s.constant_count()).collect::<Vec<_>>()),
    );
    stats.insert("base_pair_separation".into(), json!(base_pair_separation));
    stats.insert("probes".into(), json!(probe_count));
    stats.insert("matched_exactly_one".into(), json!(exactly_one));
    stats.insert("degenerate_resamples".into(), json!(degenerate_resamples));
    stats.insert(
        "match_histogram".into(),
        json!(histogram
            .into_iter()
            .map(|(m, c)| (m.to_string(), c))
            .collect::<BTreeMap<String, usize>>()),
    );
    Ok((failures, stats))
}

/// Within-cell injectivity: `pair_count` draws of two distinct parameter
/// vectors; the normalized Plucker vectors of `Z C(p)` and `Z C(q)` must
/// differ.
pub fn injectivity_probe(
    cell: &MRCell,
    z: &RationalMatrix,
    pair_count: usize,
    seed: u64,
    salt: u64,
    jobs: usize,
) -> Result<Vec<String>, HarnessError> {
    let dim = cell.dimension();
    let tasks: Vec<usize> = (0..pair_count).collect();
    let results = par_map(jobs, &tasks, |_, &t| {
        let mut rng_p = task_rng(seed, P_INJ, salt, 2 * t as u64);
        let mut rng_q = task_rng(seed, P_INJ, salt, 2 * t as u64 + 1);
        let p = random_params(dim, &mut rng_p);
        let mut q = random_params(dim, &mut rng_q);
        let mut guard = 0;
        while q == p && guard < 16 {
            q = random_params(dim, &mut rng_q);
            guard += 1;
        }
        if q == p {
            return Some(format!("pair {}: could not draw distinct parameters", t));
        }
        let run = || -> Result<Option<String>, HarnessError> {
            let vp = apply_z(z, cell.sample_point(&p)?.matrix())?.plucker_normalized()?;
            let vq = apply_z(z, cell.sample_point(&q)?.matrix())?.plucker_normalized()?;
            if vp == vq {
                return Ok(Some(format!(
                    "pair {}: distinct parameters map to the same point",
                    t
                )));
            }
            Ok(None)
        };
        run().unwrap_or_else(|e| Some(format!("pair {}: {}", t, e)))
    });
    Ok(results.into_iter().flatten().collect())
}

/// Affine chart points of the `Z` columns (first coordinate scaled to 1);
/// requires a `3 x n` matrix with positive first row.
fn affine_points(z: &RationalMatrix) -> Result<Vec<(Rational, Rational)>, HarnessError> {
    if z.rows() != 3 {
        return Err(HarnessError::BadInput(format!("need 3 rows, got {}", z.rows())));
    }
    let mut pts = Vec::with_capacity(z.cols());
    for c in 0..z.cols() {
        let w = z.entry(0, c);
        if crate::exactlin::sign_of(w) <= 0 {
            return Err(HarnessError::Degenerate("nonpositive chart coordinate".into()));
        }
        pts.push((z.entry(1, c) / w, z.entry(2, c) / w));
    }
    Ok(pts)
}

fn orient2(
    p: &(Rational, Rational),
    q: &(Rational, Rational),
    r: &(Rational, Rational),
) -> i8 {
    let v = (&q.0 - &p.0) * (&r.1 - &p.1) - (&q.1 - &p.1) * (&r.0 - &p.0);
    crate::exactlin::sign_of(&v)
}

/// Twice the signed triangle area.
fn area2(
    p: &(Rational, Rational),
    q: &(Rational, Rational),
    r: &(Rational, Rational),
) -> Rational {
    (&q.0 - &p.0) * (&r.1 - &p.1) - (&q.1 - &p.1) * (&r.0 - &p.0)
}

/// Closed-side separation: some edge line of either triangle has all of `a`
/// on one closed side and all of `b` on the other.
fn triangles_separated(a: &[usize; 3], b: &[usize; 3], pts: &[(Rational, Rational)]) -> bool {
    let edges = a
        .iter()
        .zip(a.iter().cycle().skip(1))
        .chain(b.iter().zip(b.iter().cycle().skip(1)));
    for (&u, &v) in edges {
        let side = |x: usize| orient2(&pts[u - 1], &pts[v - 1], &pts[x - 1]);
        let sa: Vec<i8> = a.iter().map(|&x| side(x)).collect();
        let sb: Vec<i8> = b.iter().map(|&x| side(x)).collect();
        let a_nonneg = sa.iter().all(|&s| s >= 0);
        let a_nonpos = sa.iter().all(|&s| s <= 0);
        let b_nonneg = sb.iter().all(|&s| s >= 0);
        let b_nonpos = sb.iter().all(|&s| s <= 0);
        if (a_nonneg && b_nonpos) || (a_nonpos && b_nonneg) {
            return true;
        }
    }
    false
}

/// For `k = 1`: the image triangles `conv(P_1, P_a, P_{a+1})` of the cells
/// (i) contain every sampled cell image with strictly positive barycentric
/// coordinates, (ii) have pairwise disjoint interiors, and (iii) tile the
/// convex hull of the `P_i` exactly (area identity). The chart positions
/// `P_i` come from the `Z` columns; convex position is verified first.
pub fn k1_polygon_oracle(
    n: usize,
    z: &RationalMatrix,
    samples: usize,
    seed: u64,
    salt: u64,
    jobs: usize,
) -> Result<(Vec<String>, BTreeMap<String, Value>), HarnessError> {
    let collection = generate_collection(n, 1, Variant::Twisted)?;
    let pts = affine_points(z)?;
    let mut failures = Vec::new();

    for triple in k_subsets(n, 3) {
        if orient2(&pts[triple[0] - 1], &pts[triple[1] - 1], &pts[triple[2] - 1]) <= 0 {
            failures.push(format!("chart points {:?} are not in convex position", triple));
        }
    }

    // Cell supports must be the fan triangles {1, a, a+1}.
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    for (idx, member) in collection.members().iter().enumerate() {
        let bases: Vec<Vec<usize>> = member.positroid.bases().iter().cloned().collect();
        let flat: Vec<usize> = bases.iter().flatten().copied().collect();
        let fan_ok = bases.len() == 3
            && flat.len() == 3
            && flat[0] == 1
            && flat[2] == flat[1] + 1
            && flat[1] >= 2
            && flat[2] <= n;
        if !fan_ok {
            failures.push(format!("cell {} support {:?} is not a fan triangle", idx, flat));
            continue;
        }
        triangles.push([flat[0], flat[1], flat[2]]);
    }

    // (i) sampled images land strictly inside their triangle.
    let mut tasks = Vec::new();
    for (idx, member) in collection.members().iter().enumerate() {
        if let (Some(cell), Some(tri)) = (member.cell.as_ref(), triangles.get(idx)) {
            for s in 0..samples {
                tasks.push((idx, cell.clone(), *tri, s));
            }
        }
    }
    let results = par_map(jobs, &tasks, |_, (idx, cell, tri, s)| {
        let mut rng = task_rng(seed, P_K1, salt * 1024 + *idx as u64, *s as u64);
        let params = random_params(cell.dimension(), &mut rng);
        let run = || -> Result<Option<String>, HarnessError> {
            let m = cell.sample_point(&params)?;
            let y = z.mul(m.matrix())?;
            let col =
                |i: usize| (0..3).map(|r| z.entry(r, i - 1).clone()).collect::<Vec<Rational>>();
            let ycol: Vec<Rational> = (0..3).map(|r| y.entry(r, 0).clone()).collect();
            let det3 = |a: &[Rational], b: &[Rational], c: &[Rational]| {
                RationalMatrix::from_rows(vec![
                    vec![a[0].clone(), b[0].clone(), c[0].clone()],
                    vec![a[1].clone(), b[1].clone(), c[1].clone()],
                    vec![a[2].clone(), b[2].clone(), c[2].clone()],
                ])
                .and_then(|m| m.det())
            };
            let (za, zb, zc) = (col(tri[0]), col(tri[1]), col(tri[2]));
            let d = det3(&za, &zb, &zc)?;
            let l0 = det3(&ycol, &zb, &zc)?;
            let l1 = det3(&za, &ycol, &zc)?;
            let l2 = det3(&za, &zb, &ycol)?;
            let ds = crate::exactlin::sign_of(&d);
            let inside = ds != 0
                && [&l0, &l1, &l2]
                    .iter()
                    .all(|l| crate::exactlin::sign_of(l) == ds);
            if !inside {
                return Ok(Some(format!(
                    "cell {} sample {}: image not strictly inside triangle {:?}",
                    idx, s, tri
                )));
            }
            Ok(None)
        };
        run().unwrap_or_else(|e| Some(format!("cell {} sample {}: {}", idx, s, e)))
    });
    failures.extend(results.into_iter().flatten());

    // (ii) pairwise disjoint interiors via closed edge-line separation.
    for i in 0..triangles.len() {
        for j in i + 1..triangles.len() {
            if !triangles_separated(&triangles[i], &triangles[j], &pts) {
                failures.push(format!(
                    "triangles {:?} and {:?} have overlapping interiors",
                    triangles[i], triangles[j]
                ));
            }
        }
    }

    // (iii) fan areas sum exactly to the hull area.
    let fan_area: Rational = triangles
        .iter()
        .map(|t| area2(&pts[t[0] - 1], &pts[t[1] - 1], &pts[t[2] - 1]))
        .sum();
    let mut hull_area = Rational::from_integer(0.into());
    for i in 0..n {
        let p = &pts[i];
        let q = &pts[(i + 1) % n];
        hull_area += &p.0 * &q.1 - &q.0 * &p.1;
    }
    if fan_area != hull_area {
        failures.push(format!(
            "fan area {} differs from hull area {}",
            fan_area, hull_area
        ));
    }

    let mut stats = BTreeMap::new();
    stats.insert("triangles".into(), json!(triangles.len()));
    stats.insert("samples_per_cell".into(), json!(samples));
    stats.insert(
        "hull_area".into(),
        json!(crate::exactlin::rational_to_string(&hull_area)),
    );
    Ok((failures, stats))
}

/// Exact cyclic-pattern identity: the image of the dense top cell of
/// `Gr_{k-1,n-1}` under the untwisted k-increasing branch map is the
/// positroid of all bases that contain `1` or end in `n-1` or `n`.
pub fn prop_cyc_check(n: usize, k: usize) -> Result<(Vec<String>, BTreeMap<String, Value>), HarnessError> {
    if k < 1 || k > n.saturating_sub(2) {
        return Err(HarnessError::BadInput(format!("need 1 <= k <= n-2, got n={}, k={}", n, k)));
    }
    let top_sub = MRCell::top_cell(n - 1, k - 1)?;
    let image = shifted_u_inc_support(&top_sub, false)?;
    let pattern: BTreeSet<Vec<usize>> = k_subsets(n, k)
        .into_iter()
        .filter(|s| s[0] == 1 || s[k - 1] >= n - 1)
        .collect();
    let mut failures = Vec::new();
    if image.bases() != &pattern {
        let missing: Vec<_> = pattern.difference(image.bases()).cloned().collect();
        let extra: Vec<_> = image.bases().difference(&pattern).cloned().collect();
        failures.push(format!(
            "image support differs from the cyclic pattern: missing {:?}, extra {:?}",
            missing, extra
        ));
    }
    let mut stats = BTreeMap::new();
    stats.insert("pattern_size".into(), json!(pattern.len()));
    stats.insert(
        "bases_containing_1".into(),
        json!(pattern.iter().filter(|s| s[0] == 1).count()),
    );
    stats.insert(
        "bases_ending_high".into(),
        json!(pattern.iter().filter(|s| s[k - 1] >= n - 1).count()),
    );
    Ok((failures, stats))
}

/// Cyclic-shift stability: the shifted collection has the same cardinality
/// of pairwise-distinct positroids, every shifted member is 2k-dimensional
/// (interval recovery, within budget), an n-fold shift is the identity, and
/// the signature separation survives the shift. A shifted cell's images
/// under `Z` are the original cell's images under the column-shifted
/// `Z sigma` (again totally positive), so the probe reruns against
/// `Z sigma`.
pub fn cyclic_collection_check(
    n: usize,
    k: usize,
    z: &RationalMatrix,
    draws: usize,
    seed: u64,
    jobs: usize,
) -> Result<(Vec<String>, BTreeMap<String, Value>), HarnessError> {
    let collection = generate_collection(n, k, Variant::Twisted)?;
    let mut failures = Vec::new();

    let shifted: Vec<Positroid> = collection
        .members()
        .iter()
        .map(|m| m.positroid.shift(1))
        .collect::<Result<_, _>>()?;
    let distinct: BTreeSet<&Positroid> = shifted.iter().collect();
    if distinct.len() != binomial(n - 2, k) {
        failures.push(format!(
            "shifted collection has {} distinct positroids, expected {}",
            distinct.len(),
            binomial(n - 2, k)
        ));
    }
    for (idx, member) in collection.members().iter().enumerate() {
        if member.positroid.shift(n as i64)? != member.positroid {
            failures.push(format!("member {}: n-fold shift is not the identity", idx));
        }
    }

    let mut dims_checked = 0usize;
    if n <= 8 {
        for (idx, p) in shifted.iter().enumerate() {
            match interval_cell_of_positroid(p) {
                Ok(cell) => {
                    dims_checked += 1;
                    if cell.dimension() != 2 * k {
                        failures.push(format!(
                            "shifted member {} has dimension {}, expected {}",
                            idx,
                            cell.dimension(),
                            2 * k
                        ));
                    }
                }
                Err(e) => failures.push(format!("shifted member {}: {}", idx, e)),
            }
        }
    }

    let z_shift = z.mul(&crate::exactlin::sigma(k, n))?;
    let pairs = probe_pairs(n);
    let base_pairs: BTreeSet<(usize, usize)> = base_probe_pairs(n).into_iter().collect();
    let base_allowed: Vec<bool> = pairs.iter().map(|p| base_pairs.contains(p)).collect();
    let all_allowed = vec![true; pairs.len()];
    let sigs = collection_signatures(&collection, &z_shift, &pairs, draws, seed, P_CYC, jobs)?;
    failures.extend(separation_failures(&sigs, &pairs, &all_allowed, "shifted separation"));
    let base_pair_separation =
        separation_failures(&sigs, &pairs, &base_allowed, "base").is_empty();

    let mut stats = BTreeMap::new();
    stats.insert("distinct_shifted".into(), json!(distinct.len()));
    stats.insert("dimension_checks".into(), json!(dims_checked));
    stats.insert("base_pair_separation".into(), json!(base_pair_separation));
    stats.insert(
        "constant_pairs_per_cell".into(),
        json!(sigs.iter().map(|s| s.constant_count()).collect::<Vec<_>>()),
    );
    Ok((failures, stats))
}

/// One verification report; serialized as a single JSON object with the
/// `Z` matrices actually used (empty for purely combinatorial checks).
#[derive(Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    #[serde(rename = "Z")]
    pub z: Vec<RationalMatrix>,
    pub pass: bool,
    pub failures: Vec<String>,
    pub stats: BTreeMap<String, Value>,
}

/// The named checks `verify` can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Cardinality,
    Identity,
    Signs,
    K1,
    Cyc,
    Probe,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Cardinality => "cardinality",
            CheckKind::Identity => "identity",
            CheckKind::Signs => "signs",
            CheckKind::K1 => "k1",
            CheckKind::Cyc => "cyc",
            CheckKind::Probe => "probe",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cardinality" => Some(CheckKind::Cardinality),
            "identity" => Some(CheckKind::Identity),
            "signs" => Some(CheckKind::Signs),
            "k1" => Some(CheckKind::K1),
            "cyc" => Some(CheckKind::Cyc),
            "probe" => Some(CheckKind::Probe),
            _ => None,
        }
    }

    /// Largest `n` the check accepts (overridable through `AMP2_BUDGET_N`).
    pub fn budget(self) -> usize {
        if let Some(n) = env_budget() {
            return n;
        }
        match self {
            CheckKind::Cardinality => 10,
            CheckKind::Identity => 9,
            CheckKind::Signs => 8,
            CheckKind::K1 => 12,
            CheckKind::Cyc => 8,
            CheckKind::Probe => 7,
        }
    }
}

/// Budget for `gen` (same env override).
pub fn gen_budget() -> usize {
    env_budget().unwrap_or(10)
}

fn env_budget() -> Option<usize> {
    std::env::var("AMP2_BUDGET_N").ok().and_then(|v| v.parse().ok())
}

/// Settings shared by all checks.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    pub zmode: ZMode,
    pub jobs: usize,
}

fn failing_report(kind: CheckKind, n: usize, k: usize, seed: u64, err: String) -> Report {
    Report {
        check: kind.name().to_string(),
        n,
        k,
        seed,
        z: Vec::new(),
        pass: false,
        failures: vec![err],
        stats: BTreeMap::new(),
    }
}

/// Runs one check and packages the outcome; internal errors become failing
/// reports rather than process errors.
pub fn run_check(kind: CheckKind, n: usize, k: usize, cfg: &VerifyConfig) -> Report {
    match run_check_inner(kind, n, k, cfg) {
        Ok(report) => report,
        Err(e) => failing_report(kind, n, k, cfg.seed, e.to_string()),
    }
}

fn run_check_inner(
    kind: CheckKind,
    n: usize,
    k: usize,
    cfg: &VerifyConfig,
) -> Result<Report, HarnessError> {
    let mut failures = Vec::new();
    let mut stats: BTreeMap<String, Value> = BTreeMap::new();
    let mut zs: Vec<RationalMatrix> = Vec::new();
    match kind {
        CheckKind::Cardinality => {
            let expected = binomial(n - 2, k);
            for variant in [Variant::Twisted, Variant::Plain] {
                let c = generate_collection(n, k, variant)?;
                stats.insert(format!("{}_cells", variant.as_str()), json!(c.cardinality()));
                if c.cardinality() != expected {
                    failures.push(format!(
                        "{} collection has {} cells, expected {}",
                        variant.as_str(),
                        c.cardinality(),
                        expected
                    ));
                }
            }
            let e = crate::explicit::enumerate_explicit(n, k)?;
            stats.insert("explicit_cells".into(), json!(e.cardinality()));
            if e.cardinality() != expected {
                failures
                    .push(format!("explicit family has {} cells, expected {}", e.cardinality(), expected));
            }
            stats.insert("expected".into(), json!(expected));
        }
        CheckKind::Identity => {
            let report = crate::explicit::verify_recursive_identity(n, k)?;
            stats.insert("pre_count".into(), json!(report.pre_count));
            stats.insert("inc_count".into(), json!(report.inc_count));
            if !report.pass {
                failures.push(format!(
                    "recursion identity: {} missing, {} extra, {} overlapping",
                    report.missing.len(),
                    report.extra.len(),
                    report.overlap.len()
                ));
            }
            let twisted = generate_collection(n, k, Variant::Twisted)?.positroid_set();
            let explicit = crate::explicit::enumerate_explicit(n, k)?.positroid_set();
            let matches = twisted == explicit;
            stats.insert("twisted_matches_explicit".into(), json!(matches));
            if !matches {
                failures.push("twisted collection differs from the explicit family".into());
            }
        }
        CheckKind::Signs => {
            let collection = generate_collection(n, k, Variant::Twisted)?;
            zs = make_zs(k + 2, n, 5, cfg.zmode, cfg.seed)?;
            let mut zero_z_failures = 0usize;
            for (z_idx, z) in zs.iter().enumerate() {
                let (f, s) = family_sign_lemma_check(
                    &collection,
                    z,
                    cfg.samples,
                    cfg.seed,
                    z_idx as u64,
                    cfg.jobs,
                )?;
                if f.is_empty() {
                    zero_z_failures += 1;
                }
                failures.extend(f.into_iter().map(|m| format!("Z{}: {}", z_idx, m)));
                if z_idx == 0 {
                    stats.extend(s);
                }
            }
            stats.insert("z_matrices".into(), json!(zs.len()));
            stats.insert("z_matrices_clean".into(), json!(zero_z_failures));
        }
        CheckKind::K1 => {
            if k != 1 {
                return Err(HarnessError::BadInput(format!("k1 oracle needs k = 1, got {}", k)));
            }
            zs = make_zs(3, n, 3, cfg.zmode, cfg.seed)?;
            for (z_idx, z) in zs.iter().enumerate() {
                let (f, s) =
                    k1_polygon_oracle(n, z, cfg.samples, cfg.seed, z_idx as u64, cfg.jobs)?;
                failures.extend(f.into_iter().map(|m| format!("Z{}: {}", z_idx, m)));
                if z_idx == 0 {
                    stats.extend(s);
                }
            }
            stats.insert("z_matrices".into(), json!(zs.len()));
        }
        CheckKind::Cyc => {
            zs = make_zs(k + 2, n, 1, cfg.zmode, cfg.seed)?;
            let (f, s) =
                cyclic_collection_check(n, k, &zs[0], cfg.samples.min(10).max(3), cfg.seed, cfg.jobs)?;
            failures.extend(f);
            stats.extend(s);
            let (f, s) = prop_cyc_check(n, k)?;
            failures.extend(f.into_iter().map(|m| format!("pattern: {}", m)));
            stats.extend(s);
        }
        CheckKind::Probe => {
            let collection = generate_collection(n, k, Variant::Twisted)?;
            zs = make_zs(k + 2, n, 1, cfg.zmode, cfg.seed)?;
            let (f, s) = signature_probe(
                &collection,
                &zs[0],
                10,
                cfg.samples,
                cfg.seed,
                cfg.jobs,
            )?;
            failures.extend(f);
            stats.extend(s);
            let mut collisions = 0usize;
            for (idx, member) in collection.members().iter().enumerate() {
                let cell = member.cell.as_ref().ok_or_else(|| {
                    HarnessError::BadInput("injectivity probe needs carried cells".into())
                })?;
                let f =
                    injectivity_probe(cell, &zs[0], 50, cfg.seed, idx as u64, cfg.jobs)?;
                collisions += f.len();
                failures.extend(f.into_iter().map(|m| format!("cell {}: {}", idx, m)));
            }
            stats.insert("injectivity_pairs_per_cell".into(), json!(50));
            stats.insert("injectivity_collisions".into(), json!(collisions));
        }
    }
    let pass = failures.is_empty();
    Ok(Report { check: kind.name().to_string(), n, k, seed: cfg.seed, z: zs, pass, failures, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat_int;

    fn vz(n: usize, rows: usize) -> RationalMatrix {
        let nodes: Vec<Rational> = (1..=n as i64).map(rat_int).collect();
        vandermonde_z(rows, &nodes).unwrap()
    }

    #[test]
    fn bracket_fixture_is_negative() {
        let z = vz(4, 3);
        let c = RationalMatrix::from_rows(vec![
            vec![rat_int(1)],
            vec![rat_int(1)],
            vec![rat_int(1)],
            vec![rat_int(0)],
        ])
        .unwrap();
        let y = apply_z(&z, &c).unwrap();
        assert_eq!(bracket(&z, &y, 1, 3).unwrap(), -1);
    }

    #[test]
    fn probe_pairs_include_fan_and_wrap() {
        let pairs = probe_pairs(5);
        assert!(pairs.contains(&(1, 3)));
        assert!(pairs.contains(&(1, 4)));
        assert!(pairs.contains(&(1, 5)));
        assert!(pairs.contains(&(4, 5)));
        let base = base_probe_pairs(5);
        assert!(!base.contains(&(1, 3)));
    }

    #[test]
    fn cyclic_pattern_small_cases() {
        let (failures, _) = prop_cyc_check(4, 1).unwrap();
        assert!(failures.is_empty(), "{:?}", failures);
        let (failures, _) = prop_cyc_check(5, 2).unwrap();
        assert!(failures.is_empty(), "{:?}", failures);
    }

    #[test]
    fn par_map_is_order_stable() {
        let items: Vec<usize> = (0..17).collect();
        let one = par_map(1, &items, |i, &v| i * 100 + v);
        let four = par_map(4, &items, |i, &v| i * 100 + v);
        assert_eq!(one, four);
    }
}
