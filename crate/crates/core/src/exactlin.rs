//! Exact rational linear algebra: matrices over `BigRational`, fraction-free
//! determinants, the one-parameter generator matrices `x_i(a)`, `y_i(a)`,
//! the signed permutation lift `ṡ_i`, the twisted cyclic shift `σ`, and
//! totally positive moment matrices (Vandermonde and elementary-product).
//!
//! Row/column SUBSET arguments are 1-based throughout (they name ground-set
//! elements); direct entry access is 0-based.

use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use rand::Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("determinant requires a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("generator index {0} out of range for size {1}")]
    IndexRange(usize, usize),
    #[error("nodes must be strictly increasing positive rationals")]
    BadNodes,
}

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"p"` (reduced automatically, `q > 0` enforced by value).
pub fn parse_rational(s: &str) -> Result<Rational, LinError> {
    let bad = || LinError::Parse(s.to_string());
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical `"num/den"` form (always slashed, denominator positive).
pub fn rational_to_string(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Sign as `-1 | 0 | 1`.
pub fn sign_of(v: &Rational) -> i8 {
    match v.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// First `count` primes after skipping the first `skip` primes.
pub fn primes(count: usize, skip: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut found = 0usize;
    let mut cand = 2u64;
    while out.len() < count {
        let is_prime = (2..).take_while(|d| d * d <= cand).all(|d| cand % d != 0);
        if is_prime {
            if found >= skip {
                out.push(cand);
            }
            found += 1;
        }
        cand += 1;
    }
    out
}

/// A positive rational `p/q` with `p, q` uniform in `1..=1000`.
pub fn random_positive_rational<R: Rng>(rng: &mut R) -> Rational {
    let p = rng.gen_range(1..=1000i64);
    let q = rng.gen_range(1..=1000i64);
    rat(p, q)
}

/// Dense row-major matrix over exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.entry(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.entry_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinError::Dimension("ragged row lengths".into()));
        }
        Ok(RationalMatrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry access, 0-based.
    pub fn entry(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.entry(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinError> {
        if self.cols != other.rows {
            return Err(LinError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for inner in 0..self.cols {
                let a = self.entry(r, inner);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.entry(inner, c);
                    if !b.is_zero() {
                        *out.entry_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Submatrix on 1-based row/column label lists (order preserved).
    pub fn submatrix(&self, row_labels: &[usize], col_labels: &[usize]) -> Self {
        let mut out = Self::zeros(row_labels.len(), col_labels.len());
        for (ri, &r) in row_labels.iter().enumerate() {
            for (ci, &c) in col_labels.iter().enumerate() {
                out.set(ri, ci, self.entry(r - 1, c - 1).clone());
            }
        }
        out
    }

    /// Exact determinant via row denominator clearing and integer Bareiss.
    pub fn det(&self) -> Result<Rational, LinError> {
        if self.rows != self.cols {
            return Err(LinError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for r in 0..n {
            let mut l = BigInt::one();
            for c in 0..n {
                l = l.lcm(self.entry(r, c).denom());
            }
            let row = (0..n)
                .map(|c| {
                    let e = self.entry(r, c);
                    e.numer() * (&l / e.denom())
                })
                .collect();
            scale *= &l;
            m.push(row);
        }
        let d = bareiss_det(&mut m);
        Ok(BigRational::new(d, scale))
    }

    /// Maximal minor on a 1-based row subset (for tall matrices: `|rows| == cols`).
    pub fn maximal_minor(&self, row_labels: &[usize]) -> Result<Rational, LinError> {
        if row_labels.len() != self.cols {
            return Err(LinError::Dimension(format!(
                "row subset size {} vs {} columns",
                row_labels.len(),
                self.cols
            )));
        }
        let all_cols: Vec<usize> = (1..=self.cols).collect();
        self.submatrix(row_labels, &all_cols).det()
    }

    /// Maximal minor on a 1-based column subset (for wide matrices: `|cols| == rows`).
    pub fn maximal_minor_cols(&self, col_labels: &[usize]) -> Result<Rational, LinError> {
        if col_labels.len() != self.rows {
            return Err(LinError::Dimension(format!(
                "column subset size {} vs {} rows",
                col_labels.len(),
                self.rows
            )));
        }
        let all_rows: Vec<usize> = (1..=self.rows).collect();
        self.submatrix(&all_rows, col_labels).det()
    }

    /// All maximal minors over the longer axis, each with its subset.
    fn each_maximal_minor(&self, mut f: impl FnMut(&[usize], Rational)) -> Result<(), LinError> {
        let (long, short, by_rows) = if self.rows >= self.cols {
            (self.rows, self.cols, true)
        } else {
            (self.cols, self.rows, false)
        };
        for subset in k_subsets(long, short) {
            let v = if by_rows {
                self.maximal_minor(&subset)?
            } else {
                self.maximal_minor_cols(&subset)?
            };
            f(&subset, v);
        }
        Ok(())
    }

    /// True iff every maximal minor (over the longer axis) is `>= 0`.
    pub fn is_totally_nonnegative(&self) -> Result<bool, LinError> {
        let mut ok = true;
        self.each_maximal_minor(|_, v| ok &= !v.is_negative())?;
        Ok(ok)
    }

    /// True iff every maximal minor (over the longer axis) is `> 0`.
    pub fn is_totally_positive(&self) -> Result<bool, LinError> {
        let mut ok = true;
        self.each_maximal_minor(|_, v| ok &= v.is_positive())?;
        Ok(ok)
    }

    /// Rank by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0usize;
        let mut pivot_row = 0usize;
        for c in 0..m.cols {
            let Some(pr) = (pivot_row..m.rows).find(|&r| !m.entry(r, c).is_zero()) else {
                continue;
            };
            for swap_c in 0..m.cols {
                let tmp = m.entry(pivot_row, swap_c).clone();
                let other = m.entry(pr, swap_c).clone();
                m.set(pivot_row, swap_c, other);
                m.set(pr, swap_c, tmp);
            }
            let inv = m.entry(pivot_row, c).clone();
            for r in pivot_row + 1..m.rows {
                if m.entry(r, c).is_zero() {
                    continue;
                }
                let factor = m.entry(r, c) / &inv;
                for cc in c..m.cols {
                    let delta = &factor * m.entry(pivot_row, cc);
                    *m.entry_mut(r, cc) -= delta;
                }
            }
            rank += 1;
            pivot_row += 1;
            if pivot_row == m.rows {
                break;
            }
        }
        rank
    }

    /// In-place left action of `y_i(t)`: row `i+1 += t * row i` (1-based `i`).
    pub fn apply_y_left(&mut self, i: usize, t: &Rational) -> Result<(), LinError> {
        if i < 1 || i + 1 > self.rows {
            return Err(LinError::IndexRange(i, self.rows));
        }
        for c in 0..self.cols {
            let delta = t * self.entry(i - 1, c);
            *self.entry_mut(i, c) += delta;
        }
        Ok(())
    }

    /// In-place left action of `x_i(t)`: row `i += t * row i+1` (1-based `i`).
    pub fn apply_x_left(&mut self, i: usize, t: &Rational) -> Result<(), LinError> {
        if i < 1 || i + 1 > self.rows {
            return Err(LinError::IndexRange(i, self.rows));
        }
        for c in 0..self.cols {
            let delta = t * self.entry(i, c);
            *self.entry_mut(i - 1, c) += delta;
        }
        Ok(())
    }

    /// In-place left action of `ṡ_i`: new row `i` is `-row i+1`, new row
    /// `i+1` is old row `i` (1-based `i`).
    pub fn apply_sdot_left(&mut self, i: usize) -> Result<(), LinError> {
        if i < 1 || i + 1 > self.rows {
            return Err(LinError::IndexRange(i, self.rows));
        }
        for c in 0..self.cols {
            let upper = self.entry(i - 1, c).clone();
            let lower = self.entry(i, c).clone();
            self.set(i - 1, c, -lower);
            self.set(i, c, upper);
        }
        Ok(())
    }

    /// In-place left action of `σ_{k,n}^power` for `power >= 0`: each
    /// application sends row `i` to row `i+1` and row `n` to
    /// `(-1)^(k-1) * row 1`.
    pub fn apply_sigma_left(&mut self, k: usize, power: usize) {
        let n = self.rows;
        if n == 0 {
            return;
        }
        for _ in 0..power {
            let mut last = self.row(n - 1).to_vec();
            if k % 2 == 0 {
                for v in &mut last {
                    *v = -std::mem::take(v);
                }
            }
            for r in (1..n).rev() {
                for c in 0..self.cols {
                    let above = self.entry(r - 1, c).clone();
                    self.set(r, c, above);
                }
            }
            for (c, v) in last.into_iter().enumerate() {
                self.set(0, c, v);
            }
        }
    }
}

/// Integer Bareiss determinant; consumes the working matrix.
fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for r in 0..n.saturating_sub(1) {
        if m[r][r].is_zero() {
            let Some(swap) = (r + 1..n).find(|&rr| !m[rr][r].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(r, swap);
            sign = -sign;
        }
        for i in r + 1..n {
            for j in r + 1..n {
                let num = &m[r][r] * &m[i][j] - &m[i][r] * &m[r][j];
                debug_assert!((&num % &prev).is_zero());
                m[i][j] = num / &prev;
            }
            m[i][r] = BigInt::zero();
        }
        prev = m[r][r].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// All `k`-subsets of `{1, .., n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next subset in lex order.
        let mut i = k;
        while i > 0 && cur[i - 1] == n - (k - i) {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Binomial coefficient as `usize` (small arguments only).
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Upper elementary generator `x_i(a)`: identity plus `a` at `(i, i+1)`.
pub fn x_elem(i: usize, a: &Rational, n: usize) -> Result<RationalMatrix, LinError> {
    if i < 1 || i + 1 > n {
        return Err(LinError::IndexRange(i, n));
    }
    let mut m = RationalMatrix::identity(n);
    m.set(i - 1, i, a.clone());
    Ok(m)
}

/// Lower elementary generator `y_i(a)`: identity plus `a` at `(i+1, i)`.
pub fn y_elem(i: usize, a: &Rational, n: usize) -> Result<RationalMatrix, LinError> {
    if i < 1 || i + 1 > n {
        return Err(LinError::IndexRange(i, n));
    }
    let mut m = RationalMatrix::identity(n);
    m.set(i, i - 1, a.clone());
    Ok(m)
}

/// Signed permutation lift `ṡ_i`: the identity with the `i, i+1` block
/// replaced by `[[0, -1], [1, 0]]`.
pub fn sdot(i: usize, n: usize) -> Result<RationalMatrix, LinError> {
    if i < 1 || i + 1 > n {
        return Err(LinError::IndexRange(i, n));
    }
    let mut m = RationalMatrix::identity(n);
    m.set(i - 1, i - 1, Rational::zero());
    m.set(i, i, Rational::zero());
    m.set(i - 1, i, rat_int(-1));
    m.set(i, i - 1, Rational::one());
    Ok(m)
}

/// Twisted cyclic shift `σ_{k,n}`: subdiagonal ones plus `(-1)^(k-1)` in the
/// top-right corner. Satisfies `σ^n = (-1)^(k-1) * Id`.
pub fn sigma(k: usize, n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for i in 1..n {
        m.set(i, i - 1, Rational::one());
    }
    let corner = if k % 2 == 1 { 1 } else { -1 };
    m.set(0, n - 1, rat_int(corner));
    m
}

/// Vandermonde moment matrix: entry `(r, c) = t_c^(r-1)` over strictly
/// increasing positive nodes; every maximal minor is positive.
pub fn vandermonde_z(rows: usize, nodes: &[Rational]) -> Result<RationalMatrix, LinError> {
    let ok = nodes.iter().all(|t| t.is_positive())
        && nodes.windows(2).all(|w| w[0] < w[1])
        && nodes.len() >= rows;
    if !ok {
        return Err(LinError::BadNodes);
    }
    let mut m = RationalMatrix::zeros(rows, nodes.len());
    for (c, t) in nodes.iter().enumerate() {
        let mut pow = Rational::one();
        for r in 0..rows {
            m.set(r, c, pow.clone());
            pow *= t;
        }
    }
    Ok(m)
}

/// Totally positive `rows x n` matrix built from an exact `n x n`
/// lower-diagonal-upper product of elementary generators with positive
/// random parameters, truncated to its first `rows` rows.
pub fn elementary_tp_matrix<R: Rng>(
    rows: usize,
    n: usize,
    rng: &mut R,
) -> Result<RationalMatrix, LinError> {
    if rows > n || n == 0 {
        return Err(LinError::Dimension(format!("{rows}x{n} truncation", rows = rows)));
    }
    // Longest-element word r, r-1, .., 1 blocks: every full minor of the
    // product is positive (classical total positivity factorization).
    let mut letters: Vec<usize> = Vec::new();
    for r in 1..n {
        for i in (1..=r).rev() {
            letters.push(i);
        }
    }
    let mut m = RationalMatrix::identity(n);
    for &i in &letters {
        let t = random_positive_rational(rng);
        let y = y_elem(i, &t, n)?;
        m = y.mul(&m)?;
    }
    let mut diag = RationalMatrix::zeros(n, n);
    for i in 0..n {
        diag.set(i, i, random_positive_rational(rng));
    }
    m = m.mul(&diag)?;
    for &i in letters.iter().rev() {
        let t = random_positive_rational(rng);
        let x = x_elem(i, &t, n)?;
        m = m.mul(&x)?;
    }
    let row_labels: Vec<usize> = (1..=rows).collect();
    let col_labels: Vec<usize> = (1..=n).collect();
    Ok(m.submatrix(&row_labels, &col_labels))
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| rational_to_string(self.entry(r, c))).collect())
            .collect();
        MatrixRepr { rows: self.rows, cols: self.cols, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom("matrix entry grid does not match rows/cols"));
        }
        let mut rows = Vec::with_capacity(repr.rows);
        for row in &repr.entries {
            let parsed: Result<Vec<Rational>, _> = row.iter().map(|s| parse_rational(s)).collect();
            rows.push(parsed.map_err(|e| D::Error::custom(e.to_string()))?);
        }
        RationalMatrix::from_rows(rows).map_err(|e| D::Error::custom(e.to_string()))
    }
}
