//! Exact rational arithmetic and linear algebra.
//!
//! [`Rat`] is `num_rational::BigRational`, which already keeps values reduced
//! with a positive denominator. On top of it this module provides a sparse
//! [`RatMatrix`], fraction-free (Bareiss) rank and nullspace, an incremental
//! span builder, and [`solve_parametric`] for systems whose entries are affine
//! in one unknown scalar.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serializer;
use thiserror::Error;

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational {0:?}, expected an integer or p/q")]
    Malformed(String),
}

/// Rational `n/d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`).
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| ParseRatError::Malformed(s.to_string()))?;
    let den = BigInt::from_str(den).map_err(|_| ParseRatError::Malformed(s.to_string()))?;
    if den.is_zero() {
        return Err(ParseRatError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(num, den))
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn ser_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rat(r))
}

pub fn ser_rat_opt<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fmt_rat(r)),
        None => s.serialize_none(),
    }
}

pub fn ser_rat_vec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rat))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binom_q(n: u32, k: u32) -> Rat {
    Rat::from_integer(binomial(n, k))
}

pub fn fact_q(n: u32) -> Rat {
    Rat::from_integer(factorial(n))
}

// ---------------------------------------------------------------------------
// Sparse matrices

/// Sparse rational matrix keyed by `(row, col)`. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds from dense rows; all rows must have length `cols`.
    pub fn from_dense(cols: usize, rows: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row {i} has wrong length");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
        Self::from_dense(cols, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rat) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    /// Appends a row given as sparse `(col, value)` pairs.
    pub fn push_row<'a, I: IntoIterator<Item = (usize, &'a Rat)>>(&mut self, row: I) {
        let r = self.rows;
        self.rows += 1;
        for (c, v) in row {
            self.add_to(r, c, v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rat::zero(); self.rows];
        for (&(r, c), x) in &self.entries {
            out[r] += x * &v[c];
        }
        out
    }

    pub fn transpose(&self) -> Self {
        RatMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut d = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RatMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        m.rows += other.rows;
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r + self.rows, c), v.clone());
        }
        m
    }
}

/// Integer copy of the matrix with each row cleared of denominators.
fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    let mut denoms = vec![BigInt::one(); m.rows];
    for (&(r, _), v) in &m.entries {
        denoms[r] = denoms[r].lcm(v.denom());
    }
    let mut out = vec![vec![BigInt::zero(); m.cols]; m.rows];
    for (&(r, c), v) in &m.entries {
        out[r][c] = v.numer() * (&denoms[r] / v.denom());
    }
    out
}

/// In-place Bareiss elimination to row echelon form. Returns pivot columns;
/// row `i` of the result has its pivot at `pivots[i]`.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                for v in row.iter_mut().skip(c + 1) {
                    if !v.is_zero() {
                        *v = &*v * &prow[c] / &prev;
                    }
                }
                continue;
            }
            let f = row[c].clone();
            for j in (c + 1)..cols {
                let v = &row[j] * &prow[c] - &f * &prow[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact rank over Q.
pub fn rank(m: &RatMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    let mut a = integer_rows(m);
    bareiss(&mut a, m.cols).len()
}

/// A basis of `{v : M v = 0}`, one vector per free column.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let cols = m.cols;
    let mut a = integer_rows(m);
    let pivots = bareiss(&mut a, cols);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut s = Rat::zero();
            for j in (pc + 1)..cols {
                if !a[r][j].is_zero() && !v[j].is_zero() {
                    s += Rat::from_integer(a[r][j].clone()) * &v[j];
                }
            }
            v[pc] = -s / Rat::from_integer(a[r][pc].clone());
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Incremental spans

/// Incrementally built row-echelon basis of a span of sparse vectors.
///
/// Vectors are maps from an ordered key to a coefficient; keys absent from a
/// map are zero. Used for closure computations where the ambient coordinates
/// are not known in advance.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Rat>>,
}

impl<K: Ord + Clone> SpanBuilder<K> {
    pub fn new() -> Self {
        SpanBuilder { rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: BTreeMap<K, Rat>) -> BTreeMap<K, Rat> {
        v.retain(|_, c| !c.is_zero());
        loop {
            let Some((lead, coeff)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
                return v;
            };
            let Some(row) = self.rows.get(&lead) else {
                return v;
            };
            for (k, c) in row {
                let e = v.entry(k.clone()).or_insert_with(Rat::zero);
                *e -= &coeff * c;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    pub fn contains(&self, v: &BTreeMap<K, Rat>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &BTreeMap<K, Rat>) -> bool {
        let r = self.reduce(v.clone());
        let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let normalized = r.into_iter().map(|(k, x)| (k, x / &c)).collect();
        self.rows.insert(lead, normalized);
        true
    }
}

// ---------------------------------------------------------------------------
// Affine parameters

/// The affine expression `constant + slope * lambda` in a symbolic scalar.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinParam {
    pub constant: Rat,
    pub slope: Rat,
}

impl LinParam {
    pub fn new(constant: Rat, slope: Rat) -> Self {
        LinParam { constant, slope }
    }

    pub fn constant(c: Rat) -> Self {
        LinParam { constant: c, slope: Rat::zero() }
    }

    /// The symbolic scalar itself.
    pub fn lambda() -> Self {
        LinParam { constant: Rat::zero(), slope: Rat::one() }
    }

    pub fn eval(&self, lambda: &Rat) -> Rat {
        &self.constant + &self.slope * lambda
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        LinParam { constant: &self.constant * c, slope: &self.slope * c }
    }
}

impl std::ops::Add for &LinParam {
    type Output = LinParam;
    fn add(self, o: &LinParam) -> LinParam {
        LinParam { constant: &self.constant + &o.constant, slope: &self.slope + &o.slope }
    }
}

impl std::ops::Sub for &LinParam {
    type Output = LinParam;
    fn sub(self, o: &LinParam) -> LinParam {
        LinParam { constant: &self.constant - &o.constant, slope: &self.slope - &o.slope }
    }
}

impl fmt::Display for LinParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant.is_zero(), self.slope.is_zero()) {
            (_, true) => write!(f, "{}", self.constant),
            (true, false) => write!(f, "({})*lambda", self.slope),
            (false, false) => write!(f, "{} + ({})*lambda", self.constant, self.slope),
        }
    }
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q (internal to the parametric solver)

#[derive(Clone, Debug, PartialEq, Eq)]
struct QPoly(Vec<Rat>);

impl QPoly {
    fn trimmed(mut v: Vec<Rat>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        QPoly(v)
    }

    fn from_lin(p: &LinParam) -> Self {
        Self::trimmed(vec![p.constant.clone(), p.slope.clone()])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("lead of zero polynomial")
    }

    fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly(vec![]);
        }
        let mut v = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::trimmed(v)
    }

    fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(Rat::zero);
                let b = o.0.get(i).cloned().unwrap_or_else(Rat::zero);
                a - b
            })
            .collect();
        Self::trimmed(v)
    }

    fn derivative(&self) -> QPoly {
        let v = self.0.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect();
        Self::trimmed(v)
    }

    fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (QPoly(vec![]), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / d.lead();
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        (Self::trimmed(q), Self::trimmed(r))
    }

    fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a
    }
}

/// Result of [`solve_parametric`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamSolution {
    /// The system is rank deficient for every value of the parameter.
    /// `uniform` spans the vectors that are null for every value.
    All { uniform: Vec<Vec<Rat>> },
    /// Finitely many rational parameter values, each with its nullspace.
    Finite(Vec<ParamRoot>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRoot {
    pub lambda: Rat,
    pub nullspace: Vec<Vec<Rat>>,
}

/// Specializes a parametric system at a rational value.
pub fn specialize(rows: &[Vec<LinParam>], ncols: usize, lambda: &Rat) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), ncols, "parametric row {i} has wrong length");
        for (j, e) in row.iter().enumerate() {
            m.set(i, j, e.eval(lambda));
        }
    }
    m
}

/// Finds every rational `lambda` at which `A(lambda) v = 0` has a nonzero
/// solution, where the entries of `A` are affine in `lambda`.
///
/// The generic rank is computed by fraction-free elimination over `Q[lambda]`.
/// If it is below `ncols` the answer is [`ParamSolution::All`]. Otherwise the
/// last pivot is a maximal minor `D(lambda)`; every parameter value where the
/// rank drops is a root of `D`, and each rational root is confirmed by an
/// exact nullspace computation at that value.
pub fn solve_parametric(rows: &[Vec<LinParam>], ncols: usize) -> ParamSolution {
    let mut a: Vec<Vec<QPoly>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "parametric rows must have equal length");
            r.iter().map(QPoly::from_lin).collect()
        })
        .collect();
    a.retain(|r| r.iter().any(|p| !p.is_zero()));

    let nrows = a.len();
    let mut prev = QPoly(vec![Rat::one()]);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // Prefer the lowest-degree pivot to keep the minors small.
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].degree().unwrap_or(0))
        else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            for j in (c + 1)..ncols {
                let v = row[j].mul(&prow[c]).sub(&row[c].mul(&prow[j]));
                let (q, rem) = v.divrem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = QPoly(vec![]);
        }
        prev = a[r][c].clone();
        r += 1;
    }

    if r < ncols {
        let mut stacked = RatMatrix::zeros(0, ncols);
        for row in rows {
            stacked.push_row(row.iter().enumerate().map(|(j, e)| (j, &e.constant)));
            stacked.push_row(row.iter().enumerate().map(|(j, e)| (j, &e.slope)));
        }
        return ParamSolution::All { uniform: nullspace(&stacked) };
    }

    let mut out = Vec::new();
    for lambda in rational_roots(&prev) {
        let ns = nullspace(&specialize(rows, ncols, &lambda));
        if !ns.is_empty() {
            out.push(ParamRoot { lambda, nullspace: ns });
        }
    }
    ParamSolution::Finite(out)
}

/// Distinct rational roots of a nonzero polynomial, ascending.
fn rational_roots(p: &QPoly) -> Vec<Rat> {
    let Some(deg) = p.degree() else {
        return vec![];
    };
    if deg == 0 {
        return vec![];
    }
    let g = p.gcd(&p.derivative());
    let sf = p.divrem(&g).0;
    // Scale to integer coefficients so the denominator bound is available.
    let lcm = sf.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let sf = QPoly(sf.0.iter().map(|c| c * Rat::from_integer(lcm.clone())).collect());
    let lead = sf.lead().abs();
    let width = (&lead * &lead).recip();
    let bound = sf.0.iter().fold(Rat::zero(), |acc, c| acc.max(c.abs() / &lead)) + Rat::one();

    let sturm = sturm_sequence(&sf);
    let mut intervals = Vec::new();
    isolate(&sturm, -bound.clone() - Rat::one(), bound + Rat::one(), &width, &mut intervals);
    let mut roots: Vec<Rat> = intervals
        .into_iter()
        .map(|(lo, hi)| simplest_between(&lo, &hi))
        .filter(|x| sf.eval(x).is_zero())
        .collect();
    roots.sort();
    roots.dedup();
    roots
}

fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let r = seq[n - 2].divrem(&seq[n - 1]).1;
        let neg = QPoly(r.0.iter().map(|c| -c).collect());
        if neg.is_zero() {
            return seq;
        }
        seq.push(neg);
    }
}

fn sign_changes(seq: &[QPoly], x: &Rat) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Splits `(lo, hi]` until each piece holds one root and is narrower than `width`.
fn isolate(seq: &[QPoly], lo: Rat, hi: Rat, width: &Rat, out: &mut Vec<(Rat, Rat)>) {
    let n = sign_changes(seq, &lo) - sign_changes(seq, &hi);
    if n == 0 {
        return;
    }
    if n == 1 && &(&hi - &lo) < width {
        out.push((lo, hi));
        return;
    }
    let mid = (&lo + &hi) / int(2);
    isolate(seq, lo, mid.clone(), width, out);
    isolate(seq, mid, hi, width, out);
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    let c = lo.ceil();
    if &c <= hi {
        // Pick the integer closest to zero when several fit.
        if lo.is_positive() {
            return c;
        }
        if hi.is_negative() {
            return hi.floor();
        }
        return Rat::zero();
    }
    let f = lo.floor();
    let inner = simplest_between(&(hi - &f).recip(), &(lo - &f).recip());
    f + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(c: i64, s: i64) -> LinParam {
        LinParam::new(int(c), int(s))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&RatMatrix::identity(2)).is_empty());
        assert_eq!(nullspace(&RatMatrix::zeros(2, 2)).len(), 2);
        let ns = nullspace(&RatMatrix::from_i64(&[&[1, 1]]));
        assert_eq!(ns, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = RatMatrix::from_i64(&[&[0, 2, 4, 1], &[0, 1, 2, 3], &[0, 3, 6, 4]]);
        assert_eq!(rank(&m), 2);
        for v in nullspace(&m) {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(parse_rat(" 4/-8 ").unwrap(), rat(-1, 2));
        assert!(matches!(parse_rat("1/0"), Err(ParseRatError::ZeroDenominator(_))));
        assert!(matches!(parse_rat("x"), Err(ParseRatError::Malformed(_))));
        assert!(matches!(parse_rat(""), Err(ParseRatError::Empty)));
        assert_eq!(fmt_rat(&rat(-3, 2)), "-3/2");
        assert_eq!(fmt_rat(&int(0)), "0");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn parametric_examples() {
        // single row (lambda - 1) on one unknown
        match solve_parametric(&[vec![lp(-1, 1)]], 1) {
            ParamSolution::Finite(r) => {
                assert_eq!(r.len(), 1);
                assert_eq!(r[0].lambda, int(1));
                assert_eq!(r[0].nullspace.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(solve_parametric(&[], 2), ParamSolution::All { .. }));
        assert!(matches!(
            solve_parametric(&[vec![lp(1, 0), lp(0, 1)]], 2),
            ParamSolution::All { .. }
        ));
    }

    #[test]
    fn parametric_quadratic_minor() {
        // det [[l, 1],[1, l]] = l^2 - 1 -> roots -1, 1
        let rows = vec![vec![lp(0, 1), lp(1, 0)], vec![lp(1, 0), lp(0, 1)]];
        let ParamSolution::Finite(r) = solve_parametric(&rows, 2) else { panic!() };
        let ls: Vec<Rat> = r.iter().map(|x| x.lambda.clone()).collect();
        assert_eq!(ls, vec![int(-1), int(1)]);
    }

    #[test]
    fn parametric_fractional_and_irrational() {
        // det [[2l - 1, 0],[0, 3l + 2]] -> 1/2 and -2/3
        let rows = vec![
            vec![lp(-1, 2), lp(0, 0)],
            vec![lp(0, 0), lp(2, 3)],
        ];
        let ParamSolution::Finite(r) = solve_parametric(&rows, 2) else { panic!() };
        let ls: Vec<Rat> = r.iter().map(|x| x.lambda.clone()).collect();
        assert_eq!(ls, vec![rat(-2, 3), rat(1, 2)]);
        // l^2 - 2 has no rational root
        let rows = vec![vec![lp(0, 1), lp(2, 0)], vec![lp(1, 0), lp(0, 1)]];
        assert_eq!(solve_parametric(&rows, 2), ParamSolution::Finite(vec![]));
    }

    #[test]
    fn parametric_common_root_needed() {
        // rows (l-1) and (l-2) on one unknown: no common root
        let rows = vec![vec![lp(-1, 1)], vec![lp(-2, 1)]];
        assert_eq!(solve_parametric(&rows, 1), ParamSolution::Finite(vec![]));
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(2, 5)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-7, 4), &rat(-3, 2)), rat(-3, 2));
        assert_eq!(simplest_between(&rat(-17, 10), &rat(-8, 5)), rat(-5, 3));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 2)), int(0));
    }

    #[test]
    fn span_builder() {
        let mut s: SpanBuilder<u32> = SpanBuilder::new();
        let v1: BTreeMap<u32, Rat> = [(0, int(1)), (2, int(3))].into_iter().collect();
        let v2: BTreeMap<u32, Rat> = [(0, int(2)), (2, int(6))].into_iter().collect();
        let v3: BTreeMap<u32, Rat> = [(1, int(1))].into_iter().collect();
        assert!(s.insert(&v1));
        assert!(!s.insert(&v2));
        assert!(s.insert(&v3));
        assert_eq!(s.dim(), 2);
        let sum: BTreeMap<u32, Rat> = [(0, int(1)), (1, int(5)), (2, int(3))].into_iter().collect();
        assert!(s.contains(&sum));
        assert!(!s.contains(&[(2, int(1))].into_iter().collect()));
    }
}
