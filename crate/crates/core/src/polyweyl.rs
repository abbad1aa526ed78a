//! Polynomials in `(x1, x2)`, fiber maps, and the Weyl algebra with
//! matrix-valued coefficients.
//!
//! A [`WeylOp`] is stored in normal order (every `x` to the left of every
//! `d/dx`), so two operators are equal exactly when their term maps agree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{self, binomial, fmt_rat, int, Rat, RatMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("fiber degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
}

// ---------------------------------------------------------------------------
// Poly

/// Sparse polynomial over Q in `x1, x2`; key `(a, b)` is `x1^a x2^b`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::monomial(0, 0, c)
    }

    pub fn monomial(a: u32, b: u32, c: Rat) -> Self {
        let mut p = Poly::zero();
        p.add_term(a, b, c);
        p
    }

    /// The coordinate `x1` (`i = 0`) or `x2` (`i = 1`).
    pub fn var(i: usize) -> Self {
        match i {
            0 => Poly::monomial(1, 0, Rat::one()),
            1 => Poly::monomial(0, 1, Rat::one()),
            _ => panic!("only two variables"),
        }
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.terms
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly {
            terms: self.terms.iter().filter(|((a, b), _)| a + b == d).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// `d^da/dx1^da d^db/dx2^db`.
    pub fn deriv(&self, da: u32, db: u32) -> Poly {
        let mut out = Poly::zero();
        for (&(a, b), c) in &self.terms {
            if a >= da && b >= db {
                let f = falling(a, da) * falling(b, db);
                out.add_term(a - da, b - db, c * Rat::from_integer(f));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x1: &Rat, x2: &Rat) -> Rat {
        self.terms.iter().fold(Rat::zero(), |acc, (&(a, b), c)| {
            acc + c * pow_rat(x1, a) * pow_rat(x2, b)
        })
    }

    /// `f(M x)` for a 2x2 matrix `M`.
    pub fn linear_substitute(&self, m: &[[Rat; 2]; 2]) -> Poly {
        let y1 = &Poly::var(0).scale(&m[0][0]) + &Poly::var(1).scale(&m[0][1]);
        let y2 = &Poly::var(0).scale(&m[1][0]) + &Poly::var(1).scale(&m[1][1]);
        let mut out = Poly::zero();
        for (&(a, b), c) in &self.terms {
            out = &out + &(&y1.pow(a) * &y2.pow(b)).scale(c);
        }
        out
    }
}

fn pow_rat(x: &Rat, n: u32) -> Rat {
    (0..n).fold(Rat::one(), |acc, _| acc * x)
}

/// `n (n-1) ... (n-k+1)`.
pub fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    ((n - k + 1)..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(a, b), c) in &o.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (&(a, b), c) in &o.terms {
            out.add_term(a, b, -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(a2, b2), c2) in &o.terms {
                out.add_term(a + a2, b + b2, c * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&int(-1))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = monomial_text("x", a, b);
            match (mono.is_empty(), c.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "({c})*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `x1^a*x2^b` style text, empty for the unit monomial.
pub fn monomial_text(var: &str, a: u32, b: u32) -> String {
    let mut parts = Vec::new();
    for (i, e) in [(1, a), (2, b)] {
        match e {
            0 => {}
            1 => parts.push(format!("{var}{i}")),
            _ => parts.push(format!("{var}{i}^{e}")),
        }
    }
    parts.join("*")
}

// ---------------------------------------------------------------------------
// FiberMap

/// Linear map `Pol^src -> Pol^tgt` as a `(tgt+1) x (src+1)` matrix in the
/// monomial basis `u1^(m-j) u2^j`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiberMap {
    src: u32,
    tgt: u32,
    mat: Vec<Vec<Rat>>,
}

impl FiberMap {
    pub fn zero(src: u32, tgt: u32) -> Self {
        FiberMap { src, tgt, mat: vec![vec![Rat::zero(); src as usize + 1]; tgt as usize + 1] }
    }

    pub fn identity(m: u32) -> Self {
        Self::scalar(m, Rat::one())
    }

    pub fn scalar(m: u32, c: Rat) -> Self {
        let mut f = Self::zero(m, m);
        for i in 0..=m as usize {
            f.mat[i][i] = c.clone();
        }
        f
    }

    pub fn from_matrix(src: u32, tgt: u32, mat: Vec<Vec<Rat>>) -> Self {
        assert_eq!(mat.len(), tgt as usize + 1);
        assert!(mat.iter().all(|r| r.len() == src as usize + 1));
        FiberMap { src, tgt, mat }
    }

    pub fn src(&self) -> u32 {
        self.src
    }

    pub fn tgt(&self) -> u32 {
        self.tgt
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.mat[i][j]
    }

    pub fn add_entry(&mut self, i: usize, j: usize, c: &Rat) {
        self.mat[i][j] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().flatten().all(|c| c.is_zero())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FiberMap) -> FiberMap {
        assert_eq!(self.src, other.tgt, "fiber maps do not compose");
        let mut out = FiberMap::zero(other.src, self.tgt);
        for i in 0..=self.tgt as usize {
            for k in 0..=self.src as usize {
                if self.mat[i][k].is_zero() {
                    continue;
                }
                for j in 0..=other.src as usize {
                    if !other.mat[k][j].is_zero() {
                        out.mat[i][j] += &self.mat[i][k] * &other.mat[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> FiberMap {
        FiberMap {
            src: self.src,
            tgt: self.tgt,
            mat: self.mat.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    pub fn add(&self, o: &FiberMap) -> FiberMap {
        assert_eq!((self.src, self.tgt), (o.src, o.tgt));
        FiberMap {
            src: self.src,
            tgt: self.tgt,
            mat: self.mat.iter().zip(&o.mat).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect(),
        }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.src as usize + 1);
        self.mat.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn to_rat_matrix(&self) -> RatMatrix {
        RatMatrix::from_dense(self.src as usize + 1, &self.mat)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.mat.iter().map(|r| r.iter().map(fmt_rat).collect()).collect()
    }
}

// ---------------------------------------------------------------------------
// Sections

/// A polynomial section `sum_j f_j(x) u1^(m-j) u2^j` of the fiber `Pol^m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Section {
    m: u32,
    comps: Vec<Poly>,
}

impl Section {
    pub fn zero(m: u32) -> Self {
        Section { m, comps: vec![Poly::zero(); m as usize + 1] }
    }

    pub fn new(m: u32, comps: Vec<Poly>) -> Self {
        assert_eq!(comps.len(), m as usize + 1, "section needs m+1 components");
        Section { m, comps }
    }

    /// The section `p(x) ⊗ u1^(m-j) u2^j`.
    pub fn basis(m: u32, j: usize, p: Poly) -> Self {
        let mut s = Section::zero(m);
        s.comps[j] = p;
        s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Section {
        Section { m: self.m, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn add(&self, o: &Section) -> Section {
        assert_eq!(self.m, o.m);
        Section { m: self.m, comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Section) -> Section {
        self.add(&o.scale(&int(-1)))
    }

    pub fn homogeneous_part(&self, d: u32) -> Section {
        Section { m: self.m, comps: self.comps.iter().map(|p| p.homogeneous_part(d)).collect() }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(Poly::total_degree).max()
    }

    /// Coordinates keyed by `(component, a, b)`.
    pub fn coords(&self) -> BTreeMap<(usize, u32, u32), Rat> {
        let mut out = BTreeMap::new();
        for (j, p) in self.comps.iter().enumerate() {
            for (&(a, b), c) in p.terms() {
                out.insert((j, a, b), c.clone());
            }
        }
        out
    }

    /// Applies a fiber map pointwise.
    pub fn map_fiber(&self, f: &FiberMap) -> Section {
        assert_eq!(f.src(), self.m);
        let mut out = Section::zero(f.tgt());
        for (i, row) in f.matrix().iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.comps[i] = &out.comps[i] + &self.comps[j].scale(c);
                }
            }
        }
        out
    }

    /// Substitutes `x -> M x` in every component.
    pub fn linear_substitute(&self, m: &[[Rat; 2]; 2]) -> Section {
        Section { m: self.m, comps: self.comps.iter().map(|p| p.linear_substitute(m)).collect() }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, p) in self.comps.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let u = monomial_text("u", self.m - j as u32, j as u32);
            if u.is_empty() {
                write!(f, "({p})")?;
            } else {
                write!(f, "({p})*{u}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// WeylOp

/// Key `(xa, xb, da, db)` for the normal-ordered monomial
/// `x1^xa x2^xb d1^da d2^db`.
pub type WeylKey = (u32, u32, u32, u32);

/// A differential operator `Pol^src`-sections to `Pol^tgt`-sections with
/// polynomial coefficients, stored in normal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOp {
    src: u32,
    tgt: u32,
    terms: BTreeMap<WeylKey, FiberMap>,
}

#[derive(Serialize)]
struct TermJson {
    x: [u32; 2],
    d: [u32; 2],
    matrix: Vec<Vec<String>>,
}

impl WeylOp {
    pub fn zero(src: u32, tgt: u32) -> Self {
        WeylOp { src, tgt, terms: BTreeMap::new() }
    }

    pub fn identity(m: u32) -> Self {
        Self::term((0, 0, 0, 0), FiberMap::identity(m))
    }

    pub fn scalar(m: u32, c: Rat) -> Self {
        Self::term((0, 0, 0, 0), FiberMap::scalar(m, c))
    }

    pub fn term(key: WeylKey, f: FiberMap) -> Self {
        let mut op = WeylOp::zero(f.src(), f.tgt());
        op.add_term(key, &f);
        op
    }

    /// `d/dx_i` acting componentwise on `Pol^m` sections.
    pub fn partial(m: u32, i: usize) -> Self {
        let key = if i == 0 { (0, 0, 1, 0) } else { (0, 0, 0, 1) };
        Self::term(key, FiberMap::identity(m))
    }

    /// Multiplication by `p(x)` composed with the fiber map `f`.
    pub fn multiplication(p: &Poly, f: &FiberMap) -> Self {
        let mut op = WeylOp::zero(f.src(), f.tgt());
        for (&(a, b), c) in p.terms() {
            op.add_term((a, b, 0, 0), &f.scale(c));
        }
        op
    }

    pub fn src(&self) -> u32 {
        self.src
    }

    pub fn tgt(&self) -> u32 {
        self.tgt
    }

    pub fn terms(&self) -> &BTreeMap<WeylKey, FiberMap> {
        &self.terms
    }

    pub fn add_term(&mut self, key: WeylKey, f: &FiberMap) {
        assert_eq!((f.src(), f.tgt()), (self.src, self.tgt), "fiber map has wrong shape");
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&key) {
            Some(old) => old.add(f),
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> WeylOp {
        let mut out = WeylOp::zero(self.src, self.tgt);
        for (k, f) in &self.terms {
            out.add_term(*k, &f.scale(c));
        }
        out
    }

    pub fn add(&self, o: &WeylOp) -> WeylOp {
        assert_eq!((self.src, self.tgt), (o.src, o.tgt));
        let mut out = self.clone();
        for (k, f) in &o.terms {
            out.add_term(*k, f);
        }
        out
    }

    pub fn sub(&self, o: &WeylOp) -> WeylOp {
        self.add(&o.scale(&int(-1)))
    }

    /// Post-composes every coefficient with a fiber map `g`.
    pub fn then_fiber(&self, g: &FiberMap) -> WeylOp {
        let mut out = WeylOp::zero(self.src, g.tgt());
        for (k, f) in &self.terms {
            out.add_term(*k, &g.compose(f));
        }
        out
    }

    /// True when no term carries a positive power of `x`.
    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.keys().all(|&(a, b, _, _)| a == 0 && b == 0)
    }

    /// Highest total derivative order, `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, _, c, d)| c + d).max()
    }

    /// Normal-ordered product `self · other` (apply `other` first).
    pub fn weyl_mul(&self, other: &WeylOp) -> Result<WeylOp, WeylError> {
        if self.src != other.tgt {
            return Err(WeylError::DegreeMismatch { expected: self.src, found: other.tgt });
        }
        let mut out = WeylOp::zero(other.src, self.tgt);
        for (&(a1, a2, b1, b2), f) in &self.terms {
            for (&(c1, c2, d1, d2), g) in &other.terms {
                let fg = f.compose(g);
                // d^b x^c = sum_i binom(b,i) c!/(c-i)! x^(c-i) d^(b-i), per variable
                for i1 in 0..=b1.min(c1) {
                    let w1 = binomial(b1, i1) * falling(c1, i1);
                    for i2 in 0..=b2.min(c2) {
                        let w2 = binomial(b2, i2) * falling(c2, i2);
                        let w = Rat::from_integer(&w1 * &w2);
                        let key = (a1 + c1 - i1, a2 + c2 - i2, b1 - i1 + d1, b2 - i2 + d2);
                        out.add_term(key, &fg.scale(&w));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[self, other]` for endomorphisms of the same fiber degree.
    pub fn commutator(&self, other: &WeylOp) -> Result<WeylOp, WeylError> {
        Ok(self.weyl_mul(other)?.sub(&other.weyl_mul(self)?))
    }

    pub fn apply(&self, s: &Section) -> Result<Section, WeylError> {
        if s.m() != self.src {
            return Err(WeylError::DegreeMismatch { expected: self.src, found: s.m() });
        }
        let mut out = Section::zero(self.tgt);
        for (&(xa, xb, da, db), f) in &self.terms {
            let derived = Section::new(s.m(), s.comps().iter().map(|p| p.deriv(da, db)).collect());
            if derived.is_zero() {
                continue;
            }
            let xm = Poly::monomial(xa, xb, Rat::one());
            let mapped = derived.map_fiber(f);
            let shifted = Section::new(self.tgt, mapped.comps().iter().map(|p| &xm * p).collect());
            out = out.add(&shifted);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(&(xa, xb, da, db), f)| TermJson { x: [xa, xb], d: [da, db], matrix: f.to_strings() })
            .collect();
        serde_json::json!({ "src": self.src, "tgt": self.tgt, "terms": terms })
    }
}

impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(xa, xb, da, db), fm)) in self.terms.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            let x = monomial_text("x", xa, xb);
            let d = monomial_text("∂", da, db);
            let head = match (x.is_empty(), d.is_empty()) {
                (true, true) => "1".to_string(),
                (false, true) => x,
                (true, false) => d,
                (false, false) => format!("{x}*{d}"),
            };
            let rows: Vec<String> = fm.to_strings().iter().map(|r| format!("[{}]", r.join(", "))).collect();
            write!(f, "{head} ⊗ [{}]", rows.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix of a constant-coefficient-friendly operator on the sections that
/// are homogeneous of degree `d` in `x`, together with its rank and kernel.
///
/// The columns are the basis sections `x1^(d-a) x2^a ⊗ u1^(m-j) u2^j`,
/// ordered by `j` then `a`.
pub fn rank_on_degree(op: &WeylOp, d: u32) -> (usize, Vec<Section>) {
    let m = op.src();
    let basis: Vec<Section> = (0..=m as usize)
        .flat_map(|j| (0..=d).map(move |a| Section::basis(m, j, Poly::monomial(d - a, a, Rat::one()))))
        .collect();
    let images: Vec<Section> = basis.iter().map(|s| op.apply(s).expect("degrees match by construction")).collect();
    let mut row_index: BTreeMap<(usize, u32, u32), usize> = BTreeMap::new();
    for img in &images {
        for key in img.coords().into_keys() {
            let n = row_index.len();
            row_index.entry(key).or_insert(n);
        }
    }
    let mut mat = RatMatrix::zeros(row_index.len(), basis.len());
    for (col, img) in images.iter().enumerate() {
        for (key, c) in img.coords() {
            mat.set(row_index[&key], col, c);
        }
    }
    let rank = exactalg::rank(&mat);
    let kernel = exactalg::nullspace(&mat)
        .into_iter()
        .map(|v| {
            v.iter().zip(&basis).fold(Section::zero(m), |acc, (c, s)| if c.is_zero() { acc } else { acc.add(&s.scale(c)) })
        })
        .collect();
    (rank, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn x(i: usize) -> WeylOp {
        WeylOp::multiplication(&Poly::var(i), &FiberMap::identity(0))
    }

    #[test]
    fn canonical_commutation() {
        let d1 = WeylOp::partial(0, 0);
        let prod = d1.weyl_mul(&x(0)).unwrap();
        let expect = x(0).weyl_mul(&d1).unwrap().add(&WeylOp::identity(0));
        assert_eq!(prod, expect);
        assert!(d1.weyl_mul(&x(1)).unwrap().sub(&x(1).weyl_mul(&d1).unwrap()).is_zero());
    }

    #[test]
    fn binomial_expansion_of_square() {
        // (d1 + d2)^2 = d1^2 + 2 d1 d2 + d2^2
        let s = WeylOp::partial(0, 0).add(&WeylOp::partial(0, 1));
        let sq = s.weyl_mul(&s).unwrap();
        assert_eq!(sq.terms().len(), 3);
        assert_eq!(sq.terms()[&(0, 0, 1, 1)], FiberMap::scalar(0, int(2)));
    }

    #[test]
    fn identity_is_neutral() {
        let a = x(0).weyl_mul(&WeylOp::partial(0, 1)).unwrap();
        assert_eq!(a.weyl_mul(&WeylOp::identity(0)).unwrap(), a);
        assert_eq!(WeylOp::identity(0).weyl_mul(&a).unwrap(), a);
    }

    #[test]
    fn apply_examples() {
        let f = Section::new(0, vec![Poly::monomial(2, 0, Rat::one())]);
        assert_eq!(WeylOp::identity(0).apply(&f).unwrap(), f);
        let g = WeylOp::partial(0, 0).apply(&f).unwrap();
        assert_eq!(g.comps()[0], Poly::monomial(1, 0, int(2)));
    }

    #[test]
    fn gradient_as_fiber_operator() {
        // d1 ⊗ (1 -> slot 0) + d2 ⊗ (1 -> slot 1): Pol^0 -> Pol^1
        let mut grad = WeylOp::zero(0, 1);
        let mut e0 = FiberMap::zero(0, 1);
        e0.add_entry(0, 0, &Rat::one());
        let mut e1 = FiberMap::zero(0, 1);
        e1.add_entry(1, 0, &Rat::one());
        grad.add_term((0, 0, 1, 0), &e0);
        grad.add_term((0, 0, 0, 1), &e1);
        let f = Section::new(0, vec![&Poly::monomial(2, 1, Rat::one()) + &Poly::monomial(0, 3, rat(1, 3))]);
        let g = grad.apply(&f).unwrap();
        assert_eq!(g.comps()[0], Poly::monomial(1, 1, int(2)));
        assert_eq!(g.comps()[1], &Poly::monomial(2, 0, Rat::one()) + &Poly::monomial(0, 2, Rat::one()));

        let (r0, k0) = rank_on_degree(&grad, 0);
        assert_eq!((r0, k0.len()), (0, 1));
        for d in 1..5 {
            let (r, k) = rank_on_degree(&grad, d);
            assert_eq!(r, d as usize + 1);
            assert!(k.is_empty());
        }
        assert_eq!(rank_on_degree(&WeylOp::zero(1, 2), 3).0, 0);
    }

    #[test]
    fn degree_mismatch_errors() {
        let a = WeylOp::identity(1);
        let b = WeylOp::identity(2);
        assert!(matches!(a.weyl_mul(&b), Err(WeylError::DegreeMismatch { .. })));
        assert!(a.apply(&Section::zero(0)).is_err());
    }

    #[test]
    fn poly_ops() {
        let p = &Poly::var(0) + &Poly::var(1);
        let sq = p.pow(2);
        assert_eq!(sq.coeff(1, 1), int(2));
        assert_eq!(sq.deriv(1, 0), (&Poly::var(0) + &Poly::var(1)).scale(&int(2)));
        assert_eq!(sq.eval(&int(1), &int(2)), int(9));
        let swap = [[int(0), int(1)], [int(1), int(0)]];
        assert_eq!(Poly::var(0).linear_substitute(&swap), Poly::var(1));
        assert_eq!(format!("{}", Poly::monomial(2, 1, rat(-3, 2))), "(-3/2)*x1^2*x2");
    }
}
