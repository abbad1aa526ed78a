//! The Lie algebra sl(3, Q) in the basis adapted to the maximal parabolic
//! `p = m + a + n+` with `m = sl(2)`, `a = Q·H0~`, and abelian `n±`.
//!
//! Basis order, used by every other module:
//! `(N1+, N2+, N1-, N2-, H0~, E, F, H)` with `Nj+ = E_{1,j+1}`,
//! `Nj- = E_{j+1,1}`, `H0~ = diag(1, -1/2, -1/2)`, `E = E_{23}`, `F = E_{32}`,
//! `H = E_{22} - E_{33}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{int, rat, Rat};
use crate::polyweyl::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl3Error {
    #[error("block h must have determinant +1 or -1, found {0}")]
    BadDeterminant(String),
}

/// Traceless 3x3 rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GElt {
    m: [[Rat; 3]; 3],
}

/// Names of the fixed basis, in order.
pub const BASIS_NAMES: [&str; 8] = ["N1+", "N2+", "N1-", "N2-", "H0~", "E", "F", "H"];

fn zero3() -> [[Rat; 3]; 3] {
    std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()))
}

impl GElt {
    pub fn zero() -> Self {
        GElt { m: zero3() }
    }

    /// Panics if the trace is nonzero.
    pub fn from_matrix(m: [[Rat; 3]; 3]) -> Self {
        let tr = &m[0][0] + &m[1][1] + &m[2][2];
        assert!(tr.is_zero(), "sl(3) elements are traceless");
        GElt { m }
    }

    /// Matrix unit `E_{ij}` (1-based), `i != j`.
    pub fn unit(i: usize, j: usize) -> Self {
        assert!(i != j);
        let mut m = zero3();
        m[i - 1][j - 1] = Rat::one();
        GElt { m }
    }

    pub fn n_plus(j: usize) -> Self {
        Self::unit(1, j + 1)
    }

    pub fn n_minus(j: usize) -> Self {
        Self::unit(j + 1, 1)
    }

    pub fn h0() -> Self {
        let mut m = zero3();
        m[0][0] = int(1);
        m[1][1] = rat(-1, 2);
        m[2][2] = rat(-1, 2);
        GElt { m }
    }

    pub fn e() -> Self {
        Self::unit(2, 3)
    }

    pub fn f() -> Self {
        Self::unit(3, 2)
    }

    pub fn h() -> Self {
        let mut m = zero3();
        m[1][1] = int(1);
        m[2][2] = int(-1);
        GElt { m }
    }

    /// The basis `(N1+, N2+, N1-, N2-, H0~, E, F, H)`.
    pub fn basis() -> [GElt; 8] {
        [
            Self::n_plus(1),
            Self::n_plus(2),
            Self::n_minus(1),
            Self::n_minus(2),
            Self::h0(),
            Self::e(),
            Self::f(),
            Self::h(),
        ]
    }

    /// Coordinates in the fixed basis.
    pub fn coords(&self) -> [Rat; 8] {
        let p = decompose(self);
        [
            p.n_plus[0].clone(),
            p.n_plus[1].clone(),
            p.n_minus[0].clone(),
            p.n_minus[1].clone(),
            p.h0.clone(),
            p.e.clone(),
            p.f.clone(),
            p.h.clone(),
        ]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.m[i][j]
    }

    pub fn matrix(&self) -> &[[Rat; 3]; 3] {
        &self.m
    }

    pub fn trace(&self) -> Rat {
        &self.m[0][0] + &self.m[1][1] + &self.m[2][2]
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GElt { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] * c)) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(Zero::is_zero)
    }

    /// Plain matrix product (the result need not be traceless).
    pub fn matmul(&self, o: &GElt) -> [[Rat; 3]; 3] {
        mat_mul(&self.m, &o.m)
    }
}

pub(crate) fn mat_mul(a: &[[Rat; 3]; 3], b: &[[Rat; 3]; 3]) -> [[Rat; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

impl Add for &GElt {
    type Output = GElt;
    fn add(self, o: &GElt) -> GElt {
        GElt { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] + &o.m[i][j])) }
    }
}

impl Sub for &GElt {
    type Output = GElt;
    fn sub(self, o: &GElt) -> GElt {
        GElt { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] - &o.m[i][j])) }
    }
}

impl Neg for &GElt {
    type Output = GElt;
    fn neg(self) -> GElt {
        self.scale(&int(-1))
    }
}

impl fmt::Display for GElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `[X, Y] = XY - YX`.
pub fn bracket(x: &GElt, y: &GElt) -> GElt {
    let a = mat_mul(&x.m, &y.m);
    let b = mat_mul(&y.m, &x.m);
    GElt { m: std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] - &b[i][j])) }
}

/// Components of `X` in `g = n- + m + a + n+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GNParts {
    pub n_minus: [Rat; 2],
    pub h0: Rat,
    pub e: Rat,
    pub f: Rat,
    pub h: Rat,
    pub n_plus: [Rat; 2],
}

impl GNParts {
    /// The `m + a` part as a matrix.
    pub fn l_part(&self) -> GElt {
        &(&GElt::h0().scale(&self.h0) + &GElt::e().scale(&self.e))
            + &(&GElt::f().scale(&self.f) + &GElt::h().scale(&self.h))
    }

    pub fn recompose(&self) -> GElt {
        let nm = &GElt::n_minus(1).scale(&self.n_minus[0]) + &GElt::n_minus(2).scale(&self.n_minus[1]);
        let np = &GElt::n_plus(1).scale(&self.n_plus[0]) + &GElt::n_plus(2).scale(&self.n_plus[1]);
        &(&nm + &self.l_part()) + &np
    }
}

/// Gelfand-Naimark decomposition.
pub fn decompose(x: &GElt) -> GNParts {
    let m = &x.m;
    let h0 = m[0][0].clone();
    // lower block minus h0 * diag(-1/2, -1/2) is a traceless 2x2 block [[a, b], [c, -a]]
    let a = &m[1][1] + &h0 / int(2);
    GNParts {
        n_minus: [m[1][0].clone(), m[2][0].clone()],
        h0,
        e: m[1][2].clone(),
        f: m[2][1].clone(),
        h: a,
        n_plus: [m[0][1].clone(), m[0][2].clone()],
    }
}

/// 3x3 matrix with polynomial entries in `(x1, x2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyGElt {
    pub m: [[Poly; 3]; 3],
}

impl PolyGElt {
    pub fn constant(x: &GElt) -> Self {
        PolyGElt { m: std::array::from_fn(|i| std::array::from_fn(|j| Poly::constant(x.m[i][j].clone()))) }
    }

    pub fn eval(&self, x1: &Rat, x2: &Rat) -> GElt {
        GElt { m: std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].eval(x1, x2))) }
    }

    fn bracket(&self, o: &PolyGElt) -> PolyGElt {
        let prod = |a: &[[Poly; 3]; 3], b: &[[Poly; 3]; 3]| -> [[Poly; 3]; 3] {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| (0..3).fold(Poly::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
            })
        };
        let ab = prod(&self.m, &o.m);
        let ba = prod(&o.m, &self.m);
        PolyGElt { m: std::array::from_fn(|i| std::array::from_fn(|j| &ab[i][j] - &ba[i][j])) }
    }

    fn combine(&self, o: &PolyGElt, c: &Rat) -> PolyGElt {
        PolyGElt { m: std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] + &o.m[i][j].scale(c))) }
    }

    /// Gelfand-Naimark components, entrywise polynomial.
    pub fn n_minus(&self) -> [Poly; 2] {
        [self.m[1][0].clone(), self.m[2][0].clone()]
    }

    pub fn h0(&self) -> Poly {
        self.m[0][0].clone()
    }

    pub fn e(&self) -> Poly {
        self.m[1][2].clone()
    }

    pub fn f(&self) -> Poly {
        self.m[2][1].clone()
    }

    pub fn h(&self) -> Poly {
        &self.m[1][1] + &self.m[0][0].scale(&rat(1, 2))
    }
}

/// `Ad(exp(-x1 N1- - x2 N2-)) X` with `x` symbolic.
///
/// The series `X - [S,X] + 1/2 [S,[S,X]]` stops at order two since
/// `[S,[S,[S,X]]] = 0` for `S` in the abelian `n-`.
pub fn ad_conj_by_nbar(x: &GElt) -> PolyGElt {
    let mut s = PolyGElt::constant(&GElt::zero());
    s.m[1][0] = Poly::var(0);
    s.m[2][0] = Poly::var(1);
    let xp = PolyGElt::constant(x);
    let sx = s.bracket(&xp);
    let ssx = s.bracket(&sx);
    xp.combine(&sx, &int(-1)).combine(&ssx, &rat(1, 2))
}

/// `Ad(exp(-x1 N1- - x2 N2-)) X` at a rational point.
pub fn ad_conj_by_nbar_at(x: (&Rat, &Rat), elt: &GElt) -> GElt {
    ad_conj_by_nbar(elt).eval(x.0, x.1)
}

/// `diag(det(h)^{-1}, h)` with `h` in `SL^±(2, Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MGroupElt {
    h: [[Rat; 2]; 2],
    det_h: i8,
}

impl MGroupElt {
    pub fn new(h: [[Rat; 2]; 2]) -> Result<Self, Sl3Error> {
        let d = &h[0][0] * &h[1][1] - &h[0][1] * &h[1][0];
        let det_h = if d.is_one() {
            1
        } else if d == int(-1) {
            -1
        } else {
            return Err(Sl3Error::BadDeterminant(d.to_string()));
        };
        Ok(MGroupElt { h, det_h })
    }

    pub fn from_i64(h: [[i64; 2]; 2]) -> Result<Self, Sl3Error> {
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| int(h[i][j]))))
    }

    pub fn identity() -> Self {
        Self::from_i64([[1, 0], [0, 1]]).expect("identity has det 1")
    }

    pub fn h(&self) -> &[[Rat; 2]; 2] {
        &self.h
    }

    pub fn det_h(&self) -> i8 {
        self.det_h
    }

    pub fn h_inverse(&self) -> [[Rat; 2]; 2] {
        let d = int(self.det_h as i64);
        let h = &self.h;
        [[&h[1][1] / &d, -&h[0][1] / &d], [-&h[1][0] / &d, &h[0][0] / &d]]
    }

    /// The 3x3 matrix `diag(det h, h)` (det h = ±1 is its own inverse).
    pub fn matrix(&self) -> [[Rat; 3]; 3] {
        let mut g = zero3();
        g[0][0] = int(self.det_h as i64);
        for i in 0..2 {
            for j in 0..2 {
                g[i + 1][j + 1] = self.h[i][j].clone();
            }
        }
        g
    }

    pub fn inverse_matrix(&self) -> [[Rat; 3]; 3] {
        let mut g = zero3();
        g[0][0] = int(self.det_h as i64);
        let hi = self.h_inverse();
        for i in 0..2 {
            for j in 0..2 {
                g[i + 1][j + 1] = hi[i][j].clone();
            }
        }
        g
    }
}

/// Matrix of `Ad(g)` on `span(N1-, N2-)`: column `j` holds the coordinates of
/// `Ad(g) Nj-`. Computed by honest conjugation.
pub fn m_element_action_on_nminus(g: &MGroupElt) -> [[Rat; 2]; 2] {
    let gm = g.matrix();
    let gi = g.inverse_matrix();
    let mut out: [[Rat; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| Rat::zero()));
    for j in 0..2 {
        let n = GElt::n_minus(j + 1);
        let c = mat_mul(&mat_mul(&gm, &n.m), &gi);
        for i in 0..2 {
            out[i][j] = c[i + 1][0].clone();
        }
    }
    out
}

/// `trace(X Y)`.
pub fn trace_form(x: &GElt, y: &GElt) -> Rat {
    let p = mat_mul(&x.m, &y.m);
    &p[0][0] + &p[1][1] + &p[2][2]
}

impl Mul<&Rat> for &GElt {
    type Output = GElt;
    fn mul(self, c: &Rat) -> GElt {
        self.scale(c)
    }
}
