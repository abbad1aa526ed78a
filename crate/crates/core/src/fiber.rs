//! Fiber representations: `Pol^m(C^2)` and `S^m(C^2)` as sl(2)- and
//! `SL^±(2)`-modules, parities, Clebsch-Gordan multiplicities, and the
//! invariant tensors `psi` in `S^k(n-) ⊗ S^m ⊗ Pol^l`.
//!
//! Bases: `Pol^m` uses `u1^(m-j) u2^j`, `S^m` uses `e1^(m-j) e2^j`, and
//! `S^k(n-)` uses `N1-^(k-r) N2-^r`, always indexed by `j` (resp. `r`).
//! `Pol^m` is the contragredient of `S^m`: `E = -u2 d/du1`, `F = -u1 d/du2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{binom_q, int, Rat};
use crate::polyweyl::FiberMap;
use crate::sl3::{m_element_action_on_nminus, MGroupElt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiberError {
    #[error("d = {d} out of range 0..={max} for (m, k) = ({m}, {k})")]
    DOutOfRange { m: u32, k: u32, d: u32, max: u32 },
    #[error("parity must be '+' or '-', found {0:?}")]
    BadParity(String),
}

/// Element of `Z/2`, written multiplicatively as `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    /// The parity of an integer (`+` for even).
    pub fn of(n: i64) -> Self {
        if n.rem_euclid(2) == 0 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }

    pub fn mul(self, o: Parity) -> Parity {
        if self == o {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    /// `sgn(d)^self` for `d = ±1`.
    pub fn character(self, d: i8) -> i64 {
        if self == Parity::Minus && d < 0 {
            -1
        } else {
            1
        }
    }
}

/// `alpha + k`, i.e. `alpha · (-1)^k`.
pub fn parity_shift(alpha: Parity, k: u32) -> Parity {
    alpha.mul(Parity::of(k as i64))
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        })
    }
}

impl FromStr for Parity {
    type Err = FiberError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "+1" | "0" => Ok(Parity::Plus),
            "-" | "-1" | "1" => Ok(Parity::Minus),
            other => Err(FiberError::BadParity(other.to_string())),
        }
    }
}

impl Serialize for Parity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Element of `Pol^m` (or `S^m`) by its coefficients in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberVec {
    pub m: u32,
    pub coeffs: Vec<Rat>,
}

impl FiberVec {
    pub fn zero(m: u32) -> Self {
        FiberVec { m, coeffs: vec![Rat::zero(); m as usize + 1] }
    }

    pub fn basis(m: u32, j: usize) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[j] = Rat::one();
        v
    }
}

/// Matrices of `E, F, H` on a fiber of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Action {
    pub m: u32,
    pub e: FiberMap,
    pub f: FiberMap,
    pub h: FiberMap,
}

impl Sl2Action {
    /// Contragredient action on `Pol^m`: `E = -u2 d/du1`, `F = -u1 d/du2`,
    /// `H u^(m-j,j) = (2j - m) u^(m-j,j)`.
    pub fn pol(m: u32) -> Self {
        let (mut e, mut f, mut h) = (FiberMap::zero(m, m), FiberMap::zero(m, m), FiberMap::zero(m, m));
        for j in 0..=m as usize {
            let jj = j as i64;
            let mm = m as i64;
            if j < m as usize {
                e.add_entry(j + 1, j, &int(-(mm - jj)));
            }
            if j > 0 {
                f.add_entry(j - 1, j, &int(-jj));
            }
            h.add_entry(j, j, &int(2 * jj - mm));
        }
        Sl2Action { m, e, f, h }
    }

    /// Standard action on `S^m`: `E = e1 d/de2`, `F = e2 d/de1`,
    /// `H e^(m-j,j) = (m - 2j) e^(m-j,j)`.
    pub fn sym(m: u32) -> Self {
        let (mut e, mut f, mut h) = (FiberMap::zero(m, m), FiberMap::zero(m, m), FiberMap::zero(m, m));
        for j in 0..=m as usize {
            let jj = j as i64;
            let mm = m as i64;
            if j > 0 {
                e.add_entry(j - 1, j, &int(jj));
            }
            if j < m as usize {
                f.add_entry(j + 1, j, &int(mm - jj));
            }
            h.add_entry(j, j, &int(mm - 2 * jj));
        }
        Sl2Action { m, e, f, h }
    }

    /// `aE + bF + cH`.
    pub fn combination(&self, a: &Rat, b: &Rat, c: &Rat) -> FiberMap {
        self.e.scale(a).add(&self.f.scale(b)).add(&self.h.scale(c))
    }

    /// Checks `[E,F] = H`, `[H,E] = 2E`, `[H,F] = -2F`.
    pub fn satisfies_relations(&self) -> bool {
        let br = |a: &FiberMap, b: &FiberMap| a.compose(b).add(&b.compose(a).scale(&int(-1)));
        br(&self.e, &self.f) == self.h
            && br(&self.h, &self.e) == self.e.scale(&int(2))
            && br(&self.h, &self.f) == self.f.scale(&int(-2))
    }
}

/// Multiplicity of `S^l` in `S^k ⊗ S^m` (0 or 1).
pub fn clebsch_gordan_multiplicity(k: u32, m: u32, l: u32) -> u32 {
    let total = m + k;
    if l > total || (total - l) % 2 != 0 {
        return 0;
    }
    let d = (total - l) / 2;
    (d <= k.min(m)) as u32
}

/// Tensor in `S^k(n-) ⊗ S^m ⊗ Pol^l`, keyed by `(r, j, p)` for the basis
/// element `N1^(k-r) N2^r ⊗ e1^(m-j) e2^j ⊗ ε1^(l-p) ε2^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantTensor {
    pub k: u32,
    pub m: u32,
    pub l: u32,
    pub coeffs: BTreeMap<(u32, u32, u32), Rat>,
}

impl InvariantTensor {
    pub fn zero(k: u32, m: u32, l: u32) -> Self {
        InvariantTensor { k, m, l, coeffs: BTreeMap::new() }
    }

    pub fn add(&mut self, key: (u32, u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, r: u32, j: u32, p: u32) -> Rat {
        self.coeffs.get(&(r, j, p)).cloned().unwrap_or_else(Rat::zero)
    }
}

/// `(N1 ε1 + N2 ε2)^(k-d) (e1 ε1 + e2 ε2)^(m-d) (N1 e2 - N2 e1)^d` expanded.
pub fn build_psi(m: u32, k: u32, d: u32) -> Result<InvariantTensor, FiberError> {
    let max = k.min(m);
    if d > max {
        return Err(FiberError::DOutOfRange { m, k, d, max });
    }
    let l = m + k - 2 * d;
    let mut t = InvariantTensor::zero(k, m, l);
    for a in 0..=(k - d) {
        for b in 0..=(m - d) {
            for c in 0..=d {
                let coeff = binom_q(k - d, a) * binom_q(m - d, b) * binom_q(d, c);
                let coeff = if c % 2 == 1 { -coeff } else { coeff };
                // N2 from factors 1 and 3, e2 from factors 2 and 3, ε2 from factors 1 and 2
                t.add((a + c, b + d - c, a + b), coeff);
            }
        }
    }
    Ok(t)
}

/// Matrix of one sl(2) generator on the three tensor slots.
fn slot_actions(t: &InvariantTensor) -> [(FiberMap, FiberMap, FiberMap); 3] {
    let nk = Sl2Action::sym(t.k);
    let sm = Sl2Action::sym(t.m);
    let pl = Sl2Action::pol(t.l);
    [
        (nk.e.clone(), sm.e.clone(), pl.e.clone()),
        (nk.f.clone(), sm.f.clone(), pl.f.clone()),
        (nk.h.clone(), sm.h.clone(), pl.h.clone()),
    ]
}

/// Applies `X ⊗ 1 ⊗ 1 + 1 ⊗ X ⊗ 1 + 1 ⊗ 1 ⊗ X` for given slot matrices.
pub fn tensor_action(t: &InvariantTensor, x: &(FiberMap, FiberMap, FiberMap)) -> InvariantTensor {
    let mut out = InvariantTensor::zero(t.k, t.m, t.l);
    for (&(r, j, p), c) in &t.coeffs {
        for (i, row) in x.0.matrix().iter().enumerate() {
            out.add((i as u32, j, p), &row[r as usize] * c);
        }
        for (i, row) in x.1.matrix().iter().enumerate() {
            out.add((r, i as u32, p), &row[j as usize] * c);
        }
        for (i, row) in x.2.matrix().iter().enumerate() {
            out.add((r, j, i as u32), &row[p as usize] * c);
        }
    }
    out
}

/// True iff the diagonal sl(2)-action kills `t` (adjoint ≅ standard on
/// `n-`, standard on `S^m`, contragredient on `Pol^l`).
pub fn check_sl2_invariance(t: &InvariantTensor) -> bool {
    slot_actions(t).iter().all(|x| tensor_action(t, x).is_zero())
}

/// Matrix of `S^k` of the linear substitution `y_a = sum_b rows[a][b] z_b` on
/// the monomials `y1^(k-r) y2^r`, in the basis `z1^(k-r) z2^r`; column `r` is
/// the image of basis element `r`.
pub fn substitution_power(rows: &[[Rat; 2]; 2], k: u32) -> Vec<Vec<Rat>> {
    // polynomial in z as dense coefficient vector indexed by power of z2
    let lin = |a: usize| -> Vec<Rat> { vec![rows[a][0].clone(), rows[a][1].clone()] };
    let mul = |p: &[Rat], q: &[Rat]| -> Vec<Rat> {
        let mut out = vec![Rat::zero(); p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let mut m = vec![vec![Rat::zero(); k as usize + 1]; k as usize + 1];
    for r in 0..=k {
        let mut p = vec![Rat::one()];
        for _ in 0..(k - r) {
            p = mul(&p, &lin(0));
        }
        for _ in 0..r {
            p = mul(&p, &lin(1));
        }
        for (i, c) in p.into_iter().enumerate() {
            m[i][r as usize] = c;
        }
    }
    m
}

/// Action of `h` on `S^k(C^2)` (standard, `h e_j = sum_i h_ij e_i`).
pub fn sym_power_matrix(h: &[[Rat; 2]; 2], k: u32) -> Vec<Vec<Rat>> {
    let ht = [[h[0][0].clone(), h[1][0].clone()], [h[0][1].clone(), h[1][1].clone()]];
    substitution_power(&ht, k)
}

/// Action of `g = diag(det h, h)` on `Pol^m`: `(g·f)(u) = f(h^{-1} u)`.
pub fn pol_group_matrix(g: &MGroupElt, m: u32) -> FiberMap {
    let hi = g.h_inverse();
    FiberMap::from_matrix(m, m, substitution_power(&hi, m))
}

/// Action of `Ad(g)` on `S^k(n-)`: the sign `sgn(det h)^k` and the matrix
/// of `sym^k(h)`. Their product is the matrix of `S^k(Ad(g))`.
pub fn fiber_character_of_sk_nminus(g: &MGroupElt, k: u32) -> (Parity, Vec<Vec<Rat>>) {
    let sign = if g.det_h() < 0 { Parity::of(k as i64) } else { Parity::Plus };
    (sign, sym_power_matrix(g.h(), k))
}

/// `S^k` of the conjugation matrix of `Ad(g)` on `n-`, computed directly.
pub fn sk_of_ad_on_nminus(g: &MGroupElt, k: u32) -> Vec<Vec<Rat>> {
    sym_power_matrix(&m_element_action_on_nminus(g), k)
}
