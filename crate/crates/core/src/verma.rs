//! Generalized Verma modules `M(sym^m, μ) = U(g) ⊗_{U(p)} (S^m ⊠ C_μ)`,
//! realized on `S(n-) ⊗ S^m` via PBW, with the full g-action.
//!
//! Modules are labelled by their inducing weight `μ` (the eigenvalue of
//! `H0~` on `1 ⊗ v`). A hom dual to an operator `I(m, λ) -> I(l, ν)` runs
//! `M(sym^l, -ν) -> M(sym^m, -λ)`; the sign flip happens only in
//! [`inducing_weight`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::classify::{cartan_lambda, cartan_nu, prv_lambda, prv_nu};
use crate::exactalg::{
    binom_q, fact_q, fmt_rat, int, nullspace, rat, solve_parametric, LinParam, ParamSolution, Rat, RatMatrix,
};
use crate::fiber::{build_psi, parity_shift, Parity, Sl2Action};
use crate::polyweyl::monomial_text;
use crate::sl3::{bracket, decompose, GElt, GNParts};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VermaError {
    #[error("PRV hom needs m >= k, got m = {m}, k = {k}")]
    PrvRange { m: u32, k: u32 },
    #[error("homs do not compose: {0}")]
    Mismatch(String),
}

/// Inducing weight of the Verma module dual to `I(m, λ)`: `μ = -λ`.
pub fn inducing_weight(ido_lambda: &Rat) -> Rat {
    -ido_lambda
}

/// Key `(a, b, j)` for `N1-^a N2-^b ⊗ e1^(m-j) e2^j`.
pub type VKey = (u32, u32, u32);

/// Element of `S(n-) ⊗ S^m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VermaVector {
    pub m: u32,
    terms: BTreeMap<VKey, Rat>,
}

impl VermaVector {
    pub fn zero(m: u32) -> Self {
        VermaVector { m, terms: BTreeMap::new() }
    }

    pub fn basis(m: u32, a: u32, b: u32, j: u32) -> Self {
        let mut v = Self::zero(m);
        v.add_term((a, b, j), Rat::one());
        v
    }

    pub fn add_term(&mut self, key: VKey, c: Rat) {
        assert!(key.2 <= self.m, "fiber index out of range");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> &BTreeMap<VKey, Rat> {
        &self.terms
    }

    pub fn coeff(&self, key: VKey) -> Rat {
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.m);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn add(&self, o: &VermaVector) -> Self {
        assert_eq!(self.m, o.m);
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v.clone());
        }
        out
    }

    pub fn sub(&self, o: &VermaVector) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    /// Left multiplication by `N1-^a N2-^b`.
    pub fn mul_nminus(&self, a: u32, b: u32) -> Self {
        VermaVector { m: self.m, terms: self.terms.iter().map(|(&(x, y, j), c)| ((x + a, y + b, j), c.clone())).collect() }
    }

    /// The set of `n-`-degrees occurring.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|(a, b, _)| a + b).collect();
        d.sort();
        d.dedup();
        d
    }
}

impl fmt::Display for VermaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b, j), c)| {
                let n = monomial_text("N", a, b);
                let e = monomial_text("e", self.m - j, j);
                let n = if n.is_empty() { "1".into() } else { n };
                let e = if e.is_empty() { "1".into() } else { e };
                format!("({c}) {n} ⊗ {e}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Action of an element of `l = m + a` given by its components. Returns
/// `(A, B)` with result `A + μ B`.
fn act_l(p: &GNParts, w: &VermaVector) -> (VermaVector, VermaVector) {
    let m = w.m;
    let mut a_part = VermaVector::zero(m);
    let mut b_part = VermaVector::zero(m);
    let half3 = rat(3, 2);
    for (&(a, b, j), c) in &w.terms {
        // a-part: ad(H0~) = -3/2 on each n- factor, plus μ on the fiber
        if !p.h0.is_zero() {
            a_part.add_term((a, b, j), -&half3 * int((a + b) as i64) * &p.h0 * c);
            b_part.add_term((a, b, j), &p.h0 * c);
        }
        // m-part: derivation on N-monomial (standard action) + fiber action
        if !p.e.is_zero() {
            let ce = &p.e * c;
            if b > 0 {
                a_part.add_term((a + 1, b - 1, j), int(b as i64) * &ce);
            }
            if j > 0 {
                a_part.add_term((a, b, j - 1), int(j as i64) * &ce);
            }
        }
        if !p.f.is_zero() {
            let cf = &p.f * c;
            if a > 0 {
                a_part.add_term((a - 1, b + 1, j), int(a as i64) * &cf);
            }
            if j < m {
                a_part.add_term((a, b, j + 1), int((m - j) as i64) * &cf);
            }
        }
        if !p.h.is_zero() {
            let w = a as i64 - b as i64 + m as i64 - 2 * j as i64;
            a_part.add_term((a, b, j), int(w) * &p.h * c);
        }
    }
    (a_part, b_part)
}

/// `N_i+ · (N1-^a N2-^b ⊗ e_j)` by commutator descent.
fn act_nplus_basis(i: usize, a: u32, b: u32, j: u32, m: u32) -> (VermaVector, VermaVector) {
    if a + b == 0 {
        return (VermaVector::zero(m), VermaVector::zero(m));
    }
    // write the monomial as Y · w' with Y = N1- (if a > 0) else N2-
    let (y, rest) = if a > 0 { (1, (a - 1, b)) } else { (2, (a, b - 1)) };
    let w_rest = VermaVector::basis(m, rest.0, rest.1, j);
    let comm = decompose(&bracket(&GElt::n_plus(i), &GElt::n_minus(y)));
    debug_assert!(comm.n_minus.iter().chain(comm.n_plus.iter()).all(Zero::is_zero));
    let (a1, b1) = act_l(&comm, &w_rest);
    let (a2, b2) = act_nplus_basis(i, rest.0, rest.1, j, m);
    let (sa, sb) = if y == 1 { (1, 0) } else { (0, 1) };
    (a1.add(&a2.mul_nminus(sa, sb)), b1.add(&b2.mul_nminus(sa, sb)))
}

/// `X · w` split as `A + μ B`, where `μ` is the inducing weight.
pub fn act_parts(x: &GElt, w: &VermaVector) -> (VermaVector, VermaVector) {
    let p = decompose(x);
    let m = w.m;
    let mut a_part = VermaVector::zero(m);
    let mut b_part = VermaVector::zero(m);
    // n- part: left multiplication
    for (i, c) in p.n_minus.iter().enumerate() {
        if !c.is_zero() {
            let (sa, sb) = if i == 0 { (1, 0) } else { (0, 1) };
            a_part = a_part.add(&w.mul_nminus(sa, sb).scale(c));
        }
    }
    let (la, lb) = act_l(&p, w);
    a_part = a_part.add(&la);
    b_part = b_part.add(&lb);
    for (i, c) in p.n_plus.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (&(a, b, j), wc) in &w.terms {
            let (na, nb) = act_nplus_basis(i + 1, a, b, j, m);
            let s = c * wc;
            a_part = a_part.add(&na.scale(&s));
            b_part = b_part.add(&nb.scale(&s));
        }
    }
    (a_part, b_part)
}

/// `X · w` in `M(sym^m, μ)`.
pub fn act(x: &GElt, w: &VermaVector, mu: &Rat) -> VermaVector {
    let (a, b) = act_parts(x, w);
    a.add(&b.scale(mu))
}

/// A hom `M(sym^l, μ_src)^β -> M(sym^m, μ_tgt)^α`, given by the images of
/// the monomial basis `e1^(l-p) e2^p` of `S^l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VermaHom {
    pub l: u32,
    pub m: u32,
    /// Inducing weight of the source module.
    pub source_weight: Rat,
    /// Inducing weight of the target module.
    pub target_weight: Rat,
    pub alpha: Parity,
    pub beta: Parity,
    pub images: Vec<VermaVector>,
}

impl VermaHom {
    /// Builds a hom from the parameters of the dual operator
    /// `I(m, λ)^α -> I(l, ν)^β`.
    pub fn from_ido_parameters(
        m: u32,
        l: u32,
        lambda: &Rat,
        nu: &Rat,
        alpha: Parity,
        beta: Parity,
        images: Vec<VermaVector>,
    ) -> Self {
        assert_eq!(images.len(), l as usize + 1);
        VermaHom {
            l,
            m,
            source_weight: inducing_weight(nu),
            target_weight: inducing_weight(lambda),
            alpha,
            beta,
            images,
        }
    }

    /// λ of the dual operator.
    pub fn ido_lambda(&self) -> Rat {
        inducing_weight(&self.target_weight)
    }

    /// ν of the dual operator.
    pub fn ido_nu(&self) -> Rat {
        inducing_weight(&self.source_weight)
    }

    /// Common `n-`-degree of all images, if they are homogeneous.
    pub fn nminus_degree(&self) -> Option<u32> {
        let mut all: Vec<u32> = self.images.iter().flat_map(|v| v.degrees()).collect();
        all.sort();
        all.dedup();
        match all.as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(VermaVector::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct T {
            p: usize,
            n: [u32; 2],
            e: u32,
            coeff: String,
        }
        let terms: Vec<T> = self
            .images
            .iter()
            .enumerate()
            .flat_map(|(p, v)| {
                v.terms().iter().map(move |(&(a, b, j), c)| T { p, n: [a, b], e: j, coeff: fmt_rat(c) })
            })
            .collect();
        serde_json::json!({
            "source": {"degree": self.l, "inducing_weight": fmt_rat(&self.source_weight), "parity": self.beta},
            "target": {"degree": self.m, "inducing_weight": fmt_rat(&self.target_weight), "parity": self.alpha},
            "terms": terms,
        })
    }
}

impl fmt::Display for VermaHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "M(sym^{}, {})^{} -> M(sym^{}, {})^{}",
            self.l, self.source_weight, self.beta, self.m, self.target_weight, self.alpha
        )?;
        for (p, v) in self.images.iter().enumerate() {
            let e = monomial_text("e", self.l - p as u32, p as u32);
            let e = if e.is_empty() { "1".to_string() } else { e };
            writeln!(f, "  {e} |-> {v}")?;
        }
        Ok(())
    }
}

/// The identity endomorphism of `M(sym^m, -λ)^α`.
pub fn build_identity(m: u32, lambda: &Rat, alpha: Parity) -> VermaHom {
    let images = (0..=m).map(|p| VermaVector::basis(m, 0, 0, p)).collect();
    VermaHom::from_ido_parameters(m, m, lambda, lambda, alpha, alpha, images)
}

/// `φ^{m+k}_{m,k}`: image of `e_p` is
/// `sum_{j+r=p} binom(m,j) binom(k,r) / binom(m+k,p) N1^(k-r) N2^r ⊗ e_j`.
pub fn build_phi_cartan(m: u32, k: u32) -> VermaHom {
    build_phi_cartan_with(m, k, Parity::Plus)
}

pub fn build_phi_cartan_with(m: u32, k: u32, alpha: Parity) -> VermaHom {
    let l = m + k;
    let mut images = vec![VermaVector::zero(m); l as usize + 1];
    for p in 0..=l {
        for r in 0..=k.min(p) {
            let j = p - r;
            if j > m {
                continue;
            }
            let c = binom_q(m, j) * binom_q(k, r) / binom_q(l, p);
            images[p as usize].add_term((k - r, r, j), c);
        }
    }
    VermaHom::from_ido_parameters(m, l, &cartan_lambda(m, k), &cartan_nu(m, k), alpha, parity_shift(alpha, k), images)
}

/// `φ^{m-k}_{m,k}`: image of `e_p` is
/// `sum_r (-1)^r binom(k,r) N1^(k-r) N2^r ⊗ e_(p+k-r)`.
pub fn build_phi_prv(m: u32, k: u32) -> Result<VermaHom, VermaError> {
    build_phi_prv_with(m, k, Parity::Plus)
}

pub fn build_phi_prv_with(m: u32, k: u32, alpha: Parity) -> Result<VermaHom, VermaError> {
    if m < k {
        return Err(VermaError::PrvRange { m, k });
    }
    let l = m - k;
    let mut images = vec![VermaVector::zero(m); l as usize + 1];
    for p in 0..=l {
        for r in 0..=k {
            let c = binom_q(k, r) * int(if r % 2 == 0 { 1 } else { -1 });
            images[p as usize].add_term((k - r, r, p + k - r), c);
        }
    }
    Ok(VermaHom::from_ido_parameters(m, l, &prv_lambda(m, k), &prv_nu(m, k), alpha, parity_shift(alpha, k), images))
}

/// The hom read off from `ψ^{m+k-2d}_{m,k} / l!`, pairing `Pol^l` with `S^l`
/// so that `ṽ_p = v^(l-p,p)/((l-p)! p!)` is dual to `e^(l-p,p)`.
/// `λ, ν` are left for the caller; the images do not depend on them.
pub fn phi_from_psi(m: u32, k: u32, d: u32) -> Option<Vec<VermaVector>> {
    let t = build_psi(m, k, d).ok()?;
    let l = t.l;
    let mut images = vec![VermaVector::zero(m); l as usize + 1];
    for (&(r, j, p), c) in &t.coeffs {
        let w = fact_q(l - p) * fact_q(p) / fact_q(l);
        images[p as usize].add_term((k - r, r, j), c * w);
    }
    Some(images)
}

/// Outcome of [`verify_hom_report`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub n_plus_invariant: bool,
    pub l_equivariant: bool,
    pub a_weight_match: bool,
    pub parity_match: bool,
    pub nonzero: bool,
}

impl HomCheck {
    pub fn ok(&self) -> bool {
        self.n_plus_invariant && self.l_equivariant && self.a_weight_match && self.parity_match && self.nonzero
    }
}

pub fn verify_hom_report(phi: &VermaHom) -> HomCheck {
    let mu = &phi.target_weight;
    let n_plus_invariant = phi
        .images
        .iter()
        .all(|v| (1..=2).all(|i| act(&GElt::n_plus(i), v, mu).is_zero()));
    let src = Sl2Action::sym(phi.l);
    let l_equivariant = [(GElt::e(), &src.e), (GElt::f(), &src.f), (GElt::h(), &src.h)].iter().all(|(x, mat)| {
        (0..=phi.l as usize).all(|p| {
            let lhs = act(x, &phi.images[p], mu);
            let rhs = (0..=phi.l as usize).fold(VermaVector::zero(phi.m), |acc, q| {
                let c = mat.get(q, p);
                if c.is_zero() {
                    acc
                } else {
                    acc.add(&phi.images[q].scale(c))
                }
            });
            lhs == rhs
        })
    });
    let degree = phi.nminus_degree();
    let a_weight_match = degree.is_some_and(|k| phi.source_weight == mu - rat(3 * k as i64, 2));
    let parity_match = degree.is_some_and(|k| phi.beta == parity_shift(phi.alpha, k));
    HomCheck { n_plus_invariant, l_equivariant, a_weight_match, parity_match, nonzero: !phi.is_zero() }
}

/// Checks that `φ` is a nonzero hom of generalized Verma modules.
pub fn verify_hom(phi: &VermaHom) -> bool {
    verify_hom_report(phi).ok()
}

/// `φ1 ∘ φ2`, substituting through `φ1` by left `S(n-)`-linearity.
pub fn compose_homs(phi1: &VermaHom, phi2: &VermaHom) -> Result<VermaHom, VermaError> {
    if phi2.m != phi1.l || phi2.target_weight != phi1.source_weight || phi2.alpha != phi1.beta {
        return Err(VermaError::Mismatch(format!(
            "target of second is (sym^{}, {}, {}), source of first is (sym^{}, {}, {})",
            phi2.m, phi2.target_weight, phi2.alpha, phi1.l, phi1.source_weight, phi1.beta
        )));
    }
    let images = phi2
        .images
        .iter()
        .map(|v| {
            v.terms().iter().fold(VermaVector::zero(phi1.m), |acc, (&(a, b, q), c)| {
                acc.add(&phi1.images[q as usize].mul_nminus(a, b).scale(c))
            })
        })
        .collect();
    Ok(VermaHom {
        l: phi2.l,
        m: phi1.m,
        source_weight: phi2.source_weight.clone(),
        target_weight: phi1.target_weight.clone(),
        alpha: phi1.alpha,
        beta: phi2.beta,
        images,
    })
}

/// One solution family of the brute-force Hom computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSolution {
    /// `None` when every λ admits these homs.
    pub lambda: Option<Rat>,
    /// Basis of the Hom space; each entry is the list of images of `e_p`.
    pub basis: Vec<Vec<VermaVector>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub m: u32,
    pub l: u32,
    pub k: u32,
    /// Dimension of `Hom_l(S^l, S^k(n-) ⊗ S^m)` before imposing `n+`.
    pub equivariant_dim: usize,
    pub solutions: Vec<OracleSolution>,
}

impl OracleResult {
    pub fn to_json(&self) -> serde_json::Value {
        let sols: Vec<serde_json::Value> = self
            .solutions
            .iter()
            .map(|s| {
                serde_json::json!({
                    "lambda": s.lambda.as_ref().map_or("any".to_string(), fmt_rat),
                    "dim": s.basis.len(),
                })
            })
            .collect();
        serde_json::json!({
            "m": self.m, "l": self.l, "k": self.k,
            "equivariant_dim": self.equivariant_dim,
            "solutions": sols,
        })
    }
}

/// Brute-force `Hom_{g,P}(M(sym^l, -λ - 3k/2), M(sym^m, -λ))` in `n-`-degree
/// `k`, with `λ` symbolic.
///
/// First the l-equivariant maps `S^l -> S^k(n-) ⊗ S^m` are found as a
/// nullspace (independent of λ); then `n+`-invariance of the images, whose
/// entries are affine in λ, is solved with [`solve_parametric`].
pub fn hom_oracle(m: u32, l: u32, k: u32) -> OracleResult {
    let nr = (k + 1) as usize;
    let nm = (m + 1) as usize;
    let nl = (l + 1) as usize;
    let idx = |p: usize, r: u32, j: u32| p * nr * nm + r as usize * nm + j as usize;
    let n_unknowns = nl * nr * nm;

    // l-equivariance: X·φ(e_p) - sum_q S[q][p] φ(e_q) = 0
    let src = Sl2Action::sym(l);
    let gens = [(GElt::e(), &src.e), (GElt::f(), &src.f), (GElt::h(), &src.h)];
    let mut rows: BTreeMap<(usize, usize, VKey), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rat)> = Vec::new();
    let row_of = |key: (usize, usize, VKey), rows: &mut BTreeMap<(usize, usize, VKey), usize>| {
        let n = rows.len();
        *rows.entry(key).or_insert(n)
    };
    for (xi, (x, mat)) in gens.iter().enumerate() {
        for r in 0..=k {
            for j in 0..=m {
                // l-action does not involve μ
                let image = act(x, &VermaVector::basis(m, k - r, r, j), &Rat::zero());
                for p in 0..nl {
                    let col = idx(p, r, j);
                    for (key, c) in image.terms() {
                        let row = row_of((xi, p, *key), &mut rows);
                        entries.push((row, col, c.clone()));
                    }
                    for q in 0..nl {
                        // unknown (p, r, j) feeds φ(e_p), which appears in the equation for q
                        let s = mat.get(p, q);
                        if !s.is_zero() {
                            let row = row_of((xi, q, (k - r, r, j)), &mut rows);
                            entries.push((row, col, -s));
                        }
                    }
                }
            }
        }
    }
    let mut eq = RatMatrix::zeros(rows.len(), n_unknowns);
    for (r, c, v) in entries {
        eq.add_to(r, c, &v);
    }
    let eq_basis = nullspace(&eq);
    let to_images = |v: &[Rat]| -> Vec<VermaVector> {
        (0..nl)
            .map(|p| {
                let mut w = VermaVector::zero(m);
                for r in 0..=k {
                    for j in 0..=m {
                        w.add_term((k - r, r, j), v[idx(p, r, j)].clone());
                    }
                }
                w
            })
            .collect()
    };
    let eq_images: Vec<Vec<VermaVector>> = eq_basis.iter().map(|v| to_images(v)).collect();
    let dim = eq_images.len();
    if dim == 0 {
        return OracleResult { m, l, k, equivariant_dim: 0, solutions: vec![] };
    }

    // n+-invariance, affine in μ = -λ
    let mut prow: BTreeMap<(usize, usize, VKey), Vec<LinParam>> = BTreeMap::new();
    for (b, images) in eq_images.iter().enumerate() {
        for (p, v) in images.iter().enumerate() {
            for i in 1..=2 {
                let (a_part, b_part) = act_parts(&GElt::n_plus(i), v);
                for (key, c) in a_part.terms() {
                    let row = prow.entry((i, p, *key)).or_insert_with(|| vec![LinParam::default(); dim]);
                    row[b].constant += c;
                }
                for (key, c) in b_part.terms() {
                    let row = prow.entry((i, p, *key)).or_insert_with(|| vec![LinParam::default(); dim]);
                    // μ = inducing_weight(λ) = -λ
                    row[b].slope += inducing_weight(c);
                }
            }
        }
    }
    let prow: Vec<Vec<LinParam>> = prow.into_values().collect();
    let combine = |coeffs: &[Rat]| -> Vec<VermaVector> {
        (0..nl)
            .map(|p| {
                coeffs.iter().zip(&eq_images).fold(VermaVector::zero(m), |acc, (c, imgs)| {
                    if c.is_zero() {
                        acc
                    } else {
                        acc.add(&imgs[p].scale(c))
                    }
                })
            })
            .collect()
    };
    let solutions = match solve_parametric(&prow, dim) {
        ParamSolution::All { uniform } => {
            vec![OracleSolution { lambda: None, basis: uniform.iter().map(|c| combine(c)).collect() }]
        }
        ParamSolution::Finite(roots) => roots
            .into_iter()
            .map(|r| OracleSolution { lambda: Some(r.lambda), basis: r.nullspace.iter().map(|c| combine(c)).collect() })
            .collect(),
    };
    OracleResult { m, l, k, equivariant_dim: dim, solutions }
}
