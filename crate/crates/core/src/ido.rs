//! Induced representations `I(m, λ)^α` in the noncompact picture and the
//! intertwining differential operators between them.
//!
//! Sections are polynomial maps `n- ≅ Q^2 -> Pol^m`, with coordinates
//! `x = (x1, x2)` on `n-`. The infinitesimal action is
//! `dπ(X) = dσ(Y_l(x)) - sum_j y_j(x) ∂_j` with `Y(x) = Ad(n̄_x^{-1}) X`,
//! so that `dπ(Nj-) = -∂j` and `dπ(H0~) = λ + 3/2 (x·∂)`.

use std::fmt;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{cartan_lambda, cartan_nu, classify, prv_lambda, prv_nu, Family, ParamPoint};
use crate::exactalg::{binom_q, fact_q, int, Rat};
use crate::fiber::{parity_shift, pol_group_matrix, Parity, Sl2Action};
use crate::polyweyl::{FiberMap, Poly, Section, WeylError, WeylOp};
use crate::sl3::{ad_conj_by_nbar, GElt, MGroupElt, BASIS_NAMES};
use crate::verma::VermaHom;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdoError {
    #[error("PRV operator needs m >= k, got m = {m}, k = {k}")]
    PrvRange { m: u32, k: u32 },
    #[error("operators do not compose: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// The data `(m, λ, α)` of `I(m, λ)^α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedRepData {
    pub m: u32,
    #[serde(serialize_with = "crate::exactalg::ser_rat")]
    pub lambda: Rat,
    pub alpha: Parity,
}

impl InducedRepData {
    pub fn new(m: u32, lambda: Rat, alpha: Parity) -> Self {
        InducedRepData { m, lambda, alpha }
    }
}

impl fmt::Display for InducedRepData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({}, {})^{}", self.m, self.lambda, self.alpha)
    }
}

/// `dπ(X)` on `I(m, λ)` as a Weyl-algebra operator.
pub fn dpi(x: &GElt, m: u32, lambda: &Rat) -> WeylOp {
    let y = ad_conj_by_nbar(x);
    let pol = Sl2Action::pol(m);
    let mut op = WeylOp::multiplication(&y.h0(), &FiberMap::scalar(m, lambda.clone()));
    op = op.add(&WeylOp::multiplication(&y.e(), &pol.e));
    op = op.add(&WeylOp::multiplication(&y.f(), &pol.f));
    op = op.add(&WeylOp::multiplication(&y.h(), &pol.h));
    for (j, yj) in y.n_minus().iter().enumerate() {
        let mult = WeylOp::multiplication(&(-yj), &FiberMap::identity(m));
        let d = WeylOp::partial(m, j);
        op = op.add(&mult.weyl_mul(&d).expect("same fiber degree"));
    }
    op
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdoFamily {
    Identity,
    Cartan { m: u32, k: u32 },
    Prv { m: u32, k: u32 },
    /// `second ∘ first`.
    Composite(Box<IdoFamily>, Box<IdoFamily>),
}

impl fmt::Display for IdoFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdoFamily::Identity => write!(f, "id"),
            IdoFamily::Cartan { m, k } => write!(f, "C^{{{}}}_{{{m},{k}}}", m + k),
            IdoFamily::Prv { m, k } => write!(f, "P^{{{}}}_{{{m},{k}}}", m - k),
            IdoFamily::Composite(first, second) => write!(f, "{second} ∘ {first}"),
        }
    }
}

/// An intertwining differential operator `I(source) -> I(target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ido {
    pub family: IdoFamily,
    pub source: InducedRepData,
    pub target: InducedRepData,
    pub op: WeylOp,
}

impl Ido {
    pub fn order(&self) -> u32 {
        self.op.order().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.to_string(),
            "source": self.source,
            "target": self.target,
            "order": self.order(),
            "operator": self.op.to_json(),
        })
    }
}

impl fmt::Display for Ido {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} -> {}", self.family, self.source, self.target)?;
        write!(f, "{}", self.op)
    }
}

/// The Cartan operator `C^{m+k}_{m,k}` with `α = +`.
pub fn build_cartan(m: u32, k: u32) -> Ido {
    build_cartan_with(m, k, Parity::Plus)
}

/// `C^{m+k}_{m,k} = sum_r ∂1^(k-r) ∂2^r ⊗ (u_j -> binom(k,r) u_(j+r))`.
pub fn build_cartan_with(m: u32, k: u32, alpha: Parity) -> Ido {
    let l = m + k;
    let mut op = WeylOp::zero(m, l);
    for r in 0..=k {
        let mut fm = FiberMap::zero(m, l);
        for j in 0..=m {
            fm.add_entry((j + r) as usize, j as usize, &binom_q(k, r));
        }
        op.add_term((0, 0, k - r, r), &fm);
    }
    Ido {
        family: IdoFamily::Cartan { m, k },
        source: InducedRepData::new(m, cartan_lambda(m, k), alpha),
        target: InducedRepData::new(l, cartan_nu(m, k), parity_shift(alpha, k)),
        op,
    }
}

/// The PRV operator `P^{m-k}_{m,k}` with `α = +`.
pub fn build_prv(m: u32, k: u32) -> Result<Ido, IdoError> {
    build_prv_with(m, k, Parity::Plus)
}

/// `P^{m-k}_{m,k}`: the coefficient of `∂1^(k-r) ∂2^r` sends `u_p` to
/// `(-1)^r binom(m-k,j) binom(k,r) / binom(m,p) u_j` with `p = k + j - r`.
pub fn build_prv_with(m: u32, k: u32, alpha: Parity) -> Result<Ido, IdoError> {
    if m < k {
        return Err(IdoError::PrvRange { m, k });
    }
    let l = m - k;
    let mut op = WeylOp::zero(m, l);
    for r in 0..=k {
        let mut fm = FiberMap::zero(m, l);
        for j in 0..=l {
            let p = k + j - r;
            let sign = int(if r % 2 == 0 { 1 } else { -1 });
            let c = sign * binom_q(l, j) * binom_q(k, r) / binom_q(m, p);
            fm.add_entry(j as usize, p as usize, &c);
        }
        op.add_term((0, 0, k - r, r), &fm);
    }
    Ok(Ido {
        family: IdoFamily::Prv { m, k },
        source: InducedRepData::new(m, prv_lambda(m, k), alpha),
        target: InducedRepData::new(l, prv_nu(m, k), parity_shift(alpha, k)),
        op,
    })
}

/// The identity of `I(m, λ)^α`.
pub fn build_identity(m: u32, lambda: &Rat, alpha: Parity) -> Ido {
    let data = InducedRepData::new(m, lambda.clone(), alpha);
    Ido { family: IdoFamily::Identity, source: data.clone(), target: data, op: WeylOp::identity(m) }
}

/// The operator dual to a Verma module hom: `N_i- -> ∂_i`, and the fiber
/// coefficient of `N^(a,b) ⊗ e_j` in `φ(e_p)` becomes the `(p, j)` entry
/// scaled by `(m-j)! j! / ((l-p)! p!) · l!/m!`.
///
/// The first factor converts between the dual monomial bases of `S` and
/// `Pol`; the constant `l!/m!` normalizes the result to agree with
/// [`build_cartan`] and [`build_prv`].
pub fn dualize(phi: &VermaHom) -> Ido {
    let (m, l) = (phi.m, phi.l);
    let norm = fact_q(l) / fact_q(m);
    let mut op = WeylOp::zero(m, l);
    for (p, img) in phi.images.iter().enumerate() {
        let p = p as u32;
        for (&(a, b, j), c) in img.terms() {
            let mut fm = FiberMap::zero(m, l);
            let w = fact_q(m - j) * fact_q(j) / (fact_q(l - p) * fact_q(p)) * &norm;
            fm.add_entry(p as usize, j as usize, &(c * w));
            op.add_term((0, 0, a, b), &fm);
        }
    }
    let source = InducedRepData::new(m, phi.ido_lambda(), phi.alpha);
    let target = InducedRepData::new(l, phi.ido_nu(), phi.beta);
    let point = ParamPoint {
        alpha: source.alpha,
        beta: target.alpha,
        m,
        l,
        lambda: source.lambda.clone(),
        nu: target.lambda.clone(),
    };
    let family = match classify(&point).family {
        Family::Identity => IdoFamily::Identity,
        Family::Cartan { m, k } => IdoFamily::Cartan { m, k },
        Family::Prv { m, k } => IdoFamily::Prv { m, k },
        // not a member of a known family; record the degree change only
        Family::None if l >= m => IdoFamily::Cartan { m, k: l - m },
        Family::None => IdoFamily::Prv { m, k: m - l },
    };
    Ido { family, source, target, op }
}

/// Result of an intertwining check, listing the basis elements of g for
/// which `dπ_ν(X) D = D dπ_λ(X)` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntertwineReport {
    pub ok: bool,
    pub failures: Vec<&'static str>,
}

pub fn check_intertwine(d: &Ido) -> IntertwineReport {
    check_intertwine_op(&d.op, &d.source, &d.target)
}

pub fn check_intertwine_op(op: &WeylOp, source: &InducedRepData, target: &InducedRepData) -> IntertwineReport {
    let failures: Vec<&'static str> = GElt::basis()
        .iter()
        .zip(BASIS_NAMES)
        .filter(|(x, _)| {
            let lhs = dpi(x, target.m, &target.lambda).weyl_mul(op).expect("shapes match");
            let rhs = op.weyl_mul(&dpi(x, source.m, &source.lambda)).expect("shapes match");
            lhs != rhs
        })
        .map(|(_, n)| n)
        .collect();
    IntertwineReport { ok: failures.is_empty(), failures }
}

/// `second ∘ first`.
pub fn compose_ido(first: &Ido, second: &Ido) -> Result<Ido, IdoError> {
    if first.target != second.source {
        return Err(IdoError::Mismatch(format!("target {} is not source {}", first.target, second.source)));
    }
    Ok(Ido {
        family: IdoFamily::Composite(Box::new(first.family.clone()), Box::new(second.family.clone())),
        source: first.source.clone(),
        target: second.target.clone(),
        op: second.op.weyl_mul(&first.op)?,
    })
}

/// Shifts `λ` by `delta`, and `ν` as well when `joint` is set, leaving the
/// operator unchanged.
pub fn perturb(d: &Ido, delta: &Rat, joint: bool) -> Ido {
    let mut out = d.clone();
    out.source.lambda += delta;
    if joint {
        out.target.lambda += delta;
    }
    out
}

/// `(π(g) f)(x) = sgn(det h)^α · Pol^m(h) [f(det(h) h^{-1} x)]` for
/// `g = diag(det(h)^{-1}, h)` in M.
pub fn act_by_m_element(g: &MGroupElt, data: &InducedRepData, f: &Section) -> Section {
    assert_eq!(f.m(), data.m);
    let d = int(g.det_h() as i64);
    let hinv = g.h_inverse();
    let sub = [[&d * &hinv[0][0], &d * &hinv[0][1]], [&d * &hinv[1][0], &d * &hinv[1][1]]];
    let moved = f.linear_substitute(&sub).map_fiber(&pol_group_matrix(g, data.m));
    moved.scale(&int(data.alpha.character(g.det_h())))
}

/// Checks `D ∘ π_src(g) = π_tgt(g) ∘ D` on the given test sections.
pub fn check_m_equivariance(d: &Ido, g: &MGroupElt, tests: &[Section]) -> bool {
    tests.iter().all(|f| {
        let lhs = d.op.apply(&act_by_m_element(g, &d.source, f)).expect("source degree");
        let rhs = act_by_m_element(g, &d.target, &d.op.apply(f).expect("source degree"));
        lhs == rhs
    })
}

/// All monomial sections of total `x`-degree at most `deg`.
pub fn monomial_sections(m: u32, deg: u32) -> Vec<Section> {
    let mut out = Vec::new();
    for d in 0..=deg {
        for a in 0..=d {
            for j in 0..=m as usize {
                out.push(Section::basis(m, j, Poly::monomial(d - a, a, Rat::one())));
            }
        }
    }
    out
}
