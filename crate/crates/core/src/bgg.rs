//! The BGG complex
//! `I(m, -(m+2k)/2)^{m+k} -> I(m+k+1, (3-m+k)/2)^{m+1} -> I(k, (6+2m+k)/2)^+`
//! built from `C^{m+k+1}_{m,k+1}` and `P^k_{m+k+1,m+1}`, with degree-wise
//! exactness checks, the finite-dimensional kernel, and parity checks on the
//! non-identity components of M.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{int, nullspace, rat, Rat, RatMatrix, SpanBuilder};
use crate::fiber::{pol_group_matrix, Parity};
use crate::ido::{build_cartan_with, build_prv_with, compose_ido, dpi, monomial_sections, Ido, InducedRepData};
use crate::polyweyl::{rank_on_degree, Poly, Section, WeylOp};
use crate::sl3::{GElt, MGroupElt};
use crate::weights::Weight;

pub use crate::ido::act_by_m_element;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BggError {
    #[error("closure did not stabilize below dimension {limit}")]
    NoStabilization { limit: usize },
}

/// `(m+1)(k+1)(m+k+2)/2`, the dimension of `V(mϖ1 + kϖ2)`.
pub fn weyl_dim(m: u32, k: u32) -> usize {
    let (m, k) = (m as usize, k as usize);
    (m + 1) * (k + 1) * (m + k + 2) / 2
}

#[derive(Clone, Debug)]
pub struct BggComplex {
    pub m: u32,
    pub k: u32,
    pub stages: [InducedRepData; 3],
    pub cartan: Ido,
    pub prv: Ido,
}

impl BggComplex {
    pub fn new(m: u32, k: u32) -> Self {
        let cartan = build_cartan_with(m, k + 1, Parity::of((m + k) as i64));
        let prv = build_prv_with(m + k + 1, m + 1, Parity::of((m + 1) as i64)).expect("m + k + 1 >= m + 1");
        debug_assert_eq!(cartan.target, prv.source);
        let stages = [cartan.source.clone(), cartan.target.clone(), prv.target.clone()];
        BggComplex { m, k, stages, cartan, prv }
    }

    /// `P ∘ C` as a Weyl-algebra operator.
    pub fn composite(&self) -> WeylOp {
        compose_ido(&self.cartan, &self.prv).expect("stages match").op
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub d: u32,
    pub rank_c: usize,
    pub kernel_c: usize,
    /// `dim Ker P` on degree `d - k - 1`; absent when `d < k + 1`.
    pub dim_ker_p: Option<usize>,
    /// Surjectivity of P onto degree `d`, when that degree is in range.
    pub p_onto: Option<bool>,
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExactnessStatus {
    Exact,
    NotExact,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub m: u32,
    pub k: u32,
    #[serde(rename = "D")]
    pub max_degree: u32,
    pub kernel_dim: usize,
    pub expected_kernel_dim: usize,
    pub per_degree: Vec<DegreeReport>,
    pub status: ExactnessStatus,
    pub exact: bool,
}

/// Degree-wise exactness of the complex on polynomial sections of degree at
/// most `max_degree`. Below `m + k + 2` the kernel has not provably
/// stabilized, and the status is `Inconclusive`.
pub fn check_exactness(m: u32, k: u32, max_degree: u32) -> ExactnessReport {
    let cx = BggComplex::new(m, k);
    let (c_ord, p_ord) = (k + 1, m + 1);
    let src_dim = |d: u32| (m as usize + 1) * (d as usize + 1);
    let per_degree: Vec<DegreeReport> = (0..=max_degree)
        .into_par_iter()
        .map(|d| {
            let (rank_c, _) = rank_on_degree(&cx.cartan.op, d);
            let kernel_c = src_dim(d) - rank_c;
            let dim_ker_p = (d >= c_ord).then(|| {
                let e = d - c_ord;
                let (rank_p, _) = rank_on_degree(&cx.prv.op, e);
                (m + k + 2) as usize * (e as usize + 1) - rank_p
            });
            // P maps degree d + m + 1 onto degree d; the source must lie in range
            let p_onto = (d + p_ord + c_ord <= max_degree).then(|| {
                let (rank_p, _) = rank_on_degree(&cx.prv.op, d + p_ord);
                rank_p == (k as usize + 1) * (d as usize + 1)
            });
            let ok = dim_ker_p.is_none_or(|kp| kp == rank_c) && p_onto.unwrap_or(true);
            DegreeReport { d, rank_c, kernel_c, dim_ker_p, p_onto, ok }
        })
        .collect();
    let kernel_dim = per_degree.iter().map(|r| r.kernel_c).sum();
    let expected = weyl_dim(m, k);
    let all_ok = per_degree.iter().all(|r| r.ok) && kernel_dim == expected;
    let status = if !all_ok {
        ExactnessStatus::NotExact
    } else if max_degree < m + k + 2 {
        ExactnessStatus::Inconclusive
    } else {
        ExactnessStatus::Exact
    };
    ExactnessReport {
        m,
        k,
        max_degree,
        kernel_dim,
        expected_kernel_dim: expected,
        per_degree,
        status,
        exact: status == ExactnessStatus::Exact,
    }
}

/// The finite-dimensional subrepresentation of `I(m, -(m+2k)/2)` generated
/// by the constant section `u1^m`.
#[derive(Clone, Debug)]
pub struct KernelRep {
    pub m: u32,
    pub k: u32,
    pub lambda: Rat,
    pub basis: Vec<Section>,
}

fn basis_dpi(m: u32, lambda: &Rat) -> Vec<WeylOp> {
    GElt::basis().iter().map(|x| dpi(x, m, lambda)).collect()
}

pub fn generate_kernel_rep(m: u32, k: u32) -> Result<KernelRep, BggError> {
    let lambda = rat(-(m as i64 + 2 * k as i64), 2);
    let ops = basis_dpi(m, &lambda);
    let limit = 4 * weyl_dim(m, k);
    let mut span = SpanBuilder::new();
    let mut basis = Vec::new();
    let seed = Section::basis(m, 0, Poly::one());
    span.insert(&seed.coords());
    basis.push(seed);
    let mut next = 0;
    while next < basis.len() {
        let v = basis[next].clone();
        next += 1;
        for op in &ops {
            let w = op.apply(&v).expect("same fiber degree");
            if span.insert(&w.coords()) {
                basis.push(w);
                if basis.len() > limit {
                    return Err(BggError::NoStabilization { limit });
                }
            }
        }
    }
    Ok(KernelRep { m, k, lambda, basis })
}

impl KernelRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn data(&self, alpha: Parity) -> InducedRepData {
        InducedRepData::new(self.m, self.lambda.clone(), alpha)
    }

    fn span(&self) -> SpanBuilder<(usize, u32, u32)> {
        let mut s = SpanBuilder::new();
        for b in &self.basis {
            s.insert(&b.coords());
        }
        s
    }

    pub fn contains(&self, f: &Section) -> bool {
        self.span().contains(&f.coords())
    }

    /// Every `dπ(X)`, X in the basis of g, maps the span into itself.
    pub fn is_dpi_stable(&self) -> bool {
        let span = self.span();
        basis_dpi(self.m, &self.lambda)
            .iter()
            .all(|op| self.basis.iter().all(|b| span.contains(&op.apply(b).expect("same fiber").coords())))
    }

    /// Every basis element is killed by `C^{m+k+1}_{m,k+1}`.
    pub fn in_cartan_kernel(&self) -> bool {
        let c = build_cartan_with(self.m, self.k + 1, Parity::Plus);
        self.basis.iter().all(|b| c.op.apply(b).expect("same fiber").is_zero())
    }

    /// `(a-weight, dimension)` for each x-degree: the degree-d part is the
    /// `H0~`-eigenspace with eigenvalue `λ + 3d/2`.
    pub fn grading_profile(&self) -> Vec<(Rat, usize)> {
        let top = self.basis.iter().filter_map(Section::total_degree).max().unwrap_or(0);
        (0..=top)
            .filter_map(|d| {
                let mut s = SpanBuilder::new();
                for b in &self.basis {
                    s.insert(&b.homogeneous_part(d).coords());
                }
                (s.dim() > 0).then(|| (&self.lambda + rat(3 * d as i64, 2), s.dim()))
            })
            .collect()
    }

    /// Highest weight, read off a common null vector of `dπ(N1+)`,
    /// `dπ(N2+)` and `dπ(E)`.
    pub fn highest_weight(&self) -> Option<Weight> {
        let raising: Vec<WeylOp> = [GElt::n_plus(1), GElt::n_plus(2), GElt::e()]
            .iter()
            .map(|x| dpi(x, self.m, &self.lambda))
            .collect();
        let mut rows: BTreeMap<(usize, (usize, u32, u32)), usize> = BTreeMap::new();
        let mut entries = Vec::new();
        for (col, b) in self.basis.iter().enumerate() {
            for (i, op) in raising.iter().enumerate() {
                for (key, c) in op.apply(b).expect("same fiber").coords() {
                    let n = rows.len();
                    let row = *rows.entry((i, key)).or_insert(n);
                    entries.push((row, col, c));
                }
            }
        }
        let mut mat = RatMatrix::zeros(rows.len(), self.basis.len());
        for (r, c, v) in entries {
            mat.add_to(r, c, &v);
        }
        let null = nullspace(&mat);
        let coeffs = null.first()?;
        let v = coeffs
            .iter()
            .zip(&self.basis)
            .fold(Section::zero(self.m), |acc, (c, b)| if c.is_zero() { acc } else { acc.add(&b.scale(c)) });
        let s = eigenvalue(&dpi(&GElt::h0(), self.m, &self.lambda), &v)?;
        let t = eigenvalue(&dpi(&GElt::h(), self.m, &self.lambda), &v)?;
        let mu1 = rat(2, 3) * s;
        let mu2 = (&t - &mu1) / int(2);
        let mu3 = (-&mu1 - &t) / int(2);
        Weight::new(mu1, mu2, mu3).ok()
    }
}

fn eigenvalue(op: &WeylOp, v: &Section) -> Option<Rat> {
    let w = op.apply(v).ok()?;
    let (key, c) = v.coords().into_iter().next()?;
    let e = w.coords().get(&key).cloned().unwrap_or_else(Rat::zero) / c;
    (w == v.scale(&e)).then_some(e)
}

/// `exp(A) f = sum_n A^n f / n!` for `A` nilpotent on `f`.
fn exp_nilpotent(op: &WeylOp, f: &Section) -> Section {
    let mut out = f.clone();
    let mut term = f.clone();
    let mut n = 1i64;
    loop {
        term = op.apply(&term).expect("endomorphism").scale(&rat(1, n));
        if term.is_zero() {
            return out;
        }
        out = out.add(&term);
        n += 1;
    }
}

/// Action of `w13 = exp(E13) exp(-E31) exp(E13)` on the finite-dimensional
/// kernel, computed from the Lie algebra alone.
fn w13_on_kernel(rep: &KernelRep, f: &Section) -> Section {
    let up = dpi(&GElt::n_plus(2), rep.m, &rep.lambda);
    let down = dpi(&GElt::n_minus(2), rep.m, &rep.lambda).scale(&int(-1));
    exp_nilpotent(&up, &exp_nilpotent(&down, &exp_nilpotent(&up, f)))
}

/// `diag(-1, 1, -1) = w13^2`, an element of M with `h = diag(1, -1)`.
pub fn parity_test_element() -> MGroupElt {
    MGroupElt::from_i64([[1, 0], [0, -1]]).expect("det -1")
}

/// The elements of M used for the Cartan conjugation check.
pub fn disconnected_test_elements() -> Vec<(&'static str, MGroupElt)> {
    [
        ("diag(1,-1)", [[1, 0], [0, -1]]),
        ("diag(-1,1)", [[-1, 0], [0, 1]]),
        ("swap", [[0, 1], [1, 0]]),
        ("rotation", [[0, -1], [1, 0]]),
    ]
    .into_iter()
    .map(|(n, h)| (n, MGroupElt::from_i64(h).expect("det ±1")))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanJump {
    pub element: &'static str,
    pub det_h: i8,
    /// `χ` with `C ∘ π_src(g) = χ π_tgt(g) ∘ C`, both sides untwisted.
    pub character: Option<i64>,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub m: u32,
    pub k: u32,
    /// Sign by which `w13^2` acts on the seed, relative to the fiber action.
    pub lowest_character: Option<i64>,
    pub expected_lowest_character: i64,
    /// The parities α for which `π_α(w13^2)` agrees on the kernel with the
    /// action obtained by exponentiating the Lie algebra.
    pub matching_alpha: Vec<Parity>,
    pub cartan_jumps: Vec<CartanJump>,
    pub ok: bool,
}

/// Parity bookkeeping for the kernel of `C^{m+k+1}_{m,k+1}`.
///
/// `g = diag(-1, 1, -1)` lies in the identity component of `SL(3, R)`, so its
/// action on the finite-dimensional kernel is forced by the Lie algebra:
/// `g = w13^2` with `w13` a product of exponentials of nilpotents. Comparing
/// with `π_α(g)` pins down the parity α for which the kernel is nonzero.
pub fn parity_check(m: u32, k: u32) -> Result<ParityReport, BggError> {
    let rep = generate_kernel_rep(m, k)?;
    let g = parity_test_element();
    let sigma = |f: &Section| w13_on_kernel(&rep, &w13_on_kernel(&rep, f));

    let seed = &rep.basis[0];
    let fiber = seed.map_fiber(&pol_group_matrix(&g, m));
    let moved = sigma(seed);
    let lowest_character = [1i64, -1].into_iter().find(|s| moved == fiber.scale(&int(*s)));
    let expected_lowest_character = if (m + k) % 2 == 0 { 1 } else { -1 };

    let matching_alpha: Vec<Parity> = [Parity::Plus, Parity::Minus]
        .into_iter()
        .filter(|alpha| {
            let data = rep.data(*alpha);
            rep.basis.iter().all(|f| sigma(f) == act_by_m_element(&g, &data, f))
        })
        .collect();

    let cartan = build_cartan_with(m, k + 1, Parity::Plus);
    let untwisted_target = InducedRepData::new(cartan.target.m, cartan.target.lambda.clone(), Parity::Plus);
    let tests = monomial_sections(m, k + 2);
    let cartan_jumps: Vec<CartanJump> = disconnected_test_elements()
        .into_iter()
        .map(|(name, h)| {
            let lhs: Vec<Section> =
                tests.iter().map(|f| cartan.op.apply(&act_by_m_element(&h, &cartan.source, f)).expect("fiber")).collect();
            let rhs: Vec<Section> = tests
                .iter()
                .map(|f| act_by_m_element(&h, &untwisted_target, &cartan.op.apply(f).expect("fiber")))
                .collect();
            let character = [1i64, -1]
                .into_iter()
                .find(|s| lhs.iter().zip(&rhs).all(|(l, r)| *l == r.scale(&int(*s))));
            let expected = if h.det_h() < 0 && (k + 1) % 2 == 1 { -1 } else { 1 };
            CartanJump { element: name, det_h: h.det_h(), character, expected }
        })
        .collect();

    let ok = lowest_character == Some(expected_lowest_character)
        && matching_alpha == vec![Parity::of((m + k) as i64)]
        && cartan_jumps.iter().all(|j| j.character == Some(j.expected));
    Ok(ParityReport { m, k, lowest_character, expected_lowest_character, matching_alpha, cartan_jumps, ok })
}
