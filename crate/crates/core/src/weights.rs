//! Weights of sl(3) in coordinates `(μ1, μ2, μ3)` with `μ1 + μ2 + μ3 = 0`,
//! positive roots, the Weyl group `S3`, linkage sequences, Boe's criterion,
//! and infinitesimal-character matching for the maximal parabolic.
//!
//! All weights here already include the `+ρ` shift, so the Weyl group acts
//! linearly (no dot action).

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{fmt_rat, int, rat, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightsError {
    #[error("weight coordinates must sum to zero, got sum {0}")]
    NonzeroSum(String),
    #[error("max_len must be at least 1")]
    ZeroMaxLen,
}

/// Point of `h*` in coordinates summing to zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    c: [Rat; 3],
}

impl Weight {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self, WeightsError> {
        let s = &a + &b + &c;
        if !s.is_zero() {
            return Err(WeightsError::NonzeroSum(s.to_string()));
        }
        Ok(Weight { c: [a, b, c] })
    }

    /// `(a, b, c) / den`; panics if the sum is nonzero.
    pub fn frac(a: i64, b: i64, c: i64, den: i64) -> Self {
        Self::new(rat(a, den), rat(b, den), rat(c, den)).expect("coordinates sum to zero")
    }

    pub fn zero() -> Self {
        Self::frac(0, 0, 0, 1)
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.c
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Weight { c: std::array::from_fn(|i| &self.c[i] * s) }
    }

    pub fn add(&self, o: &Weight) -> Self {
        Weight { c: std::array::from_fn(|i| &self.c[i] + &o.c[i]) }
    }

    pub fn sub(&self, o: &Weight) -> Self {
        Weight { c: std::array::from_fn(|i| &self.c[i] - &o.c[i]) }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c[0], self.c[1], self.c[2])
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.c.iter().map(fmt_rat))
    }
}

/// `ρ = (1, 0, -1)`.
pub fn rho() -> Weight {
    Weight::frac(1, 0, -1, 1)
}

/// `dχ = ϖ1 = (2, -1, -1)/3`, normalized by `dχ(H0~) = 1`.
pub fn d_chi() -> Weight {
    Weight::frac(2, -1, -1, 3)
}

/// `ω1 = (0, 1, -1)/2`, the fundamental weight of the Levi factor.
pub fn omega1() -> Weight {
    Weight::frac(0, 1, -1, 2)
}

pub fn varpi1() -> Weight {
    Weight::frac(2, -1, -1, 3)
}

pub fn varpi2() -> Weight {
    Weight::frac(1, 1, -2, 3)
}

/// Root `s·(ε_i - ε_j)` with `i < j` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub positive: bool,
}

impl Root {
    pub const E12: Root = Root { i: 0, j: 1, positive: true };
    pub const E23: Root = Root { i: 1, j: 2, positive: true };
    pub const E13: Root = Root { i: 0, j: 2, positive: true };

    pub fn positive_roots() -> [Root; 3] {
        [Root::E12, Root::E23, Root::E13]
    }

    pub fn negate(self) -> Root {
        Root { positive: !self.positive, ..self }
    }

    pub fn label(self) -> String {
        let base = format!("e{}-e{}", self.i + 1, self.j + 1);
        if self.positive {
            base
        } else {
            format!("-({base})")
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

/// `<μ, β^∨> = μ_i - μ_j` for `β = ±(ε_i - ε_j)`.
pub fn pair(mu: &Weight, beta: Root) -> Rat {
    let v = &mu.c[beta.i] - &mu.c[beta.j];
    if beta.positive {
        v
    } else {
        -v
    }
}

/// `s_β μ`: swaps coordinates `i` and `j`.
pub fn reflect(mu: &Weight, beta: Root) -> Weight {
    let mut c = mu.c.clone();
    c.swap(beta.i, beta.j);
    Weight { c }
}

/// Membership in the cone `P+_l`: `μ2 - μ3` is an integer at least 1.
pub fn in_cone_pl(mu: &Weight) -> bool {
    let p = pair(mu, Root::E23);
    p.is_integer() && p >= Rat::one()
}

/// Permutation `w` of `{0,1,2}` acting by `(wμ)_{w(i)} = μ_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElt {
    pub perm: [usize; 3],
}

impl WeylElt {
    pub fn identity() -> Self {
        WeylElt { perm: [0, 1, 2] }
    }

    pub fn reflection(beta: Root) -> Self {
        let mut perm = [0, 1, 2];
        perm.swap(beta.i, beta.j);
        WeylElt { perm }
    }

    /// All six elements.
    pub fn all() -> Vec<WeylElt> {
        let mut out = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    if a != b && b != c && a != c {
                        out.push(WeylElt { perm: [a, b, c] });
                    }
                }
            }
        }
        out
    }

    pub fn act(&self, mu: &Weight) -> Weight {
        let mut c: [Rat; 3] = std::array::from_fn(|_| Rat::zero());
        for i in 0..3 {
            c[self.perm[i]] = mu.c[i].clone();
        }
        Weight { c }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElt) -> WeylElt {
        WeylElt { perm: std::array::from_fn(|i| self.perm[other.perm[i]]) }
    }

    /// A reduced word in simple reflections, as root labels.
    pub fn name(&self) -> String {
        let s1 = WeylElt::reflection(Root::E12);
        let s2 = WeylElt::reflection(Root::E23);
        let id = WeylElt::identity();
        let words: [(&str, WeylElt); 6] = [
            ("e", id),
            ("s(e1-e2)", s1),
            ("s(e2-e3)", s2),
            ("s(e1-e2)s(e2-e3)", s1.compose(&s2)),
            ("s(e2-e3)s(e1-e2)", s2.compose(&s1)),
            ("s(e1-e3)", s1.compose(&s2).compose(&s1)),
        ];
        words.iter().find(|(_, w)| w == self).map(|(n, _)| n.to_string()).expect("S3 has six elements")
    }
}

impl Serialize for WeylElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Whether the empty sequence counts as linking `η` to itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkageConvention {
    /// Sequences of length `t >= 1` only.
    Strict,
    /// Also accept the empty sequence when `η = μ` (identity map).
    AllowEmpty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkageResult {
    pub sequences: Vec<Vec<Root>>,
    pub boe_standard_nonzero: bool,
    /// Set when the empty sequence was accepted under [`LinkageConvention::AllowEmpty`].
    pub uses_empty_sequence: bool,
}

/// Checks the two linking conditions for one sequence.
pub fn sequence_links(eta: &Weight, mu: &Weight, seq: &[Root]) -> bool {
    let mut cur = eta.clone();
    for &b in seq {
        let p = pair(&cur, b);
        if !(p.is_integer() && !p.is_negative()) {
            return false;
        }
        cur = reflect(&cur, b);
    }
    &cur == mu
}

/// All sequences of positive roots of length at most `max_len` linking `η`
/// to `μ`, and Boe's criterion for the associated standard map.
pub fn find_linkages(eta: &Weight, mu: &Weight, max_len: usize) -> Result<LinkageResult, WeightsError> {
    find_linkages_with(eta, mu, max_len, LinkageConvention::AllowEmpty)
}

pub fn find_linkages_with(
    eta: &Weight,
    mu: &Weight,
    max_len: usize,
    convention: LinkageConvention,
) -> Result<LinkageResult, WeightsError> {
    if max_len == 0 {
        return Err(WeightsError::ZeroMaxLen);
    }
    let mut sequences = Vec::new();
    let mut uses_empty_sequence = false;
    if convention == LinkageConvention::AllowEmpty && eta == mu {
        sequences.push(vec![]);
        uses_empty_sequence = true;
    }
    let mut stack: Vec<(Weight, Vec<Root>)> = vec![(eta.clone(), vec![])];
    while let Some((cur, seq)) = stack.pop() {
        if seq.len() == max_len {
            continue;
        }
        for b in Root::positive_roots() {
            let p = pair(&cur, b);
            if !(p.is_integer() && !p.is_negative()) {
                continue;
            }
            let next = reflect(&cur, b);
            let mut s = seq.clone();
            s.push(b);
            if &next == mu {
                sequences.push(s.clone());
            }
            stack.push((next, s));
        }
    }
    sequences.sort();
    let boe_standard_nonzero = !sequences.is_empty()
        && sequences.iter().all(|s| match s.first() {
            Some(&b) => in_cone_pl(&reflect(eta, b)),
            None => true,
        });
    Ok(LinkageResult { sequences, boe_standard_nonzero, uses_empty_sequence })
}

/// `m ω1 - λ dχ + ρ`.
pub fn rho_shifted(m: u32, lambda: &Rat) -> Weight {
    omega1().scale(&int(m as i64)).sub(&d_chi().scale(lambda)).add(&rho())
}

/// The pair `(η, μ)` attached to a hom `N(μ) -> N(η)` with source fiber
/// degree `l` and a-shift `3k/2`: `η = m ω1 - λ dχ + ρ`,
/// `μ = l ω1 - (λ + 3k/2) dχ + ρ`.
pub fn linkage_pair(m: u32, l: u32, k: u32, lambda: &Rat) -> (Weight, Weight) {
    let eta = rho_shifted(m, lambda);
    let nu = lambda + rat(3 * k as i64, 2);
    (eta, rho_shifted(l, &nu))
}

/// Solutions of the infinitesimal-character equation for one Weyl element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharMatch {
    pub w: WeylElt,
    #[serde(serialize_with = "crate::exactalg::ser_rat_opt")]
    /// `None` means every λ solves the equation.
    pub lambda: Option<Rat>,
}

/// Solves `l ω1 - (λ + 3k/2) dχ + ρ = w (m ω1 - λ dχ + ρ)` for `λ`, for
/// each of the six `w`. Works with `λ~ = 2λ/3` internally.
pub fn infinitesimal_character_match(m: u32, l: u32, k: u32) -> Vec<CharMatch> {
    let (m, l, k) = (int(m as i64), int(l as i64), int(k as i64));
    let half = rat(1, 2);
    // coordinates affine in λ~: value = c + s λ~
    let src: [(Rat, Rat); 3] = [
        (int(1), int(-1)),
        (&m * &half, half.clone()),
        ((-&m - int(2)) * &half, half.clone()),
    ];
    let tgt: [(Rat, Rat); 3] = [
        (int(1) - &k, int(-1)),
        ((&k + &l) * &half, half.clone()),
        ((&k - &l - int(2)) * &half, half.clone()),
    ];
    let mut out = Vec::new();
    for w in WeylElt::all() {
        // tgt[w(i)] = src[i] for each i: (tc - sc) + (ts - ss) λ~ = 0
        let mut sol: Option<Option<Rat>> = Some(None);
        for i in 0..3 {
            let (tc, ts) = &tgt[w.perm[i]];
            let (sc, ss) = &src[i];
            let c = tc - sc;
            let s = ts - ss;
            sol = match sol {
                None => None,
                Some(cur) => {
                    if s.is_zero() {
                        if c.is_zero() {
                            Some(cur)
                        } else {
                            None
                        }
                    } else {
                        let v = -c / s;
                        match cur {
                            None => Some(Some(v)),
                            Some(x) if x == v => Some(Some(x)),
                            Some(_) => None,
                        }
                    }
                }
            };
        }
        if let Some(s) = sol {
            // λ = (3/2) λ~
            out.push(CharMatch { w, lambda: s.map(|t| t * rat(3, 2)) });
        }
    }
    out
}

/// Whether `(m + k - l)/2` is an integer in `[0, min(k, m)]`.
pub fn clebsch_gordan_admissible(m: u32, l: u32, k: u32) -> bool {
    crate::fiber::clebsch_gordan_multiplicity(k, m, l) == 1
}

/// Set of λ values (or "all") from [`infinitesimal_character_match`] for
/// CG-admissible `(m, l, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaSet {
    All,
    Values(Vec<Rat>),
}

pub fn charmatch_lambda_set(m: u32, l: u32, k: u32) -> LambdaSet {
    if !clebsch_gordan_admissible(m, l, k) {
        return LambdaSet::Values(vec![]);
    }
    let sols = infinitesimal_character_match(m, l, k);
    if sols.iter().any(|s| s.lambda.is_none()) {
        return LambdaSet::All;
    }
    let mut v: Vec<Rat> = sols.into_iter().filter_map(|s| s.lambda).collect();
    v.sort();
    v.dedup();
    LambdaSet::Values(v)
}

/// The two weights of the reductive-dual-pair reduction points: `(0,0,0)`
/// for the Cartan-kernel family and `(-1,1,0) + (k/3)(-1,2,-1)` for the
/// PRV-kernel family.
pub fn su12_reduction_weights(k: u32) -> (Weight, Weight) {
    let base = Weight::frac(-1, 1, 0, 1);
    let step = Weight::frac(-1, 2, -1, 3).scale(&int(k as i64));
    (Weight::zero(), base.add(&step))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam_cartan(m: u32, k: u32) -> Rat {
        rat(2 - m as i64 - 2 * k as i64, 2)
    }

    fn lam_prv(m: u32, k: u32) -> Rat {
        rat(4 + m as i64 - 2 * k as i64, 2)
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair(&rho(), Root::E12), int(1));
        for m in 0..5 {
            for k in 1..5 {
                let (eta, _) = linkage_pair(m, m + k, k, &lam_cartan(m, k));
                assert_eq!(pair(&eta, Root::E12), int(k as i64));
                if m >= k {
                    let (eta, _) = linkage_pair(m, m - k, k, &lam_prv(m, k));
                    assert_eq!(pair(&eta, Root::E13), int(k as i64));
                }
            }
        }
    }

    #[test]
    fn explicit_coordinates() {
        let (m, k) = (2i64, 1i64);
        let (eta, mu) = linkage_pair(2, 3, 1, &lam_cartan(2, 1));
        assert_eq!(eta, Weight::frac(m + 2 * k + 1, m - k + 1, -(2 * m + k + 2), 3));
        assert_eq!(mu, Weight::frac(m - k + 1, m + 2 * k + 1, -(2 * m + k + 2), 3));
        let (eta, mu) = linkage_pair(2, 1, 1, &lam_prv(2, 1));
        assert_eq!(eta, Weight::frac(-m + 2 * k - 1, 2 * m - k + 2, -(m + k + 1), 3));
        assert_eq!(mu, Weight::frac(-(m + k + 1), 2 * m - k + 2, -m + 2 * k - 1, 3));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(reflect(&rho(), Root::E12), Weight::frac(0, 1, -1, 1));
        let w = Weight::frac(1, 2, -3, 1);
        assert_eq!(reflect(&w, Root::E13), Weight::frac(-3, 2, 1, 1));
        for b in Root::positive_roots() {
            assert_eq!(reflect(&reflect(&w, b), b), w);
            assert_eq!(pair(&reflect(&w, b), b), -pair(&w, b));
        }
    }

    #[test]
    fn weyl_group_has_six_elements() {
        let mut seen = vec![WeylElt::identity()];
        let mut frontier = seen.clone();
        while let Some(w) = frontier.pop() {
            for b in Root::positive_roots() {
                let x = WeylElt::reflection(b).compose(&w);
                if !seen.contains(&x) {
                    seen.push(x);
                    frontier.push(x);
                }
            }
        }
        assert_eq!(seen.len(), 6);
        let names: std::collections::BTreeSet<String> = WeylElt::all().iter().map(|w| w.name()).collect();
        assert_eq!(names.len(), 6);
    }

    #[test]
    fn cone_examples() {
        assert!(in_cone_pl(&rho()));
        assert!(!in_cone_pl(&Weight::zero()));
        assert!(in_cone_pl(&Weight::frac(1, 1, -2, 3)));
        assert!(!in_cone_pl(&Weight::frac(2, -1, -1, 3)));
        assert!(in_cone_pl(&Weight::frac(0, 3, -3, 2)));
    }

    #[test]
    fn linkage_cartan_unique() {
        for m in 0..4 {
            for k in 1..4 {
                let (eta, mu) = linkage_pair(m, m + k, k, &lam_cartan(m, k));
                let r = find_linkages(&eta, &mu, 3).unwrap();
                assert_eq!(r.sequences, vec![vec![Root::E12]], "(m,k)=({m},{k})");
                assert!(r.boe_standard_nonzero);
            }
        }
    }

    #[test]
    fn linkage_prv_unique_and_length3_candidates_fail() {
        for m in 1..5 {
            for k in 1..=m {
                let (eta, mu) = linkage_pair(m, m - k, k, &lam_prv(m, k));
                let r = find_linkages(&eta, &mu, 3).unwrap();
                assert_eq!(r.sequences, vec![vec![Root::E13]], "(m,k)=({m},{k})");
                assert!(r.boe_standard_nonzero);
                assert!(!sequence_links(&eta, &mu, &[Root::E12, Root::E23, Root::E12]));
                assert!(!sequence_links(&eta, &mu, &[Root::E23, Root::E12, Root::E23]));
            }
        }
    }

    #[test]
    fn empty_sequence_convention() {
        let eta = rho();
        let r = find_linkages(&eta, &eta, 3).unwrap();
        assert!(r.uses_empty_sequence);
        assert_eq!(r.sequences[0], Vec::<Root>::new());
        let r = find_linkages_with(&eta, &eta, 3, LinkageConvention::Strict).unwrap();
        assert!(!r.uses_empty_sequence);
        assert!(r.sequences.iter().all(|s| !s.is_empty()));
        assert_eq!(find_linkages(&eta, &eta, 0), Err(WeightsError::ZeroMaxLen));
    }

    #[test]
    fn charmatch_examples() {
        assert_eq!(charmatch_lambda_set(1, 2, 1), LambdaSet::Values(vec![rat(-1, 2)]));
        let sols = infinitesimal_character_match(1, 2, 1);
        let s12 = WeylElt::reflection(Root::E12);
        assert!(sols.iter().any(|s| s.w == s12 && s.lambda == Some(rat(-1, 2))));
        assert_eq!(charmatch_lambda_set(2, 1, 1), LambdaSet::Values(vec![int(2)]));
        assert_eq!(charmatch_lambda_set(3, 3, 0), LambdaSet::All);
    }

    #[test]
    fn charmatch_reproduces_families() {
        for m in 0..=6u32 {
            for l in 0..=6u32 {
                for k in 0..=6u32 {
                    let expect = if !clebsch_gordan_admissible(m, l, k) {
                        LambdaSet::Values(vec![])
                    } else if k == 0 {
                        LambdaSet::All
                    } else if l == m + k {
                        LambdaSet::Values(vec![lam_cartan(m, k)])
                    } else if m >= k && l == m - k {
                        LambdaSet::Values(vec![lam_prv(m, k)])
                    } else {
                        LambdaSet::Values(vec![])
                    };
                    assert_eq!(charmatch_lambda_set(m, l, k), expect, "(m,l,k)=({m},{l},{k})");
                }
            }
        }
    }

    #[test]
    fn su12_weights() {
        assert_eq!(su12_reduction_weights(0), (Weight::zero(), Weight::frac(-1, 1, 0, 1)));
        assert_eq!(su12_reduction_weights(3).1, Weight::frac(-2, 3, -1, 1));
        for k in 0..=20u32 {
            let expect = omega1()
                .scale(&int(k as i64 + 1))
                .sub(&d_chi().scale(&rat(3 + k as i64, 2)));
            assert_eq!(su12_reduction_weights(k).1, expect);
        }
    }
}
