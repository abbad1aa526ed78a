//! Classification of the parameters `(α, β; m, l; λ, ν)` admitting a nonzero
//! intertwining differential operator `I(m, λ)^α -> I(l, ν)^β`, and the
//! bijection Θ between Cartan and PRV families.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{rat, Rat};
use crate::fiber::{parity_shift, Parity};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("theta inverse undefined for (m, k) = ({m}, {k}): needs m - k - 1 >= 0")]
    ThetaInvDomain { m: u32, k: u32 },
}

/// Candidate parameters. `λ, ν` are restricted to Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoint {
    pub alpha: Parity,
    pub beta: Parity,
    pub m: u32,
    pub l: u32,
    pub lambda: Rat,
    pub nu: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Identity,
    Cartan { m: u32, k: u32 },
    Prv { m: u32, k: u32 },
    None,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Identity => "Identity",
            Family::Cartan { .. } => "Cartan",
            Family::Prv { .. } => "PRV",
            Family::None => "None",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cartan { m, k } => write!(f, "Cartan{{m={m},k={k}}}"),
            Family::Prv { m, k } => write!(f, "PRV{{m={m},k={k}}}"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub family: Family,
    pub operator_order: u32,
}

impl Verdict {
    /// Dimension of the space of intertwining operators.
    pub fn dimension(&self) -> u32 {
        (self.family != Family::None) as u32
    }
}

/// `λ = (2 - m - 2k)/2` for the Cartan family.
pub fn cartan_lambda(m: u32, k: u32) -> Rat {
    rat(2 - m as i64 - 2 * k as i64, 2)
}

/// `ν = (2 - m + k)/2` for the Cartan family.
pub fn cartan_nu(m: u32, k: u32) -> Rat {
    rat(2 - m as i64 + k as i64, 2)
}

/// `λ = (4 + m - 2k)/2` for the PRV family.
pub fn prv_lambda(m: u32, k: u32) -> Rat {
    rat(4 + m as i64 - 2 * k as i64, 2)
}

/// `ν = (4 + m + k)/2` for the PRV family.
pub fn prv_nu(m: u32, k: u32) -> Rat {
    rat(4 + m as i64 + k as i64, 2)
}

pub fn classify(p: &ParamPoint) -> Verdict {
    if p.alpha == p.beta && p.m == p.l && p.lambda == p.nu {
        return Verdict { family: Family::Identity, operator_order: 0 };
    }
    if p.l > p.m {
        let (m, k) = (p.m, p.l - p.m);
        if p.beta == parity_shift(p.alpha, k) && p.lambda == cartan_lambda(m, k) && p.nu == cartan_nu(m, k) {
            return Verdict { family: Family::Cartan { m, k }, operator_order: k };
        }
    }
    if p.l < p.m {
        let (m, k) = (p.m, p.m - p.l);
        if p.beta == parity_shift(p.alpha, k) && p.lambda == prv_lambda(m, k) && p.nu == prv_nu(m, k) {
            return Verdict { family: Family::Prv { m, k }, operator_order: k };
        }
    }
    Verdict { family: Family::None, operator_order: 0 }
}

/// One enumerated family. `lambda`/`nu` are `None` for the identity family,
/// where every λ works.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub family: String,
    pub m: u32,
    pub l: u32,
    pub k: u32,
    pub alpha: Parity,
    pub beta: Parity,
    #[serde(serialize_with = "crate::exactalg::ser_rat_opt")]
    pub lambda: Option<Rat>,
    #[serde(serialize_with = "crate::exactalg::ser_rat_opt")]
    pub nu: Option<Rat>,
    pub order: u32,
}

impl FamilyRecord {
    pub fn lambda_text(&self) -> String {
        self.lambda.as_ref().map_or("any".into(), |x| x.to_string())
    }

    pub fn nu_text(&self) -> String {
        self.nu.as_ref().map_or("λ".into(), |x| x.to_string())
    }
}

/// All nonzero families with `m <= max_m`, `l <= max_l`, for both source
/// parities, sorted by `(m, l, family, α)`.
pub fn enumerate(max_m: u32, max_l: u32) -> Vec<FamilyRecord> {
    let mut out = Vec::new();
    for m in 0..=max_m {
        for l in 0..=max_l {
            for alpha in [Parity::Plus, Parity::Minus] {
                if l == m {
                    out.push(FamilyRecord {
                        family: "Identity".into(),
                        m,
                        l,
                        k: 0,
                        alpha,
                        beta: alpha,
                        lambda: None,
                        nu: None,
                        order: 0,
                    });
                } else if l > m {
                    let k = l - m;
                    out.push(FamilyRecord {
                        family: "Cartan".into(),
                        m,
                        l,
                        k,
                        alpha,
                        beta: parity_shift(alpha, k),
                        lambda: Some(cartan_lambda(m, k)),
                        nu: Some(cartan_nu(m, k)),
                        order: k,
                    });
                } else {
                    let k = m - l;
                    out.push(FamilyRecord {
                        family: "PRV".into(),
                        m,
                        l,
                        k,
                        alpha,
                        beta: parity_shift(alpha, k),
                        lambda: Some(prv_lambda(m, k)),
                        nu: Some(prv_nu(m, k)),
                        order: k,
                    });
                }
            }
        }
    }
    out
}

/// Θ on labels. The Cartan label `(m, k)` stands for `C^{m+k+1}_{m,k+1}` and
/// the PRV label `(a, b)` for `P^{a-b-1}_{a,b+1}`; Θ sends `(m, k)` to
/// `(m+k+1, m)`, i.e. `C^{m+k+1}_{m,k+1}` to `P^{k}_{m+k+1,m+1}`.
pub fn theta(m: u32, k: u32) -> (u32, u32) {
    (m + k + 1, m)
}

/// Inverse of [`theta`]: `(m, k) -> (k, m - k - 1)`.
pub fn theta_inv(m: u32, k: u32) -> Result<(u32, u32), ClassifyError> {
    if m < k + 1 {
        return Err(ClassifyError::ThetaInvDomain { m, k });
    }
    Ok((k, m - k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn pp(alpha: Parity, beta: Parity, m: u32, l: u32, lambda: Rat, nu: Rat) -> ParamPoint {
        ParamPoint { alpha, beta, m, l, lambda, nu }
    }

    #[test]
    fn classify_examples() {
        use Parity::*;
        let v = classify(&pp(Plus, Minus, 0, 1, int(0), rat(3, 2)));
        assert_eq!(v, Verdict { family: Family::Cartan { m: 0, k: 1 }, operator_order: 1 });
        let v = classify(&pp(Plus, Minus, 2, 1, int(2), rat(7, 2)));
        assert_eq!(v, Verdict { family: Family::Prv { m: 2, k: 1 }, operator_order: 1 });
        let v = classify(&pp(Plus, Plus, 3, 3, int(5), int(5)));
        assert_eq!(v.family, Family::Identity);
        let v = classify(&pp(Plus, Plus, 0, 1, int(0), rat(3, 2)));
        assert_eq!(v.family, Family::None);
        assert_eq!(v.dimension(), 0);
    }

    #[test]
    fn k_zero_is_identity_only_when_lambda_matches() {
        use Parity::*;
        assert_eq!(classify(&pp(Minus, Minus, 2, 2, rat(1, 3), rat(1, 3))).family, Family::Identity);
        assert_eq!(classify(&pp(Minus, Minus, 2, 2, rat(1, 3), rat(2, 3))).family, Family::None);
        assert_eq!(classify(&pp(Plus, Minus, 2, 2, int(0), int(0))).family, Family::None);
    }

    #[test]
    fn enumerate_small() {
        let e = enumerate(0, 0);
        assert!(e.iter().all(|r| r.family == "Identity"));
        let e = enumerate(1, 1);
        let fams: Vec<(&str, u32, u32)> = e
            .iter()
            .filter(|r| r.alpha == Parity::Plus)
            .map(|r| (r.family.as_str(), r.m, r.k))
            .collect();
        assert_eq!(fams, vec![("Identity", 0, 0), ("Cartan", 0, 1), ("PRV", 1, 1), ("Identity", 1, 0)]);
    }

    #[test]
    fn enumerate_counts_and_consistency() {
        let big_l = 6;
        let e = enumerate(big_l, big_l);
        let cartan = e.iter().filter(|r| r.family == "Cartan" && r.alpha == Parity::Plus).count();
        let expect = (0..=big_l).flat_map(|m| (1..=big_l).map(move |k| (m, k))).filter(|(m, k)| m + k <= big_l).count();
        assert_eq!(cartan, expect);
        for r in &e {
            if let (Some(lambda), Some(nu)) = (&r.lambda, &r.nu) {
                let v = classify(&pp(r.alpha, r.beta, r.m, r.l, lambda.clone(), nu.clone()));
                assert_eq!(v.family.name(), r.family);
                assert_eq!(v.operator_order, r.order);
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(0, 0), (1, 0));
        assert_eq!(theta(2, 1), (4, 2));
        for m in 0..=10 {
            for k in 0..=10 {
                assert_eq!(theta_inv(theta(m, k).0, theta(m, k).1).unwrap(), (m, k));
            }
        }
        assert!(theta_inv(1, 1).is_err());
    }

    #[test]
    fn cartan_target_is_theta_partner_source() {
        // target of C^{m+k+1}_{m,k+1} equals the source of P^k_{m+k+1,m+1}
        for m in 0..5u32 {
            for k in 0..5u32 {
                let alpha = Parity::of((m + k) as i64);
                let c_target = (m + k + 1, cartan_nu(m, k + 1), parity_shift(alpha, k + 1));
                let (pm, _) = theta(m, k);
                let p_source = (pm, prv_lambda(pm, m + 1), Parity::of((m + 1) as i64));
                assert_eq!(c_target, p_source);
            }
        }
    }
}
