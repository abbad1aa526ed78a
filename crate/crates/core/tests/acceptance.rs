//! End-to-end acceptance checks. Runs as a plain binary (no libtest harness)
//! and prints one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use rp2_ido::bgg::{check_exactness, generate_kernel_rep, parity_check, weyl_dim};
use rp2_ido::classify::{enumerate, theta, theta_inv};
use rp2_ido::exactalg::{int, rat, Rat};
use rp2_ido::fiber::Parity;
use rp2_ido::ido::{build_cartan, build_cartan_with, build_prv, build_prv_with, check_intertwine, compose_ido, perturb};
use rp2_ido::verma::{
    build_phi_cartan, build_phi_cartan_with, build_phi_prv, build_phi_prv_with, compose_homs, hom_oracle, verify_hom_report,
};
use rp2_ido::weights::{
    charmatch_lambda_set, clebsch_gordan_admissible, d_chi, find_linkages, linkage_pair, omega1, pair, sequence_links,
    su12_reduction_weights, LambdaSet, Root, Weight,
};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Brute-force Hom spaces against the closed-form classification.
fn classification_equivalence() -> Check {
    let records = enumerate(4, 4);
    for m in 0..=4u32 {
        for l in 0..=4u32 {
            for k in 0..=(m + l) {
                let expected: Vec<Option<Rat>> = records
                    .iter()
                    .filter(|r| r.alpha == Parity::Plus && r.m == m && r.l == l && r.k == k)
                    .map(|r| r.lambda.clone())
                    .collect();
                let oracle = hom_oracle(m, l, k);
                let found: Vec<Option<Rat>> = oracle.solutions.iter().map(|s| s.lambda.clone()).collect();
                ensure(found == expected, || format!("(m,l,k)=({m},{l},{k}): oracle {found:?}, classify {expected:?}"))?;
                for s in &oracle.solutions {
                    ensure(s.basis.len() == 1, || format!("(m,l,k)=({m},{l},{k}): Hom dimension {}", s.basis.len()))?;
                }
            }
        }
    }
    // spot values
    ensure(hom_oracle(1, 2, 1).solutions[0].lambda == Some(rat(-1, 2)), || "(1,2,1)".into())?;
    ensure(hom_oracle(2, 1, 1).solutions[0].lambda == Some(int(2)), || "(2,1,1)".into())?;
    ensure(hom_oracle(2, 2, 2).solutions.is_empty(), || "(2,2,2)".into())
}

fn symbolic_intertwining() -> Check {
    let one = int(1);
    let minus_one = int(-1);
    for m in 0..=3u32 {
        for k in 0..=3u32 {
            let mut ops = vec![build_cartan(m, k)];
            if m >= k {
                ops.push(build_prv(m, k).map_err(|e| e.to_string())?);
            }
            for d in ops {
                let r = check_intertwine(&d);
                ensure(r.ok, || format!("{} fails on {:?}", d.family, r.failures))?;
                for delta in [&one, &minus_one] {
                    ensure(!check_intertwine(&perturb(&d, delta, false)).ok, || {
                        format!("{} still intertwines with λ shifted by {delta}", d.family)
                    })?;
                    if k > 0 {
                        ensure(!check_intertwine(&perturb(&d, delta, true)).ok, || {
                            format!("{} still intertwines with λ, ν shifted by {delta}", d.family)
                        })?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn verma_homomorphisms() -> Check {
    for m in 0..=3u32 {
        for k in 0..=3u32 {
            let mut homs = vec![("cartan", build_phi_cartan(m, k))];
            if m >= k {
                homs.push(("prv", build_phi_prv(m, k).map_err(|e| e.to_string())?));
            }
            for (name, phi) in homs {
                let r = verify_hom_report(&phi);
                ensure(r.ok(), || format!("{name} ({m},{k}): {r:?}"))?;
            }
        }
    }
    Ok(())
}

fn composition_vanishing() -> Check {
    for m in 0..=2u32 {
        for k in 0..=2u32 {
            let alpha = Parity::of((m + k) as i64);
            let c = build_cartan_with(m, k + 1, alpha);
            let p = build_prv_with(m + k + 1, m + 1, c.target.alpha).map_err(|e| e.to_string())?;
            let comp = compose_ido(&c, &p).map_err(|e| e.to_string())?;
            ensure(comp.op.is_zero(), || format!("P∘C nonzero for ({m},{k})"))?;
            ensure(!c.op.is_zero() && !p.op.is_zero(), || format!("zero factor for ({m},{k})"))?;

            let phi_c = build_phi_cartan_with(m, k + 1, alpha);
            let phi_p = build_phi_prv_with(m + k + 1, m + 1, phi_c.beta).map_err(|e| e.to_string())?;
            let dual = compose_homs(&phi_c, &phi_p).map_err(|e| e.to_string())?;
            ensure(dual.is_zero(), || format!("φ_C∘φ_P nonzero for ({m},{k})"))?;
        }
    }
    for m in 0..=10u32 {
        for k in 0..=10u32 {
            let (a, b) = theta(m, k);
            ensure(theta_inv(a, b) == Ok((m, k)), || format!("Θ⁻¹Θ({m},{k})"))?;
            if m > k {
                let (a, b) = theta_inv(m, k).map_err(|e| e.to_string())?;
                ensure(theta(a, b) == (m, k), || format!("ΘΘ⁻¹({m},{k})"))?;
            }
        }
    }
    Ok(())
}

fn bgg_exactness() -> Check {
    let expected = [((0, 0), 1), ((1, 0), 3), ((0, 1), 3), ((1, 1), 8), ((2, 1), 15), ((1, 2), 15), ((2, 2), 27)];
    for m in 0..=2u32 {
        for k in 0..=2u32 {
            let r = check_exactness(m, k, m + k + 4);
            ensure(r.exact, || format!("({m},{k}): {r:?}"))?;
            ensure(r.kernel_dim == weyl_dim(m, k), || format!("({m},{k}) kernel {}", r.kernel_dim))?;
            if let Some((_, dim)) = expected.iter().find(|(mk, _)| *mk == (m, k)) {
                ensure(r.kernel_dim == *dim, || format!("({m},{k}) kernel {} != {dim}", r.kernel_dim))?;
            }
        }
    }
    Ok(())
}

fn kernel_representation() -> Check {
    for m in 0..=2u32 {
        for k in 0..=2u32 {
            let rep = generate_kernel_rep(m, k).map_err(|e| e.to_string())?;
            ensure(rep.dim() == weyl_dim(m, k), || format!("({m},{k}) dim {}", rep.dim()))?;
            ensure(rep.is_dpi_stable(), || format!("({m},{k}) not stable"))?;
            ensure(rep.in_cartan_kernel(), || format!("({m},{k}) not in Ker C"))?;
            let profile = rep.grading_profile();
            let low = rat(-(m as i64 + 2 * k as i64), 2);
            let levels: Vec<Rat> = (0..=(m + k)).map(|j| &low + rat(3 * j as i64, 2)).collect();
            let got: Vec<Rat> = profile.iter().map(|(w, _)| w.clone()).collect();
            ensure(got == levels, || format!("({m},{k}) levels {got:?}"))?;
            ensure(profile[0].1 == m as usize + 1, || format!("({m},{k}) bottom {}", profile[0].1))?;
            let total: usize = profile.iter().map(|(_, d)| d).sum();
            ensure(total == weyl_dim(m, k), || format!("({m},{k}) graded total {total}"))?;
        }
    }
    Ok(())
}

fn linkage_layer() -> Check {
    for m in 0..=5u32 {
        for k in 1..=5u32 {
            let lambda = rat(2 - m as i64 - 2 * k as i64, 2);
            let (eta, mu) = linkage_pair(m, m + k, k, &lambda);
            let r = find_linkages(&eta, &mu, 3).map_err(|e| e.to_string())?;
            ensure(r.sequences == vec![vec![Root::E12]], || format!("Cartan ({m},{k}): {:?}", r.sequences))?;
            ensure(pair(&eta, Root::E12) == int(k as i64), || format!("Cartan ({m},{k}) pairing"))?;
            ensure(r.boe_standard_nonzero, || format!("Cartan ({m},{k}) Boe"))?;
            if m >= k {
                let lambda = rat(4 + m as i64 - 2 * k as i64, 2);
                let (eta, mu) = linkage_pair(m, m - k, k, &lambda);
                let r = find_linkages(&eta, &mu, 3).map_err(|e| e.to_string())?;
                ensure(r.sequences == vec![vec![Root::E13]], || format!("PRV ({m},{k}): {:?}", r.sequences))?;
                ensure(r.boe_standard_nonzero, || format!("PRV ({m},{k}) Boe"))?;
                for cand in [[Root::E12, Root::E23, Root::E12], [Root::E23, Root::E12, Root::E23]] {
                    ensure(!sequence_links(&eta, &mu, &cand), || format!("PRV ({m},{k}) length 3 links"))?;
                }
            }
        }
    }
    for m in 0..=6u32 {
        for l in 0..=6u32 {
            for k in 0..=6u32 {
                let expect = if !clebsch_gordan_admissible(m, l, k) {
                    LambdaSet::Values(vec![])
                } else if k == 0 {
                    LambdaSet::All
                } else if l == m + k {
                    LambdaSet::Values(vec![rat(2 - m as i64 - 2 * k as i64, 2)])
                } else if l + k == m {
                    LambdaSet::Values(vec![rat(4 + m as i64 - 2 * k as i64, 2)])
                } else {
                    LambdaSet::Values(vec![])
                };
                let got = charmatch_lambda_set(m, l, k);
                ensure(got == expect, || format!("charmatch ({m},{l},{k}): {got:?}"))?;
            }
        }
    }
    Ok(())
}

fn parity_bookkeeping() -> Check {
    for m in 0..=2u32 {
        for k in 0..=2u32 {
            let r = parity_check(m, k).map_err(|e| e.to_string())?;
            ensure(r.ok, || format!("({m},{k}): {r:?}"))?;
        }
    }
    Ok(())
}

fn su12_weights() -> Check {
    for k in 0..=20u32 {
        let (w0, w1) = su12_reduction_weights(k);
        ensure(w0 == Weight::zero(), || format!("k={k}: first weight {w0}"))?;
        let direct = Weight::frac(-1, 1, 0, 1).add(&Weight::frac(-1, 2, -1, 3).scale(&int(k as i64)));
        ensure(w1 == direct, || format!("k={k}: {w1}"))?;
        let via_chars = omega1().scale(&int(k as i64 + 1)).sub(&d_chi().scale(&rat(3 + k as i64, 2)));
        ensure(w1 == via_chars, || format!("k={k}: {w1} vs {via_chars}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("classification equivalence", classification_equivalence),
        ("symbolic intertwining", symbolic_intertwining),
        ("Verma homomorphisms", verma_homomorphisms),
        ("composition vanishing", composition_vanishing),
        ("BGG exactness", bgg_exactness),
        ("kernel representation", kernel_representation),
        ("linkage and standard maps", linkage_layer),
        ("parity bookkeeping", parity_bookkeeping),
        ("reduction weights", su12_weights),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {}: {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}: {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
