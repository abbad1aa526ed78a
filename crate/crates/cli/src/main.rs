//! `rp2ido`: classification, construction and verification of intertwining
//! differential operators between line and vector bundles over RP^2.
//!
//! Exit status: 0 on success, 1 when a mathematical check fails, 2 on a
//! usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rp2_ido::bgg::{check_exactness, generate_kernel_rep, parity_check, BggComplex};
use rp2_ido::classify::{classify, enumerate, Family, ParamPoint};
use rp2_ido::exactalg::{fmt_rat, parse_rat, Rat};
use rp2_ido::fiber::Parity;
use rp2_ido::ido::{
    build_cartan_with, build_prv_with, check_intertwine, check_intertwine_op, compose_ido, dualize, Ido,
    InducedRepData,
};
use rp2_ido::verma::{build_phi_cartan_with, build_phi_prv_with, compose_homs, hom_oracle, verify_hom_report, VermaHom};
use rp2_ido::weights::{
    charmatch_lambda_set, find_linkages, infinitesimal_character_match, linkage_pair, su12_reduction_weights, LambdaSet,
};

#[derive(Parser, Debug)]
#[command(name = "rp2ido", version, about = "Intertwining differential operators for SL(3,R) over RP^2")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Cartan,
    Prv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a nonzero operator I(m,λ)^α -> I(l,ν)^β exists.
    Classify {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        lambda: Rat,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        nu: Rat,
        #[arg(long, value_parser = parity_arg, allow_hyphen_values = true)]
        alpha: Parity,
        #[arg(long, value_parser = parity_arg, allow_hyphen_values = true)]
        beta: Parity,
    },
    /// List all families with m <= max-m and l <= max-l.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        max_m: u32,
        #[arg(long, default_value_t = 3)]
        max_l: u32,
    },
    /// Print the Cartan or PRV operator.
    Construct {
        #[command(flatten)]
        op: OpArgs,
    },
    /// Build the operator from its Verma module hom and compare with the closed form.
    Dualize {
        #[command(flatten)]
        op: OpArgs,
    },
    /// Run one of the verification checks.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Brute-force and weight-theoretic oracles.
    Oracle {
        #[command(subcommand)]
        query: OracleCommand,
    },
    /// Report on the BGG complex for V(m ϖ1 + k ϖ2).
    Bgg {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        /// Defaults to m + k + 4.
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Weights at the reduction points of the holomorphic complex.
    Su12Weights {
        #[arg(long)]
        k: u32,
    },
}

#[derive(clap::Args, Debug, Clone)]
struct OpArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    k: u32,
    #[arg(long, value_parser = parity_arg, allow_hyphen_values = true, default_value = "+")]
    alpha: Parity,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// dπ_ν(X) D = D dπ_λ(X) for all basis elements X.
    Intertwine {
        #[command(flatten)]
        op: OpArgs,
        /// Shift λ (and ν with --joint) before checking.
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        shift: Option<Rat>,
        #[arg(long)]
        joint: bool,
    },
    /// P^k_{m+k+1,m+1} ∘ C^{m+k+1}_{m,k+1} = 0 and its Verma dual.
    Compose {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
    },
    /// n+-invariance and l-equivariance of the Verma module hom.
    VermaHom {
        #[command(flatten)]
        op: OpArgs,
    },
    /// Degree-wise exactness of the BGG complex.
    Exactness {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Parity character of the kernel and the Cartan operator.
    Parity {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Hom between generalized Verma modules in n- degree k, λ symbolic.
    Hom {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
    },
    /// Linking sequences between the ρ-shifted weights of a hom.
    Linkage {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
        lambda: Rat,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// λ values with matching infinitesimal characters.
    Charmatch {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        k: u32,
    },
}

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn parity_arg(s: &str) -> Result<Parity, String> {
    s.parse().map_err(|e: rp2_ido::fiber::FiberError| e.to_string())
}

/// Outcome of one command: the JSON document, its text rendering, and
/// whether every check passed.
struct Output {
    json: Value,
    text: String,
    ok: bool,
}

enum Failure {
    Usage(String),
}

fn build_op(a: &OpArgs) -> Result<Ido, Failure> {
    match a.family {
        FamilyArg::Cartan => Ok(build_cartan_with(a.m, a.k, a.alpha)),
        FamilyArg::Prv => build_prv_with(a.m, a.k, a.alpha).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn build_hom(a: &OpArgs) -> Result<VermaHom, Failure> {
    match a.family {
        FamilyArg::Cartan => Ok(build_phi_cartan_with(a.m, a.k, a.alpha)),
        FamilyArg::Prv => build_phi_prv_with(a.m, a.k, a.alpha).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn family_k(f: &Family) -> Option<u32> {
    match f {
        Family::Identity => Some(0),
        Family::Cartan { k, .. } | Family::Prv { k, .. } => Some(*k),
        Family::None => None,
    }
}

fn data_text(d: &InducedRepData) -> String {
    format!("I({}, {})^{}", d.m, fmt_rat(&d.lambda), d.alpha)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Classify { m, l, lambda, nu, alpha, beta } => {
            let p = ParamPoint { alpha: *alpha, beta: *beta, m: *m, l: *l, lambda: lambda.clone(), nu: nu.clone() };
            let v = classify(&p);
            let json = json!({
                "family": v.family.name(),
                "k": family_k(&v.family),
                "order": v.operator_order,
                "dimension": v.dimension(),
                "m": m, "l": l,
                "lambda": fmt_rat(lambda), "nu": fmt_rat(nu),
                "alpha": alpha, "beta": beta,
            });
            let text = format!(
                "I({m}, {})^{alpha} -> I({l}, {})^{beta}: {} (order {}, dim {})\n",
                fmt_rat(lambda),
                fmt_rat(nu),
                v.family,
                v.operator_order,
                v.dimension()
            );
            Ok(Output { json, text, ok: true })
        }
        Command::Enumerate { max_m, max_l } => {
            let recs = enumerate(*max_m, *max_l);
            let mut text = String::new();
            for r in &recs {
                let _ = writeln!(
                    text,
                    "{:8} m={} l={} k={} α={} β={} λ={} ν={} order={}",
                    r.family,
                    r.m,
                    r.l,
                    r.k,
                    r.alpha,
                    r.beta,
                    r.lambda_text(),
                    r.nu_text(),
                    r.order
                );
            }
            Ok(Output { json: json!(recs), text, ok: true })
        }
        Command::Construct { op } => {
            let d = build_op(op)?;
            Ok(Output { json: d.to_json(), text: format!("{d}\n"), ok: true })
        }
        Command::Dualize { op } => {
            let phi = build_hom(op)?;
            let dual = dualize(&phi);
            let closed = build_op(op)?;
            let agrees = dual.op == closed.op && dual.source == closed.source && dual.target == closed.target;
            let json = json!({
                "verma_hom": phi.to_json(),
                "operator": dual.to_json(),
                "matches_closed_form": agrees,
            });
            let text = format!("{phi}dual operator:\n{dual}\nmatches closed form: {agrees}\n");
            Ok(Output { json, text, ok: agrees })
        }
        Command::Verify { check } => run_verify(check),
        Command::Oracle { query } => run_oracle(query),
        Command::Bgg { m, k, max_degree } => {
            let d = max_degree.unwrap_or(m + k + 4);
            let cx = BggComplex::new(*m, *k);
            let exact = check_exactness(*m, *k, d);
            let rep = generate_kernel_rep(*m, *k).map_err(|e| Failure::Usage(e.to_string()))?;
            let profile: Vec<Value> =
                rep.grading_profile().iter().map(|(w, n)| json!({"a_weight": fmt_rat(w), "dim": n})).collect();
            let composite_zero = cx.composite().is_zero();
            let highest = rep.highest_weight();
            let json = json!({
                "stages": cx.stages,
                "cartan": cx.cartan.family.to_string(),
                "prv": cx.prv.family.to_string(),
                "composite_zero": composite_zero,
                "kernel_dim": rep.dim(),
                "highest_weight": highest,
                "grading": profile,
                "exactness": exact,
            });
            let mut text = format!(
                "{} --{}--> {} --{}--> {}\n",
                data_text(&cx.stages[0]),
                cx.cartan.family,
                data_text(&cx.stages[1]),
                cx.prv.family,
                data_text(&cx.stages[2])
            );
            let _ = writeln!(text, "P ∘ C = 0: {composite_zero}");
            let _ = writeln!(
                text,
                "kernel: dim {}, highest weight {}",
                rep.dim(),
                highest.map_or("?".to_string(), |w| w.to_string())
            );
            for (w, n) in rep.grading_profile() {
                let _ = writeln!(text, "  a-weight {}: dim {n}", fmt_rat(&w));
            }
            text.push_str(&exactness_text(&exact));
            Ok(Output { json, text, ok: exact.exact && composite_zero })
        }
        Command::Su12Weights { k } => {
            let (a, b) = su12_reduction_weights(*k);
            let json = json!({"k": k, "weights": [a, b]});
            Ok(Output { json, text: format!("{a}\n{b}\n"), ok: true })
        }
    }
}

fn exactness_text(r: &rp2_ido::bgg::ExactnessReport) -> String {
    let mut text = format!(
        "exactness up to degree {}: {:?} (kernel dim {}, expected {})\n",
        r.max_degree, r.status, r.kernel_dim, r.expected_kernel_dim
    );
    for d in &r.per_degree {
        let ker_p = d.dim_ker_p.map_or("-".to_string(), |x| x.to_string());
        let _ = writeln!(
            text,
            "  d={}: rank C={} ker C={} ker P={} ok={}",
            d.d, d.rank_c, d.kernel_c, ker_p, d.ok
        );
    }
    text
}

fn run_verify(check: &VerifyCommand) -> Result<Output, Failure> {
    match check {
        VerifyCommand::Intertwine { op, shift, joint } => {
            let d = build_op(op)?;
            let mut source = d.source.clone();
            let mut target = d.target.clone();
            if let Some(s) = shift {
                source.lambda += s;
                if *joint {
                    target.lambda += s;
                }
            }
            let r = check_intertwine_op(&d.op, &source, &target);
            let json = json!({
                "operator": d.family.to_string(),
                "source": source, "target": target,
                "ok": r.ok, "failures": r.failures,
            });
            let text = format!(
                "{}: {} -> {}: {}\n",
                d.family,
                data_text(&source),
                data_text(&target),
                if r.ok { "intertwines".to_string() } else { format!("fails on {}", r.failures.join(", ")) }
            );
            Ok(Output { json, text, ok: r.ok })
        }
        VerifyCommand::Compose { m, k } => {
            let cx = BggComplex::new(*m, *k);
            let ido_zero = compose_ido(&cx.cartan, &cx.prv).map(|c| c.op.is_zero()).unwrap_or(false);
            let phi_c = build_phi_cartan_with(*m, k + 1, cx.cartan.source.alpha);
            let phi_p = build_phi_prv_with(m + k + 1, m + 1, phi_c.beta).map_err(|e| Failure::Usage(e.to_string()))?;
            let verma_zero = compose_homs(&phi_c, &phi_p).map(|c| c.is_zero()).unwrap_or(false);
            let intertwine = check_intertwine(&cx.cartan).ok && check_intertwine(&cx.prv).ok;
            let ok = ido_zero && verma_zero && intertwine;
            let json = json!({
                "m": m, "k": k,
                "operators": [cx.cartan.family.to_string(), cx.prv.family.to_string()],
                "composition_zero": ido_zero,
                "verma_composition_zero": verma_zero,
                "factors_intertwine": intertwine,
                "ok": ok,
            });
            let text = format!(
                "{} ∘ {} = 0: {ido_zero}\nVerma dual composition = 0: {verma_zero}\nfactors intertwine: {intertwine}\n",
                cx.prv.family, cx.cartan.family
            );
            Ok(Output { json, text, ok })
        }
        VerifyCommand::VermaHom { op } => {
            let phi = build_hom(op)?;
            let r = verify_hom_report(&phi);
            let json = json!({"hom": phi.to_json(), "checks": r, "ok": r.ok()});
            let text = format!("{phi}{r:?}\nok: {}\n", r.ok());
            Ok(Output { json, text, ok: r.ok() })
        }
        VerifyCommand::Exactness { m, k, max_degree } => {
            let r = check_exactness(*m, *k, max_degree.unwrap_or(m + k + 4));
            let ok = r.exact;
            Ok(Output { text: exactness_text(&r), json: serde_json::to_value(&r).expect("serializable"), ok })
        }
        VerifyCommand::Parity { m, k } => {
            let r = parity_check(*m, *k).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut text = format!(
                "lowest vector character: {:?} (expected {})\nparities matching the group action: {:?}\n",
                r.lowest_character, r.expected_lowest_character, r.matching_alpha
            );
            for j in &r.cartan_jumps {
                let _ = writeln!(text, "  {}: character {:?}, expected {}", j.element, j.character, j.expected);
            }
            let _ = writeln!(text, "ok: {}", r.ok);
            Ok(Output { json: serde_json::to_value(&r).expect("serializable"), text, ok: r.ok })
        }
    }
}

fn run_oracle(query: &OracleCommand) -> Result<Output, Failure> {
    match query {
        OracleCommand::Hom { m, l, k } => {
            let r = hom_oracle(*m, *l, *k);
            let mut text = format!("equivariant maps: {}\n", r.equivariant_dim);
            if r.solutions.is_empty() {
                text.push_str("no homomorphisms\n");
            }
            for s in &r.solutions {
                let lam = s.lambda.as_ref().map_or("any".to_string(), fmt_rat);
                let _ = writeln!(text, "λ = {lam}: dim {}", s.basis.len());
            }
            Ok(Output { json: r.to_json(), text, ok: true })
        }
        OracleCommand::Linkage { m, l, k, lambda, max_len } => {
            let (eta, mu) = linkage_pair(*m, *l, *k, lambda);
            let r = find_linkages(&eta, &mu, *max_len).map_err(|e| Failure::Usage(e.to_string()))?;
            let json = json!({"eta": eta, "mu": mu, "result": r});
            let mut text = format!("η = {eta}\nμ = {mu}\n");
            for s in &r.sequences {
                let labels: Vec<String> = s.iter().map(|b| b.label()).collect();
                let _ = writeln!(text, "sequence: ({})", labels.join(", "));
            }
            let _ = writeln!(text, "standard map nonzero: {}", r.boe_standard_nonzero);
            Ok(Output { json, text, ok: true })
        }
        OracleCommand::Charmatch { m, l, k } => {
            let set = charmatch_lambda_set(*m, *l, *k);
            let sols = infinitesimal_character_match(*m, *l, *k);
            let lambdas = match &set {
                LambdaSet::All => json!("any"),
                LambdaSet::Values(v) => json!(v.iter().map(fmt_rat).collect::<Vec<_>>()),
            };
            let json = json!({"m": m, "l": l, "k": k, "lambda": lambdas, "per_weyl_element": sols});
            let text = match &set {
                LambdaSet::All => "λ: any\n".to_string(),
                LambdaSet::Values(v) => {
                    format!("λ: {{{}}}\n", v.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
                }
            };
            Ok(Output { json, text, ok: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable") + "\n",
        Format::Text => out.text,
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
