//! Batch front end: every subcommand reads exact scalars in the textual
//! `(num)/(den)` format, emits JSON, and signals through the exit code.
//! Exit 0 means every check passed, 1 means a mathematical check failed
//! (the failing cases are in the JSON), 2 means the input did not parse.

use std::fmt::Display;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use qcurrent_core::hwclass::{
    canonicalize, equivalent, in_canonical_set, psi_series, weyl_hw, Multipartition, NodePolynomial,
    NodeReport,
};
use qcurrent_core::pbwcheck::pbw_verify;
use qcurrent_core::repmodule::{
    one_dim_module, sl2_eval_module, solve_loop_action, tensor, verify_relations, FamilyCheck,
    Module, ModuleReport,
};
use qcurrent_core::symfun::{identity_suite, Partition};
use qcurrent_core::QRational;

#[derive(Parser)]
#[command(name = "qcurrent", version, about = "Exact verification suites for (q,Q)-current algebras")]
struct Cli {
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Output format (only json).
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the symmetric-polynomial recurrences on random exact data.
    Identities {
        /// Largest variable count.
        #[arg(long, default_value_t = 5)]
        k: u32,
        /// Largest degree.
        #[arg(long, default_value_t = 8)]
        tmax: u32,
        /// First seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of seeds.
        #[arg(long, default_value_t = 50)]
        seeds: u64,
    },
    /// Highest-weight data of node polynomials.
    Classify(ClassifyArgs),
    /// Canonical representative of a polynomial at a nonzero parameter.
    Canonicalize {
        /// Shift parameter (one scalar).
        #[arg(long = "Q")]
        q_param: String,
        /// Polynomial, as `beta=<scalar>;roots=<scalar>,<scalar>,...`.
        #[arg(long)]
        phi: String,
    },
    /// Eigen-series of the commuting family on the classified module.
    PsiSeries {
        #[arg(long = "Q")]
        q_param: String,
        #[arg(long)]
        phi: String,
        /// Truncation order.
        #[arg(long = "T", default_value_t = 8)]
        trunc: i64,
    },
    /// Build a module from a construction spec and report its data.
    Build(BuildArgs),
    /// Build a module and verify every defining relation.
    Verify(BuildArgs),
    /// Compare graded dimensions against ordered-monomial counts.
    Pbw {
        /// n (the rank is n-1).
        #[arg(long)]
        n: u8,
        /// Largest multiplicity of each simple root.
        #[arg(long)]
        maxweight: u32,
        /// Largest level sum.
        #[arg(long)]
        maxs: u32,
        /// Level cap.
        #[arg(long = "T")]
        t_cap: u32,
    },
    /// Highest-weight data of a cell module over a shape vector.
    WeylHw {
        /// Shape vector, comma separated (for example 2,2).
        #[arg(long)]
        shape: String,
        /// Multipartition as a JSON array of arrays (for example [[2],[]]).
        #[arg(long)]
        lpartition: String,
        /// Cyclotomic parameters, comma separated.
        #[arg(long = "Qhat")]
        q_hat: String,
        #[arg(long = "T", default_value_t = 4)]
        trunc: u32,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// n (the rank is n-1).
    #[arg(long)]
    n: u8,
    /// Comma-separated shift parameters, one per node.
    #[arg(long = "Q")]
    q_params: String,
    /// One polynomial per node, repeated: `beta=<scalar>;roots=...`.
    #[arg(long)]
    phi: Vec<String>,
    /// Stored truncation; defaults to 2*max(deg)+4.
    #[arg(long = "T")]
    trunc: Option<u32>,
}

#[derive(Args)]
struct BuildArgs {
    /// Construction spec as inline JSON, or @path to read a file.
    #[arg(long)]
    spec: String,
    /// Level cap for caches and checks.
    #[arg(long = "T", default_value_t = 4)]
    trunc: u32,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum BuildSpec {
    Onedim {
        #[serde(rename = "Q")]
        q_params: Vec<String>,
        beta: Vec<String>,
    },
    Sl2eval {
        gamma: String,
    },
    Loop {
        n: u8,
        i: u8,
        gamma: String,
    },
    Tensor {
        factors: Vec<BuildSpec>,
    },
}

/// Input that does not parse or validate; exits with code 2. Mathematical
/// check failures are not errors: they exit 1 with the report JSON.
struct Failure(String);

impl Failure {
    fn parse(e: impl Display) -> Failure {
        Failure(e.to_string())
    }
}

fn scalar(s: &str) -> Result<QRational, Failure> {
    s.parse::<QRational>().map_err(Failure::parse)
}

fn scalar_list(s: &str) -> Result<Vec<QRational>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|part| scalar(part.trim())).collect()
}

/// `beta=<scalar>;roots=<scalar>,...` with the roots part optional.
fn parse_phi(s: &str) -> Result<NodePolynomial, Failure> {
    let mut beta = None;
    let mut roots = Vec::new();
    for piece in s.split(';') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        let (key, value) = piece
            .split_once('=')
            .ok_or_else(|| Failure(format!("expected key=value in {piece:?}")))?;
        match key.trim() {
            "beta" => beta = Some(scalar(value)?),
            "roots" => roots = scalar_list(value)?,
            other => return Err(Failure(format!("unknown key {other:?}"))),
        }
    }
    let beta = beta.ok_or_else(|| Failure("missing beta=".into()))?;
    NodePolynomial::new(beta, roots).map_err(Failure::parse)
}

fn build_module(spec: &BuildSpec, trunc: u32) -> Result<Module, Failure> {
    match spec {
        BuildSpec::Onedim { q_params, beta } => {
            let q: Vec<QRational> = q_params
                .iter()
                .map(|s| scalar(s))
                .collect::<Result<_, _>>()?;
            let b: Vec<QRational> = beta.iter().map(|s| scalar(s)).collect::<Result<_, _>>()?;
            one_dim_module(&q, &b, trunc).map_err(Failure::parse)
        }
        BuildSpec::Sl2eval { gamma } => {
            sl2_eval_module(&scalar(gamma)?, trunc).map_err(Failure::parse)
        }
        BuildSpec::Loop { n, i, gamma } => {
            solve_loop_action(*n, *i, &scalar(gamma)?, trunc).map_err(Failure::parse)
        }
        BuildSpec::Tensor { factors } => {
            let mut built = factors.iter().map(|f| build_module(f, trunc));
            let first = built
                .next()
                .ok_or_else(|| Failure("tensor needs at least one factor".into()))??;
            let mut acc = first;
            for factor in built {
                acc = tensor(&acc, &factor?).map_err(Failure::parse)?;
            }
            Ok(acc)
        }
    }
}

fn module_report(m: &Module, checks: Option<std::collections::BTreeMap<String, FamilyCheck>>) -> ModuleReport {
    ModuleReport {
        dim: m.dim(),
        weights: m.weights().to_vec(),
        hw: m.hw_of().ok().map(|r| r.hw),
        relation_checks: checks.unwrap_or_default(),
    }
}

fn run(cli: &Cli) -> Result<(serde_json::Value, bool), Failure> {
    match &cli.command {
        Command::Identities { k, tmax, seed, seeds } => {
            let seed_list: Vec<u64> = (0..*seeds).map(|i| seed + i).collect();
            let report = identity_suite(*k, *tmax, &seed_list);
            let pass = report.pass;
            Ok((serde_json::to_value(&report).map_err(Failure::parse)?, pass))
        }
        Command::Classify(args) => {
            let rank = args
                .n
                .checked_sub(1)
                .filter(|r| *r > 0)
                .ok_or_else(|| Failure("need n >= 2".into()))?;
            let q_params = scalar_list(&args.q_params)?;
            if q_params.len() != rank as usize {
                return Err(Failure(format!(
                    "expected {rank} parameters, got {}",
                    q_params.len()
                )));
            }
            if args.phi.len() != rank as usize {
                return Err(Failure(format!(
                    "expected {rank} --phi arguments, got {}",
                    args.phi.len()
                )));
            }
            let phis = args
                .phi
                .iter()
                .map(|s| parse_phi(s))
                .collect::<Result<Vec<_>, _>>()?;
            let trunc = args.trunc.unwrap_or_else(|| {
                phis.iter()
                    .map(|p| qcurrent_core::hwclass::default_truncation(p.degree()))
                    .max()
                    .unwrap_or(4)
            });
            let mut nodes = Vec::new();
            for (idx, (q_i, phi)) in q_params.iter().zip(&phis).enumerate() {
                let report =
                    NodeReport::build(idx as u8 + 1, q_i, phi, trunc).map_err(Failure::parse)?;
                nodes.push(report);
            }
            Ok((serde_json::to_value(&nodes).map_err(Failure::parse)?, true))
        }
        Command::Canonicalize { q_param, phi } => {
            let q = scalar(q_param)?;
            let phi = parse_phi(phi)?;
            let canon = canonicalize(&q, &phi).map_err(Failure::parse)?;
            let value = json!({
                "Q": q,
                "input": phi,
                "canonical": canon,
                "inputCanonical": in_canonical_set(&q, &phi),
                "equivalent": equivalent(&q, &phi, &canon),
            });
            Ok((value, true))
        }
        Command::PsiSeries { q_param, phi, trunc } => {
            let q = scalar(q_param)?;
            let phi = parse_phi(phi)?;
            let series = psi_series(&q, &phi, *trunc).map_err(Failure::parse)?;
            let coeffs: Vec<(i64, QRational)> = (series.lowest()..=series.trunc())
                .map(|e| (e, series.coeff(e)))
                .collect();
            let value = json!({
                "Q": q,
                "phi": phi,
                "T": trunc,
                "lowest": series.lowest(),
                "coefficients": coeffs,
            });
            Ok((value, true))
        }
        Command::Build(args) => {
            let spec = read_spec(&args.spec)?;
            let module = build_module(&spec, args.trunc)?;
            let report = module_report(&module, None);
            Ok((serde_json::to_value(&report).map_err(Failure::parse)?, true))
        }
        Command::Verify(args) => {
            let spec = read_spec(&args.spec)?;
            let module = build_module(&spec, args.trunc)?;
            let relations = verify_relations(&module, args.trunc).map_err(Failure::parse)?;
            let pass = relations.pass();
            let checks = relations
                .families
                .iter()
                .map(|(k, v)| {
                    (
                        k.clone(),
                        FamilyCheck {
                            instances: v.instances,
                            failures: v.failures,
                        },
                    )
                })
                .collect();
            let report = module_report(&module, Some(checks));
            Ok((serde_json::to_value(&report).map_err(Failure::parse)?, pass))
        }
        Command::Pbw { n, maxweight, maxs, t_cap } => {
            if *n < 2 {
                return Err(Failure("need n >= 2".into()));
            }
            let report = pbw_verify(*n, *maxweight, *maxs, *t_cap).map_err(Failure::parse)?;
            let pass = report.pass;
            Ok((serde_json::to_value(&report).map_err(Failure::parse)?, pass))
        }
        Command::WeylHw { shape, lpartition, q_hat, trunc } => {
            let shape: Vec<u32> = shape
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(Failure::parse))
                .collect::<Result<_, _>>()?;
            let raw: Vec<Vec<u32>> = serde_json::from_str(lpartition).map_err(Failure::parse)?;
            let components = raw
                .into_iter()
                .map(Partition::new)
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::parse)?;
            let lambda = Multipartition::new(components);
            let q_hat = scalar_list(q_hat)?;
            let nodes = weyl_hw(&shape, &lambda, &q_hat, *trunc).map_err(Failure::parse)?;
            Ok((serde_json::to_value(&nodes).map_err(Failure::parse)?, true))
        }
    }
}

fn read_spec(s: &str) -> Result<BuildSpec, Failure> {
    let text = if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(Failure::parse)?
    } else {
        s.to_string()
    };
    serde_json::from_str(&text).map_err(Failure::parse)
}

fn emit(cli: &Cli, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(Failure::parse)?;
    match &cli.output {
        Some(path) => std::fs::write(path, text + "\n").map_err(Failure::parse)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.format != "json" {
        eprintln!("error: only --format json is supported");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok((value, pass)) => {
            if emit(&cli, &value).is_err() {
                eprintln!("error: cannot write output");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
