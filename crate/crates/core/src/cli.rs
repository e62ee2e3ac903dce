//! Command-line front end. Every command prints one JSON report on
//! standard output.
//!
//! Exit codes: 0 on success, 1 when a computation fails or a verification
//! does not pass, 2 for usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::{acceleration_operator, solve_invariant_space, ClassificationConfig, InvariantBasis};
use crate::dynamics::{evolve, init_gaussian, tail_mass, SimulationConfig};
use crate::error::Error;
use crate::expr::parse_operator;
use crate::galilei::{
    build_classical_rep, build_hybrid_rep, build_quantum_rep, liouvillian_from_hamiltonian, two_particle_quantum_check,
    verify_algebra, AlgebraReport, PhaseSpacePoly,
};
use crate::opalgebra::OperatorExpr;
use crate::scalar::{Param, ParamScalar};

#[derive(Debug, Parser)]
#[command(name = "hybrid-galilei", version, about = "Galilei-covariant quantum-classical hybrid toolkit")]
struct Cli {
    /// Single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of the commutator [A, B].
    Commute {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Canonical normal-ordered form of an expression.
    NormalForm {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Check the Galilei brackets of a representation.
    Verify {
        #[arg(long, value_enum)]
        rep: Rep,
        /// Hybrid interaction term, or pair potential for two-particle.
        #[arg(long, allow_hyphen_values = true)]
        interaction: Option<String>,
    },
    /// Enumerate Galilei-invariant hybrid interaction terms.
    Classify {
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, default_value_t = 1)]
        lp_degree: u32,
        /// Also require commuting with the total momentum k + p.
        #[arg(long)]
        conserve_momentum: bool,
        /// Keep plain products instead of symmetrizing them.
        #[arg(long)]
        no_symmetrize: bool,
    },
    /// Liouvillian of a classical Hamiltonian function of q and p.
    Liouvillian {
        #[arg(long, allow_hyphen_values = true)]
        hamiltonian: String,
    },
    /// Run a split-step simulation and write its time series as CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Rep {
    Quantum,
    Classical,
    Hybrid,
    TwoParticle,
}

/// An operator in both renderings.
#[derive(Debug, Serialize)]
pub struct Rendered {
    pub ascii: String,
    pub unicode: String,
}

impl From<&OperatorExpr> for Rendered {
    fn from(e: &OperatorExpr) -> Self {
        Rendered { ascii: e.to_string(), unicode: e.unicode() }
    }
}

#[derive(Serialize)]
struct ExprReport<'a> {
    command: &'a str,
    inputs: Vec<&'a str>,
    result: Rendered,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    command: &'static str,
    representation: &'a str,
    interaction: Option<Rendered>,
    all_pass: bool,
    checked: usize,
    failed: usize,
    relations: &'a AlgebraReport,
}

#[derive(Serialize)]
struct ElementReport {
    label: String,
    unicode_label: String,
    expr: Rendered,
    symbolic: bool,
    hermitian: bool,
    residuals_zero: bool,
    algebra_verified: Option<bool>,
    conserves_momentum: bool,
    commutes_with_q: bool,
    commutes_with_p: bool,
    back_reaction: bool,
    acceleration: Option<Vec<String>>,
    acceleration_observable: Option<bool>,
}

#[derive(Serialize)]
struct ClassifyReport {
    command: &'static str,
    max_degree: u32,
    lp_degree: u32,
    conserve_momentum: bool,
    symmetrized: bool,
    monomials: usize,
    constraint_rows: usize,
    rank: usize,
    dimension: usize,
    named: bool,
    elements: Vec<ElementReport>,
    reduced_basis: Vec<String>,
}

#[derive(Serialize)]
struct LiouvillianReport<'a> {
    command: &'static str,
    hamiltonian: Rendered,
    liouvillian: Rendered,
    input: &'a str,
}

#[derive(Serialize)]
struct SimulateReport {
    command: &'static str,
    out: String,
    rows: usize,
    final_time: f64,
    norm_drift: f64,
    ktot_drift: f64,
    p_drift: f64,
    energy_drift: f64,
    tail_mass: [f64; 3],
}

enum Failure {
    Usage(String),
    Compute(String),
    /// The report was produced but a check did not pass.
    Unverified,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Eval(_) | Error::InvalidGenerator(_) | Error::NotPhaseSpacePolynomial(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Run the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Unverified) => {
            let _ = writeln!(err, "verification failed");
            1
        }
    }
}

fn emit<T: Serialize>(compact: bool, out: &mut dyn Write, report: &T) -> Result<(), Failure> {
    let text = if compact { serde_json::to_string(report) } else { serde_json::to_string_pretty(report) }
        .map_err(|e| Failure::Compute(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure::Compute(e.to_string()))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let compact = cli.compact;
    match &cli.command {
        Command::Commute { a, b } => {
            let result = parse_operator(a)?.commutator(&parse_operator(b)?);
            emit(compact, out, &ExprReport { command: "commute", inputs: vec![a, b], result: (&result).into() })
        }
        Command::NormalForm { expr } => {
            let result = parse_operator(expr)?;
            emit(compact, out, &ExprReport { command: "normal-form", inputs: vec![expr], result: (&result).into() })
        }
        Command::Verify { rep, interaction } => verify(compact, out, *rep, interaction.as_deref()),
        Command::Classify { max_degree, lp_degree, conserve_momentum, no_symmetrize } => {
            let config = ClassificationConfig {
                max_degree: *max_degree,
                max_lp_degree: *lp_degree,
                require_momentum_conservation: *conserve_momentum,
                require_hermitian: !no_symmetrize,
                ..ClassificationConfig::default()
            };
            let basis = solve_invariant_space(&config)?;
            emit(compact, out, &classify_report(&config, &basis)?)
        }
        Command::Liouvillian { hamiltonian } => {
            let h = PhaseSpacePoly::try_from_expr(parse_operator(hamiltonian)?)?;
            let l = liouvillian_from_hamiltonian(&h);
            emit(
                compact,
                out,
                &LiouvillianReport {
                    command: "liouvillian",
                    hamiltonian: h.as_expr().into(),
                    liouvillian: (&l).into(),
                    input: hamiltonian,
                },
            )
        }
        Command::Simulate { config, out: csv } => {
            let text =
                std::fs::read_to_string(config).map_err(|e| Failure::Usage(format!("{}: {e}", config.display())))?;
            let cfg = SimulationConfig::from_json(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut state = init_gaussian(&cfg.grid, &cfg.packet)?;
            let series = evolve(&mut state, &cfg.hamiltonian, cfg.grid.steps, cfg.record_every)?;
            series.save_csv(csv)?;
            let e0 = series.energy.first().copied().unwrap_or(0.0);
            emit(
                compact,
                out,
                &SimulateReport {
                    command: "simulate",
                    out: csv.display().to_string(),
                    rows: series.rows.len(),
                    final_time: state.time,
                    norm_drift: series.max_drift(|r| r.norm),
                    ktot_drift: series.max_drift(|r| r.ktot),
                    p_drift: series.max_drift(|r| r.p),
                    energy_drift: series.energy.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max),
                    tail_mass: tail_mass(&state),
                },
            )
        }
    }
}

fn verify(compact: bool, out: &mut dyn Write, rep: Rep, interaction: Option<&str>) -> Result<(), Failure> {
    let big_m = ParamScalar::param(Param::QuantumMass);
    let m = ParamScalar::param(Param::ClassicalMass);
    let parsed = interaction.map(parse_operator).transpose()?;
    if parsed.is_some() && matches!(rep, Rep::Quantum | Rep::Classical) {
        return Err(Failure::Usage("--interaction applies to hybrid and two-particle only".into()));
    }
    let report = match rep {
        Rep::Quantum => verify_algebra(&build_quantum_rep(&big_m)?),
        Rep::Classical => verify_algebra(&build_classical_rep(&m)?),
        Rep::Hybrid => verify_algebra(&build_hybrid_rep(&big_m, &m, parsed.as_ref())?),
        Rep::TwoParticle => {
            let v = match &parsed {
                Some(v) => v.clone(),
                None => parse_operator("dot(R - R2, R - R2)")?,
            };
            two_particle_quantum_check(&v)?
        }
    };
    let failed = report.failures().count();
    emit(
        compact,
        out,
        &VerifyReport {
            command: "verify",
            representation: &report.representation,
            interaction: parsed.as_ref().map(Rendered::from),
            all_pass: failed == 0,
            checked: report.entries.len(),
            failed,
            relations: &report,
        },
    )?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Unverified)
    }
}

fn classify_report(config: &ClassificationConfig, basis: &InvariantBasis) -> Result<ClassifyReport, Failure> {
    let rep =
        build_hybrid_rep(&ParamScalar::param(Param::QuantumMass), &ParamScalar::param(Param::ClassicalMass), None)?;
    let elements = basis
        .elements
        .iter()
        .map(|e| {
            let acc = if e.hermitian && e.symbolic { Some(acceleration_operator(&e.expr, &rep)?) } else { None };
            Ok(ElementReport {
                label: e.label.clone(),
                unicode_label: e.unicode_label.clone(),
                expr: (&e.expr).into(),
                symbolic: e.symbolic,
                hermitian: e.hermitian,
                residuals_zero: e.residuals_zero,
                algebra_verified: e.algebra_verified,
                conserves_momentum: e.flags.conserves_momentum,
                commutes_with_q: e.flags.commutes_with_q,
                commutes_with_p: e.flags.commutes_with_p,
                back_reaction: e.flags.back_reaction(),
                acceleration: acc.as_ref().map(|a| a.components.iter().map(|c| c.to_string()).collect()),
                acceleration_observable: acc.as_ref().map(|a| a.observable),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(ClassifyReport {
        command: "classify",
        max_degree: config.max_degree,
        lp_degree: config.max_lp_degree,
        conserve_momentum: config.require_momentum_conservation,
        symmetrized: config.require_hermitian,
        monomials: basis.basis_size,
        constraint_rows: basis.constraint_rows,
        rank: basis.rank,
        dimension: basis.dimension,
        named: basis.named,
        elements,
        reduced_basis: basis.reduced_basis.iter().map(|e| e.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["hybrid-galilei"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn commute_prints_identity_multiple() {
        let (code, out, _) = call(&["commute", "q[1]", "lq[1]"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["unicode"], "i·𝟙");
        assert_eq!(v["result"]["ascii"], "i");
    }

    #[test]
    fn hyphenated_argument() {
        let (code, out, _) = call(&["commute", "lq[1]", "-t*lq[1]-m*lp[1]"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["ascii"], "0");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["commute", "q[4]", "p[1]"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["normal-form", "1/(M-M)"]).0, 1);
        assert_eq!(call(&["verify", "--rep", "hybrid", "--interaction", "dot(R,R)"]).0, 1);
        assert_eq!(call(&["verify", "--rep", "hybrid", "--interaction", "i*q[1]"]).0, 1);
        assert_eq!(call(&["liouvillian", "--hamiltonian", "lq[1]"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn verify_quantum_passes() {
        let (code, out, _) = call(&["verify", "--rep", "quantum", "--compact"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["all_pass"], true);
        assert_eq!(v["checked"], 45);
    }

    #[test]
    fn liouvillian_of_free_particle() {
        let (code, out, _) = call(&["liouvillian", "--hamiltonian", "dot(P,P)/(2*m)"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let l = parse_operator(v["liouvillian"]["ascii"].as_str().unwrap()).unwrap();
        assert_eq!(l, parse_operator("dot(P, LQ)/m").unwrap());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = call(&["classify", "--max-degree", "1"]);
        let b = call(&["classify", "--max-degree", "1"]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }

    #[test]
    fn simulate_writes_csv() {
        let dir = tempfile::tempdir().unwrap();
        let config = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/coupled_g2.json");
        let csv = dir.path().join("run.csv");
        let (code, out, err) = call(&["simulate", "--config", config, "--out", csv.to_str().unwrap()]);
        assert_eq!(code, 0, "{err}");
        let report: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(report["rows"], 21);
        assert!(report["ktot_drift"].as_f64().unwrap() < 1e-10);
        let text = std::fs::read_to_string(&csv).unwrap();
        assert_eq!(text.lines().next(), Some(crate::dynamics::CSV_HEADER));
        assert_eq!(text.lines().count(), 22);
    }

    #[test]
    fn simulate_rejects_missing_config() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("absent.json");
        let csv = dir.path().join("run.csv");
        let (code, _, _) = call(&["simulate", "--config", missing.to_str().unwrap(), "--out", csv.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(!csv.exists());
    }
}
