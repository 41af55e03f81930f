//! `qcalc`: reports, verification suites and operator exports for the
//! differential calculus on reduced `C_q[SL_2]`.

mod cache;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcalc_core::complex::named_basis;
use qcalc_core::spectrum::spin0_spectrum;
use qcalc_core::verify::{self, Suite};
use qcalc_core::{Error, Form, Gauge, Model};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qcalc", version, about = "Exact calculus on reduced C_q[SL_2] at odd roots of unity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tier {
    Fast,
    Slow,
}

#[derive(Args)]
struct Common {
    /// odd root-of-unity order, at least 3
    #[arg(long)]
    r: u32,
    /// write JSON here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// `slow` unlocks r outside {3, 5}
    #[arg(long, value_enum, default_value = "fast")]
    tier: Tier,
    /// directory for cached differentials
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// print a human-readable table instead of JSON
    #[arg(long)]
    table: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GaugeArg {
    Lorentz,
    Temporal,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    D,
    Star,
    Delta,
    Laplacian,
    Max,
}

#[derive(Subcommand)]
enum Command {
    /// dimensions of all, closed and exact forms per degree
    Dims {
        #[command(flatten)]
        common: Common,
    },
    /// cohomology dimensions, named representatives and a computed basis
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=4))]
        degree: Option<u8>,
    },
    /// harmonic and Laplacian kernel dimensions, plus the stated
    /// certificates when r = 3
    HodgeCheck {
        #[command(flatten)]
        common: Common,
    },
    /// zero-mode, gauge and source dimensions of the Maxwell operator
    MaxwellReport {
        #[command(flatten)]
        common: Common,
    },
    /// solve Max(A) = J for a named source or a form JSON file
    MaxwellSolve {
        #[command(flatten)]
        common: Common,
        /// theta, ez, eb, ec, ecb2, or a path to a form JSON file
        #[arg(long)]
        source: String,
        #[arg(long, value_enum)]
        gauge: Option<GaugeArg>,
    },
    /// run a verification suite; exit status 0 iff every check passes
    Verify {
        #[command(flatten)]
        common: Common,
        /// suite name or `all` (the suites applicable at this r)
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// export an operator matrix as JSON
    ExportOperator {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=4))]
        degree: u8,
        #[arg(long, value_enum, default_value = "d")]
        op: OpArg,
    },
}

/// Exit codes: 1 for failed certificates or unsolvable sources, 2 for
/// invalid configuration.
enum Failure {
    Check(Value),
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NoSolution | Error::GaugeInfeasible(_) => Failure::Check(json!({"error": e.to_string()})),
            other => Failure::Config(other.to_string()),
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::Dims { common }
        | Command::Cohomology { common, .. }
        | Command::HodgeCheck { common }
        | Command::MaxwellReport { common }
        | Command::MaxwellSolve { common, .. }
        | Command::Verify { common, .. }
        | Command::ExportOperator { common, .. } => common,
    }
}

fn validate(c: &Common) -> Result<(), Failure> {
    if c.r < 3 || c.r.is_multiple_of(2) {
        return Err(Failure::Config(format!("r must be an odd integer >= 3, got {}", c.r)));
    }
    if c.tier == Tier::Fast && !matches!(c.r, 3 | 5) {
        return Err(Failure::Config(format!("r = {} needs --tier slow", c.r)));
    }
    Ok(())
}

fn form_json(m: &Model, w: &Form) -> Value {
    let mut v = m.calculus().form_to_json(w);
    v["text"] = json!(m.calculus().display(w).to_string());
    v
}

fn checks_json(list: &[(String, bool)]) -> Value {
    Value::from(list.iter().map(|(n, ok)| json!({"check": n, "ok": ok})).collect::<Vec<_>>())
}

fn run(cmd: &Command) -> Result<(Value, bool), Failure> {
    let c = common(cmd);
    validate(c)?;
    let m = cache::model(c.r, c.cache_dir.as_deref())?;
    Ok(match cmd {
        Command::Dims { .. } => (serde_json::to_value(m.complex().report()).expect("serialisable"), true),
        Command::Cohomology { degree, .. } => {
            let cx = m.complex();
            let degrees: Vec<usize> = match degree {
                Some(k) => vec![*k as usize],
                None => (0..5).collect(),
            };
            let mut all_ok = true;
            let mut out = Vec::new();
            for k in degrees {
                let names = named_basis(k);
                let cert = cx.verify_named_set(&names)?;
                all_ok &= cert.passes();
                let named: Vec<Value> = names
                    .iter()
                    .zip(&cert.members)
                    .map(|(n, mem)| {
                        let w = cx.named_form(n).expect("listed name");
                        json!({"name": n, "closed": mem.closed, "exact": mem.exact, "form": form_json(&m, &w)})
                    })
                    .collect();
                let basis: Vec<Value> = cx.cohomology_basis(k)?.iter().map(|w| form_json(&m, w)).collect();
                out.push(json!({
                    "degree": k,
                    "dim": cx.h_dim(k),
                    "named": named,
                    "named_independent": cert.independent,
                    "named_spanning": cert.spanning,
                    "basis": basis,
                }));
            }
            (json!({"r": m.r(), "cohomology": out}), all_ok)
        }
        Command::HodgeCheck { .. } => {
            let h = m.hodge();
            let mut v = json!({"dims": h.dims()});
            let mut ok = true;
            if m.r() == 3 {
                let cert = h.harmonic_certificate()?;
                let spectrum = spin0_spectrum(h)?;
                ok = cert.passes() && spectrum.passes();
                v["harmonic"] = serde_json::to_value(&cert).expect("serialisable");
                v["spectrum"] = serde_json::to_value(&spectrum).expect("serialisable");
            }
            v["r"] = json!(m.r());
            (v, ok)
        }
        Command::MaxwellReport { .. } => (serde_json::to_value(m.maxwell().gauge_analysis()).expect("serialisable"), true),
        Command::MaxwellSolve { source, gauge, .. } => {
            let mx = m.maxwell();
            let j = if Path::new(source).is_file() {
                let text = std::fs::read_to_string(source).map_err(|e| Failure::Config(format!("{source}: {e}")))?;
                let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{source}: {e}")))?;
                m.calculus().form_from_json(&v)?
            } else {
                mx.named_source(source)?
            };
            let g = gauge.map(|g| match g {
                GaugeArg::Lorentz => Gauge::Lorentz,
                GaugeArg::Temporal => Gauge::Temporal,
            });
            let sol = mx.solve_source(&j, g)?;
            let residual = mx.apply(&sol.a) == sol.j;
            let curvature = m.complex().d(1).apply(&sol.a.vec) == sol.f.vec;
            (
                json!({
                    "r": m.r(),
                    "J": form_json(&m, &sol.j),
                    "A": form_json(&m, &sol.a),
                    "F": form_json(&m, &sol.f),
                    "gauge": g.map(|g| g.name()),
                    "residual-check": residual && curvature,
                }),
                residual && curvature,
            )
        }
        Command::Verify { suite, .. } => {
            let suites = if suite == "all" {
                Suite::applicable(m.r())
            } else {
                let s = Suite::from_name(suite).ok_or_else(|| Failure::Config(format!("unknown suite {suite}")))?;
                if !s.applies_to(m.r()) {
                    return Err(Failure::Config(format!("suite {suite} makes no claim at r = {}", m.r())));
                }
                vec![s]
            };
            let mut all_ok = true;
            let mut out = Vec::new();
            for s in suites {
                let list = verify::run(&m, s)?;
                all_ok &= list.passes();
                out.push(json!({"suite": s.name(), "passes": list.passes(), "checks": checks_json(&list.checks)}));
            }
            (json!({"r": m.r(), "passes": all_ok, "suites": out}), all_ok)
        }
        Command::ExportOperator { degree, op, .. } => {
            let k = *degree as usize;
            let (name, mat) = match op {
                OpArg::D if k < 4 => ("d", m.complex().d(k)),
                OpArg::Star => ("star", m.hodge().star(k)),
                OpArg::Delta if k >= 1 => ("delta", m.hodge().delta(k)),
                OpArg::Laplacian => ("laplacian", m.hodge().laplacian(k)),
                OpArg::Max if k == 1 => ("max", m.maxwell().operator()),
                _ => return Err(Failure::Config(format!("operator not defined on degree {k}"))),
            };
            (json!({"r": m.r(), "op": name, "degree": k, "matrix": mat.to_json()}), true)
        }
    })
}

fn emit(c: &Common, cmd: &Command, v: &Value) -> std::io::Result<()> {
    let text = if c.table {
        render::table(cmd_name(cmd), v)
    } else {
        let mut s = serde_json::to_string_pretty(v).expect("serialisable");
        s.push('\n');
        s
    };
    match &c.out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Dims { .. } => "dims",
        Command::Cohomology { .. } => "cohomology",
        Command::HodgeCheck { .. } => "hodge-check",
        Command::MaxwellReport { .. } => "maxwell-report",
        Command::MaxwellSolve { .. } => "maxwell-solve",
        Command::Verify { .. } => "verify",
        Command::ExportOperator { .. } => "export-operator",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = common(&cli.command);
    let (value, ok) = match run(&cli.command) {
        Ok(x) => x,
        Err(Failure::Config(msg)) => {
            eprintln!("qcalc: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(v)) => (v, false),
    };
    if let Err(e) = emit(c, &cli.command, &value) {
        eprintln!("qcalc: {e}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
