//! Command-line front end.
//!
//! Machine output goes to `out`, diagnostics to `err`. Exit codes: 0 on
//! success (a `NoViolation` verdict is a success), 2 on argument errors,
//! 3 on domain or I/O errors.

use std::f64::consts::SQRT_2;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::lhv::{enumerate_strategies, lhv_feasible, write_vertex_csv, YEvent};
use crate::qcore::QuantumState;
use crate::search::{
    hardy_observables, optimize_violation, sweep_schmidt, sweep_werner, write_sweep_csv, Objective, SchmidtState,
    SearchConfig,
};
use crate::witness::{evaluate, planar_singlet_scenario, QVector, Scenario, WitnessReport, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nonlocality", version, about = "Hardy and Clauser-Horne nonlocality toolkit")]
pub struct Cli {
    /// Emit JSON with full-precision numbers.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the q-vector, generalized and CH expressions of a scenario.
    Eval {
        /// State JSON file, `-` for standard input.
        #[arg(long)]
        state: PathBuf,
        /// Scenario JSON file, `-` for standard input.
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Decide local hidden-variable realizability of a q-vector.
    LhvCheck {
        /// q1,q2,q3,q4 or q1,..,q6
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// List deterministic strategies with their expression values.
    Vertices {
        #[arg(long)]
        trichotomic: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Construct Hardy settings for cos t|00> + sin t|11>.
    Hardy {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Search spin settings for the largest violation.
    Optimize {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
        /// Search full Bloch-sphere directions instead of the x-z plane.
        #[arg(long)]
        full_bloch: bool,
    },
    /// Sweep a state family and print CSV.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long)]
        steps: usize,
        /// Scenario for the Werner family (default: planar singlet settings).
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run a built-in example end to end.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ObjectiveArg {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Werner,
    Schmidt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DemoKind {
    Singlet,
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Formats with nine significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..9).contains(&mag) {
        let decimals = (8 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.8e}")
    }
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(", ")
}

fn read_input(path: &PathBuf, stdin: &mut dyn Read) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn write_report(out: &mut dyn Write, r: &WitnessReport) -> Result<(), Failure> {
    writeln!(out, "q: {}", fmt_list(&r.qvec.components()))?;
    writeln!(out, "generalized: {}", fmt_num(r.generalized_value))?;
    writeln!(out, "ch: {}", fmt_num(r.ch_value))?;
    writeln!(out, "class: {}", r.classification)?;
    Ok(())
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, stdin, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            EXIT_DOMAIN
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: Io: {msg}");
            EXIT_DOMAIN
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Eval { state, scenario, tol } => {
            let state = QuantumState::from_json(&read_input(state, stdin)?)?;
            let scenario = Scenario::from_json(&read_input(scenario, stdin)?)?;
            check_tol(*tol)?;
            let report = evaluate(&state, &scenario, *tol)?;
            if json {
                write_json(out, &report)
            } else {
                write_report(out, &report)
            }
        }
        Command::LhvCheck { q } => {
            let q: QVector = q.parse()?;
            let r = lhv_feasible(&q)?;
            if json {
                return write_json(out, &r);
            }
            writeln!(out, "feasible: {}", r.feasible)?;
            writeln!(out, "residual: {}", fmt_num(r.residual))?;
            if let Some(w) = &r.witness {
                let strategies = enumerate_strategies(q.is_trichotomic());
                writeln!(out, "witness:")?;
                for (s, &weight) in strategies.iter().zip(w) {
                    if weight > 0.0 {
                        writeln!(out, "  {}  {s}", fmt_num(weight))?;
                    }
                }
            }
            Ok(())
        }
        Command::Vertices { trichotomic, csv } => {
            if *csv {
                write_vertex_csv(out, *trichotomic)?;
                return Ok(());
            }
            let strategies = enumerate_strategies(*trichotomic);
            if json {
                let rows: Vec<_> = strategies
                    .iter()
                    .map(|s| {
                        json!({
                            "x1": s.x1,
                            "x2": s.x2,
                            "y1": s.y1 == YEvent::Plus,
                            "y2": s.y2 == YEvent::Plus,
                            "value": s.expression_value(),
                        })
                    })
                    .collect();
                return write_json(out, &rows);
            }
            for s in &strategies {
                writeln!(out, "{s}  value={}", s.expression_value())?;
            }
            Ok(())
        }
        Command::Hardy { theta, tol } => {
            check_tol(*tol)?;
            let h = hardy_observables(&SchmidtState::new(*theta)?, *tol)?;
            let report = evaluate(&QuantumState::schmidt(*theta), &h.scenario, *tol)?;
            if json {
                let value = json!({
                    "theta": h.theta,
                    "angles": h.angles,
                    "residual": h.residual,
                    "scenario": h.scenario,
                    "report": report,
                });
                return write_json(out, &value);
            }
            writeln!(out, "theta: {}", fmt_num(h.theta))?;
            let a = h.angles;
            writeln!(
                out,
                "angles (x-z plane): x1={} y1={} x2={} y2={}",
                fmt_num(a.x1),
                fmt_num(a.y1),
                fmt_num(a.x2),
                fmt_num(a.y2)
            )?;
            writeln!(out, "residual: {}", fmt_num(h.residual))?;
            write_report(out, &report)
        }
        Command::Optimize {
            state,
            objective,
            restarts,
            seed,
            max_iter,
            full_bloch,
        } => {
            let state = QuantumState::from_json(&read_input(state, stdin)?)?;
            let defaults = SearchConfig::default();
            let cfg = SearchConfig {
                restarts: *restarts,
                max_iterations: *max_iter,
                seed: seed.unwrap_or(defaults.seed),
                full_bloch: *full_bloch,
                ..defaults
            };
            let objective = match objective {
                ObjectiveArg::Upper => Objective::MaximizeUpper,
                ObjectiveArg::Lower => Objective::MinimizeLower,
            };
            let r = optimize_violation(&state, objective, &cfg)?;
            if json {
                return write_json(out, &r);
            }
            writeln!(out, "objective: {:?}", r.objective)?;
            writeln!(out, "value: {}", fmt_num(r.value))?;
            writeln!(out, "best restart: {} of {}", r.best_restart, r.trace.len())?;
            let s = r.settings;
            for (name, d) in [("x1", s.x1), ("y1", s.y1), ("x2", s.x2), ("y2", s.y2)] {
                writeln!(out, "{name}: theta={} phi={}", fmt_num(d.theta()), fmt_num(d.phi()))?;
            }
            Ok(())
        }
        Command::Sweep {
            family,
            lo,
            hi,
            steps,
            scenario,
            tol,
        } => {
            let output = match family {
                Family::Werner => {
                    let sc = match scenario {
                        Some(path) => Scenario::from_json(&read_input(path, stdin)?)?,
                        None => planar_singlet_scenario(),
                    };
                    sweep_werner(&sc, *lo, *hi, *steps)?
                }
                Family::Schmidt => {
                    check_tol(*tol)?;
                    sweep_schmidt(*lo, *hi, *steps, *tol)?
                }
            };
            for (p, e) in &output.skipped {
                writeln!(err, "skipped parameter {p}: {}", e.name())?;
            }
            write_sweep_csv(out, &output.rows)?;
            Ok(())
        }
        Command::Demo { which: DemoKind::Singlet } => {
            let report = evaluate(&QuantumState::singlet(), &planar_singlet_scenario(), DEFAULT_TOL)?;
            let expected = (1.0 + SQRT_2) / 2.0;
            if json {
                let value = json!({
                    "report": report,
                    "expected": expected,
                    "deviation": (report.generalized_value - expected).abs(),
                });
                return write_json(out, &value);
            }
            writeln!(out, "singlet, planar settings x1=0 y2=pi/4 y1=pi/2 x2=3pi/4")?;
            write_report(out, &report)?;
            writeln!(out, "expected (1+sqrt2)/2: {}", fmt_num(expected))?;
            writeln!(
                out,
                "deviation: {}",
                fmt_num((report.generalized_value - expected).abs())
            )?;
            Ok(())
        }
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")).into())
    }
}
