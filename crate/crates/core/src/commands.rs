//! Subcommands of the `bunch-surface` binary.
//!
//! Every command is a pure function of its arguments returning an
//! [`Outcome`]; the binary only forwards stdout/stderr and the exit code.
//! stdout carries JSON (or nothing), diagnostics go to stderr.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};

use crate::da::{
    approximate_attractor, census_json, find_fixed_points, render_phase_portrait, unstable_segment, DAParams, DaMap,
    FixedPointKind, PhasePortrait, DEFAULT_NEWTON_TOL,
};
use crate::generate::{generate_for_genus, named_example, random_valid_spec, GeneratorConfig};
use crate::io::{parse_spec, serialize_spec};
use crate::model::{validate_spec, DiffeoSpec};
use crate::stability::{build_prec_graph, stability_verdict};
use crate::topology::{decompose, pairing_dot};

/// Process exit codes. Stable across versions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitStatus {
    Ok = 0,
    InvalidSpec = 1,
    ParseOrIo = 2,
    Argument = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: ExitStatus,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: impl Into<Vec<u8>>) -> Self {
        Self {
            status: ExitStatus::Ok,
            stdout: stdout.into(),
            stderr: String::new(),
        }
    }

    fn fail(status: ExitStatus, msg: impl std::fmt::Display) -> Self {
        Self {
            status,
            stdout: Vec::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    pub fn code(&self) -> i32 {
        self.status.code()
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "bunch-surface",
    version,
    about = "Surface topology and stability from bunch pairing data, plus a DA torus harness"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a spec file against the consistency rules; prints the report.
    Validate { path: PathBuf },
    /// Connected-sum decomposition and genus of the ambient surface.
    Decompose {
        path: PathBuf,
        /// Include the surgery trace.
        #[arg(long)]
        trace: bool,
        /// Write the pairing graph as DOT.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Omega- and structural-stability verdicts.
    Stability {
        path: PathBuf,
        /// Write the precedence digraph as DOT.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Emit a spec: a named example, the genus-G family or a random one.
    Generate(GenerateArgs),
    /// Fixed-point census and phase portrait of the DA torus map.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["genus", "example", "random"])))]
pub struct GenerateArgs {
    /// Alternating path realizing this genus (>= 2).
    #[arg(long, allow_negative_numbers = true)]
    pub genus: Option<i64>,
    #[arg(long, value_parser = ["f1", "f2", "pretzel"])]
    pub example: Option<String>,
    /// Random valid spec; needs --seed.
    #[arg(long, requires = "seed")]
    pub random: bool,
    #[arg(long, requires = "random")]
    pub seed: Option<u64>,
    #[arg(long, requires = "random", default_value_t = 6)]
    pub max_basic_sets: u32,
    #[arg(long, requires = "random", default_value_t = 4)]
    pub max_bunches_per_set: u32,
    #[arg(long, requires = "random", default_value_t = 6)]
    pub max_degree: u32,
    /// Probability of each extra (cycle-closing) component, in [0, 1).
    #[arg(long, requires = "random", default_value_t = 0.5)]
    pub cycle_bias: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Push strength, >= 0 (default: source multiplier 1.6).
    #[arg(long = "k", allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// Bump radius, in (0, 0.5).
    #[arg(long, default_value_t = 0.15)]
    pub r0: f64,
    /// Newton seed grid size, >= 64.
    #[arg(long, default_value_t = 128)]
    pub grid: usize,
    /// Attractor sample count, >= 1.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Transient iterations per sample, >= 100.
    #[arg(long, default_value_t = 500)]
    pub transient: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Newton residual tolerance, in (0, 1e-6].
    #[arg(long, default_value_t = DEFAULT_NEWTON_TOL)]
    pub newton_tol: f64,
    /// Unstable-manifold vertex spacing is below 1/arc-steps.
    #[arg(long, default_value_t = 400)]
    pub arc_steps: usize,
    /// Iterates of the unstable seed segments, at most 20.
    #[arg(long, default_value_t = 12)]
    pub iterates: usize,
    /// Write the census here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out_census: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub out_svg: Option<PathBuf>,
}

const MAX_ITERATES: usize = 20;

/// Parses `args` (including the program name) and runs the command.
/// Usage errors exit 3; `--help` and `--version` exit 0.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status: ExitStatus::Argument,
                    stdout: Vec::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

pub fn execute(command: Command) -> Outcome {
    match command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Decompose { path, trace, dot } => cmd_decompose(&path, trace, dot.as_deref()),
        Command::Stability { path, dot } => cmd_stability(&path, dot.as_deref()),
        Command::Generate(args) => cmd_generate(&args),
        Command::Simulate(args) => cmd_simulate(&args),
    }
}

fn load(path: &Path) -> Result<DiffeoSpec, Outcome> {
    let bytes = fs::read(path).map_err(|e| Outcome::fail(ExitStatus::ParseOrIo, format!("{}: {e}", path.display())))?;
    parse_spec(&bytes).map_err(|e| Outcome::fail(ExitStatus::ParseOrIo, format!("{}: {e}", path.display())))
}

/// Loads and validates; an invalid spec yields the report on stdout, exit 1.
fn load_valid(path: &Path) -> Result<DiffeoSpec, Outcome> {
    let spec = load(path)?;
    let report = validate_spec(&spec);
    if !report.valid {
        return Err(Outcome {
            status: ExitStatus::InvalidSpec,
            stdout: report.to_json().into_bytes(),
            stderr: format!("error: {}: spec is invalid\n", path.display()),
        });
    }
    Ok(spec)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Outcome> {
    fs::write(path, contents).map_err(|e| Outcome::fail(ExitStatus::ParseOrIo, format!("{}: {e}", path.display())))
}

pub fn cmd_validate(path: &Path) -> Outcome {
    let spec = match load(path) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let report = validate_spec(&spec);
    Outcome {
        status: if report.valid {
            ExitStatus::Ok
        } else {
            ExitStatus::InvalidSpec
        },
        stdout: report.to_json().into_bytes(),
        stderr: String::new(),
    }
}

pub fn cmd_decompose(path: &Path, trace: bool, dot: Option<&Path>) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let spec = load_valid(path)?;
        let d = decompose(&spec).map_err(|e| Outcome::fail(ExitStatus::InvalidSpec, e))?;
        if let Some(dot) = dot {
            let text = pairing_dot(&spec).map_err(|e| Outcome::fail(ExitStatus::InvalidSpec, e))?;
            write_file(dot, text.as_bytes())?;
        }
        Ok(Outcome::ok(d.to_json(trace)))
    };
    run().unwrap_or_else(|o| o)
}

pub fn cmd_stability(path: &Path, dot: Option<&Path>) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let spec = load_valid(path)?;
        let verdict = stability_verdict(&spec).map_err(|e| Outcome::fail(ExitStatus::InvalidSpec, e))?;
        if let Some(dot) = dot {
            let graph = build_prec_graph(&spec).map_err(|e| Outcome::fail(ExitStatus::InvalidSpec, e))?;
            write_file(dot, graph.to_dot().as_bytes())?;
        }
        Ok(Outcome::ok(verdict.to_json()))
    };
    run().unwrap_or_else(|o| o)
}

pub fn cmd_generate(args: &GenerateArgs) -> Outcome {
    let spec = if let Some(g) = args.genus {
        generate_for_genus(g)
    } else if let Some(name) = &args.example {
        match named_example(name) {
            Some(s) => Ok(s),
            None => return Outcome::fail(ExitStatus::Argument, format!("unknown example {name:?}")),
        }
    } else {
        random_valid_spec(&GeneratorConfig {
            seed: args.seed.unwrap_or_default(),
            max_basic_sets: args.max_basic_sets,
            max_bunches_per_set: args.max_bunches_per_set,
            max_degree: args.max_degree,
            cycle_bias: args.cycle_bias,
        })
    };
    match spec {
        Ok(spec) => Outcome::ok(serialize_spec(&spec)),
        Err(e) => Outcome::fail(ExitStatus::Argument, e),
    }
}

fn check_ranges(args: &SimulateArgs) -> Result<(), String> {
    if args.samples == 0 {
        return Err("--samples must be >= 1".into());
    }
    if args.arc_steps == 0 {
        return Err("--arc-steps must be >= 1".into());
    }
    if args.iterates > MAX_ITERATES {
        return Err(format!("--iterates must be <= {MAX_ITERATES}"));
    }
    Ok(())
}

pub fn cmd_simulate(args: &SimulateArgs) -> Outcome {
    let run = || -> Result<Outcome, Outcome> {
        let arg_err = |e: String| Outcome::fail(ExitStatus::Argument, e);
        check_ranges(args).map_err(arg_err)?;
        let defaults = DAParams::default();
        let params = DAParams {
            bump_radius: args.r0,
            push_strength: args.k.unwrap_or(defaults.push_strength),
            ..defaults
        };
        let map = DaMap::new(params).map_err(|e| arg_err(e.to_string()))?;
        let fixed = find_fixed_points(&map, args.grid, args.newton_tol).map_err(|e| arg_err(e.to_string()))?;
        let census = census_json(&fixed);

        if let Some(out) = &args.out_svg {
            let cloud = approximate_attractor(&map, args.samples, args.transient, args.seed)
                .map_err(|e| arg_err(e.to_string()))?;
            let segments = fixed
                .iter()
                .filter(|f| f.kind == FixedPointKind::Saddle)
                .map(|f| unstable_segment(&map, f, args.arc_steps, args.iterates))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| arg_err(e.to_string()))?;
            let portrait = PhasePortrait {
                cloud: &cloud,
                fixed_points: &fixed,
                segments: &segments,
            };
            render_phase_portrait(&portrait, out)
                .map_err(|e| Outcome::fail(ExitStatus::ParseOrIo, format!("{}: {e}", out.display())))?;
        } else if args.transient < 100 {
            // keep the range contract even when the cloud is not needed
            return Err(arg_err(format!("n_transient must be >= 100, got {}", args.transient)));
        }

        match &args.out_census {
            Some(out) => {
                write_file(out, census.as_bytes())?;
                Ok(Outcome::ok(Vec::new()))
            }
            None => Ok(Outcome::ok(census)),
        }
    };
    run().unwrap_or_else(|o| o)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("bunch-surface").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_3() {
        assert_eq!(run_args(&[]).code(), 3);
        assert_eq!(run_args(&["generate"]).code(), 3);
        assert_eq!(run_args(&["generate", "--genus", "3", "--example", "f1"]).code(), 3);
        assert_eq!(run_args(&["generate", "--random"]).code(), 3);
        assert_eq!(run_args(&["generate", "--example", "f9"]).code(), 3);
        assert_eq!(run_args(&["simulate", "--grid", "abc"]).code(), 3);
    }

    #[test]
    fn help_exits_0() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code(), 0);
        assert!(String::from_utf8(out.stdout).unwrap().contains("decompose"));
        assert_eq!(run_args(&["--version"]).code(), 0);
    }

    #[test]
    fn generate_genus_one_is_argument_error() {
        let out = run_args(&["generate", "--genus", "1"]);
        assert_eq!(out.status, ExitStatus::Argument);
        assert!(out.stdout.is_empty());
        assert!(out.stderr.contains("genus"));
        assert_eq!(run_args(&["generate", "--genus", "-3"]).code(), 3);
    }

    #[test]
    fn missing_file_is_io_error() {
        assert_eq!(run_args(&["validate", "/nonexistent/spec.json"]).code(), 2);
        assert_eq!(run_args(&["decompose", "/nonexistent/spec.json"]).code(), 2);
    }

    #[test]
    fn simulate_range_checks() {
        for bad in [
            &["simulate", "--grid", "32"][..],
            &["simulate", "--r0", "0.6"],
            &["simulate", "--k", "-1"],
            &["simulate", "--newton-tol", "1e-3"],
            &["simulate", "--transient", "50"],
            &["simulate", "--samples", "0"],
            &["simulate", "--iterates", "40"],
        ] {
            assert_eq!(run_args(bad).code(), 3, "{bad:?}");
        }
    }
}
