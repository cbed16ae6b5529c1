//! Command-line front end for `fischer-core`: scenario files, subcommands and
//! deterministic JSON reports.

pub mod commands;
pub mod error;
pub mod report;
pub mod scan;
pub mod scenario;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use error::{CliError, CliResult};
pub use report::{strip_nondeterministic, CommandResult, ReportEnvelope};
pub use scan::ScanSpec;
pub use scenario::Scenario;

use scenario::{parse_operator_arg, parse_point_arg, parse_vertices_arg, NonnegativitySpec};

#[derive(Debug, Parser)]
#[command(name = "fischer", version, about = "Exact Fischer operator lab: F_psi(q) = L(psi*q) over the rationals")]
pub struct Cli {
    /// Scenario file (JSON).
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,

    /// Number of variables; overrides the scenario.
    #[arg(long, global = true)]
    pub dim: Option<usize>,

    /// Degree bound M for witnesses.
    #[arg(long, global = true)]
    pub bound: Option<u32>,

    /// Operator as a JSON file or inline rows, e.g. "1,0;0,1/3".
    #[arg(long, global = true)]
    pub operator: Option<String>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural obstructions, graded tables, kernels and solves
    Analyze(ScenarioArgs),
    /// Harmonic extension of polynomial data on an ellipsoid or quadric
    Dirichlet(ScenarioArgs),
    /// Vertex-by-vertex obstruction report for a polygon
    Polygon(ScenarioArgs),
    /// L(psi) for a triangle
    Volkov(ScenarioArgs),
    /// Bounded search for q != 0 with L(f*q) = 0
    HarmonicDivisor(ScenarioArgs),
    /// f = psi*q + h with L(h) = 0
    Decompose(ScenarioArgs),
    /// Randomized rank evidence for deg psi >= 3
    ScanCs(ScanArgs),
}

#[derive(Debug, Default, Args)]
pub struct ScenarioArgs {
    /// Scenario name used in the report
    #[arg(long)]
    pub name: Option<String>,
    /// A factor of psi (repeatable).
    #[arg(long)]
    pub psi: Vec<String>,
    /// Target or data polynomial (repeatable).
    #[arg(long)]
    pub target: Vec<String>,
    /// Hint point "a,b" (repeatable).
    #[arg(long)]
    pub hint: Vec<String>,
    /// Polygon vertices "x0,y0;x1,y1;...".
    #[arg(long)]
    pub vertices: Option<String>,
    /// Ellipsoid semiaxes "a1,a2,...".
    #[arg(long)]
    pub semiaxes: Option<String>,
    /// Largest degree in graded tables
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Degree at which the graded series stops
    #[arg(long)]
    pub cutoff: Option<u32>,
    /// Assert that every target is globally nonnegative.
    #[arg(long)]
    pub nonneg: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 3)]
    pub degree: u32,
    #[arg(long, default_value_t = 5)]
    pub coeff_range: i64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

impl Cli {
    fn build_scenario(&self, a: &ScenarioArgs) -> CliResult<Scenario> {
        let mut s = match &self.scenario {
            Some(path) => Scenario::load(path)?,
            None => Scenario {
                dim: self.dim.ok_or_else(|| CliError::input("give --scenario or --dim"))?,
                ..Scenario::default()
            },
        };
        if let Some(d) = self.dim {
            s.dim = d;
        }
        if let Some(op) = &self.operator {
            s.operator = Some(parse_operator_arg(op)?);
        }
        if let Some(m) = self.bound {
            s.bounds.m = Some(m);
        }
        if let Some(n) = a.name.clone() {
            s.name = n;
        }
        if !a.psi.is_empty() {
            s.psi = a.psi.clone();
        }
        if !a.target.is_empty() {
            s.targets = a.target.clone();
        }
        if !a.hint.is_empty() {
            s.hints = a.hint.iter().map(|h| parse_point_arg(h)).collect();
        }
        if let Some(v) = &a.vertices {
            s.vertices = Some(parse_vertices_arg(v)?);
        }
        if let Some(v) = &a.semiaxes {
            s.semiaxes = Some(parse_point_arg(v));
        }
        if a.n_max.is_some() {
            s.bounds.n_max = a.n_max;
        }
        if a.cutoff.is_some() {
            s.bounds.series_cutoff = a.cutoff;
        }
        if a.nonneg {
            s.nonnegativity = Some(NonnegativitySpec::Asserted);
        }
        if s.dim == 0 {
            return Err(CliError::input("dim must be at least 1"));
        }
        Ok(s)
    }
}

/// Runs one subcommand to a report. Errors carry the exit code.
pub fn run(cli: &Cli) -> CliResult<ReportEnvelope> {
    let (scenario_json, results) = match &cli.command {
        Command::ScanCs(a) => {
            let spec = ScanSpec {
                dim: cli.dim.unwrap_or(2),
                degree: a.degree,
                coeff_range: a.coeff_range,
                samples: a.samples,
                seed: cli.seed,
                bound: cli.bound.unwrap_or(scenario::DEFAULT_M),
            };
            (json!({ "scan": spec }), scan::scan_cs(&spec)?)
        }
        Command::Analyze(a)
        | Command::Dirichlet(a)
        | Command::Polygon(a)
        | Command::Volkov(a)
        | Command::HarmonicDivisor(a)
        | Command::Decompose(a) => {
            let s = cli.build_scenario(a)?;
            let results = match &cli.command {
                Command::Analyze(_) => commands::analyze(&s)?,
                Command::Dirichlet(_) => commands::dirichlet(&s)?,
                Command::Polygon(_) => commands::polygon(&s)?,
                Command::Volkov(_) => commands::volkov(&s)?,
                Command::HarmonicDivisor(_) => commands::harmonic_divisor(&s)?,
                Command::Decompose(_) => commands::decompose(&s)?,
                Command::ScanCs(_) => unreachable!(),
            };
            (serde_json::to_value(&s)?, results)
        }
    };
    Ok(ReportEnvelope::new(scenario_json, results))
}
