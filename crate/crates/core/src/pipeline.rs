//! End-to-end run: parse, decompose, guard, cover, verify, report.

use crate::decomposition::{build_sc_regions, DecompositionConfig, DecompositionError};
use crate::geometry::scalar::format_decimal;
use crate::geometry::{Point, SimplePolygon};
use crate::guarding::{all_temp_sub_regions, guarding_regions_from, GuardingError, VisibilityIndex};
use crate::io::{parse_polygon, ParseError};
use crate::setcover::{
    build_instance, exact_cover, greedy_cover, harmonic, verify_cover, CoverageReport,
    GuardSolution, SetCoverError, DEFAULT_EXACT_BUDGET,
};
use crate::svg::render_svg;
use serde::Serialize;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "GRIDGUARD_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Greedy,
    Exact,
    Both,
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverChoice::Greedy => "greedy",
            SolverChoice::Exact => "exact",
            SolverChoice::Both => "both",
        })
    }
}

impl FromStr for SolverChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "greedy" => Ok(SolverChoice::Greedy),
            "exact" => Ok(SolverChoice::Exact),
            "both" => Ok(SolverChoice::Both),
            other => Err(format!("unknown solver `{other}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub decomposition: DecompositionConfig,
    pub solver: SolverChoice,
    /// Coverage samples; 0 skips verification.
    pub verify_samples: usize,
    pub seed: u64,
    pub svg_out: Option<PathBuf>,
    pub json_out: Option<PathBuf>,
    pub exact_budget: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        RunConfig {
            input: input.into(),
            decomposition: DecompositionConfig::default(),
            solver: SolverChoice::Greedy,
            verify_samples: 0,
            seed: 0,
            svg_out: None,
            json_out: None,
            exact_budget: DEFAULT_EXACT_BUDGET,
            threads: None,
        }
    }
}

/// Milliseconds spent in each stage.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct StageTimes {
    pub parse: f64,
    pub decomposition: f64,
    pub tsr: f64,
    pub guarding: f64,
    pub setcover: f64,
    pub verify: f64,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub n: usize,
    pub scr_count: usize,
    pub tsr_count: usize,
    pub gr_count: usize,
    pub solver: SolverChoice,
    pub greedy: Option<GuardSolution>,
    pub exact: Option<GuardSolution>,
    /// Coverage of the reported guards, when verification ran.
    pub coverage: Option<CoverageReport>,
    pub stage_ms: StageTimes,
}

impl RunReport {
    /// The reported solution: the exact one when it was computed.
    pub fn solution(&self) -> &GuardSolution {
        self.exact
            .as_ref()
            .or(self.greedy.as_ref())
            .expect("a solver always runs")
    }

    pub fn guards(&self) -> &[Point] {
        &self.solution().guards
    }

    pub fn guard_count(&self) -> usize {
        self.solution().size
    }

    /// greedy size / exact size, when both ran.
    pub fn ratio(&self) -> Option<f64> {
        match (&self.greedy, &self.exact) {
            (Some(g), Some(e)) => Some(g.size as f64 / e.size as f64),
            _ => None,
        }
    }

    pub fn coverage_ok(&self) -> bool {
        self.coverage.as_ref().map_or(true, |c| c.covered == c.samples)
    }

    /// JSON report with a fixed key order.
    pub fn to_json(&self) -> String {
        let report = JsonReport {
            n: self.n,
            scr_count: self.scr_count,
            tsr_count: self.tsr_count,
            gr_count: self.gr_count,
            solver: self.solver,
            guard_count: self.guard_count(),
            guards: self
                .guards()
                .iter()
                .map(|g| [format_decimal(g.x(), 15), format_decimal(g.y(), 15)])
                .collect(),
            coverage: self.coverage.as_ref().map(|c| c.fraction),
            stage_ms: &self.stage_ms,
            greedy_count: self.greedy.as_ref().map(|s| s.size),
            exact_count: self.exact.as_ref().map(|s| s.size),
            ratio: self.ratio(),
        };
        serde_json::to_string_pretty(&report).expect("report serializes")
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    n: usize,
    scr_count: usize,
    tsr_count: usize,
    gr_count: usize,
    solver: SolverChoice,
    guard_count: usize,
    guards: Vec<[String; 2]>,
    coverage: Option<f64>,
    stage_ms: &'a StageTimes,
    #[serde(skip_serializing_if = "Option::is_none")]
    greedy_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("input: {0}")]
    Parse(#[from] ParseError),
    #[error("decomposition: {0}")]
    Decomposition(#[from] DecompositionError),
    #[error("guarding: {0}")]
    Guarding(#[from] GuardingError),
    #[error("set cover: {0}")]
    SetCover(#[from] SetCoverError),
    #[error("output {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("thread pool: {0}")]
    Threads(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl PipelineError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Parse(_) | PipelineError::Output { .. } => 2,
            PipelineError::Decomposition(DecompositionError::CellBudgetExceeded { .. }) => 3,
            PipelineError::Decomposition(_) => 2,
            PipelineError::SetCover(SetCoverError::BudgetExceeded { .. }) => 3,
            PipelineError::Guarding(_)
            | PipelineError::SetCover(_)
            | PipelineError::Threads(_)
            | PipelineError::Invariant(_) => 5,
        }
    }
}

/// Exit code when the run succeeded but coverage fell short.
pub const EXIT_COVERAGE: i32 = 4;

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

/// Parses the input file and solves it.
pub fn run(config: &RunConfig) -> Result<RunReport, PipelineError> {
    let t = Instant::now();
    let poly = parse_polygon(&config.input)?;
    let parse_ms = ms(t);
    let mut report = solve_in_pool(&poly, config)?;
    report.stage_ms.parse = parse_ms;
    Ok(report)
}

/// [`solve`] on a dedicated pool when `config.threads` is set.
pub fn solve_in_pool(poly: &SimplePolygon, config: &RunConfig) -> Result<RunReport, PipelineError> {
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| PipelineError::Threads(e.to_string()))?
            .install(|| solve(poly, config)),
        None => solve(poly, config),
    }
}

/// Runs every stage after parsing on an already validated polygon.
pub fn solve(poly: &SimplePolygon, config: &RunConfig) -> Result<RunReport, PipelineError> {
    let mut stage_ms = StageTimes::default();

    let t = Instant::now();
    let cells = build_sc_regions(poly, &config.decomposition)?;
    stage_ms.decomposition = ms(t);

    let t = Instant::now();
    let index = VisibilityIndex::new(poly, &cells)?;
    let tsrs = all_temp_sub_regions(&index);
    let tsr_count = tsrs.iter().map(|c| c.count).sum();
    stage_ms.tsr = ms(t);

    let t = Instant::now();
    let grs = guarding_regions_from(&index, &tsrs);
    drop(tsrs);
    stage_ms.guarding = ms(t);

    let t = Instant::now();
    let inst = build_instance(&cells, &grs)?;
    let greedy = matches!(config.solver, SolverChoice::Greedy | SolverChoice::Both).then(|| greedy_cover(&inst));
    let exact = match config.solver {
        SolverChoice::Exact | SolverChoice::Both => Some(exact_cover(&inst, config.exact_budget)?),
        SolverChoice::Greedy => None,
    };
    for s in greedy.iter().chain(exact.iter()) {
        if !inst.is_cover(&s.chosen) {
            return Err(PipelineError::Invariant(format!(
                "{} solution does not cover every sc-region",
                s.solver
            )));
        }
    }
    if let (Some(g), Some(e)) = (&greedy, &exact) {
        // Greedy is within H(m) of any cover, the optimum included.
        debug_assert!(g.size as f64 <= harmonic(inst.m).ceil() * e.size as f64);
    }
    stage_ms.setcover = ms(t);

    let mut report = RunReport {
        n: poly.len(),
        scr_count: cells.len(),
        tsr_count,
        gr_count: grs.len(),
        solver: config.solver,
        greedy,
        exact,
        coverage: None,
        stage_ms,
    };

    if config.verify_samples > 0 {
        let t = Instant::now();
        report.coverage = Some(verify_cover(poly, report.guards(), config.verify_samples, config.seed));
        report.stage_ms.verify = ms(t);
    }

    if let Some(path) = &config.svg_out {
        render_svg(poly, &cells, &grs, report.guards(), path).map_err(|source| PipelineError::Output {
            path: path.display().to_string(),
            source,
        })?;
    }
    if let Some(path) = &config.json_out {
        std::fs::write(path, report.to_json() + "\n").map_err(|source| PipelineError::Output {
            path: path.display().to_string(),
            source,
        })?;
    }
    Ok(report)
}
