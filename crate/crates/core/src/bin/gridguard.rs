use clap::Parser;
use gridguard::decomposition::{DecompositionConfig, Strategy, DEFAULT_MAX_CELLS};
use gridguard::pipeline::{run, RunConfig, SolverChoice, EXIT_COVERAGE, THREADS_ENV};
use gridguard::setcover::DEFAULT_EXACT_BUDGET;
use std::path::PathBuf;
use std::process::ExitCode;

/// Place point guards in a simple polygon.
///
/// Prints the JSON report on stdout unless --json is given.
#[derive(Parser, Debug)]
#[command(name = "gridguard", version)]
struct Args {
    /// Polygon file: one "x y" vertex per line, `#` comments.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "trapezoid")]
    strategy: Strategy,
    /// Refinement rounds for paper1/paper2.
    #[arg(long, default_value_t = 0)]
    k: u32,
    /// Grid lines per axis for the grid strategy.
    #[arg(long = "grid-res", default_value_t = 4)]
    grid_res: u32,
    #[arg(long, default_value = "greedy")]
    solver: SolverChoice,
    /// Uniform samples for the coverage check; 0 skips it.
    #[arg(long = "verify-samples", default_value_t = 10_000)]
    verify_samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long = "max-cells", default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
    #[arg(long = "exact-budget", default_value_t = DEFAULT_EXACT_BUDGET)]
    exact_budget: u64,
}

fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("{THREADS_ENV} must be a positive integer, got `{v}`")),
        _ => Ok(None),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("gridguard: {e}");
            return ExitCode::from(2);
        }
    };
    let mut decomposition = DecompositionConfig::new(args.strategy).with_k(args.k);
    decomposition.grid_resolution = args.grid_res;
    decomposition.max_cells = args.max_cells;
    let config = RunConfig {
        input: args.input,
        decomposition,
        solver: args.solver,
        verify_samples: args.verify_samples,
        seed: args.seed,
        svg_out: args.svg,
        json_out: args.json.clone(),
        exact_budget: args.exact_budget,
        threads,
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("gridguard: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if args.json.is_none() {
        println!("{}", report.to_json());
    } else {
        eprintln!(
            "{} cells, {} guarding-regions, {} guard(s)",
            report.scr_count,
            report.gr_count,
            report.guard_count()
        );
    }
    if !report.coverage_ok() {
        let c = report.coverage.as_ref().expect("coverage ran");
        eprintln!(
            "gridguard: coverage {}/{} samples; first unseen point {:?}",
            c.covered, c.samples, c.uncovered[0]
        );
        return ExitCode::from(EXIT_COVERAGE as u8);
    }
    ExitCode::SUCCESS
}
