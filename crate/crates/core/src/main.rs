//! Benchmark and diagnostics CLI.
//!
//! Exit codes: 0 on success, 2 on configuration errors, 3 when a benchmark
//! completed with partial row failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use framerecon::bench::{emit, run_benchmark, BenchConfig, MRuleConfig, OutputFormat};
use framerecon::{
    estimate_frame_bounds, estimate_localization, gram, make_frame, reconstruct, FrameKind,
    IndexSet, Method, SelectionRule, SolverOptions,
};

#[derive(Parser)]
#[command(name = "framerecon", version, about = "Non-uniform Fourier frame reconstruction benchmarks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seeds for the jittered frequency draws, e.g. "1,2,3,4,5".
    #[arg(long, global = true, value_delimiter = ',')]
    seed_list: Option<Vec<u64>>,

    /// Relative-residual tolerance of the iterative solver.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Output directory (default: $FRAMERECON_OUT_DIR or ./out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format for benchmark tables.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<OutputFormat>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format `{other}`; valid: csv, json")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark sweep and write the result table.
    Bench(BenchArgs),
    /// Run a single reconstruction and print its result row.
    Reconstruct(ReconstructArgs),
    /// Fit the off-diagonal decay of a frame(-pair) Gram.
    Localization(LocalizationArgs),
    /// Estimate numeric frame bounds of a jittered family.
    Bounds(BoundsArgs),
}

#[derive(Args)]
struct BenchArgs {
    /// Stock experiment preset (1, 2 or 3).
    #[arg(long, conflicts_with = "config")]
    example: Option<u8>,

    /// JSON configuration file; overrides the preset fields below.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Target function name.
    #[arg(long)]
    function: Option<String>,

    /// Reconstruction half-widths, e.g. "16,32,64".
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,

    /// Sampling size as a factor of n: m = ceil(factor * n).
    #[arg(long, conflicts_with = "m_rule")]
    m_factor: Option<f64>,

    /// Sampling size rule: cc, inverse, reconstruction, fourier.
    #[arg(long)]
    m_rule: Option<SelectionRule>,

    /// Methods to run, e.g. "new,cc,fourier".
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<Method>>,

    /// Evaluation grid size for pointwise errors.
    #[arg(long)]
    grid: Option<usize>,

    /// Output file stem (default "bench").
    #[arg(long, default_value = "bench")]
    name: String,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Method: new, cc, finite-section, fourier.
    #[arg(long, default_value = "new")]
    method: Method,

    #[arg(long, default_value = "gaussian")]
    function: String,

    /// Reconstruction half-width.
    #[arg(long, default_value_t = 16)]
    n: usize,

    /// Sampling half-width; defaults to ceil(1.4 n).
    #[arg(long)]
    m: Option<usize>,

    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Jitter bound in [0, 1/4].
    #[arg(long, default_value_t = framerecon::KADEC_BOUND)]
    delta: f64,
}

#[derive(Args)]
struct LocalizationArgs {
    /// Half-width of the analyzed index range.
    #[arg(long, default_value_t = 128)]
    half_width: usize,

    #[arg(long, default_value_t = 7)]
    seed: u64,

    #[arg(long, default_value_t = framerecon::KADEC_BOUND)]
    delta: f64,

    /// "cross" fits the jittered-vs-harmonic cross-Gram, "self" the jittered
    /// self-Gram.
    #[arg(long, default_value = "cross")]
    pair: String,
}

#[derive(Args)]
struct BoundsArgs {
    /// Probe half-width (bandlimited test space size).
    #[arg(long, default_value_t = 512)]
    probe: usize,

    #[arg(long, default_value_t = 7)]
    seed: u64,

    #[arg(long, default_value_t = framerecon::KADEC_BOUND)]
    delta: f64,
}

fn out_dir(cli: &Cli) -> PathBuf {
    cli.out
        .clone()
        .or_else(|| std::env::var_os("FRAMERECON_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> framerecon::Result<ExitCode> {
    match &cli.command {
        Command::Bench(args) => bench_cmd(cli, args),
        Command::Reconstruct(args) => reconstruct_cmd(cli, args),
        Command::Localization(args) => localization_cmd(args),
        Command::Bounds(args) => bounds_cmd(args),
    }
}

fn bench_cmd(cli: &Cli, args: &BenchArgs) -> framerecon::Result<ExitCode> {
    let mut config = if let Some(path) = &args.config {
        let body = std::fs::read_to_string(path).map_err(|source| framerecon::Error::Io {
            path: path.clone(),
            source,
        })?;
        serde_json::from_str::<BenchConfig>(&body)
            .map_err(|e| framerecon::Error::Config(format!("{}: {e}", path.display())))?
    } else {
        BenchConfig::example(args.example.unwrap_or(1))?
    };

    if let Some(function) = &args.function {
        config.function = function.clone();
    }
    if let Some(n_list) = &args.n_list {
        config.n_list = n_list.clone();
    }
    if let Some(factor) = args.m_factor {
        config.m_rule = MRuleConfig::Factor { factor };
    }
    if let Some(rule) = args.m_rule {
        config.m_rule = MRuleConfig::Rule {
            rule,
            c: framerecon::CROSS_DECAY_C1_UNNORMALIZED,
            s: framerecon::CROSS_DECAY_S,
            t: 1.0,
            alpha: 1.0,
            probe: None,
        };
    }
    if let Some(methods) = &args.methods {
        config.methods = methods.clone();
    }
    if let Some(seeds) = &cli.seed_list {
        config.seeds = seeds.clone();
    }
    if let Some(tol) = cli.tol {
        config.cg_tol = tol;
    }
    if let Some(grid) = args.grid {
        config.grid_size = grid;
    }
    config.validate()?;

    let table = run_benchmark(&config)?;
    let format = cli.format.unwrap_or(OutputFormat::Csv);
    let ext = match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let path = out_dir(cli).join(format!("{}.{ext}", args.name));
    emit(&table, format, &path)?;

    println!("# config hash {}", table.provenance.config_hash);
    println!("method     n     m  l2_error(median)  iterations  cond");
    for a in &table.aggregates {
        println!(
            "{:<14} {:>5} {:>5}  {:>12.4e}  {:>6.1}  {:>8.2}",
            a.method.to_string(),
            a.n,
            a.m,
            a.l2_error_median,
            a.iterations_median,
            a.condition_number_median
        );
    }
    println!("wrote {}", path.display());

    if table.failures() > 0 {
        eprintln!("{} row(s) failed; see the emitted table", table.failures());
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn reconstruct_cmd(cli: &Cli, args: &ReconstructArgs) -> framerecon::Result<ExitCode> {
    let f = framerecon::test_function(&args.function)?;
    let m = match args.method {
        Method::Fourier => args.n,
        _ => args.m.unwrap_or((1.4 * args.n as f64).ceil() as usize),
    };
    let frame = match args.method {
        Method::Fourier => make_frame(FrameKind::IntegerFourier, args.n, 0.0, args.seed)?,
        _ => make_frame(FrameKind::JitteredFourier, m, args.delta, args.seed)?,
    };
    let opts = SolverOptions {
        tol: cli.tol.unwrap_or(framerecon::solvers::DEFAULT_TOL),
        ..SolverOptions::default()
    };
    let r = reconstruct(args.method, &f, &frame, args.n, m, &opts)?;
    println!("{}", framerecon::bench::CSV_HEADER);
    println!(
        "{},{},{},{},{},{},{},{},{}",
        r.method,
        r.n,
        r.m,
        r.seed,
        r.l2_error,
        r.max_pointwise_error,
        r.iterations,
        r.condition_number,
        r.wall_time.as_secs_f64() * 1e3
    );
    Ok(ExitCode::SUCCESS)
}

fn localization_cmd(args: &LocalizationArgs) -> framerecon::Result<ExitCode> {
    let k = args.half_width;
    let psi = make_frame(FrameKind::JitteredFourier, k, args.delta, args.seed)?;
    let idx = IndexSet::new(k);
    let g = match args.pair.as_str() {
        "cross" => {
            let phi = make_frame(FrameKind::IntegerFourier, k, 0.0, 0)?;
            gram(&psi, &phi, idx, idx)?
        }
        "self" => gram(&psi, &psi, idx, idx)?,
        other => {
            return Err(framerecon::Error::Config(format!(
                "unknown pair `{other}`; valid: cross, self"
            )))
        }
    };
    let fit = estimate_localization(&g)?;
    println!(
        "pair={} half_width={} seed={} c={:.6} s={:.6} residual={:.3e} saturated={}",
        args.pair, k, args.seed, fit.c, fit.s, fit.residual, fit.saturated
    );
    Ok(ExitCode::SUCCESS)
}

fn bounds_cmd(args: &BoundsArgs) -> framerecon::Result<ExitCode> {
    let frame = make_frame(FrameKind::JitteredFourier, args.probe, args.delta, args.seed)?;
    let b = estimate_frame_bounds(&frame, args.probe)?;
    println!(
        "probe={} seed={} delta={} A={:.6} B={:.6} method=eigen-numeric",
        args.probe, args.seed, args.delta, b.lower, b.upper
    );
    Ok(ExitCode::SUCCESS)
}
