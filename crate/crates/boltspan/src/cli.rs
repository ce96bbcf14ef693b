//! Command-line interface. The `boltspan` binary is a thin wrapper around
//! [`run`]; every subcommand is also reachable programmatically for tests.
//!
//! Exit codes: 0 success, 1 planning failure (no path / failed validation),
//! 2 input or parameter error. Diagnostics go to standard error.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::bench::{self, MapSuite, Scale};
use crate::cspace::{Configuration, Environment, Metric, MotionValidator};
use crate::error::{Error, Result};
use crate::oracle::{oracle_slack, GridOracle, PreparedOracle};
use crate::query;
use crate::sampling::SampleStream;
use crate::spanner::{self, BuildParams, Flags, SparseGraph};
use crate::viz::{render, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_PATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "boltspan",
    about = "Sparse roadmap spanners: build, query, validate, benchmark, render",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a roadmap over an environment and write it to a .brm file.
    Build(BuildArgs),
    /// Plan a path between two configurations over a saved roadmap.
    Query(QueryArgs),
    /// Run the benchmark suite and write CSV plus a summary table.
    Bench(BenchArgs),
    /// Compare the full flag set against the set minus one flag.
    Ablate(AblateArgs),
    /// Render an environment and roadmap to SVG.
    Render(RenderArgs),
    /// Re-check roadmap invariants and audit the stretch bound.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct BuildArgs {
    /// Environment JSON file.
    #[arg(long)]
    env: PathBuf,
    /// Visibility radius.
    #[arg(long)]
    delta: f64,
    /// Interface support radius; defaults to delta/10.
    #[arg(long)]
    dense_delta: Option<f64>,
    /// Visibility overlap of neighboring lattice vertices.
    #[arg(long, default_value_t = 0.01)]
    psi: f64,
    #[arg(long, default_value = "l1")]
    metric: String,
    /// `all`, `none`, or a comma-separated list of flag names.
    #[arg(long, default_value = "all")]
    flags: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Consecutive failed samples before construction stops.
    #[arg(long, default_value_t = 15_000)]
    term_failures: u64,
    /// Consecutive failures before the quality criterion engages.
    #[arg(long, default_value_t = 5_000)]
    quality_delay: u64,
    /// Stretch-factor denominator variant (2 or 4).
    #[arg(long, default_value_t = 4)]
    stretch_k: u32,
    /// Interpolation step for motion checks.
    #[arg(long, default_value_t = 0.1)]
    resolution: f64,
    /// Output roadmap file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct QueryArgs {
    /// Roadmap .brm file.
    #[arg(long)]
    graph: PathBuf,
    /// Environment JSON file.
    #[arg(long)]
    env: PathBuf,
    /// Start configuration, e.g. "1.5,2.0".
    #[arg(long)]
    start: String,
    /// Goal configuration.
    #[arg(long)]
    goal: String,
    /// Changed environment: re-validate roadmap edges lazily against it.
    #[arg(long)]
    repair_env: Option<PathBuf>,
    /// Shortcut-smooth the returned path.
    #[arg(long)]
    smooth: bool,
    /// Write the scene with the path to this SVG file.
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, default_value_t = 0.1)]
    resolution: f64,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Dimensions to run, e.g. "2" or "2,3".
    #[arg(long, default_value = "2")]
    dims: String,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// desk (fast) or paper (full protocol).
    #[arg(long, default_value = "desk")]
    scale: String,
    /// Output directory for CSV, summary, and map files.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct AblateArgs {
    /// Map id (1..=5).
    #[arg(long, default_value_t = 3)]
    map: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Flag to remove, e.g. "quality-delay".
    #[arg(long)]
    flag: String,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    env: PathBuf,
    /// Slice for 3D scenes, e.g. "z=25" or "2=25".
    #[arg(long)]
    slice: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    env: PathBuf,
    /// Random query pairs for the stretch-bound audit.
    #[arg(long, default_value_t = 100)]
    queries: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    resolution: f64,
}

/// Parses argv and executes; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    EXIT_INPUT
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Query(args) => cmd_query(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Ablate(args) => cmd_ablate(args),
        Command::Render(args) => cmd_render(args),
        Command::Validate(args) => cmd_validate(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn load_pair(graph: &Path, env: &Path) -> Result<(SparseGraph, Environment)> {
    let g = spanner::load_roadmap(graph)?;
    let e = Environment::load(env)?;
    if g.meta().dimension != e.dimension() {
        return Err(Error::Input(format!(
            "roadmap dimension {} does not match environment dimension {}",
            g.meta().dimension,
            e.dimension()
        )));
    }
    Ok((g, e))
}

fn cmd_build(args: BuildArgs) -> Result<i32> {
    let env = Environment::load(&args.env)?;
    let metric = Metric::from_str(&args.metric)?;
    let mut params = BuildParams::new(env.dimension(), metric, args.delta)?;
    if let Some(dd) = args.dense_delta {
        params.dense_delta = dd;
    }
    params.psi = args.psi;
    params.stretch_denominator_k = args.stretch_k;
    params.flags = Flags::parse_set(&args.flags)?;
    params.termination_failures = args.term_failures;
    params.quality_delay_failures = args.quality_delay;
    params.motion_resolution = args.resolution;
    params.rederive()?;

    let mut stream = SampleStream::new(args.seed);
    let t0 = std::time::Instant::now();
    let g = spanner::build(&env, &params, &mut stream)?;
    let elapsed = t0.elapsed();
    spanner::save_roadmap(&g, &args.out)?;
    println!(
        "beta={} t={:.4} vertices={} edges={} components={} samples={} elapsed_ms={:.1}",
        params.beta,
        params.stretch,
        g.vertex_count(),
        g.edge_count(),
        g.component_count(),
        stream.total_samples(),
        elapsed.as_secs_f64() * 1e3
    );
    println!("wrote {}", args.out.display());
    Ok(EXIT_OK)
}

fn cmd_query(args: QueryArgs) -> Result<i32> {
    let (g, env) = load_pair(&args.graph, &args.env)?;
    let start = Configuration::from_str(&args.start)?;
    let goal = Configuration::from_str(&args.goal)?;
    let validator = MotionValidator::new(args.resolution)?;
    let result = match &args.repair_env {
        Some(path) => {
            let env_new = Environment::load(path)?;
            query::plan_with_repair(&g, &env_new, &validator, &start, &goal)?
        }
        None => query::plan(&g, &env, &validator, &start, &goal)?,
    };
    let Some(mut r) = result else {
        eprintln!("no path: endpoints could not be connected through the roadmap");
        return Ok(EXIT_NO_PATH);
    };
    let metric = g.meta().metric;
    if args.smooth {
        let query_env = match &args.repair_env {
            Some(path) => Environment::load(path)?,
            None => env.clone(),
        };
        r.path = query::smooth(&r.path, &query_env, &validator, metric);
        r.length = query::path_metric_length(&r.path, metric);
    }
    println!(
        "length={:.6} states={} expanded={} elapsed_ms={:.3}",
        r.length,
        r.path.len(),
        r.expanded,
        r.elapsed.as_secs_f64() * 1e3
    );
    for q in &r.path {
        println!("  {q}");
    }
    if let Some(svg_path) = &args.svg {
        let doc = render(&env, Some(&g), Some(&r.path), &RenderOptions::default())?;
        std::fs::write(svg_path, doc)?;
        println!("wrote {}", svg_path.display());
    }
    Ok(EXIT_OK)
}

fn cmd_bench(args: BenchArgs) -> Result<i32> {
    let dims: Vec<usize> = args
        .dims
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("bad dimension `{s}`")))
        })
        .collect::<Result<_>>()?;
    let scale = Scale::from_str(&args.scale)?;
    std::fs::create_dir_all(&args.out)?;
    for &dim in &dims {
        MapSuite::generate(dim)?.save_all(&args.out)?;
    }
    let records = bench::run_suite(&dims, args.trials, scale)?;
    let csv = bench::to_csv(&records);
    std::fs::write(args.out.join("records.csv"), &csv)?;
    let table = bench::summarize(&records);
    std::fs::write(args.out.join("summary.txt"), &table)?;
    print!("{table}");
    println!("wrote {}", args.out.join("records.csv").display());
    let failures: usize = records.iter().map(|r| r.failures).sum();
    if failures > 0 {
        eprintln!("{failures} failed plans or stretch violations");
        return Ok(EXIT_NO_PATH);
    }
    Ok(EXIT_OK)
}

fn cmd_ablate(args: AblateArgs) -> Result<i32> {
    let flag = Flags::parse_one(&args.flag)?;
    let params = bench::bench_params(args.dim, Scale::Desk)?;
    std::fs::create_dir_all(&args.out)?;
    let mut records = Vec::new();
    let mut full_edges = 0.0;
    let mut reduced_edges = 0.0;
    for trial in 0..args.trials.max(1) {
        let seed = 0xab1a_7e00u64 ^ trial as u64;
        let (full, reduced) = bench::run_ablation(args.map, args.dim, &params, flag, seed)?;
        full_edges += full.edges as f64;
        reduced_edges += reduced.edges as f64;
        records.push(full);
        records.push(reduced);
    }
    let n = args.trials.max(1) as f64;
    let csv = bench::to_csv(&records);
    let path = args.out.join(format!("ablate-{}.csv", flag.name()));
    std::fs::write(&path, csv)?;
    println!(
        "flag={} mean_edges_with={:.1} mean_edges_without={:.1} delta={:+.1}",
        flag.name(),
        full_edges / n,
        reduced_edges / n,
        reduced_edges / n - full_edges / n
    );
    println!("wrote {}", path.display());
    Ok(EXIT_OK)
}

fn parse_slice(spec: &str) -> Result<(usize, f64)> {
    let (axis_s, val_s) = spec
        .split_once('=')
        .ok_or_else(|| Error::Input(format!("bad slice `{spec}`, expected axis=value")))?;
    let axis = match axis_s.trim() {
        "x" => 0,
        "y" => 1,
        "z" => 2,
        other => other
            .parse::<usize>()
            .map_err(|_| Error::Input(format!("bad slice axis `{other}`")))?,
    };
    let value = val_s
        .trim()
        .parse::<f64>()
        .map_err(|_| Error::Input(format!("bad slice value `{val_s}`")))?;
    Ok((axis, value))
}

fn cmd_render(args: RenderArgs) -> Result<i32> {
    let (g, env) = load_pair(&args.graph, &args.env)?;
    let mut options = RenderOptions::default();
    if let Some(spec) = &args.slice {
        options.slice = Some(parse_slice(spec)?);
    }
    let doc = render(&env, Some(&g), None, &options)?;
    std::fs::write(&args.out, doc)?;
    println!("wrote {}", args.out.display());
    Ok(EXIT_OK)
}

fn cmd_validate(args: ValidateArgs) -> Result<i32> {
    let (g, env) = load_pair(&args.graph, &args.env)?;
    let validator = MotionValidator::new(args.resolution)?;
    let meta = *g.meta();
    let mut violations = 0usize;

    let mut bad_edges = 0usize;
    for (a, b, len) in g.edges() {
        if !validator.check_motion(g.vertex(a), g.vertex(b), &env) {
            bad_edges += 1;
        }
        if (len - meta.metric.distance(g.vertex(a), g.vertex(b))).abs() > 1e-12 {
            bad_edges += 1;
        }
    }
    violations += bad_edges;
    println!("edge revalidation: {bad_edges} violations over {} edges", g.edge_count());

    let components_ok = g.components_agree_with_bfs();
    if !components_ok {
        violations += 1;
    }
    println!(
        "component index vs BFS: {}",
        if components_ok { "agree" } else { "DISAGREE" }
    );

    if args.queries > 0 {
        let grid = if env.dimension() >= 3 {
            GridOracle::new(1.0, crate::oracle::Connectivity::Axis)?
        } else {
            GridOracle::default_l1()
        };
        let oracle = PreparedOracle::new(&env, meta.metric, grid)?;
        let slack = oracle_slack(&grid, meta.metric, env.dimension());
        let _ = slack; // L1 audits are exact; slack documents the L2 band
        let mut rng = SampleStream::new(args.seed);
        let mut failed = 0usize;
        let mut stretch_bad = 0usize;
        let mut done = 0usize;
        while done < args.queries {
            let a = rng.next_uniform(&env);
            let b = rng.next_uniform(&env);
            if !env.is_valid(&a) || !env.is_valid(&b) {
                continue;
            }
            if meta.metric.distance(&a, &b) < meta.delta {
                continue;
            }
            done += 1;
            match query::plan(&g, &env, &validator, &a, &b)? {
                None => failed += 1,
                Some(r) => {
                    if let Some(opt) = oracle.shortest(&a, &b) {
                        if r.length > meta.stretch * opt + 4.0 * meta.dense_delta {
                            stretch_bad += 1;
                            eprintln!(
                                "stretch violation: {a} -> {b}: {} > {}*{opt} + {}",
                                r.length,
                                meta.stretch,
                                4.0 * meta.dense_delta
                            );
                        }
                    }
                }
            }
        }
        violations += failed + stretch_bad;
        println!("queries: {done} run, {failed} failed, {stretch_bad} stretch violations");
    }

    if violations == 0 {
        println!("validate: ok");
        Ok(EXIT_OK)
    } else {
        eprintln!("validate: {violations} violations");
        Ok(EXIT_NO_PATH)
    }
}
