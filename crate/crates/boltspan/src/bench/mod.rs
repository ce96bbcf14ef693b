//! Reproduces the experimental protocol: per-map matched-seed comparisons of
//! the baseline construction against the full flag set, random-query quality
//! audits against the grid oracle, and per-flag ablations, with CSV output.

mod maps;

pub use maps::{free_space_connected, narrow_passage_count, MapSuite, MAP_CLEARANCE, MAP_COUNT, MAP_SCALE};

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cspace::{Configuration, Environment, Metric, MotionValidator};
use crate::error::{Error, Result};
use crate::oracle::{Connectivity, GridOracle, PreparedOracle};
use crate::query;
use crate::sampling::SampleStream;
use crate::spanner::{self, BuildParams, Flags, SparseGraph};

/// Termination scaling: full runs reproduce the published protocol, desk
/// runs shrink the failure counts and query counts to minutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Desk,
    Paper,
}

impl Scale {
    pub fn termination_failures(self) -> u64 {
        match self {
            Scale::Desk => 3_000,
            Scale::Paper => 15_000,
        }
    }

    pub fn quality_delay_failures(self) -> u64 {
        match self {
            Scale::Desk => 1_000,
            Scale::Paper => 5_000,
        }
    }

    pub fn queries(self) -> usize {
        match self {
            Scale::Desk => 100,
            Scale::Paper => 1_000,
        }
    }
}

impl std::str::FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Scale::Desk),
            "paper" => Ok(Scale::Paper),
            _ => Err(Error::Input(format!("unknown scale `{s}` (expected desk or paper)"))),
        }
    }
}

/// One build + query measurement.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub map_id: usize,
    pub dimension: usize,
    pub seed: u64,
    /// `baseline`, `bolt`, or `minus-<flag>` for ablation runs.
    pub mode: String,
    pub vertices: usize,
    pub edges: usize,
    /// Random samples drawn during construction.
    pub samples: u64,
    pub build_ms: f64,
    pub q_mean_ms: f64,
    pub q_mean_expanded: f64,
    /// Mean smoothed-path length over oracle length.
    pub quality_ratio_mean: f64,
    pub quality_ratio_max: f64,
    /// Failed plans plus stretch-bound violations.
    pub failures: usize,
}

pub const CSV_HEADER: &str = "map,dim,seed,mode,vertices,edges,samples,build_ms,q_mean_ms,q_mean_expanded,quality_ratio_mean,quality_ratio_max,failures";

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.3},{:.4},{:.2},{:.6},{:.6},{}",
            self.map_id,
            self.dimension,
            self.seed,
            self.mode,
            self.vertices,
            self.edges,
            self.samples,
            self.build_ms,
            self.q_mean_ms,
            self.q_mean_expanded,
            self.quality_ratio_mean,
            self.quality_ratio_max,
            self.failures
        )
    }
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

/// Reference visibility radii at the 50-unit map scale.
pub fn reference_delta(dimension: usize) -> Result<f64> {
    match dimension {
        2 => Ok(6.93),
        3 => Ok(8.49),
        _ => Err(Error::Parameter(format!("no reference delta for dimension {dimension}"))),
    }
}

/// Construction parameters for a benchmark dimension at a given scale,
/// all flags on.
pub fn bench_params(dimension: usize, scale: Scale) -> Result<BuildParams> {
    let mut params = BuildParams::new(dimension, Metric::L1, reference_delta(dimension)?)?;
    params.termination_failures = scale.termination_failures();
    params.quality_delay_failures = scale.quality_delay_failures();
    Ok(params)
}

fn mix_seed(dim: usize, map_id: usize, trial: usize, salt: u64) -> u64 {
    let mut x = salt
        ^ (dim as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ (map_id as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f)
        ^ (trial as u64).wrapping_mul(0x1656_67b1_9e37_79f9);
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x
}

fn oracle_for(dimension: usize) -> GridOracle {
    // 3D grids get coarse cells to keep Dijkstra tractable
    let resolution = if dimension >= 3 { 1.0 } else { GridOracle::DEFAULT_RESOLUTION };
    GridOracle { resolution, connectivity: Connectivity::Axis }
}

/// Random valid query pair with a minimum separation, so quality ratios stay
/// well conditioned.
fn query_pair(rng: &mut ChaCha8Rng, env: &Environment, min_sep: f64) -> (Configuration, Configuration) {
    loop {
        let draw = |rng: &mut ChaCha8Rng| {
            Configuration::new(
                env.bounds()
                    .iter()
                    .map(|&(lo, hi)| rng.gen_range(lo..hi))
                    .collect::<Vec<f64>>(),
            )
        };
        let a = draw(rng);
        if !env.is_valid(&a) {
            continue;
        }
        let b = draw(rng);
        if !env.is_valid(&b) {
            continue;
        }
        if Metric::L1.distance(&a, &b) >= min_sep {
            return (a, b);
        }
    }
}

struct QueryStats {
    mean_ms: f64,
    mean_expanded: f64,
    ratio_mean: f64,
    ratio_max: f64,
    failures: usize,
}

/// Runs the query batch for one graph: plans, audits the stretch bound
/// against the precomputed oracle lengths, smooths, and accumulates ratios.
fn run_queries(
    g: &SparseGraph,
    env: &Environment,
    validator: &MotionValidator,
    pairs: &[(Configuration, Configuration)],
    oracle_lengths: &[Option<f64>],
    params: &BuildParams,
) -> QueryStats {
    let mut ms = 0.0;
    let mut expanded = 0.0;
    let mut ratio_sum = 0.0;
    let mut ratio_max: f64 = 0.0;
    let mut ratio_n = 0usize;
    let mut failures = 0usize;
    let bound_slack = 4.0 * params.dense_delta;
    for ((start, goal), oracle_len) in pairs.iter().zip(oracle_lengths) {
        let planned = match query::plan(g, env, validator, start, goal) {
            Ok(Some(r)) => r,
            Ok(None) => {
                failures += 1;
                continue;
            }
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        ms += planned.elapsed.as_secs_f64() * 1e3;
        expanded += planned.expanded as f64;
        let Some(opt) = *oracle_len else {
            // oracle sees no route; the roadmap found one, so count the
            // audit as inconclusive rather than failed
            continue;
        };
        if planned.length > params.stretch * opt + bound_slack {
            eprintln!(
                "stretch violation: map query {start} -> {goal}: {} > {} * {opt} + {bound_slack}",
                planned.length, params.stretch
            );
            failures += 1;
        }
        let smoothed = query::smooth(&planned.path, env, validator, params.metric);
        let smoothed_len = query::path_metric_length(&smoothed, params.metric);
        if opt > 0.0 {
            let ratio = smoothed_len / opt;
            ratio_sum += ratio;
            ratio_max = ratio_max.max(ratio);
            ratio_n += 1;
        }
    }
    let n = pairs.len().max(1) as f64;
    QueryStats {
        mean_ms: ms / n,
        mean_expanded: expanded / n,
        ratio_mean: if ratio_n > 0 { ratio_sum / ratio_n as f64 } else { 0.0 },
        ratio_max,
        failures,
    }
}

fn measure(
    env: &Environment,
    params: &BuildParams,
    seed: u64,
    mode: &str,
    map_id: usize,
    queries: usize,
    oracle: Option<&PreparedOracle<'_>>,
) -> Result<BenchRecord> {
    let mut stream = SampleStream::new(seed);
    let t0 = Instant::now();
    let g = spanner::build(env, params, &mut stream)?;
    let build_ms = t0.elapsed().as_secs_f64() * 1e3;
    let validator = MotionValidator::new(params.motion_resolution)?;

    let mut record = BenchRecord {
        map_id,
        dimension: params.dimension,
        seed,
        mode: mode.to_string(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        samples: stream.total_samples(),
        build_ms,
        q_mean_ms: 0.0,
        q_mean_expanded: 0.0,
        quality_ratio_mean: 0.0,
        quality_ratio_max: 0.0,
        failures: 0,
    };
    if queries == 0 {
        return Ok(record);
    }
    let oracle = oracle.expect("oracle required when queries > 0");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5157_u64);
    let pairs: Vec<_> = (0..queries).map(|_| query_pair(&mut rng, env, params.delta)).collect();
    let oracle_lengths: Vec<Option<f64>> =
        pairs.iter().map(|(a, b)| oracle.shortest(a, b)).collect();
    let stats = run_queries(&g, env, &validator, &pairs, &oracle_lengths, params);
    record.q_mean_ms = stats.mean_ms;
    record.q_mean_expanded = stats.mean_expanded;
    record.quality_ratio_mean = stats.ratio_mean;
    record.quality_ratio_max = stats.ratio_max;
    record.failures = stats.failures;
    Ok(record)
}

/// Builds baseline and full-flag graphs with matched seeds on every map and
/// runs the query audit on both. Baseline keeps the derived stretch factor;
/// only the construction flags differ, and both modes consume the identical
/// random sample sequence.
pub fn run_suite(dims: &[usize], trials: usize, scale: Scale) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &dim in dims {
        let suite = MapSuite::generate(dim)?;
        let bolt_params = bench_params(dim, scale)?;
        let mut baseline_params = bolt_params.clone();
        baseline_params.flags = Flags::empty();
        let grid = oracle_for(dim);
        for map_id in 1..=MAP_COUNT {
            let env = suite.map(map_id)?;
            let oracle = PreparedOracle::new(env, bolt_params.metric, grid)?;
            for trial in 0..trials {
                let seed = mix_seed(dim, map_id, trial, 0xb0_17);
                for (mode, params) in
                    [("baseline", &baseline_params), ("bolt", &bolt_params)]
                {
                    records.push(measure(
                        env,
                        params,
                        seed,
                        mode,
                        map_id,
                        scale.queries(),
                        Some(&oracle),
                    )?);
                }
            }
        }
    }
    Ok(records)
}

/// Matched-seed pair: full flag set against the set minus one flag, on one
/// map. Dropping the exact-stretch flag swaps in the arbitrary stand-in
/// stretch factor; other flags leave the derived value untouched.
pub fn run_ablation(
    map_id: usize,
    dim: usize,
    base: &BuildParams,
    flag: Flags,
    seed: u64,
) -> Result<(BenchRecord, BenchRecord)> {
    let suite = MapSuite::generate(dim)?;
    let env = suite.map(map_id)?;
    let mut full = base.clone();
    full.flags = Flags::all();
    full.rederive()?;
    let mut reduced = base.clone();
    reduced.flags = Flags::all() - flag;
    reduced.rederive()?;
    let all_record = measure(env, &full, seed, "bolt", map_id, 0, None)?;
    let minus_record = measure(
        env,
        &reduced,
        seed,
        &format!("minus-{}", flag.name()),
        map_id,
        0,
        None,
    )?;
    Ok((all_record, minus_record))
}

/// Per-(dimension, map, mode) means and standard deviations as a plain-text
/// table.
pub fn summarize(records: &[BenchRecord]) -> String {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<(usize, usize, String), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.dimension, r.map_id, r.mode.clone())).or_default().push(r);
    }
    let stats = |xs: &[f64]| -> (f64, f64) {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        (mean, var.sqrt())
    };
    let mut out = String::new();
    out.push_str(&format!(
        "{:<4} {:<4} {:<24} {:>7} {:>16} {:>16} {:>14} {:>10}\n",
        "dim", "map", "mode", "trials", "vertices", "edges", "quality", "failures"
    ));
    for ((dim, map_id, mode), rs) in &groups {
        let (vm, vs) = stats(&rs.iter().map(|r| r.vertices as f64).collect::<Vec<_>>());
        let (em, es) = stats(&rs.iter().map(|r| r.edges as f64).collect::<Vec<_>>());
        let (qm, _) = stats(&rs.iter().map(|r| r.quality_ratio_mean).collect::<Vec<_>>());
        let failures: usize = rs.iter().map(|r| r.failures).sum();
        out.push_str(&format!(
            "{:<4} {:<4} {:<24} {:>7} {:>9.1}±{:<6.1} {:>9.1}±{:<6.1} {:>14.4} {:>10}\n",
            dim,
            map_id,
            mode,
            rs.len(),
            vm,
            vs,
            em,
            es,
            qm,
            failures
        ));
    }
    out
}
