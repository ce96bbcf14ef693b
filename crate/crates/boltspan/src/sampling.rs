//! Lattice seeding and uniform random sampling.
//!
//! The hybrid construction first drops a d-cubic lattice of seed states whose
//! spacing guarantees full visibility coverage of open space, then draws
//! uniform random samples to handle the regions obstacles complicate. The
//! consecutive-failure counter kept here drives both the quality-criterion
//! delay and the termination rule.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cspace::{Configuration, Environment, Metric};
use crate::error::{Error, Result};

/// Spacing for the visibility radius `delta` in `d` dimensions with
/// penetration `psi`:
///
/// * L1: `2*delta/d - psi`
/// * L2: `sqrt(4*delta^2/d) - psi`
///
/// This is the coarsest grid whose farthest interface-sharing vertices still
/// have overlapping visibility regions, i.e. open space is fully covered.
pub fn lattice_spacing(delta: f64, d: usize, psi: f64, metric: Metric) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("delta {delta} must be positive")));
    }
    if d == 0 {
        return Err(Error::Parameter("dimension must be at least 1".into()));
    }
    if !(psi >= 0.0) {
        return Err(Error::Parameter(format!("psi {psi} must be non-negative")));
    }
    let base = match metric {
        Metric::L1 => 2.0 * delta / d as f64,
        Metric::L2 => (4.0 * delta * delta / d as f64).sqrt(),
    };
    let beta = base - psi;
    if !(beta > 0.0) {
        return Err(Error::Parameter(format!(
            "psi {psi} leaves a non-positive spacing ({base} - {psi})"
        )));
    }
    Ok(beta)
}

/// Placement of the seed lattice.
#[derive(Debug, Clone)]
pub struct LatticeSpec {
    pub beta: f64,
    /// Shift of the first grid point from the lower bounds corner, per axis.
    pub origin_offset: Vec<f64>,
}

impl LatticeSpec {
    /// Lattice anchored at the lower bounds corner.
    pub fn anchored(beta: f64, dimension: usize) -> Self {
        LatticeSpec { beta, origin_offset: vec![0.0; dimension] }
    }

    /// Grid points per axis inside the given bounds.
    pub fn counts(&self, env: &Environment) -> Vec<usize> {
        env.bounds()
            .iter()
            .zip(&self.origin_offset)
            .map(|(&(lo, hi), off)| {
                let range = hi - (lo + off);
                if range < 0.0 {
                    0
                } else {
                    (range / self.beta + 1e-9).floor() as usize + 1
                }
            })
            .collect()
    }
}

/// All grid points `lower + offset + beta*k` inside the bounds, in
/// lexicographic axis order. Points inside obstacles are included; validity
/// filtering is the construction pipeline's job.
pub fn generate_lattice(env: &Environment, spec: &LatticeSpec) -> Vec<Configuration> {
    let counts = spec.counts(env);
    let total: usize = counts.iter().product();
    let mut points = Vec::with_capacity(total);
    let d = env.dimension();
    let mut idx = vec![0usize; d];
    if counts.iter().any(|&c| c == 0) {
        return points;
    }
    loop {
        let coords: Vec<f64> = (0..d)
            .map(|i| env.bounds()[i].0 + spec.origin_offset[i] + spec.beta * idx[i] as f64)
            .collect();
        points.push(Configuration::new(coords));
        // odometer increment, last axis fastest
        let mut axis = d;
        loop {
            if axis == 0 {
                return points;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < counts[axis] {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Deterministic uniform sample source with failure bookkeeping.
///
/// Identical seeds reproduce identical sample sequences bit for bit.
#[derive(Debug, Clone)]
pub struct SampleStream {
    seed: u64,
    rng: ChaCha8Rng,
    consecutive_failures: u64,
    total_samples: u64,
}

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        SampleStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            consecutive_failures: 0,
            total_samples: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn consecutive_failures(&self) -> u64 {
        self.consecutive_failures
    }

    pub fn total_samples(&self) -> u64 {
        self.total_samples
    }

    /// Next sample, uniform over the environment's bounding box.
    pub fn next_uniform(&mut self, env: &Environment) -> Configuration {
        self.total_samples += 1;
        Configuration::new(
            env.bounds()
                .iter()
                .map(|&(lo, hi)| self.rng.gen_range(lo..hi))
                .collect(),
        )
    }

    /// Resets the failure counter on success, otherwise increments it.
    pub fn record_outcome(&mut self, added_anything: bool) {
        if added_anything {
            self.consecutive_failures = 0;
        } else {
            self.consecutive_failures += 1;
        }
    }
}
