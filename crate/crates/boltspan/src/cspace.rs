//! Configuration-space model: environments with axis-aligned box obstacles,
//! L1/L2 metrics, state validity, and straight-line local-path validation.
//!
//! Obstacle clearance is realized by Minkowski-inflating every box on all
//! faces; the same inflated geometry backs both state checks and discretized
//! motion checks, so the two can never disagree.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the d-dimensional configuration space.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    coords: Vec<f64>,
}

impl Configuration {
    pub fn new(coords: Vec<f64>) -> Self {
        Configuration { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Linear interpolation in coordinates; `t` in [0,1].
    pub fn interpolate(&self, other: &Configuration, t: f64) -> Configuration {
        debug_assert_eq!(self.dim(), other.dim());
        Configuration::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + (b - a) * t)
                .collect(),
        )
    }
}

impl From<Vec<f64>> for Configuration {
    fn from(coords: Vec<f64>) -> Self {
        Configuration::new(coords)
    }
}

impl From<&[f64]> for Configuration {
    fn from(coords: &[f64]) -> Self {
        Configuration::new(coords.to_vec())
    }
}

impl std::ops::Index<usize> for Configuration {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses `"x,y[,z,...]"`.
impl FromStr for Configuration {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let coords: std::result::Result<Vec<f64>, _> =
            s.split(',').map(|p| p.trim().parse::<f64>()).collect();
        match coords {
            Ok(c) if !c.is_empty() => Ok(Configuration::new(c)),
            _ => Err(Error::Input(format!("cannot parse configuration `{s}`"))),
        }
    }
}

/// Distance function used over the configuration space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    L1,
    L2,
}

impl Metric {
    /// Metric distance between two configurations of equal dimension.
    ///
    /// Dimension mismatch is a programming error and panics.
    pub fn distance(&self, a: &Configuration, b: &Configuration) -> f64 {
        assert_eq!(a.dim(), b.dim(), "configuration dimension mismatch");
        match self {
            Metric::L1 => a
                .coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| (x - y).abs())
                .sum(),
            Metric::L2 => a
                .coords()
                .iter()
                .zip(b.coords())
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Minimum distance from point `p` to the segment `a`-`b`.
    ///
    /// For L2 this is the usual orthogonal projection. For L1 the distance
    /// along the segment is a piecewise-linear convex function of the
    /// interpolation parameter whose breakpoints are the per-coordinate
    /// crossings, so the minimum is attained at an endpoint or a breakpoint.
    pub fn point_segment_distance(
        &self,
        p: &Configuration,
        a: &Configuration,
        b: &Configuration,
    ) -> f64 {
        match self {
            Metric::L2 => {
                let mut dot = 0.0;
                let mut len2 = 0.0;
                for i in 0..p.dim() {
                    let d = b[i] - a[i];
                    dot += (p[i] - a[i]) * d;
                    len2 += d * d;
                }
                let t = if len2 > 0.0 { (dot / len2).clamp(0.0, 1.0) } else { 0.0 };
                self.distance(p, &a.interpolate(b, t))
            }
            Metric::L1 => {
                let mut best = self.distance(p, a).min(self.distance(p, b));
                for i in 0..p.dim() {
                    let d = b[i] - a[i];
                    if d.abs() > 0.0 {
                        let t = (p[i] - a[i]) / d;
                        if t > 0.0 && t < 1.0 {
                            best = best.min(self.distance(p, &a.interpolate(b, t)));
                        }
                    }
                }
                best
            }
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::L1 => write!(f, "l1"),
            Metric::L2 => write!(f, "l2"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Metric::L1),
            "l2" => Ok(Metric::L2),
            _ => Err(Error::Input(format!("unknown metric `{s}` (expected l1 or l2)"))),
        }
    }
}

/// Axis-aligned box obstacle given by its min and max corners.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisBox {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl AxisBox {
    pub fn new(min: Vec<f64>, max: Vec<f64>) -> Self {
        AxisBox { min, max }
    }

    pub fn contains(&self, q: &Configuration) -> bool {
        self.min
            .iter()
            .zip(&self.max)
            .zip(q.coords())
            .all(|((lo, hi), c)| *lo <= *c && *c <= *hi)
    }

    /// Box grown by `amount` on every face.
    pub fn inflated(&self, amount: f64) -> AxisBox {
        AxisBox {
            min: self.min.iter().map(|c| c - amount).collect(),
            max: self.max.iter().map(|c| c + amount).collect(),
        }
    }

    /// Euclidean set distance to another box (0 when they touch or overlap).
    pub fn gap(&self, other: &AxisBox) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.min.len() {
            let s = (other.min[i] - self.max[i])
                .max(self.min[i] - other.max[i])
                .max(0.0);
            sum += s * s;
        }
        sum.sqrt()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EnvironmentFile {
    dimension: usize,
    bounds: Vec<[f64; 2]>,
    clearance: f64,
    obstacles: Vec<AxisBox>,
}

/// Workspace description defining the collision-free subset of the c-space.
#[derive(Debug, Clone)]
pub struct Environment {
    dimension: usize,
    bounds: Vec<(f64, f64)>,
    clearance: f64,
    obstacles: Vec<AxisBox>,
    inflated: Vec<AxisBox>,
}

impl Environment {
    pub fn new(
        dimension: usize,
        bounds: Vec<(f64, f64)>,
        obstacles: Vec<AxisBox>,
        clearance: f64,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Parameter("dimension must be at least 1".into()));
        }
        if bounds.len() != dimension {
            return Err(Error::Parameter(format!(
                "bounds has {} entries for dimension {dimension}",
                bounds.len()
            )));
        }
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            if !(lo < hi) {
                return Err(Error::Parameter(format!(
                    "bounds[{i}]: lower {lo} must be below upper {hi}"
                )));
            }
        }
        if !(clearance >= 0.0) {
            return Err(Error::Parameter(format!(
                "clearance {clearance} must be non-negative"
            )));
        }
        for (k, b) in obstacles.iter().enumerate() {
            if b.min.len() != dimension || b.max.len() != dimension {
                return Err(Error::Parameter(format!(
                    "obstacles[{k}]: corner dimension does not match space dimension {dimension}"
                )));
            }
            for i in 0..dimension {
                if !(b.min[i] < b.max[i]) {
                    return Err(Error::Parameter(format!(
                        "obstacles[{k}]: min[{i}]={} not below max[{i}]={}",
                        b.min[i], b.max[i]
                    )));
                }
                if b.min[i] < bounds[i].0 || b.max[i] > bounds[i].1 {
                    return Err(Error::Parameter(format!(
                        "obstacles[{k}]: box leaves bounds on axis {i}"
                    )));
                }
            }
        }
        let inflated = obstacles.iter().map(|b| b.inflated(clearance)).collect();
        Ok(Environment { dimension, bounds, clearance, obstacles, inflated })
    }

    /// Empty environment spanning `[lo, hi]` on every axis.
    pub fn empty(dimension: usize, lo: f64, hi: f64) -> Self {
        Environment::new(dimension, vec![(lo, hi); dimension], Vec::new(), 0.0)
            .expect("valid empty environment")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn clearance(&self) -> f64 {
        self.clearance
    }

    pub fn obstacles(&self) -> &[AxisBox] {
        &self.obstacles
    }

    /// Obstacles grown by the clearance; the geometry actually checked.
    pub fn inflated_obstacles(&self) -> &[AxisBox] {
        &self.inflated
    }

    pub fn in_bounds(&self, q: &Configuration) -> bool {
        q.dim() == self.dimension
            && q.coords()
                .iter()
                .zip(&self.bounds)
                .all(|(c, (lo, hi))| *lo <= *c && *c <= *hi)
    }

    /// True iff `q` is in bounds and outside every clearance-inflated obstacle.
    ///
    /// Out-of-bounds configurations are invalid, not an error.
    pub fn is_valid(&self, q: &Configuration) -> bool {
        self.in_bounds(q) && !self.inflated.iter().any(|b| b.contains(q))
    }

    pub fn to_json(&self) -> String {
        let file = EnvironmentFile {
            dimension: self.dimension,
            bounds: self.bounds.iter().map(|&(lo, hi)| [lo, hi]).collect(),
            clearance: self.clearance,
            obstacles: self.obstacles.clone(),
        };
        serde_json::to_string_pretty(&file).expect("environment serializes")
    }

    /// Parses and validates the JSON schema
    /// `{"dimension", "bounds", "clearance", "obstacles"}`; syntax and type
    /// violations are reported with serde_json's line/column labels.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: EnvironmentFile = serde_json::from_str(text)?;
        Environment::new(
            file.dimension,
            file.bounds.iter().map(|b| (b[0], b[1])).collect(),
            file.obstacles,
            file.clearance,
        )
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        Environment::from_json(&text)
    }
}

/// Discretized straight-line motion checker.
#[derive(Debug, Clone, Copy)]
pub struct MotionValidator {
    resolution: f64,
}

impl MotionValidator {
    /// Default interpolation step: a tenth of the canonical 1-unit clearance.
    pub const DEFAULT_RESOLUTION: f64 = 0.1;

    pub fn new(resolution: f64) -> Result<Self> {
        if !(resolution > 0.0) {
            return Err(Error::Parameter(format!(
                "motion resolution {resolution} must be positive"
            )));
        }
        Ok(MotionValidator { resolution })
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// True iff every interpolated state at spacing at most `resolution`
    /// along the segment `a`-`b` (endpoints included) is valid.
    ///
    /// Interpolation always runs from the lexicographically smaller endpoint
    /// so the check is exactly symmetric in its arguments.
    pub fn check_motion(&self, a: &Configuration, b: &Configuration, env: &Environment) -> bool {
        if !env.is_valid(a) || !env.is_valid(b) {
            return false;
        }
        let (a, b) = if a.coords() <= b.coords() { (a, b) } else { (b, a) };
        let len = Metric::L2.distance(a, b);
        if len == 0.0 {
            return true;
        }
        let steps = (len / self.resolution).ceil() as usize;
        for k in 1..steps {
            let t = k as f64 / steps as f64;
            if !env.is_valid(&a.interpolate(b, t)) {
                return false;
            }
        }
        true
    }
}

impl Default for MotionValidator {
    fn default() -> Self {
        MotionValidator { resolution: Self::DEFAULT_RESOLUTION }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(coords: &[f64]) -> Configuration {
        Configuration::from(coords)
    }

    fn box2(min: [f64; 2], max: [f64; 2]) -> AxisBox {
        AxisBox::new(min.to_vec(), max.to_vec())
    }

    #[test]
    fn l1_distance_basics() {
        assert_eq!(Metric::L1.distance(&cfg(&[0.0, 0.0]), &cfg(&[1.0, 1.0])), 2.0);
        assert_eq!(Metric::L1.distance(&cfg(&[0.0, 0.0]), &cfg(&[0.0, 0.0])), 0.0);
    }

    #[test]
    fn l2_distance_unit_cube_diagonal() {
        let d = Metric::L2.distance(&cfg(&[0.0, 0.0, 0.0]), &cfg(&[1.0, 1.0, 1.0]));
        assert!((d - 3.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn validity_with_inflated_obstacle() {
        let env = Environment::new(
            2,
            vec![(0.0, 10.0), (0.0, 10.0)],
            vec![box2([4.0, 4.0], [6.0, 6.0])],
            1.0,
        )
        .unwrap();
        // inflated box is [(3,3),(7,7)]
        assert!(!env.is_valid(&cfg(&[5.0, 5.0])));
        assert!(!env.is_valid(&cfg(&[3.5, 5.0])));
        assert!(env.is_valid(&cfg(&[2.9, 5.0])));
        assert!(!env.is_valid(&cfg(&[-1.0, 5.0]))); // out of bounds
    }

    #[test]
    fn empty_env_everything_valid() {
        let env = Environment::empty(2, 0.0, 10.0);
        assert!(env.is_valid(&cfg(&[0.0, 0.0])));
        assert!(env.is_valid(&cfg(&[10.0, 10.0])));
    }

    #[test]
    fn motion_pierces_box() {
        let env = Environment::new(
            2,
            vec![(0.0, 10.0), (0.0, 10.0)],
            vec![box2([4.0, 4.0], [6.0, 6.0])],
            0.0,
        )
        .unwrap();
        let v = MotionValidator::default();
        assert!(!v.check_motion(&cfg(&[0.0, 5.0]), &cfg(&[10.0, 5.0]), &env));
    }

    #[test]
    fn motion_clears_inflated_box() {
        let env = Environment::new(
            2,
            vec![(0.0, 10.0), (0.0, 10.0)],
            vec![box2([4.0, 4.0], [6.0, 6.0])],
            1.0,
        )
        .unwrap();
        let v = MotionValidator::default();
        // inflated box [(3,3),(7,7)] does not reach the x=0 line
        assert!(v.check_motion(&cfg(&[0.0, 0.0]), &cfg(&[0.0, 10.0]), &env));
        let empty = Environment::empty(2, 0.0, 10.0);
        assert!(v.check_motion(&cfg(&[0.0, 0.0]), &cfg(&[10.0, 10.0]), &empty));
    }

    #[test]
    fn motion_monotone_in_clearance() {
        let obstacle = box2([4.0, 4.0], [6.0, 6.0]);
        let v = MotionValidator::default();
        let a = cfg(&[0.0, 1.0]);
        let b = cfg(&[10.0, 1.0]);
        // valid at clearance c implies valid at any smaller clearance
        let clearances = [3.5, 3.0, 2.0, 1.0, 0.5, 0.0];
        let results: Vec<bool> = clearances
            .iter()
            .map(|&c| {
                let env = Environment::new(
                    2,
                    vec![(0.0, 10.0), (0.0, 10.0)],
                    vec![obstacle.clone()],
                    c,
                )
                .unwrap();
                v.check_motion(&a, &b, &env)
            })
            .collect();
        for w in results.windows(2) {
            assert!(!w[0] || w[1], "validity must be monotone as clearance shrinks");
        }
        assert!(!results[0] && *results.last().unwrap());
    }

    #[test]
    fn env_json_round_trip_and_schema_errors() {
        let env = Environment::new(
            2,
            vec![(0.0, 50.0), (0.0, 50.0)],
            vec![box2([4.0, 4.0], [6.0, 6.0])],
            1.0,
        )
        .unwrap();
        let text = env.to_json();
        let back = Environment::from_json(&text).unwrap();
        assert_eq!(back.dimension(), 2);
        assert_eq!(back.obstacles().len(), 1);
        assert_eq!(back.clearance(), 1.0);

        let err = Environment::from_json("{\"dimension\": 2}").unwrap_err();
        assert!(err.to_string().contains("line"), "serde error should carry position: {err}");

        // obstacle outside bounds
        let bad = r#"{"dimension":2,"bounds":[[0,10],[0,10]],"clearance":0,
                      "obstacles":[{"min":[8,8],"max":[12,9]}]}"#;
        assert!(Environment::from_json(bad).is_err());
    }

    #[test]
    fn l1_point_segment_distance_breakpoints() {
        let m = Metric::L1;
        let a = cfg(&[0.0, 0.0]);
        let b = cfg(&[10.0, 0.0]);
        assert!((m.point_segment_distance(&cfg(&[5.0, 2.0]), &a, &b) - 2.0).abs() < 1e-12);
        assert!((m.point_segment_distance(&cfg(&[-3.0, 0.0]), &a, &b) - 3.0).abs() < 1e-12);
        // diagonal segment: minimum sits at a coordinate crossing
        let c = cfg(&[0.0, 10.0]);
        let d = m.point_segment_distance(&cfg(&[4.0, 4.0]), &a, &c);
        assert!((d - 4.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn metric_axioms(
            a in proptest::collection::vec(-50.0..50.0f64, 3),
            b in proptest::collection::vec(-50.0..50.0f64, 3),
            c in proptest::collection::vec(-50.0..50.0f64, 3),
        ) {
            for m in [Metric::L1, Metric::L2] {
                let (qa, qb, qc) = (cfg(&a), cfg(&b), cfg(&c));
                let dab = m.distance(&qa, &qb);
                prop_assert!(dab >= 0.0);
                prop_assert!((dab - m.distance(&qb, &qa)).abs() < 1e-9);
                prop_assert!(dab <= m.distance(&qa, &qc) + m.distance(&qc, &qb) + 1e-9);
                if a == b {
                    prop_assert_eq!(dab, 0.0);
                }
            }
            // L1 dominates L2
            prop_assert!(
                Metric::L1.distance(&cfg(&a), &cfg(&b))
                    >= Metric::L2.distance(&cfg(&a), &cfg(&b)) - 1e-12
            );
        }

        #[test]
        fn motion_check_symmetric(
            ax in 0.0..10.0f64, ay in 0.0..10.0f64,
            bx in 0.0..10.0f64, by in 0.0..10.0f64,
        ) {
            let env = Environment::new(
                2,
                vec![(0.0, 10.0), (0.0, 10.0)],
                vec![AxisBox::new(vec![4.0, 4.0], vec![6.0, 6.0])],
                0.5,
            ).unwrap();
            let v = MotionValidator::default();
            let a = cfg(&[ax, ay]);
            let b = cfg(&[bx, by]);
            prop_assert_eq!(v.check_motion(&a, &b, &env), v.check_motion(&b, &a, &env));
        }
    }
}
