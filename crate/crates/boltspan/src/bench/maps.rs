//! Procedurally generated benchmark environments.
//!
//! Five maps per dimension at the canonical 50-unit scale, graded from empty
//! to cluttered: obstacle counts {0, 4, 8, 14, 22} with minimum corridor
//! widths {-, 8, 6, 4, 3}. Each narrower map also carries more deliberately
//! constructed corridor pairs, so the narrow-passage count strictly rises
//! with the map index. 3D maps extrude the same box layout through the full
//! third axis. Fixed seeds plus validity retries make the suite a pure
//! function of its constants.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cspace::{AxisBox, Configuration, Environment};
use crate::error::{Error, Result};

pub const MAP_SCALE: f64 = 50.0;
pub const MAP_CLEARANCE: f64 = 1.0;
pub const MAP_COUNT: usize = 5;

/// Obstacle counts per map index.
const OBSTACLES: [usize; MAP_COUNT] = [0, 4, 8, 14, 22];
/// Minimum passage width between inflated obstacles (map 1 unused).
const CORRIDOR_WIDTH: [f64; MAP_COUNT] = [f64::INFINITY, 8.0, 6.0, 4.0, 3.0];
/// Deliberate corridor pairs per map.
const CORRIDOR_PAIRS: [usize; MAP_COUNT] = [0, 1, 2, 3, 4];
/// Raw box edge length ranges per map.
const SIZE_RANGE: [(f64, f64); MAP_COUNT] = [(0.0, 0.0), (4.0, 9.0), (3.0, 8.0), (2.5, 6.0), (2.0, 4.5)];
/// Two inflated obstacles closer than this form a narrow passage.
const NARROW_THRESHOLD: f64 = 8.0 + 1e-9;
/// Free band kept between inflated obstacles and the boundary.
const WALL_MARGIN: f64 = 2.0;

const SUITE_SEED: u64 = 0x0b17_5eed_0001;

/// Pairs of inflated obstacles separated by a positive gap of at most the
/// narrow-passage threshold.
pub fn narrow_passage_count(env: &Environment) -> usize {
    let inflated = env.inflated_obstacles();
    let mut count = 0;
    for i in 0..inflated.len() {
        for j in (i + 1)..inflated.len() {
            let gap = inflated[i].gap(&inflated[j]);
            if gap > 0.0 && gap <= NARROW_THRESHOLD {
                count += 1;
            }
        }
    }
    count
}

/// Flood fill over a fine grid: true iff every valid cell is reachable from
/// every other.
pub fn free_space_connected(env: &Environment, resolution: f64) -> bool {
    let d = env.dimension();
    let counts: Vec<usize> = env
        .bounds()
        .iter()
        .map(|&(lo, hi)| ((hi - lo) / resolution + 1e-9).floor() as usize + 1)
        .collect();
    let total: usize = counts.iter().product();
    let cfg_of = |flat: usize| {
        let mut f = flat;
        let mut coords = vec![0.0; d];
        for a in (0..d).rev() {
            coords[a] = env.bounds()[a].0 + resolution * (f % counts[a]) as f64;
            f /= counts[a];
        }
        Configuration::new(coords)
    };
    let valid: Vec<bool> = (0..total).map(|f| env.is_valid(&cfg_of(f))).collect();
    let Some(first) = valid.iter().position(|&v| v) else {
        return false;
    };
    let mut seen = vec![false; total];
    let mut stack = vec![first];
    seen[first] = true;
    // strides for axis neighbors
    let mut stride = vec![1usize; d];
    for a in (0..d.saturating_sub(1)).rev() {
        stride[a] = stride[a + 1] * counts[a + 1];
    }
    while let Some(u) = stack.pop() {
        for a in 0..d {
            let pos = (u / stride[a]) % counts[a];
            if pos > 0 {
                let v = u - stride[a];
                if valid[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
            if pos + 1 < counts[a] {
                let v = u + stride[a];
                if valid[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    valid.iter().zip(&seen).all(|(&v, &s)| !v || s)
}

fn boxes_2d(map_index: usize, attempt: u64) -> Option<Vec<AxisBox>> {
    let n = OBSTACLES[map_index];
    if n == 0 {
        return Some(Vec::new());
    }
    let w = CORRIDOR_WIDTH[map_index];
    let pairs = CORRIDOR_PAIRS[map_index];
    let (smin, smax) = SIZE_RANGE[map_index];
    let mut rng =
        ChaCha8Rng::seed_from_u64(SUITE_SEED ^ (map_index as u64) << 8 ^ attempt << 16);
    // inflated boxes keep a fixed 2-unit band to the walls (any positive
    // band is traversable; clearance already lives in the inflation) and the
    // map's corridor width to each other
    let lo = WALL_MARGIN + MAP_CLEARANCE;
    let hi = MAP_SCALE - WALL_MARGIN - MAP_CLEARANCE;
    let mut boxes: Vec<AxisBox> = Vec::new();
    let fits = |boxes: &[AxisBox], b: &AxisBox, exempt: Option<usize>| {
        let ib = b.inflated(MAP_CLEARANCE);
        boxes.iter().enumerate().all(|(i, other)| {
            if exempt == Some(i) {
                return true;
            }
            other.inflated(MAP_CLEARANCE).gap(&ib) >= w
        })
    };

    for _ in 0..pairs {
        let mut placed = false;
        for _ in 0..200 {
            let axis = rng.gen_range(0..2usize);
            let other = 1 - axis;
            let t1 = rng.gen_range(2.5..5.0);
            let t2 = rng.gen_range(2.5..5.0);
            let len = rng.gen_range(5.0..9.0);
            let raw_gap = w + 2.0 * MAP_CLEARANCE;
            let span = t1 + raw_gap + t2;
            if hi - lo <= span || hi - lo <= len {
                continue;
            }
            let a0 = rng.gen_range(lo..hi - span);
            let o0 = rng.gen_range(lo..hi - len);
            let mk = |amin: f64, amax: f64| {
                let mut min = vec![0.0; 2];
                let mut max = vec![0.0; 2];
                min[axis] = amin;
                max[axis] = amax;
                min[other] = o0;
                max[other] = o0 + len;
                AxisBox::new(min, max)
            };
            let b1 = mk(a0, a0 + t1);
            let b2 = mk(a0 + t1 + raw_gap, a0 + span);
            if fits(&boxes, &b1, None) {
                boxes.push(b1);
                if fits(&boxes, &b2, Some(boxes.len() - 1)) {
                    // pair gap is exactly w by construction
                    boxes.push(b2);
                    placed = true;
                    break;
                }
                boxes.pop();
            }
        }
        if !placed {
            return None;
        }
    }

    while boxes.len() < n {
        let mut placed = false;
        for _ in 0..400 {
            let sx = rng.gen_range(smin..smax);
            let sy = rng.gen_range(smin..smax);
            if hi - lo <= sx || hi - lo <= sy {
                continue;
            }
            let x0 = rng.gen_range(lo..hi - sx);
            let y0 = rng.gen_range(lo..hi - sy);
            let b = AxisBox::new(vec![x0, y0], vec![x0 + sx, y0 + sy]);
            if fits(&boxes, &b, None) {
                boxes.push(b);
                placed = true;
                break;
            }
        }
        if !placed {
            return None;
        }
    }
    Some(boxes)
}

fn environment_for(dimension: usize, boxes_2d: &[AxisBox]) -> Result<Environment> {
    let bounds = vec![(0.0, MAP_SCALE); dimension];
    let obstacles = boxes_2d
        .iter()
        .map(|b| {
            let mut min = b.min.clone();
            let mut max = b.max.clone();
            // extrude through every additional axis
            for _ in 2..dimension {
                min.push(0.0);
                max.push(MAP_SCALE);
            }
            AxisBox::new(min, max)
        })
        .collect();
    Environment::new(dimension, bounds, obstacles, MAP_CLEARANCE)
}

/// The five benchmark environments for one dimension, most open first.
#[derive(Debug, Clone)]
pub struct MapSuite {
    dimension: usize,
    maps: Vec<Environment>,
}

impl MapSuite {
    pub fn generate(dimension: usize) -> Result<MapSuite> {
        if !(2..=3).contains(&dimension) {
            return Err(Error::Parameter(format!(
                "map suite supports dimensions 2 and 3, got {dimension}"
            )));
        }
        let mut maps: Vec<Environment> = Vec::with_capacity(MAP_COUNT);
        let mut narrow_floor = 0usize; // strictly below the next map's count
        for map_index in 0..MAP_COUNT {
            let mut chosen = None;
            for attempt in 0..64u64 {
                let Some(boxes) = boxes_2d(map_index, attempt) else {
                    continue;
                };
                let flat = environment_for(2, &boxes)?;
                if !free_space_connected(&flat, 0.5) {
                    continue;
                }
                let narrow = narrow_passage_count(&flat);
                if map_index > 0 && narrow <= narrow_floor {
                    continue;
                }
                narrow_floor = narrow;
                chosen = Some(environment_for(dimension, &boxes)?);
                break;
            }
            let env = chosen.ok_or_else(|| {
                Error::Parameter(format!("could not generate benchmark map {}", map_index + 1))
            })?;
            maps.push(env);
        }
        Ok(MapSuite { dimension, maps })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Map by 1-based id.
    pub fn map(&self, id: usize) -> Result<&Environment> {
        self.maps
            .get(id.wrapping_sub(1))
            .ok_or_else(|| Error::Input(format!("map id {id} out of range 1..={MAP_COUNT}")))
    }

    pub fn maps(&self) -> &[Environment] {
        &self.maps
    }

    /// Writes every map as environment JSON under `dir/maps-v1/`.
    pub fn save_all(&self, dir: &std::path::Path) -> Result<Vec<std::path::PathBuf>> {
        let versioned = dir.join("maps-v1");
        std::fs::create_dir_all(&versioned)?;
        let mut out = Vec::new();
        for (i, env) in self.maps.iter().enumerate() {
            let path = versioned.join(format!("map{}-{}d.json", i + 1, self.dimension));
            env.save(&path)?;
            out.push(path);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_respects_grading_invariants() {
        let suite = MapSuite::generate(2).unwrap();
        assert_eq!(suite.maps().len(), MAP_COUNT);
        assert_eq!(suite.map(1).unwrap().obstacles().len(), 0);
        let mut last_obstacles = 0;
        let mut last_narrow = 0;
        for (i, env) in suite.maps().iter().enumerate() {
            assert_eq!(env.obstacles().len(), OBSTACLES[i], "map {}", i + 1);
            if i > 0 {
                assert!(env.obstacles().len() > last_obstacles);
                let narrow = narrow_passage_count(env);
                assert!(
                    narrow > last_narrow,
                    "map {}: narrow count {narrow} vs previous {last_narrow}",
                    i + 1
                );
                last_narrow = narrow;
            }
            last_obstacles = env.obstacles().len();
            assert!(free_space_connected(env, 0.5), "map {} disconnected", i + 1);
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let a = MapSuite::generate(2).unwrap();
        let b = MapSuite::generate(2).unwrap();
        for (ea, eb) in a.maps().iter().zip(b.maps()) {
            assert_eq!(ea.obstacles(), eb.obstacles());
        }
    }

    #[test]
    fn extrusion_matches_flat_layout() {
        let flat = MapSuite::generate(2).unwrap();
        let solid = MapSuite::generate(3).unwrap();
        for (e2, e3) in flat.maps().iter().zip(solid.maps()) {
            assert_eq!(e2.obstacles().len(), e3.obstacles().len());
            for (b2, b3) in e2.obstacles().iter().zip(e3.obstacles()) {
                assert_eq!(b2.min[..2], b3.min[..2]);
                assert_eq!(b2.max[..2], b3.max[..2]);
                assert_eq!(b3.min[2], 0.0);
                assert_eq!(b3.max[2], MAP_SCALE);
            }
        }
    }

    #[test]
    fn map_id_bounds() {
        let suite = MapSuite::generate(2).unwrap();
        assert!(suite.map(0).is_err());
        assert!(suite.map(6).is_err());
        assert!(suite.map(5).is_ok());
    }
}
