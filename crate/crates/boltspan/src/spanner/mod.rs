//! Incremental sparse-graph construction.
//!
//! Samples pass through four criteria in order — coverage, connectivity,
//! interface, quality — and the first one that modifies the graph decides the
//! sample's fate. Six graph-size-reducing modifications are independent
//! feature flags; with all of them off the pipeline behaves like the
//! classical sparse-spanner construction it descends from.

mod astar;
mod graph;
mod io;

pub use astar::{graph_astar, path_length, search as search_attached, SearchResult};
pub use graph::{GraphMeta, InterfaceRecord, InterfaceWitness, SparseGraph, VertexId};
pub use io::{
    from_string as roadmap_from_string, load as load_roadmap, save as save_roadmap,
    to_string as roadmap_to_string,
};

use bitflags::bitflags;

use crate::cspace::{Configuration, Environment, Metric, MotionValidator};
use crate::error::{Error, Result};
use crate::sampling::{generate_lattice, lattice_spacing, LatticeSpec, SampleStream};

/// Absolute tolerance for comparing candidate path lengths.
pub const LENGTH_TOLERANCE: f64 = 1e-9;

/// Stand-in stretch factor used when the geometric derivation is disabled
/// (e.g. in ablation runs).
pub const ARBITRARY_STRETCH: f64 = 1.01;

bitflags! {
    /// The six graph-size reductions, plus lattice seeding, as independent
    /// toggles. `Flags::empty()` is the baseline construction.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Flags: u8 {
        /// Seed the graph with a d-cubic lattice before random sampling.
        const LATTICE_SEED = 1;
        /// Derive the stretch factor from the lattice geometry.
        const EXACT_STRETCH = 1 << 1;
        /// Hold the quality criterion back until coverage has stabilized.
        const QUALITY_DELAY = 1 << 2;
        /// Drop edges passing within the visibility radius of a new vertex.
        const CLEAR_NEARBY_EDGES = 1 << 3;
        /// Join components with a direct edge instead of a new vertex.
        const DIRECT_CONNECTIVITY = 1 << 4;
        /// Only add a smoothed quality path if it beats the current best.
        const SMOOTHED_PATH_CHECK = 1 << 5;
        /// Skip quality shortcuts the graph already realizes at equal length.
        const L1_QUALITY_SKIP = 1 << 6;
    }
}

const FLAG_NAMES: &[(Flags, &str)] = &[
    (Flags::LATTICE_SEED, "lattice-seed"),
    (Flags::EXACT_STRETCH, "exact-stretch"),
    (Flags::QUALITY_DELAY, "quality-delay"),
    (Flags::CLEAR_NEARBY_EDGES, "clear-nearby-edges"),
    (Flags::DIRECT_CONNECTIVITY, "direct-connectivity"),
    (Flags::SMOOTHED_PATH_CHECK, "smoothed-path-check"),
    (Flags::L1_QUALITY_SKIP, "l1-quality-skip"),
];

impl Flags {
    pub fn name(self) -> &'static str {
        FLAG_NAMES
            .iter()
            .find(|(f, _)| *f == self)
            .map(|(_, n)| *n)
            .unwrap_or("mixed")
    }

    pub fn parse_one(name: &str) -> Result<Flags> {
        FLAG_NAMES
            .iter()
            .find(|(_, n)| *n == name)
            .map(|(f, _)| *f)
            .ok_or_else(|| {
                let known: Vec<&str> = FLAG_NAMES.iter().map(|(_, n)| *n).collect();
                Error::Input(format!("unknown flag `{name}` (known: {})", known.join(", ")))
            })
    }

    /// Parses `all`, `none`, or a comma-separated flag list.
    pub fn parse_set(spec: &str) -> Result<Flags> {
        match spec {
            "all" => Ok(Flags::all()),
            "none" => Ok(Flags::empty()),
            _ => {
                let mut flags = Flags::empty();
                for part in spec.split(',') {
                    flags |= Flags::parse_one(part.trim())?;
                }
                Ok(flags)
            }
        }
    }
}

/// Minimum stretch factor that keeps the quality criterion from doubling
/// edges over lattice triples: `d*beta / (beta - k*dense_delta)`.
///
/// `k` selects the denominator variant; 4 reproduces the reference parameter
/// table, 2 is the looser published form. Both are kept selectable.
pub fn compute_stretch(d: usize, beta: f64, dense_delta: f64, k: u32) -> Result<f64> {
    if d == 0 {
        return Err(Error::Parameter("dimension must be at least 1".into()));
    }
    if k != 2 && k != 4 {
        return Err(Error::Parameter(format!("stretch denominator k must be 2 or 4, got {k}")));
    }
    if !(dense_delta >= 0.0) {
        return Err(Error::Parameter("dense_delta must be non-negative".into()));
    }
    let denom = beta - k as f64 * dense_delta;
    if !(denom > 0.0) {
        return Err(Error::Parameter(format!(
            "beta {beta} must exceed k*dense_delta = {}",
            k as f64 * dense_delta
        )));
    }
    Ok(d as f64 * beta / denom)
}

/// Everything governing one construction run.
#[derive(Debug, Clone)]
pub struct BuildParams {
    /// Visibility (coverage) radius.
    pub delta: f64,
    /// Interface support radius.
    pub dense_delta: f64,
    /// Path-quality stretch factor, at least 1.
    pub stretch: f64,
    /// Visibility-region overlap of neighboring lattice vertices.
    pub psi: f64,
    /// Lattice spacing; derived from `delta`, `psi`, and the metric.
    pub beta: f64,
    pub metric: Metric,
    pub dimension: usize,
    /// Consecutive failed samples before construction terminates.
    pub termination_failures: u64,
    /// Consecutive failures before the quality criterion switches on.
    pub quality_delay_failures: u64,
    /// Denominator variant for the stretch derivation (2 or 4).
    pub stretch_denominator_k: u32,
    pub flags: Flags,
    /// Interpolation step for motion checks.
    pub motion_resolution: f64,
}

impl BuildParams {
    /// Parameters derived from the visibility radius alone, with every flag
    /// on: `dense_delta = delta/10`, `psi = 0.01`, spacing and stretch from
    /// their formulas, and the conservative full-coverage termination counts.
    pub fn new(dimension: usize, metric: Metric, delta: f64) -> Result<Self> {
        let dense_delta = delta / 10.0;
        let psi = 0.01;
        let beta = lattice_spacing(delta, dimension, psi, metric)?;
        let stretch = compute_stretch(dimension, beta, dense_delta, 4)?;
        let params = BuildParams {
            delta,
            dense_delta,
            stretch,
            psi,
            beta,
            metric,
            dimension,
            termination_failures: 15_000,
            quality_delay_failures: 5_000,
            stretch_denominator_k: 4,
            flags: Flags::all(),
            motion_resolution: MotionValidator::DEFAULT_RESOLUTION,
        };
        params.validate()?;
        Ok(params)
    }

    /// Recomputes `beta` and `stretch` after a field or flag change. When
    /// [`Flags::EXACT_STRETCH`] is off the stretch falls back to
    /// [`ARBITRARY_STRETCH`].
    pub fn rederive(&mut self) -> Result<()> {
        self.beta = lattice_spacing(self.delta, self.dimension, self.psi, self.metric)?;
        self.stretch = if self.flags.contains(Flags::EXACT_STRETCH) {
            compute_stretch(self.dimension, self.beta, self.dense_delta, self.stretch_denominator_k)?
        } else {
            ARBITRARY_STRETCH
        };
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::Parameter("dimension must be at least 1".into()));
        }
        if !(self.delta > 0.0) {
            return Err(Error::Parameter(format!("delta {} must be positive", self.delta)));
        }
        if !(self.dense_delta > 0.0 && self.dense_delta < self.delta) {
            return Err(Error::Parameter(format!(
                "dense_delta {} must lie in (0, delta)",
                self.dense_delta
            )));
        }
        if !(self.stretch >= 1.0) {
            return Err(Error::Parameter(format!("stretch {} must be at least 1", self.stretch)));
        }
        if !(self.beta > 0.0) {
            return Err(Error::Parameter(format!("beta {} must be positive", self.beta)));
        }
        if self.termination_failures < self.quality_delay_failures {
            return Err(Error::Parameter(format!(
                "termination_failures {} must be at least quality_delay_failures {}",
                self.termination_failures, self.quality_delay_failures
            )));
        }
        if self.stretch_denominator_k != 2 && self.stretch_denominator_k != 4 {
            return Err(Error::Parameter("stretch denominator k must be 2 or 4".into()));
        }
        if !(self.motion_resolution > 0.0 && self.motion_resolution < self.delta / 4.0) {
            return Err(Error::Parameter(format!(
                "motion resolution {} must lie in (0, delta/4)",
                self.motion_resolution
            )));
        }
        if self.flags.contains(Flags::LATTICE_SEED | Flags::EXACT_STRETCH) {
            let expect = lattice_spacing(self.delta, self.dimension, self.psi, self.metric)?;
            if (self.beta - expect).abs() > LENGTH_TOLERANCE {
                return Err(Error::Parameter(format!(
                    "beta {} inconsistent with spacing formula value {expect}",
                    self.beta
                )));
            }
        }
        Ok(())
    }

    pub fn meta(&self) -> GraphMeta {
        GraphMeta {
            dimension: self.dimension,
            metric: self.metric,
            delta: self.delta,
            dense_delta: self.dense_delta,
            stretch: self.stretch,
        }
    }
}

/// How a sample changed the graph, and which criterion did it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionKind {
    AddedVertex,
    AddedEdge,
    AddedBoth,
    Rejected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionReason {
    Coverage,
    Connectivity,
    Interface,
    Quality,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub kind: CriterionKind,
    pub reason: CriterionReason,
}

impl CriterionOutcome {
    pub fn rejected() -> Self {
        CriterionOutcome { kind: CriterionKind::Rejected, reason: CriterionReason::None }
    }

    fn new(kind: CriterionKind, reason: CriterionReason) -> Self {
        debug_assert_ne!(kind, CriterionKind::Rejected);
        CriterionOutcome { kind, reason }
    }

    pub fn added_anything(&self) -> bool {
        self.kind != CriterionKind::Rejected
    }
}

/// The criteria pipeline bound to one environment and parameter set.
pub struct Criteria<'a> {
    env: &'a Environment,
    params: &'a BuildParams,
    validator: MotionValidator,
}

impl<'a> Criteria<'a> {
    pub fn new(env: &'a Environment, params: &'a BuildParams) -> Result<Self> {
        params.validate()?;
        if env.dimension() != params.dimension {
            return Err(Error::Parameter(format!(
                "environment dimension {} does not match params dimension {}",
                env.dimension(),
                params.dimension
            )));
        }
        Ok(Criteria { env, params, validator: MotionValidator::new(params.motion_resolution)? })
    }

    pub fn validator(&self) -> &MotionValidator {
        &self.validator
    }

    fn motion(&self, a: &Configuration, b: &Configuration) -> bool {
        self.validator.check_motion(a, b, self.env)
    }

    fn distance(&self, a: &Configuration, b: &Configuration) -> f64 {
        self.params.metric.distance(a, b)
    }

    /// First `want` visible vertices in distance order, stopping early.
    fn nearest_visible(
        &self,
        g: &SparseGraph,
        q: &Configuration,
        want: usize,
    ) -> Vec<(VertexId, f64)> {
        let mut out = Vec::with_capacity(want);
        for (v, d) in g.within_radius(q, self.params.delta) {
            if self.motion(q, g.vertex(v)) {
                out.push((v, d));
                if out.len() == want {
                    break;
                }
            }
        }
        out
    }

    /// Runs the full pipeline; the first criterion that modifies the graph
    /// determines the outcome. `tick` timestamps interface bookkeeping.
    pub fn insert_sample(
        &self,
        g: &mut SparseGraph,
        q: &Configuration,
        quality_enabled: bool,
        tick: u64,
    ) -> CriterionOutcome {
        let out = self.check_coverage(g, q);
        if out.added_anything() {
            return out;
        }
        let out = self.check_connectivity(g, q);
        if out.added_anything() {
            return out;
        }
        let out = self.check_interface(g, q, tick);
        if out.added_anything() {
            return out;
        }
        if quality_enabled {
            let out = self.check_quality(g, q);
            if out.added_anything() {
                return out;
            }
        }
        CriterionOutcome::rejected()
    }

    /// Adds `q` as a vertex iff no existing vertex both lies within the
    /// visibility radius and is reachable by a valid straight-line motion.
    pub fn check_coverage(&self, g: &mut SparseGraph, q: &Configuration) -> CriterionOutcome {
        debug_assert!(self.env.is_valid(q));
        if self.nearest_visible(g, q, 1).is_empty() {
            let v = g.add_vertex(q.clone());
            self.post_add(g, &[v]);
            CriterionOutcome::new(CriterionKind::AddedVertex, CriterionReason::Coverage)
        } else {
            CriterionOutcome::rejected()
        }
    }

    /// Links components visible from `q`. With
    /// [`Flags::DIRECT_CONNECTIVITY`] a direct edge between visible
    /// cross-component vertices is preferred over adding `q`; such edges are
    /// at most `2*delta` long because both endpoints see `q` within `delta`.
    pub fn check_connectivity(&self, g: &mut SparseGraph, q: &Configuration) -> CriterionOutcome {
        // cheap pre-filter: visibility only matters if the in-range vertices
        // already span several components
        let in_range = g.within_radius(q, self.params.delta);
        {
            let mut it = in_range.iter().map(|&(v, _)| g.component_of(v));
            let first = it.next();
            if first.map_or(true, |f| it.all(|c| c == f)) {
                return CriterionOutcome::rejected();
            }
        }
        let visible: Vec<(VertexId, f64)> = in_range
            .into_iter()
            .filter(|&(v, _)| self.motion(q, g.vertex(v)))
            .collect();
        // vertices participating in at least one cross-component pair
        let mut linked: Vec<VertexId> = Vec::new();
        for i in 0..visible.len() {
            for j in (i + 1)..visible.len() {
                if g.component_of(visible[i].0) != g.component_of(visible[j].0) {
                    linked.push(visible[i].0);
                    linked.push(visible[j].0);
                }
            }
        }
        if linked.is_empty() {
            return CriterionOutcome::rejected();
        }
        linked.sort_unstable();
        linked.dedup();

        if self.params.flags.contains(Flags::DIRECT_CONNECTIVITY) {
            let mut added = false;
            let mut ids: Vec<VertexId> = visible.iter().map(|&(v, _)| v).collect();
            ids.sort_unstable();
            for i in 0..ids.len() {
                for j in (i + 1)..ids.len() {
                    let (a, b) = (ids[i], ids[j]);
                    if g.same_component(a, b) || g.has_edge(a, b) {
                        continue;
                    }
                    if self.motion(g.vertex(a), g.vertex(b)) {
                        debug_assert!(
                            self.distance(g.vertex(a), g.vertex(b))
                                <= 2.0 * self.params.delta + LENGTH_TOLERANCE
                        );
                        g.add_edge(a, b);
                        added = true;
                    }
                }
            }
            if added {
                return CriterionOutcome::new(CriterionKind::AddedEdge, CriterionReason::Connectivity);
            }
        }
        // no pair could be joined directly (or the flag is off): add q with
        // an edge to every cross-component participant
        let v = g.add_vertex(q.clone());
        for w in linked {
            g.add_edge(v, w);
        }
        self.post_add(g, &[v]);
        CriterionOutcome::new(CriterionKind::AddedBoth, CriterionReason::Connectivity)
    }

    /// Handles interface witnesses: a sample whose two nearest visible
    /// vertices are nearly equidistant sits on their shared visibility
    /// boundary. A visible pair gets a direct edge; a blocked pair collects
    /// witnesses and is bridged once two of them fall within the support
    /// radius of each other.
    pub fn check_interface(
        &self,
        g: &mut SparseGraph,
        q: &Configuration,
        tick: u64,
    ) -> CriterionOutcome {
        let near = self.nearest_visible(g, q, 2);
        if near.len() < 2 {
            return CriterionOutcome::rejected();
        }
        let ((v1, d1), (v2, d2)) = (near[0], near[1]);
        if d2 - d1 > self.params.dense_delta {
            return CriterionOutcome::rejected();
        }
        let mut outcome = CriterionOutcome::rejected();
        if !g.has_edge(v1, v2) {
            if self.motion(g.vertex(v1), g.vertex(v2)) {
                g.add_edge(v1, v2);
                outcome = CriterionOutcome::new(CriterionKind::AddedEdge, CriterionReason::Interface);
            } else if let Some(w) = self.close_stored_witness(g, v1, v2, q) {
                // second blocked witness within the support radius: bridge
                // the interface through both witness configurations
                let q_id = g.add_vertex(q.clone());
                let w_id = g.add_vertex(w.config.clone());
                g.add_edge(q_id, v1);
                if self.motion(g.vertex(w_id), g.vertex(w.rep)) {
                    g.add_edge(w_id, w.rep);
                }
                if self.motion(g.vertex(q_id), g.vertex(w_id)) {
                    g.add_edge(q_id, w_id);
                }
                g.clear_interface_record(v1, v2);
                self.post_add(g, &[q_id, w_id]);
                return CriterionOutcome::new(CriterionKind::AddedBoth, CriterionReason::Interface);
            }
        }
        // refresh the support witness on q's side of the pair
        let side = if v1 < v2 { 0 } else { 1 };
        let rec = g.interface_record_mut(v1, v2);
        rec.sides[side] = Some(InterfaceWitness {
            config: q.clone(),
            rep: v1,
            dist_to_rep: d1,
            recorded_at: tick,
        });
        rec.last_updated = tick;
        outcome
    }

    fn close_stored_witness(
        &self,
        g: &SparseGraph,
        v1: VertexId,
        v2: VertexId,
        q: &Configuration,
    ) -> Option<InterfaceWitness> {
        let rec = g.interface_record(v1, v2)?;
        let mut best: Option<(f64, &InterfaceWitness)> = None;
        for w in rec.sides.iter().flatten() {
            let d = self.distance(q, &w.config);
            if d <= self.params.dense_delta && best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                best = Some((d, w));
            }
        }
        best.map(|(_, w)| w.clone())
    }

    /// The quality criterion: for the sample's representative `v` and every
    /// pair of `v`'s graph neighbors with interface support through `v`,
    /// tests whether the two-segment midpoint path is more than `stretch`
    /// times the straight support-to-support distance, and if so tries to
    /// shortcut the pair.
    pub fn check_quality(&self, g: &mut SparseGraph, q: &Configuration) -> CriterionOutcome {
        let Some(&(rep, _)) = self.nearest_visible(g, q, 1).first() else {
            return CriterionOutcome::rejected();
        };
        let rep_cfg = g.vertex(rep).clone();
        let neighbors: Vec<VertexId> = g.neighbors(rep).map(|(v, _)| v).collect();
        for i in 0..neighbors.len() {
            for j in (i + 1)..neighbors.len() {
                let (va, vb) = (neighbors[i], neighbors[j]);
                let (Some(sup_a), Some(sup_b)) =
                    (g.support_toward(rep, va), g.support_toward(rep, vb))
                else {
                    continue;
                };
                let midpoint_path = self.distance(&sup_b.config, &rep_cfg)
                    + self.distance(&rep_cfg, &sup_a.config);
                let support_path = self.distance(&sup_a.config, &sup_b.config);
                if self.params.stretch * support_path < midpoint_path {
                    let (rho_a, rho_b) = (sup_a.config.clone(), sup_b.config.clone());
                    if let Some(out) = self.attempt_shortcut(g, rep, va, vb, rho_a, rho_b) {
                        return out;
                    }
                }
            }
        }
        CriterionOutcome::rejected()
    }

    /// Tries to realize a shortcut between two neighbors of `rep`.
    /// Returns `None` when nothing was added and the scan should continue.
    fn attempt_shortcut(
        &self,
        g: &mut SparseGraph,
        rep: VertexId,
        va: VertexId,
        vb: VertexId,
        rho_a: Configuration,
        rho_b: Configuration,
    ) -> Option<CriterionOutcome> {
        if g.has_edge(va, vb) {
            return None;
        }
        let candidate_len = self.distance(g.vertex(va), g.vertex(vb));
        if self.params.flags.contains(Flags::L1_QUALITY_SKIP) {
            if let Some(found) = graph_astar(g, va, vb) {
                if found.length <= candidate_len + LENGTH_TOLERANCE {
                    // the graph already realizes this interface at equal (or
                    // better) length; the edge would be redundant
                    debug_assert!(found.length <= candidate_len + LENGTH_TOLERANCE);
                    return None;
                }
            }
        }
        if self.motion(g.vertex(va), g.vertex(vb)) {
            g.add_edge(va, vb);
            return Some(CriterionOutcome::new(CriterionKind::AddedEdge, CriterionReason::Quality));
        }
        // direct edge blocked: build the support-point path va - rho_a - rep
        // - rho_b - vb, shortcut it, and materialize what survives
        let mut chain: Vec<(Option<VertexId>, Configuration)> = vec![
            (Some(va), g.vertex(va).clone()),
            (None, rho_a),
            (Some(rep), g.vertex(rep).clone()),
            (None, rho_b),
            (Some(vb), g.vertex(vb).clone()),
        ];
        chain.dedup_by(|a, b| a.1 == b.1);
        for w in chain.windows(2) {
            if !self.motion(&w[0].1, &w[1].1) {
                return None;
            }
        }
        self.shortcut_chain(&mut chain);
        if self.params.flags.contains(Flags::SMOOTHED_PATH_CHECK) {
            let smoothed: f64 =
                chain.windows(2).map(|w| self.distance(&w[0].1, &w[1].1)).sum();
            let current = graph_astar(g, va, vb).map(|r| r.length).unwrap_or(f64::INFINITY);
            if !(smoothed < current - LENGTH_TOLERANCE) {
                return None;
            }
        }
        let mut new_vertices = Vec::new();
        let ids: Vec<VertexId> = chain
            .iter()
            .map(|(id, cfg)| {
                id.unwrap_or_else(|| {
                    let v = g.add_vertex(cfg.clone());
                    new_vertices.push(v);
                    v
                })
            })
            .collect();
        let mut new_edges = 0;
        for w in ids.windows(2) {
            if w[0] != w[1] && g.add_edge(w[0], w[1]) {
                new_edges += 1;
            }
        }
        if new_vertices.is_empty() && new_edges == 0 {
            return None;
        }
        self.post_add(g, &new_vertices);
        let kind = if new_vertices.is_empty() { CriterionKind::AddedEdge } else { CriterionKind::AddedBoth };
        Some(CriterionOutcome::new(kind, CriterionReason::Quality))
    }

    /// Deterministic shortcutting sweep over a candidate chain: outermost
    /// pairs first, keep a cut only when it strictly shortens the chain.
    fn shortcut_chain(&self, chain: &mut Vec<(Option<VertexId>, Configuration)>) {
        loop {
            let n = chain.len();
            let mut improved = false;
            'sweep: for i in 0..n.saturating_sub(2) {
                for j in ((i + 2)..n).rev() {
                    let through: f64 = chain[i..=j]
                        .windows(2)
                        .map(|w| self.distance(&w[0].1, &w[1].1))
                        .sum();
                    let direct = self.distance(&chain[i].1, &chain[j].1);
                    if direct < through - LENGTH_TOLERANCE && self.motion(&chain[i].1, &chain[j].1)
                    {
                        chain.drain(i + 1..j);
                        improved = true;
                        break 'sweep;
                    }
                }
            }
            if !improved {
                return;
            }
        }
    }

    /// Removes every edge whose segment passes within the visibility radius
    /// of the freshly added vertex (excluding the vertex's own edges), then
    /// rebuilds the component index. Returns the number of edges removed.
    pub fn clear_nearby_edges(&self, g: &mut SparseGraph, v_new: VertexId) -> usize {
        let removed = self.clear_near(g, v_new, &[v_new]);
        if removed > 0 {
            g.rebuild_components();
        }
        removed
    }

    fn clear_near(&self, g: &mut SparseGraph, v_new: VertexId, exclude: &[VertexId]) -> usize {
        let p = g.vertex(v_new).clone();
        let metric = self.params.metric;
        let doomed: Vec<(VertexId, VertexId)> = g
            .edges()
            .filter(|(a, b, _)| !exclude.contains(a) && !exclude.contains(b))
            .filter(|(a, b, _)| {
                metric.point_segment_distance(&p, g.vertex(*a), g.vertex(*b))
                    <= self.params.delta
            })
            .map(|(a, b, _)| (a, b))
            .collect();
        for &(a, b) in &doomed {
            g.remove_edge(a, b);
        }
        doomed.len()
    }

    /// Post-step after any vertex addition: edge clearing when enabled.
    /// Edges incident to vertices added by the same operation are kept;
    /// they were created with the new vertices already in place.
    fn post_add(&self, g: &mut SparseGraph, new_vertices: &[VertexId]) {
        if !self.params.flags.contains(Flags::CLEAR_NEARBY_EDGES) || new_vertices.is_empty() {
            return;
        }
        let mut removed = 0;
        for &v in new_vertices {
            removed += self.clear_near(g, v, new_vertices);
        }
        if removed > 0 {
            g.rebuild_components();
        }
    }
}

/// Seeds the graph with every valid lattice state plus the valid straight
/// edges between axis neighbors: the discrete-graph half of the hybrid.
fn seed_lattice(g: &mut SparseGraph, criteria: &Criteria<'_>, env: &Environment, params: &BuildParams) {
    let spec = LatticeSpec::anchored(params.beta, params.dimension);
    let counts = spec.counts(env);
    let points = generate_lattice(env, &spec);
    let ids: Vec<Option<VertexId>> = points
        .into_iter()
        .map(|p| if env.is_valid(&p) { Some(g.add_vertex(p)) } else { None })
        .collect();
    // stride of each axis in the lexicographic ordering (last axis fastest)
    let d = params.dimension;
    let mut stride = vec![1usize; d];
    for a in (0..d.saturating_sub(1)).rev() {
        stride[a] = stride[a + 1] * counts[a + 1];
    }
    let total: usize = counts.iter().product();
    for i in 0..total {
        let Some(v) = ids[i] else { continue };
        for a in 0..d {
            let pos = (i / stride[a]) % counts[a];
            if pos + 1 >= counts[a] {
                continue;
            }
            let j = i + stride[a];
            let Some(w) = ids[j] else { continue };
            if criteria.motion(g.vertex(v), g.vertex(w)) {
                g.add_edge(v, w);
            }
        }
    }
}

/// Builds a sparse roadmap: optional lattice seeding, then random sampling
/// through the criteria pipeline until `termination_failures` consecutive
/// samples change nothing.
pub fn build(
    env: &Environment,
    params: &BuildParams,
    stream: &mut SampleStream,
) -> Result<SparseGraph> {
    let criteria = Criteria::new(env, params)?;
    let mut g = SparseGraph::new(params.meta());
    if params.flags.contains(Flags::LATTICE_SEED) {
        seed_lattice(&mut g, &criteria, env, params);
    }
    let mut quality_on = !params.flags.contains(Flags::QUALITY_DELAY);
    let mut inserts: u64 = 0;
    while stream.consecutive_failures() < params.termination_failures {
        if !quality_on && stream.consecutive_failures() >= params.quality_delay_failures {
            quality_on = true;
        }
        let q = draw_valid(stream, env)?;
        let outcome = criteria.insert_sample(&mut g, &q, quality_on, stream.total_samples());
        stream.record_outcome(outcome.added_anything());
        inserts += 1;
        if cfg!(debug_assertions) && inserts % 1000 == 0 {
            debug_assert!(g.components_agree_with_bfs(), "component index diverged from BFS");
        }
    }
    Ok(g)
}

fn draw_valid(stream: &mut SampleStream, env: &Environment) -> Result<Configuration> {
    for _ in 0..10_000_000u64 {
        let q = stream.next_uniform(env);
        if env.is_valid(&q) {
            return Ok(q);
        }
    }
    Err(Error::Parameter("could not draw a valid sample; free space looks empty".into()))
}

#[cfg(test)]
mod tests;
