//! Start/goal queries over a finished roadmap: endpoint attachment, A*
//! search, shortcut smoothing, and lazy repair against a changed environment.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use crate::cspace::{Configuration, Environment, Metric, MotionValidator};
use crate::error::{Error, Result};
use crate::spanner::{self, SparseGraph, VertexId};

/// Answer to one shortest-path query.
#[derive(Debug, Clone)]
pub struct QueryResult {
    /// Start, any roadmap states traversed, goal.
    pub path: Vec<Configuration>,
    /// Total length under the roadmap's metric.
    pub length: f64,
    /// Nodes settled by the A* search.
    pub expanded: usize,
    /// Temporary `(vertex, cost)` connections used on the start side.
    pub start_attachments: Vec<(VertexId, f64)>,
    /// Temporary connections used on the goal side.
    pub goal_attachments: Vec<(VertexId, f64)>,
    pub elapsed: Duration,
}

fn check_endpoint(g: &SparseGraph, env: &Environment, q: &Configuration, what: &str) -> Result<()> {
    if q.dim() != g.meta().dimension {
        return Err(Error::Input(format!(
            "{what} has dimension {}, roadmap expects {}",
            q.dim(),
            g.meta().dimension
        )));
    }
    if !env.is_valid(q) {
        return Err(Error::Input(format!("{what} configuration {q} is not collision-free")));
    }
    Ok(())
}

/// All roadmap vertices within the visibility radius of `q` reachable by a
/// valid straight-line motion, with their attachment costs.
fn attachments(
    g: &SparseGraph,
    env: &Environment,
    validator: &MotionValidator,
    q: &Configuration,
) -> Vec<(VertexId, f64)> {
    g.within_radius(q, g.meta().delta)
        .into_iter()
        .filter(|&(v, _)| validator.check_motion(q, g.vertex(v), env))
        .collect()
}

fn assemble(
    g: &SparseGraph,
    start: &Configuration,
    goal: &Configuration,
    vids: Vec<VertexId>,
    length: f64,
    expanded: usize,
    start_attachments: Vec<(VertexId, f64)>,
    goal_attachments: Vec<(VertexId, f64)>,
    t0: Instant,
) -> QueryResult {
    let mut path = Vec::with_capacity(vids.len() + 2);
    path.push(start.clone());
    for v in vids {
        let cfg = g.vertex(v).clone();
        if path.last() != Some(&cfg) {
            path.push(cfg);
        }
    }
    if path.last() != Some(goal) {
        path.push(goal.clone());
    }
    QueryResult {
        path,
        length,
        expanded,
        start_attachments,
        goal_attachments,
        elapsed: t0.elapsed(),
    }
}

/// Plans a path from `start` to `goal` over the roadmap.
///
/// Both endpoints attach to every visible vertex within the visibility
/// radius; attaching to the nearest vertex alone can void the stretch bound
/// at visibility-region boundaries. Returns `Ok(None)` when no attachment or
/// no graph path exists; invalid endpoints are an input error instead.
pub fn plan(
    g: &SparseGraph,
    env: &Environment,
    validator: &MotionValidator,
    start: &Configuration,
    goal: &Configuration,
) -> Result<Option<QueryResult>> {
    let t0 = Instant::now();
    check_endpoint(g, env, start, "start")?;
    check_endpoint(g, env, goal, "goal")?;
    if start == goal {
        return Ok(Some(QueryResult {
            path: vec![start.clone()],
            length: 0.0,
            expanded: 0,
            start_attachments: Vec::new(),
            goal_attachments: Vec::new(),
            elapsed: t0.elapsed(),
        }));
    }
    let start_attach = attachments(g, env, validator, start);
    let goal_attach = attachments(g, env, validator, goal);
    if start_attach.is_empty() || goal_attach.is_empty() {
        return Ok(None);
    }
    let metric = g.meta().metric;
    let found = spanner::search_attached(
        g,
        &start_attach,
        &goal_attach,
        |v| metric.distance(g.vertex(v), goal),
        metric.distance(start, goal),
        &mut |_, _| true,
    );
    Ok(found.map(|(vids, length, expanded)| {
        assemble(g, start, goal, vids, length, expanded, start_attach, goal_attach, t0)
    }))
}

/// Plans against a possibly changed environment. Roadmap edges are
/// re-validated lazily on first expansion and cached for the query;
/// invalidated edges are treated as absent, and vertices inside new
/// obstacles are excluded from attachment.
pub fn plan_with_repair(
    g: &SparseGraph,
    env_new: &Environment,
    validator: &MotionValidator,
    start: &Configuration,
    goal: &Configuration,
) -> Result<Option<QueryResult>> {
    let t0 = Instant::now();
    check_endpoint(g, env_new, start, "start")?;
    check_endpoint(g, env_new, goal, "goal")?;
    if start == goal {
        return Ok(Some(QueryResult {
            path: vec![start.clone()],
            length: 0.0,
            expanded: 0,
            start_attachments: Vec::new(),
            goal_attachments: Vec::new(),
            elapsed: t0.elapsed(),
        }));
    }
    let start_attach = attachments(g, env_new, validator, start);
    let goal_attach = attachments(g, env_new, validator, goal);
    if start_attach.is_empty() || goal_attach.is_empty() {
        return Ok(None);
    }
    let metric = g.meta().metric;
    let mut cache: HashMap<(VertexId, VertexId), bool> = HashMap::new();
    let mut edge_ok = |a: VertexId, b: VertexId| -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        *cache
            .entry(key)
            .or_insert_with(|| validator.check_motion(g.vertex(a), g.vertex(b), env_new))
    };
    let found = spanner::search_attached(
        g,
        &start_attach,
        &goal_attach,
        |v| metric.distance(g.vertex(v), goal),
        metric.distance(start, goal),
        &mut edge_ok,
    );
    Ok(found.map(|(vids, length, expanded)| {
        assemble(g, start, goal, vids, length, expanded, start_attach, goal_attach, t0)
    }))
}

/// Iterative shortcutting: sweeps subchain replacements outermost-first
/// (`i` ascending, `j` descending) and keeps a cut when the direct segment
/// is valid and no longer than the chain it replaces, repeating until a
/// fixpoint. Equal-length cuts still drop interior states, which is what
/// collapses collinear runs and monotone L1 staircases.
///
/// The output never exceeds the input length, stays collision-valid, and the
/// sweep order makes the result deterministic.
pub fn smooth(
    path: &[Configuration],
    env: &Environment,
    validator: &MotionValidator,
    metric: Metric,
) -> Vec<Configuration> {
    let mut out: Vec<Configuration> = path.to_vec();
    loop {
        let n = out.len();
        let mut improved = false;
        'sweep: for i in 0..n.saturating_sub(2) {
            for j in ((i + 2)..n).rev() {
                let through: f64 =
                    out[i..=j].windows(2).map(|w| metric.distance(&w[0], &w[1])).sum();
                let direct = metric.distance(&out[i], &out[j]);
                if direct <= through + spanner::LENGTH_TOLERANCE
                    && validator.check_motion(&out[i], &out[j], env)
                {
                    out.drain(i + 1..j);
                    improved = true;
                    break 'sweep;
                }
            }
        }
        if !improved {
            return out;
        }
    }
}

/// Length of a configuration path under a metric.
pub fn path_metric_length(path: &[Configuration], metric: Metric) -> f64 {
    path.windows(2).map(|w| metric.distance(&w[0], &w[1])).sum()
}
