//! A* over the sparse graph with cached edge lengths and a metric-distance
//! heuristic, which is admissible for both L1 and L2 since any path is at
//! least as long as the straight-line metric distance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::graph::{SparseGraph, VertexId};

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub path: Vec<VertexId>,
    pub length: f64,
    /// Number of nodes settled by the search.
    pub expanded: usize,
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    f: f64,
    node: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.node == other.node
    }
}
impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on f, ties broken by lowest node index for determinism
        other.f.total_cmp(&self.f).then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact shortest path between two roadmap vertices over current edges.
/// Returns `None` when the vertices are disconnected.
pub fn graph_astar(g: &SparseGraph, from: VertexId, to: VertexId) -> Option<SearchResult> {
    let goal_cfg = g.vertex(to).clone();
    let metric = g.meta().metric;
    search(
        g,
        &[(from, 0.0)],
        &[(to, 0.0)],
        |v| metric.distance(g.vertex(v), &goal_cfg),
        0.0,
        &mut |_, _| true,
    )
    .map(|(path, length, expanded)| SearchResult { path, length, expanded })
}

/// A* from a virtual start node through `start_attach` edges to the roadmap,
/// and out through `goal_attach` edges to a virtual goal node.
///
/// `start_h` is the start node's heuristic (metric distance start to goal).
/// `edge_ok` can veto roadmap edges; attachment edges are the caller's
/// responsibility. The returned path lists roadmap vertices only.
pub fn search(
    g: &SparseGraph,
    start_attach: &[(VertexId, f64)],
    goal_attach: &[(VertexId, f64)],
    heuristic: impl Fn(VertexId) -> f64,
    start_h: f64,
    edge_ok: &mut dyn FnMut(VertexId, VertexId) -> bool,
) -> Option<(Vec<VertexId>, f64, usize)> {
    let n = g.vertex_count();
    let start = n;
    let goal = n + 1;
    let goal_cost: std::collections::HashMap<VertexId, f64> =
        goal_attach.iter().copied().collect();

    let mut dist = vec![f64::INFINITY; n + 2];
    let mut parent = vec![usize::MAX; n + 2];
    let mut settled = vec![false; n + 2];
    let mut heap = BinaryHeap::new();
    dist[start] = 0.0;
    heap.push(HeapEntry { f: start_h, node: start });
    let mut expanded = 0usize;

    while let Some(HeapEntry { node, .. }) = heap.pop() {
        if settled[node] {
            continue;
        }
        settled[node] = true;
        expanded += 1;
        if node == goal {
            let mut path = Vec::new();
            let mut cur = parent[goal];
            while cur != start && cur != usize::MAX {
                path.push(cur as VertexId);
                cur = parent[cur];
            }
            path.reverse();
            return Some((path, dist[goal], expanded));
        }

        let relax = |to: usize, cost: f64, h: f64, from: usize, heap: &mut BinaryHeap<HeapEntry>,
                         dist: &mut Vec<f64>, parent: &mut Vec<usize>| {
            let cand = dist[from] + cost;
            if cand < dist[to] {
                dist[to] = cand;
                parent[to] = from;
                heap.push(HeapEntry { f: cand + h, node: to });
            }
        };

        if node == start {
            for &(v, cost) in start_attach {
                relax(v as usize, cost, heuristic(v), start, &mut heap, &mut dist, &mut parent);
            }
            continue;
        }

        let v = node as VertexId;
        for (w, len) in g.neighbors(v) {
            if settled[w as usize] || !edge_ok(v, w) {
                continue;
            }
            relax(w as usize, len, heuristic(w), node, &mut heap, &mut dist, &mut parent);
        }
        if let Some(&cost) = goal_cost.get(&v) {
            relax(goal, cost, 0.0, node, &mut heap, &mut dist, &mut parent);
        }
    }
    None
}

/// Path length under the graph metric for a vertex sequence.
pub fn path_length(g: &SparseGraph, path: &[VertexId]) -> f64 {
    path.windows(2)
        .map(|w| g.meta().metric.distance(g.vertex(w[0]), g.vertex(w[1])))
        .sum()
}
