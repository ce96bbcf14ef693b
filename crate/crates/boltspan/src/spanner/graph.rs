//! Sparse-graph storage: vertices, undirected edges with cached metric
//! lengths, an incremental connected-component index, an exact radius-query
//! index, and the interface bookkeeping the quality criterion feeds on.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::cspace::{Configuration, Metric};

pub type VertexId = u32;

/// Union-find over vertex ids. Merges are incremental; splits (after edge
/// removal) are handled by rebuilding from adjacency.
#[derive(Debug, Clone, Default)]
struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    components: usize,
}

impl UnionFind {
    fn add(&mut self) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.rank.push(0);
        self.components += 1;
        id
    }

    /// Root without path compression, so lookups work on shared references.
    fn root(&self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        root
    }

    fn find(&mut self, x: u32) -> u32 {
        let root = self.root(x);
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        self.components -= 1;
        let (hi, lo) = if self.rank[ra as usize] >= self.rank[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo as usize] = hi;
        if self.rank[hi as usize] == self.rank[lo as usize] {
            self.rank[hi as usize] += 1;
        }
    }
}

/// Uniform-grid bucket index giving exact within-radius queries.
///
/// Buckets are keyed by hashed integer cell coordinates; hash collisions only
/// add candidates that the exact distance filter discards, so correctness
/// never depends on the hash.
#[derive(Debug, Clone)]
struct GridIndex {
    cell: f64,
    buckets: HashMap<u64, Vec<VertexId>>,
}

impl GridIndex {
    fn new(cell: f64) -> Self {
        GridIndex { cell: cell.max(1e-9), buckets: HashMap::new() }
    }

    fn key(&self, q: &Configuration) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &c in q.coords() {
            let cell = (c / self.cell).floor() as i64;
            h ^= cell as u64;
            h = h.wrapping_mul(0x1000_0000_01b3);
        }
        h
    }

    fn insert(&mut self, id: VertexId, q: &Configuration) {
        self.buckets.entry(self.key(q)).or_default().push(id);
    }

    /// Ids of all vertices whose cell intersects the L-infinity box of
    /// half-width `r` around `q`, in deterministic cell-then-insertion order.
    fn candidates(&self, q: &Configuration, r: f64, out: &mut Vec<VertexId>) {
        out.clear();
        let d = q.dim();
        let lo: Vec<i64> = (0..d).map(|i| ((q[i] - r) / self.cell).floor() as i64).collect();
        let hi: Vec<i64> = (0..d).map(|i| ((q[i] + r) / self.cell).floor() as i64).collect();
        let mut idx = lo.clone();
        loop {
            let mut h: u64 = 0xcbf2_9ce4_8422_2325;
            for &cell in &idx {
                h ^= cell as u64;
                h = h.wrapping_mul(0x1000_0000_01b3);
            }
            if let Some(bucket) = self.buckets.get(&h) {
                out.extend_from_slice(bucket);
            }
            let mut axis = d;
            loop {
                if axis == 0 {
                    return;
                }
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] <= hi[axis] {
                    break;
                }
                idx[axis] = lo[axis];
            }
        }
    }
}

/// One recorded interface witness: a sample lying near the shared visibility
/// boundary of a vertex pair, kept on the side of its nearest vertex.
#[derive(Debug, Clone)]
pub struct InterfaceWitness {
    pub config: Configuration,
    /// Nearest visible vertex at record time.
    pub rep: VertexId,
    pub dist_to_rep: f64,
    pub recorded_at: u64,
}

/// Interface bookkeeping for one vertex pair: up to two support witnesses,
/// one per side. A pair of witnesses within the interface support radius of
/// each other either bridges a blocked interface or backs the quality check.
#[derive(Debug, Clone, Default)]
pub struct InterfaceRecord {
    /// `sides[0]` holds the witness nearest the lower vertex id of the pair,
    /// `sides[1]` the one nearest the higher.
    pub sides: [Option<InterfaceWitness>; 2],
    pub last_updated: u64,
}

/// Build-time constants a finished graph carries for queries and file I/O.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphMeta {
    pub dimension: usize,
    pub metric: Metric,
    /// Visibility radius used for endpoint attachment and radius queries.
    pub delta: f64,
    pub dense_delta: f64,
    pub stretch: f64,
}

/// Sparse roadmap: configurations, straight-line edges with cached metric
/// lengths, and a connected-component index.
#[derive(Debug, Clone)]
pub struct SparseGraph {
    meta: GraphMeta,
    vertices: Vec<Configuration>,
    adjacency: Vec<BTreeMap<VertexId, f64>>,
    edge_count: usize,
    components: UnionFind,
    index: GridIndex,
    interfaces: HashMap<(VertexId, VertexId), InterfaceRecord>,
}

impl SparseGraph {
    pub fn new(meta: GraphMeta) -> Self {
        let cell = meta.delta;
        SparseGraph {
            meta,
            vertices: Vec::new(),
            adjacency: Vec::new(),
            edge_count: 0,
            components: UnionFind::default(),
            index: GridIndex::new(cell),
            interfaces: HashMap::new(),
        }
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertex(&self, id: VertexId) -> &Configuration {
        &self.vertices[id as usize]
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &Configuration)> {
        self.vertices.iter().enumerate().map(|(i, c)| (i as VertexId, c))
    }

    /// Undirected edges as `(low id, high id, cached length)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, nbrs)| {
            nbrs.iter()
                .filter(move |(&b, _)| (a as VertexId) < b)
                .map(move |(&b, &len)| (a as VertexId, b, len))
        })
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.adjacency[v as usize].iter().map(|(&n, &len)| (n, len))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency[a as usize].contains_key(&b)
    }

    pub fn edge_len(&self, a: VertexId, b: VertexId) -> Option<f64> {
        self.adjacency[a as usize].get(&b).copied()
    }

    pub fn add_vertex(&mut self, q: Configuration) -> VertexId {
        debug_assert_eq!(q.dim(), self.meta.dimension);
        let id = self.components.add();
        debug_assert_eq!(id as usize, self.vertices.len());
        self.index.insert(id, &q);
        self.vertices.push(q);
        self.adjacency.push(BTreeMap::new());
        id
    }

    /// Adds an undirected edge with its exact metric length; returns false if
    /// it already existed. The caller is responsible for collision validity.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> bool {
        assert_ne!(a, b, "self-loops are not allowed");
        if self.has_edge(a, b) {
            return false;
        }
        let len = self.meta.metric.distance(self.vertex(a), self.vertex(b));
        self.adjacency[a as usize].insert(b, len);
        self.adjacency[b as usize].insert(a, len);
        self.edge_count += 1;
        self.components.union(a, b);
        true
    }

    /// Removes an edge without touching the component index; callers batch
    /// removals and then call [`rebuild_components`](Self::rebuild_components).
    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) -> bool {
        if self.adjacency[a as usize].remove(&b).is_some() {
            self.adjacency[b as usize].remove(&a);
            self.edge_count -= 1;
            true
        } else {
            false
        }
    }

    pub fn same_component(&self, a: VertexId, b: VertexId) -> bool {
        self.components.root(a) == self.components.root(b)
    }

    pub fn component_of(&self, v: VertexId) -> u32 {
        self.components.root(v)
    }

    pub fn component_count(&self) -> usize {
        self.components.components
    }

    /// Recomputes the component index from adjacency, e.g. after removals.
    pub fn rebuild_components(&mut self) {
        let mut fresh = UnionFind::default();
        for _ in 0..self.vertices.len() {
            fresh.add();
        }
        for (a, nbrs) in self.adjacency.iter().enumerate() {
            for &b in nbrs.keys() {
                if (a as u32) < b {
                    fresh.union(a as u32, b);
                }
            }
        }
        self.components = fresh;
    }

    /// True when the component index matches reachability found by BFS.
    pub fn components_agree_with_bfs(&self) -> bool {
        let n = self.vertices.len();
        let mut label = vec![u32::MAX; n];
        let mut next = 0u32;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if label[start] != u32::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start as u32);
            while let Some(v) = queue.pop_front() {
                for (&w, _) in self.adjacency[v as usize].iter() {
                    if label[w as usize] == u32::MAX {
                        label[w as usize] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        if next as usize != self.component_count() {
            return false;
        }
        // vertices share a BFS label iff they share a union-find root
        let mut root_of_label: HashMap<u32, u32> = HashMap::new();
        let mut label_of_root: HashMap<u32, u32> = HashMap::new();
        for v in 0..n {
            let root = self.components.root(v as u32);
            if *root_of_label.entry(label[v]).or_insert(root) != root {
                return false;
            }
            if *label_of_root.entry(root).or_insert(label[v]) != label[v] {
                return false;
            }
        }
        true
    }

    /// Vertices within metric distance `r` of `q`, sorted by distance with
    /// ties broken by lowest id. Exact: the index only prunes cells that
    /// cannot intersect the metric ball.
    pub fn within_radius(&self, q: &Configuration, r: f64) -> Vec<(VertexId, f64)> {
        let mut out = Vec::new();
        let mut candidates = Vec::new();
        self.index.candidates(q, r, &mut candidates);
        candidates.sort_unstable();
        candidates.dedup();
        for id in candidates {
            let d = self.meta.metric.distance(q, self.vertex(id));
            if d <= r {
                out.push((id, d));
            }
        }
        out.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        out
    }

    fn pair_key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }

    pub fn interface_record(&self, a: VertexId, b: VertexId) -> Option<&InterfaceRecord> {
        self.interfaces.get(&Self::pair_key(a, b))
    }

    pub fn interface_record_mut(&mut self, a: VertexId, b: VertexId) -> &mut InterfaceRecord {
        self.interfaces.entry(Self::pair_key(a, b)).or_default()
    }

    pub fn clear_interface_record(&mut self, a: VertexId, b: VertexId) {
        self.interfaces.remove(&Self::pair_key(a, b));
    }

    /// Support witness for the pair `(v, other)` lying on `v`'s side.
    pub fn support_toward(&self, v: VertexId, other: VertexId) -> Option<&InterfaceWitness> {
        let key = Self::pair_key(v, other);
        let side = if v == key.0 { 0 } else { 1 };
        self.interfaces.get(&key).and_then(|r| r.sides[side].as_ref())
    }
}
