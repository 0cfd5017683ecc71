//! Labeled simple graphs, combinatorial embeddings and generators.

mod embed;
mod generate;
mod points;
mod triangulate;

use alloc::vec;
use alloc::vec::Vec;
use thiserror::Error;

pub use embed::planar_embed;
pub use generate::{enumerate_planar_small, gen_planar, relabel_random, Model, SmallPlanarGraphs};
pub use points::{convex_hull_size, gen_points, PointSet, PointShape};
pub use triangulate::triangulate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("{edges} edges exceed the planar bound {bound}")]
    TooManyEdges { edges: usize, bound: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is not planar")]
    NonPlanar,
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("n = {0} is too large for exhaustive enumeration")]
    TooLarge(usize),
    #[error("points are not pairwise distinct")]
    DuplicatePoint,
    #[error("points are not in convex position")]
    NotConvex,
}

/// Checks that `edges` describe a simple graph on `0..n` within the planar edge bound.
pub fn validate(n: usize, edges: &[(usize, usize)]) -> Result<(), GraphError> {
    let mut seen: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        seen.push((u.min(v), u.max(v)));
    }
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
    }
    if n >= 3 && edges.len() > 3 * n - 6 {
        return Err(GraphError::TooManyEdges { edges: edges.len(), bound: 3 * n - 6 });
    }
    if n < 3 && edges.len() > n * n.saturating_sub(1) / 2 {
        return Err(GraphError::TooManyEdges { edges: edges.len(), bound: n * n.saturating_sub(1) / 2 });
    }
    Ok(())
}

/// Simple undirected graph on `0..n` satisfying the planar edge bound.
///
/// Edges are stored normalized (`u < v`) and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl PlanarGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        validate(n, edges)?;
        Self::new_simple(n, edges)
    }

    /// Whether the edge count respects the planar bound 3n − 6.
    pub fn within_edge_bound(&self) -> bool {
        self.n < 3 || self.edges.len() <= 3 * self.n - 6
    }

    /// Simple graph without the planar edge bound; used for candidates
    /// that are about to be tested for planarity.
    pub fn new_simple(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        match validate(n, edges) {
            Ok(()) | Err(GraphError::TooManyEdges { .. }) => {}
            Err(e) => return Err(e),
        }
        let mut norm: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        norm.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(PlanarGraph { n, edges: norm, adj })
    }

    pub fn empty(n: usize) -> Self {
        PlanarGraph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted list of edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`edges`](Self::edges).
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                i += 1;
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The graph with every label `v` replaced by `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> PlanarGraph {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        PlanarGraph::new_simple(self.n, &edges).expect("relabeling preserves validity")
    }
}

/// Cyclic order of neighbors around every vertex.
///
/// Faces are traced with the rule: after traversing `u -> v`, continue along
/// `v -> succ(v, u)`, where `succ` is the next neighbor in `v`'s cyclic list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<usize>>,
}

impl RotationSystem {
    pub fn from_lists(rot: Vec<Vec<usize>>) -> Self {
        RotationSystem { rot }
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn around(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.rot
    }

    fn pos(&self, v: usize, u: usize) -> usize {
        self.rot[v].iter().position(|&w| w == u).expect("neighbor present in rotation")
    }

    /// Neighbor following `u` in the cyclic order at `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let l = &self.rot[v];
        l[(self.pos(v, u) + 1) % l.len()]
    }

    /// Neighbor preceding `u` in the cyclic order at `v`.
    pub fn pred(&self, v: usize, u: usize) -> usize {
        let l = &self.rot[v];
        l[(self.pos(v, u) + l.len() - 1) % l.len()]
    }

    /// Inserts `w` right after `u` in the cyclic order at `v`.
    pub fn insert_after(&mut self, v: usize, u: usize, w: usize) {
        let i = self.pos(v, u);
        self.rot[v].insert(i + 1, w);
    }

    /// Replaces neighbor `u` by `w` at `v`, keeping its place.
    pub fn replace(&mut self, v: usize, u: usize, w: usize) {
        let i = self.pos(v, u);
        self.rot[v][i] = w;
    }

    pub fn push_vertex(&mut self, list: Vec<usize>) -> usize {
        self.rot.push(list);
        self.rot.len() - 1
    }

    /// All faces, each given as the cyclic sequence of dart tails.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut used: Vec<Vec<bool>> = self.rot.iter().map(|l| vec![false; l.len()]).collect();
        let mut faces = Vec::new();
        for s in 0..self.rot.len() {
            for i in 0..self.rot[s].len() {
                if used[s][i] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut u, mut v) = (s, self.rot[s][i]);
                loop {
                    let k = self.pos(u, v);
                    if used[u][k] {
                        break;
                    }
                    used[u][k] = true;
                    face.push(u);
                    let w = self.succ(v, u);
                    u = v;
                    v = w;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Checks that the lists match the graph's adjacency and that the
    /// embedding is planar: with components counted separately each
    /// contributes n − m + F = 2, which is n − m + F = 1 + C when all outer
    /// faces are identified.
    pub fn is_planar_embedding_of(&self, graph: &PlanarGraph) -> bool {
        if self.rot.len() != graph.n() {
            return false;
        }
        if graph.n() == 0 {
            return true;
        }
        for v in 0..graph.n() {
            let mut l = self.rot[v].clone();
            l.sort_unstable();
            if l.as_slice() != graph.neighbors(v) {
                return false;
            }
        }
        let c = graph.components().len();
        graph.n() + self.plane_face_count(graph) == graph.edge_count() + 1 + c
    }

    /// Face count in the plane: traced faces plus one per isolated vertex,
    /// with the outer faces of all components identified.
    pub fn plane_face_count(&self, graph: &PlanarGraph) -> usize {
        let c = graph.components().len();
        if c == 0 {
            return 0;
        }
        let isolated = (0..graph.n()).filter(|&v| graph.neighbors(v).is_empty()).count();
        self.faces().len() + isolated + 1 - c
    }
}
