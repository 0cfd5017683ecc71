use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng as _;

use super::{planar_embed, GraphError, PlanarGraph};
use crate::rng;

/// Random planar graph models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Maximal planar graph: random stacked insertions followed by random
    /// edge flips, with labels shuffled at the end.
    Triangulation,
    /// A triangulation with a random spanning tree kept and every other edge
    /// dropped with probability 1/2; the result is connected.
    Subgraph,
}

/// Seeded random planar graph on `n ≥ 1` vertices.
pub fn gen_planar(n: usize, model: Model, seed: u64) -> PlanarGraph {
    let mut r = rng::rng(seed);
    let tri = random_triangulation(n, &mut r);
    match model {
        Model::Triangulation => tri,
        Model::Subgraph => {
            let mut order: Vec<(usize, usize)> = tri.edges().to_vec();
            let perm = rng::permutation(order.len(), &mut r);
            order = perm.iter().map(|&i| order[i]).collect();
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            let mut keep = Vec::new();
            for (u, v) in order {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a != b {
                    parent[a] = b;
                    keep.push((u, v));
                } else if r.random_bool(0.5) {
                    keep.push((u, v));
                }
            }
            PlanarGraph::new(n, &keep).expect("subgraph of a planar graph")
        }
    }
}

fn random_triangulation(n: usize, r: &mut rng::Rng) -> PlanarGraph {
    match n {
        0 | 1 => return PlanarGraph::empty(n),
        2 => return PlanarGraph::new(2, &[(0, 1)]).expect("edge"),
        _ => {}
    }
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let f = r.random_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    let mut dart: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut deg = vec![0usize; n];
    for (i, f) in faces.iter().enumerate() {
        for j in 0..3 {
            let (u, v) = (f[j], f[(j + 1) % 3]);
            dart.insert((u, v), i);
            if edges.insert((u.min(v), u.max(v))) {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    if n >= 5 {
        for _ in 0..20 * n {
            let fi = r.random_range(0..faces.len());
            let j = r.random_range(0..3);
            let (u, v, x) = (faces[fi][j], faces[fi][(j + 1) % 3], faces[fi][(j + 2) % 3]);
            let gi = dart[&(v, u)];
            let g = faces[gi];
            let k = (0..3).find(|&k| g[k] == v).expect("shared edge");
            let y = g[(k + 2) % 3];
            if deg[u] <= 3 || deg[v] <= 3 || edges.contains(&(x.min(y), x.max(y))) {
                continue;
            }
            for f in [faces[fi], g] {
                for j in 0..3 {
                    dart.remove(&(f[j], f[(j + 1) % 3]));
                }
            }
            faces[fi] = [u, y, x];
            faces[gi] = [y, v, x];
            for i in [fi, gi] {
                let f = faces[i];
                for j in 0..3 {
                    dart.insert((f[j], f[(j + 1) % 3]), i);
                }
            }
            edges.remove(&(u.min(v), u.max(v)));
            edges.insert((x.min(y), x.max(y)));
            deg[u] -= 1;
            deg[v] -= 1;
            deg[x] += 1;
            deg[y] += 1;
        }
    }
    let perm = rng::permutation(n, r);
    let e: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    PlanarGraph::new(n, &e).expect("triangulation is planar")
}

/// Applies a uniformly random relabeling. Returns the relabeled graph and
/// the permutation `perm` with `perm[old] = new`.
pub fn relabel_random(graph: &PlanarGraph, seed: u64) -> (PlanarGraph, Vec<usize>) {
    let mut r = rng::rng(seed);
    let perm = rng::permutation(graph.n(), &mut r);
    (graph.relabeled(&perm), perm)
}

/// Lazily yields every labeled simple planar graph on `0..n`, in order of
/// the edge bitmask over pairs sorted lexicographically.
#[derive(Debug, Clone)]
pub struct SmallPlanarGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

/// All labeled planar graphs on `n ≤ 8` vertices.
pub fn enumerate_planar_small(n: usize) -> Result<SmallPlanarGraphs, GraphError> {
    if n > 8 {
        return Err(GraphError::TooLarge(n));
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let end = 1u64 << pairs.len();
    Ok(SmallPlanarGraphs { n, pairs, next: 0, end })
}

impl Iterator for SmallPlanarGraphs {
    type Item = PlanarGraph;

    fn next(&mut self) -> Option<PlanarGraph> {
        while self.next < self.end {
            let mask = self.next;
            self.next += 1;
            let edges: Vec<(usize, usize)> = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = PlanarGraph::new_simple(self.n, &edges).expect("distinct pairs");
            if planar_embed(&g).is_ok() {
                return Some(g);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangulation_edge_counts() {
        assert_eq!(gen_planar(3, Model::Triangulation, 9).edge_count(), 3);
        assert_eq!(gen_planar(50, Model::Triangulation, 7).edge_count(), 144);
        assert_eq!(gen_planar(1, Model::Triangulation, 7).edge_count(), 0);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_planar_small(1).unwrap().count(), 1);
        assert_eq!(enumerate_planar_small(2).unwrap().count(), 2);
        assert_eq!(enumerate_planar_small(4).unwrap().count(), 64);
        assert!(enumerate_planar_small(9).is_err());
    }
}
