use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{GraphError, PlanarGraph, RotationSystem};

/// Augmented graph, its rotation system and the added edges.
pub type Triangulated = (PlanarGraph, RotationSystem, Vec<(usize, usize)>);

/// Adds edges until every face is a triangle.
///
/// Components are first chained together at their smallest vertices; then
/// each face of length above three is cut by ears `a-b-c -> a-c` with
/// `a != c` and `ac` not yet an edge. Returns the augmented graph, its
/// rotation system and the added edges (sorted, `u < v`).
pub fn triangulate(
    graph: &PlanarGraph,
    rot: &RotationSystem,
) -> Result<Triangulated, GraphError> {
    let n = graph.n();
    if n < 3 {
        return Err(GraphError::DegenerateInput("triangulation needs at least three vertices"));
    }
    if !rot.is_planar_embedding_of(graph) {
        return Err(GraphError::DegenerateInput("rotation system does not embed the graph planarly"));
    }
    let mut rot = rot.clone();
    let mut edges: BTreeSet<(usize, usize)> = graph.edges().iter().copied().collect();
    let mut added = Vec::new();

    let comps = graph.components();
    let mut lists: Vec<Vec<usize>> = rot.lists().to_vec();
    for w in comps.windows(2) {
        let (u, v) = (w[0][0], w[1][0]);
        lists[u].push(v);
        lists[v].push(u);
        edges.insert((u.min(v), u.max(v)));
        added.push((u.min(v), u.max(v)));
    }
    rot = RotationSystem::from_lists(lists);

    for mut face in rot.faces() {
        while face.len() > 3 {
            let l = face.len();
            let ear = (0..l).find(|&i| {
                let (a, c) = (face[i], face[(i + 2) % l]);
                a != c && !edges.contains(&(a.min(c), a.max(c)))
            });
            let Some(i) = ear else {
                return Err(GraphError::DegenerateInput("face admits no chord"));
            };
            let z = face[(i + l - 1) % l];
            let a = face[i];
            let b = face[(i + 1) % l];
            let c = face[(i + 2) % l];
            rot.insert_after(a, z, c);
            rot.insert_after(c, b, a);
            edges.insert((a.min(c), a.max(c)));
            added.push((a.min(c), a.max(c)));
            face.remove((i + 1) % l);
        }
    }

    added.sort_unstable();
    let all: Vec<(usize, usize)> = edges.into_iter().collect();
    let tri = PlanarGraph::new(n, &all)?;
    Ok((tri, rot, added))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::planar_embed;

    fn tri(n: usize, e: &[(usize, usize)]) -> (PlanarGraph, RotationSystem, Vec<(usize, usize)>) {
        let g = PlanarGraph::new(n, e).unwrap();
        let r = planar_embed(&g).unwrap();
        triangulate(&g, &r).unwrap()
    }

    #[test]
    fn triangle_unchanged() {
        let (g, _, added) = tri(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(added.is_empty());
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn four_cycle_gets_chords_and_four_faces() {
        let (g, r, added) = tri(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(added.len(), 2);
        assert_eq!(r.faces().len(), 4);
        assert!(r.is_planar_embedding_of(&g));
    }

    #[test]
    fn path_and_isolated_vertices() {
        let (g, r, added) = tri(3, &[(0, 1), (1, 2)]);
        assert_eq!(added, [(0, 2)]);
        assert_eq!(r.faces().len(), 2);
        let (g2, r2, _) = tri(6, &[]);
        assert_eq!(g2.edge_count(), 12);
        assert!(r2.faces().iter().all(|f| f.len() == 3));
        assert!(r.is_planar_embedding_of(&g));
    }
}
