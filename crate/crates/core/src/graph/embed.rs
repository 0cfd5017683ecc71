//! Planarity testing with embedding: biconnected blocks are embedded by
//! path addition (Demoucron, Malgrange, Pertuiset) and the block rotations
//! are spliced together at cut vertices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{GraphError, PlanarGraph, RotationSystem};

/// Combinatorial planar embedding of `graph`, or `NonPlanar`.
pub fn planar_embed(graph: &PlanarGraph) -> Result<RotationSystem, GraphError> {
    if !graph.within_edge_bound() {
        return Err(GraphError::NonPlanar);
    }
    let mut rot = vec![Vec::new(); graph.n()];
    for block in biconnected_blocks(graph) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rot[u].push(v);
            rot[v].push(u);
            continue;
        }
        for (v, list) in embed_block(&block)? {
            rot[v].extend(list);
        }
    }
    Ok(RotationSystem::from_lists(rot))
}

/// Edge sets of the biconnected components (iterative Hopcroft–Tarjan).
pub(crate) fn biconnected_blocks(graph: &PlanarGraph) -> Vec<Vec<(usize, usize)>> {
    let n = graph.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        let mut estack: Vec<(usize, usize)> = Vec::new();
        while let Some(frame) = frames.last_mut() {
            let (v, p, i) = *frame;
            let nb = graph.neighbors(v);
            if i < nb.len() {
                frame.2 += 1;
                let w = nb[i];
                if disc[w] == usize::MAX {
                    estack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, v, 0));
                } else if w != p && disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push((e.0.min(e.1), e.0.max(e.1)));
                            if e == (u, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

struct Fragment {
    attachments: Vec<usize>,
    /// Non-embedded vertices of the fragment; empty for a single chord.
    inner: Vec<usize>,
}

/// Embeds one biconnected block with at least three vertices. Returns the
/// cyclic neighbor list of every block vertex (global labels).
fn embed_block(edges: &[(usize, usize)]) -> Result<BTreeMap<usize, Vec<usize>>, GraphError> {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let k = verts.len();
    let local = |v: usize| verts.binary_search(&v).expect("block vertex");
    let mut adj = vec![Vec::new(); k];
    for &(u, v) in edges {
        let (a, b) = (local(u), local(v));
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }

    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; k];
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        h_edges.insert((a.min(b), a.max(b)));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev];

    loop {
        let fragments = fragments(&adj, &in_h, &h_edges);
        if fragments.is_empty() {
            break;
        }
        let mut faces_of: Vec<Vec<usize>> = vec![Vec::new(); k];
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                faces_of[v].push(fi);
            }
        }
        let mut choice: Option<(usize, usize, usize)> = None;
        for (gi, frag) in fragments.iter().enumerate() {
            let a0 = frag.attachments[0];
            let admissible: Vec<usize> = faces_of[a0]
                .iter()
                .copied()
                .filter(|f| frag.attachments[1..].iter().all(|&a| faces_of[a].binary_search(f).is_ok()))
                .collect();
            if admissible.is_empty() {
                return Err(GraphError::NonPlanar);
            }
            if choice.is_none_or(|(_, _, c)| admissible.len() < c) {
                choice = Some((gi, admissible[0], admissible.len()));
            }
            if admissible.len() == 1 {
                break;
            }
        }
        let (gi, fi, _) = choice.expect("at least one fragment");
        let path = fragment_path(&adj, &in_h, &fragments[gi]);
        for w in path.windows(2) {
            h_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(fi);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
    }

    // Rotation from consistently oriented faces: u -> v -> w means w follows u at v.
    let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); k];
    for f in &faces {
        let l = f.len();
        for i in 0..l {
            let (u, v, w) = (f[(i + l - 1) % l], f[i], f[(i + 1) % l]);
            succ[v].insert(u, w);
        }
    }
    let mut out = BTreeMap::new();
    for v in 0..k {
        let start = adj[v][0];
        let mut list = vec![verts[start]];
        let mut cur = succ[v][&start];
        while cur != start {
            list.push(verts[cur]);
            cur = succ[v][&cur];
        }
        if list.len() != adj[v].len() {
            return Err(GraphError::NonPlanar);
        }
        out.insert(verts[v], list);
    }
    Ok(out)
}

/// Any cycle of a biconnected graph, found from the first DFS back edge.
fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let k = adj.len();
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![usize::MAX; k];
    depth[0] = 0;
    let mut frames: Vec<(usize, usize)> = vec![(0, 0)];
    while let Some(frame) = frames.last_mut() {
        let (v, i) = *frame;
        if i >= adj[v].len() {
            frames.pop();
            continue;
        }
        frame.1 += 1;
        let w = adj[v][i];
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            frames.push((w, 0));
        } else if w != parent[v] && depth[w] < depth[v] {
            let mut cycle = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cycle.push(x);
            }
            return cycle;
        }
    }
    unreachable!("biconnected block has a cycle")
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edges: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let k = adj.len();
    let mut out = Vec::new();
    for a in 0..k {
        if !in_h[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b && in_h[b] && !h_edges.contains(&(a, b)) {
                out.push(Fragment { attachments: vec![a, b], inner: Vec::new() });
            }
        }
    }
    let mut seen = vec![false; k];
    for s in 0..k {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inner = vec![s];
        let mut att = Vec::new();
        let mut i = 0;
        while i < inner.len() {
            let v = inner[i];
            i += 1;
            for &w in &adj[v] {
                if in_h[w] {
                    att.push(w);
                } else if !seen[w] {
                    seen[w] = true;
                    inner.push(w);
                }
            }
        }
        att.sort_unstable();
        att.dedup();
        out.push(Fragment { attachments: att, inner });
    }
    out
}

/// Path through the fragment joining two distinct attachments.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if frag.inner.is_empty() {
        return frag.attachments.clone();
    }
    let a = frag.attachments[0];
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue: Vec<usize> = Vec::new();
    for &w in &adj[a] {
        if !in_h[w] && frag.inner.contains(&w) && !parent.contains_key(&w) {
            parent.insert(w, a);
            queue.push(w);
        }
    }
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        if let Some(&b) = adj[x].iter().find(|&&b| in_h[b] && b != a) {
            let mut path = vec![b, x];
            let mut y = x;
            while parent[&y] != a {
                y = parent[&y];
                path.push(y);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in &adj[x] {
            if !in_h[w] && !parent.contains_key(&w) {
                parent.insert(w, x);
                queue.push(w);
            }
        }
    }
    unreachable!("fragment of a biconnected block has two attachments")
}

/// Splits an oriented face cycle along a path between two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let l = face.len();
    let a = path[0];
    let b = *path.last().expect("path");
    let ia = face.iter().position(|&v| v == a).expect("attachment on face");
    let ib = face.iter().position(|&v| v == b).expect("attachment on face");
    let inner = &path[1..path.len() - 1];

    let mut f1 = Vec::new();
    let mut i = ia;
    loop {
        f1.push(face[i]);
        if i == ib {
            break;
        }
        i = (i + 1) % l;
    }
    f1.extend(inner.iter().rev());

    let mut f2 = Vec::new();
    let mut i = ib;
    loop {
        f2.push(face[i]);
        if i == ia {
            break;
        }
        i = (i + 1) % l;
    }
    f2.extend(inner.iter());
    (f1, f2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        e
    }

    #[test]
    fn k4_has_four_faces() {
        let g = PlanarGraph::new(4, &complete(4)).unwrap();
        let rot = planar_embed(&g).unwrap();
        assert_eq!(rot.faces().len(), 4);
        assert!(rot.is_planar_embedding_of(&g));
    }

    #[test]
    fn k33_is_rejected() {
        let mut e = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                e.push((u, v));
            }
        }
        let g = PlanarGraph::new(6, &e).unwrap();
        assert_eq!(planar_embed(&g), Err(GraphError::NonPlanar));
    }

    #[test]
    fn blocks_of_bowtie() {
        let g = PlanarGraph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let mut b = biconnected_blocks(&g);
        b.sort();
        assert_eq!(b, vec![vec![(0, 1), (0, 2), (1, 2)], vec![(2, 3), (2, 4), (3, 4)]]);
        let rot = planar_embed(&g).unwrap();
        assert!(rot.is_planar_embedding_of(&g));
    }
}
