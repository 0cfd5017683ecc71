//! Book embedding construction: triangulate, subdivide edges of separating
//! triangles, find a Hamiltonian cycle of the augmented subdivision and read
//! the pages off the two sides of the cycle.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng as _;

use super::hamilton::hamiltonian_cycle;
use super::{Arc, BookEmbedding, BookError, Page, SpineCoord};
use crate::graph::{planar_embed, relabel_random, triangulate, PlanarGraph, RotationSystem};
use crate::rng;

/// Upper bound on subdivisions, relative to the edge count, before the
/// separating-triangle cleanup gives up and lets the search run anyway.
const SUBDIVISION_FACTOR: usize = 4;

/// Book embedding with a uniformly random spine order.
///
/// The graph is relabeled at random, embedded, and the Hamiltonian cycle is
/// opened at a vertex chosen uniformly at random, independently of the
/// cycle; labels are then restored. The position of any fixed vertex along
/// the spine is therefore exactly uniform.
pub fn book_embed(graph: &PlanarGraph, seed: u64) -> Result<BookEmbedding, BookError> {
    let n = graph.n();
    let (g2, perm) = relabel_random(graph, rng::derive_seed(seed, 0));
    let cut = if n == 0 { 0 } else { rng::rng(rng::derive_seed(seed, 2)).random_range(0..n) };
    let be = embed_with_cut(&g2, cut, rng::derive_seed(seed, 1))?;
    let mut inv = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inv[new] = old;
    }
    Ok(relabel_book(&be, &inv))
}

/// Deterministic book embedding: no relabeling, cycle opened at vertex 0.
pub fn book_embed_deterministic(graph: &PlanarGraph) -> Result<BookEmbedding, BookError> {
    embed_with_cut(graph, 0, 0)
}

fn relabel_book(be: &BookEmbedding, map: &[usize]) -> BookEmbedding {
    let spine = be.spine.iter().map(|&v| map[v]).collect();
    let mut arcs: Vec<Arc> = be
        .arcs
        .iter()
        .map(|a| {
            let (u, v) = (map[a.edge.0], map[a.edge.1]);
            Arc { edge: (u.min(v), u.max(v)), page: a.page, from: a.from, to: a.to }
        })
        .collect();
    arcs.sort();
    BookEmbedding { spine, arcs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Origin {
    /// An edge of the input graph, by index.
    Whole(usize),
    /// Half of a subdivided input edge.
    Half(usize),
    /// Added during augmentation; never drawn.
    Added,
}

/// The augmented, partially subdivided triangulation.
struct Augmented {
    n: usize,
    rot: RotationSystem,
    origin: BTreeMap<(usize, usize), Origin>,
    /// Subdivision vertex of each input edge, if any.
    split: Vec<Option<usize>>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Augmented {
    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.origin.contains_key(&key(u, v))
    }

    fn separating_triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        let rot = &self.rot;
        for u in 0..rot.n() {
            let nb = rot.around(u);
            for &v in nb.iter().filter(|&&v| v > u) {
                for &w in nb.iter().filter(|&&w| w > v) {
                    if !self.has_edge(v, w) {
                        continue;
                    }
                    let is_face = rot.succ(v, u) == w || rot.succ(v, w) == u;
                    if !is_face {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    /// Subdivides `x-y` by a new vertex joined to both apexes of the edge.
    fn subdivide(&mut self, x: usize, y: usize) {
        let a = self.rot.succ(y, x);
        let b = self.rot.succ(x, y);
        let s = self.rot.push_vertex(vec![x, a, y, b]);
        self.rot.replace(x, y, s);
        self.rot.replace(y, x, s);
        self.rot.insert_after(a, y, s);
        self.rot.insert_after(b, x, s);
        let o = self.origin.remove(&key(x, y)).expect("edge exists");
        let half = match o {
            Origin::Whole(e) => {
                self.split[e] = Some(s);
                Origin::Half(e)
            }
            Origin::Added => Origin::Added,
            Origin::Half(_) => unreachable!("halves are never subdivided"),
        };
        self.origin.insert(key(x, s), half);
        self.origin.insert(key(s, y), half);
        self.origin.insert(key(s, a), Origin::Added);
        self.origin.insert(key(s, b), Origin::Added);
    }

    /// Repeatedly subdivides the edge lying on the most separating triangles.
    fn remove_separating_triangles(&mut self) {
        let cap = SUBDIVISION_FACTOR * self.origin.len() + 8;
        for _ in 0..cap {
            let tris = self.separating_triangles();
            if tris.is_empty() {
                return;
            }
            let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for t in &tris {
                for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
                    if !matches!(self.origin[&key(u, v)], Origin::Half(_)) {
                        *count.entry(key(u, v)).or_insert(0) += 1;
                    }
                }
            }
            // Prefer added edges on ties: subdividing them creates no crossing.
            let best = count
                .iter()
                .max_by(|a, b| {
                    a.1.cmp(b.1)
                        .then((self.origin[a.0] == Origin::Added).cmp(&(self.origin[b.0] == Origin::Added)))
                        .then(b.0.cmp(a.0))
                })
                .map(|(&e, _)| e);
            match best {
                Some((x, y)) => self.subdivide(x, y),
                None => return,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Cycle,
    Page(Page),
}

fn embed_with_cut(graph: &PlanarGraph, cut: usize, seed: u64) -> Result<BookEmbedding, BookError> {
    let n = graph.n();
    if n <= 2 {
        let spine = if n == 2 && cut == 1 { vec![1, 0] } else { (0..n).collect() };
        let arcs = graph
            .edges()
            .iter()
            .map(|&e| Arc { edge: e, page: Page::Top, from: SpineCoord::from_integer(0), to: SpineCoord::from_integer(1) })
            .collect();
        return Ok(BookEmbedding { spine, arcs });
    }
    let rot = planar_embed(graph)?;
    let (tri, trot, _) = triangulate(graph, &rot)?;
    let mut origin = BTreeMap::new();
    for &(u, v) in tri.edges() {
        let o = match graph.edge_index(u, v) {
            Some(i) => Origin::Whole(i),
            None => Origin::Added,
        };
        origin.insert((u, v), o);
    }
    let mut aug = Augmented { n, rot: trot, origin, split: vec![None; graph.edge_count()] };
    aug.remove_separating_triangles();

    let total = aug.rot.n();
    let adj: Vec<Vec<usize>> = (0..total).map(|v| aug.rot.around(v).to_vec()).collect();
    let preferred = |u: usize, v: usize| !matches!(aug.origin.get(&key(u, v)), Some(Origin::Added));
    let cycle = hamiltonian_cycle(&adj, &preferred, seed).ok_or(BookError::SearchExhausted)?;

    let sides = cycle_sides(&aug.rot, &cycle);
    Ok(cut_cycle(graph, &aug, &cycle, &sides, cut))
}

/// Side of every non-cycle edge: neighbors met when turning from the next
/// cycle vertex to the previous one (in rotation order) are on top.
fn cycle_sides(rot: &RotationSystem, cycle: &[usize]) -> BTreeMap<(usize, usize), Side> {
    let len = cycle.len();
    let mut sides = BTreeMap::new();
    for i in 0..len {
        let u = cycle[i];
        let prev = cycle[(i + len - 1) % len];
        let next = cycle[(i + 1) % len];
        sides.insert(key(u, next), Side::Cycle);
        let list = rot.around(u);
        let start = list.iter().position(|&w| w == next).expect("cycle edge in rotation");
        let mut page = Page::Top;
        for k in 1..list.len() {
            let w = list[(start + k) % list.len()];
            if w == prev {
                page = Page::Bottom;
                continue;
            }
            let e = key(u, w);
            match sides.get(&e) {
                Some(Side::Page(p)) => debug_assert_eq!(*p, page, "sides agree at both ends"),
                Some(Side::Cycle) => {}
                None => {
                    sides.insert(e, Side::Page(page));
                }
            }
        }
    }
    sides
}

fn cut_cycle(
    graph: &PlanarGraph,
    aug: &Augmented,
    cycle: &[usize],
    sides: &BTreeMap<(usize, usize), Side>,
    cut: usize,
) -> BookEmbedding {
    let n = aug.n;
    let start = cycle.iter().position(|&v| v == cut).expect("cut vertex on cycle");
    let order: Vec<usize> = (0..cycle.len()).map(|k| cycle[(start + k) % cycle.len()]).collect();

    let mut split_owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (e, s) in aug.split.iter().enumerate() {
        if let Some(s) = s {
            split_owner.insert(*s, e);
        }
    }
    // Which subdivided edges really cross the spine (halves on opposite pages).
    let page_of = |u: usize, v: usize| sides[&key(u, v)];
    let mut crossing: BTreeMap<usize, (Page, Page)> = BTreeMap::new();
    for (&s, &e) in &split_owner {
        let (u, v) = graph.edges()[e];
        if let (Side::Page(p), Side::Page(q)) = (page_of(u, s), page_of(s, v)) {
            if p != q {
                crossing.insert(e, (p, q));
            }
        }
    }

    let mut spine = Vec::with_capacity(n);
    let mut gaps: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &h in &order {
        if h < n {
            spine.push(h);
        } else if let Some(&e) = split_owner.get(&h) {
            if crossing.contains_key(&e) {
                gaps[spine.len() - 1].push(e);
            }
        }
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in spine.iter().enumerate() {
        pos[v] = i;
    }
    let mut cross_at: BTreeMap<usize, SpineCoord> = BTreeMap::new();
    for (i, g) in gaps.iter().enumerate() {
        let k = g.len() as i64;
        for (j, &e) in g.iter().enumerate() {
            cross_at.insert(e, SpineCoord::from_integer(i as i64) + SpineCoord::new(j as i64 + 1, k + 1));
        }
    }

    let at = |v: usize| SpineCoord::from_integer(pos[v] as i64);
    let mut arcs = Vec::new();
    for (e, &(u, v)) in graph.edges().iter().enumerate() {
        let single = |page: Page| {
            let (a, b) = if at(u) < at(v) { (at(u), at(v)) } else { (at(v), at(u)) };
            Arc { edge: (u, v), page, from: a, to: b }
        };
        match aug.split[e] {
            None => {
                let page = match page_of(u, v) {
                    Side::Page(p) => p,
                    Side::Cycle => Page::Top,
                };
                arcs.push(single(page));
            }
            Some(s) => {
                if let Some(&(pu, pv)) = crossing.get(&e) {
                    let c = cross_at[&e];
                    for (w, p) in [(u, pu), (v, pv)] {
                        let (a, b) = if at(w) < c { (at(w), c) } else { (c, at(w)) };
                        arcs.push(Arc { edge: (u, v), page: p, from: a, to: b });
                    }
                } else {
                    let page = match (page_of(u, s), page_of(s, v)) {
                        (Side::Page(p), _) | (_, Side::Page(p)) => p,
                        _ => Page::Top,
                    };
                    arcs.push(single(page));
                }
            }
        }
    }
    arcs.sort();
    BookEmbedding { spine, arcs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::book::validate_book;
    use crate::graph::{gen_planar, Model};

    #[test]
    fn small_graphs() {
        let tri = PlanarGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let be = book_embed_deterministic(&tri).unwrap();
        validate_book(&tri, &be).unwrap();
        assert!(be.arcs.iter().all(|a| a.page == be.arcs[0].page));
        assert_eq!(be.arcs.len(), 3);

        let c4 = PlanarGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let be = book_embed_deterministic(&c4).unwrap();
        validate_book(&c4, &be).unwrap();
        assert_eq!(be.spine, vec![0, 1, 2, 3]);
        assert_eq!(be.arcs.len(), 4);
    }

    #[test]
    fn random_triangulations_validate() {
        for seed in 0..20 {
            let g = gen_planar(40, Model::Triangulation, seed);
            let be = book_embed(&g, seed).unwrap();
            validate_book(&g, &be).unwrap();
        }
    }
}
