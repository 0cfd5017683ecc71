//! Two-page topological book embeddings in which every edge crosses the
//! spine at most once.

mod construct;
mod hamilton;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::graph::{GraphError, PlanarGraph};

pub use construct::{book_embed, book_embed_deterministic};

/// Exact position along the spine. Vertices sit at integers `0..n`;
/// crossing points sit strictly between consecutive integers.
pub type SpineCoord = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Page {
    Top,
    Bottom,
}

impl Page {
    pub fn opposite(self) -> Page {
        match self {
            Page::Top => Page::Bottom,
            Page::Bottom => Page::Top,
        }
    }
}

impl fmt::Display for Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Page::Top => "top",
            Page::Bottom => "bottom",
        })
    }
}

/// One page arc of an edge, between spine coordinates `from < to`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    /// The edge, normalized `u < v`.
    pub edge: (usize, usize),
    pub page: Page,
    pub from: SpineCoord,
    pub to: SpineCoord,
}

/// Spine order plus the arcs of every edge: one arc, or two arcs on
/// opposite pages meeting at a spine crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookEmbedding {
    pub spine: Vec<usize>,
    pub arcs: Vec<Arc>,
}

impl BookEmbedding {
    /// `pos[v]` is the spine index of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.spine.len()];
        for (i, &v) in self.spine.iter().enumerate() {
            if v < pos.len() {
                pos[v] = i;
            }
        }
        pos
    }

    /// Crossing point of every edge that crosses the spine.
    pub fn crossings(&self) -> BTreeMap<(usize, usize), SpineCoord> {
        let mut out = BTreeMap::new();
        for a in &self.arcs {
            for c in [a.from, a.to] {
                if !c.is_integer() {
                    out.insert(a.edge, c);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BookError {
    #[error("graph is not planar")]
    NonPlanar,
    #[error("arcs of edges {0:?} and {1:?} cross on one page")]
    CrossingArcsOnPage((usize, usize), (usize, usize)),
    #[error("edge {0:?} is split more than once")]
    EdgeSplitTwice((usize, usize)),
    #[error("the two arcs of edge {0:?} lie on the same page")]
    SplitOnOnePage((usize, usize)),
    #[error("invalid spine: {0}")]
    SpineOrderInvalid(&'static str),
    #[error("arcs do not match edge {0:?}")]
    EdgeCoverMismatch((usize, usize)),
    #[error("Hamiltonian cycle search exhausted its budget")]
    SearchExhausted,
}

impl From<GraphError> for BookError {
    fn from(_: GraphError) -> Self {
        BookError::NonPlanar
    }
}

/// Checks every book embedding invariant against `graph`.
pub fn validate_book(graph: &PlanarGraph, be: &BookEmbedding) -> Result<(), BookError> {
    let n = graph.n();
    if be.spine.len() != n {
        return Err(BookError::SpineOrderInvalid("spine length differs from vertex count"));
    }
    let pos = be.positions();
    if pos.contains(&usize::MAX) {
        return Err(BookError::SpineOrderInvalid("spine is not a permutation"));
    }
    let top = SpineCoord::from_integer(n as i64);
    let mut by_edge: BTreeMap<(usize, usize), Vec<&Arc>> = BTreeMap::new();
    for a in &be.arcs {
        if a.from >= a.to || a.from < SpineCoord::from_integer(0) || a.to >= top {
            return Err(BookError::SpineOrderInvalid("arc endpoints out of order or range"));
        }
        let e = (a.edge.0.min(a.edge.1), a.edge.0.max(a.edge.1));
        if !graph.has_edge(e.0, e.1) {
            return Err(BookError::EdgeCoverMismatch(e));
        }
        by_edge.entry(e).or_default().push(a);
    }
    let at = |v: usize| SpineCoord::from_integer(pos[v] as i64);
    let mut crossing_points: Vec<SpineCoord> = Vec::new();
    for &(u, v) in graph.edges() {
        let e = (u, v);
        let arcs = by_edge.get(&e).map(Vec::as_slice).unwrap_or(&[]);
        match arcs {
            [] => return Err(BookError::EdgeCoverMismatch(e)),
            [a] => {
                let (lo, hi) = if at(u) < at(v) { (at(u), at(v)) } else { (at(v), at(u)) };
                if a.from != lo || a.to != hi {
                    return Err(BookError::EdgeCoverMismatch(e));
                }
            }
            [a, b] => {
                let ends = |x: &Arc| [x.from, x.to];
                let shared: Vec<SpineCoord> =
                    ends(a).into_iter().filter(|c| ends(b).contains(c)).collect();
                if shared.len() != 1 || shared[0].is_integer() {
                    return Err(BookError::EdgeCoverMismatch(e));
                }
                let c = shared[0];
                let other = |x: &Arc| if x.from == c { x.to } else { x.from };
                let mut outer = [other(a), other(b)];
                outer.sort();
                let mut want = [at(u), at(v)];
                want.sort();
                if outer != want {
                    return Err(BookError::EdgeCoverMismatch(e));
                }
                if a.page == b.page {
                    return Err(BookError::SplitOnOnePage(e));
                }
                crossing_points.push(c);
            }
            _ => return Err(BookError::EdgeSplitTwice(e)),
        }
    }
    crossing_points.sort();
    if crossing_points.windows(2).any(|w| w[0] == w[1]) {
        return Err(BookError::SpineOrderInvalid("two edges cross the spine at one point"));
    }
    // A crossing coordinate may only be used as an endpoint by its own edge.
    let crossing_owner = be.crossings();
    for a in &be.arcs {
        for c in [a.from, a.to] {
            if !c.is_integer() && crossing_owner.get(&a.edge) != Some(&c) {
                return Err(BookError::EdgeCoverMismatch(a.edge));
            }
        }
    }
    for page in [Page::Top, Page::Bottom] {
        let mut arcs: Vec<&Arc> = be.arcs.iter().filter(|a| a.page == page).collect();
        arcs.sort_by(|a, b| a.from.cmp(&b.from).then(b.to.cmp(&a.to)));
        let mut stack: Vec<&Arc> = Vec::new();
        for a in arcs {
            while stack.last().is_some_and(|t| t.to <= a.from) {
                stack.pop();
            }
            if let Some(t) = stack.last() {
                if a.to > t.to {
                    return Err(BookError::CrossingArcsOnPage(t.edge, a.edge));
                }
            }
            stack.push(a);
        }
    }
    Ok(())
}

/// A point where something meets the spine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    /// A vertex with its top and bottom edges listed in the left-to-right
    /// order in which their arcs attach at the vertex.
    Vertex { v: usize, top: Vec<(usize, usize)>, bottom: Vec<(usize, usize)> },
    /// The spine crossing of an edge.
    Crossing { edge: (usize, usize) },
}

/// Spine events sorted by coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSequence {
    pub events: Vec<Event>,
    pub coords: Vec<SpineCoord>,
}

impl GammaSequence {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

/// Spine events of a valid book embedding.
///
/// At a vertex, arcs to the left attach nearest-first and arcs to the right
/// attach farthest-first, which is the order forced by nesting.
pub fn gamma_sequence(be: &BookEmbedding) -> GammaSequence {
    let n = be.spine.len();
    let mut tops: Vec<Vec<(SpineCoord, (usize, usize))>> = vec![Vec::new(); n];
    let mut bottoms: Vec<Vec<(SpineCoord, (usize, usize))>> = vec![Vec::new(); n];
    for a in &be.arcs {
        for (here, other) in [(a.from, a.to), (a.to, a.from)] {
            if here.is_integer() {
                let i = here.to_integer() as usize;
                let list = if a.page == Page::Top { &mut tops[i] } else { &mut bottoms[i] };
                list.push((other, a.edge));
            }
        }
    }
    let mut items: Vec<(SpineCoord, Event)> = Vec::with_capacity(n);
    for (i, &v) in be.spine.iter().enumerate() {
        let here = SpineCoord::from_integer(i as i64);
        let order = |l: &mut Vec<(SpineCoord, (usize, usize))>| -> Vec<(usize, usize)> {
            l.sort_by(|a, b| (a.0 > here).cmp(&(b.0 > here)).then(b.0.cmp(&a.0)));
            l.iter().map(|x| x.1).collect()
        };
        let top = order(&mut tops[i]);
        let bottom = order(&mut bottoms[i]);
        items.push((here, Event::Vertex { v, top, bottom }));
    }
    for (edge, c) in be.crossings() {
        items.push((c, Event::Crossing { edge }));
    }
    items.sort_by_key(|a| a.0);
    let coords = items.iter().map(|x| x.0).collect();
    let events = items.into_iter().map(|x| x.1).collect();
    GammaSequence { events, coords }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> SpineCoord {
        SpineCoord::from_integer(v)
    }

    #[test]
    fn interleaved_top_arcs_cross() {
        let g = PlanarGraph::new(4, &[(0, 2), (1, 3)]).unwrap();
        let be = BookEmbedding {
            spine: vec![0, 1, 2, 3],
            arcs: vec![
                Arc { edge: (0, 2), page: Page::Top, from: c(0), to: c(2) },
                Arc { edge: (1, 3), page: Page::Top, from: c(1), to: c(3) },
            ],
        };
        assert!(matches!(validate_book(&g, &be), Err(BookError::CrossingArcsOnPage(..))));
        let mut missing = be.clone();
        missing.arcs.pop();
        assert_eq!(validate_book(&g, &missing), Err(BookError::EdgeCoverMismatch((1, 3))));
    }

    #[test]
    fn triangle_gamma_orders() {
        let be = BookEmbedding {
            spine: vec![0, 1, 2],
            arcs: vec![
                Arc { edge: (0, 1), page: Page::Top, from: c(0), to: c(1) },
                Arc { edge: (1, 2), page: Page::Top, from: c(1), to: c(2) },
                Arc { edge: (0, 2), page: Page::Top, from: c(0), to: c(2) },
            ],
        };
        let g = gamma_sequence(&be);
        assert_eq!(g.len(), 3);
        match &g.events[0] {
            Event::Vertex { top, .. } => assert_eq!(top, &vec![(0, 2), (0, 1)]),
            _ => panic!(),
        }
        match &g.events[1] {
            Event::Vertex { top, .. } => assert_eq!(top, &vec![(0, 1), (1, 2)]),
            _ => panic!(),
        }
        match &g.events[2] {
            Event::Vertex { top, .. } => assert_eq!(top, &vec![(1, 2), (0, 2)]),
            _ => panic!(),
        }
    }

    #[test]
    fn one_crossing_event() {
        let half = SpineCoord::new(1, 2);
        let be = BookEmbedding {
            spine: vec![0, 1],
            arcs: vec![
                Arc { edge: (0, 1), page: Page::Top, from: c(0), to: half },
                Arc { edge: (0, 1), page: Page::Bottom, from: half, to: c(1) },
            ],
        };
        let g = PlanarGraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(validate_book(&g, &be), Ok(()));
        let gs = gamma_sequence(&be);
        assert_eq!(gs.len(), 3);
        assert_eq!(gs.events[1], Event::Crossing { edge: (0, 1) });
    }
}
