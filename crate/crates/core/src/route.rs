//! Polyline drawings with a fixed vertex mapping.
//!
//! Everything is laid out in the frame `X = δ·p`, `Y = y`, where `δ = (1, t)`;
//! a line `X = const` is a straight line in the plane, so the frame is an
//! exact affine change of coordinates. Each part `V_i` gets an interval of
//! `X` values. Inside an interval every spine event owns a group of parallel
//! lines, one per edge passing through it. Lines of even-numbered intervals
//! are sheared by a small rational slope so that they meet the lines of both
//! neighboring intervals outside the bounding box of the points. The two
//! book pages close the picture as nested three-segment staples.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::book::{book_embed, gamma_sequence, BookEmbedding, BookError, Event, Page, SpineCoord};
use crate::chains::{
    alternating_runs, generic_direction, interleave_empty, min_common_chain_cover, ChainError,
    ChainPartition, Direction,
};
use crate::geomcheck::{orient, Orientation, RationalPoint};
use crate::graph::{PlanarGraph, PointSet};
use crate::rng::derive_seed;

/// Bends per edge beyond `3r`: a fan bend at each end, plus the two staple
/// corners of each page closure an edge uses, minus the joints it skips.
pub const C_ROUTE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RouteError {
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("vertex mapping mismatch: {0}")]
    MappingMismatch(&'static str),
    #[error("graph is not planar")]
    NonPlanar,
    #[error("graphs and points differ in size")]
    SizeMismatch,
    #[error("inconsistent layout: {0}")]
    Layout(&'static str),
    #[error(transparent)]
    Book(BookError),
    #[error(transparent)]
    Chain(ChainError),
}

impl From<BookError> for RouteError {
    fn from(e: BookError) -> Self {
        match e {
            BookError::NonPlanar => RouteError::NonPlanar,
            e => RouteError::Book(e),
        }
    }
}

impl From<ChainError> for RouteError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::InvalidPartition(s) => RouteError::InvalidPartition(s),
            e => RouteError::Chain(e),
        }
    }
}

/// Points, the vertex mapping `gamma[v]` (a point index) and a generic
/// direction for the points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    pub points: PointSet,
    pub gamma: Vec<usize>,
    pub delta: Direction,
}

impl PointConfig {
    pub fn new(points: PointSet, gamma: Vec<usize>) -> Result<Self, RouteError> {
        let delta = generic_direction(&points);
        Self::with_direction(points, gamma, delta)
    }

    /// Vertex `v` goes to point `v`.
    pub fn identity(points: PointSet) -> Self {
        let gamma = (0..points.len()).collect();
        let delta = generic_direction(&points);
        PointConfig { points, gamma, delta }
    }

    pub fn with_direction(points: PointSet, gamma: Vec<usize>, delta: Direction) -> Result<Self, RouteError> {
        let n = points.len();
        if gamma.len() != n {
            return Err(RouteError::MappingMismatch("mapping and point set differ in size"));
        }
        let mut seen = vec![false; n];
        for &p in &gamma {
            if p >= n || seen[p] {
                return Err(RouteError::MappingMismatch("mapping is not a bijection"));
            }
            seen[p] = true;
        }
        let mut keys: Vec<BigRational> = points.points().iter().map(|p| delta.dot(p)).collect();
        keys.sort();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err(RouteError::MappingMismatch("direction is not generic for the points"));
        }
        Ok(PointConfig { points, gamma, delta })
    }

    pub fn point_of(&self, v: usize) -> &RationalPoint {
        &self.points.points()[self.gamma[v]]
    }

    pub fn vertex_points(&self) -> Vec<RationalPoint> {
        (0..self.gamma.len()).map(|v| self.point_of(v).clone()).collect()
    }

    /// Axis-aligned box `(min corner, max corner)` of the points.
    pub fn bounding_box(&self) -> Option<(RationalPoint, RationalPoint)> {
        let pts = self.points.points();
        let first = pts.first()?;
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for p in pts {
            if p.x < lo.x {
                lo.x = p.x.clone();
            }
            if p.y < lo.y {
                lo.y = p.y.clone();
            }
            if p.x > hi.x {
                hi.x = p.x.clone();
            }
            if p.y > hi.y {
                hi.y = p.y.clone();
            }
        }
        Some((lo, hi))
    }

    /// Vertices sorted by `δ·γ(v)`.
    pub fn delta_order(&self) -> Vec<usize> {
        let keys: Vec<BigRational> = (0..self.gamma.len()).map(|v| self.delta.dot(self.point_of(v))).collect();
        let mut order: Vec<usize> = (0..self.gamma.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        order
    }
}

/// Interval bounds and line positions used by [`route`], in the `(X, Y)`
/// frame. A line at position `p` of interval `i` is `X = p` when the
/// interval is unsheared and `X = p + slope·(Y − y_mid)` when it is sheared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaLayout {
    pub bounds: Vec<(BigRational, BigRational)>,
    pub slope: BigRational,
    pub y_mid: BigRational,
    pub y_lo: BigRational,
    pub y_hi: BigRational,
    /// Per interval, left to right: the spine event index and the positions
    /// of its lines.
    pub groups: Vec<Vec<(usize, Vec<BigRational>)>>,
}

impl DeltaLayout {
    pub fn is_sheared(i: usize) -> bool {
        i % 2 == 1
    }

    /// Intervals are disjoint and ordered, groups follow spine order (reversed
    /// in even-numbered intervals) and never overlap, and every line lies
    /// strictly inside its interval.
    pub fn check(&self) -> Result<(), RouteError> {
        for (i, (l, r)) in self.bounds.iter().enumerate() {
            if l >= r {
                return Err(RouteError::Layout("empty interval"));
            }
            if i > 0 && self.bounds[i - 1].1 >= *l {
                return Err(RouteError::Layout("intervals overlap"));
            }
        }
        if self.groups.len() != self.bounds.len() {
            return Err(RouteError::Layout("group count differs from interval count"));
        }
        for (i, groups) in self.groups.iter().enumerate() {
            let (l, r) = &self.bounds[i];
            let mut last: Option<&BigRational> = None;
            for (k, (t, pos)) in groups.iter().enumerate() {
                if k > 0 {
                    let prev = groups[k - 1].0;
                    let ordered = if Self::is_sheared(i) { prev > *t } else { prev < *t };
                    if !ordered {
                        return Err(RouteError::Layout("groups out of spine order"));
                    }
                }
                if pos.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(RouteError::Layout("group positions not increasing"));
                }
                if let (Some(a), Some(b)) = (last, pos.first()) {
                    if a >= b {
                        return Err(RouteError::Layout("groups overlap"));
                    }
                }
                if pos.iter().any(|x| x <= l || x >= r) {
                    return Err(RouteError::Layout("line outside its interval"));
                }
                last = pos.last().or(last);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawnEdge {
    /// Endpoints with `u < v`; the polyline runs from `u` to `v`.
    pub u: usize,
    pub v: usize,
    pub poly: Vec<RationalPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DrawingMeta {
    /// Number of parts the drawing was routed with.
    pub r: usize,
    pub bends_per_edge: Vec<usize>,
    pub seed: Option<u64>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Drawing {
    pub vertex_points: Vec<RationalPoint>,
    pub edges: Vec<DrawnEdge>,
    pub meta: DrawingMeta,
    pub layout: Option<DeltaLayout>,
}

impl Drawing {
    pub fn max_bends(&self) -> usize {
        self.meta.bends_per_edge.iter().copied().max().unwrap_or(0)
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Top,
    Bottom,
    Cross,
}

struct Strand {
    event: usize,
    edge: (usize, usize),
    kind: Kind,
}

/// Point in the `(X, Y)` frame.
type Pt = (BigRational, BigRational);

struct Router<'a> {
    r: usize,
    strands: Vec<Strand>,
    /// Part index of the vertex of each strand (none for crossings).
    part: Vec<Option<usize>>,
    /// `pos[i][s]`: position of strand `s` in interval `i`.
    pos: Vec<Vec<Option<BigRational>>>,
    slope: BigRational,
    y_mid: BigRational,
    y_lo: BigRational,
    y_hi: BigRational,
    depth: BTreeMap<((usize, usize), Page), i64>,
    vpts: &'a [Pt],
    event_vertex: Vec<Option<usize>>,
}

impl Router<'_> {
    fn shift(&self, i: usize, y: &BigRational) -> BigRational {
        if DeltaLayout::is_sheared(i) {
            &self.slope * (y - &self.y_mid)
        } else {
            BigRational::zero()
        }
    }

    fn at(&self, i: usize, s: usize) -> &BigRational {
        self.pos[i][s].as_ref().expect("strand positioned in interval")
    }

    /// Where the lines of `s` in intervals `i` and `i + 1` meet.
    fn joint(&self, i: usize, s: usize) -> Pt {
        let (a, b) = (self.at(i, s), self.at(i + 1, s));
        if DeltaLayout::is_sheared(i) {
            // Sheared line of `i` rises into the vertical line of `i + 1`.
            (b.clone(), &self.y_mid + (b - a) / &self.slope)
        } else {
            (a.clone(), &self.y_mid + (a - b) / &self.slope)
        }
    }

    fn fan(&self, s: usize) -> Pt {
        let j = self.part[s].expect("vertex strand");
        let v = self.event_vertex[self.strands[s].event].expect("vertex event");
        let up = (self.strands[s].kind == Kind::Top) != DeltaLayout::is_sheared(j);
        let y = if up { &self.vpts[v].1 + half() } else { &self.vpts[v].1 - half() };
        (self.at(j, s) + self.shift(j, &y), y)
    }

    fn corner(&self, s: usize, page: Page) -> Pt {
        let d = rat(self.depth[&(self.strands[s].edge, page)]);
        match page {
            Page::Top => (self.at(0, s).clone(), &self.y_hi + d),
            Page::Bottom => {
                let i = self.r - 1;
                let y = if DeltaLayout::is_sheared(i) { &self.y_hi + d } else { &self.y_lo - d };
                (self.at(i, s) + self.shift(i, &y), y)
            }
        }
    }

    /// From the vertex of strand `s` out to the closure of its page.
    fn leg(&self, s: usize, page: Page) -> Vec<Pt> {
        let j = self.part[s].expect("vertex strand");
        let v = self.event_vertex[self.strands[s].event].expect("vertex event");
        let mut out = vec![self.vpts[v].clone(), self.fan(s)];
        match page {
            Page::Top => out.extend((0..j).rev().map(|i| self.joint(i, s))),
            Page::Bottom => out.extend((j..self.r - 1).map(|i| self.joint(i, s))),
        }
        out.push(self.corner(s, page));
        out
    }

    /// A crossing strand from the top closure down to the bottom closure.
    fn through(&self, s: usize) -> Vec<Pt> {
        let mut out = vec![self.corner(s, Page::Top)];
        out.extend((0..self.r - 1).map(|i| self.joint(i, s)));
        out.push(self.corner(s, Page::Bottom));
        out
    }
}

/// Draws `graph` with the vertex mapping of `config` following the book
/// embedding `be` and the partition.
///
/// Every edge bends at most `3r + C_ROUTE` times, where `r` is the number of
/// parts.
pub fn route(
    graph: &PlanarGraph,
    be: &BookEmbedding,
    config: &PointConfig,
    partition: &ChainPartition,
) -> Result<Drawing, RouteError> {
    let n = graph.n();
    if config.gamma.len() != n {
        return Err(RouteError::MappingMismatch("mapping and graph differ in size"));
    }
    if be.spine.len() != n {
        return Err(RouteError::MappingMismatch("book embedding and graph differ in size"));
    }
    let order = config.delta_order();
    let mut rank = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        rank[v] = k;
    }
    let spine_pos = be.positions();
    partition.check(&rank, &spine_pos)?;
    let r = partition.r();
    let mut drawing = Drawing {
        vertex_points: config.vertex_points(),
        edges: Vec::new(),
        meta: DrawingMeta { r, bends_per_edge: Vec::new(), seed: None, provenance: "route".into() },
        layout: None,
    };
    if graph.edge_count() == 0 {
        return Ok(drawing);
    }

    let vpts: Vec<Pt> =
        (0..n).map(|v| (config.delta.dot(config.point_of(v)), config.point_of(v).y.clone())).collect();
    let mut part_of = vec![0; n];
    for (i, p) in partition.parts.iter().enumerate() {
        for &v in p {
            part_of[v] = i;
        }
    }

    // Strands: one per (event, edge) where an arc of the edge ends.
    let gs = gamma_sequence(be);
    let h = gs.len();
    let mut strands: Vec<Strand> = Vec::new();
    let mut tops: Vec<Vec<usize>> = vec![Vec::new(); h];
    let mut bottoms: Vec<Vec<usize>> = vec![Vec::new(); h];
    let mut event_vertex = vec![None; h];
    let mut index: BTreeMap<(usize, (usize, usize)), usize> = BTreeMap::new();
    for (t, ev) in gs.events.iter().enumerate() {
        let mut add = |edge: (usize, usize), kind: Kind| {
            index.insert((t, edge), strands.len());
            strands.push(Strand { event: t, edge, kind });
            strands.len() - 1
        };
        match ev {
            Event::Vertex { v, top, bottom } => {
                event_vertex[t] = Some(*v);
                tops[t] = top.iter().map(|&e| add(e, Kind::Top)).collect();
                bottoms[t] = bottom.iter().map(|&e| add(e, Kind::Bottom)).collect();
            }
            Event::Crossing { edge } => {
                tops[t] = vec![add(*edge, Kind::Cross)];
            }
        }
    }
    let part: Vec<Option<usize>> = strands.iter().map(|s| event_vertex[s.event].map(|v| part_of[v])).collect();

    // Frame and interval bounds.
    let y_min = vpts.iter().map(|p| &p.1).min().expect("nonempty").clone();
    let y_max = vpts.iter().map(|p| &p.1).max().expect("nonempty").clone();
    let y_lo = &y_min - rat(1);
    let y_hi = &y_max + rat(1);
    let y_mid = (&y_min + &y_max) * half();
    let height = &y_hi - &y_lo;
    let bounds = interval_bounds(partition, &vpts, &rank);
    let mut d: Option<BigRational> = None;
    let mut take = |x: BigRational| {
        if d.as_ref().is_none_or(|m| x < *m) {
            d = Some(x);
        }
    };
    for (i, (l, rr)) in bounds.iter().enumerate() {
        if i + 1 < r {
            take(&bounds[i + 1].0 - rr);
        }
        let mut xs: Vec<&BigRational> = partition.parts[i].iter().map(|&v| &vpts[v].0).collect();
        xs.sort();
        let mut prev = l;
        for x in xs {
            take(x - prev);
            prev = x;
        }
        take(rr - prev);
    }
    let d = d.expect("at least one interval");
    let slope = &d / (rat(4) * &height);

    // Line positions, interval by interval.
    let mut pos: Vec<Vec<Option<BigRational>>> = vec![vec![None; strands.len()]; r];
    let mut groups: Vec<Vec<(usize, Vec<BigRational>)>> = vec![Vec::new(); r];
    for i in 0..r {
        let sheared = DeltaLayout::is_sheared(i);
        let events: Vec<usize> = if sheared { (0..h).rev().collect() } else { (0..h).collect() };
        let oriented = |l: &[usize]| -> Vec<usize> {
            if sheared {
                l.iter().rev().copied().collect()
            } else {
                l.to_vec()
            }
        };
        // Lanes: (event, floating strands) or an anchored vertex.
        enum Lane {
            Float(usize, Vec<usize>),
            Anchor(usize, BigRational, Vec<usize>, Vec<usize>),
        }
        let mut lanes: Vec<Lane> = Vec::new();
        for &t in &events {
            match event_vertex[t] {
                Some(v) => {
                    let j = part_of[v];
                    if i < j {
                        lanes.push(Lane::Float(t, oriented(&tops[t])));
                    } else if i > j {
                        lanes.push(Lane::Float(t, oriented(&bottoms[t])));
                    } else {
                        let x = &vpts[v].0 - &slope_if(sheared, &slope) * (&vpts[v].1 - &y_mid);
                        lanes.push(Lane::Anchor(t, x, oriented(&tops[t]), oriented(&bottoms[t])));
                    }
                }
                None => lanes.push(Lane::Float(t, tops[t].clone())),
            }
        }
        let (l, rr) = &bounds[i];
        let mut fixed: Vec<BigRational> = vec![l.clone()];
        for lane in &lanes {
            if let Lane::Anchor(_, x, _, _) = lane {
                fixed.push(x.clone());
            }
        }
        fixed.push(rr.clone());
        if fixed.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RouteError::Layout("anchors out of order inside an interval"));
        }
        let radius: Vec<BigRational> = (1..fixed.len() - 1)
            .map(|k| {
                let gap = (&fixed[k] - &fixed[k - 1]).min(&fixed[k + 1] - &fixed[k]);
                gap / rat(4)
            })
            .collect();

        let mut lo = l.clone();
        let mut pending: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut anchor_k = 0;
        let place = |lo: &BigRational,
                     hi: &BigRational,
                     pending: &mut Vec<(usize, Vec<usize>)>,
                     pos: &mut Vec<Vec<Option<BigRational>>>,
                     groups: &mut Vec<Vec<(usize, Vec<BigRational>)>>| {
            let total: usize = pending.iter().map(|p| p.1.len()).sum();
            let step = (hi - lo) / rat(total as i64 + 1);
            let mut k = 1;
            for (t, ss) in pending.drain(..) {
                let mut g = Vec::with_capacity(ss.len());
                for s in ss {
                    let x = lo + &step * rat(k);
                    k += 1;
                    pos[i][s] = Some(x.clone());
                    g.push(x);
                }
                groups[i].push((t, g));
            }
        };
        for lane in lanes {
            match lane {
                Lane::Float(t, ss) => pending.push((t, ss)),
                Lane::Anchor(t, x, top, bottom) => {
                    let rho = &radius[anchor_k];
                    anchor_k += 1;
                    place(&lo, &(&x - rho), &mut pending, &mut pos, &mut groups);
                    let width = rho / rat(top.len().max(bottom.len()).max(1) as i64);
                    let mut g: Vec<BigRational> = Vec::new();
                    for list in [&top, &bottom] {
                        let mid = rat(list.len() as i64 - 1) * half();
                        for (k, &s) in list.iter().enumerate() {
                            let p = &x + (rat(k as i64) - &mid) * &width;
                            pos[i][s] = Some(p.clone());
                            g.push(p);
                        }
                    }
                    g.sort();
                    g.dedup();
                    groups[i].push((t, g));
                    lo = &x + rho;
                }
            }
        }
        place(&lo, rr, &mut pending, &mut pos, &mut groups);
    }
    let layout = DeltaLayout { bounds, slope: slope.clone(), y_mid: y_mid.clone(), y_lo: y_lo.clone(), y_hi: y_hi.clone(), groups };
    layout.check()?;

    // Staple depths from the nesting of each closure.
    let mut depth: BTreeMap<((usize, usize), Page), i64> = BTreeMap::new();
    for (page, i) in [(Page::Top, 0), (Page::Bottom, r - 1)] {
        let mut ends: Vec<(&BigRational, usize)> = Vec::new();
        for (s, st) in strands.iter().enumerate() {
            let on_page = match st.kind {
                Kind::Cross => true,
                Kind::Top => page == Page::Top,
                Kind::Bottom => page == Page::Bottom,
            };
            if on_page {
                ends.push((pos[i][s].as_ref().expect("closure strand positioned"), s));
            }
        }
        ends.sort();
        let mut stack: Vec<((usize, usize), i64)> = Vec::new();
        for (_, s) in ends {
            let arc = strands[s].edge;
            if stack.last().is_some_and(|top| top.0 == arc) {
                let (_, inner) = stack.pop().expect("nonempty");
                let dd = inner + 1;
                depth.insert((arc, page), dd);
                if let Some(parent) = stack.last_mut() {
                    parent.1 = parent.1.max(dd);
                }
            } else if depth.contains_key(&(arc, page)) || stack.iter().any(|x| x.0 == arc) {
                return Err(RouteError::Layout("page arcs are not nested"));
            } else {
                stack.push((arc, 0));
            }
        }
        if !stack.is_empty() {
            return Err(RouteError::Layout("page arc with a single end"));
        }
    }

    let router = Router {
        r,
        strands,
        part,
        pos,
        slope,
        y_mid,
        y_lo,
        y_hi,
        depth,
        vpts: &vpts,
        event_vertex: event_vertex.clone(),
    };

    // Assemble every edge from its arcs.
    let event_at: BTreeMap<SpineCoord, usize> = gs.coords.iter().enumerate().map(|(t, c)| (*c, t)).collect();
    let mut arcs_of: BTreeMap<(usize, usize), Vec<&crate::book::Arc>> = BTreeMap::new();
    for a in &be.arcs {
        arcs_of.entry(a.edge).or_default().push(a);
    }
    let strand_at = |coord: &SpineCoord, edge: (usize, usize)| -> Result<usize, RouteError> {
        let t = event_at.get(coord).ok_or(RouteError::Layout("arc end is not a spine event"))?;
        index.get(&(*t, edge)).copied().ok_or(RouteError::Layout("arc end has no strand"))
    };
    for &(u, v) in graph.edges() {
        let arcs = arcs_of.get(&(u, v)).ok_or(RouteError::Book(BookError::EdgeCoverMismatch((u, v))))?;
        let mut path: Vec<Pt> = match arcs.as_slice() {
            [a] => {
                let first = router.leg(strand_at(&a.from, a.edge)?, a.page);
                let mut second = router.leg(strand_at(&a.to, a.edge)?, a.page);
                second.reverse();
                [first, second].concat()
            }
            [a, b] => {
                let (top, bottom) = if a.page == Page::Top { (a, b) } else { (b, a) };
                let end = |arc: &crate::book::Arc| if arc.from.is_integer() { arc.from } else { arc.to };
                let cross = if top.from.is_integer() { top.to } else { top.from };
                let mut out = router.leg(strand_at(&end(top), top.edge)?, Page::Top);
                out.extend(router.through(strand_at(&cross, top.edge)?));
                let mut back = router.leg(strand_at(&end(bottom), bottom.edge)?, Page::Bottom);
                back.reverse();
                out.extend(back);
                out
            }
            _ => return Err(RouteError::Book(BookError::EdgeSplitTwice((u, v)))),
        };
        if path.first() != Some(&vpts[u]) {
            path.reverse();
        }
        let t = &config.delta.t;
        let poly: Vec<RationalPoint> = path.into_iter().map(|(x, y)| RationalPoint::new(&x - t * &y, y)).collect();
        drawing.edges.push(DrawnEdge { u, v, poly: simplify(poly) });
    }
    drawing.meta.bends_per_edge = drawing.edges.iter().map(|e| crate::geomcheck::polyline_bends(&e.poly)).collect();
    drawing.layout = Some(layout);
    Ok(drawing)
}

fn slope_if(sheared: bool, slope: &BigRational) -> BigRational {
    if sheared {
        slope.clone()
    } else {
        BigRational::zero()
    }
}

/// Interval `(L_i, R_i)` for every part. Nonempty parts hug their points;
/// empty parts share the gap between their nonempty neighbors, or get unit
/// intervals beyond the outermost points.
fn interval_bounds(
    partition: &ChainPartition,
    vpts: &[Pt],
    rank: &[usize],
) -> Vec<(BigRational, BigRational)> {
    let r = partition.r();
    let span: Vec<Option<(BigRational, BigRational)>> = partition
        .parts
        .iter()
        .map(|p| {
            let lo = p.iter().min_by_key(|&&v| rank[v])?;
            let hi = p.iter().max_by_key(|&&v| rank[v])?;
            Some((vpts[*lo].0.clone(), vpts[*hi].0.clone()))
        })
        .collect();
    let nonempty: Vec<usize> = (0..r).filter(|&i| span[i].is_some()).collect();
    let mut bounds: Vec<Option<(BigRational, BigRational)>> = vec![None; r];
    let first = nonempty[0];
    let last = *nonempty.last().expect("nonempty part");
    let (flo, _) = span[first].clone().expect("span");
    for (i, b) in bounds.iter_mut().enumerate().take(first) {
        let k = rat((first - i) as i64);
        *b = Some((&flo - rat(2) * &k, &flo - rat(2) * &k + rat(1)));
    }
    let (_, lhi) = span[last].clone().expect("span");
    for (i, b) in bounds.iter_mut().enumerate().skip(last + 1) {
        let k = rat((i - last) as i64);
        *b = Some((&lhi + rat(2) * &k - rat(1), &lhi + rat(2) * &k));
    }
    let mut left: Vec<BigRational> = vec![BigRational::zero(); r];
    let mut right: Vec<BigRational> = vec![BigRational::zero(); r];
    left[first] = &flo - half();
    right[last] = &lhi + half();
    for w in nonempty.windows(2) {
        let (a, b) = (w[0], w[1]);
        let hi_a = span[a].as_ref().expect("span").1.clone();
        let lo_b = span[b].as_ref().expect("span").0.clone();
        let gap = &lo_b - &hi_a;
        let e = b - a - 1;
        if e == 0 {
            right[a] = &hi_a + &gap / rat(4);
            left[b] = &lo_b - &gap / rat(4);
        } else {
            let q = &gap / rat(2 * e as i64 + 2);
            let quarter = &q / rat(4);
            right[a] = &hi_a + &q * half();
            for j in 1..=e {
                let start = &hi_a + &q * rat(2 * j as i64 - 1);
                bounds[a + j] = Some((&start + &quarter, &start + &q - &quarter));
            }
            left[b] = &lo_b - &q * half();
        }
    }
    for &i in &nonempty {
        bounds[i] = Some((left[i].clone(), right[i].clone()));
    }
    bounds.into_iter().map(|b| b.expect("every interval assigned")).collect()
}

/// Drops repeated points and interior points where the polyline continues
/// straight on.
fn simplify(poly: Vec<RationalPoint>) -> Vec<RationalPoint> {
    let mut out: Vec<RationalPoint> = Vec::with_capacity(poly.len());
    for p in poly {
        if out.last() == Some(&p) {
            continue;
        }
        while out.len() >= 2 {
            let (a, b) = (&out[out.len() - 2], &out[out.len() - 1]);
            let forward = (&b.x - &a.x) * (&p.x - &b.x) + (&b.y - &a.y) * (&p.y - &b.y);
            if orient(a, b, &p) == Orientation::Collinear && forward.is_positive() {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

/// Spine position (1-based) of each vertex, listed in `δ` order.
fn alpha_of(order: &[usize], be: &BookEmbedding) -> Vec<usize> {
    let pos = be.positions();
    order.iter().map(|&v| pos[v] + 1).collect()
}

/// Fixed-mapping pipeline: a book embedding with uniformly random spine
/// order, the greedy alternating runs of the induced permutation, then
/// [`route`].
pub fn draw_fixed(graph: &PlanarGraph, config: &PointConfig, seed: u64) -> Result<Drawing, RouteError> {
    if config.gamma.len() != graph.n() {
        return Err(RouteError::MappingMismatch("mapping and graph differ in size"));
    }
    let be = book_embed(graph, seed)?;
    let order = config.delta_order();
    let runs = alternating_runs(&alpha_of(&order, &be))?;
    let partition = ChainPartition::new(runs.parts.iter().map(|p| p.iter().map(|&i| order[i]).collect()).collect());
    let mut d = route(graph, &be, config, &partition)?;
    d.meta.seed = Some(seed);
    d.meta.provenance = "draw_fixed".into();
    Ok(d)
}

/// Result of [`simul_embed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simultaneous {
    /// The common mapping: `gamma[v]` is a point index.
    pub gamma: Vec<usize>,
    pub drawings: Vec<Drawing>,
    /// Minimum common chain cover of the spine orders, before empty parts
    /// are interleaved.
    pub cover: Vec<Vec<usize>>,
}

/// Draws all graphs on `points` with one common vertex mapping.
///
/// Graph `j` is book-embedded with seed `derive_seed(seed, j)`. Vertices in
/// chain-major, spine-minor order take the points in `δ` order, and every
/// drawing is routed with the cover interleaved with empty parts.
pub fn simul_embed(graphs: &[PlanarGraph], points: &PointSet, seed: u64) -> Result<Simultaneous, RouteError> {
    let n = points.len();
    if graphs.iter().any(|g| g.n() != n) {
        return Err(RouteError::SizeMismatch);
    }
    let mut books = Vec::with_capacity(graphs.len());
    for (j, g) in graphs.iter().enumerate() {
        books.push(book_embed(g, derive_seed(seed, j as u64))?);
    }
    // Name every vertex by its position on the first spine, so the first
    // spine becomes the identity and chains are increasing in all spines.
    let first = books.first().map(|b| b.positions()).unwrap_or_default();
    let spines: Vec<Vec<usize>> = books.iter().map(|b| b.spine.iter().map(|&v| first[v]).collect()).collect();
    let by_rank: Vec<usize> = books.first().map(|b| b.spine.clone()).unwrap_or_default();
    let cover: Vec<Vec<usize>> = min_common_chain_cover(&spines)?
        .into_iter()
        .map(|c| c.into_iter().map(|x| by_rank[x]).collect())
        .collect();
    let identity = PointConfig::identity(points.clone());
    let point_order = identity.delta_order();
    let mut gamma = vec![0; n];
    for (k, &v) in cover.iter().flatten().enumerate() {
        gamma[v] = point_order[k];
    }
    let config = PointConfig::with_direction(points.clone(), gamma.clone(), identity.delta)?;
    let partition = interleave_empty(cover.clone());
    let mut drawings = Vec::with_capacity(graphs.len());
    for (j, (g, be)) in graphs.iter().zip(&books).enumerate() {
        let mut d = route(g, be, &config, &partition)?;
        d.meta.seed = Some(derive_seed(seed, j as u64));
        d.meta.provenance = "simul_embed".into();
        drawings.push(d);
    }
    Ok(Simultaneous { gamma, drawings, cover })
}
