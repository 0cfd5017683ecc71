//! Exact geometric predicates and drawing verification.
//!
//! Orientation tests first run in f64 interval arithmetic with outward
//! rounding and fall back to exact rational arithmetic whenever the sign is
//! not certain, so every answer is exact.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::graph::PlanarGraph;
use crate::route::Drawing;

/// Point with exact rational coordinates (always in lowest terms).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    fn sign(self) -> i8 {
        match self {
            Orientation::Left => 1,
            Orientation::Right => -1,
            Orientation::Collinear => 0,
        }
    }
}

fn orientation_of(sign: Ordering) -> Orientation {
    match sign {
        Ordering::Greater => Orientation::Left,
        Ordering::Less => Orientation::Right,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// Sign of the cross product (b − a) × (c − a).
pub fn orient(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Orientation {
    let lhs = (&b.x - &a.x) * (&c.y - &a.y);
    let rhs = (&b.y - &a.y) * (&c.x - &a.x);
    orientation_of(lhs.cmp(&rhs))
}

/// True iff the closed segments `s1` and `s2` share a point other than `sharing`.
pub fn segments_intersect(
    s1: (&RationalPoint, &RationalPoint),
    s2: (&RationalPoint, &RationalPoint),
    sharing: Option<&RationalPoint>,
) -> bool {
    let (p1, p2) = s1;
    let (q1, q2) = s2;
    let d = [orient(q1, q2, p1), orient(q1, q2, p2), orient(p1, p2, q1), orient(p1, p2, q2)];
    intersect_with_signs(d.map(Orientation::sign), [p1, p2, q1, q2], sharing)
}

fn intersect_with_signs(
    d: [i8; 4],
    pts: [&RationalPoint; 4],
    sharing: Option<&RationalPoint>,
) -> bool {
    let [p1, p2, q1, q2] = pts;
    if d[0] * d[1] > 0 || d[2] * d[3] > 0 {
        return false;
    }
    if d[0] == 0 && d[1] == 0 {
        // Collinear: intersect the two ranges in lexicographic order.
        let (plo, phi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let (qlo, qhi) = if q1 <= q2 { (q1, q2) } else { (q2, q1) };
        let lo = if plo >= qlo { plo } else { qlo };
        let hi = if phi <= qhi { phi } else { qhi };
        return match lo.cmp(hi) {
            Ordering::Greater => false,
            Ordering::Equal => sharing != Some(lo),
            Ordering::Less => true,
        };
    }
    let touch = if d[0] == 0 {
        p1
    } else if d[1] == 0 {
        p2
    } else if d[2] == 0 {
        q1
    } else if d[3] == 0 {
        q2
    } else {
        return true;
    };
    sharing != Some(touch)
}

/// Number of genuine direction changes along a polyline.
///
/// Collinear continuations are not bends; a reversal is.
pub fn polyline_bends(poly: &[RationalPoint]) -> usize {
    let mut bends = 0;
    for w in poly.windows(3) {
        match orient(&w[0], &w[1], &w[2]) {
            Orientation::Collinear => {
                let dot = (&w[1].x - &w[0].x) * (&w[2].x - &w[1].x)
                    + (&w[1].y - &w[0].y) * (&w[2].y - &w[1].y);
                if dot.is_negative() {
                    bends += 1;
                }
            }
            _ => bends += 1,
        }
    }
    bends
}

/// Per-edge bend counts and their total β.
pub fn count_bends(drawing: &Drawing) -> (Vec<usize>, usize) {
    let per: Vec<usize> = drawing.edges.iter().map(|e| polyline_bends(&e.poly)).collect();
    let total = per.iter().sum();
    (per, total)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("edge {edge} has a malformed polyline: {reason}")]
    MalformedPolyline { edge: usize, reason: &'static str },
}

/// One failed exactness check found by [`verify_drawing`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    /// Segment `a.1` of edge `a.0` meets segment `b.1` of edge `b.0`.
    Crossing { a: (usize, usize), b: (usize, usize) },
    /// The point of vertex `vertex` lies on segment `seg.1` of edge `seg.0`.
    VertexOnEdge { vertex: usize, seg: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub planar: bool,
    pub violations: Vec<Violation>,
    pub mapping_ok: bool,
    pub bends: Vec<usize>,
    pub beta: usize,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.planar && self.mapping_ok
    }

    pub fn max_bends(&self) -> usize {
        self.bends.iter().copied().max().unwrap_or(0)
    }
}

/// Closed f64 interval guaranteed to contain an exact value.
#[derive(Clone, Copy, Debug)]
struct Iv {
    lo: f64,
    hi: f64,
}

impl Iv {
    fn of(q: &BigRational) -> Iv {
        match q.to_f64() {
            Some(f) if f.is_finite() => Iv { lo: f.next_down(), hi: f.next_up() },
            _ => Iv { lo: f64::NEG_INFINITY, hi: f64::INFINITY },
        }
    }

    fn sub(self, o: Iv) -> Iv {
        Iv { lo: (self.lo - o.hi).next_down(), hi: (self.hi - o.lo).next_up() }
    }

    fn mul(self, o: Iv) -> Iv {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in c {
            if v.is_nan() {
                return Iv { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
            }
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Iv { lo: lo.next_down(), hi: hi.next_up() }
    }
}

/// A point together with an enclosing f64 box.
struct FPoint<'a> {
    p: &'a RationalPoint,
    x: Iv,
    y: Iv,
}

impl<'a> FPoint<'a> {
    fn new(p: &'a RationalPoint) -> Self {
        FPoint { p, x: Iv::of(&p.x), y: Iv::of(&p.y) }
    }
}

fn orient_filtered(a: &FPoint, b: &FPoint, c: &FPoint) -> i8 {
    let l = b.x.sub(a.x).mul(c.y.sub(a.y));
    let r = b.y.sub(a.y).mul(c.x.sub(a.x));
    let diff = l.sub(r);
    if diff.lo > 0.0 {
        1
    } else if diff.hi < 0.0 {
        -1
    } else {
        orient(a.p, b.p, c.p).sign()
    }
}

fn on_segment(p: &FPoint, a: &FPoint, b: &FPoint) -> bool {
    if orient_filtered(a, b, p) != 0 {
        return false;
    }
    let (lo, hi) = if a.p <= b.p { (a.p, b.p) } else { (b.p, a.p) };
    lo <= p.p && p.p <= hi
}

/// Item of the bounding-box sweep: a segment or a lone vertex point.
#[derive(Clone, Copy)]
enum Item {
    Seg { edge: usize, seg: usize },
    Vertex(usize),
}

/// Exact check of a drawing against its graph and the intended vertex points.
///
/// Every pair of segments from distinct edges and every pair of non-adjacent
/// segments of one edge is tested; the only contact allowed between distinct
/// edges is at the point of a shared graph vertex. A vertex point lying on an
/// edge it does not terminate is also a violation.
pub fn verify_drawing(
    drawing: &Drawing,
    graph: &PlanarGraph,
    gamma: &[RationalPoint],
) -> Result<VerifyReport, GeomError> {
    for (i, e) in drawing.edges.iter().enumerate() {
        if e.poly.len() < 2 {
            return Err(GeomError::MalformedPolyline { edge: i, reason: "fewer than two points" });
        }
        if e.poly.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeomError::MalformedPolyline { edge: i, reason: "repeated consecutive point" });
        }
        if e.u >= drawing.vertex_points.len() || e.v >= drawing.vertex_points.len() {
            return Err(GeomError::MalformedPolyline { edge: i, reason: "endpoint label out of range" });
        }
    }

    let (bends, beta) = count_bends(drawing);
    let mapping_ok = mapping_fidelity(drawing, graph, gamma);

    let vpts: Vec<FPoint> = drawing.vertex_points.iter().map(FPoint::new).collect();
    let epts: Vec<Vec<FPoint>> =
        drawing.edges.iter().map(|e| e.poly.iter().map(FPoint::new).collect()).collect();

    let mut items: Vec<(f64, f64, f64, f64, Item)> = Vec::new();
    for (ei, pts) in epts.iter().enumerate() {
        for si in 0..pts.len() - 1 {
            let (a, b) = (&pts[si], &pts[si + 1]);
            items.push((
                a.x.lo.min(b.x.lo),
                a.x.hi.max(b.x.hi),
                a.y.lo.min(b.y.lo),
                a.y.hi.max(b.y.hi),
                Item::Seg { edge: ei, seg: si },
            ));
        }
    }
    for (v, p) in vpts.iter().enumerate() {
        items.push((p.x.lo, p.x.hi, p.y.lo, p.y.hi, Item::Vertex(v)));
    }
    items.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut violations = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    for i in 0..items.len() {
        let (xlo, _, ylo, yhi, item) = items[i];
        active.retain(|&j| items[j].1 >= xlo);
        for &j in &active {
            let (_, _, ylo2, yhi2, other) = items[j];
            if yhi2 < ylo || yhi < ylo2 {
                continue;
            }
            if let Some(v) = check_pair(drawing, &vpts, &epts, item, other) {
                violations.push(v);
            }
        }
        active.push(i);
    }
    violations.sort();
    violations.dedup();

    Ok(VerifyReport { planar: violations.is_empty(), violations, mapping_ok, bends, beta })
}

fn mapping_fidelity(drawing: &Drawing, graph: &PlanarGraph, gamma: &[RationalPoint]) -> bool {
    if drawing.vertex_points.len() != graph.n() || gamma.len() != graph.n() {
        return false;
    }
    if drawing.vertex_points.iter().zip(gamma).any(|(a, b)| a != b) {
        return false;
    }
    let mut drawn: Vec<(usize, usize)> =
        drawing.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
    drawn.sort_unstable();
    if drawn.as_slice() != graph.edges() {
        return false;
    }
    drawing.edges.iter().all(|e| {
        e.poly.first() == Some(&gamma[e.u]) && e.poly.last() == Some(&gamma[e.v])
    })
}

fn check_pair(
    drawing: &Drawing,
    vpts: &[FPoint],
    epts: &[Vec<FPoint>],
    a: Item,
    b: Item,
) -> Option<Violation> {
    match (a, b) {
        (Item::Vertex(_), Item::Vertex(_)) => None,
        (Item::Vertex(v), Item::Seg { edge, seg }) | (Item::Seg { edge, seg }, Item::Vertex(v)) => {
            let e = &drawing.edges[edge];
            let pts = &epts[edge];
            let (s0, s1) = (&pts[seg], &pts[seg + 1]);
            let p = &vpts[v];
            let is_end = (v == e.u && seg == 0 && s0.p == p.p)
                || (v == e.v && seg + 1 == pts.len() - 1 && s1.p == p.p);
            if !is_end && on_segment(p, s0, s1) {
                Some(Violation::VertexOnEdge { vertex: v, seg: (edge, seg) })
            } else {
                None
            }
        }
        (Item::Seg { edge: ea, seg: sa }, Item::Seg { edge: eb, seg: sb }) => {
            let ((ea, sa), (eb, sb)) = if (ea, sa) <= (eb, sb) {
                ((ea, sa), (eb, sb))
            } else {
                ((eb, sb), (ea, sa))
            };
            let (p1, p2) = (&epts[ea][sa], &epts[ea][sa + 1]);
            let (q1, q2) = (&epts[eb][sb], &epts[eb][sb + 1]);
            let sharing = if ea == eb {
                if sb == sa + 1 {
                    Some(p2.p)
                } else {
                    None
                }
            } else {
                shared_vertex_point(drawing, ea, eb).filter(|&w| {
                    (p1.p == w || p2.p == w) && (q1.p == w || q2.p == w)
                })
            };
            let d = [
                orient_filtered(q1, q2, p1),
                orient_filtered(q1, q2, p2),
                orient_filtered(p1, p2, q1),
                orient_filtered(p1, p2, q2),
            ];
            if intersect_with_signs(d, [p1.p, p2.p, q1.p, q2.p], sharing) {
                Some(Violation::Crossing { a: (ea, sa), b: (eb, sb) })
            } else {
                None
            }
        }
    }
}

fn shared_vertex_point(drawing: &Drawing, ea: usize, eb: usize) -> Option<&RationalPoint> {
    let a = &drawing.edges[ea];
    let b = &drawing.edges[eb];
    let w = if a.u == b.u || a.u == b.v {
        a.u
    } else if a.v == b.u || a.v == b.v {
        a.v
    } else {
        return None;
    };
    Some(&drawing.vertex_points[w])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Left);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), Orientation::Collinear);
        assert_eq!(orient(&p(0, 0), &p(1, 1), &p(1, 0)), Orientation::Right);
    }

    #[test]
    fn basic_intersections() {
        assert!(segments_intersect((&p(0, 0), &p(2, 2)), (&p(0, 2), &p(2, 0)), None));
        assert!(!segments_intersect((&p(0, 0), &p(1, 0)), (&p(2, 0), &p(3, 0)), None));
        assert!(!segments_intersect((&p(0, 0), &p(1, 1)), (&p(1, 1), &p(2, 0)), Some(&p(1, 1))));
    }

    #[test]
    fn filter_agrees_with_exact_near_degeneracy() {
        let big = BigRational::new(BigInt::from(10i64.pow(17) + 1), BigInt::from(10i64.pow(17)));
        let a = RationalPoint::new(BigRational::zero(), BigRational::zero());
        let b = RationalPoint::new(big.clone(), big.clone());
        let c = RationalPoint::new(big.clone() * BigRational::from_integer(2.into()), big * BigRational::from_integer(2.into()));
        let (fa, fb, fc) = (FPoint::new(&a), FPoint::new(&b), FPoint::new(&c));
        assert_eq!(orient_filtered(&fa, &fb, &fc), 0);
        assert_eq!(orient(&a, &b, &c), Orientation::Collinear);
    }

    #[test]
    fn bends_merge_collinear_runs() {
        assert_eq!(polyline_bends(&[p(0, 0), p(1, 0)]), 0);
        assert_eq!(polyline_bends(&[p(0, 0), p(1, 0), p(1, 1)]), 1);
        assert_eq!(polyline_bends(&[p(0, 0), p(1, 0), p(2, 0), p(2, 1)]), 1);
        assert_eq!(polyline_bends(&[p(0, 0), p(2, 0), p(1, 0)]), 1);
    }
}
