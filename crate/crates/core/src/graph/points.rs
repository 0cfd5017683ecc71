use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng as _;

use super::GraphError;
use crate::geomcheck::{orient, Orientation, RationalPoint};
use crate::rng;

/// Pairwise distinct points with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<RationalPoint>,
    convex: bool,
}

impl PointSet {
    /// Checks distinctness and, when `convex` is set, convex position.
    pub fn new(points: Vec<RationalPoint>, convex: bool) -> Result<Self, GraphError> {
        let distinct: BTreeSet<&RationalPoint> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(GraphError::DuplicatePoint);
        }
        if convex && convex_hull_size(&points) != points.len() {
            return Err(GraphError::NotConvex);
        }
        Ok(PointSet { points, convex })
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }
}

/// Number of vertices of the convex hull (collinear boundary points excluded).
pub fn convex_hull_size(points: &[RationalPoint]) -> usize {
    if points.len() <= 2 {
        return points.len();
    }
    let mut p: Vec<&RationalPoint> = points.iter().collect();
    p.sort();
    p.dedup();
    let mut hull: Vec<&RationalPoint> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Vec<&RationalPoint> = if pass == 0 { p.clone() } else { p.iter().rev().copied().collect() };
        for q in iter {
            while hull.len() >= start + 2
                && orient(hull[hull.len() - 2], hull[hull.len() - 1], q) != Orientation::Left
            {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    hull.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointShape {
    /// Points on the parabola y = x² at distinct random integer abscissae.
    Convex,
    /// Distinct random cells of an integer grid.
    Grid,
    /// Random rationals with denominator 1000, rejecting duplicates.
    Random,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Seeded point set of `n` distinct points.
pub fn gen_points(n: usize, shape: PointShape, seed: u64) -> PointSet {
    let mut r = rng::rng(seed);
    let pts: Vec<RationalPoint> = match shape {
        PointShape::Convex => {
            let range = (8 * n.max(1)) as i64;
            let mut xs: BTreeSet<i64> = BTreeSet::new();
            while xs.len() < n {
                xs.insert(r.random_range(0..range));
            }
            let mut xs: Vec<i64> = xs.into_iter().collect();
            let perm = rng::permutation(n, &mut r);
            xs = perm.iter().map(|&i| xs[i]).collect();
            xs.into_iter().map(|x| RationalPoint::new(int(x), int(x * x))).collect()
        }
        PointShape::Grid => {
            let mut side = 1usize;
            while side * side < n {
                side += 1;
            }
            side *= 2;
            let cells = rng::permutation(side * side, &mut r);
            cells[..n]
                .iter()
                .map(|&c| RationalPoint::from_ints((c % side) as i64, (c / side) as i64))
                .collect()
        }
        PointShape::Random => {
            let mut seen: BTreeSet<RationalPoint> = BTreeSet::new();
            let mut out = Vec::with_capacity(n);
            let den = BigInt::from(1000);
            while out.len() < n {
                let x = BigRational::new(BigInt::from(r.random_range(0..1_000_000i64)), den.clone());
                let y = BigRational::new(BigInt::from(r.random_range(0..1_000_000i64)), den.clone());
                let p = RationalPoint::new(x, y);
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
            out
        }
    };
    PointSet::new(pts, shape == PointShape::Convex).expect("generated points are valid")
}
