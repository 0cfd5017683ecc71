//! Order-theoretic machinery: generic directions, alternating runs and
//! minimum covers by chains common to several permutations.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geomcheck::RationalPoint;
use crate::graph::PointSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("sequence is not a permutation")]
    NotAPermutation,
    #[error("permutations have different lengths")]
    LengthMismatch,
    #[error("instance of size {0} is too large for exhaustive search")]
    TooLarge(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
}

/// The direction `δ = (1, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Direction {
    pub t: BigRational,
}

impl Direction {
    pub fn dot(&self, p: &RationalPoint) -> BigRational {
        &p.x + &self.t * &p.y
    }
}

/// Smallest integer `t ≥ 0` such that `δ = (1, t)` separates every pair of
/// points. A pair ties only for one value of `t`, so some integer up to the
/// number of pairs works.
pub fn generic_direction(points: &PointSet) -> Direction {
    let pts = points.points();
    let mut forbidden: BTreeSet<BigInt> = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let dy = &p.y - &q.y;
            if dy.is_zero() {
                continue;
            }
            let t = -(&p.x - &q.x) / dy;
            if t.is_integer() && !t.is_negative() {
                forbidden.insert(t.to_integer());
            }
        }
    }
    let mut t = BigInt::zero();
    while forbidden.contains(&t) {
        t += 1;
    }
    Direction { t: BigRational::from_integer(t) }
}

/// Whether part `i` (0-based) must be increasing (`≺`) or decreasing (`≻`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Inc,
    Dec,
}

impl Flag {
    pub fn of_part(i: usize) -> Flag {
        if i.is_multiple_of(2) {
            Flag::Inc
        } else {
            Flag::Dec
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::Inc => "inc",
            Flag::Dec => "dec",
        }
    }
}

/// Ordered parts `V_1..V_r`; empty parts are allowed. Flags are positional:
/// the first part is increasing, the second decreasing, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainPartition {
    pub parts: Vec<Vec<usize>>,
}

impl ChainPartition {
    pub fn new(parts: Vec<Vec<usize>>) -> Self {
        ChainPartition { parts }
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn flags(&self) -> Vec<Flag> {
        (0..self.parts.len()).map(Flag::of_part).collect()
    }

    /// Every part as a singleton, in the order given.
    pub fn singletons(order: &[usize]) -> Self {
        ChainPartition { parts: order.iter().map(|&v| vec![v]).collect() }
    }

    /// Checks the partition against a vertex order along `δ` (`rank[v]` is the
    /// rank of `γ(v)`) and spine positions `pos`: parts cover all vertices,
    /// occupy consecutive rank blocks, and are chains for their flags.
    pub fn check(&self, rank: &[usize], pos: &[usize]) -> Result<(), ChainError> {
        let n = rank.len();
        if pos.len() != n {
            return Err(ChainError::LengthMismatch);
        }
        let mut seen = vec![false; n];
        let mut next_rank = 0;
        for (i, part) in self.parts.iter().enumerate() {
            let mut members: Vec<usize> = Vec::with_capacity(part.len());
            for &v in part {
                if v >= n || seen[v] {
                    return Err(ChainError::InvalidPartition("parts do not partition the vertices"));
                }
                seen[v] = true;
                members.push(v);
            }
            members.sort_by_key(|&v| rank[v]);
            for (k, &v) in members.iter().enumerate() {
                if rank[v] != next_rank + k {
                    return Err(ChainError::InvalidPartition("part is not contiguous along the direction"));
                }
            }
            next_rank += members.len();
            let ok = members.windows(2).all(|w| match Flag::of_part(i) {
                Flag::Inc => pos[w[0]] < pos[w[1]],
                Flag::Dec => pos[w[0]] > pos[w[1]],
            });
            if !ok {
                return Err(ChainError::InvalidPartition("part is not a chain for its flag"));
            }
        }
        if next_rank != n {
            return Err(ChainError::InvalidPartition("parts do not partition the vertices"));
        }
        Ok(())
    }
}

fn check_permutation(seq: &[usize], base: usize) -> Result<(), ChainError> {
    let n = seq.len();
    let mut seen = vec![false; n];
    for &x in seq {
        if x < base || x - base >= n || seen[x - base] {
            return Err(ChainError::NotAPermutation);
        }
        seen[x - base] = true;
    }
    Ok(())
}

/// Greedy alternating runs of a permutation `α` of `1..=n`: the longest
/// increasing prefix, then the longest decreasing run after it, and so on.
/// Parts hold 0-based indices into `α`.
pub fn alternating_runs(alpha: &[usize]) -> Result<ChainPartition, ChainError> {
    check_permutation(alpha, 1)?;
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < alpha.len() {
        let inc = parts.len().is_multiple_of(2);
        let mut part = vec![i];
        i += 1;
        while i < alpha.len() && (alpha[i] > alpha[i - 1]) == inc {
            part.push(i);
            i += 1;
        }
        parts.push(part);
    }
    Ok(ChainPartition { parts })
}

/// Number of interior local extrema of a sequence.
pub fn interior_extrema(alpha: &[usize]) -> usize {
    alpha.windows(3).filter(|w| (w[1] > w[0]) == (w[1] > w[2])).count()
}

/// Longest strictly decreasing subsequence, by patience sorting.
pub fn longest_decreasing_subsequence(seq: &[usize]) -> usize {
    // piles[k] is the largest possible last element of a decreasing
    // subsequence of length k + 1; the piles are non-increasing.
    let mut piles: Vec<usize> = Vec::new();
    for &x in seq {
        let k = piles.partition_point(|&p| p > x);
        if k == piles.len() {
            piles.push(x);
        } else {
            piles[k] = x;
        }
    }
    piles.len()
}

fn positions(perms: &[Vec<usize>]) -> Result<(usize, Vec<Vec<usize>>), ChainError> {
    let n = perms.first().map_or(0, Vec::len);
    let mut out = Vec::with_capacity(perms.len());
    for p in perms {
        if p.len() != n {
            return Err(ChainError::LengthMismatch);
        }
        check_permutation(p, 0)?;
        let mut pos = vec![0; n];
        for (i, &x) in p.iter().enumerate() {
            pos[x] = i;
        }
        out.push(pos);
    }
    Ok((n, out))
}

/// `x` and `y` form an increasing pair in every permutation.
fn precedes(pos: &[Vec<usize>], x: usize, y: usize) -> bool {
    x < y && pos.iter().all(|p| p[x] < p[y])
}

/// Minimum partition of the values `0..n` into sets that form an increasing
/// subsequence of every permutation.
///
/// Dilworth's theorem via maximum bipartite matching (Hopcroft–Karp) on the
/// dominance order: `x` below `y` iff `x < y` and `x` comes first everywhere. Each part is listed in increasing order; parts are
/// sorted by their first element's position in the first permutation.
pub fn min_common_chain_cover(perms: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, ChainError> {
    let (n, pos) = positions(perms)?;
    if perms.is_empty() {
        return Ok(Vec::new());
    }
    let first = &perms[0];
    // Successor lists in first-permutation order, which keeps the matching
    // deterministic.
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &x) in first.iter().enumerate() {
        for &y in &first[i + 1..] {
            if precedes(&pos, x, y) {
                succ[x].push(y);
            }
        }
    }
    let next = hopcroft_karp(n, &succ);
    let mut has_pred = vec![false; n];
    for &y in next.iter().flatten() {
        has_pred[y] = true;
    }
    let mut parts = Vec::new();
    for &x in first {
        if has_pred[x] {
            continue;
        }
        let mut chain = vec![x];
        let mut cur = x;
        while let Some(y) = next[cur] {
            chain.push(y);
            cur = y;
        }
        parts.push(chain);
    }
    Ok(parts)
}

/// Maximum matching from left copies to right copies of `0..n`; returns the
/// right partner of each left vertex.
fn hopcroft_karp(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let mut left: Vec<Option<usize>> = vec![None; n];
    let mut right: Vec<Option<usize>> = vec![None; n];
    let mut dist = vec![INF; n];
    loop {
        // Layer the free left vertices and everything reachable by
        // alternating paths.
        let mut queue = VecDeque::new();
        for u in 0..n {
            if left[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match right[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; n];
        for u in 0..n {
            if left[u].is_none() {
                augment(u, adj, &mut left, &mut right, &mut dist, &mut it);
            }
        }
    }
    left
}

/// Iterative layered DFS for one augmenting path from `root`.
fn augment(
    root: usize,
    adj: &[Vec<usize>],
    left: &mut [Option<usize>],
    right: &mut [Option<usize>],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if it[u] == adj[u].len() {
            dist[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = adj[u][it[u]];
        match right[v] {
            None => {
                // Flip the path: each stacked left vertex takes the right
                // vertex it is currently pointing at.
                for &x in stack.iter().rev() {
                    let y = adj[x][it[x]];
                    right[y] = Some(x);
                    left[x] = Some(y);
                }
                return true;
            }
            Some(w) if dist[w] == dist[u] + 1 => stack.push(w),
            _ => it[u] += 1,
        }
    }
    false
}

/// Exact minimum common chain cover by enumerating all set partitions.
pub fn brute_force_cover(perms: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, ChainError> {
    let (n, pos) = positions(perms)?;
    if n > 8 {
        return Err(ChainError::TooLarge(n));
    }
    let comparable = |x: usize, y: usize| precedes(&pos, x, y) || precedes(&pos, y, x);
    // Restricted growth strings enumerate each set partition once.
    let mut block = vec![0usize; n];
    let mut best: Option<Vec<usize>> = None;
    let mut best_count = usize::MAX;
    loop {
        let count = block.iter().max().map_or(0, |m| m + 1);
        if count < best_count {
            let ok = (0..n).all(|x| (x + 1..n).all(|y| block[x] != block[y] || comparable(x, y)));
            if ok {
                best_count = count;
                best = Some(block.clone());
            }
        }
        // Next restricted growth string.
        let mut i = n;
        loop {
            if i <= 1 {
                let labels = best.unwrap_or_default();
                return Ok(blocks_of(&labels, best_count.min(n), &pos));
            }
            i -= 1;
            let max_prefix = block[..i].iter().max().copied().unwrap_or(0);
            if block[i] <= max_prefix {
                block[i] += 1;
                for b in &mut block[i + 1..] {
                    *b = 0;
                }
                break;
            }
        }
    }
}

fn blocks_of(labels: &[usize], count: usize, pos: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); count];
    for (x, &b) in labels.iter().enumerate() {
        parts[b].push(x);
    }
    for p in &mut parts {
        p.sort_by_key(|&x| pos[0][x]);
    }
    parts.sort_by_key(|p| pos[0][p[0]]);
    parts
}

/// Inserts an empty decreasing part after every part.
pub fn interleave_empty(parts: Vec<Vec<usize>>) -> ChainPartition {
    let mut out = Vec::with_capacity(2 * parts.len());
    for p in parts {
        out.push(p);
        out.push(Vec::new());
    }
    ChainPartition { parts: out }
}
