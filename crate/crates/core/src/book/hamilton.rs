//! Hamiltonian cycle search by depth-first extension of a path, pruned by
//! vertex degrees, forced moves and 2-connectivity of the unvisited part.

use alloc::vec;
use alloc::vec::Vec;

use rand::RngCore;

use crate::rng;

const ATTEMPTS: u32 = 64;
const MAX_BUDGET: u64 = 4_000_000;

/// Hamiltonian cycle through all vertices of `adj`, starting at vertex 0.
///
/// Edges for which `preferred` holds are tried first. The first attempt
/// breaks remaining ties by label; later attempts use seeded random ties and
/// geometrically growing node budgets.
pub(crate) fn hamiltonian_cycle(
    adj: &[Vec<usize>],
    preferred: &dyn Fn(usize, usize) -> bool,
    seed: u64,
) -> Option<Vec<usize>> {
    let n = adj.len();
    match n {
        0 => return Some(Vec::new()),
        1 => return Some(vec![0]),
        2 => return None,
        _ => {}
    }
    let mut matrix = vec![false; n * n];
    for (u, l) in adj.iter().enumerate() {
        for &v in l {
            matrix[u * n + v] = true;
        }
    }
    let mut r = rng::rng(seed);
    let mut budget = 4 * n as u64;
    for attempt in 0..ATTEMPTS {
        let keys: Vec<u64> = if attempt == 0 {
            (0..n as u64).collect()
        } else {
            (0..n).map(|_| r.next_u64()).collect()
        };
        let mut s = Search { adj, matrix: &matrix, n, preferred, keys, budget };
        if let Some(c) = s.run() {
            return Some(c);
        }
        budget = (budget + budget / 2).min(MAX_BUDGET);
    }
    None
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    matrix: &'a [bool],
    n: usize,
    preferred: &'a dyn Fn(usize, usize) -> bool,
    keys: Vec<u64>,
    budget: u64,
}

struct State {
    path: Vec<usize>,
    visited: Vec<bool>,
    /// Number of unvisited neighbors.
    free: Vec<usize>,
}

impl<'a> Search<'a> {
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    fn visit(&self, st: &mut State, v: usize) {
        st.visited[v] = true;
        st.path.push(v);
        for &w in &self.adj[v] {
            st.free[w] -= 1;
        }
    }

    fn unvisit(&self, st: &mut State) {
        let v = st.path.pop().expect("nonempty path");
        st.visited[v] = false;
        for &w in &self.adj[v] {
            st.free[w] += 1;
        }
    }

    /// Usable neighbors of unvisited `w` while the path ends at `end`.
    fn usable(&self, st: &State, w: usize, end: usize) -> usize {
        st.free[w] + self.adjacent(w, end) as usize + self.adjacent(w, 0) as usize
    }

    fn candidates(&self, st: &State) -> Vec<usize> {
        let x = *st.path.last().expect("nonempty path");
        let mut forced = None;
        for &w in &self.adj[x] {
            if st.visited[w] {
                continue;
            }
            match self.usable(st, w, x) {
                0 | 1 => return Vec::new(),
                2 => {
                    if forced.is_some() {
                        return Vec::new();
                    }
                    forced = Some(w);
                }
                _ => {}
            }
        }
        if let Some(w) = forced {
            return vec![w];
        }
        let mut c: Vec<usize> = self.adj[x].iter().copied().filter(|&w| !st.visited[w]).collect();
        c.sort_by_key(|&w| (st.free[w], !(self.preferred)(x, w), self.keys[w]));
        c
    }

    /// Necessary condition for closing the path into a cycle: the unvisited
    /// vertices together with the path end and the start, plus a virtual
    /// edge between end and start, form a 2-connected graph.
    fn viable(&self, st: &State) -> bool {
        let remaining = self.n - st.path.len();
        let end = *st.path.last().expect("nonempty path");
        if remaining == 0 {
            return self.adjacent(end, 0);
        }
        if st.free[0] == 0 || st.free[end] == 0 {
            return false;
        }
        let inside = |v: usize| !st.visited[v] || v == end || v == 0;
        let neighbors = |v: usize| {
            let extra = if v == end { Some(0) } else if v == 0 { Some(end) } else { None };
            self.adj[v].iter().copied().filter(move |&w| inside(w) && !(v == end && w == 0) && !(v == 0 && w == end)).chain(extra)
        };
        // Iterative Tarjan articulation test rooted at the start vertex.
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut time = 0;
        disc[0] = 0;
        time += 1;
        let mut root_children = 0;
        let mut frames: Vec<(usize, usize, Vec<usize>, usize)> = vec![(0, usize::MAX, neighbors(0).collect(), 0)];
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.3 < frame.2.len() {
                let w = frame.2[frame.3];
                frame.3 += 1;
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == 0 {
                        root_children += 1;
                        if root_children > 1 {
                            return false;
                        }
                    }
                    let nb = neighbors(w).collect();
                    frames.push((w, v, nb, 0));
                } else if w != frame.1 {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let (v, p, _, _) = frames.pop().expect("frame");
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if p != 0 && low[v] >= disc[p] {
                        return false;
                    }
                }
            }
        }
        time == remaining + 2
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        let mut st = State { path: Vec::new(), visited: vec![false; self.n], free: self.adj.iter().map(Vec::len).collect() };
        self.visit(&mut st, 0);
        let mut stack: Vec<(Vec<usize>, usize)> = vec![(self.candidates(&st), 0)];
        let mut nodes = 0u64;
        loop {
            if st.path.len() == self.n {
                return Some(st.path);
            }
            let top = stack.last_mut().expect("frame");
            if top.1 >= top.0.len() {
                stack.pop();
                if stack.is_empty() {
                    return None;
                }
                self.unvisit(&mut st);
                continue;
            }
            let y = top.0[top.1];
            top.1 += 1;
            nodes += 1;
            if nodes > self.budget {
                return None;
            }
            self.visit(&mut st, y);
            if !self.viable(&st) {
                self.unvisit(&mut st);
                continue;
            }
            if st.path.len() == self.n {
                return Some(st.path);
            }
            let c = self.candidates(&st);
            stack.push((c, 0));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(adj: &[Vec<usize>], c: &[usize]) {
        assert_eq!(c.len(), adj.len());
        let mut s = c.to_vec();
        s.sort_unstable();
        assert!(s.iter().enumerate().all(|(i, &v)| i == v));
        for i in 0..c.len() {
            assert!(adj[c[i]].contains(&c[(i + 1) % c.len()]));
        }
    }

    #[test]
    fn octahedron() {
        let adj: Vec<Vec<usize>> = (0..6).map(|v| (0..6).filter(|&w| w != v && w != (v + 3) % 6).collect()).collect();
        let c = hamiltonian_cycle(&adj, &|_, _| true, 1).unwrap();
        check(&adj, &c);
    }

    #[test]
    fn star_has_none() {
        let adj = vec![vec![1, 2, 3], vec![0], vec![0], vec![0]];
        assert!(hamiltonian_cycle(&adj, &|_, _| true, 1).is_none());
    }
}
