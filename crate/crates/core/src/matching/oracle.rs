//! Maximum matching by layered augmenting paths over the parity bipartition.
//!
//! Grids are bipartite with sides `V_e` / `V_o`, so Hopcroft–Karp applies
//! directly. [`Matcher`] keeps its buffers between runs and accepts a warm
//! start, which the exhaustive searcher uses to avoid rebuilding from scratch.

use std::collections::BTreeSet;

use super::{FaultSet, Matching};
use crate::grid::{EdgeId, Grid, VertexClass, VertexId};

const NONE: usize = usize::MAX;
const INF: u32 = u32::MAX;

/// Reusable maximum-matching state for one grid.
#[derive(Debug, Clone)]
pub struct Matcher<'g> {
    grid: &'g Grid,
    left: Vec<VertexId>,
    mate: Vec<usize>,
    dist: Vec<u32>,
    queue: Vec<VertexId>,
}

impl<'g> Matcher<'g> {
    pub fn new(grid: &'g Grid) -> Self {
        let left = (0..grid.order())
            .filter(|&v| grid.vertex_class(v) == VertexClass::Even)
            .collect();
        Matcher {
            grid,
            left,
            mate: vec![NONE; grid.order()],
            dist: vec![INF; grid.order()],
            queue: Vec::with_capacity(grid.order()),
        }
    }

    /// Size of a maximum matching of `G − deleted − removed`.
    ///
    /// `deleted` is indexed by edge id, `removed` by vertex id. Edges of `warm`
    /// that are still usable seed the search; `warm` must itself be a matching.
    pub fn run(&mut self, deleted: &[bool], removed: Option<&[bool]>, warm: &[EdgeId]) -> usize {
        let grid = self.grid;
        self.mate.fill(NONE);
        let usable = |e: EdgeId, a: VertexId, b: VertexId| {
            !deleted[e.index()] && removed.is_none_or(|r| !r[a] && !r[b])
        };
        let mut size = 0;
        for &e in warm {
            let edge = grid.edge(e);
            if usable(e, edge.lo, edge.hi) {
                debug_assert!(self.mate[edge.lo] == NONE && self.mate[edge.hi] == NONE);
                self.mate[edge.lo] = edge.hi;
                self.mate[edge.hi] = edge.lo;
                size += 1;
            }
        }

        loop {
            // Layer the free left vertices outward along alternating paths.
            self.dist.fill(INF);
            self.queue.clear();
            for &u in &self.left {
                if self.mate[u] == NONE && removed.is_none_or(|r| !r[u]) {
                    self.dist[u] = 0;
                    self.queue.push(u);
                }
            }
            let mut found = false;
            let mut head = 0;
            while head < self.queue.len() {
                let u = self.queue[head];
                head += 1;
                for &(w, e) in grid.neighbors(u) {
                    if !usable(e, u, w) {
                        continue;
                    }
                    let m = self.mate[w];
                    if m == NONE {
                        found = true;
                    } else if self.dist[m] == INF {
                        self.dist[m] = self.dist[u] + 1;
                        self.queue.push(m);
                    }
                }
            }
            if !found {
                break;
            }
            let mut augmented = 0;
            for i in 0..self.left.len() {
                let u = self.left[i];
                if self.mate[u] == NONE && self.dist[u] == 0 && self.augment(u, deleted, removed) {
                    augmented += 1;
                }
            }
            if augmented == 0 {
                break;
            }
            size += augmented;
        }
        size
    }

    fn augment(&mut self, u: VertexId, deleted: &[bool], removed: Option<&[bool]>) -> bool {
        let grid = self.grid;
        for &(w, e) in grid.neighbors(u) {
            if deleted[e.index()] || removed.is_some_and(|r| r[w]) {
                continue;
            }
            let m = self.mate[w];
            let ok = m == NONE
                || (self.dist[m] == self.dist[u].wrapping_add(1)
                    && self.dist[m] != INF
                    && self.augment(m, deleted, removed));
            if ok {
                self.mate[u] = w;
                self.mate[w] = u;
                return true;
            }
        }
        self.dist[u] = INF;
        false
    }

    /// Appends the edges of the last run's matching to `out`, in no particular order.
    pub(crate) fn matched_edges(&self, out: &mut Vec<EdgeId>) {
        let grid = self.grid;
        for &u in &self.left {
            if self.mate[u] != NONE {
                out.push(
                    grid.edge_between(u, self.mate[u])
                        .expect("mates are adjacent"),
                );
            }
        }
    }

    /// The matching found by the last [`run`](Self::run).
    pub fn matching(&self) -> Matching {
        let grid = self.grid;
        let edges: BTreeSet<EdgeId> = self
            .left
            .iter()
            .filter(|&&u| self.mate[u] != NONE)
            .map(|&u| {
                grid.edge_between(u, self.mate[u])
                    .expect("mates are adjacent")
            })
            .collect();
        Matching::from_set_unchecked(edges)
    }
}

/// A maximum matching of `G − deleted`.
pub fn max_matching(grid: &Grid, deleted: &FaultSet) -> Matching {
    let mut matcher = Matcher::new(grid);
    matcher.run(&deleted.mask(grid), None, &[]);
    matcher.matching()
}

/// A maximum matching of `(G − removed) − deleted`.
pub fn max_matching_without(grid: &Grid, deleted: &FaultSet, removed: &[VertexId]) -> Matching {
    let mut mask = vec![false; grid.order()];
    for &v in removed {
        mask[v] = true;
    }
    let mut matcher = Matcher::new(grid);
    matcher.run(&deleted.mask(grid), Some(&mask), &[]);
    matcher.matching()
}

pub fn has_perfect_matching(grid: &Grid, deleted: &FaultSet) -> bool {
    2 * max_matching(grid, deleted).len() == grid.order()
}

pub fn has_almost_perfect_matching(grid: &Grid, deleted: &FaultSet) -> bool {
    2 * max_matching(grid, deleted).len() + 1 == grid.order()
}

/// True iff `G − F` has neither a perfect nor an almost-perfect matching.
pub fn is_mp_set(grid: &Grid, faults: &FaultSet) -> bool {
    // Maximum matching size is at most ⌊order/2⌋; both conditions fail iff it falls short.
    2 * max_matching(grid, faults).len() + 1 < grid.order()
}
