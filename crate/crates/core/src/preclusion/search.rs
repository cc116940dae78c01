//! Exhaustive search over fault sets of a fixed size.
//!
//! Candidate sets are enumerated in lexicographic order of dense edge ids.
//! With pruning on, only sets meeting a fixed witness matching are visited:
//! a set that misses the witness leaves it intact, so it cannot preclude.
//! The same argument is applied once more at the last element: a maximum
//! matching of `G − prefix` is computed once, and only extensions that hit it
//! need a fresh oracle call.

use rayon::prelude::*;

use crate::error::PreclusionError;
use crate::grid::{EdgeId, Grid, VertexId};
use crate::matching::{FaultSet, Matcher, Matching};

/// Default cap on subset tests per search level.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of subset tests at any single size.
    pub budget: u128,
    /// Restrict to sets meeting the witness matching.
    pub prune: bool,
    /// Largest set size to try.
    pub limit: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            prune: true,
            limit: None,
        }
    }
}

/// Searches `(G − removed) − F` for sets `F` that destroy every maximum-size
/// (perfect or almost-perfect) matching.
#[derive(Debug, Clone)]
pub struct Searcher<'g> {
    grid: &'g Grid,
    universe: Vec<EdgeId>,
    in_witness: Vec<bool>,
    /// `next_witness[i]`: does some universe index `>= i` belong to the witness?
    next_witness: Vec<bool>,
    witness: Vec<EdgeId>,
    removed: Option<Vec<bool>>,
    target: usize,
    prune: bool,
}

impl<'g> Searcher<'g> {
    /// Search on `G` itself; `witness` must be a perfect or almost-perfect matching.
    pub fn new(grid: &'g Grid, witness: &Matching, prune: bool) -> Self {
        Self::build(grid, witness, &[], prune)
    }

    /// Search on `G − removed`; `witness` must be a maximum matching of `G − removed`
    /// covering all but at most one remaining vertex.
    pub fn without_vertices(
        grid: &'g Grid,
        removed: &[VertexId],
        witness: &Matching,
        prune: bool,
    ) -> Self {
        Self::build(grid, witness, removed, prune)
    }

    fn build(grid: &'g Grid, witness: &Matching, removed: &[VertexId], prune: bool) -> Self {
        let universe: Vec<EdgeId> = grid
            .edge_ids()
            .filter(|&e| removed.iter().all(|&v| !grid.edge(e).touches(v)))
            .collect();
        let in_witness: Vec<bool> = universe.iter().map(|&e| witness.contains(e)).collect();
        let mut next_witness = vec![false; universe.len() + 1];
        for i in (0..universe.len()).rev() {
            next_witness[i] = in_witness[i] || next_witness[i + 1];
        }
        let removed_mask = (!removed.is_empty()).then(|| {
            let mut mask = vec![false; grid.order()];
            for &v in removed {
                mask[v] = true;
            }
            mask
        });
        Searcher {
            grid,
            universe,
            in_witness,
            next_witness,
            witness: witness.iter().collect(),
            removed: removed_mask,
            target: (grid.order() - removed.len()) / 2,
            prune,
        }
    }

    pub fn universe(&self) -> &[EdgeId] {
        &self.universe
    }

    /// Number of subsets of size `k` the search visits.
    pub fn count(&self, k: usize) -> u128 {
        let n = self.universe.len() as u128;
        let all = binomial(n, k as u128);
        if self.prune {
            let w = self.in_witness.iter().filter(|&&b| b).count() as u128;
            all - binomial(n - w, k as u128)
        } else {
            all
        }
    }

    /// Fails with [`PreclusionError::BudgetExceeded`] when level `k` is too large.
    pub fn check_budget(&self, k: usize, budget: u128) -> Result<(), PreclusionError> {
        let needed = self.count(k);
        if needed > budget {
            Err(PreclusionError::BudgetExceeded {
                size: k,
                needed,
                budget,
                lower_bound: k,
            })
        } else {
            Ok(())
        }
    }

    /// True iff removing `faults` leaves no matching of the target size.
    pub fn precludes(&self, faults: &FaultSet) -> bool {
        let mut matcher = Matcher::new(self.grid);
        let mask = faults.mask(self.grid);
        matcher.run(&mask, self.removed.as_deref(), &self.witness) < self.target
    }

    /// Does any size-`k` set preclude?
    pub fn exists(&self, k: usize) -> bool {
        if k == 0 || k > self.universe.len() {
            return false;
        }
        (0..self.universe.len()).into_par_iter().any(|first| {
            let mut found = false;
            self.walk_from(first, k, &mut |_| {
                found = true;
                false
            });
            found
        })
    }

    /// All precluding sets of size `k`, in lexicographic order.
    pub fn collect(&self, k: usize) -> Vec<FaultSet> {
        if k == 0 || k > self.universe.len() {
            return Vec::new();
        }
        let chunks: Vec<Vec<FaultSet>> = (0..self.universe.len())
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                self.walk_from(first, k, &mut |set| {
                    out.push(FaultSet::from_ids(set.iter().copied()));
                    true
                });
                out
            })
            .collect();
        chunks.into_iter().flatten().collect()
    }

    /// Visits every precluding size-`k` set whose smallest universe index is `first`.
    /// `visit` returns false to stop early.
    fn walk_from(&self, first: usize, k: usize, visit: &mut dyn FnMut(&[EdgeId]) -> bool) {
        if first + k > self.universe.len() {
            return;
        }
        if self.prune && !self.next_witness[first] {
            return;
        }
        let mut state = WalkState {
            matcher: Matcher::new(self.grid),
            mask: vec![false; self.grid.edge_count()],
            chosen: Vec::with_capacity(k),
            prefix_matching: Vec::new(),
            in_prefix_matching: vec![false; self.grid.edge_count()],
        };
        state.push(self.universe[first]);
        self.walk(first + 1, k - 1, self.in_witness[first], &mut state, visit);
    }

    fn walk(
        &self,
        start: usize,
        remaining: usize,
        has_witness: bool,
        state: &mut WalkState<'g>,
        visit: &mut dyn FnMut(&[EdgeId]) -> bool,
    ) -> bool {
        if remaining == 0 {
            if self.prune && !has_witness {
                return true;
            }
            let size = state
                .matcher
                .run(&state.mask, self.removed.as_deref(), &self.witness);
            return size >= self.target || visit(&state.chosen);
        }
        let last = self.universe.len() - remaining;
        if remaining == 1 && self.prune {
            return self.last_level(start, has_witness, state, visit);
        }
        for i in start..=last {
            if self.prune && !has_witness {
                if !self.next_witness[i] {
                    break;
                }
                if remaining == 1 && !self.in_witness[i] {
                    continue;
                }
            }
            state.push(self.universe[i]);
            let go_on = self.walk(
                i + 1,
                remaining - 1,
                has_witness || self.in_witness[i],
                state,
                visit,
            );
            state.pop();
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Final element of a pruned walk, using a maximum matching of `G − prefix`.
    fn last_level(
        &self,
        start: usize,
        has_witness: bool,
        state: &mut WalkState<'g>,
        visit: &mut dyn FnMut(&[EdgeId]) -> bool,
    ) -> bool {
        let removed = self.removed.as_deref();
        let size = state.matcher.run(&state.mask, removed, &self.witness);
        if size < self.target {
            // The prefix already precludes, so every extension does too.
            for i in start..self.universe.len() {
                state.push(self.universe[i]);
                let go_on = visit(&state.chosen);
                state.pop();
                if !go_on {
                    return false;
                }
            }
            return true;
        }
        let mut base = std::mem::take(&mut state.prefix_matching);
        base.clear();
        state.matcher.matched_edges(&mut base);
        for &e in &base {
            state.in_prefix_matching[e.index()] = true;
        }
        let mut go_on = true;
        for i in start..self.universe.len() {
            let e = self.universe[i];
            if !has_witness && !self.in_witness[i] {
                continue;
            }
            if !state.in_prefix_matching[e.index()] {
                continue;
            }
            state.push(e);
            let precludes = state.matcher.run(&state.mask, removed, &base) < self.target;
            go_on = !precludes || visit(&state.chosen);
            state.pop();
            if !go_on {
                break;
            }
        }
        for &e in &base {
            state.in_prefix_matching[e.index()] = false;
        }
        state.prefix_matching = base;
        go_on
    }
}

struct WalkState<'g> {
    matcher: Matcher<'g>,
    mask: Vec<bool>,
    chosen: Vec<EdgeId>,
    /// Scratch for the last level: a maximum matching of `G − prefix`.
    prefix_matching: Vec<EdgeId>,
    in_prefix_matching: Vec<bool>,
}

impl WalkState<'_> {
    fn push(&mut self, e: EdgeId) {
        self.mask[e.index()] = true;
        self.chosen.push(e);
    }

    fn pop(&mut self) {
        let e = self.chosen.pop().expect("non-empty");
        self.mask[e.index()] = false;
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}
