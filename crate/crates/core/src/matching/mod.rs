//! Matchings, fault sets and the alternating-cycle algebra on grid graphs.

mod cycles;
mod oracle;

pub use cycles::{
    apply_nice_cycles, classify_fault_edge, f4_cycles, is_nice_cycle, squares,
    symmetric_difference, Cycle, FaultKind, FaultVerdict, DEFAULT_CYCLE_LIMIT,
};
pub use oracle::{
    has_almost_perfect_matching, has_perfect_matching, is_mp_set, max_matching,
    max_matching_without, Matcher,
};

use std::collections::BTreeSet;

use crate::error::{GridError, MatchingError};
use crate::grid::{EdgeId, Grid, VertexId};

/// A set of pairwise endpoint-disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checked constructor: fails on unknown ids or shared endpoints.
    pub fn from_edges(
        grid: &Grid,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self, MatchingError> {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        if !is_matching(grid, edges.iter().copied())? {
            return Err(MatchingError::NotAMatching);
        }
        Ok(Matching { edges })
    }

    pub(crate) fn from_set_unchecked(edges: BTreeSet<EdgeId>) -> Self {
        Matching { edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    /// `covered[v]` is true iff some matching edge ends at `v`.
    pub fn covered(&self, grid: &Grid) -> Vec<bool> {
        let mut covered = vec![false; grid.order()];
        for e in self.iter() {
            let edge = grid.edge(e);
            covered[edge.lo] = true;
            covered[edge.hi] = true;
        }
        covered
    }

    pub fn uncovered(&self, grid: &Grid) -> Vec<VertexId> {
        self.covered(grid)
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn is_perfect(&self, grid: &Grid) -> bool {
        2 * self.len() == grid.order()
    }

    pub fn is_almost_perfect(&self, grid: &Grid) -> bool {
        2 * self.len() + 1 == grid.order()
    }

    /// `M ∩ F`.
    pub fn faults(&self, f: &FaultSet) -> BTreeSet<EdgeId> {
        self.edges.intersection(&f.edges).copied().collect()
    }

    pub(crate) fn insert(&mut self, e: EdgeId) {
        self.edges.insert(e);
    }

    pub(crate) fn extend(&mut self, other: Matching) {
        self.edges.extend(other.edges);
    }
}

/// A candidate matching preclusion set `F ⊆ E(G)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Hash)]
pub struct FaultSet {
    edges: BTreeSet<EdgeId>,
}

impl FaultSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(grid: &Grid, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self, GridError> {
        let edges: BTreeSet<EdgeId> = edges.into_iter().collect();
        for &e in &edges {
            grid.check_edge(e)?;
        }
        Ok(FaultSet { edges })
    }

    pub(crate) fn from_ids(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        FaultSet {
            edges: edges.into_iter().collect(),
        }
    }

    /// All edges incident with `v`.
    pub fn star(grid: &Grid, v: VertexId) -> Self {
        FaultSet::from_ids(grid.star(v))
    }

    /// Parses canonical edge strings such as `"2,0|3,0"`.
    pub fn parse<'a>(
        grid: &Grid,
        items: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self, GridError> {
        let ids = items
            .into_iter()
            .map(|s| grid.parse_edge(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FaultSet::from_ids(ids))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    /// Dense membership mask indexed by edge id.
    pub fn mask(&self, grid: &Grid) -> Vec<bool> {
        let mut mask = vec![false; grid.edge_count()];
        for e in self.iter() {
            mask[e.index()] = true;
        }
        mask
    }

    /// Canonical text forms in ascending id order.
    pub fn format(&self, grid: &Grid) -> Vec<String> {
        self.iter().map(|e| grid.format_edge(e)).collect()
    }
}

/// True iff the edges are pairwise endpoint-disjoint.
pub fn is_matching(
    grid: &Grid,
    edges: impl IntoIterator<Item = EdgeId>,
) -> Result<bool, MatchingError> {
    let mut seen = vec![false; grid.order()];
    for e in edges {
        let edge = grid.check_edge(e)?;
        for v in [edge.lo, edge.hi] {
            if std::mem::replace(&mut seen[v], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `d_F(f)`: number of edges of `F`, other than `f`, sharing an endpoint with `f`.
pub fn fault_degree(grid: &Grid, faults: &FaultSet, f: EdgeId) -> Result<usize, GridError> {
    let edge = *grid.check_edge(f)?;
    Ok(faults
        .iter()
        .filter(|&g| g != f && grid.edge(g).shares_endpoint(&edge))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(grid: &Grid, edges: &[&str]) -> Vec<EdgeId> {
        edges.iter().map(|s| grid.parse_edge(s).unwrap()).collect()
    }

    #[test]
    fn matching_predicate() {
        let grid = Grid::new(&[3, 3]).unwrap();
        assert!(is_matching(&grid, ids(&grid, &["0,0|1,0", "2,0|2,1"])).unwrap());
        assert!(!is_matching(&grid, ids(&grid, &["0,0|1,0", "1,0|2,0"])).unwrap());
        assert!(is_matching(&grid, []).unwrap());
        assert!(is_matching(&grid, [EdgeId(99)]).is_err());
        assert!(Matching::from_edges(&grid, ids(&grid, &["0,0|1,0", "1,0|2,0"])).is_err());
    }

    #[test]
    fn fault_degrees() {
        let grid = Grid::new(&[3, 3]).unwrap();
        let star = FaultSet::star(&grid, grid.index_of(&[1, 0]).unwrap());
        assert_eq!(star.len(), 3);
        let f = grid.parse_edge("1,0|1,1").unwrap();
        assert_eq!(fault_degree(&grid, &star, f).unwrap(), 2);
        let g = grid.parse_edge("2,0|2,1").unwrap();
        assert_eq!(fault_degree(&grid, &FaultSet::empty(), g).unwrap(), 0);
        let single = FaultSet::parse(&grid, ["0,0|1,0"]).unwrap();
        assert_eq!(fault_degree(&grid, &single, g).unwrap(), 0);
    }

    #[test]
    fn coverage() {
        let grid = Grid::new(&[3]).unwrap();
        let m = Matching::from_edges(&grid, ids(&grid, &["1|2"])).unwrap();
        assert!(m.is_almost_perfect(&grid));
        assert_eq!(m.uncovered(&grid), vec![0]);
    }
}
