//! Alternating cycles, `(f;4)`-cycles and `(F,M)`-nice cycles.
//!
//! A cycle `C` is `(F,M)`-nice when it is `M`-alternating and
//! `∅ ≠ C ∩ F ⊆ M`. Flipping `M` along such a cycle keeps `|M|` and the covered
//! vertex set, and removes exactly the fault edges lying on `C`.

use std::collections::BTreeSet;

use super::{FaultSet, Matching};
use crate::error::MatchingError;
use crate::grid::{EdgeId, Grid, VertexId};

/// Default bound on the alternating-cycle length searched by [`classify_fault_edge`].
pub const DEFAULT_CYCLE_LIMIT: usize = 8;

/// A closed walk through distinct vertices; `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl Cycle {
    pub fn from_vertices(grid: &Grid, vertices: Vec<VertexId>) -> Result<Self, MatchingError> {
        if vertices.len() < 3 {
            return Err(MatchingError::MalformedCycle(format!(
                "a cycle needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(MatchingError::MalformedCycle("repeated vertex".into()));
        }
        let edges = (0..vertices.len())
            .map(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
                grid.edge_between(a, b).ok_or_else(|| {
                    MatchingError::MalformedCycle(format!(
                        "{} and {} are not adjacent",
                        grid.format_vertex(a),
                        grid.format_vertex(b)
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Cycle { vertices, edges })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
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

    /// True iff the edges alternate between `M` and `E(G) ∖ M` around the cycle.
    pub fn is_alternating(&self, m: &Matching) -> bool {
        let len = self.edges.len();
        len >= 4
            && len % 2 == 0
            && (0..len).all(|i| m.contains(self.edges[i]) != m.contains(self.edges[(i + 1) % len]))
    }
}

/// All `(f,d,j;4)`-cycles through `f`, ordered by the closing position then direction.
pub fn f4_cycles(grid: &Grid, f: EdgeId) -> Result<Vec<Cycle>, MatchingError> {
    let edge = *grid.check_edge(f)?;
    if grid.n() < 2 {
        return Err(MatchingError::NoFourCycles);
    }
    let mut out = Vec::new();
    for d in (0..grid.n()).filter(|&d| d != edge.position) {
        for dir in [-1, 1] {
            if let (Ok(u2), Ok(v2)) = (grid.shift(edge.lo, d, dir), grid.shift(edge.hi, d, dir)) {
                out.push(Cycle::from_vertices(grid, vec![edge.lo, edge.hi, v2, u2])?);
            }
        }
    }
    Ok(out)
}

/// Every unit square of the grid, each once.
pub fn squares(grid: &Grid) -> Vec<Cycle> {
    let mut out = Vec::new();
    for v in 0..grid.order() {
        for d1 in 0..grid.n() {
            for d2 in d1 + 1..grid.n() {
                if let (Ok(a), Ok(b)) = (grid.shift(v, d1, 1), grid.shift(v, d2, 1)) {
                    let c = grid.shift(a, d2, 1).expect("square corner inside grid");
                    out.push(Cycle::from_vertices(grid, vec![v, a, c, b]).expect("square"));
                }
            }
        }
    }
    out
}

/// `M ∆ C` for an `M`-alternating cycle `C`.
pub fn symmetric_difference(m: &Matching, c: &Cycle) -> Result<Matching, MatchingError> {
    if !c.is_alternating(m) {
        return Err(MatchingError::NotAlternating);
    }
    let mut edges = m.edge_set().clone();
    for &e in c.edges() {
        if !edges.remove(&e) {
            edges.insert(e);
        }
    }
    Ok(Matching::from_set_unchecked(edges))
}

/// True iff `C` is `M`-alternating and `∅ ≠ C ∩ F ⊆ M`.
pub fn is_nice_cycle(faults: &FaultSet, m: &Matching, c: &Cycle) -> bool {
    let mut hits = c.edges().iter().filter(|&&e| faults.contains(e)).peekable();
    hits.peek().is_some() && hits.all(|&e| m.contains(e)) && c.is_alternating(m)
}

/// `M ∆ C_1 ∆ … ∆ C_s` for pairwise edge-disjoint nice cycles covering `F ∩ M`.
pub fn apply_nice_cycles(
    m: &Matching,
    cycles: &[Cycle],
    faults: &FaultSet,
) -> Result<Matching, MatchingError> {
    let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
    for (index, c) in cycles.iter().enumerate() {
        if !is_nice_cycle(faults, m, c) {
            return Err(MatchingError::NotNice { index });
        }
        if c.edges().iter().any(|&e| !seen.insert(e)) {
            return Err(MatchingError::Overlapping { index });
        }
    }
    if let Some(&e) = m.faults(faults).iter().find(|e| !seen.contains(e)) {
        return Err(MatchingError::Uncovered { edge: e.index() });
    }
    // Edge-disjoint M-alternating cycles are vertex-disjoint, so each stays
    // alternating after the earlier flips.
    cycles
        .iter()
        .try_fold(m.clone(), |acc, c| symmetric_difference(&acc, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaultKind {
    NiceFault,
    BadFault,
}

/// Outcome of [`classify_fault_edge`]; `BadFault` is only relative to `max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultVerdict {
    pub kind: FaultKind,
    pub witness: Option<Cycle>,
    pub max_len: usize,
}

/// Decides whether some `(F,M)`-nice cycle of length at most `max_len` passes through `f`.
///
/// The `(f;4)`-cycles are tried first, then every `M`-alternating cycle through
/// `f` up to the bound.
pub fn classify_fault_edge(
    grid: &Grid,
    faults: &FaultSet,
    m: &Matching,
    f: EdgeId,
    max_len: usize,
) -> Result<FaultVerdict, MatchingError> {
    grid.check_edge(f)?;
    if !(faults.contains(f) && m.contains(f)) {
        return Err(MatchingError::NotFaultMatchingEdge(f.index()));
    }
    let found = |witness: Cycle| FaultVerdict {
        kind: FaultKind::NiceFault,
        witness: Some(witness),
        max_len,
    };
    if grid.n() >= 2 && max_len >= 4 {
        if let Some(c) = f4_cycles(grid, f)?
            .into_iter()
            .find(|c| is_nice_cycle(faults, m, c))
        {
            return Ok(found(c));
        }
    }

    let mut mate = vec![usize::MAX; grid.order()];
    for e in m.iter() {
        let edge = grid.edge(e);
        mate[edge.lo] = edge.hi;
        mate[edge.hi] = edge.lo;
    }
    let edge = *grid.edge(f);
    let mut search = AlternatingSearch {
        grid,
        faults,
        m,
        mate: &mate,
        start: edge.lo,
        max_len,
        on_path: vec![false; grid.order()],
        path: vec![edge.lo, edge.hi],
    };
    search.on_path[edge.lo] = true;
    search.on_path[edge.hi] = true;
    if search.extend(edge.hi) {
        let c = Cycle::from_vertices(grid, search.path)?;
        return Ok(found(c));
    }
    Ok(FaultVerdict {
        kind: FaultKind::BadFault,
        witness: None,
        max_len,
    })
}

struct AlternatingSearch<'a> {
    grid: &'a Grid,
    faults: &'a FaultSet,
    m: &'a Matching,
    mate: &'a [usize],
    start: VertexId,
    max_len: usize,
    on_path: Vec<bool>,
    path: Vec<VertexId>,
}

impl AlternatingSearch<'_> {
    /// `tip` was just reached by an `M`-edge; the next step leaves along a good non-`M` edge.
    fn extend(&mut self, tip: VertexId) -> bool {
        for &(x, e) in self.grid.neighbors(tip) {
            if self.m.contains(e) || self.faults.contains(e) {
                continue;
            }
            if x == self.start {
                if self.path.len() >= 4 {
                    return true;
                }
                continue;
            }
            // Closing later needs two more edges at least: x → mate(x) → … → start.
            if self.on_path[x] || self.path.len() + 2 > self.max_len {
                continue;
            }
            let y = self.mate[x];
            if y == usize::MAX || self.on_path[y] {
                continue;
            }
            self.on_path[x] = true;
            self.on_path[y] = true;
            self.path.push(x);
            self.path.push(y);
            if self.extend(y) {
                return true;
            }
            self.path.truncate(self.path.len() - 2);
            self.on_path[x] = false;
            self.on_path[y] = false;
        }
        false
    }
}
