//! n-grid graphs `P_{k_0} □ … □ P_{k_{n-1}}` and their layer structure.
//!
//! Vertices are addressed either by coordinate tuple ([`Vertex`]) or by a dense
//! row-major index (coordinate 0 most significant). Edges are stored in
//! canonical orientation and sorted by `(position, lo-index)`; an edge's rank in
//! that order is its [`EdgeId`].

use std::fmt;
use std::str::FromStr;

use crate::error::GridError;

/// Dense vertex index in `[0, order)`.
pub type VertexId = usize;

/// Rank of an edge in the canonical sorted edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// Coordinate tuple `(u_0, …, u_{n-1})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub Vec<usize>);

impl Vertex {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn coord_sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

impl FromStr for Vertex {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_list(s).map(Vertex)
    }
}

/// An edge in canonical orientation: `hi` is `lo` shifted by +1 at `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub lo: VertexId,
    pub hi: VertexId,
    pub position: usize,
}

impl Edge {
    #[inline]
    pub fn touches(&self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    #[inline]
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }

    #[inline]
    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.lo) || self.touches(other.hi)
    }
}

/// Parity class of a vertex: the proper 2-colouring by coordinate-sum parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Even,
    Odd,
}

/// An n-grid graph with its edge list and adjacency precomputed.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct Grid {
    dims: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
    edges: Vec<Edge>,
    up: Vec<usize>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

const NO_EDGE: usize = usize::MAX;

impl Grid {
    /// Builds the grid with the given path lengths. Every `k_i` must be at least 2.
    pub fn new(dims: &[usize]) -> Result<Self, GridError> {
        if dims.is_empty() {
            return Err(GridError::EmptyDims);
        }
        if let Some((i, &k)) = dims.iter().enumerate().find(|(_, &k)| k < 2) {
            return Err(GridError::DimTooSmall { index: i, value: k });
        }
        let n = dims.len();
        let order = dims
            .iter()
            .try_fold(1usize, |acc, &k| acc.checked_mul(k))
            .ok_or(GridError::TooLarge)?;
        let mut strides = vec![1; n];
        for d in (0..n - 1).rev() {
            strides[d] = strides[d + 1] * dims[d + 1];
        }

        let mut edges = Vec::new();
        let mut up = vec![NO_EDGE; order * n];
        let mut adjacency = vec![Vec::new(); order];
        for d in 0..n {
            for v in 0..order {
                if (v / strides[d]) % dims[d] + 1 < dims[d] {
                    let id = EdgeId(edges.len());
                    let w = v + strides[d];
                    edges.push(Edge {
                        lo: v,
                        hi: w,
                        position: d,
                    });
                    up[v * n + d] = id.0;
                    adjacency[v].push((w, id));
                    adjacency[w].push((v, id));
                }
            }
        }

        Ok(Grid {
            dims: dims.to_vec(),
            strides,
            order,
            edges,
            up,
            adjacency,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of path factors `n`.
    pub fn n(&self) -> usize {
        self.dims.len()
    }

    /// Number of vertices `∏ k_i`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_even_order(&self) -> bool {
        self.order % 2 == 0
    }

    /// Number of dimensions equal to 2.
    pub fn n2(&self) -> usize {
        self.dims.iter().filter(|&&k| k == 2).count()
    }

    /// Number of even dimensions.
    pub fn ne(&self) -> usize {
        self.dims.iter().filter(|&&k| k % 2 == 0).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn check_edge(&self, id: EdgeId) -> Result<&Edge, GridError> {
        self.edges.get(id.0).ok_or(GridError::UnknownEdge(id.0))
    }

    /// Neighbours of `v` together with the connecting edge.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn coord(&self, v: VertexId, d: usize) -> usize {
        (v / self.strides[d]) % self.dims[d]
    }

    pub fn vertex(&self, v: VertexId) -> Vertex {
        Vertex((0..self.n()).map(|d| self.coord(v, d)).collect())
    }

    /// Row-major index of a coordinate tuple.
    pub fn index(&self, v: &Vertex) -> Result<VertexId, GridError> {
        self.index_of(v.coords())
    }

    pub fn index_of(&self, coords: &[usize]) -> Result<VertexId, GridError> {
        if coords.len() != self.n() {
            return Err(GridError::Arity {
                expected: self.n(),
                found: coords.len(),
            });
        }
        let mut idx = 0;
        for (d, (&c, &k)) in coords.iter().zip(&self.dims).enumerate() {
            if c >= k {
                return Err(GridError::CoordOutOfRange {
                    position: d,
                    value: c,
                    bound: k,
                });
            }
            idx += c * self.strides[d];
        }
        Ok(idx)
    }

    pub fn check_position(&self, d: usize) -> Result<(), GridError> {
        if d < self.n() {
            Ok(())
        } else {
            Err(GridError::PositionOutOfRange {
                position: d,
                n: self.n(),
            })
        }
    }

    /// `v⁺` (dir = +1) or `v⁻` (dir = -1) at position `d`.
    pub fn shift(&self, v: VertexId, d: usize, dir: i8) -> Result<VertexId, GridError> {
        self.check_position(d)?;
        let c = self.coord(v, d);
        match dir {
            1 if c + 1 < self.dims[d] => Ok(v + self.strides[d]),
            -1 if c > 0 => Ok(v - self.strides[d]),
            1 | -1 => Err(GridError::OffGrid { position: d }),
            _ => Err(GridError::BadDirection(dir)),
        }
    }

    /// Edge from `v` to `v⁺` at position `d`, if `v` is not on the upper boundary.
    #[inline]
    pub fn up_edge(&self, v: VertexId, d: usize) -> Option<EdgeId> {
        match self.up[v * self.n() + d] {
            NO_EDGE => None,
            e => Some(EdgeId(e)),
        }
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.adjacency[a]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, e)| e)
    }

    /// Edges incident with `v`, in ascending id order.
    pub fn star(&self, v: VertexId) -> Vec<EdgeId> {
        let mut s: Vec<EdgeId> = self.adjacency[v].iter().map(|&(_, e)| e).collect();
        s.sort_unstable();
        s
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// `δ(G) = n`.
    pub fn min_degree(&self) -> usize {
        self.n()
    }

    /// `Δ(G) = 2n − n₂`.
    pub fn max_degree(&self) -> usize {
        2 * self.n() - self.n2()
    }

    pub fn vertex_class(&self, v: VertexId) -> VertexClass {
        let sum: usize = (0..self.n()).map(|d| self.coord(v, d)).sum();
        if sum % 2 == 0 {
            VertexClass::Even
        } else {
            VertexClass::Odd
        }
    }

    pub fn is_all_even(&self, v: VertexId) -> bool {
        (0..self.n()).all(|d| self.coord(v, d) % 2 == 0)
    }

    /// Membership in `V_δ`: every coordinate sits on the boundary.
    pub fn is_min_degree(&self, v: VertexId) -> bool {
        (0..self.n()).all(|d| {
            let c = self.coord(v, d);
            c == 0 || c + 1 == self.dims[d]
        })
    }

    pub fn is_max_degree(&self, v: VertexId) -> bool {
        self.degree(v) == self.max_degree()
    }

    /// The layers `G_d[j]` and crossing sets `E_d^{j,j+1}` at position `d`.
    pub fn partition_at(&self, d: usize) -> Result<PartitionView, GridError> {
        self.check_position(d)?;
        let whole = Region::whole(self);
        let layers = (0..self.dims[d])
            .map(|j| whole.fix(d, j).vertices(self).collect())
            .collect();
        let crossings = (0..self.dims[d] - 1)
            .map(|j| whole.crossing(self, d, j))
            .collect();
        Ok(PartitionView {
            position: d,
            layers,
            crossings,
        })
    }

    /// The (n−1)-grid `G_d[j]` plus the map from its vertex indices into this grid.
    pub fn layer_subgrid(&self, d: usize, j: usize) -> Result<(Grid, Vec<VertexId>), GridError> {
        self.check_position(d)?;
        if self.n() == 1 {
            return Err(GridError::NoSubgrid);
        }
        if j >= self.dims[d] {
            return Err(GridError::CoordOutOfRange {
                position: d,
                value: j,
                bound: self.dims[d],
            });
        }
        let sub_dims: Vec<usize> = self
            .dims
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != d)
            .map(|(_, &k)| k)
            .collect();
        let sub = Grid::new(&sub_dims)?;
        let embedding = (0..sub.order())
            .map(|s| {
                let mut coords = sub.vertex(s).0;
                coords.insert(d, j);
                self.index_of(&coords).expect("embedded vertex in range")
            })
            .collect();
        Ok((sub, embedding))
    }

    /// Canonical text form `"v|w"` of an edge.
    pub fn format_edge(&self, id: EdgeId) -> String {
        let e = self.edge(id);
        format!("{}|{}", self.vertex(e.lo), self.vertex(e.hi))
    }

    pub fn format_vertex(&self, v: VertexId) -> String {
        self.vertex(v).to_string()
    }

    /// Parses `"2,0|3,0"` in either endpoint order.
    pub fn parse_edge(&self, s: &str) -> Result<EdgeId, GridError> {
        let (a, b) = s
            .split_once('|')
            .ok_or_else(|| GridError::Parse(format!("edge `{s}` must be `v|w`")))?;
        let a = self.index(&a.parse()?)?;
        let b = self.index(&b.parse()?)?;
        self.edge_between(a, b)
            .ok_or_else(|| GridError::NotAdjacent(s.to_string()))
    }

    pub fn parse_vertex(&self, s: &str) -> Result<VertexId, GridError> {
        self.index(&s.parse()?)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.dims)
    }
}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Grid::new(&parse_list(s)?)
    }
}

/// Parses a comma-separated dims string such as `"6,3"`.
pub fn parse_dims(s: &str) -> Result<Vec<usize>, GridError> {
    parse_list(s)
}

fn parse_list(s: &str) -> Result<Vec<usize>, GridError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(GridError::Parse("empty list".into()));
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| GridError::Parse(format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Layers and crossing sets of a grid partitioned at one position.
#[derive(Debug, Clone)]
pub struct PartitionView {
    pub position: usize,
    /// `layers[j]` holds the vertices of `G_d[j]` in ascending index order.
    pub layers: Vec<Vec<VertexId>>,
    /// `crossings[j]` holds `E_d^{j,j+1}`.
    pub crossings: Vec<Vec<EdgeId>>,
}

/// An axis-aligned box `[lo_i, hi_i]` of a grid; itself an (induced) grid graph.
///
/// Positions with `lo_i == hi_i` are fixed. Coordinates "relative" to a region
/// are offsets from `lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
}

impl Region {
    pub fn whole(grid: &Grid) -> Self {
        Region {
            lo: vec![0; grid.n()],
            hi: grid.dims().iter().map(|k| k - 1).collect(),
        }
    }

    pub fn extent(&self, d: usize) -> usize {
        self.hi[d] - self.lo[d] + 1
    }

    pub fn order(&self) -> usize {
        (0..self.lo.len()).map(|d| self.extent(d)).product()
    }

    /// Positions whose extent exceeds one.
    pub fn free_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.lo.len()).filter(|&d| self.hi[d] > self.lo[d])
    }

    /// The layer with coordinate `d` pinned to the absolute value `value`.
    pub fn fix(&self, d: usize, value: usize) -> Region {
        self.restrict(d, value, value)
    }

    /// Sub-box with coordinate `d` restricted to absolute range `[a, b]`.
    pub fn restrict(&self, d: usize, a: usize, b: usize) -> Region {
        debug_assert!(self.lo[d] <= a && a <= b && b <= self.hi[d]);
        let mut r = self.clone();
        r.lo[d] = a;
        r.hi[d] = b;
        r
    }

    pub fn contains(&self, grid: &Grid, v: VertexId) -> bool {
        (0..self.lo.len()).all(|d| {
            let c = grid.coord(v, d);
            self.lo[d] <= c && c <= self.hi[d]
        })
    }

    pub fn contains_edge(&self, grid: &Grid, e: EdgeId) -> bool {
        let edge = grid.edge(e);
        self.contains(grid, edge.lo) && self.contains(grid, edge.hi)
    }

    /// Coordinate of `v` at `d` relative to this region.
    pub fn rel(&self, grid: &Grid, v: VertexId, d: usize) -> usize {
        grid.coord(v, d) - self.lo[d]
    }

    pub fn is_all_even(&self, grid: &Grid, v: VertexId) -> bool {
        (0..self.lo.len()).all(|d| self.rel(grid, v, d) % 2 == 0)
    }

    /// The vertex at relative coordinate zero.
    pub fn corner(&self, grid: &Grid) -> VertexId {
        grid.index_of(&self.lo).expect("region inside grid")
    }

    /// Vertices in ascending index order.
    pub fn vertices<'a>(&'a self, grid: &'a Grid) -> impl Iterator<Item = VertexId> + 'a {
        let n = self.lo.len();
        let mut cur = self.lo.clone();
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let v = grid.index_of(&cur).expect("region inside grid");
            done = true;
            for d in (0..n).rev() {
                if cur[d] < self.hi[d] {
                    cur[d] += 1;
                    done = false;
                    break;
                }
                cur[d] = self.lo[d];
            }
            Some(v)
        })
    }

    /// Position-`d` edges between relative layers `j` and `j+1` of this region.
    pub fn crossing(&self, grid: &Grid, d: usize, j: usize) -> Vec<EdgeId> {
        let layer = self.fix(d, self.lo[d] + j);
        layer
            .vertices(grid)
            .map(|v| grid.up_edge(v, d).expect("crossing edge exists"))
            .collect()
    }

    /// All edges with both endpoints inside the region, ascending.
    pub fn edges(&self, grid: &Grid) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for v in self.vertices(grid) {
            for d in 0..self.lo.len() {
                if grid.coord(v, d) < self.hi[d] {
                    out.push(grid.up_edge(v, d).expect("edge inside region"));
                }
            }
        }
        out.sort_unstable();
        out
    }
}
