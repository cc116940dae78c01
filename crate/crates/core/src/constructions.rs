//! Explicit matchings of grid graphs.
//!
//! Every construction works on a [`Region`] (an axis-aligned box of the grid,
//! itself a grid graph) so the recursive steps can descend into layers without
//! building new graphs. Parities such as "all-even" are taken relative to the
//! region's low corner.

use crate::error::ConstructionError;
use crate::grid::{EdgeId, Grid, Region, VertexId};
use crate::matching::{FaultSet, Matching};

/// `M_d = E_d^{0,1} ∪ E_d^{2,3} ∪ … ∪ E_d^{k_d−2,k_d−1}`, a perfect matching when `k_d` is even.
pub fn canonical_pm(grid: &Grid, d: usize) -> Result<Matching, ConstructionError> {
    grid.check_position(d)?;
    let k = grid.dims()[d];
    if k % 2 == 1 {
        return Err(ConstructionError::OddDimension {
            position: d,
            value: k,
        });
    }
    Ok(region_pm(grid, &Region::whole(grid), d))
}

/// Almost-perfect matching of an odd-order grid leaving exactly the all-even vertex `u` uncovered.
pub fn apm_all_even(grid: &Grid, u: VertexId) -> Result<Matching, ConstructionError> {
    require_odd_order(grid)?;
    if !grid.is_all_even(u) {
        return Err(ConstructionError::NotAllEven(grid.format_vertex(u)));
    }
    Ok(region_apm_all_even(grid, &Region::whole(grid), u))
}

/// Almost-perfect matching of an odd-order grid leaving exactly `u ∈ V_e` uncovered.
pub fn apm_even_sum(grid: &Grid, u: VertexId) -> Result<Matching, ConstructionError> {
    require_odd_order(grid)?;
    if grid.vertex(u).coord_sum() % 2 == 1 {
        return Err(ConstructionError::OddParity(grid.format_vertex(u)));
    }
    Ok(region_apm_even_sum(grid, &Region::whole(grid), u))
}

/// Almost-perfect matching of an odd-order grid that does not use `f`.
///
/// Cutting `E_d^{j,j+1}` at `f` splits the grid into an even-order side, matched
/// perfectly by its canonical matching at `d`, and an odd-order side, matched by
/// [`apm_all_even`] around its low corner. That corner is the uncovered vertex.
pub fn apm_avoiding_edge(grid: &Grid, f: EdgeId) -> Result<Matching, ConstructionError> {
    require_odd_order(grid)?;
    let edge = *grid.check_edge(f)?;
    let d = edge.position;
    let j = grid.coord(edge.lo, d);
    let whole = Region::whole(grid);
    let low = whole.restrict(d, 0, j);
    let high = whole.restrict(d, j + 1, grid.dims()[d] - 1);
    let (even, odd) = if low.extent(d) % 2 == 0 {
        (low, high)
    } else {
        (high, low)
    };
    let mut m = region_pm(grid, &even, d);
    m.extend(region_apm_all_even(grid, &odd, odd.corner(grid)));
    Ok(m)
}

/// The vertex left uncovered by [`apm_avoiding_edge`].
pub fn avoiding_edge_uncovered(grid: &Grid, f: EdgeId) -> Result<VertexId, ConstructionError> {
    let edge = *grid.check_edge(f)?;
    let d = edge.position;
    let j = grid.coord(edge.lo, d);
    let whole = Region::whole(grid);
    Ok(if (j + 1) % 2 == 0 {
        whole.restrict(d, j + 1, grid.dims()[d] - 1).corner(grid)
    } else {
        whole.corner(grid)
    })
}

/// Perfect matching of `(G − u) − F` for an all-even `u` and `|F| ≤ n − 1`.
///
/// Splits at the position of a fault edge, threads a fault-free transversal
/// path through all-even vertices of every layer, and recurses layer by layer.
pub fn pm_of_vertex_deleted(
    grid: &Grid,
    u: VertexId,
    faults: &FaultSet,
) -> Result<Matching, ConstructionError> {
    require_odd_order(grid)?;
    if !grid.is_all_even(u) {
        return Err(ConstructionError::NotAllEven(grid.format_vertex(u)));
    }
    if faults.len() + 1 > grid.n() {
        return Err(ConstructionError::TooManyFaults {
            size: faults.len(),
            max: grid.n() - 1,
        });
    }
    for f in faults.iter() {
        if grid.check_edge(f)?.touches(u) {
            return Err(ConstructionError::FaultAtDeletedVertex(grid.format_edge(f)));
        }
    }
    region_pm_minus(grid, &Region::whole(grid), u, faults)
}

fn require_odd_order(grid: &Grid) -> Result<(), ConstructionError> {
    if grid.is_even_order() {
        Err(ConstructionError::EvenOrder)
    } else {
        Ok(())
    }
}

/// Crossing sets `(a, a+1), (a+2, a+3), …` up to but excluding relative layer `end`.
fn pair_layers(grid: &Grid, r: &Region, d: usize, start: usize, end: usize, m: &mut Matching) {
    let mut j = start;
    while j + 1 < end {
        for e in r.crossing(grid, d, j) {
            m.insert(e);
        }
        j += 2;
    }
}

fn region_pm(grid: &Grid, r: &Region, d: usize) -> Matching {
    let mut m = Matching::empty();
    pair_layers(grid, r, d, 0, r.extent(d), &mut m);
    m
}

fn region_apm_all_even(grid: &Grid, r: &Region, u: VertexId) -> Matching {
    debug_assert!(r.contains(grid, u) && r.is_all_even(grid, u));
    let Some(d) = r.free_positions().next() else {
        return Matching::empty();
    };
    let ud = r.rel(grid, u, d);
    let mut m = Matching::empty();
    pair_layers(grid, r, d, 0, ud, &mut m);
    pair_layers(grid, r, d, ud + 1, r.extent(d), &mut m);
    m.extend(region_apm_all_even(grid, &r.fix(d, grid.coord(u, d)), u));
    m
}

fn region_apm_even_sum(grid: &Grid, r: &Region, u: VertexId) -> Matching {
    let odd: Vec<usize> = (0..grid.n())
        .filter(|&d| r.rel(grid, u, d) % 2 == 1)
        .collect();
    debug_assert!(odd.len() % 2 == 0);
    let (p0, p1) = match odd[..] {
        [] => return region_apm_all_even(grid, r, u),
        [p0, p1, ..] => (p0, p1),
        _ => unreachable!("coordinate sum is even"),
    };
    let (a, b) = (r.rel(grid, u, p0), r.rel(grid, u, p1));
    let (c0, c1) = (grid.coord(u, p0), grid.coord(u, p1));
    let mut m = Matching::empty();

    // M_0: pair the layers at p0 away from u_0 − 1, u_0, u_0 + 1.
    pair_layers(grid, r, p0, 0, a - 1, &mut m);
    pair_layers(grid, r, p0, a + 2, r.extent(p0), &mut m);

    // Inside H = layer u_0, the same at p1, then recurse on the (n−2)-grid through u.
    let h = r.fix(p0, c0);
    pair_layers(grid, &h, p1, 0, b - 1, &mut m);
    pair_layers(grid, &h, p1, b + 2, h.extent(p1), &mut m);
    m.extend(region_apm_even_sum(grid, &h.fix(p1, c1), u));

    // Companions v, w next to u at p1 with every other free coordinate at the low corner.
    let mut coords = r.lo.clone();
    coords[p0] = c0;
    coords[p1] = c1 - 1;
    let v = grid.index_of(&coords).expect("companion inside grid");
    coords[p1] = c1 + 1;
    let w = grid.index_of(&coords).expect("companion inside grid");
    m.extend(region_apm_all_even(grid, &h.fix(p1, c1 - 1), v));
    m.extend(region_apm_all_even(grid, &h.fix(p1, c1 + 1), w));

    let v_minus = grid.shift(v, p0, -1).expect("u_0 is odd");
    let w_plus = grid.shift(w, p0, 1).expect("u_0 < k_0 − 1");
    m.extend(region_apm_all_even(grid, &r.fix(p0, c0 - 1), v_minus));
    m.extend(region_apm_all_even(grid, &r.fix(p0, c0 + 1), w_plus));
    m.insert(grid.edge_between(v_minus, v).expect("adjacent"));
    m.insert(grid.edge_between(w, w_plus).expect("adjacent"));
    m
}

fn region_pm_minus(
    grid: &Grid,
    r: &Region,
    u: VertexId,
    faults: &FaultSet,
) -> Result<Matching, ConstructionError> {
    let Some(first) = faults.iter().find(|&e| r.contains_edge(grid, e)) else {
        return Ok(region_apm_all_even(grid, r, u));
    };
    let d = grid.edge(first).position;
    let ext = r.extent(d);

    // Lexicographically first all-even transversal at d avoiding F.
    let others: Vec<usize> = r.free_positions().filter(|&s| s != d).collect();
    let mut choice = vec![0usize; others.len()];
    let path = loop {
        let mut coords = r.lo.clone();
        for (&s, &x) in others.iter().zip(&choice) {
            coords[s] += x;
        }
        let path: Vec<VertexId> = (0..ext)
            .map(|j| {
                coords[d] = r.lo[d] + j;
                grid.index_of(&coords).expect("transversal inside grid")
            })
            .collect();
        let clear = path[..ext - 1]
            .iter()
            .all(|&v| !faults.contains(grid.up_edge(v, d).expect("path edge")));
        if clear {
            break path;
        }
        // Advance the odometer over even offsets, last position fastest.
        let mut i = others.len();
        loop {
            if i == 0 {
                return Err(ConstructionError::NotFound);
            }
            i -= 1;
            if choice[i] + 2 < r.extent(others[i]) {
                choice[i] += 2;
                break;
            }
            choice[i] = 0;
        }
    };

    let ud = r.rel(grid, u, d);
    let mut m = Matching::empty();
    for (j, &vj) in path.iter().enumerate() {
        let layer = r.fix(d, r.lo[d] + j);
        let skip = if j == ud { u } else { vj };
        m.extend(region_pm_minus(grid, &layer, skip, faults)?);
    }
    for j in (0..ud)
        .step_by(2)
        .chain((ud + 1..ext.saturating_sub(1)).step_by(2))
    {
        m.insert(grid.up_edge(path[j], d).expect("path edge"));
    }
    Ok(m)
}
