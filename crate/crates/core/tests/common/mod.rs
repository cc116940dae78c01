//! Test-only oracles, written without reference to the library's algorithms.

#![allow(dead_code)]

use gridmp::{EdgeId, Grid};

/// Maximum matching size of `G − deleted − removed` by Kuhn's simple augmenting
/// DFS over an adjacency list rebuilt from coordinates.
pub fn kuhn_matching_number(grid: &Grid, deleted: &[EdgeId], removed: &[usize]) -> usize {
    let n = grid.order();
    let dims = grid.dims();
    let coords: Vec<Vec<usize>> = (0..n).map(|v| grid.vertex(v).0).collect();
    let index = |c: &[usize]| c.iter().zip(dims).fold(0, |acc, (&x, &k)| acc * k + x);
    let dead: std::collections::HashSet<(usize, usize)> = deleted
        .iter()
        .map(|&e| {
            let edge = grid.edge(e);
            (edge.lo.min(edge.hi), edge.lo.max(edge.hi))
        })
        .collect();
    let gone = |v: usize| removed.contains(&v);
    let mut adj = vec![Vec::new(); n];
    for v in 0..n {
        if gone(v) {
            continue;
        }
        for d in 0..dims.len() {
            if coords[v][d] + 1 < dims[d] {
                let mut c = coords[v].clone();
                c[d] += 1;
                let w = index(&c);
                if !gone(w) && !dead.contains(&(v, w)) {
                    adj[v].push(w);
                    adj[w].push(v);
                }
            }
        }
    }
    let left: Vec<usize> = (0..n)
        .filter(|&v| !gone(v) && coords[v].iter().sum::<usize>() % 2 == 0)
        .collect();
    let mut mate = vec![usize::MAX; n];
    fn try_augment(v: usize, adj: &[Vec<usize>], mate: &mut [usize], seen: &mut [bool]) -> bool {
        for &w in &adj[v] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if mate[w] == usize::MAX || try_augment(mate[w], adj, mate, seen) {
                mate[w] = v;
                return true;
            }
        }
        false
    }
    let mut size = 0;
    for &v in &left {
        let mut seen = vec![false; n];
        if try_augment(v, &adj, &mut mate, &mut seen) {
            size += 1;
        }
    }
    size
}

/// All dims lists (each factor at least 2) with at most `max_n` factors and
/// product at most `max_order`, by plain odometer enumeration.
pub fn all_dims(max_n: usize, max_order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let top = max_order >> (n - 1);
        if top < 2 {
            break;
        }
        let mut d = vec![2; n];
        'count: loop {
            if d.iter().product::<usize>() <= max_order {
                out.push(d.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break 'count;
                }
                i -= 1;
                if d[i] < top {
                    d[i] += 1;
                    break;
                }
                d[i] = 2;
            }
        }
    }
    out
}
