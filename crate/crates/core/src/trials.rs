//! Seeded randomized checks of the nice-cycle algebra.
//!
//! Each instance draws a small grid, a random perfect or almost-perfect
//! matching `M` (the witness matching scrambled by random square flips), an
//! `M`-alternating square `C`, and a fault set `F` with `∅ ≠ C ∩ F ⊆ M`. The
//! post-conditions are then checked directly on edge sets.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{EdgeId, Grid};
use crate::matching::{
    apply_nice_cycles, is_matching, is_mp_set, is_nice_cycle, squares, symmetric_difference, Cycle,
    FaultSet, Matching,
};
use crate::preclusion::witness;

pub const DEFAULT_SEED: u64 = 0x6d70_6772_6964;

const TRIAL_DIMS: &[&[usize]] = &[
    &[2, 2],
    &[2, 3],
    &[3, 3],
    &[4, 3],
    &[4, 4],
    &[5, 3],
    &[6, 3],
    &[5, 5],
    &[2, 2, 2],
    &[3, 3, 3],
    &[2, 3, 4],
    &[3, 3, 5],
    &[2, 2, 2, 2],
];

#[derive(Debug, Clone, Default)]
pub struct TrialSummary {
    pub instances: usize,
    /// Instances where a set of disjoint nice cycles covered all of `F ∩ M`.
    pub disjoint_cycle_instances: usize,
    pub failures: Vec<String>,
}

impl TrialSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn nice_cycle_trials(seed: u64, count: usize) -> TrialSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grids: Vec<(Grid, Vec<Cycle>)> = TRIAL_DIMS
        .iter()
        .map(|d| {
            let g = Grid::new(d).expect("valid dims");
            let sq = squares(&g);
            (g, sq)
        })
        .collect();
    let mut summary = TrialSummary::default();
    while summary.instances < count {
        let (grid, squares) = &grids[rng.gen_range(0..grids.len())];
        let m = scramble(grid, squares, &mut rng);
        let alternating: Vec<&Cycle> = squares.iter().filter(|c| c.is_alternating(&m)).collect();
        let Some(&c) = alternating.choose(&mut rng) else {
            continue;
        };
        let faults = draw_faults(grid, &m, c, &mut rng);
        summary.instances += 1;
        let tag = format!(
            "#{} grid {} F {:?}",
            summary.instances,
            grid,
            faults.format(grid)
        );
        if let Err(why) = check_instance(grid, &m, c, &faults) {
            summary.failures.push(format!("{tag}: {why}"));
            continue;
        }
        match check_disjoint_flip(grid, &m, squares, &faults) {
            Ok(true) => summary.disjoint_cycle_instances += 1,
            Ok(false) => {}
            Err(why) => summary.failures.push(format!("{tag}: {why}")),
        }
    }
    summary
}

fn scramble(grid: &Grid, squares: &[Cycle], rng: &mut ChaCha8Rng) -> Matching {
    let mut m = witness(grid);
    if squares.is_empty() {
        return m;
    }
    for _ in 0..4 * squares.len() {
        let c = &squares[rng.gen_range(0..squares.len())];
        if let Ok(next) = symmetric_difference(&m, c) {
            m = next;
        }
    }
    m
}

fn draw_faults(grid: &Grid, m: &Matching, c: &Cycle, rng: &mut ChaCha8Rng) -> FaultSet {
    let on_c: Vec<EdgeId> = c
        .edges()
        .iter()
        .copied()
        .filter(|&e| m.contains(e))
        .collect();
    let mut chosen: BTreeSet<EdgeId> = on_c.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if chosen.is_empty() {
        chosen.insert(
            *on_c
                .choose(rng)
                .expect("alternating cycle has matching edges"),
        );
    }
    for e in grid.edge_ids() {
        if !c.contains(e) && rng.gen_bool(0.15) {
            chosen.insert(e);
        }
    }
    FaultSet::new(grid, chosen).expect("ids from grid")
}

fn check_instance(grid: &Grid, m: &Matching, c: &Cycle, faults: &FaultSet) -> Result<(), String> {
    if !is_nice_cycle(faults, m, c) {
        return Err("generated cycle is not nice".into());
    }
    let flipped = symmetric_difference(m, c).map_err(|e| e.to_string())?;
    if flipped.len() != m.len() {
        return Err(format!("|M∆C| = {} but |M| = {}", flipped.len(), m.len()));
    }
    if !is_matching(grid, flipped.iter()).map_err(|e| e.to_string())? {
        return Err("M∆C is not a matching".into());
    }
    if flipped.covered(grid) != m.covered(grid) {
        return Err("covered vertex set changed".into());
    }
    let on_c: BTreeSet<EdgeId> = c
        .edges()
        .iter()
        .copied()
        .filter(|&e| faults.contains(e))
        .collect();
    let expect: BTreeSet<EdgeId> = m.faults(faults).difference(&on_c).copied().collect();
    if flipped.faults(faults) != expect {
        return Err("(M∆C) ∩ F differs from (M ∩ F) ∖ (C ∩ F)".into());
    }
    Ok(())
}

/// Greedily picks disjoint nice squares covering `F ∩ M`; when that succeeds
/// the combined flip must be fault-free and `F` cannot be a preclusion set.
fn check_disjoint_flip(
    grid: &Grid,
    m: &Matching,
    squares: &[Cycle],
    faults: &FaultSet,
) -> Result<bool, String> {
    let mut used: BTreeSet<EdgeId> = BTreeSet::new();
    let mut picked = Vec::new();
    for f in m.faults(faults) {
        if used.contains(&f) {
            continue;
        }
        let Some(c) = squares.iter().find(|c| {
            c.contains(f)
                && is_nice_cycle(faults, m, c)
                && c.edges().iter().all(|e| !used.contains(e))
        }) else {
            return Ok(false);
        };
        used.extend(c.edges().iter().copied());
        picked.push(c.clone());
    }
    let out = apply_nice_cycles(m, &picked, faults).map_err(|e| e.to_string())?;
    if out.len() != m.len() || !out.faults(faults).is_empty() {
        return Err("M_∆ keeps a fault edge or changes size".into());
    }
    if is_mp_set(grid, faults) {
        return Err(
            "fault-free maximum matching exists yet oracle reports a preclusion set".into(),
        );
    }
    Ok(true)
}
