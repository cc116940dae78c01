mod common;

use proptest::prelude::*;

use gridmp::matching::{
    classify_fault_edge, f4_cycles, is_mp_set, is_nice_cycle, FaultKind, FaultSet,
    DEFAULT_CYCLE_LIMIT,
};
use gridmp::preclusion::{
    binomial, brute_force_mp, classify_set, enumerate_optimal_sets, special_patterns, witness,
    Classification, SearchOptions, Searcher,
};
use gridmp::{EdgeId, Grid, PreclusionError};

/// Smallest precluding size and all precluding sets of that size, by plain
/// subset enumeration and the Kuhn oracle.
fn plain_mp(g: &Grid) -> (usize, Vec<Vec<EdgeId>>) {
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    let target = g.order() / 2;
    for k in 1..=edges.len() {
        let mut found = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let set: Vec<EdgeId> = idx.iter().map(|&i| edges[i]).collect();
            if common::kuhn_matching_number(g, &set, &[]) < target {
                found.push(set);
            }
            // Next k-combination in lexicographic order.
            let mut i = k;
            while i > 0 && idx[i - 1] == edges.len() - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        if !found.is_empty() {
            return (k, found);
        }
    }
    unreachable!()
}

#[test]
fn exhaustive_search_matches_plain_enumeration() {
    for dims in common::all_dims(4, 16) {
        let g = Grid::new(&dims).unwrap();
        if g.edge_count() > 32 {
            continue;
        }
        let (mp, plain) = plain_mp(&g);
        for prune in [true, false] {
            let opts = SearchOptions {
                prune,
                ..SearchOptions::default()
            };
            let (ours, sets) = enumerate_optimal_sets(&g, &opts).unwrap();
            assert_eq!(ours, mp, "{g}");
            let sets: Vec<Vec<EdgeId>> = sets.iter().map(|f| f.iter().collect()).collect();
            assert_eq!(sets, plain, "{g} prune={prune}");
        }
    }
}

#[test]
fn pruning_is_sound_at_every_level() {
    for dims in common::all_dims(4, 12) {
        let g = Grid::new(&dims).unwrap();
        let w = witness(&g);
        let pruned = Searcher::new(&g, &w, true);
        let plain = Searcher::new(&g, &w, false);
        let mp = brute_force_mp(&g, &SearchOptions::default()).unwrap();
        for k in 1..=(mp + 1).min(g.edge_count()) {
            assert_eq!(pruned.collect(k), plain.collect(k), "{g} k={k}");
            assert_eq!(pruned.exists(k), k >= mp, "{g} k={k}");
            assert!(pruned.count(k) <= plain.count(k));
            assert_eq!(plain.count(k), binomial(g.edge_count() as u128, k as u128));
        }
    }
}

#[test]
fn special_two_grid_patterns() {
    for k in (2..=12).step_by(2) {
        for dims in [[k, 3], [3, k]] {
            let g = Grid::new(&dims).unwrap();
            let specials = special_patterns(&g);
            assert_eq!(specials.len(), k / 2, "{g}");
            for (f, c) in &specials {
                assert_eq!(classify_set(&g, f, 2).unwrap(), *c);
                let axis = if dims[0] == k { 0 } else { 1 };
                assert!(matches!(c, Classification::SpecialTwoGrid { axis: a, .. } if *a == axis));
            }
        }
    }
    assert!(special_patterns(&Grid::new(&[4, 5]).unwrap()).is_empty());
    assert!(special_patterns(&Grid::new(&[3, 3]).unwrap()).is_empty());
    assert!(special_patterns(&Grid::new(&[2, 3, 2]).unwrap()).is_empty());
}

#[test]
fn classify_set_rejects_non_optimal() {
    let g = Grid::new(&[4, 4]).unwrap();
    let corner = FaultSet::star(&g, 0);
    assert_eq!(
        classify_set(&g, &corner, 2).unwrap(),
        Classification::TrivialAtVertex(0)
    );
    let loose = FaultSet::parse(&g, ["0,0|1,0", "2,2|3,2"]).unwrap();
    assert!(matches!(
        classify_set(&g, &loose, 2),
        Err(PreclusionError::NotOptimal)
    ));
    assert!(matches!(
        classify_set(&g, &corner, 3),
        Err(PreclusionError::NotOptimal)
    ));
}

#[test]
fn budget_and_limit_gates() {
    let g = Grid::new(&[4, 4]).unwrap();
    let tight = SearchOptions {
        budget: 5,
        ..SearchOptions::default()
    };
    match brute_force_mp(&g, &tight) {
        Err(PreclusionError::BudgetExceeded {
            size,
            budget,
            lower_bound,
            ..
        }) => {
            assert_eq!(budget, 5);
            assert_eq!(lower_bound, size);
        }
        other => panic!("{other:?}"),
    }
    let capped = SearchOptions {
        limit: Some(1),
        ..SearchOptions::default()
    };
    assert!(matches!(
        brute_force_mp(&g, &capped),
        Err(PreclusionError::LimitReached { limit: 1 })
    ));
}

#[test]
fn binomial_matches_pascal() {
    let mut row = vec![1u128];
    for n in 0..=80u128 {
        for (k, &c) in row.iter().enumerate() {
            assert_eq!(binomial(n, k as u128), c);
        }
        assert_eq!(binomial(n, n + 1), 0);
        let mut next = vec![1u128; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    assert_eq!(binomial(100_000, 50_000), u128::MAX);
}

fn small_dims() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(2usize..=5, 2..=3)
        .prop_filter("order bound", |d| d.iter().product::<usize>() <= 45)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn precludes_agrees_with_kuhn(dims in small_dims(), picks in prop::collection::vec(any::<u16>(), 1..6)) {
        let g = Grid::new(&dims).unwrap();
        let set: Vec<EdgeId> = picks.iter().map(|&p| EdgeId(p as usize % g.edge_count())).collect();
        let f = FaultSet::new(&g, set.iter().copied()).unwrap();
        let kuhn = common::kuhn_matching_number(&g, &set, &[]);
        let searcher = Searcher::new(&g, &witness(&g), true);
        prop_assert_eq!(searcher.precludes(&f), kuhn < g.order() / 2);
        prop_assert_eq!(is_mp_set(&g, &f), 2 * kuhn + 1 < g.order());
    }

    #[test]
    fn nice_fault_witnesses_are_nice(dims in small_dims(), picks in prop::collection::vec(any::<u16>(), 1..5)) {
        let g = Grid::new(&dims).unwrap();
        let m = witness(&g);
        let matched: Vec<EdgeId> = m.iter().collect();
        let f = matched[picks[0] as usize % matched.len()];
        let extra = picks[1..].iter().map(|&p| EdgeId(p as usize % g.edge_count()));
        let faults = FaultSet::new(&g, std::iter::once(f).chain(extra)).unwrap();
        let verdict = classify_fault_edge(&g, &faults, &m, f, DEFAULT_CYCLE_LIMIT).unwrap();
        prop_assert_eq!(verdict.max_len, DEFAULT_CYCLE_LIMIT);
        let square = f4_cycles(&g, f).unwrap().into_iter().any(|c| is_nice_cycle(&faults, &m, &c));
        match verdict.kind {
            FaultKind::NiceFault => {
                let c = verdict.witness.expect("nice verdict carries a cycle");
                prop_assert!(c.contains(f));
                prop_assert!(c.len() <= DEFAULT_CYCLE_LIMIT);
                prop_assert!(is_nice_cycle(&faults, &m, &c));
            }
            FaultKind::BadFault => {
                prop_assert!(!square);
                prop_assert!(verdict.witness.is_none());
            }
        }
    }
}

#[test]
fn degree_bound_and_odd_two_grids() {
    use gridmp::preclusion::{desk_family, sweep};
    let family: Vec<Grid> = desk_family(3, 36)
        .iter()
        .map(|d| Grid::new(d).unwrap())
        .collect();
    let results = sweep(&family, &SearchOptions::default());
    for (g, r) in family.iter().zip(results) {
        let r = r.unwrap();
        if g.is_even_order() {
            assert!(r.mp <= g.min_degree(), "{g}");
        } else if g.n() == 2 {
            assert_eq!(r.mp, 3, "{g}");
        }
    }
    assert!(sweep(&[], &SearchOptions::default()).is_empty());
}
