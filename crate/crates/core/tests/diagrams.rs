mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use qsym::diagram::count::Counter;
use qsym::diagram::planarity::is_planar;
use qsym::diagram::{coeff_vector, enumerate_diagrams, gamma0, raw_value, CountMode, Diagram, EnumerationBudget};
use qsym::graph::families;
use qsym::symmetry::{automorphism_group, OrbitIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{naive_value, random_graph, sample_diagrams};

#[test]
fn planarity_matches_networkx_fixture() {
    let data = include_str!("data/planarity_cases.txt");
    let mut checked = 0;
    for line in data.lines() {
        let parts: Vec<&str> = line.split(';').collect();
        let n: usize = parts[0].parse().unwrap();
        let edges: Vec<(usize, usize)> = if parts[1].is_empty() {
            vec![]
        } else {
            parts[1]
                .split(',')
                .map(|e| {
                    let (a, b) = e.split_once('-').unwrap();
                    (a.parse().unwrap(), b.parse().unwrap())
                })
                .collect()
        };
        assert_eq!(is_planar(n, &edges), parts[2] == "1", "case {line}");
        checked += 1;
    }
    assert_eq!(checked, 600);
}

#[test]
fn internal_free_catalog_matches_exhaustive_generation() {
    // every set partition, every subset of the six external pairs, edges moved to class minima
    let mut expected: BTreeSet<String> = BTreeSet::new();
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
    let mut label = [0usize; 4];
    for code in 0..256usize {
        for (i, l) in label.iter_mut().enumerate() {
            *l = (code >> (2 * i)) & 3;
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for c in 0..4 {
            let cl: Vec<usize> = (0..4).filter(|&i| label[i] == c).collect();
            if !cl.is_empty() {
                classes.push(cl);
            }
        }
        let min_of = |i: usize| (0..4).find(|&j| label[j] == label[i]).unwrap();
        for mask in 0..64u32 {
            let sel: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
            if sel.iter().any(|&(a, b)| label[a] == label[b]) {
                continue;
            }
            let mut ee: Vec<(usize, usize)> = sel.iter().map(|&(a, b)| (min_of(a), min_of(b))).collect();
            ee.sort_unstable();
            if ee.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let d = Diagram::new(4, classes.clone(), ee, vec![], vec![], 0);
            if d.validate().is_ok() {
                expected.insert(d.encode());
            }
        }
    }
    let cat: BTreeSet<String> = enumerate_diagrams(4, EnumerationBudget { max_internal: 0, max_edges: 6 })
        .iter()
        .map(Diagram::encode)
        .collect();
    assert_eq!(cat, expected);
    // the full-support square with both diagonals crossing is excluded, the 4-cycle is present
    assert!(cat.contains("k=4;p=0|1|2|3;ee=0-1,0-3,1-2,2-3;ei=;ii=;n=0"));
    assert!(!cat.iter().any(|s| s.contains("ee=0-1,0-2,0-3,1-2,1-3,2-3")));
}

#[test]
fn coeff_vector_matches_naive_enumeration_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let diagrams = sample_diagrams();
    for _ in 0..6 {
        let n = rng.gen_range(5..=8);
        let g = random_graph(&mut rng, n, 0.5);
        let grp = automorphism_group(&g);
        let idx = OrbitIndex::build(&g, &grp, 4).unwrap();
        for d in &diagrams {
            let v = coeff_vector(&g, &idx, d).unwrap().as_i128().unwrap();
            for (id, rep) in idx.representatives().iter().enumerate() {
                assert_eq!(v[id] as u128, naive_value(&g, d, rep), "{d} at {rep:?}");
            }
        }
    }
}

#[test]
fn raw_values_are_orbit_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = families::build_orthogonal_polar(2).unwrap();
    let grp = automorphism_group(&g);
    let diagrams = sample_diagrams();
    for d in diagrams.iter().take(8) {
        let c = Counter::new(d, CountMode::Homomorphism);
        for _ in 0..1000 {
            let x: Vec<usize> = (0..4).map(|_| rng.gen_range(0..g.n())).collect();
            let p = &grp.generators()[rng.gen_range(0..grp.generators().len())];
            let y: Vec<usize> = x.iter().map(|&v| p.apply(v)).collect();
            assert_eq!(c.value(&g, &x), c.value(&g, &y));
        }
    }
}

#[test]
fn gamma0_takes_three_point_values_on_o6_2() {
    let g = families::build_orthogonal_polar(2).unwrap();
    let d = gamma0();
    // one triple of each shape, found by search
    let mut seen = [None; 4];
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            for c in b + 1..g.n() {
                let e = g.adjacent(a, b) as usize + g.adjacent(a, c) as usize + g.adjacent(b, c) as usize;
                if seen[e].is_none() {
                    seen[e] = Some(raw_value(&g, &d, &[a, b, c], CountMode::Homomorphism));
                }
            }
        }
    }
    assert_eq!(seen, [Some(3), Some(1), Some(0), Some(0)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn count_is_independent_of_visit_order(seed in any::<u64>(), which in 0usize..25) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let diagrams = sample_diagrams();
        let d = &diagrams[which % diagrams.len()];
        let g = random_graph(&mut rng, 9, 0.45);
        let mut order: Vec<usize> = (0..d.n_int).collect();
        order.reverse();
        let a = Counter::new(d, CountMode::Homomorphism);
        let b = Counter::with_order(d, order, CountMode::Homomorphism);
        for _ in 0..30 {
            let x: Vec<usize> = (0..4).map(|_| rng.gen_range(0..9)).collect();
            prop_assert_eq!(a.value(&g, &x), b.value(&g, &x));
        }
    }

    #[test]
    fn disjoint_union_counts_factor(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 8, 0.5);
        // left part on externals 0,1, right part on 2,3; each an internal with three edges
        let left = Diagram::new(2, vec![vec![0], vec![1]], vec![(0, 1)], vec![(0, 0), (1, 0), (0, 1), (1, 1)], vec![(0, 1)], 2);
        let right = Diagram::new(2, vec![vec![0], vec![1]], vec![], vec![(0, 0), (1, 0)], vec![], 1);
        let both = Diagram::new(
            4,
            vec![vec![0], vec![1], vec![2], vec![3]],
            vec![(0, 1)],
            vec![(0, 0), (1, 0), (0, 1), (1, 1), (2, 2), (3, 2)],
            vec![(0, 1)],
            3,
        );
        let x: Vec<usize> = (0..4).map(|_| rng.gen_range(0..8)).collect();
        let m = CountMode::Homomorphism;
        prop_assert_eq!(
            raw_value(&g, &both, &x, m),
            raw_value(&g, &left, &x[..2], m) * raw_value(&g, &right, &x[2..], m)
        );
    }
}
