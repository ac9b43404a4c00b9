use num_bigint::BigUint;
use proptest::prelude::*;
use qsym::graph::families::{build_orthogonal_polar, build_orthogonal_polar_with};
use qsym::graph::field::PrimeField;
use qsym::graph::graph6::{emit_graph6, parse_graph6};
use qsym::graph::quadratic::monic_irreducibles;
use qsym::graph::srg::{three_point_parameters, verify_srg};
use qsym::symmetry::{are_isomorphic, automorphism_group, canonical_form, OrbitIndex, PermGroup};
use qsym::{Graph, Provenance};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    Graph::from_fn(n, Provenance::Ingested { source: "random".into() }, |_, _| rng.gen_bool(p))
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (0usize..80, any::<u64>(), 0.0f64..1.0).prop_map(|(n, seed, p)| random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn graph6_round_trip(g in arb_graph()) {
        let bytes = emit_graph6(&g).unwrap();
        let back = parse_graph6(&bytes).unwrap();
        prop_assert_eq!(back.adjacency_hash(), g.adjacency_hash());
        prop_assert_eq!(emit_graph6(&back).unwrap(), bytes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn canonical_form_ignores_labels(seed in any::<u64>(), n in 1usize..14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.4);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&g).adjacency_hash(), canonical_form(&h).adjacency_hash());
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(automorphism_group(&g).order(), automorphism_group(&h).order());
    }
}

#[test]
fn orthogonal_polar_does_not_depend_on_the_irreducible() {
    for q in [2u32, 3] {
        let reference = build_orthogonal_polar(q).unwrap();
        let field = PrimeField::new(q).unwrap();
        let forms = monic_irreducibles(field);
        assert!(!forms.is_empty());
        for qe in forms {
            let g = build_orthogonal_polar_with(q, qe).unwrap();
            assert!(are_isomorphic(&g, &reference), "q={q} form {qe:?}");
            assert_eq!(verify_srg(&g).unwrap(), verify_srg(&reference).unwrap());
        }
    }
}

#[test]
fn three_point_parameters_survive_relabeling() {
    let g = build_orthogonal_polar(2).unwrap();
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(5));
    assert_eq!(three_point_parameters(&g.relabel(&perm)).unwrap(), three_point_parameters(&g).unwrap());
}

#[test]
fn schlaefli_complement_group_order() {
    // O-(6,2) is the complement of the Schlaefli graph, whose group is W(E6)
    let g = build_orthogonal_polar(2).unwrap();
    assert_eq!(automorphism_group(&g).order(), BigUint::from(51840u32));
}

#[test]
fn orbit_index_stable_under_generator_order() {
    let g = build_orthogonal_polar(2).unwrap();
    let group = automorphism_group(&g);
    let base = OrbitIndex::build(&g, &group, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3 {
        let mut gens = group.generators().to_vec();
        gens.shuffle(&mut rng);
        let shuffled = PermGroup::new(g.n(), gens);
        assert_eq!(shuffled.order(), group.order());
        let idx = OrbitIndex::build(&g, &shuffled, 4).unwrap();
        assert_eq!(idx.representatives(), base.representatives());
        assert_eq!(idx.orbit_sizes(), base.orbit_sizes());
        for _ in 0..500 {
            let t: Vec<usize> = (0..4).map(|_| rng.gen_range(0..g.n())).collect();
            assert_eq!(idx.lookup(&t), base.lookup(&t));
        }
    }
}

#[test]
fn orbit_sizes_sum_to_all_tuples() {
    for q in [2u32, 3] {
        let g = build_orthogonal_polar(q).unwrap();
        let idx = OrbitIndex::build(&g, &automorphism_group(&g), 4).unwrap();
        assert_eq!(idx.orbit_sizes().iter().sum::<u64>(), (g.n() as u64).pow(4));
    }
}
