use num_rational::BigRational;
use qsym::graph::cayley::{cayley_recursion_check, check_recursions, CayleySet, RecursionInputs};
use qsym::graph::Sign;
use qsym::qgraph::{
    adjacency_recursion_check, build_weyl_system, cross_model_check, dimension_check, idempotent_schur_check, is_cocycle,
    literal_phase, omega, quantum_adjacency, schur_square, symmetric_space_recursion_check, weyl_check,
};

#[test]
fn weyl_relations_hold() {
    for k in 1..=3 {
        let r = weyl_check(k, 64, 9);
        assert!(r.relations_hold && r.unitary && r.identity_at_zero && r.squares_scalar && r.cocycle_identity, "{r:?}");
        assert_ne!(r.orthogonal_basis, Some(false));
        assert_eq!(build_weyl_system(k).ops.len(), 1 << (2 * k));
    }
    assert!(is_cocycle(2, omega));
    assert!(!is_cocycle(1, literal_phase));
}

#[test]
fn schur_law_and_its_negative_control() {
    for k in 1..=3 {
        for sign in [Sign::Plus, Sign::Minus] {
            let r = idempotent_schur_check(k, sign);
            assert!(r.idempotent_schur && r.self_adjoint && r.unit_degree, "{r:?}");
        }
    }
    // twice an adjacency operator is not Schur idempotent
    for sign in [Sign::Plus, Sign::Minus] {
        let a = quantum_adjacency(2, sign).matrix;
        let two = a.scale(&BigRational::from_integer(2.into()));
        assert_ne!(schur_square(&two, 4), two);
        assert_eq!(schur_square(&two, 4), two.scale(&BigRational::from_integer(2.into())));
    }
}

#[test]
fn adjacency_and_space_recursions() {
    for k in 1..=2 {
        let r = adjacency_recursion_check(k);
        assert!(r.plus_holds && r.minus_holds, "{r:?}");
    }
    for k in 1..=3 {
        let r = symmetric_space_recursion_check(k);
        assert!(r.symmetric_holds && r.antisymmetric_holds, "{r:?}");
        for sign in [Sign::Plus, Sign::Minus] {
            let c = cross_model_check(k, sign);
            assert!(c.classical_recursion_holds && c.walk_counts_match, "{c:?}");
        }
    }
}

#[test]
fn set_sizes_equal_projection_ranks() {
    let expected = [(2, 0), (9, 5), (35, 27), (135, 119)];
    for (k, &(s, a)) in (1..=4).zip(expected.iter()) {
        let r = dimension_check(k);
        assert!(r.holds(), "{r:?}");
        assert_eq!((r.dim_s, r.dim_a), (s, a));
        assert_eq!((CayleySet::y(Sign::Plus, k).len(), CayleySet::y(Sign::Minus, k).len()), (s, a));
    }
}

#[test]
fn cayley_recursions_and_corruption() {
    for k in 1..=5 {
        assert!(cayley_recursion_check(k).passed(), "k={k}");
    }
    let mut inp = RecursionInputs::new(2);
    let z = &inp.z_h_k;
    let mut members = z.members().clone();
    members.remove(z.iter().next().unwrap());
    inp.z_h_k = CayleySet::from_members(z.k, z.sign, z.level, members);
    let r = check_recursions(2, &inp);
    assert!(!r.passed());
    assert!(r.witness.is_some());
}
