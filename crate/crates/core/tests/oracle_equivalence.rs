//! Solver-versus-enumeration agreement beyond the main randomized sweep:
//! integral rounding modes, degenerate matroids full of loops, boundary
//! constraint sets, and the two interchangeable solution methods.

mod common;

use invmat::{
    oracle_delta, rational_int, solve_instance, validate_instance, verify_solution,
    ConcreteMatroid, ExistsMethod, GroundSubset, Matroid, ProblemInstance, Variant, Weighting,
};
use num_traits::Zero;

fn assert_solver_matches_oracle(instance: &ProblemInstance) {
    let solution = solve_instance(instance, ExistsMethod::Binary).unwrap();
    assert!(
        verify_solution(instance, &solution).unwrap(),
        "solution for {:?} fails verification",
        instance.variant
    );
    let expected = oracle_delta(instance, 12).unwrap();
    assert_eq!(
        solution.delta_star, expected,
        "solver and oracle disagree on a {:?} instance (integral={})",
        instance.variant, instance.integral
    );
}

#[test]
fn integral_rounding_modes_match_the_integral_oracle() {
    let mut rng = common::rng(31);
    for variant in [
        Variant::Im,
        Variant::ImExists,
        Variant::ImAll,
        Variant::RelaxedNotExists,
    ] {
        for _ in 0..75 {
            let instance = common::random_instance(&mut rng, variant, true);
            assert_solver_matches_oracle(&instance);
        }
    }
}

#[test]
fn natively_integral_variants_match_their_oracles() {
    let mut rng = common::rng(32);
    for variant in [
        Variant::ImOnly,
        Variant::ImNotExists,
        Variant::ImNotAll,
        Variant::ImNotOnly,
    ] {
        for _ in 0..50 {
            let instance = common::random_instance(&mut rng, variant, false);
            assert_solver_matches_oracle(&instance);
        }
    }
}

/// Matroids whose ground sets are dominated by loops or rank deficits.
fn degenerate_matroids() -> Vec<ConcreteMatroid> {
    let all_loops_graph =
        ConcreteMatroid::graphic(2, vec![(0, 0), (1, 1), (0, 0)]).unwrap();
    let zero_capacity = ConcreteMatroid::partition(
        4,
        vec![
            GroundSubset::from_elements(4, [0, 1]),
            GroundSubset::from_elements(4, [2]),
        ],
        vec![0, 1],
    )
    .unwrap();
    vec![
        ConcreteMatroid::uniform(4, 0).unwrap(),
        ConcreteMatroid::uniform(1, 1).unwrap(),
        all_loops_graph,
        zero_capacity,
        ConcreteMatroid::graphic(3, vec![(0, 1), (0, 1), (2, 2), (1, 0)]).unwrap(),
        ConcreteMatroid::linear_rational(vec![vec![
            Zero::zero(),
            rational_int(1),
            Zero::zero(),
        ]])
        .unwrap(),
    ]
}

#[test]
fn degenerate_matroids_agree_with_the_oracle() {
    let mut rng = common::rng(33);
    for matroid in degenerate_matroids() {
        let n = matroid.ground_size();
        for variant in Variant::ALL {
            let mut checked = 0;
            for _ in 0..60 {
                let weights = common::random_weights(&mut rng, n);
                let s0 = if variant == Variant::Im {
                    matroid.max_independent_subset(&GroundSubset::full(n))
                } else {
                    common::random_subset(&mut rng, n)
                };
                let instance = ProblemInstance {
                    matroid: matroid.clone(),
                    s0,
                    weights,
                    variant,
                    integral: false,
                };
                if validate_instance(&instance).is_err() {
                    continue;
                }
                assert_solver_matches_oracle(&instance);
                checked += 1;
                if checked >= 10 {
                    break;
                }
            }
        }
    }
}

#[test]
fn boundary_constraint_sets_behave() {
    // No independent element at all: the empty set is the only basis, so the
    // target-basis problem is solved by the input weights themselves.
    let loops = ConcreteMatroid::uniform(3, 0).unwrap();
    let instance = ProblemInstance {
        matroid: loops.clone(),
        s0: GroundSubset::empty(3),
        weights: Weighting::from_i64s(&[4, -1, 2]),
        variant: Variant::Im,
        integral: false,
    };
    let solution = solve_instance(&instance, ExistsMethod::Binary).unwrap();
    assert!(solution.delta_star.is_zero());
    assert_eq!(solution.weights_out.values(), instance.weights.values());
    assert!(verify_solution(&instance, &solution).unwrap());

    // An empty constraint set holds no basis of a positive-rank matroid, so
    // the universally-quantified variant is vacuously satisfied.
    let u32m = ConcreteMatroid::uniform(3, 2).unwrap();
    let vacuous = ProblemInstance {
        matroid: u32m.clone(),
        s0: GroundSubset::empty(3),
        weights: Weighting::from_i64s(&[5, 0, 3]),
        variant: Variant::ImAll,
        integral: false,
    };
    let solution = solve_instance(&vacuous, ExistsMethod::Binary).unwrap();
    assert!(solution.delta_star.is_zero());
    assert!(verify_solution(&vacuous, &solution).unwrap());
    assert_eq!(oracle_delta(&vacuous, 12).unwrap(), rational_int(0));

    // A full constraint set makes existence free.
    let full = ProblemInstance {
        matroid: u32m.clone(),
        s0: GroundSubset::full(3),
        weights: Weighting::from_i64s(&[5, 0, 3]),
        variant: Variant::ImExists,
        integral: false,
    };
    let solution = solve_instance(&full, ExistsMethod::Binary).unwrap();
    assert!(solution.delta_star.is_zero());
    assert!(verify_solution(&full, &solution).unwrap());

    // A full constraint set leaves nothing to escape to, and a single-basis
    // matroid leaves nothing to break exclusivity with.
    let escape = ProblemInstance {
        matroid: u32m,
        s0: GroundSubset::full(3),
        weights: Weighting::from_i64s(&[5, 0, 3]),
        variant: Variant::ImNotExists,
        integral: false,
    };
    assert!(validate_instance(&escape).is_err());
    let single_basis = ProblemInstance {
        matroid: ConcreteMatroid::uniform(2, 2).unwrap(),
        s0: GroundSubset::full(2),
        weights: Weighting::from_i64s(&[1, 1]),
        variant: Variant::ImNotOnly,
        integral: false,
    };
    assert!(validate_instance(&single_basis).is_err());
}

#[test]
fn both_methods_agree_and_verify_on_random_instances() {
    let mut rng = common::rng(34);
    for _ in 0..40 {
        let instance = common::random_instance(&mut rng, Variant::ImExists, false);
        let binary = solve_instance(&instance, ExistsMethod::Binary).unwrap();
        let reduction = solve_instance(&instance, ExistsMethod::Reduction).unwrap();
        assert_eq!(binary.delta_star, reduction.delta_star);
        assert!(verify_solution(&instance, &binary).unwrap());
        assert!(verify_solution(&instance, &reduction).unwrap());
    }
}

#[test]
fn oversized_grounds_are_rejected_by_the_oracle() {
    let wide = ConcreteMatroid::uniform(13, 5).unwrap();
    let instance = ProblemInstance {
        matroid: wide.clone(),
        s0: GroundSubset::from_elements(13, 0..5),
        weights: Weighting::from_i64s(&[0; 13]),
        variant: Variant::ImExists,
        integral: false,
    };
    let err = oracle_delta(&instance, 12).unwrap_err();
    assert!(matches!(err, invmat::Error::Capacity { .. }));
}
