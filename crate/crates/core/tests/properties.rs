mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nonlocality::lhv::{enumerate_strategies, induced_q, lhv_feasible, witness_error, FiniteMeasure, FEASIBILITY_TOL};
use nonlocality::qcore::{joint_probability, marginal_probability, Side};
use nonlocality::witness::{
    ch_expression, classify, generalized_expression, q_vector, Classification, QVector, DEFAULT_TOL,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn mixture(seed: u64, tri: bool) -> QVector {
    use rand::Rng;
    let mut r = rng(seed);
    let strategies = enumerate_strategies(tri);
    let raw: Vec<f64> = strategies.iter().map(|_| r.gen::<f64>().powi(3)).collect();
    let total: f64 = raw.iter().sum();
    let w: Vec<f64> = raw.iter().map(|x| x / total).collect();
    QVector::from_slice(&induced_q(&strategies, &w, tri)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn joint_probabilities_sum_to_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, sc) = common::random_case(&mut r);
        for (o1, o2) in [(sc.x1(), sc.x2()), (sc.y1(), sc.y2()), (sc.x1(), sc.y2())] {
            let mut total = 0.0;
            for a in o1.labels() {
                for b in o2.labels() {
                    total += joint_probability(&state, o1, a, o2, b).unwrap();
                }
            }
            prop_assert!((total - 1.0).abs() < 1e-10, "sum = {}", total);
        }
    }

    #[test]
    fn adjoint_state_gives_same_probabilities(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, sc) = common::random_case(&mut r);
        let adj = state.adjoint();
        for a in sc.x1().labels() {
            for b in sc.y2().labels() {
                let p = joint_probability(&state, sc.x1(), a, sc.y2(), b).unwrap();
                let q = joint_probability(&adj, sc.x1(), a, sc.y2(), b).unwrap();
                prop_assert!((p - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn marginals_do_not_depend_on_the_other_setting(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, sc) = common::random_case(&mut r);
        for a in sc.x1().labels() {
            let m = marginal_probability(&state, Side::First, sc.x1(), a).unwrap();
            for other in [sc.x2(), sc.y2()] {
                let summed: f64 = other
                    .labels()
                    .map(|b| joint_probability(&state, sc.x1(), a, other, b).unwrap())
                    .sum();
                prop_assert!((m - summed).abs() < 1e-10);
            }
        }
        for b in sc.y2().labels() {
            let m = marginal_probability(&state, Side::Second, sc.y2(), b).unwrap();
            let summed: f64 = sc.y1().labels().map(|a| joint_probability(&state, sc.y1(), a, sc.y2(), b).unwrap()).sum();
            prop_assert!((m - summed).abs() < 1e-10);
        }
    }

    #[test]
    fn generalized_equals_ch(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, sc) = common::random_case(&mut r);
        let g = generalized_expression(&q_vector(&state, &sc).unwrap());
        let ch = ch_expression(&state, &sc).unwrap();
        prop_assert!((g - ch).abs() < 1e-10, "{} vs {}", g, ch);
    }

    #[test]
    fn hardy_and_kunkri_violate_the_lower_bound(
        small in proptest::collection::vec(0.0..DEFAULT_TOL / 10.0, 5),
        q1_big in 2.0 * DEFAULT_TOL..0.5,
        gap in 2.0 * DEFAULT_TOL..0.5,
        tri in any::<bool>(),
        kunkri in any::<bool>(),
    ) {
        let q1 = if kunkri { q1_big } else { small[0] };
        let q4 = q1 + gap;
        let mut comps = vec![q1, small[1], small[2], q4];
        if tri {
            comps.extend_from_slice(&small[3..5]);
        }
        let q = QVector::from_slice(&comps).unwrap();
        let g = generalized_expression(&q);
        let class = classify(&q, g, DEFAULT_TOL);
        prop_assert!(matches!(class, Classification::HardyViolation | Classification::KunkriViolation));
        prop_assert!(g < 0.0);
    }

    #[test]
    fn classification_is_stable_under_small_perturbations(
        head in proptest::collection::vec(0.0..1.0f64 / 3.0, 3),
        frac in 0.0..1.0f64,
        delta in proptest::collection::vec(-DEFAULT_TOL / 10.0..DEFAULT_TOL / 10.0, 4),
    ) {
        let tol = DEFAULT_TOL;
        let s: f64 = head.iter().sum();
        // q4 chosen so the expression lands in [0.01, s], well inside the bounds.
        let mut q = head.clone();
        q.push(frac * (s - 0.01).max(0.0));
        // Margin: every component at least tol from the component thresholds.
        prop_assume!(q.iter().all(|&x| (x - tol).abs() > tol));
        let base = QVector::from_slice(&q).unwrap();
        prop_assume!(classify(&base, generalized_expression(&base), tol) == Classification::NoViolation);
        let perturbed: Vec<f64> = q.iter().zip(&delta).map(|(a, d)| (a + d).clamp(0.0, 1.0)).collect();
        let p = QVector::from_slice(&perturbed).unwrap();
        prop_assert_eq!(classify(&p, generalized_expression(&p), tol), Classification::NoViolation);
    }

    #[test]
    fn set_expression_is_bounded(
        weights in proptest::collection::vec(0.0..1.0f64, 1..=16),
        membership in any::<u64>(),
    ) {
        let total: f64 = weights.iter().sum();
        prop_assume!(total > 1e-6);
        let n = weights.len();
        let bit = |set: usize, i: usize| membership >> ((set * 16 + i) % 64) & 1 == 1;
        let m = FiniteMeasure::new(
            weights.iter().map(|w| w / total).collect(),
            (0..n).map(|i| bit(0, i)).collect(),
            (0..n).map(|i| bit(1, i)).collect(),
            (0..n).map(|i| bit(2, i) ^ bit(0, i + 3)).collect(),
            (0..n).map(|i| bit(3, i) ^ bit(1, i + 5)).collect(),
        ).unwrap();
        let v = m.set_expression();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&v));
        prop_assert_eq!(m.proof_step_inequalities(), (true, true));
    }

    #[test]
    fn feasible_witnesses_reproduce_q(q in proptest::collection::vec(0.0..1.0f64, 4)) {
        let q = QVector::from_slice(&q).unwrap();
        let r = lhv_feasible(&q).unwrap();
        if let Some(w) = &r.witness {
            prop_assert!(witness_error(&q, w) <= FEASIBILITY_TOL);
        }
        let g = generalized_expression(&q);
        if !(-1e-9..=1.0 + 1e-9).contains(&g) {
            prop_assert!(!r.feasible);
        }
    }

    #[test]
    fn convex_combinations_stay_feasible(s1 in any::<u64>(), s2 in any::<u64>(), t in 0.0..=1.0f64, tri in any::<bool>()) {
        let (a, b) = (mixture(s1, tri), mixture(s2, tri));
        prop_assert!(lhv_feasible(&a).unwrap().feasible);
        prop_assert!(lhv_feasible(&b).unwrap().feasible);
        let mix: Vec<f64> = a.components().iter().zip(b.components()).map(|(x, y)| t * x + (1.0 - t) * y).collect();
        prop_assert!(lhv_feasible(&QVector::from_slice(&mix).unwrap()).unwrap().feasible);
    }

    #[test]
    fn state_json_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (state, sc) = common::random_case(&mut r);
        let back = nonlocality::qcore::QuantumState::from_json(&state.to_json()).unwrap();
        prop_assert!(back.density_matrix().max_abs_diff(state.density_matrix()) <= 1e-15);
        let sc_back = nonlocality::witness::Scenario::from_json(&sc.to_json()).unwrap();
        prop_assert_eq!(sc_back, sc);
    }
}
