use proptest::prelude::*;

use negabeta::intervalmaps::{circle_mc_deviation, example31_language_check, example31_measure_bounds, CircleMap};
use negabeta::ldp::{level1_rate, mc_deviation, pressure, typical_mean, LdpError, Observable, Window};
use negabeta::measures::{cylinder_interval, cylinder_measure};
use negabeta::negabeta::{alt_compare, rational_point, AltOrdering, DigitSequence, MinusBetaSystem};
use negabeta::shiftgraph::{decompose, decompose_ordered, presentation, LabeledGraph};
use negabeta::specprop::{omega_coverage_check, spec_bound, spec_bruteforce, SoficPresentation, SpecError};

fn minimal_pisot_chain() -> SoficPresentation {
    let a = presentation(&DigitSequence::parse("100(1)", 1).unwrap()).unwrap();
    SoficPresentation::from_chain(&a, &decompose(&a)).unwrap()
}

fn beta_two_chain() -> SoficPresentation {
    let a = presentation(&DigitSequence::parse("(10)", 1).unwrap()).unwrap();
    SoficPresentation::from_chain(&a, &decompose(&a)).unwrap()
}

#[test]
fn pressure_anchors() {
    let p = minimal_pisot_chain();
    let beta = MinusBetaSystem::minimal_pisot().beta_approx();
    let psi = Observable::indicator(1, 1);
    assert!((pressure(&p, &psi, 0.0).value - beta.ln()).abs() < 1e-9);
    // the 0-loop avoids the digit 1 entirely
    assert!(pressure(&p, &psi, -60.0).value.abs() < 1e-9);
    let two = beta_two_chain();
    let value = Observable::digit_value(1);
    for t in [-2.0, 0.5, 3.0] {
        assert!((pressure(&two, &value, t).value - (1.0 + f64::exp(t)).ln()).abs() < 1e-10);
    }
}

#[test]
fn pressure_is_convex() {
    let p = minimal_pisot_chain();
    let psi = Observable::indicator(1, 1);
    let h = 0.05;
    for k in -80..80 {
        let t = k as f64 * 0.1;
        let second = pressure(&p, &psi, t + h).value - 2.0 * pressure(&p, &psi, t).value + pressure(&p, &psi, t - h).value;
        assert!(second / (h * h) >= -1e-8 / (h * h), "t={t}: {second}");
    }
}

#[test]
fn rate_vanishes_only_at_typical_mean() {
    let p = minimal_pisot_chain();
    let psi = Observable::indicator(1, 1);
    let log_beta = MinusBetaSystem::minimal_pisot().beta_approx().ln();
    let a_star = typical_mean(&p, &psi).unwrap();
    assert!(level1_rate(&p, &psi, a_star, log_beta).unwrap().rate.abs() < 1e-8);
    for k in 0..=20 {
        let a = k as f64 / 20.0;
        let r = level1_rate(&p, &psi, a, log_beta).unwrap();
        assert!(r.rate >= -1e-12, "a={a}: {r:?}");
        assert!(r.h <= log_beta + 1e-12);
    }
    let all_ones = level1_rate(&p, &psi, 1.0, log_beta).unwrap();
    assert!((all_ones.rate - log_beta).abs() < 1e-8, "{all_ones:?}");
    assert!(matches!(level1_rate(&p, &psi, 1.5, log_beta), Err(LdpError::UnachievableLevel { .. })));
}

#[test]
fn enlarging_window_never_raises_rate() {
    let sys = MinusBetaSystem::integer(2);
    let psi = Observable::indicator(1, 1);
    let narrow = mc_deviation(&sys, &psi, Window { lo: 0.7, hi: 0.75 }, 20, 4000, 5).unwrap();
    let wide = mc_deviation(&sys, &psi, Window { lo: 0.6, hi: 0.8 }, 20, 4000, 5).unwrap();
    assert!(wide.hits >= narrow.hits);
    assert!(wide.rate <= narrow.rate);
}

#[test]
fn minimal_pisot_all_ones_rate_matches_cylinder() {
    let sys = MinusBetaSystem::minimal_pisot();
    let psi = Observable::indicator(1, 1);
    let n = 16;
    let e = mc_deviation(&sys, &psi, Window { lo: 1.0, hi: 1.0 }, n, 200_000, 3).unwrap();
    let exact = cylinder_interval(&sys, &vec![1; n]).unwrap().length().to_f64();
    let exact_rate = -exact.ln() / n as f64;
    assert!(e.ci_lo <= exact_rate && exact_rate <= e.ci_hi, "{e:?} vs {exact_rate}");
}

#[test]
fn example31_invariants() {
    let b = example31_measure_bounds(8).unwrap();
    assert!(b.all_ok);
    assert!(example31_language_check(10_000, 8, 31).unwrap().ok());
}

#[test]
fn circle_occupation_is_monotone() {
    let map = CircleMap::default();
    let mut last = 0.0;
    for a in [0.0, 0.1, 0.2, 0.3] {
        let d = circle_mc_deviation(&map, Window { lo: a, hi: 1.0 }, 30, 20_000, 0.05, 4).unwrap();
        assert!(d.estimate.rate >= last);
        last = d.estimate.rate;
    }
}

#[test]
fn lower_cylinder_bound_counterexample() {
    // a branching word whose cylinder is shorter than (1 − 1/β) β^{−4}
    let sys = MinusBetaSystem::minimal_pisot();
    let r = cylinder_measure(&sys, &[1, 0, 0, 1]).unwrap();
    assert!(r.lower_bound_applicable);
    assert_eq!(r.lower_bound_ok, Some(false));
    assert!(r.upper_bound_ok);
}

fn random_graph() -> impl Strategy<Value = LabeledGraph> {
    (2usize..6).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0u8..2, 0..n), 1..12).prop_map(move |edges| LabeledGraph::from_edges(n, 1, edges))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alternating_order_is_monotone(q in 2i64..400, x in 0i64..400, y in 0i64..400) {
        let (x, y) = (x % (q + 1), y % (q + 1));
        prop_assume!(x < y);
        let sys = MinusBetaSystem::minimal_pisot();
        let s = sys.itinerary(&rational_point(&sys, x, q).unwrap(), 20);
        let t = sys.itinerary(&rational_point(&sys, y, q).unwrap(), 20);
        if let (Ok(s), Ok(t)) = (s, t) {
            prop_assert!(matches!(alt_compare(&s[..], &t[..]), AltOrdering::Less | AltOrdering::Equal));
        }
    }

    #[test]
    fn bruteforce_gaps_within_certificate(g in random_graph()) {
        let chain = decompose_ordered(&g);
        prop_assume!(chain.q() > 0);
        let p = SoficPresentation::new(g, chain.vertex_sets()).unwrap();
        match spec_bound(&p) {
            Ok(cert) => {
                let table = spec_bruteforce(&p, 3).unwrap();
                prop_assert!(table.min_w_gap.is_some_and(|m| m <= cert.m));
            }
            Err(e) => {
                let disconnected = matches!(e, SpecError::DisconnectedPair { .. });
                prop_assert!(disconnected);
            }
        }
    }

    #[test]
    fn coverage_is_monotone(g in random_graph()) {
        let chain = decompose_ordered(&g);
        let sets = chain.vertex_sets();
        for k in 0..sets.len() {
            let fewer = SoficPresentation::new(g.clone(), sets[..k].to_vec()).unwrap();
            let more = SoficPresentation::new(g.clone(), sets[..=k].to_vec()).unwrap();
            prop_assert!(!omega_coverage_check(&fewer) || omega_coverage_check(&more));
        }
        let all = SoficPresentation::new(g.clone(), g.recurrent_sccs()).unwrap();
        prop_assert!(omega_coverage_check(&all));
    }
}
