//! Structural property tests for the exterior algebra and the geometry built
//! on it: graded anticommutativity, Leibniz, d∘d = 0, bidegree bookkeeping,
//! flow conservation and predicate preservation.

use nilflow::exterior::{d, decompose_pq, wedge, Form};
use nilflow::flow;
use nilflow::hermitian::{self, MetricCoeffs};
use nilflow::lie::{self, JParams};
use nilflow::sample;
use num_complex::Complex64;
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = JParams> {
    (0u8..=1, 0.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)
        .prop_map(|(rho, la, x, y)| JParams::new(rho, la, x, y).unwrap())
}

fn metric_strategy() -> impl Strategy<Value = MetricCoeffs> {
    any::<u64>().prop_map(|seed| sample::metric(&mut sample::rng(seed)))
}

fn catalog_constants(p: &JParams, m: &MetricCoeffs) -> lie::StructureConstants {
    let a = hermitian::adapted_coeffs(m).unwrap();
    lie::real_structure_constants(p, &a).unwrap()
}

proptest! {
    #[test]
    fn wedge_is_graded_anticommutative(
        da in 1u32..=3,
        db in 1u32..=3,
        seed in any::<u64>(),
    ) {
        let mut rng = sample::rng(seed);
        let a = sample::form_of_degree(&mut rng, da);
        let b = sample::form_of_degree(&mut rng, db);
        let lhs = wedge(&a, &b);
        let sign = if (da * db) % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = wedge(&b, &a).scale_re(sign);
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let a = sample::form_of_degree(&mut rng, 1);
        let b = sample::form_of_degree(&mut rng, 2);
        let c = sample::form_of_degree(&mut rng, 1);
        let lhs = wedge(&wedge(&a, &b), &c);
        let rhs = wedge(&a, &wedge(&b, &c));
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn differential_squares_to_zero(p in params_strategy(), m in metric_strategy()) {
        let sc = catalog_constants(&p, &m);
        let scale = 1.0 + sc.max_abs().powi(2);
        for k in 1..=6 {
            let dd = d(&d(&Form::generator(k), &sc), &sc);
            prop_assert!(dd.is_zero(1e-12 * scale));
        }
    }

    #[test]
    fn differential_satisfies_leibniz(
        p in params_strategy(),
        m in metric_strategy(),
        da in 1u32..=2,
        db in 1u32..=2,
        seed in any::<u64>(),
    ) {
        let sc = catalog_constants(&p, &m);
        let mut rng = sample::rng(seed);
        let a = sample::form_of_degree(&mut rng, da);
        let b = sample::form_of_degree(&mut rng, db);
        let lhs = d(&wedge(&a, &b), &sc);
        let sign = if da % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = wedge(&d(&a, &sc), &b) + wedge(&a, &d(&b, &sc)).scale_re(sign);
        let scale = 1.0 + sc.max_abs() * (a.max_abs() + b.max_abs());
        prop_assert!(lhs.approx_eq(&rhs, 1e-11 * scale));
    }

    #[test]
    fn pq_decomposition_reconstructs(
        p in params_strategy(),
        m in metric_strategy(),
        degree in 1u32..=4,
        seed in any::<u64>(),
    ) {
        let (frame, _) = hermitian::adapted_basis(&p, &m).unwrap();
        let mut rng = sample::rng(seed);
        let a = sample::form_of_degree(&mut rng, degree);
        let parts = decompose_pq(&a, &frame);
        let mut sum = Form::zero();
        for ((pp, qq), part) in parts {
            prop_assert_eq!(pp + qq, degree);
            sum += part;
        }
        prop_assert!(sum.approx_eq(&a, 1e-12));
    }

    #[test]
    fn d_respects_integrable_bidegrees(
        p in params_strategy(),
        m in metric_strategy(),
        pp in 0u32..=2,
        qq in 0u32..=2,
        seed in any::<u64>(),
    ) {
        // d of a (p,q)-form has no (p−1,q+2) or (p+2,q−1) component
        let (frame, _) = hermitian::adapted_basis(&p, &m).unwrap();
        let sc = catalog_constants(&p, &m);
        let mut rng = sample::rng(seed);
        let raw = sample::form_of_degree(&mut rng, pp + qq);
        let part = frame.to_e(&frame.to_zeta(&raw).pq_part_zeta(pp, qq));
        let d_part = frame.to_zeta(&d(&part, &sc));
        let scale = 1.0 + sc.max_abs() * part.max_abs();
        for ((dp, dq), comp) in d_part.split_pq_zeta() {
            let admissible = (dp == pp + 1 && dq == qq) || (dp == pp && dq == qq + 1);
            if !admissible {
                prop_assert!(
                    comp.is_zero(1e-10 * scale),
                    "unexpected ({},{}) component of size {}",
                    dp, dq, comp.max_abs()
                );
            }
        }
    }

    #[test]
    fn del_delbar_sums_to_d(p in params_strategy(), m in metric_strategy(), seed in any::<u64>()) {
        let (frame, _) = hermitian::adapted_basis(&p, &m).unwrap();
        let sc = catalog_constants(&p, &m);
        let mut rng = sample::rng(seed);
        let a = sample::form_of_degree(&mut rng, 2);
        let (del, delbar) = nilflow::exterior::del_delbar(&a, &frame, &sc);
        let total = del + delbar;
        let da = d(&a, &sc);
        let scale = 1.0 + sc.max_abs() * a.max_abs();
        prop_assert!(total.approx_eq(&da, 1e-10 * scale));
    }

    #[test]
    fn balanced_routes_agree(p in params_strategy(), m in metric_strategy()) {
        // is_balanced errors out when the exterior and closed-form routes split
        prop_assert!(hermitian::is_balanced(&p, &m).is_ok());
    }

    #[test]
    fn pluriclosed_is_a_property_of_j(seed in any::<u64>()) {
        // ρ + λ² − 2x = 0 structure: pluriclosed for every metric
        let p = JParams::new(1, 1.0, 1.0, 0.35).unwrap();
        let m = sample::metric(&mut sample::rng(seed));
        prop_assert!(hermitian::is_pluriclosed(&p, &m).unwrap());
    }

    #[test]
    fn adapted_basis_normalizes_any_metric(p in params_strategy(), m in metric_strategy()) {
        let (frame, a) = hermitian::adapted_basis(&p, &m).unwrap();
        let w = hermitian::fundamental_form(&m).unwrap();
        let w_e = frame.to_e(&w);
        let expected = Form::basis(0b000011) + Form::basis(0b001100) + Form::basis(0b110000);
        prop_assert!(w_e.approx_eq(&expected, 1e-11));
        // Eq-style relation: e¹²³⁴ = (Δ_e²/4) ζ^{12 1̄ 2̄}
        let e1234 = frame.to_zeta(&Form::basis(0b001111));
        let c = e1234.coeff(hermitian::Z1212);
        let delta2 = a.delta_e * a.delta_e;
        prop_assert!((c - Complex64::new(delta2 / 4.0, 0.0)).norm() < 1e-11 * (1.0 + delta2));
    }

    #[test]
    fn conserved_quantities_freeze_along_flat_flow(
        m in metric_strategy(),
        alpha in -0.5..0.5f64,
        tau in -2.0..2.0f64,
    ) {
        // N3-type structure with a short reconstructed trajectory
        let p = JParams::new(0, 0.0, -1.0, 0.0).unwrap();
        let (_, reduced) = hermitian::reduce_almost_diagonal(&p, &m).unwrap();
        let c0 = flow::conserved_constants(&reduced).unwrap();
        if let Ok((_, states, _)) = flow::integrate_flat_bundle(&p, &m, alpha, tau, 1e-2, 1.0) {
            for s in states.iter().step_by(20) {
                let drift = flow::conserved_drift(&c0, &s.omega).unwrap();
                prop_assert!(drift < 1e-9, "drift {}", drift);
            }
        }
    }

    #[test]
    fn psi_norm_squared_times_det_is_eight(m in metric_strategy()) {
        let n = hermitian::psi_norm(&m).unwrap();
        let d = hermitian::det_quantity(&m).unwrap();
        prop_assert!((n * n * d - 8.0).abs() < 1e-10);
    }

    #[test]
    fn b1_at_least_four_on_catalog_constants(p in params_strategy(), m in metric_strategy()) {
        let sc = catalog_constants(&p, &m);
        let rep = lie::check_nilpotency(&sc);
        prop_assert!(rep.jacobi_ok);
        prop_assert!(rep.two_step);
        prop_assert!(rep.b1 >= 4);
    }
}

#[test]
fn balanced_routes_agree_on_a_thousand_samples() {
    let mut rng = sample::rng(31);
    for i in 0..1000 {
        let p = sample::params(&mut rng);
        let m = sample::metric(&mut rng);
        assert!(
            hermitian::is_balanced(&p, &m).is_ok(),
            "routes disagree at sample {i}"
        );
    }
}
