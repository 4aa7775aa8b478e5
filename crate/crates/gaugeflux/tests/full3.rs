use gaugeflux::fields::{BuiltinConfig, RetardedFluxParams, SmoothBumpParams, TriangleParams};
use gaugeflux::full3::{
    check_conditions, faraday_check, lambda_full, ledger3, van_kampen_delta, verify_full_system, ConditionF, ConditionFn,
    ConditionSet, Frame3, Variant,
};
use gaugeflux::static2d::{lambda1_static, lambda2_static, ObservationFrame};
use gaugeflux::{Error, FieldConfig, PhysicalConstants, QuadratureSpec};

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn k() -> PhysicalConstants {
    PhysicalConstants::default()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn ramp(k_rate: f64) -> FieldConfig {
    BuiltinConfig::RetardedFlux(RetardedFluxParams {
        phi0: 1.0,
        k: k_rate,
        center: [0.0, 0.0],
        t0: 0.0,
    })
    .build(&k())
    .unwrap()
}

// Rectangle [-5, 7] x [-5, 6] around the flux line; nearest side at distance 5.
fn vk_frame(t: f64) -> Frame3 {
    Frame3::new([-5.0, -5.0, 0.0], [7.0, 6.0, t])
}

fn bump() -> FieldConfig {
    BuiltinConfig::SmoothBump(SmoothBumpParams {
        center: [0.2, 0.1],
        radius: 1.0,
        b0: 1.0,
        b1: 0.4,
        e0: 0.3,
        gauge: 0.5,
    })
    .build(&k())
    .unwrap()
}

#[test]
fn zero_config_all_variants() {
    let frame = Frame3::new([0.0, 1.0, -1.0], [2.0, -1.0, 3.0]).with_lambda0(-2.0);
    for v in Variant::ALL {
        let s = lambda_full(&FieldConfig::zero(), &frame, v, &ConditionSet::zero(), &spec(), &k()).unwrap();
        assert_eq!(s.lambda, -2.0);
        let r = verify_full_system(&FieldConfig::zero(), &frame, v, &ConditionSet::zero(), 1e-4, 1e-6, &spec(), &k()).unwrap();
        assert!(r.pass);
    }
}

#[test]
fn static_triangle_reduces_to_static_solutions() {
    let cfg = BuiltinConfig::Triangle(TriangleParams {
        a: 1.0,
        amplitude: 1.0,
        x_shift: 0.0,
        y_shift: 0.0,
    })
    .build(&k())
    .unwrap();
    let h = SQRT3 / 2.0;
    let (x, y) = (0.9, 0.5);
    let frame = Frame3::new([0.0, 0.0, 0.0], [x, y, 2.0]).with_refs(1.0, h);
    let sframe = ObservationFrame::new([0.0, 0.0], [x, y]).with_refs(1.0, h);
    let l1 = lambda1_static(&cfg, &sframe, &spec()).unwrap().lambda;
    let l2 = lambda2_static(&cfg, &sframe, &spec()).unwrap().lambda;
    let conds = ConditionSet::reference();
    let full1 = lambda_full(&cfg, &frame, Variant::Full1, &conds, &spec(), &k()).unwrap();
    let full4 = lambda_full(&cfg, &frame, Variant::Full4, &conds, &spec(), &k()).unwrap();
    assert!((full1.lambda - l2).abs() < 1e-10);
    assert!((full4.lambda - l1).abs() < 1e-10);
    for v in Variant::ALL {
        let s = lambda_full(&cfg, &frame, v, &conds, &spec(), &k()).unwrap();
        assert!((s.lambda - l1).abs() < 1e-6, "{v:?}");
    }
    let r = verify_full_system(&cfg, &frame, Variant::Full4, &conds, 1e-4, 1e-6, &spec(), &k()).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn zero_conditions_rejected_for_static_triangle() {
    let cfg = BuiltinConfig::Triangle(TriangleParams {
        a: 1.0,
        amplitude: 1.0,
        x_shift: 0.0,
        y_shift: 0.0,
    })
    .build(&k())
    .unwrap();
    let frame = Frame3::new([0.0, 0.0, 0.0], [0.9, 0.5, 1.0]);
    let err = lambda_full(&cfg, &frame, Variant::Full1, &ConditionSet::zero(), &spec(), &k()).unwrap_err();
    assert!(matches!(err, Error::DecompositionUnsupported(_)));
    assert!(err.to_string().contains("G(y)"), "{err}");
}

#[test]
fn time_dependent_bump_all_variants_agree_and_verify() {
    let cfg = bump();
    let frame = Frame3::new([-2.0, -2.0, 0.0], [2.0, 1.5, 1.0]);
    let conds = ConditionSet::reference();
    // The bump is smooth but not analytic at its rim; Gauss rules need more panels.
    let fine = QuadratureSpec::gauss(8, 64);
    let mut values = Vec::new();
    for v in Variant::ALL {
        values.push(lambda_full(&cfg, &frame, v, &conds, &fine, &k()).unwrap().lambda);
        let r = verify_full_system(&cfg, &frame, v, &conds, 1e-4, 1e-6, &fine, &k()).unwrap();
        assert!(r.pass, "{v:?}: {r:?}");
    }
    for w in values.windows(2) {
        assert!((w[0] - w[1]).abs() < 1e-8, "{values:?}");
    }
}

#[test]
fn user_condition_functions_are_validated() {
    let cfg = bump();
    let frame = Frame3::new([-2.0, -2.0, 0.0], [2.0, 1.5, 1.0]);
    // A constant shift satisfies the F condition (no field at the observation point).
    let shifted = ConditionSet {
        f: ConditionF::User(std::sync::Arc::new(|_, _| 0.25)),
        ..ConditionSet::reference()
    };
    let base = lambda_full(&cfg, &frame, Variant::Fin, &ConditionSet::reference(), &spec(), &k()).unwrap();
    let s = lambda_full(&cfg, &frame, Variant::Fin, &shifted, &spec(), &k()).unwrap();
    assert!((s.lambda - base.lambda - 0.25).abs() < 1e-12);
    // A sloped Ĝ does not.
    let sloped = ConditionSet {
        g_hat: ConditionFn::User(std::sync::Arc::new(|x| 0.1 * x)),
        ..ConditionSet::zero()
    };
    let checks = check_conditions(&cfg, &frame, Variant::Fin, &sloped, &spec(), &k()).unwrap();
    assert!(!checks[0].pass, "{checks:?}");
}

#[test]
fn causal_plateau_equals_initial_flux() {
    let cfg = ramp(0.5);
    for t in [0.0, 1.0, 2.0, 3.0, 4.5] {
        let d = van_kampen_delta(&cfg, &vk_frame(t), &spec(), &k()).unwrap();
        assert!((d - 1.0).abs() < 1e-6, "t = {t}: {d}");
    }
}

#[test]
fn distance_sweep() {
    // t − t₀ = 3 and the nearest side at distance R.
    let cfg = ramp(0.5);
    for r in [4.0, 5.0, 6.0] {
        let frame = Frame3::new([-r, -r, 0.0], [r + 2.0, r + 1.0, 3.0]);
        let d = van_kampen_delta(&cfg, &frame, &spec(), &k()).unwrap();
        assert!((d - 1.0).abs() < 1e-6, "R = {r}: {d}");
    }
    // Once the front has crossed the sides the loop terms are individually
    // time dependent, but induction still ties their sum to the initial flux.
    let frame = Frame3::new([-2.0, -2.0, 0.0], [9.0, 9.0, 3.0]);
    let f = faraday_check(&cfg, &frame, &spec(), &k()).unwrap();
    assert!(f.field_term.abs() > 0.1, "{f:?}");
    let d = van_kampen_delta(&cfg, &frame, &spec(), &k()).unwrap();
    assert!((d - 1.0).abs() < 1e-5, "{d}");
}

#[test]
fn static_flux_is_ordinary_aharonov_bohm() {
    let cfg = ramp(0.0);
    for t in [0.0, 10.0] {
        let d = van_kampen_delta(&cfg, &vk_frame(t), &spec(), &k()).unwrap();
        assert!((d - 1.0).abs() < 1e-8);
    }
}

#[test]
fn induction_identity_holds_before_and_after_arrival() {
    let cfg = ramp(0.5);
    for t in [3.0, 6.0, 8.0] {
        let f = faraday_check(&cfg, &vk_frame(t), &QuadratureSpec::adaptive(1e-10, 1e-10), &k()).unwrap();
        let scale = f.field_term.abs().max(1.0);
        assert!(f.residual.abs() < 1e-6 * scale, "t = {t}: {f:?}");
    }
    let early = faraday_check(&cfg, &vk_frame(3.0), &spec(), &k()).unwrap();
    assert!(early.field_term.abs() < 1e-12);
}

#[test]
fn fin_verifies_in_causal_regime() {
    let cfg = ramp(0.5);
    let r = verify_full_system(&cfg, &vk_frame(3.0), Variant::Fin, &ConditionSet::zero(), 1e-4, 1e-6, &spec(), &k()).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn ledger_at_initial_time() {
    let cfg = ramp(0.5);
    let l = ledger3(&cfg, &vk_frame(3.0)).unwrap();
    assert_eq!((l.f_x0_t0, l.h_hat_y0_t0), (1.0, -1.0));
}

#[test]
fn every_variant_verifies_around_a_ramped_flux_line() {
    // The flux term at t includes the radiated field, singular at the line.
    let cfg = ramp(0.5);
    for t in [1.3, 3.0] {
        let frame = Frame3::new([-5.0, -5.0, 0.0], [7.25, 6.0, t]);
        for v in Variant::ALL {
            let r = verify_full_system(&cfg, &frame, v, &ConditionSet::reference(), 1e-4, 1e-6, &spec(), &k()).unwrap();
            assert!(r.pass, "t = {t}, {v:?}: {r:?}");
        }
    }
}
