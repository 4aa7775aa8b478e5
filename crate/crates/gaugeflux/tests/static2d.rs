use std::f64::consts::PI;

use gaugeflux::fields::{
    BuiltinConfig, DiscBlobParams, HorizontalStripParams, SolenoidParams, StripAxis, StripField, TriangleParams,
    VerticalStripParams,
};
use gaugeflux::static2d::{
    ab_multiplicities, cancellation_check, lambda1_static, lambda2_static, lambda_polar, verify_gradient, ObservationFrame,
    PolarBranch, PolarFrame, PolarPoint,
};
use gaugeflux::{Error, FieldConfig, PhysicalConstants, QuadratureSpec};

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn build(c: BuiltinConfig) -> FieldConfig {
    c.build(&PhysicalConstants::default()).unwrap()
}

fn vertical_strip() -> FieldConfig {
    build(BuiltinConfig::VerticalStrip(VerticalStripParams {
        x_lo: 1.0,
        x_hi: 2.0,
        amplitude: 1.0,
        field: StripField::Magnetic,
    }))
}

fn triangle() -> FieldConfig {
    build(BuiltinConfig::Triangle(TriangleParams {
        a: 1.0,
        amplitude: 1.0,
        x_shift: 0.0,
        y_shift: 0.0,
    }))
}

// g(x) and h(y) for the unit triangle, observation right of its right side,
// anchored at y_ref = H and x_ref = a.
fn triangle_g(a: f64, x: f64) -> f64 {
    -(SQRT3 * a * x - SQRT3 * x * x / 2.0) + SQRT3 * a * a / 4.0
}

fn triangle_h(a: f64, y: f64) -> f64 {
    a * y - y * y / SQRT3 - SQRT3 * a * a / 4.0
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn zero_config_returns_base_value() {
    let frame = ObservationFrame::new([0.3, -1.0], [2.0, 4.0]).with_lambda0(0.7);
    for s in [
        lambda1_static(&FieldConfig::zero(), &frame, &spec()).unwrap(),
        lambda2_static(&FieldConfig::zero(), &frame, &spec()).unwrap(),
    ] {
        assert_eq!(s.lambda, 0.7);
        assert_eq!((s.dirac_part, s.nonlocal_part, s.gauge_fix_part, s.multiplicity_part), (0.0, 0.0, 0.0, 0.0));
    }
}

#[test]
fn vertical_strip_gradient_and_cancellation() {
    let cfg = vertical_strip();
    let frame = ObservationFrame::new([0.0, 0.0], [3.0, 2.0]);
    for f in [lambda1_static, lambda2_static] {
        let r = verify_gradient(&cfg, &frame, |fr| f(&cfg, fr, &spec()), 1e-4, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
    }
    assert!(cancellation_check(&cfg, &frame, &spec()).unwrap().abs() < 1e-8);
}

#[test]
fn horizontal_strip_nonlocal_term_survives_in_second_solution() {
    let cfg = build(BuiltinConfig::HorizontalStrip(HorizontalStripParams {
        lo: 1.0,
        hi: 2.0,
        amplitude: 1.0,
        axis: StripAxis::Y,
    }));
    // g needs a reference ordinate above the strip, like the observation point.
    let frame = ObservationFrame::new([0.0, 0.0], [3.0, 3.0]).with_refs(3.0, 2.5);
    let l1 = lambda1_static(&cfg, &frame, &spec()).unwrap();
    assert!((l1.nonlocal_part - 3.0).abs() < 1e-10);
    assert!((l1.gauge_fix_part + 3.0).abs() < 1e-10);
    let l2 = lambda2_static(&cfg, &frame, &spec()).unwrap();
    assert!(l2.gauge_fix_part.abs() < 1e-12);
    assert!((l2.nonlocal_part + 3.0).abs() < 1e-10);
    assert!((l1.lambda - l2.lambda).abs() < 1e-10);
    // With the default reference ordinate the g-segment crosses the strip.
    let err = lambda1_static(&cfg, &ObservationFrame::new([0.0, 0.0], [3.0, 3.0]), &spec()).unwrap_err();
    assert!(matches!(err, Error::DecompositionUnsupported(_)), "{err}");
}

#[test]
fn triangle_gauge_functions_match_closed_forms() {
    let cfg = triangle();
    let a = 1.0;
    let h_top = SQRT3 / 2.0 * a;
    for (x, y) in [(0.9, 0.5), (0.95, 0.2), (0.8, 0.7), (1.0, 0.05)] {
        let frame = ObservationFrame::new([0.0, 0.0], [x, y]).with_refs(a, h_top);
        let l1 = lambda1_static(&cfg, &frame, &spec()).unwrap();
        let l2 = lambda2_static(&cfg, &frame, &spec()).unwrap();
        assert!((l1.gauge_fix_part - triangle_g(a, x)).abs() < 1e-9, "g({x}) = {}", l1.gauge_fix_part);
        assert!((l2.gauge_fix_part - triangle_h(a, y)).abs() < 1e-9, "h({y}) = {}", l2.gauge_fix_part);
        assert!((l1.lambda - l2.lambda).abs() < 1e-6);
    }
}

#[test]
fn triangle_closed_form_constant() {
    // At x = 0 the closed form reduces to the triangle area.
    assert!((triangle_g(1.0, 0.0) - 0.433_012_7).abs() < 1e-7);
}

#[test]
fn triangle_bracket_exchange() {
    // The x-independent bracket of the first solution is the h(y) of the
    // second, and the second's y-independent bracket is the first's g(x).
    let cfg = triangle();
    let frame = ObservationFrame::new([0.0, 0.0], [0.9, 0.5]).with_refs(1.0, SQRT3 / 2.0);
    let l1 = lambda1_static(&cfg, &frame, &spec()).unwrap();
    let l2 = lambda2_static(&cfg, &frame, &spec()).unwrap();
    assert!((l1.nonlocal_part + l1.gauge_fix_part - l2.gauge_fix_part).abs() < 1e-9);
    assert!((l2.nonlocal_part + l2.gauge_fix_part - l1.gauge_fix_part).abs() < 1e-9);
}

#[test]
fn triangle_gradient_right_of_triangle() {
    let cfg = triangle();
    let frame = ObservationFrame::new([0.0, 0.0], [0.9, 0.5]).with_refs(1.0, SQRT3 / 2.0);
    for f in [lambda1_static, lambda2_static] {
        let r = verify_gradient(&cfg, &frame, |fr| f(&cfg, fr, &spec()), 1e-4, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn solenoid_multiplicities() {
    let cfg = build(BuiltinConfig::SolenoidFlux(SolenoidParams {
        flux: 1.0,
        center: [1.0, 1.0],
    }));
    let frame = ObservationFrame::new([0.0, 0.0], [2.0, 3.0]);
    let d = cancellation_check(&cfg, &frame, &spec()).unwrap();
    assert!((d - 1.0).abs() < 1e-8, "{d}");

    let ledger = ab_multiplicities(&cfg, &frame).unwrap();
    assert_eq!((ledger.f_y0, ledger.h_hat_x0), (-1.0, 1.0));
    // With the ledger both reduce to pure potential integrals.
    let l1 = lambda1_static(&cfg, &frame, &spec()).unwrap();
    let l2 = lambda2_static(&cfg, &frame, &spec()).unwrap();
    assert!((l1.lambda - l1.dirac_part).abs() < 1e-12);
    assert!((l2.lambda - l2.dirac_part).abs() < 1e-12);
    assert!((l2.lambda - l1.lambda - 1.0).abs() < 1e-8);
}

#[test]
fn solenoid_outside_rectangle() {
    let cfg = build(BuiltinConfig::SolenoidFlux(SolenoidParams {
        flux: 1.0,
        center: [5.0, 1.0],
    }));
    let frame = ObservationFrame::new([0.0, 0.0], [2.0, 3.0]);
    assert_eq!(ab_multiplicities(&cfg, &frame).unwrap().f_y0, 0.0);
    assert!(cancellation_check(&cfg, &frame, &spec()).unwrap().abs() < 1e-8);
}

fn blob() -> (FieldConfig, f64) {
    let c = PolarPoint::new(3.0, 0.45).unwrap().to_cartesian([0.0, 0.0]);
    let cfg = build(BuiltinConfig::DiscBlob(DiscBlobParams {
        center: c,
        radius: 0.3,
        amplitude: 1.0,
    }));
    (cfg, PI * 0.09)
}

fn adaptive() -> QuadratureSpec {
    QuadratureSpec::adaptive(1e-11, 1e-11)
}

#[test]
fn polar_blob_flux() {
    let (cfg, flux) = blob();
    let frame = PolarFrame::new([0.0, 0.0], PolarPoint::new(1.0, 0.0).unwrap(), PolarPoint::new(5.0, 0.9).unwrap());
    let p1 = lambda_polar(&cfg, &frame, PolarBranch::First, &adaptive()).unwrap();
    assert!((p1.nonlocal_part - flux).abs() < 1e-8, "{}", p1.nonlocal_part);
    let p2 = lambda_polar(&cfg, &frame, PolarBranch::Second, &adaptive()).unwrap();
    assert!((p2.nonlocal_part + flux).abs() < 1e-8);
    assert!((p1.lambda - p2.lambda).abs() < 1e-8);
}

#[test]
fn polar_matches_cartesian() {
    let (cfg, _) = blob();
    let (q0, q) = (PolarPoint::new(1.0, 0.0).unwrap(), PolarPoint::new(5.0, 0.9).unwrap());
    let polar = lambda_polar(&cfg, &PolarFrame::new([0.0, 0.0], q0, q), PolarBranch::First, &adaptive()).unwrap();
    let cart = lambda1_static(
        &cfg,
        &ObservationFrame::new(q0.to_cartesian([0.0, 0.0]), q.to_cartesian([0.0, 0.0])),
        &adaptive(),
    )
    .unwrap();
    assert!((polar.lambda - cart.lambda).abs() < 1e-6, "{} vs {}", polar.lambda, cart.lambda);
}

#[test]
fn polar_zero_config() {
    let frame = PolarFrame::new([1.0, 1.0], PolarPoint::new(0.5, -1.0).unwrap(), PolarPoint::new(2.0, 2.0).unwrap())
        .with_lambda0(-0.3);
    let s = lambda_polar(&FieldConfig::zero(), &frame, PolarBranch::Second, &spec()).unwrap();
    assert_eq!(s.lambda, -0.3);
}

#[test]
fn polar_rejects_origin_in_range() {
    let frame = PolarFrame::new([0.0, 0.0], PolarPoint::new(0.0, 0.0).unwrap(), PolarPoint::new(2.0, 1.0).unwrap());
    let err = lambda_polar(&FieldConfig::zero(), &frame, PolarBranch::First, &spec()).unwrap_err();
    assert!(matches!(err, Error::SingularPoint { .. }), "{err}");
}

#[test]
fn decomposition_sums_exactly() {
    let cfg = triangle();
    let frame = ObservationFrame::new([0.0, 0.0], [0.9, 0.5]).with_refs(1.0, SQRT3 / 2.0).with_lambda0(0.125);
    let s = lambda1_static(&cfg, &frame, &spec()).unwrap();
    assert_eq!(s.lambda, s.lambda0 + s.dirac_part + s.nonlocal_part + s.gauge_fix_part + s.multiplicity_part);
}
