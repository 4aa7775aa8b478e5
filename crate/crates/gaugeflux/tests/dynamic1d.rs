use gaugeflux::dynamic1d::{
    electric_ab_multiplicities, lambda3_dynamic, lambda4_dynamic, lambda_naive, verify_xt_system, NaiveVariant, SpacetimeFrame,
};
use gaugeflux::fields::{BuiltinConfig, CapacitorParams, ElectricAbParams, HorizontalStripParams, StripAxis};
use gaugeflux::{Error, FieldConfig, PhysicalConstants, QuadratureSpec};

fn k() -> PhysicalConstants {
    PhysicalConstants::default()
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn capacitor(e0: f64) -> FieldConfig {
    BuiltinConfig::Capacitor1d(CapacitorParams {
        x_lo: 1.0,
        x_hi: 2.0,
        e0,
        t_on: None,
        t_off: None,
    })
    .build(&k())
    .unwrap()
}

fn time_strip(c: f64) -> FieldConfig {
    BuiltinConfig::HorizontalStrip(HorizontalStripParams {
        lo: 1.0,
        hi: 2.0,
        amplitude: 0.6,
        axis: StripAxis::T,
    })
    .build(&PhysicalConstants { c, ..k() })
    .unwrap()
}

#[test]
fn zero_config() {
    let f = SpacetimeFrame::new([0.0, 0.0], [2.0, 3.0]).with_lambda0(1.5);
    let z = FieldConfig::zero();
    assert_eq!(lambda3_dynamic(&z, &f, &spec(), &k()).unwrap().lambda, 1.5);
    assert_eq!(lambda4_dynamic(&z, &f, &spec(), &k()).unwrap().lambda, 1.5);
    assert_eq!(lambda_naive(&z, &f, NaiveVariant::Observation, &spec(), &k()).unwrap().lambda, 1.5);
}

#[test]
fn capacitor_scalar_potential_is_recovered() {
    let cfg = capacitor(1.0);
    let frame = SpacetimeFrame::new([0.0, 0.5], [3.0, 2.0]);
    let l3 = lambda3_dynamic(&cfg, &frame, &spec(), &k()).unwrap();
    assert!((l3.nonlocal_part - 1.5).abs() < 1e-12);
    assert!(l3.gauge_fix_part.abs() < 1e-12);
    let l4 = lambda4_dynamic(&cfg, &frame, &spec(), &k()).unwrap();
    assert!((l4.nonlocal_part + l4.gauge_fix_part).abs() < 1e-12, "no net field term in the fourth solution");
    assert!((l3.lambda - l4.lambda).abs() < 1e-12);
    for f in [lambda3_dynamic, lambda4_dynamic] {
        let r = verify_xt_system(&cfg, &frame, |fr| f(&cfg, fr, &spec(), &k()), 1e-4, 1e-6, &k()).unwrap();
        assert!(r.pass, "{r:?}");
    }
}

#[test]
fn naive_formula_fails_inside_capacitor() {
    let (e0, c) = (1.0, 1.0);
    let cfg = capacitor(e0);
    for (x, t) in [(1.5, 2.0), (1.2, 3.5), (1.8, 1.0)] {
        let frame = SpacetimeFrame::new([0.0, 0.0], [x, t]);
        let r = verify_xt_system(
            &cfg,
            &frame,
            |fr| lambda_naive(&cfg, fr, NaiveVariant::Observation, &spec(), &k()),
            1e-4,
            1e-6,
            &k(),
        )
        .unwrap();
        assert!(!r.pass);
        let expected = c * t * e0;
        assert!((r.residual_x.unwrap() - expected).abs() < 1e-6 * expected.max(1.0), "{r:?}");
    }
}

#[test]
fn naive_initial_point_variant_also_fails() {
    let cfg = capacitor(1.0);
    let frame = SpacetimeFrame::new([0.0, 0.0], [1.5, 2.0]);
    let r = verify_xt_system(
        &cfg,
        &frame,
        |fr| lambda_naive(&cfg, fr, NaiveVariant::InitialPoint, &spec(), &k()),
        1e-4,
        1e-6,
        &k(),
    )
    .unwrap();
    assert!(!r.pass);
    assert!((r.residual_t.unwrap() - 0.5).abs() < 1e-6, "{r:?}");
}

#[test]
fn naive_agrees_when_potentials_are_static() {
    // A magnetic strip seen along a line inside it: A_x is uniform and static, φ = 0.
    let cfg = BuiltinConfig::HorizontalStrip(HorizontalStripParams {
        lo: 1.0,
        hi: 2.0,
        amplitude: 0.8,
        axis: StripAxis::Y,
    })
    .build(&k())
    .unwrap();
    let mut frame = SpacetimeFrame::new([0.1, 0.0], [1.3, 2.0]);
    frame.y = 1.5;
    let naive = lambda_naive(&cfg, &frame, NaiveVariant::Observation, &spec(), &k()).unwrap();
    let l3 = lambda3_dynamic(&cfg, &frame, &spec(), &k()).unwrap();
    let l4 = lambda4_dynamic(&cfg, &frame, &spec(), &k()).unwrap();
    assert!((naive.lambda + 0.4 * 1.2).abs() < 1e-12);
    assert!((naive.lambda - l3.lambda).abs() < 1e-12);
    assert!((naive.lambda - l4.lambda).abs() < 1e-12);
}

#[test]
fn time_strip_gauge_functions() {
    let c = 2.0;
    let consts = PhysicalConstants { c, ..k() };
    let cfg = time_strip(c);
    // After the pulse; g's reference time must also lie after it.
    let frame = SpacetimeFrame::new([0.0, 0.0], [1.5, 3.0]).with_refs(1.5, 2.5);
    let flux = c * 0.6 * 1.0 * 1.5;
    let l3 = lambda3_dynamic(&cfg, &frame, &spec(), &consts).unwrap();
    assert!((l3.nonlocal_part - flux).abs() < 1e-10);
    assert!((l3.gauge_fix_part + flux).abs() < 1e-10);
    let l4 = lambda4_dynamic(&cfg, &frame, &spec(), &consts).unwrap();
    assert!(l4.gauge_fix_part.abs() < 1e-12);
    assert!((l4.nonlocal_part + flux).abs() < 1e-10, "the field term survives");
    assert!((l3.lambda - l4.lambda).abs() < 1e-10);
    for f in [lambda3_dynamic, lambda4_dynamic] {
        let r = verify_xt_system(&cfg, &frame, |fr| f(&cfg, fr, &spec(), &consts), 1e-4, 1e-6, &consts).unwrap();
        assert!(r.pass, "{r:?}");
    }
    let bad = SpacetimeFrame::new([0.0, 0.0], [1.5, 3.0]);
    assert!(matches!(
        lambda3_dynamic(&cfg, &bad, &spec(), &consts),
        Err(Error::DecompositionUnsupported(_))
    ));
}

#[test]
fn field_at_observation_is_rejected() {
    let cfg = capacitor(1.0);
    let frame = SpacetimeFrame::new([0.0, 0.0], [1.5, 1.0]);
    assert!(matches!(
        lambda3_dynamic(&cfg, &frame, &spec(), &k()),
        Err(Error::FieldAtObservation { field: "E_x", .. })
    ));
}

#[test]
fn electric_ab_ledger() {
    let cfg = BuiltinConfig::ElectricAb(ElectricAbParams {
        x_lo: 1.0,
        x_hi: 2.0,
        t_lo: 1.0,
        t_hi: 2.0,
        flux: 1.0,
    })
    .build(&k())
    .unwrap();
    let frame = SpacetimeFrame::new([0.0, 0.0], [3.0, 3.0]);
    let m = electric_ab_multiplicities(&cfg, &frame).unwrap();
    assert_eq!((m.tau_t0, m.chi_x0), (1.0, -1.0));

    // Without the constants the two solutions differ by the enclosed flux.
    let bare = frame.without_multiplicities();
    let l3 = lambda3_dynamic(&cfg, &bare, &spec(), &k()).unwrap();
    let l4 = lambda4_dynamic(&cfg, &bare, &spec(), &k()).unwrap();
    assert!((l4.lambda - l3.lambda - 1.0).abs() < 1e-10);
    for f in [lambda3_dynamic, lambda4_dynamic] {
        let r = verify_xt_system(&cfg, &frame, |fr| f(&cfg, fr, &spec(), &k()), 1e-4, 1e-6, &k()).unwrap();
        assert!(r.pass, "{r:?}");
    }
    let outside = SpacetimeFrame::new([0.0, 0.0], [0.5, 3.0]);
    assert_eq!(electric_ab_multiplicities(&cfg, &outside).unwrap().tau_t0, 0.0);
    assert_eq!(electric_ab_multiplicities(&capacitor(1.0), &frame).unwrap().tau_t0, 0.0);
}
