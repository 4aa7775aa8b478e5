//! Example parameters for every built-in configuration, as printed by
//! `list-configs`.

use gaugeflux::fields::{
    BuiltinConfig, CapacitorParams, DiscBlobParams, ElectricAbParams, HorizontalStripParams, RetardedFluxParams,
    SmoothBumpParams, SolenoidParams, StripAxis, StripField, TriangleParams, VerticalStripParams, CATALOG,
};

pub fn examples() -> Vec<BuiltinConfig> {
    vec![
        BuiltinConfig::Zero,
        BuiltinConfig::VerticalStrip(VerticalStripParams {
            x_lo: 1.0,
            x_hi: 2.0,
            amplitude: 1.0,
            field: StripField::Magnetic,
        }),
        BuiltinConfig::HorizontalStrip(HorizontalStripParams {
            lo: 1.0,
            hi: 2.0,
            amplitude: 1.0,
            axis: StripAxis::Y,
        }),
        BuiltinConfig::Triangle(TriangleParams {
            a: 1.0,
            amplitude: 1.0,
            x_shift: 0.0,
            y_shift: 0.0,
        }),
        BuiltinConfig::SolenoidFlux(SolenoidParams {
            flux: 1.0,
            center: [1.0, 1.0],
        }),
        BuiltinConfig::Capacitor1d(CapacitorParams {
            x_lo: 1.0,
            x_hi: 2.0,
            e0: 1.0,
            t_on: None,
            t_off: None,
        }),
        BuiltinConfig::RetardedFlux(RetardedFluxParams {
            phi0: 1.0,
            k: 0.5,
            center: [0.0, 0.0],
            t0: 0.0,
        }),
        BuiltinConfig::DiscBlob(DiscBlobParams {
            center: [2.0, 1.0],
            radius: 0.3,
            amplitude: 1.0,
        }),
        BuiltinConfig::ElectricAb(ElectricAbParams {
            x_lo: 1.0,
            x_hi: 2.0,
            t_lo: 1.0,
            t_hi: 2.0,
            flux: 1.0,
        }),
        BuiltinConfig::SmoothBump(SmoothBumpParams {
            center: [0.0, 0.0],
            radius: 1.0,
            b0: 1.0,
            b1: 0.0,
            e0: 0.0,
            gauge: 0.0,
        }),
    ]
}

/// `(name, description, example config JSON)` for every built-in.
pub fn listing() -> Vec<(&'static str, &'static str, String)> {
    let examples = examples();
    CATALOG
        .iter()
        .map(|&(name, about)| {
            let json = examples
                .iter()
                .find(|c| c.name() == name)
                .map(|c| serde_json::to_string(&crate::scenario::ConfigSpec::builtin(c)).expect("serializable"))
                .unwrap_or_default();
            (name, about, json)
        })
        .collect()
}
