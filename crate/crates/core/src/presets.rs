//! Built-in calibrations.
//!
//! `baseline` is the single-economy calibration; `us` and `iran` are the
//! two-country calibrations together with their peace and war regimes.

use crate::model::{GrowthParams, RegimePoint};

pub const BASELINE: GrowthParams = GrowthParams {
    s: 0.20,
    delta: 0.05,
    a0: 0.30,
    phi: 5.0,
    chi: 60.0,
};

pub const US: GrowthParams = GrowthParams {
    s: 0.22,
    delta: 0.05,
    a0: 0.35,
    phi: 6.0,
    chi: 50.0,
};

pub const IRAN: GrowthParams = GrowthParams {
    s: 0.18,
    delta: 0.06,
    a0: 0.25,
    phi: 4.0,
    chi: 70.0,
};

pub const US_PEACE: RegimePoint = RegimePoint::peace(0.035);
pub const US_WAR: RegimePoint = RegimePoint::new(0.07, 0.01);
pub const IRAN_PEACE: RegimePoint = RegimePoint::peace(0.03);
pub const IRAN_WAR: RegimePoint = RegimePoint::new(0.10, 0.03);

/// Default starting capital for scenario runs.
pub const INITIAL_CAPITAL: f64 = 100.0;

/// Default scenario horizon in periods (years).
pub const HORIZON: usize = 10;

/// A named calibration, with peace and war regimes where one is defined.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub params: GrowthParams,
    pub peace: Option<RegimePoint>,
    pub war: Option<RegimePoint>,
}

pub const ALL: [Preset; 3] = [
    Preset {
        name: "baseline",
        params: BASELINE,
        peace: None,
        war: None,
    },
    Preset {
        name: "us",
        params: US,
        peace: Some(US_PEACE),
        war: Some(US_WAR),
    },
    Preset {
        name: "iran",
        params: IRAN,
        peace: Some(IRAN_PEACE),
        war: Some(IRAN_WAR),
    },
];

pub fn lookup(name: &str) -> Option<&'static Preset> {
    ALL.iter().find(|p| p.name == name)
}

/// Regime presets by name (`us-peace`, `iran-war`, ...).
pub fn regime(name: &str) -> Option<RegimePoint> {
    match name {
        "us-peace" => Some(US_PEACE),
        "us-war" => Some(US_WAR),
        "iran-peace" => Some(IRAN_PEACE),
        "iran-war" => Some(IRAN_WAR),
        _ => None,
    }
}
