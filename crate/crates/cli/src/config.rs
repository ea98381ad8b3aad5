//! TOML configuration and the preset registry.
//!
//! ```toml
//! [growth.us]            # overrides fields of the built-in preset
//! chi = 55.0
//!
//! [growth.atlantis]      # new preset: all five parameters required
//! s = 0.25
//! delta = 0.04
//! a0 = 0.3
//! phi = 3.0
//! chi = 40.0
//! peace = { m = 0.02 }
//! war = { m = 0.06, d = 0.02 }
//! initial_capital = 50.0
//!
//! [demand]               # any subset; the rest come from the built-in example
//! c1 = 0.75
//!
//! [grid]
//! m_min = 0.0
//! m_max = 0.12
//! steps = 601
//! d = 0.0
//!
//! [scenario]
//! horizon = 20
//! initial_capital = 100.0
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use milgrowth_core::{presets, DemandInputs, DemandParams, GrowthParams, RegimePoint};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub growth: BTreeMap<String, GrowthBlock>,
    pub demand: Option<DemandBlock>,
    pub grid: Option<GridBlock>,
    pub scenario: Option<ScenarioBlock>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthBlock {
    pub s: Option<f64>,
    pub delta: Option<f64>,
    pub a0: Option<f64>,
    pub phi: Option<f64>,
    pub chi: Option<f64>,
    pub peace: Option<RegimeBlock>,
    pub war: Option<RegimeBlock>,
    pub initial_capital: Option<f64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeBlock {
    pub m: f64,
    #[serde(default)]
    pub d: f64,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemandBlock {
    pub c0: Option<f64>,
    pub c1: Option<f64>,
    pub tau: Option<f64>,
    pub i0: Option<f64>,
    pub i1: Option<f64>,
    pub i2: Option<f64>,
    pub r: Option<f64>,
    pub g_c: Option<f64>,
    pub g_m: Option<f64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub m_min: Option<f64>,
    pub m_max: Option<f64>,
    pub steps: Option<usize>,
    pub d: Option<f64>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioBlock {
    pub horizon: Option<usize>,
    pub initial_capital: Option<f64>,
}

/// Demand inputs used when neither flags nor config supply a value.
pub const DEFAULT_DEMAND: DemandInputs = DemandInputs {
    c0: 10.0,
    c1: 0.8,
    tau: 0.25,
    i0: 5.0,
    i1: 0.1,
    i2: 20.0,
    r: 0.05,
    g_c: 10.0,
    g_m: 5.0,
};

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::validation("--config", format!("cannot read {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::validation("config", e.to_string().trim_end()))
    }

    /// Every preset name known to the registry, built-ins first.
    pub fn preset_names(&self) -> Vec<String> {
        let mut names: Vec<String> = presets::ALL.iter().map(|p| p.name.to_string()).collect();
        for k in self.growth.keys() {
            if !names.contains(k) {
                names.push(k.clone());
            }
        }
        names
    }

    pub fn resolve(&self, name: &str) -> Result<Preset> {
        let builtin = presets::lookup(name);
        let block = self.growth.get(name);
        if builtin.is_none() && block.is_none() {
            return Err(CliError::validation(
                "--preset",
                format!(
                    "unknown preset '{name}' (known: {})",
                    self.preset_names().join(", ")
                ),
            ));
        }
        let block = block.cloned().unwrap_or_default();
        let path = format!("growth.{name}");
        let pick = |field: &str, over: Option<f64>, base: Option<f64>| {
            over.or(base)
                .ok_or_else(|| CliError::validation(format!("{path}.{field}"), "missing value"))
        };
        let bp = builtin.map(|b| b.params);
        let params = GrowthParams {
            s: pick("s", block.s, bp.map(|p| p.s))?,
            delta: pick("delta", block.delta, bp.map(|p| p.delta))?,
            a0: pick("a0", block.a0, bp.map(|p| p.a0))?,
            phi: pick("phi", block.phi, bp.map(|p| p.phi))?,
            chi: pick("chi", block.chi, bp.map(|p| p.chi))?,
        };
        params.validate().map_err(|e| CliError::model(&path, e))?;

        let regime = |which: &str, over: Option<RegimeBlock>, base: Option<RegimePoint>| {
            let r = over.map(|b| RegimePoint::new(b.m, b.d)).or(base);
            if let Some(r) = r {
                r.validate(&params)
                    .map_err(|e| CliError::model(&format!("{path}.{which}"), e))?;
            }
            Ok::<_, CliError>(r)
        };
        let peace = regime("peace", block.peace, builtin.and_then(|b| b.peace))?;
        let war = regime("war", block.war, builtin.and_then(|b| b.war))?;

        let initial_capital = block
            .initial_capital
            .or(self.scenario.as_ref().and_then(|s| s.initial_capital))
            .unwrap_or(presets::INITIAL_CAPITAL);
        if !(initial_capital > 0.0 && initial_capital.is_finite()) {
            return Err(CliError::validation(
                format!("{path}.initial_capital"),
                format!("must be positive, got {initial_capital}"),
            ));
        }

        Ok(Preset {
            name: name.to_string(),
            params,
            peace,
            war,
            initial_capital,
        })
    }

    /// Demand inputs: built-in example, then config, then `overrides`.
    pub fn demand(&self, overrides: &DemandBlock) -> Result<DemandParams> {
        let cfg = self.demand.clone().unwrap_or_default();
        let d = DEFAULT_DEMAND;
        let pick = |flag: Option<f64>, conf: Option<f64>, base: f64| flag.or(conf).unwrap_or(base);
        let inputs = DemandInputs {
            c0: pick(overrides.c0, cfg.c0, d.c0),
            c1: pick(overrides.c1, cfg.c1, d.c1),
            tau: pick(overrides.tau, cfg.tau, d.tau),
            i0: pick(overrides.i0, cfg.i0, d.i0),
            i1: pick(overrides.i1, cfg.i1, d.i1),
            i2: pick(overrides.i2, cfg.i2, d.i2),
            r: pick(overrides.r, cfg.r, d.r),
            g_c: pick(overrides.g_c, cfg.g_c, d.g_c),
            g_m: pick(overrides.g_m, cfg.g_m, d.g_m),
        };
        DemandParams::new(inputs).map_err(|e| CliError::model("demand", e))
    }
}

/// A fully resolved and validated preset.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: String,
    pub params: GrowthParams,
    pub peace: Option<RegimePoint>,
    pub war: Option<RegimePoint>,
    pub initial_capital: f64,
}

impl Preset {
    pub fn peace(&self) -> Result<RegimePoint> {
        self.peace.ok_or_else(|| {
            CliError::validation(
                format!("growth.{}.peace", self.name),
                "no peace regime defined",
            )
        })
    }

    pub fn war(&self) -> Result<RegimePoint> {
        self.war.ok_or_else(|| {
            CliError::validation(format!("growth.{}.war", self.name), "no war regime defined")
        })
    }
}
