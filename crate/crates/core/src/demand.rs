//! Short-run goods-market equilibrium with separate civilian and military
//! government spending.
//!
//! Consumption is `C = c0 + c1 (1 - tau) Y`, investment is
//! `I = i0 + i1 Y - i2 r`, and the market clears at `Y = C + I + G_c + G_m`.
//! Solving gives `Y = k0 + k1 G_m` with multiplier
//! `k1 = 1 / (1 - c1 (1 - tau) - i1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Raw demand-side inputs. Convert into [`DemandParams`] to use them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemandInputs {
    pub c0: f64,
    pub c1: f64,
    pub tau: f64,
    pub i0: f64,
    pub i1: f64,
    pub i2: f64,
    pub r: f64,
    pub g_c: f64,
    pub g_m: f64,
}

/// Validated demand parameters. Construction guarantees a positive
/// multiplier denominator, so every accessor below is infallible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DemandInputs", into = "DemandInputs")]
pub struct DemandParams {
    inputs: DemandInputs,
    denominator: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemandSolution {
    /// Equilibrium output.
    pub output: f64,
    /// dY/dG_m.
    pub multiplier: f64,
    /// Output net of the military spending contribution, `k0`.
    pub autonomous_component: f64,
}

fn finite(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(field, v, "must be finite"))
    }
}

impl DemandParams {
    pub fn new(inputs: DemandInputs) -> Result<Self> {
        let DemandInputs {
            c0,
            c1,
            tau,
            i0,
            i1,
            i2,
            r,
            g_c,
            g_m,
        } = inputs;
        if !(c1 > 0.0 && c1 < 1.0) {
            return Err(Error::domain("c1", c1, "must lie in (0, 1)"));
        }
        if !(0.0..1.0).contains(&tau) {
            return Err(Error::domain("tau", tau, "must lie in [0, 1)"));
        }
        if !(i1 > 0.0 && i1.is_finite()) {
            return Err(Error::domain("i1", i1, "must be positive"));
        }
        if !(i2 > 0.0 && i2.is_finite()) {
            return Err(Error::domain("i2", i2, "must be positive"));
        }
        finite("c0", c0)?;
        finite("i0", i0)?;
        finite("r", r)?;
        finite("g_c", g_c)?;
        finite("g_m", g_m)?;
        let denominator = 1.0 - c1 * (1.0 - tau) - i1;
        if denominator.is_nan() || denominator <= 0.0 {
            return Err(Error::Unstable { denominator });
        }
        Ok(DemandParams {
            inputs,
            denominator,
        })
    }

    pub fn inputs(&self) -> &DemandInputs {
        &self.inputs
    }

    /// `1 - c1 (1 - tau) - i1`, always positive.
    pub fn denominator(&self) -> f64 {
        self.denominator
    }

    /// Same structural parameters with a different military spending level.
    pub fn with_military_spending(&self, g_m: f64) -> Result<Self> {
        Self::new(DemandInputs { g_m, ..self.inputs })
    }

    pub fn with_civilian_spending(&self, g_c: f64) -> Result<Self> {
        Self::new(DemandInputs { g_c, ..self.inputs })
    }

    pub fn multiplier(&self) -> f64 {
        1.0 / self.denominator
    }

    pub fn equilibrium(&self) -> DemandSolution {
        let p = &self.inputs;
        let multiplier = self.multiplier();
        let output = (p.c0 + p.i0 - p.i2 * p.r + p.g_c + p.g_m) * multiplier;
        DemandSolution {
            output,
            multiplier,
            autonomous_component: output - multiplier * p.g_m,
        }
    }
}

impl TryFrom<DemandInputs> for DemandParams {
    type Error = Error;

    fn try_from(inputs: DemandInputs) -> Result<Self> {
        Self::new(inputs)
    }
}

impl From<DemandParams> for DemandInputs {
    fn from(p: DemandParams) -> Self {
        p.inputs
    }
}
