//! Exact inversions of the growth function for building parameter presets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_burden, GrowthParams, RegimePoint};

/// A target growth rate at a given regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthObservation {
    pub m: f64,
    #[serde(default)]
    pub d: f64,
    pub g: f64,
}

impl GrowthObservation {
    pub fn new(m: f64, d: f64, g: f64) -> Self {
        GrowthObservation { m, d, g }
    }

    fn validate(&self, delta: f64) -> Result<()> {
        check_burden(self.m)?;
        if !(self.d >= 0.0 && delta + self.d < 1.0) {
            return Err(Error::Domain {
                field: "d",
                value: self.d,
                reason: "must be non-negative with delta + d < 1",
            });
        }
        if !self.g.is_finite() {
            return Err(Error::Domain {
                field: "g",
                value: self.g,
                reason: "must be finite",
            });
        }
        Ok(())
    }
}

/// Partial parameter sets: only the fields that are not being solved for
/// need to be meaningful, so validation reuses [`GrowthParams`] with a
/// placeholder in the unknown slot.
fn check_known(s: f64, delta: f64, a0: f64, phi: f64, chi: f64) -> Result<()> {
    GrowthParams {
        s,
        delta,
        a0,
        phi,
        chi,
    }
    .validate()
}

/// Baseline productivity that reproduces `obs.g` given the other parameters.
pub fn solve_a0(s: f64, delta: f64, phi: f64, chi: f64, obs: GrowthObservation) -> Result<f64> {
    check_known(s, delta, 1.0, phi, chi)?;
    obs.validate(delta)?;
    let m = obs.m;
    let weight = s * (1.0 - m) * (1.0 + phi * m - chi * m * m);
    if weight.abs() <= 1e-12 {
        return Err(Error::Singular(
            "productivity: the burden sits at a root of 1 + phi m - chi m^2",
        ));
    }
    let a0 = (obs.g + delta + obs.d) / weight;
    if !(a0 > 0.0 && a0.is_finite()) {
        return Err(Error::Domain {
            field: "a0",
            value: a0,
            reason: "implied baseline productivity is not positive",
        });
    }
    Ok(a0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnovationFit {
    pub phi: f64,
    pub chi: f64,
}

/// Innovation and distortion coefficients passing exactly through two
/// observations.
///
/// Each observation gives `phi m - chi m^2 = (g + delta + d) / (s (1 - m) a0) - 1`,
/// a 2x2 linear system in `(phi, chi)`.
pub fn fit_innovation(
    s: f64,
    delta: f64,
    a0: f64,
    obs1: GrowthObservation,
    obs2: GrowthObservation,
) -> Result<InnovationFit> {
    check_known(s, delta, a0, 0.0, 0.0)?;
    obs1.validate(delta)?;
    obs2.validate(delta)?;
    let rhs = |o: &GrowthObservation| (o.g + delta + o.d) / (s * (1.0 - o.m) * a0) - 1.0;
    let (m1, m2) = (obs1.m, obs2.m);
    let (y1, y2) = (rhs(&obs1), rhs(&obs2));

    // [m1  -m1^2] [phi]   [y1]
    // [m2  -m2^2] [chi] = [y2]
    let det = -m1 * m2 * m2 + m2 * m1 * m1;
    let scale = m1 * m2 * m2 + m2 * m1 * m1;
    if det.abs() <= 64.0 * f64::EPSILON * scale || scale == 0.0 {
        return Err(Error::Singular(
            "innovation system: observations must have distinct, positive burdens",
        ));
    }
    let phi = (-y1 * m2 * m2 + m1 * m1 * y2) / det;
    let chi = (m1 * y2 - m2 * y1) / det;
    Ok(InnovationFit { phi, chi })
}

/// Growth observation generated from known parameters.
pub fn observe(p: &GrowthParams, r: RegimePoint) -> Result<GrowthObservation> {
    Ok(GrowthObservation::new(
        r.m,
        r.d,
        crate::model::growth_rate(p, r)?,
    ))
}
