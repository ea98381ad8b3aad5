//! AK technology with a military-burden dependent productivity term.
//!
//! Output is linear in capital, `Y = A(m) K`, with
//! `A(m) = a0 (1 + phi m - chi m^2)`. A fraction `m` of output goes to the
//! military, and civilians save a share `s` of what is left. Capital
//! depreciates at `delta` plus a war destruction rate `d`:
//!
//! ```text
//! K' = (1 - delta - d) K + s (1 - m) A(m) K
//! g  = -delta - d + s (1 - m) A(m)
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Structural parameters of one economy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthParams {
    /// Savings rate out of civilian income.
    pub s: f64,
    /// Depreciation per period.
    pub delta: f64,
    /// Productivity of capital at zero military burden.
    pub a0: f64,
    /// Linear innovation effect of the military burden.
    pub phi: f64,
    /// Quadratic distortion of the military burden.
    pub chi: f64,
}

impl GrowthParams {
    pub fn new(s: f64, delta: f64, a0: f64, phi: f64, chi: f64) -> Result<Self> {
        let p = GrowthParams {
            s,
            delta,
            a0,
            phi,
            chi,
        };
        p.validate()?;
        Ok(p)
    }

    /// The linear baseline: productivity does not depend on `m`.
    pub fn linear(s: f64, delta: f64, a0: f64) -> Result<Self> {
        Self::new(s, delta, a0, 0.0, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s > 0.0 && self.s < 1.0) {
            return Err(Error::domain("s", self.s, "must lie in (0, 1)"));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::domain("delta", self.delta, "must lie in (0, 1)"));
        }
        if !(self.a0 > 0.0 && self.a0.is_finite()) {
            return Err(Error::domain("a0", self.a0, "must be positive and finite"));
        }
        if !(self.phi >= 0.0 && self.phi.is_finite()) {
            return Err(Error::domain(
                "phi",
                self.phi,
                "must be non-negative and finite",
            ));
        }
        if !(self.chi >= 0.0 && self.chi.is_finite()) {
            return Err(Error::domain(
                "chi",
                self.chi,
                "must be non-negative and finite",
            ));
        }
        Ok(())
    }

    /// The vertex `phi / (2 chi)` of the productivity parabola, if it has one.
    pub fn productivity_peak(&self) -> Option<f64> {
        (self.chi > 0.0).then(|| self.phi / (2.0 * self.chi))
    }
}

/// Policy state for one period: military burden and war destruction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimePoint {
    pub m: f64,
    #[serde(default)]
    pub d: f64,
}

impl RegimePoint {
    pub const fn new(m: f64, d: f64) -> Self {
        RegimePoint { m, d }
    }

    pub const fn peace(m: f64) -> Self {
        RegimePoint { m, d: 0.0 }
    }

    /// Checks the regime on its own and jointly with `p`.
    pub fn validate(&self, p: &GrowthParams) -> Result<()> {
        check_burden(self.m)?;
        if !(self.d >= 0.0 && self.d.is_finite()) {
            return Err(Error::domain(
                "d",
                self.d,
                "must be non-negative and finite",
            ));
        }
        if (p.delta + self.d).is_nan() || p.delta + self.d >= 1.0 {
            return Err(Error::domain(
                "d",
                self.d,
                "delta + d must stay below 1 so some capital is retained",
            ));
        }
        Ok(())
    }
}

pub(crate) fn check_burden(m: f64) -> Result<()> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::domain("m", m, "military burden must lie in [0, 1)"));
    }
    Ok(())
}

/// Capital and output at the start of a period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomyState {
    pub capital: f64,
    pub output: f64,
}

impl EconomyState {
    /// Builds the state with output given by the AK identity.
    pub fn new(p: &GrowthParams, m: f64, capital: f64) -> Result<Self> {
        if !(capital > 0.0 && capital.is_finite()) {
            return Err(Error::domain(
                "capital",
                capital,
                "must be positive and finite",
            ));
        }
        Ok(EconomyState {
            capital,
            output: productivity(p, m)? * capital,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepResult {
    pub next_capital: f64,
    pub civilian_investment: f64,
    /// `(K' - K) / K`.
    pub realized_growth: f64,
}

/// `A(m) = a0 (1 + phi m - chi m^2)`. Not clamped: large burdens can give
/// negative productivity.
pub fn productivity(p: &GrowthParams, m: f64) -> Result<f64> {
    p.validate()?;
    check_burden(m)?;
    Ok(productivity_unchecked(p, m))
}

#[inline]
pub(crate) fn productivity_unchecked(p: &GrowthParams, m: f64) -> f64 {
    p.a0 * (1.0 + p.phi * m - p.chi * m * m)
}

/// Net growth rate of capital and output per period under regime `r`.
pub fn growth_rate(p: &GrowthParams, r: RegimePoint) -> Result<f64> {
    p.validate()?;
    r.validate(p)?;
    Ok(growth_rate_unchecked(p, r))
}

#[inline]
pub(crate) fn growth_rate_unchecked(p: &GrowthParams, r: RegimePoint) -> f64 {
    // Destruction is subtracted last so that d shifts g by exactly -d.
    (p.s * (1.0 - r.m) * productivity_unchecked(p, r.m) - p.delta) - r.d
}

/// Advances capital by one period.
///
/// Fails with [`Error::Annihilated`] (period 0, relative to this call) when
/// the next capital stock is not positive.
pub fn step(p: &GrowthParams, r: RegimePoint, state: EconomyState) -> Result<StepResult> {
    p.validate()?;
    r.validate(p)?;
    if !(state.capital > 0.0 && state.capital.is_finite()) {
        return Err(Error::domain(
            "capital",
            state.capital,
            "must be positive and finite",
        ));
    }
    let capital = state.capital;
    let civilian_investment = p.s * (1.0 - r.m) * productivity_unchecked(p, r.m) * capital;
    let next_capital = (1.0 - p.delta - r.d) * capital + civilian_investment;
    if next_capital.is_nan() || next_capital <= 0.0 {
        return Err(Error::Annihilated {
            period: 0,
            next_capital,
        });
    }
    Ok(StepResult {
        next_capital,
        civilian_investment,
        realized_growth: (next_capital - capital) / capital,
    })
}
