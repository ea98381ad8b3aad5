//! Static analysis of the growth function in the military burden.
//!
//! Expanding the growth function gives a cubic in `m`:
//!
//! ```text
//! g(m) = -delta - d + s a0 [1 + (phi - 1) m - (phi + chi) m^2 + chi m^3]
//! ```
//!
//! so its critical points solve the quadratic
//! `3 chi m^2 - 2 (phi + chi) m + (phi - 1) = 0`, which is handled in closed
//! form here.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    check_burden, growth_rate_unchecked, productivity_unchecked, GrowthParams, RegimePoint,
};

/// Default half-width of the "near optimum" band used by [`classify_regime`].
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-4;

/// Equally spaced burden values, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    m_min: f64,
    m_max: f64,
    steps: usize,
}

impl SweepGrid {
    pub fn new(m_min: f64, m_max: f64, steps: usize) -> Result<Self> {
        if !(m_min >= 0.0 && m_min < m_max && m_max < 1.0) {
            return Err(Error::Grid(format!(
                "need 0 <= m_min < m_max < 1, got [{m_min}, {m_max}]"
            )));
        }
        if steps < 2 {
            return Err(Error::Grid(format!("need at least 2 steps, got {steps}")));
        }
        Ok(SweepGrid {
            m_min,
            m_max,
            steps,
        })
    }

    pub fn m_min(&self) -> f64 {
        self.m_min
    }

    pub fn m_max(&self) -> f64 {
        self.m_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn spacing(&self) -> f64 {
        (self.m_max - self.m_min) / (self.steps - 1) as f64
    }

    /// The `i`-th grid point. The last point is exactly `m_max`.
    pub fn point(&self, i: usize) -> f64 {
        if i + 1 >= self.steps {
            self.m_max
        } else {
            self.m_min + (self.m_max - self.m_min) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|i| self.point(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub m: f64,
    pub g: f64,
}

/// Evaluates the growth rate over `grid` at destruction rate `d`.
///
/// Points are computed in parallel; the result is always ordered by `m`.
pub fn sweep(p: &GrowthParams, grid: &SweepGrid, d: f64) -> Result<Vec<SweepPoint>> {
    p.validate()?;
    // Grid bounds already keep every m in [0, 1); this checks d.
    RegimePoint::new(grid.m_max, d).validate(p)?;
    Ok((0..grid.steps)
        .into_par_iter()
        .map(|i| {
            let m = grid.point(i);
            SweepPoint {
                m,
                g: growth_rate_unchecked(p, RegimePoint::new(m, d)),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimumReport {
    /// Growth-maximizing burden on [0, 1).
    pub m_star: f64,
    pub g_star: f64,
    /// False when the maximum sits at the `m = 0` endpoint.
    pub interior: bool,
    /// The other critical point of `g`, wherever it falls.
    pub second_root: Option<f64>,
}

/// Closed-form growth-maximizing military burden.
///
/// The local maximum is the critical point where `g''(m) < 0`. When it falls
/// outside (0, 1) the maximum over [0, 1) is the `m = 0` endpoint, since
/// `g(0) = -delta - d + s a0` always exceeds the limit `-delta - d` at `m -> 1`.
pub fn optimal_burden(p: &GrowthParams, d: f64) -> Result<OptimumReport> {
    p.validate()?;
    RegimePoint::new(0.0, d).validate(p)?;
    let g_at = |m: f64| growth_rate_unchecked(p, RegimePoint::new(m, d));
    let endpoint = |second_root| OptimumReport {
        m_star: 0.0,
        g_star: g_at(0.0),
        interior: false,
        second_root,
    };

    // dg/dm / (s a0) = a m^2 + b m + c
    let a = 3.0 * p.chi;
    let b = -2.0 * (p.phi + p.chi);
    let c = p.phi - 1.0;
    let curvature = |m: f64| 2.0 * a * m + b;

    let (max_root, other) = if a == 0.0 {
        if p.phi <= 1.0 {
            return Err(Error::DegenerateOptimum {
                g_at_zero: g_at(0.0),
            });
        }
        // b < 0 here, so the single critical point is a maximum.
        (-c / b, None)
    } else {
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return Ok(endpoint(None));
        }
        // Stable quadratic formula: the second root comes from r1 r2 = c / a.
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let r1 = q / a;
        let r2 = if q != 0.0 { c / q } else { r1 };
        if curvature(r1) < 0.0 {
            (r1, Some(r2))
        } else {
            (r2, Some(r1))
        }
    };

    if max_root > 0.0 && max_root < 1.0 {
        Ok(OptimumReport {
            m_star: max_root,
            g_star: g_at(max_root),
            interior: true,
            second_root: other,
        })
    } else {
        Ok(endpoint(Some(other.unwrap_or(max_root))))
    }
}

/// Brute-force maximum of the growth function on a grid of the given
/// spacing over [0, 1). Ties go to the smaller burden.
pub fn grid_maximum(p: &GrowthParams, d: f64, spacing: f64) -> Result<SweepPoint> {
    if !(spacing > 0.0 && spacing < 1.0) {
        return Err(Error::Grid(format!(
            "spacing must lie in (0, 1), got {spacing}"
        )));
    }
    let n = ((1.0 - 1e-12) / spacing).floor() as usize + 1;
    let last = (n - 1) as f64 * spacing;
    let grid = SweepGrid::new(0.0, last, n)?;
    let pts = sweep(p, &grid, d)?;
    Ok(pts
        .into_iter()
        .fold(None::<SweepPoint>, |best, pt| match best {
            Some(b) if b.g >= pt.g => Some(b),
            _ => Some(pt),
        })
        .expect("grid has at least two points"))
}

/// Analytic partial derivatives of the growth rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Partials {
    pub s: f64,
    pub delta: f64,
    pub a0: f64,
    pub phi: f64,
    pub chi: f64,
    pub m: f64,
    pub d: f64,
}

pub fn comparative_statics(p: &GrowthParams, r: RegimePoint) -> Result<Partials> {
    p.validate()?;
    r.validate(p)?;
    let m = r.m;
    let civilian = 1.0 - m;
    Ok(Partials {
        s: civilian * productivity_unchecked(p, m),
        delta: -1.0,
        a0: p.s * civilian * (1.0 + p.phi * m - p.chi * m * m),
        phi: p.s * p.a0 * civilian * m,
        chi: -p.s * p.a0 * civilian * m * m,
        m: p.s * p.a0 * ((p.phi - 1.0) - 2.0 * (p.phi + p.chi) * m + 3.0 * p.chi * m * m),
        d: -1.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeClass {
    BelowOptimum,
    NearOptimum,
    PermanentWarEconomy,
}

impl RegimeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegimeClass::BelowOptimum => "below-optimum",
            RegimeClass::NearOptimum => "near-optimum",
            RegimeClass::PermanentWarEconomy => "permanent-war-economy",
        }
    }
}

impl std::fmt::Display for RegimeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Places `m` relative to the growth-maximizing burden. The optimum does not
/// depend on `d`, so no destruction rate is needed.
pub fn classify_regime(p: &GrowthParams, m: f64, tol: f64) -> Result<RegimeClass> {
    check_burden(m)?;
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(Error::Domain {
            field: "tol",
            value: tol,
            reason: "must be non-negative and finite",
        });
    }
    let opt = optimal_burden(p, 0.0)?;
    Ok(if m < opt.m_star - tol {
        RegimeClass::BelowOptimum
    } else if m > opt.m_star + tol {
        RegimeClass::PermanentWarEconomy
    } else {
        RegimeClass::NearOptimum
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::growth_rate;
    use crate::presets::{BASELINE, IRAN, US};
    use approx::assert_relative_eq;

    // Independent brute-force maximizer at 1e-5 spacing over [0, 1).
    fn brute_argmax(p: &GrowthParams) -> f64 {
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..100_000 {
            let m = i as f64 * 1e-5;
            let g = -p.delta + p.s * (1.0 - m) * p.a0 * (1.0 + p.phi * m - p.chi * m * m);
            if g > best.1 {
                best = (m, g);
            }
        }
        best.0
    }

    #[test]
    fn grid_rejects_bad_bounds() {
        assert!(SweepGrid::new(0.0, 0.08, 401).is_ok());
        assert!(SweepGrid::new(0.08, 0.08, 10).is_err());
        assert!(SweepGrid::new(-0.1, 0.08, 10).is_err());
        assert!(SweepGrid::new(0.0, 1.0, 10).is_err());
        assert!(SweepGrid::new(0.0, 0.5, 1).is_err());
    }

    #[test]
    fn two_step_grid_is_endpoints() {
        let grid = SweepGrid::new(0.01, 0.05, 2).unwrap();
        let pts = sweep(&BASELINE, &grid, 0.0).unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[0].m, 0.01);
        assert_eq!(pts[1].m, 0.05);
        assert_eq!(
            pts[0].g,
            growth_rate(&BASELINE, RegimePoint::peace(0.01)).unwrap()
        );
        assert_eq!(
            pts[1].g,
            growth_rate(&BASELINE, RegimePoint::peace(0.05)).unwrap()
        );
    }

    #[test]
    fn baseline_sweep_is_hump_shaped() {
        let grid = SweepGrid::new(0.0, 0.08, 401).unwrap();
        let pts = sweep(&BASELINE, &grid, 0.0).unwrap();
        assert_relative_eq!(pts[0].g, 0.01, epsilon = 1e-15);
        let peak = pts
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.g.total_cmp(&b.1.g))
            .unwrap()
            .0;
        assert!(peak > 0 && peak < pts.len() - 1);
        assert!(pts.windows(2).take(peak).all(|w| w[1].g > w[0].g));
        assert!(pts.windows(2).skip(peak).all(|w| w[1].g < w[0].g));
    }

    #[test]
    fn us_sweep_positive_up_to_eight_percent() {
        let grid = SweepGrid::new(0.0, 0.12, 601).unwrap();
        let pts = sweep(&US, &grid, 0.0).unwrap();
        assert!(pts.iter().filter(|p| p.m <= 0.08).all(|p| p.g > 0.0));
    }

    #[test]
    fn sweep_rejects_excess_destruction() {
        let grid = SweepGrid::new(0.0, 0.08, 5).unwrap();
        assert!(sweep(&BASELINE, &grid, 0.96).is_err());
        assert!(sweep(&BASELINE, &grid, -0.01).is_err());
    }

    #[test]
    fn destruction_shifts_sweep_level() {
        let grid = SweepGrid::new(0.0, 0.12, 121).unwrap();
        let peace = sweep(&IRAN, &grid, 0.0).unwrap();
        let war = sweep(&IRAN, &grid, 0.03).unwrap();
        for (a, b) in peace.iter().zip(&war) {
            assert_eq!(a.m, b.m);
            assert_eq!(b.g, a.g - 0.03);
        }
    }

    #[test]
    fn baseline_optimum() {
        let opt = optimal_burden(&BASELINE, 0.0).unwrap();
        assert!(opt.interior);
        // Smaller root of 180 m^2 - 130 m + 4 = 0.
        let exact = (130.0 - (130.0f64 * 130.0 - 4.0 * 180.0 * 4.0).sqrt()) / 360.0;
        assert_relative_eq!(opt.m_star, exact, max_relative = 1e-13);
        assert!((opt.m_star - 0.0322).abs() < 1e-4);
        assert!((opt.g_star - 0.0138).abs() < 1e-4);
        assert!((opt.m_star - brute_argmax(&BASELINE)).abs() <= 1e-5);
        let larger = (130.0 + (130.0f64 * 130.0 - 4.0 * 180.0 * 4.0).sqrt()) / 360.0;
        assert_relative_eq!(opt.second_root.unwrap(), larger, max_relative = 1e-13);
    }

    #[test]
    fn two_country_optima() {
        let us = optimal_burden(&US, 0.0).unwrap();
        assert!((us.m_star - 0.0477).abs() < 1e-4);
        assert!((us.m_star - brute_argmax(&US)).abs() <= 1e-5);
        let iran = optimal_burden(&IRAN, 0.0).unwrap();
        assert!((iran.m_star - 0.0209).abs() < 1e-4);
        assert!((iran.m_star - brute_argmax(&IRAN)).abs() <= 1e-5);
    }

    #[test]
    fn destruction_moves_level_not_location() {
        let peace = optimal_burden(&US, 0.0).unwrap();
        let war = optimal_burden(&US, 0.01).unwrap();
        assert_eq!(peace.m_star, war.m_star);
        assert_relative_eq!(war.g_star, peace.g_star - 0.01, epsilon = 1e-16);
    }

    #[test]
    fn weak_innovation_puts_optimum_at_zero() {
        let p = GrowthParams::new(0.2, 0.05, 0.3, 0.0, 60.0).unwrap();
        let opt = optimal_burden(&p, 0.0).unwrap();
        assert_eq!(opt.m_star, 0.0);
        assert!(!opt.interior);
        assert!(opt.second_root.is_some());
    }

    #[test]
    fn linear_productivity_is_degenerate() {
        let p = GrowthParams::linear(0.2, 0.05, 0.3).unwrap();
        match optimal_burden(&p, 0.0) {
            Err(Error::DegenerateOptimum { g_at_zero }) => {
                assert_relative_eq!(g_at_zero, 0.01, epsilon = 1e-15)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn no_distortion_with_strong_innovation() {
        // chi = 0, phi = 3: g' is linear with root (phi - 1) / (2 phi).
        let p = GrowthParams::new(0.2, 0.05, 0.3, 3.0, 0.0).unwrap();
        let opt = optimal_burden(&p, 0.0).unwrap();
        assert!(opt.interior);
        assert_relative_eq!(opt.m_star, 1.0 / 3.0, max_relative = 1e-15);
        assert!(opt.second_root.is_none());
    }

    #[test]
    fn statics_at_zero_burden() {
        let ps = comparative_statics(&BASELINE, RegimePoint::peace(0.0)).unwrap();
        assert_relative_eq!(ps.s, 0.3, epsilon = 1e-15);
        assert_eq!(ps.delta, -1.0);
        assert_eq!(ps.d, -1.0);
        assert_eq!(ps.phi, 0.0);
        assert_eq!(ps.chi, 0.0);
    }

    #[test]
    fn statics_vanish_at_optimum() {
        let opt = optimal_burden(&BASELINE, 0.0).unwrap();
        let ps = comparative_statics(&BASELINE, RegimePoint::peace(opt.m_star)).unwrap();
        assert!(ps.m.abs() < 1e-14, "{}", ps.m);
    }

    #[test]
    fn statics_match_central_differences_for_us() {
        let h = 1e-7;
        let r = RegimePoint::peace(0.035);
        let ps = comparative_statics(&US, r).unwrap();
        let g = |p: GrowthParams, r: RegimePoint| {
            -p.delta - r.d + p.s * (1.0 - r.m) * p.a0 * (1.0 + p.phi * r.m - p.chi * r.m * r.m)
        };
        let fd = |up: GrowthParams, dn: GrowthParams| (g(up, r) - g(dn, r)) / (2.0 * h);
        let checks = [
            (
                ps.s,
                fd(
                    GrowthParams { s: US.s + h, ..US },
                    GrowthParams { s: US.s - h, ..US },
                ),
            ),
            (
                ps.delta,
                fd(
                    GrowthParams {
                        delta: US.delta + h,
                        ..US
                    },
                    GrowthParams {
                        delta: US.delta - h,
                        ..US
                    },
                ),
            ),
            (
                ps.a0,
                fd(
                    GrowthParams {
                        a0: US.a0 + h,
                        ..US
                    },
                    GrowthParams {
                        a0: US.a0 - h,
                        ..US
                    },
                ),
            ),
            (
                ps.phi,
                fd(
                    GrowthParams {
                        phi: US.phi + h,
                        ..US
                    },
                    GrowthParams {
                        phi: US.phi - h,
                        ..US
                    },
                ),
            ),
            (
                ps.chi,
                fd(
                    GrowthParams {
                        chi: US.chi + h,
                        ..US
                    },
                    GrowthParams {
                        chi: US.chi - h,
                        ..US
                    },
                ),
            ),
            (
                ps.m,
                (g(US, RegimePoint::peace(r.m + h)) - g(US, RegimePoint::peace(r.m - h)))
                    / (2.0 * h),
            ),
            (
                ps.d,
                (g(US, RegimePoint::new(r.m, h)) - g(US, RegimePoint::new(r.m, 0.0))) / h,
            ),
        ];
        for (analytic, numeric) in checks {
            assert_relative_eq!(analytic, numeric, max_relative = 1e-5);
        }
    }

    #[test]
    fn classification() {
        let tol = DEFAULT_CLASSIFY_TOL;
        assert_eq!(
            classify_regime(&BASELINE, 0.07, tol).unwrap(),
            RegimeClass::PermanentWarEconomy
        );
        let opt = optimal_burden(&BASELINE, 0.0).unwrap();
        assert_eq!(
            classify_regime(&BASELINE, opt.m_star, tol).unwrap(),
            RegimeClass::NearOptimum
        );
        assert_eq!(
            classify_regime(&BASELINE, 0.01, tol).unwrap(),
            RegimeClass::BelowOptimum
        );
        assert_eq!(
            classify_regime(&IRAN, 0.03, tol).unwrap(),
            RegimeClass::PermanentWarEconomy
        );
        assert!(
            classify_regime(&GrowthParams::linear(0.2, 0.05, 0.3).unwrap(), 0.01, tol).is_err()
        );
    }

    #[test]
    fn grid_maximum_agrees_with_closed_form() {
        let best = grid_maximum(&BASELINE, 0.0, 1e-5).unwrap();
        let opt = optimal_burden(&BASELINE, 0.0).unwrap();
        assert!((best.m - opt.m_star).abs() <= 1e-5);
    }
}
