//! Multi-period simulation under piecewise-constant regime schedules, and
//! peace/war comparisons built on top of it.
//!
//! Countries are uncoupled: a two-country run is two independent
//! simulations reported side by side.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    growth_rate_unchecked, productivity_unchecked, step, EconomyState, GrowthParams, RegimePoint,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub start_period: usize,
    pub regime: RegimePoint,
}

/// Regimes switch instantaneously at each entry's start period and stay in
/// force until the next entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    entries: Vec<ScheduleEntry>,
    horizon: usize,
}

impl Schedule {
    pub fn new(entries: Vec<ScheduleEntry>, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::Schedule(
                "horizon must be at least one period".into(),
            ));
        }
        match entries.first() {
            None => return Err(Error::Schedule("no regime entries".into())),
            Some(e) if e.start_period != 0 => {
                return Err(Error::Schedule(format!(
                    "first entry must start at period 0, starts at {}",
                    e.start_period
                )))
            }
            _ => {}
        }
        if let Some(w) = entries
            .windows(2)
            .find(|w| w[1].start_period <= w[0].start_period)
        {
            return Err(Error::Schedule(format!(
                "start periods must strictly increase ({} then {})",
                w[0].start_period, w[1].start_period
            )));
        }
        let last = entries.last().expect("non-empty").start_period;
        if last >= horizon {
            return Err(Error::Schedule(format!(
                "entry starting at {last} lies beyond the horizon {horizon}"
            )));
        }
        Ok(Schedule { entries, horizon })
    }

    pub fn constant(regime: RegimePoint, horizon: usize) -> Result<Self> {
        Self::new(
            vec![ScheduleEntry {
                start_period: 0,
                regime,
            }],
            horizon,
        )
    }

    /// `first` for `switch_at` periods, then `second` until the horizon.
    pub fn switch(
        first: RegimePoint,
        second: RegimePoint,
        switch_at: usize,
        horizon: usize,
    ) -> Result<Self> {
        Self::new(
            vec![
                ScheduleEntry {
                    start_period: 0,
                    regime: first,
                },
                ScheduleEntry {
                    start_period: switch_at,
                    regime: second,
                },
            ],
            horizon,
        )
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    /// Regime in force during period `t`. Periods at or past the horizon
    /// keep the last regime.
    pub fn regime_at(&self, t: usize) -> RegimePoint {
        let idx = self.entries.partition_point(|e| e.start_period <= t);
        self.entries[idx - 1].regime
    }

    pub fn validate_for(&self, p: &GrowthParams) -> Result<()> {
        self.entries.iter().try_for_each(|e| e.regime.validate(p))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Country {
    pub name: String,
    pub params: GrowthParams,
    pub initial_capital: f64,
}

impl Country {
    pub fn new(
        name: impl Into<String>,
        params: GrowthParams,
        initial_capital: f64,
    ) -> Result<Self> {
        let c = Country {
            name: name.into(),
            params,
            initial_capital,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.initial_capital > 0.0 && self.initial_capital.is_finite()) {
            return Err(Error::Domain {
                field: "initial_capital",
                value: self.initial_capital,
                reason: "must be positive and finite",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodRecord {
    pub period: usize,
    pub m: f64,
    pub d: f64,
    pub capital: f64,
    pub output: f64,
    pub investment: f64,
    pub growth: f64,
}

/// Simulated path with `horizon + 1` records, periods `0..=horizon`.
///
/// The last record is the terminal state reached after `horizon` steps. Its
/// investment and growth are the flows the last regime would generate if it
/// continued; they are not applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub country: String,
    pub records: Vec<PeriodRecord>,
}

impl Trajectory {
    pub fn terminal(&self) -> &PeriodRecord {
        self.records
            .last()
            .expect("trajectory always has a terminal record")
    }

    pub fn horizon(&self) -> usize {
        self.records.len() - 1
    }

    pub fn outputs(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.output)
    }
}

fn record(p: &GrowthParams, period: usize, r: RegimePoint, capital: f64) -> PeriodRecord {
    let a = productivity_unchecked(p, r.m);
    PeriodRecord {
        period,
        m: r.m,
        d: r.d,
        capital,
        output: a * capital,
        investment: p.s * (1.0 - r.m) * a * capital,
        growth: growth_rate_unchecked(p, r),
    }
}

/// Iterates the capital recursion for `sched.horizon()` periods.
pub fn simulate(c: &Country, sched: &Schedule) -> Result<Trajectory> {
    c.validate()?;
    sched.validate_for(&c.params)?;
    let p = &c.params;
    let mut records = Vec::with_capacity(sched.horizon() + 1);
    let mut capital = c.initial_capital;
    for t in 0..sched.horizon() {
        let r = sched.regime_at(t);
        let output = productivity_unchecked(p, r.m) * capital;
        let res = step(p, r, EconomyState { capital, output }).map_err(|e| match e {
            Error::Annihilated { next_capital, .. } => Error::Annihilated {
                period: t,
                next_capital,
            },
            other => other,
        })?;
        records.push(PeriodRecord {
            period: t,
            m: r.m,
            d: r.d,
            capital,
            output,
            investment: res.civilian_investment,
            growth: res.realized_growth,
        });
        capital = res.next_capital;
    }
    let horizon = sched.horizon();
    records.push(record(p, horizon, sched.regime_at(horizon), capital));
    Ok(Trajectory {
        country: c.name.clone(),
        records,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub country: String,
    pub peace_growth: f64,
    pub war_growth: f64,
    /// `((1 + g_war) / (1 + g_peace))^horizon`, the war/peace ratio of the
    /// capital stock (output at common productivity) after the horizon.
    pub terminal_ratio: f64,
    /// Peace output minus war output, periods `0..=horizon`.
    pub output_loss: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub horizon: usize,
    pub rows: Vec<ComparisonRow>,
}

/// Growth under a peace and a war regime for each country, plus the loss
/// from running the war regime for the whole horizon. Rows follow input
/// order.
pub fn peace_war_table(
    countries: &[Country],
    peace: &[RegimePoint],
    war: &[RegimePoint],
    horizon: usize,
) -> Result<ComparisonReport> {
    if peace.len() != countries.len() || war.len() != countries.len() {
        return Err(Error::Schedule(format!(
            "{} countries but {} peace and {} war regimes",
            countries.len(),
            peace.len(),
            war.len()
        )));
    }
    let rows = countries
        .par_iter()
        .zip(peace.par_iter().zip(war.par_iter()))
        .map(|(c, (&rp, &rw))| {
            let peace_path = simulate(c, &Schedule::constant(rp, horizon)?)?;
            let war_path = simulate(c, &Schedule::constant(rw, horizon)?)?;
            let peace_growth = growth_rate_unchecked(&c.params, rp);
            let war_growth = growth_rate_unchecked(&c.params, rw);
            Ok(ComparisonRow {
                country: c.name.clone(),
                peace_growth,
                war_growth,
                terminal_ratio: ((1.0 + war_growth) / (1.0 + peace_growth)).powi(horizon as i32),
                output_loss: peace_path
                    .outputs()
                    .zip(war_path.outputs())
                    .map(|(yp, yw)| yp - yw)
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport { horizon, rows })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterfactualReport {
    pub actual: Trajectory,
    pub counterfactual: Trajectory,
    /// Counterfactual minus actual output, periods `0..=horizon`.
    pub gaps: Vec<f64>,
    pub cumulative_gap: f64,
    /// Actual over counterfactual capital at the horizon, i.e. the ratio of
    /// compounded growth factors.
    pub terminal_ratio: f64,
    /// Actual over counterfactual output at the horizon, including the
    /// productivity level difference between the terminal regimes.
    pub terminal_output_ratio: f64,
}

pub fn counterfactual_loss(
    c: &Country,
    actual: &Schedule,
    counterfactual: &Schedule,
) -> Result<CounterfactualReport> {
    if actual.horizon() != counterfactual.horizon() {
        return Err(Error::HorizonMismatch {
            actual: actual.horizon(),
            counterfactual: counterfactual.horizon(),
        });
    }
    let (a, cf) = rayon::join(|| simulate(c, actual), || simulate(c, counterfactual));
    let (actual, counterfactual) = (a?, cf?);
    let gaps: Vec<f64> = counterfactual
        .outputs()
        .zip(actual.outputs())
        .map(|(ycf, ya)| ycf - ya)
        .collect();
    let (ta, tc) = (actual.terminal(), counterfactual.terminal());
    Ok(CounterfactualReport {
        cumulative_gap: gaps.iter().sum(),
        terminal_ratio: ta.capital / tc.capital,
        terminal_output_ratio: ta.output / tc.output,
        gaps,
        actual,
        counterfactual,
    })
}
