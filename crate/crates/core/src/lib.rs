//! Growth and demand models of a militarized economy.
//!
//! * [`model`]: AK technology with burden-dependent productivity.
//! * [`demand`]: short-run Keynesian equilibrium and the military spending multiplier.
//! * [`analysis`]: sweeps, the growth-maximizing burden, comparative statics.
//! * [`scenario`]: multi-period peace/war simulations and counterfactual losses.
//! * [`calibration`]: exact parameter inversions.
//! * [`presets`]: built-in calibrations.
//!
//! All functions are pure; growth rates are net fractions per period.

pub mod analysis;
pub mod calibration;
pub mod demand;
pub mod error;
pub mod model;
pub mod presets;
pub mod scenario;

pub use analysis::{
    classify_regime, comparative_statics, grid_maximum, optimal_burden, sweep, OptimumReport,
    Partials, RegimeClass, SweepGrid, SweepPoint,
};
pub use calibration::{fit_innovation, solve_a0, GrowthObservation, InnovationFit};
pub use demand::{DemandInputs, DemandParams, DemandSolution};
pub use error::{Error, ErrorKind, Result};
pub use model::{
    growth_rate, productivity, step, EconomyState, GrowthParams, RegimePoint, StepResult,
};
pub use scenario::{
    counterfactual_loss, peace_war_table, simulate, ComparisonReport, ComparisonRow,
    CounterfactualReport, Country, PeriodRecord, Schedule, ScheduleEntry, Trajectory,
};
