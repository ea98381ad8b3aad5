//! Subcommand implementations. Each one validates everything it needs,
//! computes, and renders into an [`Output`] without touching the
//! filesystem.

use std::fmt::Write;

use milgrowth_core::{
    analysis, classify_regime, comparative_statics, counterfactual_loss, fit_innovation,
    growth_rate, optimal_burden, peace_war_table, productivity, simulate, solve_a0, ComparisonRow,
    CounterfactualReport, Country, GrowthObservation, GrowthParams, Partials, RegimePoint,
    Schedule, SweepGrid, SweepPoint, Trajectory,
};
use serde::Serialize;

use crate::config::{Config, DemandBlock, Preset};
use crate::error::{CliError, Result};
use crate::format::{percent, sig9, Csv, Field};
use crate::plot::{self, LineStyle, Marker, Series};
use crate::{
    CalibrateArgs, CalibrationTarget, DemandArgs, Format, GrowthArgs, OptimizeArgs, Output,
    ScenarioArgs, ScheduleKind, StaticsArgs, SweepArgs,
};

/// Spacing of the brute-force grid behind `optimize --verify`.
pub const VERIFY_SPACING: f64 = 1e-5;

trait Render: Serialize {
    fn csv(&self) -> String;
    fn text(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn presets(config: &Config, names: &[String]) -> Result<Vec<Preset>> {
    if names.is_empty() {
        return Err(CliError::validation(
            "--preset",
            "at least one preset is required",
        ));
    }
    names.iter().map(|n| config.resolve(n.trim())).collect()
}

fn regime_at(p: &Preset, m: f64, d: f64, path: &str) -> Result<RegimePoint> {
    let r = RegimePoint::new(m, d);
    r.validate(&p.params).map_err(|e| match e {
        milgrowth_core::Error::Domain { field, .. } => {
            CliError::validation(format!("--{field}"), e.to_string())
        }
        other => CliError::model(path, other),
    })?;
    Ok(r)
}

fn computation(e: milgrowth_core::Error) -> CliError {
    CliError::model("", e)
}

// ---------------------------------------------------------------- demand

#[derive(Debug, Serialize)]
struct DemandReport {
    inputs: milgrowth_core::DemandInputs,
    output: f64,
    multiplier: f64,
    autonomous_component: f64,
    denominator: f64,
}

impl Render for DemandReport {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&[
            "output",
            "multiplier",
            "autonomous_component",
            "denominator",
        ]);
        csv.row(&[
            self.output.into(),
            self.multiplier.into(),
            self.autonomous_component.into(),
            self.denominator.into(),
        ]);
        csv.finish()
    }

    fn text(&self) -> String {
        let i = &self.inputs;
        format!(
            "equilibrium output   Y  = {}\n\
             military multiplier k1 = {}\n\
             autonomous component k0 = {}\n\
             (c0={} c1={} tau={} i0={} i1={} i2={} r={} G_c={} G_m={})\n",
            sig9(self.output),
            sig9(self.multiplier),
            sig9(self.autonomous_component),
            sig9(i.c0),
            sig9(i.c1),
            sig9(i.tau),
            sig9(i.i0),
            sig9(i.i1),
            sig9(i.i2),
            sig9(i.r),
            sig9(i.g_c),
            sig9(i.g_m),
        )
    }
}

pub fn demand(config: &Config, a: &DemandArgs, format: Format) -> Result<Output> {
    let overrides = DemandBlock {
        c0: a.c0,
        c1: a.c1,
        tau: a.tau,
        i0: a.i0,
        i1: a.i1,
        i2: a.i2,
        r: a.r,
        g_c: a.g_c,
        g_m: a.g_m,
    };
    let params = config.demand(&overrides)?;
    let sol = params.equilibrium();
    let report = DemandReport {
        inputs: *params.inputs(),
        output: sol.output,
        multiplier: sol.multiplier,
        autonomous_component: sol.autonomous_component,
        denominator: params.denominator(),
    };
    Ok(Output {
        primary: report.render(format),
        files: vec![],
    })
}

// ---------------------------------------------------------------- growth

#[derive(Debug, Serialize)]
struct GrowthReport {
    preset: String,
    m: f64,
    d: f64,
    productivity: f64,
    g: f64,
    regime: Option<&'static str>,
}

impl Render for GrowthReport {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&["preset", "m", "d", "productivity", "g", "regime"]);
        csv.row(&[
            Field::Text(&self.preset),
            self.m.into(),
            self.d.into(),
            self.productivity.into(),
            self.g.into(),
            self.regime.map_or(Field::Empty, Field::Text),
        ]);
        csv.finish()
    }

    fn text(&self) -> String {
        let mut s = format!(
            "{}: m = {} ({} of output), d = {}\n  productivity A(m) = {}\n  growth g = {} ({})\n",
            self.preset,
            sig9(self.m),
            percent(self.m),
            sig9(self.d),
            sig9(self.productivity),
            sig9(self.g),
            percent(self.g),
        );
        if let Some(r) = self.regime {
            writeln!(s, "  regime: {r}").unwrap();
        }
        s
    }
}

pub fn growth(config: &Config, a: &GrowthArgs, format: Format) -> Result<Output> {
    let p = config.resolve(&a.preset)?;
    let r = regime_at(&p, a.m, a.d, "--m")?;
    if !(a.tol >= 0.0 && a.tol.is_finite()) {
        return Err(CliError::validation("--tol", "must be non-negative"));
    }
    let report = GrowthReport {
        preset: p.name.clone(),
        m: r.m,
        d: r.d,
        productivity: productivity(&p.params, r.m).map_err(computation)?,
        g: growth_rate(&p.params, r).map_err(computation)?,
        regime: classify_regime(&p.params, r.m, a.tol)
            .ok()
            .map(|c| c.as_str()),
    };
    Ok(Output {
        primary: report.render(format),
        files: vec![],
    })
}

// ---------------------------------------------------------------- sweep

#[derive(Debug, Serialize)]
struct SweepSeries {
    preset: String,
    d: f64,
    points: Vec<SweepPoint>,
}

#[derive(Debug, Serialize)]
struct SweepReport {
    series: Vec<SweepSeries>,
}

impl SweepReport {
    fn long_csv(&self, label: &str) -> String {
        let mut csv = Csv::new(&[label, "m", "g"]);
        for s in &self.series {
            for p in &s.points {
                csv.row(&[Field::Text(&s.preset), p.m.into(), p.g.into()]);
            }
        }
        csv.finish()
    }
}

impl Render for SweepReport {
    fn csv(&self) -> String {
        if let [only] = self.series.as_slice() {
            let mut csv = Csv::new(&["m", "g"]);
            for p in &only.points {
                csv.row(&[p.m.into(), p.g.into()]);
            }
            csv.finish()
        } else {
            self.long_csv("country")
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for series in &self.series {
            let peak = series
                .points
                .iter()
                .copied()
                .reduce(|a, b| if b.g > a.g { b } else { a })
                .expect("grid has at least two points");
            writeln!(
                s,
                "# {} (d = {}): {} points, highest g = {} at m = {}",
                series.preset,
                sig9(series.d),
                series.points.len(),
                percent(peak.g),
                sig9(peak.m)
            )
            .unwrap();
            writeln!(s, "{:>12}  {:>9}", "m", "g").unwrap();
            for p in &series.points {
                writeln!(s, "{:>12}  {:>9}", sig9(p.m), percent(p.g)).unwrap();
            }
        }
        s
    }
}

pub fn sweep(config: &Config, a: &SweepArgs, format: Format) -> Result<Output> {
    let presets = presets(config, &a.preset)?;
    let grid_cfg = config.grid.clone().unwrap_or_default();
    let m_min = a.m_min.or(grid_cfg.m_min).unwrap_or(0.0);
    let m_max = a.m_max.or(grid_cfg.m_max).unwrap_or(0.08);
    let steps = a.steps.or(grid_cfg.steps).unwrap_or(401);
    let d = a.d.or(grid_cfg.d).unwrap_or(0.0);
    let grid = SweepGrid::new(m_min, m_max, steps)
        .map_err(|e| CliError::validation("--m-min/--m-max/--steps", e.to_string()))?;
    for p in &presets {
        regime_at(p, grid.m_max(), d, "--d")?;
    }
    for &m in &a.markers {
        if !(0.0..1.0).contains(&m) {
            return Err(CliError::validation(
                "--marker",
                format!("{m} is outside [0, 1)"),
            ));
        }
    }

    let series = presets
        .iter()
        .map(|p| {
            Ok(SweepSeries {
                preset: p.name.clone(),
                d,
                points: milgrowth_core::sweep(&p.params, &grid, d).map_err(computation)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = SweepReport { series };

    let mut files = vec![];
    if let Some(path) = &a.plot {
        let bytes = if a.data_only {
            report.long_csv("series").into_bytes()
        } else {
            sweep_chart(&report, &presets, &a.markers, &grid)?.into_bytes()
        };
        files.push((path.clone(), bytes));
    }
    Ok(Output {
        primary: report.render(format),
        files,
    })
}

fn sweep_chart(
    report: &SweepReport,
    presets: &[Preset],
    extra: &[f64],
    grid: &SweepGrid,
) -> Result<String> {
    let color = |i: usize| plot::PALETTE[i % plot::PALETTE.len()].to_string();
    let series: Vec<Series> = report
        .series
        .iter()
        .enumerate()
        .map(|(i, s)| Series {
            label: s.preset.clone(),
            points: s.points.iter().map(|p| (p.m, p.g)).collect(),
            color: color(i),
            style: if i % 2 == 0 {
                LineStyle::Solid
            } else {
                LineStyle::Dashed
            },
        })
        .collect();
    let in_range = |m: f64| m >= grid.m_min() && m <= grid.m_max();
    let mut markers = vec![];
    for (i, p) in presets.iter().enumerate() {
        for (regime, style) in [(p.peace, LineStyle::Dotted), (p.war, LineStyle::DashDotted)] {
            if let Some(r) = regime.filter(|r| in_range(r.m)) {
                markers.push(Marker {
                    m: r.m,
                    color: color(i),
                    style,
                });
            }
        }
    }
    markers.extend(extra.iter().map(|&m| Marker {
        m,
        color: "#777777".into(),
        style: LineStyle::Dotted,
    }));
    plot::emit_plot(&series, &markers).map_err(|e| CliError::Computation(e.to_string()))
}

// ---------------------------------------------------------------- optimize

#[derive(Debug, Serialize)]
struct GridCheck {
    spacing: f64,
    m: f64,
    g: f64,
    agrees: bool,
}

#[derive(Debug, Serialize)]
struct OptimumRow {
    preset: String,
    d: f64,
    m_star: f64,
    g_star: f64,
    interior: bool,
    second_root: Option<f64>,
    grid: Option<GridCheck>,
}

#[derive(Debug, Serialize)]
struct OptimizeReport {
    rows: Vec<OptimumRow>,
}

impl Render for OptimizeReport {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&[
            "preset",
            "d",
            "m_star",
            "g_star",
            "interior",
            "second_root",
            "grid_m_star",
            "grid_g_star",
            "verified",
        ]);
        for r in &self.rows {
            csv.row(&[
                Field::Text(&r.preset),
                r.d.into(),
                r.m_star.into(),
                r.g_star.into(),
                Field::Bool(r.interior),
                r.second_root.into(),
                r.grid.as_ref().map(|g| g.m).into(),
                r.grid.as_ref().map(|g| g.g).into(),
                r.grid
                    .as_ref()
                    .map_or(Field::Empty, |g| Field::Bool(g.agrees)),
            ]);
        }
        csv.finish()
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            writeln!(
                s,
                "{}: m* = {} ({} of output), g* = {} [{}]",
                r.preset,
                sig9(r.m_star),
                percent(r.m_star),
                percent(r.g_star),
                if r.interior {
                    "interior maximum"
                } else {
                    "endpoint maximum"
                }
            )
            .unwrap();
            if let Some(m2) = r.second_root {
                writeln!(s, "  other critical point: m = {}", sig9(m2)).unwrap();
            }
            if let Some(g) = &r.grid {
                writeln!(
                    s,
                    "  grid check (spacing {}): m = {}, g = {} -> {}",
                    g.spacing,
                    sig9(g.m),
                    percent(g.g),
                    if g.agrees { "agrees" } else { "DISAGREES" }
                )
                .unwrap();
            }
        }
        s
    }
}

pub fn optimize(config: &Config, a: &OptimizeArgs, format: Format) -> Result<Output> {
    let presets = presets(config, &a.preset)?;
    for p in &presets {
        regime_at(p, 0.0, a.d, "--d")?;
    }
    let mut rows = vec![];
    for p in &presets {
        let opt = optimal_burden(&p.params, a.d)
            .map_err(|e| CliError::Computation(format!("{}: {e}", p.name)))?;
        let grid = if a.verify {
            let best =
                analysis::grid_maximum(&p.params, a.d, VERIFY_SPACING).map_err(computation)?;
            Some(GridCheck {
                spacing: VERIFY_SPACING,
                m: best.m,
                g: best.g,
                agrees: (best.m - opt.m_star).abs() <= VERIFY_SPACING * (1.0 + 1e-9),
            })
        } else {
            None
        };
        rows.push(OptimumRow {
            preset: p.name.clone(),
            d: a.d,
            m_star: opt.m_star,
            g_star: opt.g_star,
            interior: opt.interior,
            second_root: opt.second_root,
            grid,
        });
    }
    if let Some(bad) = rows
        .iter()
        .find(|r| r.grid.as_ref().is_some_and(|g| !g.agrees))
    {
        return Err(CliError::Computation(format!(
            "{}: closed-form m* {} disagrees with grid maximum {}",
            bad.preset,
            bad.m_star,
            bad.grid.as_ref().unwrap().m
        )));
    }
    Ok(Output {
        primary: OptimizeReport { rows }.render(format),
        files: vec![],
    })
}

// ---------------------------------------------------------------- statics

#[derive(Debug, Serialize)]
struct StaticsRow {
    preset: String,
    m: f64,
    d: f64,
    partials: Partials,
}

#[derive(Debug, Serialize)]
struct StaticsReport {
    rows: Vec<StaticsRow>,
}

impl Render for StaticsReport {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&[
            "preset", "m", "d", "ds", "ddelta", "da0", "dphi", "dchi", "dm", "dd",
        ]);
        for r in &self.rows {
            let p = &r.partials;
            csv.row(&[
                Field::Text(&r.preset),
                r.m.into(),
                r.d.into(),
                p.s.into(),
                p.delta.into(),
                p.a0.into(),
                p.phi.into(),
                p.chi.into(),
                p.m.into(),
                p.d.into(),
            ]);
        }
        csv.finish()
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            let p = &r.partials;
            writeln!(s, "{} at m = {}, d = {}:", r.preset, sig9(r.m), sig9(r.d)).unwrap();
            for (name, v) in [
                ("s", p.s),
                ("delta", p.delta),
                ("a0", p.a0),
                ("phi", p.phi),
                ("chi", p.chi),
                ("m", p.m),
                ("d", p.d),
            ] {
                writeln!(s, "  dg/d{name:<6} = {}", sig9(v)).unwrap();
            }
        }
        s
    }
}

pub fn statics(config: &Config, a: &StaticsArgs, format: Format) -> Result<Output> {
    let presets = presets(config, &a.preset)?;
    let regimes = presets
        .iter()
        .map(|p| regime_at(p, a.m, a.d, "--m"))
        .collect::<Result<Vec<_>>>()?;
    let rows = presets
        .iter()
        .zip(regimes)
        .map(|(p, r)| {
            Ok(StaticsRow {
                preset: p.name.clone(),
                m: r.m,
                d: r.d,
                partials: comparative_statics(&p.params, r).map_err(computation)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Output {
        primary: StaticsReport { rows }.render(format),
        files: vec![],
    })
}

// ---------------------------------------------------------------- scenario

#[derive(Debug, Serialize)]
struct TableReport {
    horizon: usize,
    rows: Vec<ComparisonRow>,
}

impl Render for TableReport {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&["country", "peace_g", "war_g", "terminal_ratio"]);
        for r in &self.rows {
            csv.row(&[
                Field::Text(&r.country),
                r.peace_growth.into(),
                r.war_growth.into(),
                r.terminal_ratio.into(),
            ]);
        }
        csv.finish()
    }

    fn text(&self) -> String {
        let mut s = format!(
            "Long-run growth under peace and war (ratio after {} periods)\n{:<12}{:>10}{:>10}{:>12}\n",
            self.horizon, "country", "peace", "war", "war/peace"
        );
        for r in &self.rows {
            writeln!(
                s,
                "{:<12}{:>10}{:>10}{:>12.4}",
                r.country,
                percent(r.peace_growth),
                percent(r.war_growth),
                r.terminal_ratio
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct CounterfactualSet {
    war_periods: usize,
    reports: Vec<CounterfactualReport>,
}

impl Render for CounterfactualSet {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&[
            "period",
            "country",
            "actual_output",
            "counterfactual_output",
            "gap",
        ]);
        for rep in &self.reports {
            for ((a, c), gap) in rep
                .actual
                .records
                .iter()
                .zip(&rep.counterfactual.records)
                .zip(&rep.gaps)
            {
                csv.row(&[
                    Field::Int(a.period),
                    Field::Text(&rep.actual.country),
                    a.output.into(),
                    c.output.into(),
                    (*gap).into(),
                ]);
            }
        }
        csv.finish()
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for rep in &self.reports {
            writeln!(
                s,
                "{}: war for {} of {} periods vs peace throughout\n  \
                 cumulative output gap {} (periods 0..={})\n  \
                 terminal capital ratio {:.4} ({} below the peace path)\n  \
                 terminal output ratio {:.4}",
                rep.actual.country,
                self.war_periods,
                rep.actual.horizon(),
                sig9(rep.cumulative_gap),
                rep.actual.horizon(),
                rep.terminal_ratio,
                percent(1.0 - rep.terminal_ratio),
                rep.terminal_output_ratio,
            )
            .unwrap();
        }
        s
    }
}

#[derive(Debug, Serialize)]
struct TrajectorySet {
    trajectories: Vec<Trajectory>,
}

impl Render for TrajectorySet {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&[
            "period",
            "country",
            "m",
            "d",
            "capital",
            "output",
            "investment",
            "growth",
        ]);
        for t in &self.trajectories {
            for r in &t.records {
                csv.row(&[
                    Field::Int(r.period),
                    Field::Text(&t.country),
                    r.m.into(),
                    r.d.into(),
                    r.capital.into(),
                    r.output.into(),
                    r.investment.into(),
                    r.growth.into(),
                ]);
            }
        }
        csv.finish()
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for t in &self.trajectories {
            writeln!(s, "# {}", t.country).unwrap();
            writeln!(
                s,
                "{:>6}{:>8}{:>8}{:>14}{:>14}{:>10}",
                "period", "m", "d", "capital", "output", "growth"
            )
            .unwrap();
            for r in &t.records {
                writeln!(
                    s,
                    "{:>6}{:>8}{:>8}{:>14.4}{:>14.4}{:>10}",
                    r.period,
                    sig9(r.m),
                    sig9(r.d),
                    r.capital,
                    r.output,
                    percent(r.growth)
                )
                .unwrap();
            }
        }
        s
    }
}

pub fn scenario(config: &Config, a: &ScenarioArgs, format: Format) -> Result<Output> {
    let presets = presets(config, &a.preset)?;
    let horizon = a
        .horizon
        .or(config.scenario.as_ref().and_then(|s| s.horizon))
        .unwrap_or(milgrowth_core::presets::HORIZON);
    if horizon == 0 {
        return Err(CliError::validation("--horizon", "must be at least 1"));
    }
    let war_periods = a.war_periods.unwrap_or(horizon);
    if war_periods == 0 || war_periods > horizon {
        return Err(CliError::validation(
            "--war-periods",
            format!("must lie in 1..={horizon}, got {war_periods}"),
        ));
    }
    let countries = presets
        .iter()
        .map(|p| {
            Country::new(p.name.clone(), p.params, p.initial_capital)
                .map_err(|e| CliError::model(&format!("growth.{}", p.name), e))
        })
        .collect::<Result<Vec<_>>>()?;
    let schedule_err = |e| CliError::model("--war-periods", e);
    let war_schedule = |p: &Preset| -> Result<Schedule> {
        let war = p.war()?;
        if war_periods == horizon {
            Schedule::constant(war, horizon).map_err(schedule_err)
        } else {
            Schedule::switch(war, p.peace()?, war_periods, horizon).map_err(schedule_err)
        }
    };

    let primary = if a.table3 {
        let peace = presets
            .iter()
            .map(Preset::peace)
            .collect::<Result<Vec<_>>>()?;
        let war = presets
            .iter()
            .map(Preset::war)
            .collect::<Result<Vec<_>>>()?;
        let report = peace_war_table(&countries, &peace, &war, horizon).map_err(computation)?;
        TableReport {
            horizon: report.horizon,
            rows: report.rows,
        }
        .render(format)
    } else if a.counterfactual {
        let plans = presets
            .iter()
            .map(|p| {
                Ok((
                    war_schedule(p)?,
                    Schedule::constant(p.peace()?, horizon).map_err(schedule_err)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let reports = countries
            .iter()
            .zip(&plans)
            .map(|(c, (actual, cf))| counterfactual_loss(c, actual, cf).map_err(computation))
            .collect::<Result<Vec<_>>>()?;
        CounterfactualSet {
            war_periods,
            reports,
        }
        .render(format)
    } else {
        let schedules = presets
            .iter()
            .map(|p| match a.schedule {
                ScheduleKind::Peace => {
                    Schedule::constant(p.peace()?, horizon).map_err(schedule_err)
                }
                ScheduleKind::War => war_schedule(p),
            })
            .collect::<Result<Vec<_>>>()?;
        let trajectories = countries
            .iter()
            .zip(&schedules)
            .map(|(c, s)| {
                simulate(c, s).map_err(|e| CliError::Computation(format!("{}: {e}", c.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        TrajectorySet { trajectories }.render(format)
    };
    Ok(Output {
        primary,
        files: vec![],
    })
}

// ---------------------------------------------------------------- calibrate

#[derive(Debug, Serialize)]
struct CalibrationReport {
    target: &'static str,
    values: Vec<(&'static str, f64)>,
    observations: Vec<GrowthObservation>,
    /// Model growth minus target growth at each observation.
    residuals: Vec<f64>,
}

impl Render for CalibrationReport {
    fn csv(&self) -> String {
        let mut csv = Csv::new(&["parameter", "value"]);
        for (name, v) in &self.values {
            csv.row(&[Field::Text(name), (*v).into()]);
        }
        csv.finish()
    }

    fn text(&self) -> String {
        let mut s = String::new();
        for (name, v) in &self.values {
            writeln!(s, "{name} = {}", sig9(*v)).unwrap();
        }
        for (o, r) in self.observations.iter().zip(&self.residuals) {
            writeln!(
                s,
                "  target g = {} at m = {}, d = {}: residual {:e}",
                sig9(o.g),
                sig9(o.m),
                sig9(o.d),
                r
            )
            .unwrap();
        }
        s
    }
}

fn parse_observation(raw: &str) -> Result<GrowthObservation> {
    let bad = || CliError::validation("--obs", format!("expected m:g or m:g:d, got '{raw}'"));
    let parts = raw
        .split(':')
        .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    match parts.as_slice() {
        [m, g] => Ok(GrowthObservation::new(*m, 0.0, *g)),
        [m, g, d] => Ok(GrowthObservation::new(*m, *d, *g)),
        _ => Err(bad()),
    }
}

pub fn calibrate(config: &Config, a: &CalibrateArgs, format: Format) -> Result<Output> {
    let base = config.resolve(&a.preset)?.params;
    let known = GrowthParams {
        s: a.s.unwrap_or(base.s),
        delta: a.delta.unwrap_or(base.delta),
        a0: a.a0.unwrap_or(base.a0),
        phi: a.phi.unwrap_or(base.phi),
        chi: a.chi.unwrap_or(base.chi),
    };
    known.validate().map_err(|e| match e {
        milgrowth_core::Error::Domain { field, .. } => {
            CliError::validation(format!("--{field}"), e.to_string())
        }
        other => CliError::model("", other),
    })?;
    let observations = a
        .observations
        .iter()
        .map(|o| parse_observation(o))
        .collect::<Result<Vec<_>>>()?;
    let needed = match a.target {
        CalibrationTarget::A0 => 1,
        CalibrationTarget::Innovation => 2,
    };
    if observations.len() != needed {
        return Err(CliError::validation(
            "--obs",
            format!(
                "target needs exactly {needed} observation(s), got {}",
                observations.len()
            ),
        ));
    }
    for o in &observations {
        RegimePoint::new(o.m, o.d)
            .validate(&known)
            .map_err(|e| CliError::validation("--obs", e.to_string()))?;
    }

    let (target, values, fitted) = match a.target {
        CalibrationTarget::A0 => {
            let a0 = solve_a0(known.s, known.delta, known.phi, known.chi, observations[0])
                .map_err(computation)?;
            ("a0", vec![("a0", a0)], GrowthParams { a0, ..known })
        }
        CalibrationTarget::Innovation => {
            let fit = fit_innovation(
                known.s,
                known.delta,
                known.a0,
                observations[0],
                observations[1],
            )
            .map_err(computation)?;
            (
                "innovation",
                vec![("phi", fit.phi), ("chi", fit.chi)],
                GrowthParams {
                    phi: fit.phi,
                    chi: fit.chi,
                    ..known
                },
            )
        }
    };
    // Evaluated directly: a fit may return coefficients outside the validated domain.
    let residuals = observations
        .iter()
        .map(|o| {
            let model = (fitted.s
                * (1.0 - o.m)
                * fitted.a0
                * (1.0 + fitted.phi * o.m - fitted.chi * o.m * o.m)
                - fitted.delta)
                - o.d;
            model - o.g
        })
        .collect();
    Ok(Output {
        primary: CalibrationReport {
            target,
            values,
            observations,
            residuals,
        }
        .render(format),
        files: vec![],
    })
}
