//! Deterministic SVG line charts of growth against the military burden.
//!
//! Output depends only on the input data: coordinates are written with a
//! fixed number of decimals and elements are emitted in input order.

use std::fmt::Write;

use thiserror::Error;

pub const X_LABEL: &str = "Military burden";
pub const Y_LABEL: &str = "Long-run growth rate";

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 60.0;

pub const PALETTE: [&str; 6] = [
    "#1f3f99", // blue
    "#a52a2a", // red
    "#2e7d32", // green
    "#6a1b9a", // purple
    "#ef6c00", // orange
    "#37474f", // slate
];

#[derive(Debug, Error, PartialEq)]
pub enum PlotError {
    #[error("nothing to plot: {0}")]
    Empty(String),
    #[error("non-finite value in series {0}")]
    NonFinite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
    DashDotted,
}

impl LineStyle {
    fn dasharray(self) -> Option<&'static str> {
        match self {
            LineStyle::Solid => None,
            LineStyle::Dashed => Some("9,5"),
            LineStyle::Dotted => Some("2,4"),
            LineStyle::DashDotted => Some("9,4,2,4"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: String,
    pub style: LineStyle,
}

/// Vertical line at a burden value.
#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub m: f64,
    pub color: String,
    pub style: LineStyle,
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
        if hi > lo {
            Range { lo, hi }
        } else {
            // Flat data: open a window around the single value.
            let pad = (lo.abs() * 0.1).max(1e-3);
            Range {
                lo: lo - pad,
                hi: hi + pad,
            }
        }
    }

    fn padded(self, frac: f64) -> Self {
        let pad = (self.hi - self.lo) * frac;
        Range {
            lo: self.lo - pad,
            hi: self.hi + pad,
        }
    }

    fn scale(&self, v: f64, px_lo: f64, px_hi: f64) -> f64 {
        px_lo + (v - self.lo) / (self.hi - self.lo) * (px_hi - px_lo)
    }

    /// Tick positions at a 1-2-5 step inside the range, and the decimals
    /// needed to print them.
    fn ticks(&self) -> (Vec<f64>, usize) {
        let raw = (self.hi - self.lo) / 6.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|k| k * mag)
            .find(|s| *s >= raw)
            .unwrap_or(10.0 * mag);
        let decimals = (-step.log10().floor()).max(0.0) as usize;
        let first = (self.lo / step).ceil() as i64;
        let last = (self.hi / step).floor() as i64;
        let ticks = (first..=last).map(|i| i as f64 * step + 0.0).collect();
        (ticks, decimals)
    }
}

fn style_attr(style: LineStyle) -> String {
    style
        .dasharray()
        .map(|d| format!(" stroke-dasharray=\"{d}\""))
        .unwrap_or_default()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders `series` with optional vertical `markers` as an SVG document.
pub fn emit_plot(series: &[Series], markers: &[Marker]) -> Result<String, PlotError> {
    if series.is_empty() {
        return Err(PlotError::Empty("no series".into()));
    }
    for s in series {
        if s.points.is_empty() {
            return Err(PlotError::Empty(format!(
                "series {} has no points",
                s.label
            )));
        }
        if s.points
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
        {
            return Err(PlotError::NonFinite(s.label.clone()));
        }
    }

    let all = || series.iter().flat_map(|s| s.points.iter());
    let xr = Range::of(all().map(|p| p.0).chain(markers.iter().map(|m| m.m)));
    let yr = Range::of(all().map(|p| p.1)).padded(0.08);
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let px = |x: f64| xr.scale(x, x0, x1);
    let py = |y: f64| yr.scale(y, y0, y1);

    let mut svg = String::new();
    let w = &mut svg;
    writeln!(
        w,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    )
    .unwrap();
    writeln!(
        w,
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    )
    .unwrap();

    // Grid and tick labels.
    let (xticks, xdec) = xr.ticks();
    for t in &xticks {
        let x = px(*t);
        writeln!(
            w,
            "<line x1=\"{x:.2}\" y1=\"{y0:.2}\" x2=\"{x:.2}\" y2=\"{y1:.2}\" stroke=\"#dddddd\" stroke-dasharray=\"1,3\"/>"
        )
        .unwrap();
        writeln!(
            w,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{t:.xdec$}</text>",
            y0 + 18.0
        )
        .unwrap();
    }
    let (yticks, ydec) = yr.ticks();
    for t in &yticks {
        let y = py(*t);
        writeln!(
            w,
            "<line x1=\"{x0:.2}\" y1=\"{y:.2}\" x2=\"{x1:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\" stroke-dasharray=\"1,3\"/>"
        )
        .unwrap();
        writeln!(
            w,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{t:.ydec$}</text>",
            x0 - 6.0,
            y + 4.0
        )
        .unwrap();
    }
    if yr.lo < 0.0 && yr.hi > 0.0 {
        let y = py(0.0);
        writeln!(
            w,
            "<line x1=\"{x0:.2}\" y1=\"{y:.2}\" x2=\"{x1:.2}\" y2=\"{y:.2}\" stroke=\"#888888\"/>"
        )
        .unwrap();
    }
    writeln!(
        w,
        "<rect x=\"{x0:.2}\" y=\"{y1:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>",
        x1 - x0,
        y0 - y1
    )
    .unwrap();

    for m in markers {
        let x = px(m.m);
        writeln!(
            w,
            "<line x1=\"{x:.2}\" y1=\"{y0:.2}\" x2=\"{x:.2}\" y2=\"{y1:.2}\" stroke=\"{}\" stroke-width=\"2\"{}/>",
            m.color,
            style_attr(m.style)
        )
        .unwrap();
    }

    for s in series {
        let mut d = String::new();
        for (i, (x, y)) in s.points.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{:.2},{:.2} ", px(*x), py(*y)).unwrap();
        }
        if s.points.len() == 1 {
            // A lone point still draws as a short flat segment.
            write!(
                d,
                "L{:.2},{:.2}",
                px(s.points[0].0) + 1.0,
                py(s.points[0].1)
            )
            .unwrap();
        }
        writeln!(
            w,
            "<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2.5\"{}/>",
            d.trim_end(),
            s.color,
            style_attr(s.style)
        )
        .unwrap();
    }

    // Legend, bottom right inside the axes.
    let lx = x1 - 170.0;
    let mut ly = y0 - 14.0 - 18.0 * (series.len() as f64 - 1.0);
    for s in series {
        writeln!(
            w,
            "<line x1=\"{lx:.2}\" y1=\"{ly:.2}\" x2=\"{:.2}\" y2=\"{ly:.2}\" stroke=\"{}\" stroke-width=\"2.5\"{}/>",
            lx + 30.0,
            s.color,
            style_attr(s.style)
        )
        .unwrap();
        writeln!(
            w,
            "<text x=\"{:.2}\" y=\"{:.2}\">{}</text>",
            lx + 38.0,
            ly + 4.0,
            escape(&s.label)
        )
        .unwrap();
        ly += 18.0;
    }

    writeln!(
        w,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{X_LABEL}</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 16.0
    )
    .unwrap();
    writeln!(
        w,
        "<text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{Y_LABEL}</text>",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    )
    .unwrap();
    svg.push_str("</svg>\n");
    Ok(svg)
}
