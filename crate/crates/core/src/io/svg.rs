//! Deterministic line plots as standalone SVG.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::IoError;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 100.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlotKind {
    RadiusVsTime,
    OrbitXy,
    FieldStream,
    RadialDensity,
}

impl PlotKind {
    fn axis_labels(&self) -> (&'static str, &'static str) {
        match self {
            PlotKind::RadiusVsTime => ("t (s)", "r (m)"),
            PlotKind::OrbitXy => ("x (m)", "y (m)"),
            PlotKind::FieldStream => ("x", "y"),
            PlotKind::RadialDensity => ("r (m)", "r^2 R^2"),
        }
    }

    fn title(&self) -> &'static str {
        match self {
            PlotKind::RadiusVsTime => "Radius versus time",
            PlotKind::OrbitXy => "Orbit in the plane",
            PlotKind::FieldStream => "Velocity field streamlines",
            PlotKind::RadialDensity => "Radial probability density",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

impl Scale {
    fn apply(&self, v: f64) -> Result<f64, IoError> {
        match self {
            Scale::Linear => Ok(v),
            Scale::Log if v > 0.0 => Ok(v.log10()),
            Scale::Log => Err(IoError::Invalid(format!("non-positive value {v:e} on a log axis"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSpec {
    pub kind: PlotKind,
    pub series: Vec<Series>,
    /// Drawn as small circles, e.g. streamline seeds.
    pub markers: Vec<(f64, f64)>,
    pub x_scale: Scale,
    pub y_scale: Scale,
}

impl PlotSpec {
    pub fn new(kind: PlotKind, series: Vec<Series>) -> Self {
        Self {
            kind,
            series,
            markers: Vec::new(),
            x_scale: Scale::Linear,
            y_scale: Scale::Linear,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Axis {
    lo: f64,
    hi: f64,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(lo.abs()) {
            let pad = if lo == 0.0 { 1.0 } else { 0.05 * lo.abs() };
            lo -= pad;
            hi += pad;
        }
        Self { lo, hi }
    }

    fn frac(&self, v: f64) -> f64 {
        (v - self.lo) / (self.hi - self.lo)
    }
}

fn tick_label(v: f64, scale: Scale) -> String {
    let v = match scale {
        Scale::Linear => v,
        Scale::Log => 10f64.powf(v),
    };
    format!("{v:.3e}")
}

/// Renders `spec` to SVG text. Identical specs give identical bytes.
pub fn render_svg(spec: &PlotSpec) -> Result<String, IoError> {
    if spec.series.is_empty() || spec.series.iter().any(|s| s.points.is_empty()) {
        return Err(IoError::Invalid("plot needs at least one non-empty series".into()));
    }
    let transformed: Vec<Vec<(f64, f64)>> = spec
        .series
        .iter()
        .map(|s| {
            s.points
                .iter()
                .map(|&(x, y)| Ok((spec.x_scale.apply(x)?, spec.y_scale.apply(y)?)))
                .collect::<Result<Vec<_>, IoError>>()
        })
        .collect::<Result<_, _>>()?;
    let markers: Vec<(f64, f64)> = spec
        .markers
        .iter()
        .map(|&(x, y)| Ok((spec.x_scale.apply(x)?, spec.y_scale.apply(y)?)))
        .collect::<Result<_, IoError>>()?;
    if transformed.iter().flatten().chain(&markers).any(|p| !p.0.is_finite() || !p.1.is_finite()) {
        return Err(IoError::Invalid("plot data contains non-finite values".into()));
    }
    let all = || transformed.iter().flatten().chain(markers.iter());
    let xa = Axis::fit(all().map(|p| p.0));
    let ya = Axis::fit(all().map(|p| p.1));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + xa.frac(x) * pw;
    let py = |y: f64| TOP + (1.0 - ya.frac(y)) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        LEFT + pw / 2.0,
        spec.kind.title()
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let x = LEFT + f * pw;
        let y = TOP + (1.0 - f) * ph;
        let xv = xa.lo + f * (xa.hi - xa.lo);
        let yv = ya.lo + f * (ya.hi - ya.lo);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}" stroke="black"/><text x="{x:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0,
            tick_label(xv, spec.x_scale)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.3}" y1="{y:.3}" x2="{LEFT}" y2="{y:.3}" stroke="black"/><text x="{:.3}" y="{:.3}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0,
            tick_label(yv, spec.y_scale)
        );
    }
    let (xl, yl) = spec.kind.axis_labels();
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{xl}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.1}" text-anchor="middle" transform="rotate(-90 20 {:.1})">{yl}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );
    for (i, pts) in transformed.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.3},{:.3}", px(x), py(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        );
    }
    for &(x, y) in &markers {
        let _ = writeln!(s, r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="black"/>"#, px(x), py(y));
    }
    for (i, series) in spec.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let y = TOP + 10.0 + 18.0 * i as f64;
        let x = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
            x + 20.0,
            x + 26.0,
            y + 4.0,
            escape(&series.label)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg(spec: &PlotSpec, path: &Path) -> Result<(), IoError> {
    let text = render_svg(spec)?;
    std::fs::write(path, text)?;
    Ok(())
}

/// The `points` attribute of every polyline, in document order.
pub fn polyline_points(svg: &str) -> Vec<String> {
    svg.lines()
        .filter(|l| l.starts_with("<polyline"))
        .filter_map(|l| l.split("points=\"").nth(1))
        .map(|rest| rest.trim_end_matches("\"/>").to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> PlotSpec {
        PlotSpec::new(
            PlotKind::RadiusVsTime,
            ["1.2e11", "1.3e11", "1.496e11"]
                .iter()
                .enumerate()
                .map(|(i, l)| Series {
                    label: format!("Z_h = {l}"),
                    points: (0..50).map(|k| (k as f64, (i + 1) as f64 * (k as f64).sqrt())).collect(),
                })
                .collect(),
        )
    }

    #[test]
    fn one_polyline_per_series_with_legend() {
        let svg = render_svg(&spec()).unwrap();
        assert_eq!(polyline_points(&svg).len(), 3);
        for l in ["Z_h = 1.2e11", "Z_h = 1.3e11", "Z_h = 1.496e11"] {
            assert!(svg.contains(&format!(">{l}</text>")));
        }
    }

    #[test]
    fn deterministic() {
        assert_eq!(render_svg(&spec()).unwrap(), render_svg(&spec()).unwrap());
        let dir = tempfile::tempdir().unwrap();
        let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
        emit_svg(&spec(), &a).unwrap();
        emit_svg(&spec(), &b).unwrap();
        assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    }

    #[test]
    fn rejects_empty_and_bad_data() {
        assert!(render_svg(&PlotSpec::new(PlotKind::OrbitXy, vec![])).is_err());
        let empty = Series { label: "e".into(), points: vec![] };
        assert!(render_svg(&PlotSpec::new(PlotKind::OrbitXy, vec![empty])).is_err());
        let mut log = spec();
        log.y_scale = Scale::Log;
        assert!(render_svg(&log).is_err());
        let nan = Series { label: "n".into(), points: vec![(0.0, f64::NAN)] };
        assert!(render_svg(&PlotSpec::new(PlotKind::OrbitXy, vec![nan])).is_err());
    }

    #[test]
    fn unwritable_path() {
        assert!(matches!(emit_svg(&spec(), Path::new("/nonexistent/dir/x.svg")), Err(IoError::Io(_))));
    }

    #[test]
    fn escapes_labels() {
        let mut s = spec();
        s.series[0].label = "a<b & c".into();
        assert!(render_svg(&s).unwrap().contains("a&lt;b &amp; c"));
    }
}
