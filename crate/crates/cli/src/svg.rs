//! Minimal static SVG emitter: unit circle, vertices, orbit circles and
//! intersection points. Resolution-independent and diff-friendly.

use simuorb_core::geometry::vertex_point;
use simuorb_core::orbits::{materialize_points, Arrangement};

use crate::report::RegionFilter;

pub struct PlotConfig {
    pub filter: RegionFilter,
    /// Orbits whose radius falls within 1e-6 of this value get the
    /// `highlight` class and their points are drawn larger.
    pub highlight_radius: Option<f64>,
}

fn fmt(v: f64) -> String {
    // Fixed precision keeps the output byte-stable across runs.
    format!("{v:.6}")
}

pub fn render(arr: &Arrangement, config: &PlotConfig) -> String {
    let n = arr.n;
    let max_radius = arr
        .orbits
        .iter()
        .filter(|o| config.filter.keeps(o.region))
        .map(|o| o.sqrt_radius)
        .fold(1.0f64, f64::max);
    let extent = max_radius * 1.05 + 0.05;
    let stroke = extent / 600.0;
    let dot = extent / 150.0;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        fmt(-extent),
        fmt(-extent),
        fmt(2.0 * extent),
        fmt(2.0 * extent)
    ));
    out.push_str(&format!(
        "<style>

.orbit {{ fill: none; stroke: #9db2c9; stroke-width: {sw}; }}
.orbit.highlight {{ stroke: #d62728; stroke-width: {hw}; }}
.unit {{ stroke: #1f2430; }}
.vertex {{ fill: #1f2430; }}
.point {{ fill: #3b6ea5; }}
.point.highlight {{ fill: #d62728; }}
</style>\n",
        sw = fmt(stroke),
        hw = fmt(2.0 * stroke),
    ));

    let highlighted = |radius: f64| {
        config
            .highlight_radius
            .map(|h| (radius - h).abs() <= 1e-6 * h.max(1.0))
            .unwrap_or(false)
    };

    // The unit circle is the orbit of the vertices themselves.
    out.push_str(&format!(
        "<circle class=\"orbit unit\" cx=\"0\" cy=\"0\" r=\"1\" stroke-width=\"{}\"/>\n",
        fmt(stroke)
    ));
    for orbit in &arr.orbits {
        if !config.filter.keeps(orbit.region) {
            continue;
        }
        let class = if highlighted(orbit.sqrt_radius) {
            "orbit highlight"
        } else {
            "orbit"
        };
        out.push_str(&format!(
            "<circle class=\"{class}\" cx=\"0\" cy=\"0\" r=\"{}\"/>\n",
            fmt(orbit.sqrt_radius)
        ));
    }
    for m in 0..n {
        let v = vertex_point(m, n);
        out.push_str(&format!(
            "<circle class=\"vertex\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
            fmt(v.x),
            fmt(v.y),
            fmt(dot)
        ));
    }
    for orbit in &arr.orbits {
        if !config.filter.keeps(orbit.region) {
            continue;
        }
        let (class, r) = if highlighted(orbit.sqrt_radius) {
            ("point highlight", 1.4 * dot)
        } else {
            ("point", 0.8 * dot)
        };
        let points =
            materialize_points(orbit, n).expect("orbit anchors reconstruct their points");
        for p in points {
            out.push_str(&format!(
                "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                fmt(p.x),
                fmt(p.y),
                fmt(r)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
