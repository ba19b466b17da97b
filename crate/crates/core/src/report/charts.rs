use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::evolution::MetricsMatrix;
use crate::metrics::Metric;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 90.0;
const Y_TICKS: u64 = 4;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Smallest "nice" bound (1, 2 or 5 times a power of ten, times the tick count) at or above `max`.
fn axis_max(max: u64) -> u64 {
    if max == 0 {
        return Y_TICKS;
    }
    let mut step = 1u64;
    loop {
        for m in [1, 2, 5] {
            let s = step * m;
            if s * Y_TICKS >= max {
                return s * Y_TICKS;
            }
        }
        step *= 10;
    }
}

/// Line chart of one metric over the releases of `matrix`.
pub fn render_chart(matrix: &MetricsMatrix, metric: Metric) -> String {
    let names = matrix.release_names();
    let values = matrix.column(metric);
    let top = axis_max(values.iter().copied().max().unwrap_or(0));
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let step = if names.len() > 1 {
        plot_w / (names.len() - 1) as f64
    } else {
        0.0
    };
    let x = |i: usize| LEFT + step * i as f64;
    let y = |v: u64| TOP + plot_h - plot_h * v as f64 / top as f64;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="28" text-anchor="middle" font-size="16">{} ({})</text>"#,
        WIDTH / 2.0,
        escape(metric.description()),
        metric.abbrev()
    );
    for k in 0..=Y_TICKS {
        let v = top / Y_TICKS * k;
        let yy = y(v);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT:.1}" y1="{yy:.1}" x2="{:.1}" y2="{yy:.1}" stroke="#dddddd"/>"##,
            WIDTH - RIGHT
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v}</text>"#,
            LEFT - 8.0,
            yy + 4.0
        );
    }
    let base = TOP + plot_h;
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.1}" y1="{TOP:.1}" x2="{LEFT:.1}" y2="{base:.1}" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT:.1}" y1="{base:.1}" x2="{:.1}" y2="{base:.1}" stroke="black"/>"#,
        WIDTH - RIGHT
    );
    let points: Vec<String> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| format!("{:.1},{:.1}", x(i), y(v)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline fill="none" stroke="#1f77b4" stroke-width="2" points="{}"/>"##,
        points.join(" ")
    );
    for (i, (&v, name)) in values.iter().zip(&names).enumerate() {
        let (px, py) = (x(i), y(v));
        let _ = writeln!(
            s,
            r##"<circle cx="{px:.1}" cy="{py:.1}" r="3.5" fill="#1f77b4"><title>{}: {v}</title></circle>"##,
            escape(name)
        );
        let _ = writeln!(
            s,
            r#"<text x="{px:.1}" y="{:.1}" text-anchor="middle" font-size="10">{v}</text>"#,
            py - 8.0
        );
        let ly = base + 16.0;
        let _ = writeln!(
            s,
            r#"<text x="{px:.1}" y="{ly:.1}" text-anchor="end" transform="rotate(-35 {px:.1} {ly:.1})">{}</text>"#,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Writes one SVG per metric into `out_dir`, named after the metric.
pub fn emit_charts(matrix: &MetricsMatrix, out_dir: &Path) -> Result<Vec<PathBuf>> {
    if matrix.len() < 2 {
        return Err(Error::InsufficientReleases {
            needed: 2,
            got: matrix.len(),
        });
    }
    std::fs::create_dir_all(out_dir).map_err(|source| Error::Write {
        path: out_dir.to_path_buf(),
        source,
    })?;
    Metric::ALL
        .iter()
        .map(|&m| {
            let path = out_dir.join(format!("{}.svg", m.abbrev()));
            std::fs::write(&path, render_chart(matrix, m)).map_err(|source| Error::Write {
                path: path.clone(),
                source,
            })?;
            Ok(path)
        })
        .collect()
}
