//! Static SVG chart of mean cumulative excess ratio against `t`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 460.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_Y: f64 = 40.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];

/// Mean curve of one algorithm over all runs.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub algorithm: String,
    pub points: Vec<(usize, f64)>,
}

fn malformed(path: &Path, row: usize, message: impl std::fmt::Display) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        message: format!("row {row}: {message}"),
    }
}

/// Averages `cumulative_excess` over runs for each algorithm and `t`.
/// Rows are numbered from 1 for the header.
pub fn read_curves(csv_path: &Path) -> Result<Vec<Curve>> {
    let mut reader = csv::ReaderBuilder::new()
        .from_path(csv_path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => Error::io(csv_path, source),
            other => malformed(csv_path, 1, format!("{other:?}")),
        })?;
    let headers = reader
        .headers()
        .map_err(|e| malformed(csv_path, 1, e))?
        .clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| malformed(csv_path, 1, format!("missing column '{name}'")))
    };
    let (c_alg, c_t, c_excess) = (column("algorithm")?, column("t")?, column("cumulative_excess")?);

    let mut order: Vec<String> = Vec::new();
    let mut sums: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| malformed(csv_path, row, e))?;
        let field = |c: usize| record.get(c).ok_or_else(|| malformed(csv_path, row, "missing field"));
        let alg = field(c_alg)?.to_string();
        let t: usize = field(c_t)?
            .parse()
            .map_err(|_| malformed(csv_path, row, "t is not a round index"))?;
        let excess: f64 = field(c_excess)?
            .parse()
            .map_err(|_| malformed(csv_path, row, "cumulative_excess is not a number"))?;
        if !excess.is_finite() || alg.is_empty() {
            return Err(malformed(csv_path, row, "empty algorithm or non-finite value"));
        }
        let a = match order.iter().position(|x| *x == alg) {
            Some(a) => a,
            None => {
                order.push(alg);
                order.len() - 1
            }
        };
        let slot = sums.entry((a, t)).or_insert((0.0, 0));
        slot.0 += excess;
        slot.1 += 1;
    }
    Ok(order
        .into_iter()
        .enumerate()
        .map(|(a, algorithm)| Curve {
            algorithm,
            points: sums
                .range((a, 0)..=(a, usize::MAX))
                .map(|(&(_, t), &(s, n))| (t, s / n as f64))
                .collect(),
        })
        .collect())
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|k| k * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag)
}

pub fn render_svg(curves: &[Curve]) -> Result<String> {
    if curves.is_empty() {
        return Err(Error::invalid("no algorithms to chart"));
    }
    let t_max = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.0))
        .max()
        .unwrap_or(1)
        .max(2) as f64;
    let values = curves.iter().flat_map(|c| c.points.iter().map(|p| p.1));
    let (mut lo, mut hi) = values.fold((0.0f64, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if hi - lo < 1e-9 {
        hi = lo + 1.0;
    }
    let step = nice_step(hi - lo);
    lo = (lo / step).floor() * step;
    hi = (hi / step).ceil() * step;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - 2.0 * MARGIN_Y;
    let x = |t: f64| MARGIN_LEFT + (t - 1.0) / (t_max - 1.0) * plot_w;
    let y = |v: f64| MARGIN_Y + (hi - v) / (hi - lo) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_Y}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let mut v = lo;
    while v <= hi + step * 1e-6 {
        let yy = y(v);
        let _ = writeln!(
            svg,
            r##"<line x1="{MARGIN_LEFT}" y1="{yy:.2}" x2="{:.2}" y2="{yy:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{:.3}</text>"##,
            MARGIN_LEFT + plot_w,
            MARGIN_LEFT - 6.0,
            yy + 4.0,
            v
        );
        v += step;
    }
    let t_step = nice_step(t_max - 1.0).max(1.0);
    let mut t = 0.0;
    while t <= t_max + 1e-9 {
        let xx = x(t.max(1.0));
        let _ = writeln!(
            svg,
            r#"<text x="{xx:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            MARGIN_Y + plot_h + 16.0,
            t.max(1.0)
        );
        t += t_step;
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">t</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 6.0
    );
    let _ = writeln!(
        svg,
        r#"<text transform="translate(16 {:.2}) rotate(-90)" text-anchor="middle">mean cumulative ratio - 1</text>"#,
        MARGIN_Y + plot_h / 2.0
    );
    for (i, c) in curves.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&(t, v)| format!("{:.2},{:.2}", x(t as f64), y(v)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let ly = MARGIN_Y + 10.0 + 20.0 * i as f64;
        let lx = MARGIN_LEFT + plot_w + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 24.0,
            lx + 30.0,
            ly + 4.0,
            escape(&c.algorithm)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Reads a records CSV and writes the chart. Nothing is written on error.
pub fn emit_chart(csv_path: &Path, out_path: &Path) -> Result<Vec<Curve>> {
    let curves = read_curves(csv_path)?;
    let svg = render_svg(&curves)?;
    std::fs::write(out_path, svg).map_err(|e| Error::io(out_path, e))?;
    Ok(curves)
}
