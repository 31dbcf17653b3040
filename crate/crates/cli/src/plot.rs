//! Single-panel SVG 1.1 line charts from CSV columns.

use std::collections::BTreeMap;
use std::f64::consts::LN_10;
use std::fmt::Write;

/// Column that splits a scan into one series per radial position.
const SERIES_COLUMN: &str = "radius_fraction";

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    /// Parses a headed CSV of numbers; `inf`, `-inf` and `NaN` are accepted.
    pub fn parse(text: &str) -> Result<Table, String> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let columns: Vec<String> = rdr
            .headers()
            .map_err(|e| format!("csv: {e}"))?
            .iter()
            .map(str::to_string)
            .collect();
        if columns.is_empty() || columns.iter().all(String::is_empty) {
            return Err("empty CSV: no header".into());
        }
        let mut rows = Vec::new();
        for (i, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| format!("csv: {e}"))?;
            let row = rec
                .iter()
                .map(|f| f.trim().parse::<f64>().map_err(|_| format!("row {}: {f:?} is not a number", i + 1)))
                .collect::<Result<Vec<f64>, String>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err("empty CSV: no data rows".into());
        }
        Ok(Table { columns, rows })
    }

    fn index(&self, name: &str) -> Result<usize, String> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| format!("missing column {name:?}; available: {}", self.columns.join(", ")))
    }
}

pub struct ChartSpec {
    pub x: String,
    pub y: String,
    pub logscale: bool,
}

impl ChartSpec {
    /// Values of a `log_` column are natural logs already; others are
    /// magnitudes.
    fn y_value(&self, v: f64) -> f64 {
        match (self.logscale, self.y.starts_with("log_")) {
            (false, _) => v,
            (true, true) => v / LN_10,
            (true, false) => v.abs().log10(),
        }
    }

    fn y_label(&self) -> String {
        match (self.logscale, self.y.strip_prefix("log_")) {
            (false, _) => self.y.clone(),
            (true, Some(base)) => format!("log10 {base} (log scale, from {})", self.y),
            (true, None) => format!("log10 |{}| (log scale)", self.y),
        }
    }
}

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

fn series(table: &Table, spec: &ChartSpec) -> Result<Vec<Series>, String> {
    let xi = table.index(&spec.x)?;
    let yi = table.index(&spec.y)?;
    let split = table
        .columns
        .iter()
        .position(|c| c == SERIES_COLUMN)
        .filter(|&i| i != xi && i != yi);
    // Keyed by the bit pattern of a non-negative fraction, which sorts numerically.
    let mut groups: BTreeMap<u64, Vec<(f64, f64)>> = BTreeMap::new();
    for row in &table.rows {
        let key = split.map_or(0, |i| row[i].to_bits());
        let (x, y) = (row[xi], spec.y_value(row[yi]));
        if x.is_finite() && y.is_finite() {
            groups.entry(key).or_default().push((x, y));
        }
    }
    Ok(groups
        .into_iter()
        .filter(|(_, p)| !p.is_empty())
        .map(|(key, mut points)| {
            points.sort_by(|a, b| a.0.total_cmp(&b.0));
            let label = match split {
                Some(_) => format!("{SERIES_COLUMN} = {}", f64::from_bits(key)),
                None => spec.y.clone(),
            };
            Series { label, points }
        })
        .collect())
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-2 {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render(table: &Table, spec: &ChartSpec) -> Result<String, String> {
    let series = series(table, spec)?;
    if series.is_empty() {
        return Err(format!("no finite ({}, {}) pairs to plot", spec.x, spec.y));
    }
    let all = || series.iter().flat_map(|s| s.points.iter());
    let (x0, x1) = extent(all().map(|p| p.0));
    let (y0, y1) = extent(all().map(|p| p.1));
    let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| MARGIN_TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let (bx, by) = (MARGIN_LEFT, MARGIN_TOP + ph);
    let _ = writeln!(
        s,
        r#"<g stroke="black" stroke-width="1"><line x1="{bx}" y1="{by}" x2="{}" y2="{by}"/><line x1="{bx}" y1="{by}" x2="{bx}" y2="{MARGIN_TOP}"/></g>"#,
        bx + pw
    );
    let _ = writeln!(s, r#"<g font-family="sans-serif" font-size="11" fill="black">"#);
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(s, r#"<line x1="{px:.2}" y1="{by}" x2="{px:.2}" y2="{}" stroke="black"/>"#, by + 5.0);
        let _ = writeln!(s, r#"<text x="{px:.2}" y="{}" text-anchor="middle">{}</text>"#, by + 18.0, tick_label(xv));
        let _ = writeln!(s, r#"<line x1="{}" y1="{py:.2}" x2="{bx}" y2="{py:.2}" stroke="black"/>"#, bx - 5.0);
        let _ = writeln!(s, r#"<text x="{}" y="{:.2}" text-anchor="end">{}</text>"#, bx - 8.0, py + 4.0, tick_label(yv));
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{}" text-anchor="middle" font-size="13">{}</text>"#,
        MARGIN_LEFT + pw / 2.0,
        HEIGHT - 15.0,
        escape(&spec.x)
    );
    let (lx, ly) = (20.0, MARGIN_TOP + ph / 2.0);
    let _ = writeln!(
        s,
        r#"<text x="{lx}" y="{ly:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 {lx} {ly:.2})">{}</text>"#,
        escape(&spec.y_label())
    );
    let _ = writeln!(s, "</g>");
    for (i, ser) in series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let ky = MARGIN_TOP + 10.0 + 18.0 * i as f64;
        let kx = MARGIN_LEFT + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{kx}" y1="{ky}" x2="{}" y2="{ky}" stroke="{colour}" stroke-width="2"/><text x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            kx + 16.0,
            kx + 20.0,
            ky + 4.0,
            escape(&ser.label)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
