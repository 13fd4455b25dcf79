//! Minimal static SVG charts of `cs` from a result table.

use std::fmt::Write;

use crate::config::{ChartKind, MethodName};
use crate::error::{CliError, Result};
use crate::table::{format_sig9, Row};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
];

fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

// Closed-form rows if present, otherwise those of the first method in the table.
fn pick_rows(rows: &[Row]) -> Result<Vec<Row>> {
    let method = if rows.iter().any(|r| r.method == MethodName::Cf) {
        MethodName::Cf
    } else {
        rows.first()
            .ok_or_else(|| CliError::Table("nothing to plot".into()))?
            .method
    };
    Ok(rows
        .iter()
        .copied()
        .filter(|r| r.method == method)
        .collect())
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|f| f * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag)
}

struct Frame {
    y_lo: f64,
    y_hi: f64,
    step: f64,
}

impl Frame {
    fn new(values: impl Iterator<Item = f64>) -> Self {
        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        for v in values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if hi - lo < 1e-12 {
            hi = lo + 1.0;
        }
        let step = nice_step(hi - lo);
        Frame {
            y_lo: (lo / step).floor() * step,
            y_hi: (hi / step).ceil() * step,
            step,
        }
    }

    fn y(&self, v: f64) -> f64 {
        let h = HEIGHT - TOP - BOTTOM;
        TOP + h * (self.y_hi - v) / (self.y_hi - self.y_lo)
    }

    fn axes(&self, svg: &mut String, title: &str, x_label: &str) {
        let x1 = WIDTH - RIGHT;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
            0.5 * (LEFT + x1),
            escape(title)
        );
        let ticks = ((self.y_hi - self.y_lo) / self.step).round() as i64;
        for i in 0..=ticks {
            let v = self.y_lo + i as f64 * self.step;
            let y = self.y(v);
            let _ = writeln!(
                svg,
                r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="#dddddd"/>"##
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="11">{}</text>"#,
                LEFT - 6.0,
                y + 4.0,
                format_sig9((v * 1e9).round() / 1e9)
            );
        }
        let (y_top, y_bot) = (self.y(self.y_hi), self.y(self.y_lo));
        let _ = writeln!(
            svg,
            r#"<line x1="{LEFT:.2}" y1="{y_top:.2}" x2="{LEFT:.2}" y2="{y_bot:.2}" stroke="black"/>"#
        );
        let y0 = self.y(0.0);
        let _ = writeln!(
            svg,
            r#"<line x1="{LEFT:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
            0.5 * (LEFT + x1),
            HEIGHT - 14.0,
            escape(x_label)
        );
        let _ = writeln!(
            svg,
            r#"<text x="18" y="{:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 18 {:.2})">Secrecy capacity (bits/s/Hz)</text>"#,
            0.5 * (TOP + HEIGHT - BOTTOM),
            0.5 * (TOP + HEIGHT - BOTTOM)
        );
    }
}

fn legend(svg: &mut String, labels: &[String]) {
    let x = WIDTH - RIGHT + 16.0;
    for (i, label) in labels.iter().enumerate() {
        let y = TOP + 10.0 + 20.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{:.2}" width="12" height="12" fill="{}"/>"#,
            y - 10.0,
            color(i)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{y:.2}" font-size="12">{}</text>"#,
            x + 18.0,
            escape(label)
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn open(title: &str) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    svg
}

/// Grouped bars: one group per `N`, one bar per `(beta_B^2, beta_E^2)`.
pub fn bar_chart(rows: &[Row], title: &str) -> Result<String> {
    let rows = pick_rows(rows)?;
    let mut groups = Vec::new();
    let mut series = Vec::new();
    for r in &rows {
        push_unique(&mut groups, r.n);
        push_unique(&mut series, (r.beta_b_db.to_bits(), r.beta_e_db.to_bits()));
    }
    let single_b = rows.iter().all(|r| r.beta_b_db == rows[0].beta_b_db);
    let labels: Vec<String> = series
        .iter()
        .map(|&(b, e)| {
            let (b, e) = (f64::from_bits(b), f64::from_bits(e));
            if single_b {
                format!("beta_E^2 = {} dB", format_sig9(e))
            } else {
                format!(
                    "beta_B^2 = {} dB, beta_E^2 = {} dB",
                    format_sig9(b),
                    format_sig9(e)
                )
            }
        })
        .collect();

    let frame = Frame::new(rows.iter().map(|r| r.cs));
    let mut svg = open(title);
    frame.axes(&mut svg, title, "Number of RIS elements N");
    let plot_w = WIDTH - RIGHT - LEFT;
    let group_w = plot_w / groups.len() as f64;
    let bar_w = 0.8 * group_w / series.len() as f64;
    for (gi, n) in groups.iter().enumerate() {
        let gx = LEFT + gi as f64 * group_w + 0.1 * group_w;
        for r in rows.iter().filter(|r| r.n == *n) {
            let si = series
                .iter()
                .position(|s| *s == (r.beta_b_db.to_bits(), r.beta_e_db.to_bits()))
                .expect("series was collected from these rows");
            let (y0, y1) = (frame.y(0.0), frame.y(r.cs));
            let _ = writeln!(
                svg,
                r#"<rect x="{:.2}" y="{:.2}" width="{bar_w:.2}" height="{:.2}" fill="{}"><title>{}</title></rect>"#,
                gx + si as f64 * bar_w,
                y0.min(y1),
                (y0 - y1).abs(),
                color(si),
                format_sig9(r.cs)
            );
        }
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11">{n}</text>"#,
            LEFT + (gi as f64 + 0.5) * group_w,
            HEIGHT - BOTTOM + 16.0
        );
    }
    legend(&mut svg, &labels);
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// One line per `(N, beta_E^2)` over `beta_B^2`.
pub fn line_chart(rows: &[Row], title: &str) -> Result<String> {
    let rows = pick_rows(rows)?;
    let mut series = Vec::new();
    for r in &rows {
        push_unique(&mut series, (r.n, r.beta_e_db.to_bits()));
    }
    let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for r in &rows {
        x_lo = x_lo.min(r.beta_b_db);
        x_hi = x_hi.max(r.beta_b_db);
    }
    if x_hi - x_lo < 1e-12 {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    let plot_w = WIDTH - RIGHT - LEFT;
    let x = |v: f64| LEFT + plot_w * (v - x_lo) / (x_hi - x_lo);

    let frame = Frame::new(rows.iter().map(|r| r.cs));
    let mut svg = open(title);
    frame.axes(&mut svg, title, "beta_B^2 (dB)");
    let x_step = nice_step(x_hi - x_lo);
    let mut t = (x_lo / x_step).ceil() * x_step;
    while t <= x_hi + 1e-9 {
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="11">{}</text>"#,
            x(t),
            HEIGHT - BOTTOM + 16.0,
            format_sig9((t * 1e9).round() / 1e9)
        );
        t += x_step;
    }
    let mut labels = Vec::new();
    for (si, &(n, e)) in series.iter().enumerate() {
        let mut pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.n == n && r.beta_e_db.to_bits() == e)
            .map(|r| (r.beta_b_db, r.cs))
            .collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let path: Vec<String> = pts
            .iter()
            .map(|&(b, cs)| format!("{:.2},{:.2}", x(b), frame.y(cs)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>"#,
            color(si),
            path.join(" ")
        );
        for &(b, cs) in &pts {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{}"/>"#,
                x(b),
                frame.y(cs),
                color(si)
            );
        }
        labels.push(format!(
            "N = {n}, beta_E^2 = {} dB",
            format_sig9(f64::from_bits(e))
        ));
    }
    legend(&mut svg, &labels);
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn render(rows: &[Row], kind: ChartKind, title: &str) -> Result<String> {
    match kind {
        ChartKind::Bar => bar_chart(rows, title),
        ChartKind::Line => line_chart(rows, title),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: u32, b: f64, e: f64, cs: f64) -> Row {
        Row {
            n,
            beta_b_db: b,
            beta_e_db: e,
            method: MethodName::Cf,
            cb: cs + 1.0,
            ce: 1.0,
            cs,
            ci_halfwidth: None,
        }
    }

    #[test]
    fn bar_chart_has_one_rect_per_row() {
        let rows = vec![
            row(4, 0.0, -5.0, 3.3),
            row(4, 0.0, 0.0, 2.8),
            row(6, 0.0, -5.0, 4.4),
        ];
        let svg = bar_chart(&rows, "cs vs N").unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<rect x=").count(), 3 + 2);
        assert!(svg.contains("beta_E^2 = -5 dB"));
    }

    #[test]
    fn line_chart_has_one_polyline_per_series() {
        let rows = vec![
            row(16, -1.0, 0.0, 5.0),
            row(16, 0.0, 0.0, 5.5),
            row(32, -1.0, 0.0, 6.0),
            row(32, 0.0, 0.0, 6.5),
        ];
        let svg = line_chart(&rows, "cs vs beta").unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg, line_chart(&rows, "cs vs beta").unwrap());
    }

    #[test]
    fn prefers_closed_form_rows() {
        let mut mc = row(4, 0.0, 0.0, 9.0);
        mc.method = MethodName::Mc;
        let rows = vec![mc, row(4, 0.0, 0.0, 1.0)];
        let svg = bar_chart(&rows, "t").unwrap();
        assert!(svg.contains("<title>1</title>"));
        assert!(!svg.contains("<title>9</title>"));
        assert!(bar_chart(&[], "t").is_err());
    }

    #[test]
    fn nice_steps() {
        assert_eq!(nice_step(10.0), 2.0);
        assert_eq!(nice_step(3.0), 1.0);
        assert_eq!(nice_step(0.4), 0.1);
    }
}
