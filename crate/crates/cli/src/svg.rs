//! Minimal static SVG scatter plot.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;
const LEGEND_WIDTH: f64 = 260.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

pub struct Point {
    pub x: f64,
    pub y: f64,
    /// Index into the legend, if coloured.
    pub group: Option<usize>,
}

pub struct Plot {
    pub title: String,
    pub points: Vec<Point>,
    pub vertices: Vec<(f64, f64)>,
    /// Legend rows `(label, count)`, in the order groups are numbered.
    pub legend: Vec<(String, usize)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn color(group: Option<usize>) -> &'static str {
    match group {
        Some(g) => PALETTE[g % PALETTE.len()],
        None => "#1f77b4",
    }
}

impl Plot {
    pub fn render(&self) -> String {
        let all = self.points.iter().map(|p| (p.x, p.y)).chain(self.vertices.iter().copied());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in all {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        // pad degenerate ranges so every point lands inside the frame
        let pad = |lo: f64, hi: f64| if hi - lo > 0.0 { (lo, hi) } else { (lo - 0.5, hi + 0.5) };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

        let total_width = if self.legend.is_empty() { WIDTH } else { WIDTH + LEGEND_WIDTH };
        // a long legend extends the canvas downwards
        let total_height = HEIGHT.max(MARGIN + 16.0 * self.legend.len() as f64 + 8.0);
        let mut out = String::new();
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_width}" height="{total_height}" viewBox="0 0 {total_width} {total_height}">"#
        )
        .unwrap();
        writeln!(out, r#"<rect x="0" y="0" width="{total_width}" height="{total_height}" fill="white"/>"#).unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        )
        .unwrap();
        writeln!(
            out,
            r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#999999"/>"##,
            WIDTH - 2.0 * MARGIN,
            HEIGHT - 2.0 * MARGIN
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">lambda_2 - lambda_1</text>"#,
            WIDTH / 2.0,
            HEIGHT - 12.0
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="14" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 14 {})">lambda_3 - lambda_1</text>"#,
            HEIGHT / 2.0,
            HEIGHT / 2.0
        )
        .unwrap();

        out.push_str("<g class=\"observations\">\n");
        for p in &self.points {
            writeln!(
                out,
                r#"<circle cx="{:.3}" cy="{:.3}" r="3" fill="{}" fill-opacity="0.7"/>"#,
                sx(p.x),
                sy(p.y),
                color(p.group)
            )
            .unwrap();
        }
        out.push_str("</g>\n<g class=\"vertices\">\n");
        for &(x, y) in &self.vertices {
            writeln!(
                out,
                r#"<rect x="{:.3}" y="{:.3}" width="8" height="8" fill="black"/>"#,
                sx(x) - 4.0,
                sy(y) - 4.0
            )
            .unwrap();
        }
        out.push_str("</g>\n");

        if !self.legend.is_empty() {
            out.push_str("<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n");
            for (k, (label, count)) in self.legend.iter().enumerate() {
                let y = MARGIN + 16.0 * k as f64;
                // a swatch path, so circles stay one per observation
                writeln!(
                    out,
                    r#"<path d="M{} {}h8v8h-8z" fill="{}"/>"#,
                    WIDTH + 4.0,
                    y - 4.0,
                    color(Some(k))
                )
                .unwrap();
                writeln!(out, r#"<text x="{}" y="{}">{} ({count})</text>"#, WIDTH + 18.0, y + 4.0, escape(label)).unwrap();
            }
            out.push_str("</g>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}
