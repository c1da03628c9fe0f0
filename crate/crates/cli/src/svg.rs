//! Static SVG plots on a fixed 800×600 canvas.
//!
//! Data coordinates map onto the canvas through the bounding box of the
//! input data padded by 5% per side. Pivots share their source point's
//! color; the source point is drawn larger.

use std::fmt::Write;

use pivotlab::{PointSet, RegressionLine};

use crate::sweep_csv::SweepResult;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub fn color(label: usize) -> &'static str {
    PALETTE[(label.max(1) - 1) % PALETTE.len()]
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn around(xs: impl Iterator<Item = f64> + Clone, ys: impl Iterator<Item = f64> + Clone) -> Self {
        let (x0, x1) = padded(xs);
        let (y0, y1) = padded(ys);
        Frame { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        (x - self.x0) / (self.x1 - self.x0) * WIDTH
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - (y - self.y0) / (self.y1 - self.y0) * HEIGHT
    }
}

fn padded(v: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = v
        .filter(|x| x.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    let span = hi - lo;
    let pad = if span > 0.0 {
        0.05 * span
    } else {
        lo.abs().max(1.0) * 0.05
    };
    (lo - pad, hi + pad)
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Pivots of a sweep over the data points, with the unweighted fit drawn
/// across the frame.
pub fn sweep_svg(points: &PointSet<f64>, fit: Option<&RegressionLine<f64>>, result: &SweepResult) -> String {
    let pts = points.points();
    let frame = Frame::around(pts.iter().map(|p| p.x), pts.iter().map(|p| p.y));
    let mut out = String::new();
    header(&mut out, "pivot sweep");
    if let Some(line) = fit {
        let _ = writeln!(
            out,
            r#"<line class="fit" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1"/>"#,
            frame.px(frame.x0),
            frame.py(line.eval(&frame.x0)),
            frame.px(frame.x1),
            frame.py(line.eval(&frame.x1))
        );
    }
    for (row, (x, y)) in result.finite() {
        let _ = writeln!(
            out,
            r#"<circle class="pivot" cx="{:.2}" cy="{:.2}" r="1.5" fill="{}"/>"#,
            frame.px(x),
            frame.py(y),
            color(row.label)
        );
    }
    for (i, p) in pts.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle class="datum" cx="{:.2}" cy="{:.2}" r="5" fill="{}" stroke="black"/>"#,
            frame.px(p.x),
            frame.py(p.y),
            color(i + 1)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Values of each label against the iteration index.
pub fn pseudopivot_svg(states: &[[f64; 3]]) -> String {
    let n = states.len().saturating_sub(1).max(1) as f64;
    let frame = Frame::around([0.0, n].into_iter(), states.iter().flat_map(|s| s.iter().copied()));
    let mut out = String::new();
    header(&mut out, "pseudopivot iterates");
    for label in 0..3 {
        let pts: Vec<String> = states
            .iter()
            .enumerate()
            .filter(|(_, s)| s[label].is_finite())
            .map(|(i, s)| format!("{:.2},{:.2}", frame.px(i as f64), frame.py(s[label])))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="path" points="{}" fill="none" stroke="{}" stroke-width="1"/>"#,
            pts.join(" "),
            color(label + 1)
        );
        for p in &pts {
            let (cx, cy) = p.split_once(',').expect("formatted as x,y");
            let _ = writeln!(
                out,
                r#"<circle class="iterate" cx="{cx}" cy="{cy}" r="3" fill="{}"/>"#,
                color(label + 1)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
