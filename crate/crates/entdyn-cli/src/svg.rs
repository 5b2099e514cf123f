//! Minimal SVG line plots: the simulated series as a solid polyline, an
//! optional closed-form overlay as a dashed one, axes with end labels.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 50.0;

const SERIES_STYLE: &str = "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"";
const OVERLAY_STYLE: &str =
    "fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"";

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn from_points<'a>(sets: impl Iterator<Item = &'a [(f64, f64)]>) -> Frame {
        let mut x_min = f64::INFINITY;
        let mut x_max = f64::NEG_INFINITY;
        let mut y_min = f64::INFINITY;
        let mut y_max = f64::NEG_INFINITY;
        for set in sets {
            for &(x, y) in set {
                if x.is_finite() {
                    x_min = x_min.min(x);
                    x_max = x_max.max(x);
                }
                if y.is_finite() {
                    y_min = y_min.min(y);
                    y_max = y_max.max(y);
                }
            }
        }
        // Degenerate ranges (a flat curve, a single point) still need a
        // nonzero span to map onto pixels.
        if !x_min.is_finite() || x_min == x_max {
            let c = if x_min.is_finite() { x_min } else { 0.0 };
            x_min = c - 0.5;
            x_max = c + 0.5;
        }
        if !y_min.is_finite() || y_min == y_max {
            let c = if y_min.is_finite() { y_min } else { 0.0 };
            let pad = c.abs().max(1.0) * 0.05;
            y_min = c - pad;
            y_max = c + pad;
        } else {
            let pad = (y_max - y_min) * 0.05;
            y_min -= pad;
            y_max += pad;
        }
        Frame { x_min, x_max, y_min, y_max }
    }

    fn x(&self, v: f64) -> f64 {
        let w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        MARGIN_LEFT + (v - self.x_min) / (self.x_max - self.x_min) * w
    }

    fn y(&self, v: f64) -> f64 {
        let h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        HEIGHT - MARGIN_BOTTOM - (v - self.y_min) / (self.y_max - self.y_min) * h
    }
}

fn polyline(frame: &Frame, points: &[(f64, f64)], style: &str) -> String {
    let mut coords = String::new();
    for &(x, y) in points {
        if x.is_finite() && y.is_finite() {
            let _ = write!(coords, "{:.2},{:.2} ", frame.x(x), frame.y(y));
        }
    }
    format!("  <polyline {style} points=\"{}\"/>\n", coords.trim_end())
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render the plot. `series` is the simulated (or tabulated) curve;
/// `overlay`, when present, is the matching closed form.
pub fn render(
    x_label: &str,
    y_label: &str,
    series: &[(f64, f64)],
    overlay: Option<&[(f64, f64)]>,
) -> String {
    let frame = Frame::from_points(std::iter::once(series).chain(overlay.iter().copied()));
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(out, "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");

    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    let _ = writeln!(
        out,
        "  <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n\
         \x20 <line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>"
    );

    // End-of-axis tick labels and axis names.
    let _ = writeln!(
        out,
        "  <text x=\"{x0}\" y=\"{ty}\" font-size=\"12\" text-anchor=\"middle\">{:.4}</text>",
        frame.x_min,
        ty = y0 + 18.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"{x1}\" y=\"{ty}\" font-size=\"12\" text-anchor=\"middle\">{:.4}</text>",
        frame.x_max,
        ty = y0 + 18.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"{tx}\" y=\"{y0}\" font-size=\"12\" text-anchor=\"end\">{:.4}</text>",
        frame.y_min,
        tx = x0 - 8.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"{tx}\" y=\"{ty}\" font-size=\"12\" text-anchor=\"end\">{:.4}</text>",
        frame.y_max,
        tx = x0 - 8.0,
        ty = y1 + 4.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"{tx}\" y=\"{ty}\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        escape(x_label),
        tx = (x0 + x1) / 2.0,
        ty = HEIGHT - 12.0
    );
    let _ = writeln!(
        out,
        "  <text x=\"{x0}\" y=\"{ty}\" font-size=\"13\">{}</text>",
        escape(y_label),
        ty = MARGIN_TOP - 12.0
    );

    out.push_str(&polyline(&frame, series, SERIES_STYLE));
    if let Some(o) = overlay {
        out.push_str(&polyline(&frame, o, OVERLAY_STYLE));
        let lx = x1 - 150.0;
        let _ = write!(
            out,
            "  <line x1=\"{lx}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#1f77b4\" \
             stroke-width=\"1.5\"/>\n\
             \x20 <text x=\"{tx}\" y=\"{ty}\" font-size=\"12\">simulation</text>",
            y = y1 + 8.0,
            x2 = lx + 24.0,
            tx = lx + 30.0,
            ty = y1 + 12.0
        );
        let _ = write!(
            out,
            "  <line x1=\"{lx}\" y1=\"{y}\" x2=\"{x2}\" y2=\"{y}\" stroke=\"#d62728\" \
             stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n\
             \x20 <text x=\"{tx}\" y=\"{ty}\" font-size=\"12\">closed form</text>",
            y = y1 + 26.0,
            x2 = lx + 24.0,
            tx = lx + 30.0,
            ty = y1 + 30.0
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_one_polyline_without_overlay() {
        let s = render("tau", "value", &[(0.0, 0.0), (1.0, 0.5), (2.0, 0.4)], None);
        assert!(s.starts_with("<svg "));
        assert!(s.trim_end().ends_with("</svg>"));
        assert_eq!(s.matches("<polyline").count(), 1);
        assert!(!s.contains("NaN"));
    }

    #[test]
    fn renders_overlay_and_legend() {
        let series = [(0.0, 0.0), (1.0, 0.5)];
        let overlay = [(0.0, 0.01), (1.0, 0.49)];
        let s = render("t", "linear entropy", &series, Some(&overlay));
        assert_eq!(s.matches("<polyline").count(), 2);
        assert!(s.contains("simulation") && s.contains("closed form"));
        assert!(s.contains("stroke-dasharray"));
    }

    #[test]
    fn flat_series_stays_finite() {
        let s = render("tau", "value", &[(0.0, 0.25), (1.0, 0.25)], None);
        assert!(!s.contains("NaN") && !s.contains("inf"));
    }

    #[test]
    fn labels_are_escaped() {
        let s = render("tau", "|11> start", &[(0.0, 0.0), (1.0, 1.0)], None);
        assert!(s.contains("|11&gt; start"));
        assert!(!s.contains("|11> start"));
    }
}
