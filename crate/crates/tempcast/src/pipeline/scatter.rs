//! Actual-vs-predicted exports: a CSV of pairs and an SVG scatter plot
//! with the y = x reference line.

use std::fmt::Write as _;
use std::path::Path;

use super::{EvaluationReport, PipelineError};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Render the CSV body: header plus one `actual,predicted` row per pair,
/// six decimal places.
pub(crate) fn render_csv(report: &EvaluationReport) -> String {
    let mut out = String::from("actual,predicted\n");
    for &(actual, predicted) in &report.pairs {
        let _ = writeln!(out, "{actual:.6},{predicted:.6}");
    }
    out
}

/// Render the SVG scatter plot. Axes are in °C and share one scale so the
/// reference line is the diagonal of the data square.
pub(crate) fn render_svg(report: &EvaluationReport) -> String {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &(a, p) in &report.pairs {
        lo = lo.min(a).min(p);
        hi = hi.max(a).max(p);
    }
    let pad = (0.05 * (hi - lo)).max(1e-9);
    let (lo, hi) = (lo - pad, hi + pad);
    let span = hi - lo;

    let to_x = |v: f64| MARGIN + (v - lo) / span * (WIDTH - 2.0 * MARGIN);
    let to_y = |v: f64| HEIGHT - MARGIN - (v - lo) / span * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );

    // Axis ticks and labels.
    for i in 0..=4 {
        let v = lo + span * i as f64 / 4.0;
        let x = to_x(v);
        let y = to_y(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#,
            HEIGHT - MARGIN,
            HEIGHT - MARGIN + 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{v:.1}</text>"#,
            HEIGHT - MARGIN + 18.0
        );
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{MARGIN}" y2="{y:.2}" stroke="black"/>"#,
            MARGIN - 5.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{v:.1}</text>"#,
            MARGIN - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">actual mean temperature (°C)</text>"#,
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">predicted mean temperature (°C)</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );

    // y = x reference line.
    let _ = writeln!(
        svg,
        r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="6 4"/>"#,
        to_x(lo),
        to_y(lo),
        to_x(hi),
        to_y(hi)
    );

    for &(actual, predicted) in &report.pairs {
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="steelblue" fill-opacity="0.6"/>"#,
            to_x(actual),
            to_y(predicted)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Write `scatter.csv` and `scatter.svg` into `dir`.
pub fn export_scatter(report: &EvaluationReport, dir: &Path) -> Result<(), PipelineError> {
    if report.pairs.is_empty() {
        return Err(PipelineError::EmptyEvaluation);
    }
    let write = |name: &str, content: String| -> Result<(), PipelineError> {
        std::fs::write(dir.join(name), content).map_err(|source| PipelineError::WriteArtifact {
            path: dir.join(name),
            source,
        })
    };
    write("scatter.csv", render_csv(report))?;
    write("scatter.svg", render_svg(report))
}
