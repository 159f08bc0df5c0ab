//! Standalone SVG phase portraits on the unit-square fundamental domain.

use std::fmt::Write as _;
use std::path::Path;

use super::fixed::{FixedPointKind, FixedPointRecord};
use super::map::TorusPoint;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 40.0;

#[derive(Debug, Clone, Copy, Default)]
pub struct PhasePortrait<'a> {
    pub cloud: &'a [TorusPoint],
    pub fixed_points: &'a [FixedPointRecord],
    pub segments: &'a [Vec<TorusPoint>],
}

fn sx(x: f64) -> f64 {
    MARGIN + x * SIZE
}

// y up
fn sy(y: f64) -> f64 {
    MARGIN + (1.0 - y) * SIZE
}

/// Splits a torus polyline wherever it wraps across an edge of the square.
fn unwrapped_runs(points: &[TorusPoint]) -> Vec<&[TorusPoint]> {
    let mut runs = Vec::new();
    let mut start = 0;
    for i in 1..points.len() {
        let (a, b) = (points[i - 1], points[i]);
        if (a.x - b.x).abs() > 0.5 || (a.y - b.y).abs() > 0.5 {
            runs.push(&points[start..i]);
            start = i;
        }
    }
    if start < points.len() {
        runs.push(&points[start..]);
    }
    runs
}

pub fn portrait_svg(portrait: &PhasePortrait<'_>) -> String {
    let full = SIZE + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{full}" height="{full}" viewBox="0 0 {full} {full}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{full}" height="{full}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect id="frame" x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    let _ = writeln!(
        s,
        r#"<g id="axes" font-family="sans-serif" font-size="12" fill="black">"#
    );
    for (label, x, y) in [
        ("0", sx(0.0) - 4.0, sy(0.0) + 16.0),
        ("1", sx(1.0) - 4.0, sy(0.0) + 16.0),
        ("1", sx(0.0) - 14.0, sy(1.0) + 4.0),
        ("x", sx(0.5) - 4.0, sy(0.0) + 28.0),
        ("y", sx(0.0) - 28.0, sy(0.5) + 4.0),
    ] {
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{y:.2}">{label}</text>"#);
    }
    s.push_str("</g>\n");

    s.push_str("<g id=\"attractor\" fill=\"#1f4e79\" stroke=\"none\">\n");
    for p in portrait.cloud {
        let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="0.8"/>"#, sx(p.x), sy(p.y));
    }
    s.push_str("</g>\n");

    s.push_str("<g id=\"unstable-manifolds\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"0.8\">\n");
    for seg in portrait.segments {
        for run in unwrapped_runs(seg) {
            if run.len() < 2 {
                continue;
            }
            let pts: Vec<String> = run.iter().map(|p| format!("{:.2},{:.2}", sx(p.x), sy(p.y))).collect();
            let _ = writeln!(s, r#"<polyline points="{}"/>"#, pts.join(" "));
        }
    }
    s.push_str("</g>\n");

    s.push_str("<g id=\"fixed-points\" stroke=\"black\" stroke-width=\"1\">\n");
    for fp in portrait.fixed_points {
        let (x, y) = (sx(fp.location.x), sy(fp.location.y));
        let _ = match fp.kind {
            FixedPointKind::Source => writeln!(
                s,
                r##"<circle class="fixed-point source" cx="{x:.2}" cy="{y:.2}" r="5" fill="#ffffff"/>"##
            ),
            FixedPointKind::Sink => writeln!(
                s,
                r##"<circle class="fixed-point sink" cx="{x:.2}" cy="{y:.2}" r="5" fill="#000000"/>"##
            ),
            FixedPointKind::Saddle => writeln!(
                s,
                r##"<rect class="fixed-point saddle" x="{:.2}" y="{:.2}" width="8" height="8" fill="#f39c12"/>"##,
                x - 4.0,
                y - 4.0
            ),
            FixedPointKind::Unresolved => writeln!(
                s,
                r##"<path class="fixed-point unresolved" d="M {:.2} {:.2} l 8 8 m 0 -8 l -8 8" fill="none"/>"##,
                x - 4.0,
                y - 4.0
            ),
        };
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn render_phase_portrait(portrait: &PhasePortrait<'_>, out: &Path) -> std::io::Result<()> {
    std::fs::write(out, portrait_svg(portrait))
}
