//! Standalone SVG plots: one polyline per curve.

use std::fmt::Write as _;

use gauge_curves::Vec2;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Base,
    Evolute,
    Involute,
}

impl Style {
    fn attrs(self) -> &'static str {
        match self {
            Style::Base => r##"stroke="#1f3a93" stroke-width="1.5""##,
            Style::Evolute => r##"stroke="#c0392b" stroke-width="1.2" stroke-dasharray="8 4""##,
            Style::Involute => r##"stroke="#27ae60" stroke-width="1.2" stroke-dasharray="1.5 3" stroke-linecap="round""##,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Style::Base => "base",
            Style::Evolute => "evolute",
            Style::Involute => "involute",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotCurve {
    pub points: Vec<Vec2>,
    pub style: Style,
}

impl PlotCurve {
    pub fn new(points: Vec<Vec2>, style: Style) -> Self {
        PlotCurve { points, style }
    }
}

/// Renders `curves` into an SVG document. The viewport is the joint bounding box
/// plus a 5% margin, with the y axis pointing up. Non-finite points are skipped.
pub fn render(curves: &[PlotCurve]) -> Result<String, String> {
    if curves.is_empty() {
        return Err("no curves to plot".into());
    }
    if let Some(c) = curves.iter().find(|c| c.points.len() < 2) {
        return Err(format!("{} curve has fewer than 2 points", c.style.name()));
    }
    let finite = || curves.iter().flat_map(|c| c.points.iter()).filter(|p| p.is_finite());
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in finite() {
        lo = Vec2::new(lo.x1.min(p.x1), lo.x2.min(p.x2));
        hi = Vec2::new(hi.x1.max(p.x1), hi.x2.max(p.x2));
    }
    if !lo.is_finite() {
        return Err("no finite points to plot".into());
    }
    // A flat box (e.g. a lone segment along an axis) gets the other side's extent.
    let mut span = hi - lo;
    let extent = span.x1.max(span.x2).max(1e-9);
    for (s, l) in [(&mut span.x1, &mut lo.x1), (&mut span.x2, &mut lo.x2)] {
        if *s < 1e-9 * extent || *s == 0.0 {
            *l -= 0.5 * extent;
            *s = extent;
        }
    }
    let (w, h) = (span.x1 * (1.0 + 2.0 * MARGIN), span.x2 * (1.0 + 2.0 * MARGIN));
    let x0 = lo.x1 - MARGIN * span.x1;
    let y1 = lo.x2 + span.x2 * (1.0 + MARGIN);
    let scale = WIDTH / w;
    let height = h * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.2}" viewBox="0 0 {WIDTH:.0} {height:.2}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for c in curves {
        let pts: Vec<String> = c
            .points
            .iter()
            .filter(|p| p.is_finite())
            .map(|p| format!("{:.3},{:.3}", (p.x1 - x0) * scale, (y1 - p.x2) * scale))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="{}" fill="none" {} points="{}"/>"#,
            c.style.name(),
            c.style.attrs(),
            pts.join(" ")
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
