//! SVG rendering of two-dimensional pavings.

use std::fmt::Write;

use psiset_core::{IntervalBox, Paving, Status};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub accepted: String,
    pub rejected: String,
    pub boundary: String,
    pub stroke: String,
    /// Rendered width in pixels; the height follows the aspect ratio of `R`.
    pub width_px: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            accepted: "#d62728".into(),
            rejected: "#1f77b4".into(),
            boundary: "#ffdd57".into(),
            stroke: "#222222".into(),
            width_px: 800.0,
        }
    }
}

impl SvgStyle {
    pub fn fill(&self, s: Status) -> &str {
        match s {
            Status::Accepted => &self.accepted,
            Status::Rejected => &self.rejected,
            Status::Boundary => &self.boundary,
        }
    }
}

/// One `<rect>` per box. The y axis points up; the view box is `R`.
pub fn render(paving: &Paving, region: &IntervalBox, style: &SvgStyle) -> Result<String, CliError> {
    if region.dim() != 2 {
        return Err(CliError::Invalid(format!(
            "SVG output needs a 2-dimensional adjustment box, this problem has {} dimensions",
            region.dim()
        )));
    }
    let (x, y) = (region.get(0), region.get(1));
    if x.width() <= 0.0 || y.width() <= 0.0 {
        return Err(CliError::Invalid("SVG output needs an adjustment box with positive area".into()));
    }
    let entries = paving.entries();
    // Strokes follow the finest box so that small boxes stay visible.
    let finest = entries
        .iter()
        .flat_map(|(_, b, _)| b.components().iter().map(|c| c.width()))
        .filter(|w| *w > 0.0)
        .fold(x.width().min(y.width()), f64::min);
    let stroke = finest * 0.05;
    let height_px = style.width_px * y.width() / x.width();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        style.width_px,
        height_px,
        x.lo(),
        -y.hi(),
        x.width(),
        y.width()
    );
    let _ = writeln!(s, r#"<g stroke="{}" stroke-width="{}">"#, style.stroke, stroke);
    for (status, b, p) in &entries {
        let (bx, by) = (b.get(0), b.get(1));
        let _ = writeln!(
            s,
            r#"<rect class="{}" x="{}" y="{}" width="{}" height="{}" fill="{}" data-probability="{}"/>"#,
            status.as_str(),
            bx.lo(),
            -by.hi(),
            bx.width(),
            by.width(),
            style.fill(*status),
            p
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}
