//! Drawing of the circle at infinity of the plane with the sampled clusters.

use std::fmt::Write;

use super::InfinityReport;
use crate::error::{Error, Result};

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];
const MAX_DOTS: usize = 4000;

/// SVG of the directions at the largest radius. Each direction `u` is drawn together with
/// `-u`, since both represent the same point at infinity.
pub fn render(report: &InfinityReport) -> Result<String> {
    if report.dim != 2 {
        return Err(Error::Arity {
            expected: 2,
            found: report.dim,
        });
    }
    let (cx, cy, r) = (260.0, 260.0, 200.0);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="520" height="560" viewBox="0 0 520 560">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="520" height="560" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r##"<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#bbbbbb" stroke-width="1.5"/>"##
    )
    .unwrap();
    let clusters = report.clusters();
    let mut label = vec![0usize; report.directions.len()];
    for (k, c) in clusters.iter().enumerate() {
        for &i in &c.members {
            if i < label.len() {
                label[i] = k;
            }
        }
    }
    let stride = report.directions.len().div_ceil(MAX_DOTS).max(1);
    for (i, u) in report.directions.iter().enumerate().step_by(stride) {
        let colour = PALETTE[label[i] % PALETTE.len()];
        for s in [1.0, -1.0] {
            let (x, y) = (cx + s * r * u[0], cy - s * r * u[1]);
            writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="{colour}"/>"#).unwrap();
        }
    }
    for (k, c) in clusters.iter().enumerate() {
        let (x, y) = (cx + 1.12 * r * c.centroid[0], cy - 1.12 * r * c.centroid[1]);
        let colour = PALETTE[k % PALETTE.len()];
        writeln!(
            out,
            r#"<text x="{x:.1}" y="{y:.1}" font-family="sans-serif" font-size="13" fill="{colour}" text-anchor="middle">C{}</text>"#,
            k + 1
        )
        .unwrap();
    }
    let radius = report.per_radius.last().map_or(0.0, |p| p.radius);
    writeln!(
        out,
        r#"<text x="20" y="540" font-family="sans-serif" font-size="13">{} component(s) at R = {radius:e}, eps = {}</text>"#,
        clusters.len(),
        report.config.eps
    )
    .unwrap();
    out.push_str("</svg>\n");
    Ok(out)
}
