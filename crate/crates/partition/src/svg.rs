//! SVG overlay of a boundary classification: regular edges green, singular red.

use std::fmt::Write;

use crate::classify::BoundaryClassification;
use crate::partition::FrequencyPartition;

pub fn classification_svg(part: &FrequencyPartition, bc: &BoundaryClassification, size: u32) -> String {
    let r = std::f64::consts::PI * 1.25;
    let s = size as f64 / (2.0 * r);
    let tx = |p: [f64; 2]| ((p[0] + r) * s, (r - p[1]) * s);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for region in &part.regions {
        for poly in &region.polygons {
            let pts: Vec<String> = poly
                .iter()
                .map(|p| {
                    let (x, y) = tx(part.to_real(p));
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                out,
                r##"<polygon points="{}" fill="#f4f4f4" stroke="#bbbbbb" stroke-width="0.5"><title>A{}</title></polygon>"##,
                pts.join(" "),
                region.index
            );
        }
    }
    for rb in &bc.regions {
        for (segs, colour) in [(&rb.regular, "green"), (&rb.singular, "red")] {
            for seg in segs {
                let (x1, y1) = tx(part.to_real(&seg.a));
                let (x2, y2) = tx(part.to_real(&seg.b));
                let _ = writeln!(
                    out,
                    r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{colour}" stroke-width="2" class="{}"/>"#,
                    if colour == "red" { "singular" } else { "regular" }
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
