use std::fmt::Write;

use crate::kets::{arc_geometry, VisualDecomposition, VisualKet};
use crate::raster::Frame;

const ENVELOPE_STYLE: &str = r##"stroke="#1b3b6f" fill="#1b3b6f""##;
const PATTERN_STYLE: &str = r##"stroke="#c2452d" fill="#c2452d""##;

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

/// Draws a decomposition: one `circle`, `line` or `path` element per
/// term, envelope and patterns in separate colour groups.
pub fn to_svg(d: &VisualDecomposition, frame: Frame) -> String {
    let (w, h) = (f64::from(frame.width), f64::from(frame.height));
    let diag = frame.diagonal();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        frame.width, frame.height, frame.width, frame.height
    );
    for (id, style, terms) in [
        ("envelope", ENVELOPE_STYLE, d.envelope()),
        ("patterns", PATTERN_STYLE, d.patterns()),
    ] {
        let _ = writeln!(out, r#"<g id="{id}" {style} stroke-linecap="round">"#);
        for t in terms {
            let p = &t.placement;
            let width = num((p.thickness * diag).max(1.0));
            match t.ket {
                VisualKet::Dot => {
                    let _ = writeln!(
                        out,
                        r#"<circle cx="{}" cy="{}" r="{}" stroke="none"/>"#,
                        num(p.x * w),
                        num(p.y * h),
                        num((p.scale * diag / 2.0).max(0.5))
                    );
                }
                VisualKet::Segment => {
                    let (ux, uy) = p.direction();
                    let half = p.scale * diag / 2.0;
                    let (cx, cy) = (p.x * w, p.y * h);
                    let _ = writeln!(
                        out,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{width}"/>"#,
                        num(cx - ux * half),
                        num(cy - uy * half),
                        num(cx + ux * half),
                        num(cy + uy * half)
                    );
                }
                VisualKet::Arc { sweep } => {
                    let g = arc_geometry(p, sweep, frame);
                    // Bulging left of travel is clockwise on a y-down canvas.
                    let large = u8::from(sweep > std::f64::consts::PI);
                    let _ = writeln!(
                        out,
                        r#"<path d="M {} {} A {} {} 0 {large} 1 {} {}" fill="none" stroke-width="{width}"/>"#,
                        num(g.start.0),
                        num(g.start.1),
                        num(g.radius),
                        num(g.radius),
                        num(g.end.0),
                        num(g.end.1)
                    );
                }
            }
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kets::{KetPlacement, Term};

    #[test]
    fn one_element_per_term() {
        let p = KetPlacement::new(0.5, 0.5, 0.2, 0.0, 0.01).unwrap();
        let d = VisualDecomposition::new(
            vec![
                Term::new(p, VisualKet::Arc { sweep: 4.0 }),
                Term::new(p, VisualKet::Dot),
                Term::new(p, VisualKet::Segment),
            ],
            1,
        )
        .unwrap();
        let svg = to_svg(&d, Frame::new(100, 100).unwrap());
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<line").count(), 1);
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(" 0 1 1 "));
        let env = svg.find(r#"id="envelope""#).unwrap();
        let pat = svg.find(r#"id="patterns""#).unwrap();
        assert!(env < svg.find("<path").unwrap() && svg.find("<path").unwrap() < pat);
    }
}
