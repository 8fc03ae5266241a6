//! Primitive fitting and recursive segmentation of polylines into kets.

use std::f64::consts::PI;

use super::contour::Polyline;
use super::DiscretizationLevel;
use crate::geom::{
    bbox_extent, centroid, fit_circle_kasa, fit_line, perpendicular_distance, simplify_rdp,
    unwrapped_sweep, wrap_angle, Point,
};
use crate::kets::{KetPlacement, VisualKet};
use crate::raster::Frame;

/// Arcs whose fitted radius exceeds this many image diagonals are treated
/// as straight.
pub const MAX_ARC_RADIUS_DIAGONALS: f64 = 10.0;

/// Slack above a half turn allowed for a single arc term.
pub const ARC_SWEEP_SLACK: f64 = 0.2;

/// A fitted primitive with its pixel-space RMS residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub placement: KetPlacement,
    pub ket: VisualKet,
    pub residual: f64,
}

/// Circle-fit details alongside the arc term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcFit {
    pub center: Point<f64>,
    pub radius: f64,
    /// Unsigned angle subtended by the points.
    pub sweep: f64,
    pub result: FitResult,
}

/// Why an arc fit was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DegenerateArc {
    #[error("degenerate arc: fewer than three points")]
    TooFewPoints,
    #[error("degenerate arc: points are (nearly) collinear")]
    Collinear,
    #[error("degenerate arc: zero sweep")]
    NoSweep,
}

fn normalized(frame: Frame, p: Point<f64>) -> (f64, f64) {
    (
        (p.x / f64::from(frame.width)).clamp(0.0, 1.0),
        (p.y / f64::from(frame.height)).clamp(0.0, 1.0),
    )
}

fn fraction_of_diagonal(frame: Frame, px: f64) -> f64 {
    (px / frame.diagonal()).clamp(f64::MIN_POSITIVE, 1.0)
}

/// One-pixel stroke, the default thickness of fitted primitives.
pub fn hairline(frame: Frame) -> f64 {
    fraction_of_diagonal(frame, 1.0)
}

/// A dot covering `points`: centred on their centroid, with diameter equal
/// to their pixel extent.
pub fn fit_dot(points: &[Point<f64>], frame: Frame) -> FitResult {
    let c = centroid(points).unwrap_or_default();
    let (x, y) = normalized(frame, c);
    let size = fraction_of_diagonal(frame, bbox_extent(points) + 1.0);
    let residual = if points.is_empty() {
        0.0
    } else {
        (points.iter().map(|&p| (p - c).dot(p - c)).sum::<f64>() / points.len() as f64).sqrt()
    };
    FitResult {
        placement: KetPlacement {
            x,
            y,
            scale: size,
            rotation: 0.0,
            thickness: size,
        },
        ket: VisualKet::Dot,
        residual,
    }
}

/// Total-least-squares segment. Coincident points fall back to a
/// [`VisualKet::Dot`].
pub fn fit_segment(points: &[Point<f64>], frame: Frame) -> FitResult {
    let Some(line) = fit_line(points) else {
        return fit_dot(points, frame);
    };
    let (x, y) = normalized(frame, line.midpoint);
    FitResult {
        placement: KetPlacement {
            x,
            y,
            scale: fraction_of_diagonal(frame, line.extent),
            rotation: line.angle(),
            thickness: hairline(frame),
        },
        ket: VisualKet::Segment,
        residual: line.residual,
    }
}

/// Kåsa circle fit turned into an arc term.
///
/// The chord joins the projections of the first and last points onto the
/// circle. The direction of travel is chosen so that the arc bulges to its
/// left, matching [`crate::kets::arc_geometry`].
pub fn fit_arc(points: &[Point<f64>], frame: Frame) -> Result<ArcFit, DegenerateArc> {
    if points.len() < 3 {
        return Err(DegenerateArc::TooFewPoints);
    }
    let circle = fit_circle_kasa(points).ok_or(DegenerateArc::Collinear)?;
    if circle.radius > MAX_ARC_RADIUS_DIAGONALS * frame.diagonal() {
        return Err(DegenerateArc::Collinear);
    }
    let signed = unwrapped_sweep(points, circle.center);
    let sweep = signed.abs();
    if sweep <= 0.0 {
        return Err(DegenerateArc::NoSweep);
    }
    let c = circle.center;
    let r = circle.radius;
    let a0 = (points[0].y - c.y).atan2(points[0].x - c.x);
    let a1 = a0 + signed;
    let on_circle = |a: f64| Point::new(c.x + r * a.cos(), c.y + r * a.sin());
    let (mut p0, mut p1) = (on_circle(a0), on_circle(a1));
    let bulge = on_circle(a0 + signed / 2.0);
    let mid = (p0 + p1).scale(0.5);
    let along = p1 - p0;
    let left = Point::new(along.y, -along.x);
    if (bulge - mid).dot(left) < 0.0 {
        std::mem::swap(&mut p0, &mut p1);
    }
    let chord = p1 - p0;
    let (x, y) = normalized(frame, mid);
    let ket =
        VisualKet::arc(sweep.min(std::f64::consts::TAU)).map_err(|_| DegenerateArc::NoSweep)?;
    Ok(ArcFit {
        center: c,
        radius: r,
        sweep,
        result: FitResult {
            placement: KetPlacement {
                x,
                y,
                scale: fraction_of_diagonal(frame, chord.norm().max(1e-9)),
                rotation: wrap_angle(chord.y.atan2(chord.x)),
                thickness: hairline(frame),
            },
            ket,
            residual: circle.residual,
        },
    })
}

/// Ramer–Douglas–Peucker simplification of a polyline.
///
/// Closed polylines are simplified as the chain that starts and ends at
/// their first point.
pub fn simplify(p: &Polyline, tol: f64) -> Polyline {
    let pts = p.points();
    if pts.len() < 3 {
        return p.clone();
    }
    if p.is_closed() {
        let mut chain = pts.to_vec();
        chain.push(pts[0]);
        let mut kept = simplify_rdp(&chain, tol);
        kept.pop();
        if kept.len() < 3 {
            return p.clone();
        }
        Polyline::traced(kept, true)
    } else {
        Polyline::traced(simplify_rdp(pts, tol), false)
    }
}

/// Splits a polyline into dot, segment and arc terms.
///
/// A polyline whose extent is below `dot_extent` becomes one dot.
/// Otherwise each piece is fitted as a segment, then as an arc (at most a
/// half turn plus slack), and the first fit with residual below `fit_tol`
/// is kept; a piece that fits neither is cut at its point of maximum
/// deviation from the chord and both halves are processed recursively.
/// Closed polylines are first cut into two halves between the point
/// farthest from their centroid and the point farthest from that one.
pub fn segment_primitives(
    p: &Polyline,
    level: DiscretizationLevel,
    frame: Frame,
) -> Vec<FitResult> {
    let pts = p.points();
    let mut out = Vec::new();
    if pts.is_empty() {
        return out;
    }
    if bbox_extent(pts) + 1.0 < level.dot_extent(frame) || pts.len() == 1 {
        out.push(fit_dot(pts, frame));
        return out;
    }
    let fit_tol = level.fit_tol(frame);
    if p.is_closed() && pts.len() >= 3 {
        let c = centroid(pts).unwrap_or_default();
        let start = argmax(pts, |q| q.distance(c));
        let mut ring: Vec<Point<f64>> = pts[start..].iter().chain(&pts[..start]).copied().collect();
        let far = argmax(&ring, |q| q.distance(ring[0]));
        ring.push(ring[0]);
        let far = far.clamp(1, ring.len() - 2);
        split_fit(&ring[..=far], fit_tol, frame, &mut out);
        split_fit(&ring[far..], fit_tol, frame, &mut out);
    } else {
        split_fit(pts, fit_tol, frame, &mut out);
    }
    out
}

fn argmax(pts: &[Point<f64>], f: impl Fn(&Point<f64>) -> f64) -> usize {
    let mut best = 0;
    let mut best_v = f64::NEG_INFINITY;
    for (i, q) in pts.iter().enumerate() {
        let v = f(q);
        if v > best_v {
            best_v = v;
            best = i;
        }
    }
    best
}

fn split_fit(pts: &[Point<f64>], fit_tol: f64, frame: Frame, out: &mut Vec<FitResult>) {
    if pts.len() <= 2 {
        out.push(fit_segment(pts, frame));
        return;
    }
    let seg = fit_segment(pts, frame);
    if seg.ket == VisualKet::Segment && seg.residual < fit_tol {
        out.push(seg);
        return;
    }
    if let Ok(arc) = fit_arc(pts, frame) {
        if arc.result.residual < fit_tol && arc.sweep <= PI + ARC_SWEEP_SLACK {
            out.push(arc.result);
            return;
        }
    }
    let (a, b) = (pts[0], pts[pts.len() - 1]);
    let inner = &pts[1..pts.len() - 1];
    let k = if a.distance(b) > 1e-9 {
        1 + argmax(inner, |q| perpendicular_distance(*q, a, b))
    } else {
        1 + argmax(inner, |q| q.distance(a))
    };
    split_fit(&pts[..=k], fit_tol, frame, out);
    split_fit(&pts[k..], fit_tol, frame, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kets::KetKind;

    fn frame() -> Frame {
        Frame::new(512, 512).unwrap()
    }

    #[test]
    fn rdp_keeps_right_angle_corner() {
        let p = Polyline::new(
            vec![
                Point::new(0.0, 0.0),
                Point::new(10.0, 0.0),
                Point::new(10.0, 10.0),
            ],
            false,
        )
        .unwrap();
        assert_eq!(simplify(&p, 1.0).len(), 3);
        // max deviation is 10/√2 ≈ 7.07
        assert_eq!(simplify(&p, 7.2).len(), 2);
    }

    #[test]
    fn rdp_collinear_to_endpoints() {
        let pts: Vec<_> = (0..20)
            .map(|i| Point::new(i as f64, 2.0 * i as f64))
            .collect();
        let p = Polyline::new(pts.clone(), false).unwrap();
        let s = simplify(&p, 0.01);
        assert_eq!(s.points(), &[pts[0], pts[19]]);
    }

    #[test]
    fn segment_two_points() {
        let r = fit_segment(
            &[Point::new(100.0, 100.0), Point::new(200.0, 100.0)],
            frame(),
        );
        assert_eq!(r.ket, VisualKet::Segment);
        assert!(r.residual < 1e-12);
        assert!((r.placement.x - 150.0 / 512.0).abs() < 1e-12);
        assert!((r.placement.scale - 100.0 / frame().diagonal()).abs() < 1e-12);
        assert_eq!(r.placement.rotation, 0.0);
    }

    #[test]
    fn coincident_points_become_dot() {
        let r = fit_segment(&[Point::new(3.0, 3.0); 4], frame());
        assert_eq!(r.ket, VisualKet::Dot);
    }

    #[test]
    fn collinear_arc_is_rejected() {
        let pts: Vec<_> = (0..30)
            .map(|i| Point::new(10.0 + i as f64, 20.0 + 0.5 * i as f64))
            .collect();
        assert_eq!(
            fit_arc(&pts, frame()).unwrap_err(),
            DegenerateArc::Collinear
        );
        assert_eq!(
            fit_arc(&pts[..2], frame()).unwrap_err(),
            DegenerateArc::TooFewPoints
        );
    }

    #[test]
    fn arc_bulge_convention() {
        // An upper semicircle traversed right-to-left (image y down).
        let pts: Vec<_> = (0..=180)
            .map(|d| {
                let a = -(d as f64).to_radians();
                Point::new(256.0 + 100.0 * a.cos(), 256.0 + 100.0 * a.sin())
            })
            .collect();
        let fit = fit_arc(&pts, frame()).unwrap();
        let g = crate::kets::arc_geometry(&fit.result.placement, fit.sweep, frame());
        assert!((g.center.0 - 256.0).abs() < 1e-6 && (g.center.1 - 256.0).abs() < 1e-6);
        assert!(g.bulge.1 < -0.99);
    }

    #[test]
    fn tiny_blob_is_dot() {
        let pts = vec![
            Point::new(100.5, 100.5),
            Point::new(101.5, 100.5),
            Point::new(102.5, 101.5),
            Point::new(101.5, 102.5),
            Point::new(100.5, 101.5),
        ];
        let p = Polyline::new(pts, true).unwrap();
        let r = segment_primitives(&p, DiscretizationLevel::new(2).unwrap(), frame());
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].ket.kind(), KetKind::Dot);
    }
}
