use std::cmp::Ordering;

use super::contour::{component_contour, hole_contour, label_components, Labeling};
use super::fit::{segment_primitives, FitResult};
use super::skeleton::{skeletonize, Grid};
use super::{binarize, DiscretizationLevel};
use crate::error::{Error, Result};
use crate::geom::bbox_extent;
use crate::kets::{Term, VisualDecomposition, VisualKet};
use crate::raster::{Bitmap, Frame, ImageRaster};

/// Components with `area / (max inscribed distance)²` above this are thin
/// strokes and are described by their centre line; below it they are
/// filled shapes described by their boundaries. A disc scores π, a square
/// 4, a bar of length `L` and width `w` about `4 L / w`.
pub const STROKE_ELONGATION: f64 = 16.0;

/// Decomposes an image into envelope and pattern terms.
///
/// The terms of the component with the largest enclosed area form the
/// envelope; all other components, and the holes of filled shapes, are
/// patterns. Each group is ordered left to right.
pub fn decompose(img: &ImageRaster, level: DiscretizationLevel) -> Result<VisualDecomposition> {
    decompose_bitmap(&binarize(img), level)
}

/// [`decompose`] on an already binarised raster.
pub fn decompose_bitmap(bin: &Bitmap, level: DiscretizationLevel) -> Result<VisualDecomposition> {
    let labeling = label_components(bin);
    if labeling.components.is_empty() {
        return Err(Error::NoObjects);
    }
    let frame = bin.frame();
    let envelope_id = (0..labeling.components.len())
        .max_by(|&a, &b| {
            let (ea, eb) = (
                labeling.components[a].enclosed_area(&labeling),
                labeling.components[b].enclosed_area(&labeling),
            );
            ea.cmp(&eb).then(b.cmp(&a))
        })
        .expect("non-empty");

    let mut envelope = Vec::new();
    let mut patterns = Vec::new();
    for k in 0..labeling.components.len() {
        let (outer, holes) = component_terms(bin, &labeling, k, level, frame);
        if k == envelope_id {
            envelope.extend(outer);
        } else {
            patterns.extend(outer);
        }
        patterns.extend(holes);
    }
    let by_position = |a: &Term, b: &Term| {
        a.placement
            .x
            .partial_cmp(&b.placement.x)
            .unwrap_or(Ordering::Equal)
            .then(
                a.placement
                    .y
                    .partial_cmp(&b.placement.y)
                    .unwrap_or(Ordering::Equal),
            )
    };
    envelope.sort_by(by_position);
    patterns.sort_by(by_position);
    VisualDecomposition::from_parts(envelope, patterns)
}

fn to_term(f: FitResult) -> Term {
    Term::new(f.placement, f.ket)
}

/// Terms for one component: (outline terms, hole terms).
fn component_terms(
    bin: &Bitmap,
    labeling: &Labeling,
    k: usize,
    level: DiscretizationLevel,
    frame: Frame,
) -> (Vec<Term>, Vec<Term>) {
    let c = &labeling.components[k];
    let dot_extent = level.dot_extent(frame);
    let outline = component_contour(bin, labeling, k);
    if f64::from(c.extent()) < dot_extent {
        let terms = segment_primitives(&outline.polyline, level, frame);
        return (terms.into_iter().map(to_term).collect(), Vec::new());
    }

    let grid = Grid::from_pixels(&c.pixels, c.bbox);
    let inscribed = grid.max_inscribed_distance().max(1.0);
    let area = c.pixels.len() as f64;
    if area / (inscribed * inscribed) > STROKE_ELONGATION {
        let spur_len = ((4.0 * inscribed).ceil() as usize).max(3);
        let skeleton = skeletonize(&c.pixels, c.bbox, spur_len);
        let width = (area / skeleton.length.max(1) as f64).max(1.0);
        let thickness = (width / frame.diagonal()).min(1.0);
        let many = skeleton.polylines.len() > 1;
        let mut terms = Vec::new();
        for line in &skeleton.polylines {
            if many && bbox_extent(line.points()) + 1.0 < dot_extent {
                continue;
            }
            for mut f in segment_primitives(line, level, frame) {
                if f.ket != VisualKet::Dot {
                    f.placement.thickness = thickness;
                }
                terms.push(to_term(f));
            }
        }
        return (terms, Vec::new());
    }

    let outer = segment_primitives(&outline.polyline, level, frame)
        .into_iter()
        .map(to_term)
        .collect();
    let holes = c
        .holes
        .iter()
        .flat_map(|&h| segment_primitives(&hole_contour(labeling, h).polyline, level, frame))
        .map(to_term)
        .collect();
    (outer, holes)
}
