//! The filter: from a raster to a weighted superposition of dots,
//! segments and arcs.
//!
//! Pipeline: Otsu binarisation, component labelling and boundary tracing,
//! then per component either a skeleton (thin strokes) or the traced
//! boundaries (filled shapes) are cut into primitives by
//! [`segment_primitives`].

mod binarize;
mod contour;
mod decompose;
mod fit;
mod gestalt;
mod image_io;
mod skeleton;

pub use binarize::{binarize, otsu_threshold};
pub use contour::{
    extract_contours, label_components, trace_boundary, Component, Contour, Hole, Labeling,
    Polyline,
};
pub use decompose::{decompose, decompose_bitmap, STROKE_ELONGATION};
pub use fit::{
    fit_arc, fit_dot, fit_segment, hairline, segment_primitives, simplify, ArcFit, DegenerateArc,
    FitResult, ARC_SWEEP_SLACK, MAX_ARC_RADIUS_DIAGONALS,
};
pub use gestalt::{
    minimal_ket_count, reconstruction_error, GestaltAnalysis, LevelSample, MAX_LEVEL,
};
pub use image_io::{decode_image, encode_png, load_image, luminance, save_png};
pub use skeleton::{skeletonize, Skeleton};

use crate::error::{Error, Result};
use crate::raster::Frame;

/// Resolution of the image analysis; higher is finer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiscretizationLevel(u32);

impl DiscretizationLevel {
    pub fn new(level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidInput(
                "discretization level must be at least 1".into(),
            ));
        }
        Ok(Self(level))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Simplification tolerance: `diag / (32 · level)` pixels.
    pub fn rdp_tol(self, frame: Frame) -> f64 {
        frame.diagonal() / (32.0 * f64::from(self.0))
    }

    /// Maximum RMS residual of an accepted fit: `diag / (64 · level)` pixels.
    pub fn fit_tol(self, frame: Frame) -> f64 {
        frame.diagonal() / (64.0 * f64::from(self.0))
    }

    /// Blobs smaller than `diag / 100` pixels become dots.
    pub fn dot_extent(self, frame: Frame) -> f64 {
        frame.diagonal() / 100.0
    }
}

impl Default for DiscretizationLevel {
    fn default() -> Self {
        Self(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerances_shrink_with_level() {
        let f = Frame::new(512, 512).unwrap();
        assert!(DiscretizationLevel::new(0).is_err());
        let mut prev = (f64::INFINITY, f64::INFINITY);
        for l in 1..=16 {
            let lv = DiscretizationLevel::new(l).unwrap();
            let cur = (lv.rdp_tol(f), lv.fit_tol(f));
            assert!(cur.0 > 0.0 && cur.1 > 0.0);
            assert!(cur.0 < prev.0 && cur.1 < prev.1);
            prev = cur;
        }
    }
}
