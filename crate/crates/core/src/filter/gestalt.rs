//! Minimal recognisable decompositions.

use super::{binarize, decompose_bitmap, DiscretizationLevel};
use crate::error::{Error, Result};
use crate::kets::{render, VisualDecomposition};
use crate::raster::{Bitmap, ImageRaster};

/// Finest level tried by [`minimal_ket_count`].
pub const MAX_LEVEL: u32 = 16;

/// `1 - IoU` between a binary image and the rendering of a decomposition.
pub fn reconstruction_error(bin: &Bitmap, d: &VisualDecomposition) -> f64 {
    1.0 - bin.iou(&render(d, bin.frame()))
}

/// One point of the level sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelSample {
    pub level: u32,
    pub n_terms: usize,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GestaltAnalysis {
    /// Fewest terms whose reconstruction error is within the threshold, or
    /// the term count at [`MAX_LEVEL`] when none is.
    pub n_star: usize,
    pub threshold_reached: bool,
    /// `(term count, error)` sorted by term count, error replaced by its
    /// running minimum so the curve never increases.
    pub curve: Vec<(usize, f64)>,
    /// Raw per-level measurements.
    pub samples: Vec<LevelSample>,
}

/// Sweeps discretization levels `1..=16` and reports the smallest number
/// of terms that keeps the image recognisable, i.e. whose reconstruction
/// error does not exceed `recog_threshold`.
pub fn minimal_ket_count(img: &ImageRaster, recog_threshold: f64) -> Result<GestaltAnalysis> {
    if !(recog_threshold > 0.0 && recog_threshold < 1.0) {
        return Err(Error::InvalidInput(format!(
            "recognisability threshold must lie in (0, 1), got {recog_threshold}"
        )));
    }
    let bin = binarize(img);
    let mut samples = Vec::new();
    for level in 1..=MAX_LEVEL {
        let d = decompose_bitmap(&bin, DiscretizationLevel::new(level)?)?;
        samples.push(LevelSample {
            level,
            n_terms: d.len(),
            error: reconstruction_error(&bin, &d),
        });
    }

    let mut by_count: Vec<(usize, f64)> = samples.iter().map(|s| (s.n_terms, s.error)).collect();
    by_count.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    by_count.dedup_by_key(|p| p.0);
    let mut best = f64::INFINITY;
    let curve: Vec<(usize, f64)> = by_count
        .into_iter()
        .map(|(n, e)| {
            best = best.min(e);
            (n, best)
        })
        .collect();

    let hit = curve.iter().find(|&&(_, e)| e <= recog_threshold);
    let (n_star, threshold_reached) = match hit {
        Some(&(n, _)) => (n, true),
        None => (samples.last().map_or(0, |s| s.n_terms), false),
    };
    Ok(GestaltAnalysis {
        n_star,
        threshold_reached,
        curve,
        samples,
    })
}
