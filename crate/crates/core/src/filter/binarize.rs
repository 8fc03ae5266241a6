use crate::raster::{Bitmap, ImageRaster};

/// Otsu's threshold: the intensity `t` maximising the between-class
/// variance of `[0, t]` against `(t, 255]`.
///
/// When several thresholds tie, the middle of the tied run is returned.
/// Returns `None` for a single-intensity image.
pub fn otsu_threshold(img: &ImageRaster) -> Option<u8> {
    let mut hist = [0u64; 256];
    for &p in img.pixels() {
        hist[p as usize] += 1;
    }
    if hist.iter().filter(|&&c| c > 0).count() < 2 {
        return None;
    }
    let total = img.pixels().len() as f64;
    let sum_all: f64 = hist
        .iter()
        .enumerate()
        .map(|(i, &c)| i as f64 * c as f64)
        .sum();

    let mut w0 = 0.0;
    let mut sum0 = 0.0;
    let mut best = f64::NEG_INFINITY;
    let mut first = 0usize;
    let mut last = 0usize;
    for (t, &count) in hist.iter().enumerate().take(255) {
        w0 += count as f64;
        sum0 += t as f64 * count as f64;
        let w1 = total - w0;
        if w0 == 0.0 || w1 == 0.0 {
            continue;
        }
        let m0 = sum0 / w0;
        let m1 = (sum_all - sum0) / w1;
        let between = w0 * w1 * (m0 - m1) * (m0 - m1);
        if between > best * (1.0 + 1e-12) {
            best = between;
            first = t;
            last = t;
        } else if between >= best * (1.0 - 1e-12) {
            last = t;
        }
    }
    Some(((first + last) / 2) as u8)
}

/// Otsu binarisation; the darker class is foreground (ink on paper).
pub fn binarize(img: &ImageRaster) -> Bitmap {
    match otsu_threshold(img) {
        None => Bitmap::new(img.frame()),
        Some(t) => Bitmap::from_fn(img.frame(), |x, y| img.get(x, y) <= t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white_image_has_no_foreground() {
        let img = ImageRaster::filled(20, 10, 255).unwrap();
        assert_eq!(binarize(&img).count(), 0);
    }

    #[test]
    fn half_black_half_white() {
        let pixels = (0..100).map(|i| if i < 50 { 0 } else { 255 }).collect();
        let img = ImageRaster::new(10, 10, pixels).unwrap();
        let t = otsu_threshold(&img).unwrap();
        assert!(t < 255);
        let bin = binarize(&img);
        assert_eq!(bin.count(), 50);
        assert!((0..5).all(|y| (0..10).all(|x| bin.get(x, y))));
    }
}
