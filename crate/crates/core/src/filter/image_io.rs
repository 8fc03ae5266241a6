use std::path::Path;

use image::DynamicImage;

use crate::error::{Error, Result};
use crate::raster::ImageRaster;

/// Reads and decodes a PNG or binary PGM file into a grayscale raster.
pub fn load_image(path: impl AsRef<Path>) -> Result<ImageRaster> {
    let path = path.as_ref();
    let bytes = std::fs::read(path)
        .map_err(|e| Error::ImageUnprocessable(format!("{}: {e}", path.display())))?;
    decode_image(&bytes)
}

/// Decodes image bytes (PNG or PGM P5).
///
/// Colour is converted with Rec. 709 luma weights and rounded; transparent
/// pixels are composited over white.
pub fn decode_image(bytes: &[u8]) -> Result<ImageRaster> {
    let img =
        image::load_from_memory(bytes).map_err(|e| Error::ImageUnprocessable(e.to_string()))?;
    let (w, h) = (img.width(), img.height());
    let pixels = match img {
        DynamicImage::ImageLuma8(buf) => buf.into_raw(),
        other => other
            .to_rgba8()
            .pixels()
            .map(|p| {
                let [r, g, b, a] = p.0;
                let alpha = f64::from(a) / 255.0;
                let over_white = |c: u8| f64::from(c) * alpha + 255.0 * (1.0 - alpha);
                luminance(over_white(r), over_white(g), over_white(b))
            })
            .collect(),
    };
    ImageRaster::new(w, h, pixels)
}

/// Encodes a raster as an 8-bit grayscale PNG.
pub fn encode_png(img: &ImageRaster) -> Vec<u8> {
    let mut out = std::io::Cursor::new(Vec::new());
    image::GrayImage::from_raw(img.width(), img.height(), img.pixels().to_vec())
        .expect("raster size matches its pixel buffer")
        .write_to(&mut out, image::ImageFormat::Png)
        .expect("PNG encoding into memory cannot fail");
    out.into_inner()
}

/// Writes a raster as a grayscale PNG file.
pub fn save_png(img: &ImageRaster, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, encode_png(img))?;
    Ok(())
}

/// Rec. 709 luma of an RGB triple in `[0, 255]`, rounded to the nearest
/// integer.
pub fn luminance(r: f64, g: f64, b: f64) -> u8 {
    (0.2126 * r + 0.7152 * g + 0.0722 * b)
        .round()
        .clamp(0.0, 255.0) as u8
}
