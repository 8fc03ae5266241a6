//! Grayscale and binary rasters.

use crate::error::{Error, Result};

/// Pixel dimensions of an image, with the diagonal used to normalise
/// lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frame {
    pub width: u32,
    pub height: u32,
}

impl Frame {
    pub fn new(width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidInput(format!(
                "raster dimensions must be at least 1x1, got {width}x{height}"
            )));
        }
        Ok(Self { width, height })
    }

    pub fn diagonal(&self) -> f64 {
        f64::from(self.width).hypot(f64::from(self.height))
    }

    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }
}

/// 8-bit grayscale image, row-major, 0 = black.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageRaster {
    frame: Frame,
    pixels: Vec<u8>,
}

impl ImageRaster {
    pub fn new(width: u32, height: u32, pixels: Vec<u8>) -> Result<Self> {
        let frame = Frame::new(width, height)?;
        if pixels.len() != frame.pixel_count() {
            return Err(Error::InvalidInput(format!(
                "expected {} pixels for {width}x{height}, got {}",
                frame.pixel_count(),
                pixels.len()
            )));
        }
        Ok(Self { frame, pixels })
    }

    /// A raster filled with one intensity.
    pub fn filled(width: u32, height: u32, value: u8) -> Result<Self> {
        let frame = Frame::new(width, height)?;
        Ok(Self {
            frame,
            pixels: vec![value; frame.pixel_count()],
        })
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn width(&self) -> u32 {
        self.frame.width
    }

    pub fn height(&self) -> u32 {
        self.frame.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.pixels[y as usize * self.frame.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, v: u8) {
        let w = self.frame.width as usize;
        self.pixels[y as usize * w + x as usize] = v;
    }

    /// Ink-on-paper rendering of a binary raster: foreground black on white.
    pub fn from_bitmap(bitmap: &Bitmap) -> Self {
        let pixels = bitmap
            .data
            .iter()
            .map(|&on| if on { 0 } else { 255 })
            .collect();
        Self {
            frame: bitmap.frame,
            pixels,
        }
    }

    /// Nearest-neighbour upscaling by an integer factor.
    pub fn upscale(&self, factor: u32) -> Self {
        let f = factor.max(1);
        let (w, h) = (self.width() * f, self.height() * f);
        let mut pixels = Vec::with_capacity(w as usize * h as usize);
        for y in 0..h {
            for x in 0..w {
                pixels.push(self.get(x / f, y / f));
            }
        }
        Self {
            frame: Frame {
                width: w,
                height: h,
            },
            pixels,
        }
    }
}

/// Binary raster; `true` is foreground.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitmap {
    frame: Frame,
    data: Vec<bool>,
}

impl Bitmap {
    pub fn new(frame: Frame) -> Self {
        Self {
            frame,
            data: vec![false; frame.pixel_count()],
        }
    }

    pub fn from_fn(frame: Frame, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut data = Vec::with_capacity(frame.pixel_count());
        for y in 0..frame.height {
            for x in 0..frame.width {
                data.push(f(x, y));
            }
        }
        Self { frame, data }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn width(&self) -> u32 {
        self.frame.width
    }

    pub fn height(&self) -> u32 {
        self.frame.height
    }

    pub fn get(&self, x: u32, y: u32) -> bool {
        self.data[y as usize * self.frame.width as usize + x as usize]
    }

    /// Out-of-range coordinates read as background.
    pub fn get_signed(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && x < i64::from(self.frame.width)
            && y < i64::from(self.frame.height)
            && self.get(x as u32, y as u32)
    }

    pub fn set(&mut self, x: u32, y: u32, v: bool) {
        let w = self.frame.width as usize;
        self.data[y as usize * w + x as usize] = v;
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// Intersection-over-union with another raster of the same size; two
    /// empty rasters have IoU 1.
    pub fn iou(&self, other: &Bitmap) -> f64 {
        assert_eq!(self.frame, other.frame, "IoU needs equal raster sizes");
        let (mut inter, mut union) = (0usize, 0usize);
        for (&a, &b) in self.data.iter().zip(&other.data) {
            inter += usize::from(a && b);
            union += usize::from(a || b);
        }
        if union == 0 {
            1.0
        } else {
            inter as f64 / union as f64
        }
    }
}
