//! Synthetic test images.
//!
//! A small anti-alias-free painter plus a seeded corpus of the figure
//! classes used to exercise the pipeline: dotted rows, arches, zigzags,
//! circle outlines, triangles and composites.

use std::f64::consts::{PI, TAU};

use crate::raster::{Frame, ImageRaster};

/// Black-on-white canvas; pixels whose centre falls in a shape are inked.
#[derive(Debug, Clone)]
pub struct Canvas {
    img: ImageRaster,
}

impl Canvas {
    pub fn new(width: u32, height: u32) -> Self {
        Self {
            img: ImageRaster::filled(width.max(1), height.max(1), 255).expect("non-zero size"),
        }
    }

    pub fn frame(&self) -> Frame {
        self.img.frame()
    }

    pub fn into_image(self) -> ImageRaster {
        self.img
    }

    fn paint(&mut self, bbox: (f64, f64, f64, f64), inside: impl Fn(f64, f64) -> bool) {
        let (w, h) = (f64::from(self.img.width()), f64::from(self.img.height()));
        let x0 = (bbox.0 - 1.0).floor().clamp(0.0, w) as u32;
        let y0 = (bbox.1 - 1.0).floor().clamp(0.0, h) as u32;
        let x1 = (bbox.2 + 1.0).ceil().clamp(0.0, w) as u32;
        let y1 = (bbox.3 + 1.0).ceil().clamp(0.0, h) as u32;
        for y in y0..y1 {
            for x in x0..x1 {
                if inside(f64::from(x) + 0.5, f64::from(y) + 0.5) {
                    self.img.set(x, y, 0);
                }
            }
        }
    }

    pub fn disc(&mut self, cx: f64, cy: f64, r: f64) -> &mut Self {
        self.paint((cx - r, cy - r, cx + r, cy + r), |x, y| {
            (x - cx).powi(2) + (y - cy).powi(2) <= r * r
        });
        self
    }

    /// Circle outline of centre-line radius `r` and stroke `width`.
    pub fn ring(&mut self, cx: f64, cy: f64, r: f64, width: f64) -> &mut Self {
        let hw = width / 2.0;
        self.paint(
            (cx - r - hw, cy - r - hw, cx + r + hw, cy + r + hw),
            |x, y| ((x - cx).hypot(y - cy) - r).abs() <= hw,
        );
        self
    }

    /// Axis-aligned ellipse outline, stroke measured along the normal
    /// (first-order).
    pub fn ellipse_ring(&mut self, cx: f64, cy: f64, a: f64, b: f64, width: f64) -> &mut Self {
        let hw = width / 2.0;
        self.paint(
            (cx - a - hw, cy - b - hw, cx + a + hw, cy + b + hw),
            |x, y| {
                let (u, v) = ((x - cx) / a, (y - cy) / b);
                let f = u * u + v * v - 1.0;
                let grad = 2.0 * ((u / a).powi(2) + (v / b).powi(2)).sqrt();
                (f / grad).abs() <= hw
            },
        );
        self
    }

    /// Round-capped straight stroke.
    pub fn stroke(&mut self, a: (f64, f64), b: (f64, f64), width: f64) -> &mut Self {
        let hw = width / 2.0;
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len2 = (dx * dx + dy * dy).max(1e-12);
        self.paint(
            (
                a.0.min(b.0) - hw,
                a.1.min(b.1) - hw,
                a.0.max(b.0) + hw,
                a.1.max(b.1) + hw,
            ),
            |x, y| {
                let t = (((x - a.0) * dx + (y - a.1) * dy) / len2).clamp(0.0, 1.0);
                (x - a.0 - t * dx).hypot(y - a.1 - t * dy) <= hw
            },
        );
        self
    }

    /// Connected round-capped strokes through `points`.
    pub fn polyline(&mut self, points: &[(f64, f64)], width: f64) -> &mut Self {
        for w in points.windows(2) {
            self.stroke(w[0], w[1], width);
        }
        self
    }

    /// Stroke along a circular arc from angle `a0` to `a1` (radians, image
    /// coordinates), round caps.
    pub fn arc(&mut self, cx: f64, cy: f64, r: f64, a0: f64, a1: f64, width: f64) -> &mut Self {
        let hw = width / 2.0;
        let (lo, hi) = (a0.min(a1), a0.max(a1));
        let mid = (lo + hi) / 2.0;
        let half = (hi - lo) / 2.0;
        let ends = [
            (cx + r * lo.cos(), cy + r * lo.sin()),
            (cx + r * hi.cos(), cy + r * hi.sin()),
        ];
        self.paint(
            (cx - r - hw, cy - r - hw, cx + r + hw, cy + r + hw),
            |x, y| {
                if ends.iter().any(|e| (x - e.0).hypot(y - e.1) <= hw) {
                    return true;
                }
                if ((x - cx).hypot(y - cy) - r).abs() > hw {
                    return false;
                }
                let rel = ((y - cy).atan2(x - cx) - mid + PI).rem_euclid(TAU) - PI;
                rel.abs() <= half
            },
        );
        self
    }

    /// Filled convex or concave polygon (even-odd rule).
    pub fn polygon(&mut self, pts: &[(f64, f64)]) -> &mut Self {
        if pts.len() < 3 {
            return self;
        }
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in pts {
            x0 = x0.min(p.0);
            y0 = y0.min(p.1);
            x1 = x1.max(p.0);
            y1 = y1.max(p.1);
        }
        self.paint((x0, y0, x1, y1), |x, y| {
            let mut inside = false;
            let mut j = pts.len() - 1;
            for i in 0..pts.len() {
                let (pi, pj) = (pts[i], pts[j]);
                if (pi.1 > y) != (pj.1 > y) && x < (pj.0 - pi.0) * (y - pi.1) / (pj.1 - pi.1) + pi.0
                {
                    inside = !inside;
                }
                j = i;
            }
            inside
        });
        self
    }
}

/// Figure classes of the synthetic corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureClass {
    DottedRow,
    Arch,
    Zigzag,
    CircleOutline,
    Triangle,
}

impl FigureClass {
    pub const ALL: [FigureClass; 5] = [
        FigureClass::DottedRow,
        FigureClass::Arch,
        FigureClass::Zigzag,
        FigureClass::CircleOutline,
        FigureClass::Triangle,
    ];
}

/// Deterministic generator (SplitMix64), so corpora do not depend on an
/// external RNG's stream stability.
#[derive(Debug, Clone)]
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}

/// A row of `n` small dots.
pub fn dotted_row(size: u32, n: usize, y_frac: f64, dot_diameter: f64) -> ImageRaster {
    let mut c = Canvas::new(size, size);
    let s = f64::from(size);
    for i in 0..n {
        let x = s * (0.15 + 0.7 * i as f64 / (n.max(2) - 1) as f64);
        c.disc(x, s * y_frac, dot_diameter / 2.0);
    }
    c.into_image()
}

/// Upward-bulging circular arch of the given sweep.
pub fn arch(size: u32, sweep: f64, width: f64) -> ImageRaster {
    let s = f64::from(size);
    let r = s * 0.35;
    let mut c = Canvas::new(size, size);
    let mid = -PI / 2.0;
    c.arc(
        s / 2.0,
        s * 0.62,
        r,
        mid - sweep / 2.0,
        mid + sweep / 2.0,
        width,
    );
    c.into_image()
}

/// Zigzag of `strokes` straight strokes.
pub fn zigzag(size: u32, strokes: usize, amplitude: f64, width: f64) -> ImageRaster {
    let s = f64::from(size);
    let pts: Vec<(f64, f64)> = (0..=strokes)
        .map(|i| {
            let x = s * (0.12 + 0.76 * i as f64 / strokes as f64);
            let y = s * 0.5
                + if i % 2 == 0 {
                    amplitude / 2.0
                } else {
                    -amplitude / 2.0
                };
            (x, y)
        })
        .collect();
    let mut c = Canvas::new(size, size);
    c.polyline(&pts, width);
    c.into_image()
}

/// Circle outline centred in the image.
pub fn circle_outline(size: u32, radius_frac: f64, width: f64) -> ImageRaster {
    let s = f64::from(size);
    let mut c = Canvas::new(size, size);
    c.ring(s / 2.0, s / 2.0, s * radius_frac, width);
    c.into_image()
}

/// Filled triangle.
pub fn triangle(size: u32, pts: [(f64, f64); 3]) -> ImageRaster {
    let s = f64::from(size);
    let mut c = Canvas::new(size, size);
    c.polygon(&pts.map(|(x, y)| (x * s, y * s)));
    c.into_image()
}

/// Ellipse outline enclosing a small dot and a filled triangle.
pub fn fish(size: u32) -> ImageRaster {
    let s = f64::from(size);
    let mut c = Canvas::new(size, size);
    c.ellipse_ring(s * 0.5, s * 0.5, s * 0.38, s * 0.24, s * 0.012);
    c.disc(s * 0.3, s * 0.45, s * 0.005);
    c.polygon(&[
        (s * 0.52, s * 0.4),
        (s * 0.72, s * 0.5),
        (s * 0.52, s * 0.6),
    ]);
    c.into_image()
}

/// Seeded member of a figure class with randomised geometry.
pub fn figure(class: FigureClass, size: u32, rng: &mut SplitMix64) -> ImageRaster {
    let s = f64::from(size);
    match class {
        FigureClass::DottedRow => {
            let n = 4 + (rng.next_u64() % 5) as usize;
            dotted_row(size, n, rng.range(0.25, 0.75), s * rng.range(0.006, 0.011))
        }
        FigureClass::Arch => arch(size, rng.range(1.6, 2.8), s * rng.range(0.01, 0.02)),
        FigureClass::Zigzag => {
            let n = 3 + (rng.next_u64() % 3) as usize;
            zigzag(
                size,
                n,
                s * rng.range(0.3, 0.5),
                s * rng.range(0.008, 0.016),
            )
        }
        FigureClass::CircleOutline => {
            circle_outline(size, rng.range(0.2, 0.38), s * rng.range(0.008, 0.016))
        }
        FigureClass::Triangle => {
            let jitter = |rng: &mut SplitMix64| rng.range(-0.05, 0.05);
            triangle(
                size,
                [
                    (0.5 + jitter(rng), 0.15 + jitter(rng)),
                    (0.85 + jitter(rng), 0.8 + jitter(rng)),
                    (0.15 + jitter(rng), 0.8 + jitter(rng)),
                ],
            )
        }
    }
}

/// `per_class` seeded figures of every class, in class order.
pub fn corpus(size: u32, per_class: usize, seed: u64) -> Vec<(FigureClass, ImageRaster)> {
    let mut rng = SplitMix64::new(seed);
    FigureClass::ALL
        .iter()
        .flat_map(|&class| (0..per_class).map(move |_| class))
        .map(|class| (class, figure(class, size, &mut rng)))
        .collect()
}
