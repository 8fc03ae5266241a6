//! Scalar-generic planar geometry: points, total-least-squares lines,
//! algebraic circle fits, polyline simplification and cosine similarity.

mod circle;
mod line;
mod similarity;
mod simplify;

pub use circle::{fit_circle_kasa, unwrapped_sweep, CircleFit};
pub use line::{fit_line, LineFit};
pub use similarity::cosine_similarity;
pub use simplify::{perpendicular_distance, simplify_rdp, simplify_rdp_indices};

use crate::scalar::Scalar;

/// A point in pixel space (x to the right, y downward).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> std::ops::Add for Point<T> {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        Self::new(self.x + other.x, self.y + other.y)
    }
}

impl<T: Scalar> std::ops::Sub for Point<T> {
    type Output = Self;

    fn sub(self, other: Self) -> Self {
        Self::new(self.x - other.x, self.y - other.y)
    }
}

impl<T: Scalar> Point<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Self) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.x * k, self.y * k)
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::lit(self.x.to_f64_lossy()), U::lit(self.y.to_f64_lossy()))
    }
}

/// Arithmetic mean of a non-empty point set.
pub fn centroid<T: Scalar>(points: &[Point<T>]) -> Option<Point<T>> {
    if points.is_empty() {
        return None;
    }
    let n = T::from_usize(points.len())?;
    let sx: T = points.iter().map(|p| p.x).sum();
    let sy: T = points.iter().map(|p| p.y).sum();
    Some(Point::new(sx / n, sy / n))
}

/// Axis-aligned extent `max(width, height)` of a point set.
pub fn bbox_extent<T: Scalar>(points: &[Point<T>]) -> T {
    let Some(first) = points.first() else {
        return T::zero();
    };
    let (mut x0, mut x1, mut y0, mut y1) = (first.x, first.x, first.y, first.y);
    for p in points {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    (x1 - x0).max(y1 - y0)
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle<T: Scalar>(a: T) -> T {
    let tau = T::TAU();
    let mut r = a % tau;
    if r < T::zero() {
        r += tau;
    }
    if r >= tau {
        r -= tau;
    }
    r
}
