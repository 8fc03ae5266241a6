use super::{centroid, wrap_angle, Point};
use crate::scalar::Scalar;

/// Total-least-squares line through a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit<T> {
    pub centroid: Point<T>,
    /// Unit direction, oriented so that the first input point projects
    /// before the last one.
    pub direction: Point<T>,
    /// Midpoint of the projected extent, on the fitted line.
    pub midpoint: Point<T>,
    /// Length of the projection of the points onto the line.
    pub extent: T,
    /// RMS perpendicular distance of the points to the line.
    pub residual: T,
}

impl<T: Scalar> LineFit<T> {
    /// Direction angle in `[0, 2π)`, image coordinates.
    pub fn angle(&self) -> T {
        wrap_angle(self.direction.y.atan2(self.direction.x))
    }

    pub fn start(&self) -> Point<T> {
        self.midpoint - self.direction.scale(self.extent / T::lit(2.0))
    }

    pub fn end(&self) -> Point<T> {
        self.midpoint + self.direction.scale(self.extent / T::lit(2.0))
    }
}

/// Fits a line by the principal axis of the point covariance.
///
/// Returns `None` when fewer than two points are given or all points
/// coincide.
pub fn fit_line<T: Scalar>(points: &[Point<T>]) -> Option<LineFit<T>> {
    if points.len() < 2 {
        return None;
    }
    let c = centroid(points)?;
    let (mut sxx, mut syy, mut sxy) = (T::zero(), T::zero(), T::zero());
    for &p in points {
        let d = p - c;
        sxx += d.x * d.x;
        syy += d.y * d.y;
        sxy += d.x * d.y;
    }
    if sxx + syy <= T::zero() {
        return None;
    }
    let theta = (sxy + sxy).atan2(sxx - syy) / T::lit(2.0);
    let mut dir = Point::new(theta.cos(), theta.sin());
    let span = points[points.len() - 1] - points[0];
    if span.dot(dir) < T::zero() {
        dir = dir.scale(-T::one());
    }
    let normal = Point::new(-dir.y, dir.x);

    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    let mut sq = T::zero();
    for &p in points {
        let d = p - c;
        let t = d.dot(dir);
        lo = lo.min(t);
        hi = hi.max(t);
        let e = d.dot(normal);
        sq += e * e;
    }
    let n = T::from_usize(points.len())?;
    let mid_t = (lo + hi) / T::lit(2.0);
    Some(LineFit {
        centroid: c,
        direction: dir,
        midpoint: c + dir.scale(mid_t),
        extent: hi - lo,
        residual: (sq / n).sqrt(),
    })
}
