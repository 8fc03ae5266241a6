use super::{centroid, Point};
use crate::scalar::Scalar;

/// Algebraic circle fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit<T> {
    pub center: Point<T>,
    pub radius: T,
    /// RMS of `|p - center| - radius` over the fitted points.
    pub residual: T,
}

/// Kåsa circle fit: minimises `Σ (x² + y² + D x + E y + F)²`.
///
/// Data are centred and scaled before the 3×3 normal equations are solved,
/// which keeps the fit exact (to rounding) on noiseless samples. Returns
/// `None` for fewer than three points or a singular system (collinear or
/// coincident input).
pub fn fit_circle_kasa<T: Scalar>(points: &[Point<T>]) -> Option<CircleFit<T>> {
    if points.len() < 3 {
        return None;
    }
    let c = centroid(points)?;
    let n = T::from_usize(points.len())?;
    let spread: T = points.iter().map(|&p| (p - c).dot(p - c)).sum::<T>() / n;
    if spread <= T::zero() {
        return None;
    }
    let s = spread.sqrt();

    let (mut suu, mut svv, mut suv) = (T::zero(), T::zero(), T::zero());
    let (mut su, mut sv) = (T::zero(), T::zero());
    let (mut suz, mut svz, mut sz) = (T::zero(), T::zero(), T::zero());
    for p in points {
        let u = (p.x - c.x) / s;
        let v = (p.y - c.y) / s;
        let z = u * u + v * v;
        suu += u * u;
        svv += v * v;
        suv += u * v;
        su += u;
        sv += v;
        suz += u * z;
        svz += v * z;
        sz += z;
    }
    let a = [[suu, suv, su], [suv, svv, sv], [su, sv, n]];
    let b = [-suz, -svz, -sz];
    let [d, e, f] = solve3(a, b, T::lit(1e-10) * n)?;

    let cu = -d / T::lit(2.0);
    let cv = -e / T::lit(2.0);
    let r2 = cu * cu + cv * cv - f;
    if r2 <= T::zero() || !r2.is_finite() {
        return None;
    }
    let center = Point::new(c.x + cu * s, c.y + cv * s);
    let radius = r2.sqrt() * s;
    let sq: T = points
        .iter()
        .map(|p| {
            let e = p.distance(center) - radius;
            e * e
        })
        .sum();
    Some(CircleFit {
        center,
        radius,
        residual: (sq / n).sqrt(),
    })
}

/// Signed angle travelled around `center` when visiting `points` in order.
///
/// Consecutive steps are taken as the shortest turn, so samples must be
/// dense relative to the arc (less than half a turn apart).
pub fn unwrapped_sweep<T: Scalar>(points: &[Point<T>], center: Point<T>) -> T {
    let pi = T::PI();
    let tau = T::TAU();
    let mut total = T::zero();
    for w in points.windows(2) {
        let a0 = (w[0].y - center.y).atan2(w[0].x - center.x);
        let a1 = (w[1].y - center.y).atan2(w[1].x - center.x);
        let mut d = a1 - a0;
        if d > pi {
            d -= tau;
        } else if d < -pi {
            d += tau;
        }
        total += d;
    }
    total
}

/// Gaussian elimination with partial pivoting on a 3×3 system.
fn solve3<T: Scalar>(mut a: [[T; 3]; 3], mut b: [T; 3], min_pivot: T) -> Option<[T; 3]> {
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| {
            a[i][col]
                .abs()
                .partial_cmp(&a[j][col].abs())
                .unwrap_or(core::cmp::Ordering::Equal)
        })?;
        if a[pivot][col].abs() <= min_pivot {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..3 {
            let k = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (dst, &v) in a[row].iter_mut().zip(&pivot_row).skip(col) {
                *dst -= k * v;
            }
            let v = b[col];
            b[row] -= k * v;
        }
    }
    let mut x = [T::zero(); 3];
    for row in (0..3).rev() {
        let mut acc = b[row];
        for j in row + 1..3 {
            acc -= a[row][j] * x[j];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}
