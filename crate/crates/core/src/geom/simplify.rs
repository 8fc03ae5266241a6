use super::Point;
use crate::scalar::Scalar;

/// Distance from `p` to the segment `a`–`b` (to `a` when the segment is a
/// single point).
pub fn perpendicular_distance<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> T {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 <= T::zero() {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).max(T::zero()).min(T::one());
    p.distance(a + ab.scale(t))
}

/// Ramer–Douglas–Peucker simplification; returns the indices of the kept
/// points (always including both endpoints).
pub fn simplify_rdp_indices<T: Scalar>(points: &[Point<T>], tolerance: T) -> Vec<usize> {
    match points.len() {
        0 => return Vec::new(),
        1 => return vec![0],
        _ => {}
    }
    let mut keep = vec![false; points.len()];
    keep[0] = true;
    keep[points.len() - 1] = true;
    let mut stack = vec![(0usize, points.len() - 1)];
    while let Some((lo, hi)) = stack.pop() {
        if hi <= lo + 1 {
            continue;
        }
        let (a, b) = (points[lo], points[hi]);
        let mut best = lo;
        let mut best_d = T::zero();
        for (i, p) in points.iter().enumerate().take(hi).skip(lo + 1) {
            let d = perpendicular_distance(*p, a, b);
            if d > best_d {
                best_d = d;
                best = i;
            }
        }
        if best_d > tolerance {
            keep[best] = true;
            stack.push((lo, best));
            stack.push((best, hi));
        }
    }
    keep.iter()
        .enumerate()
        .filter_map(|(i, &k)| k.then_some(i))
        .collect()
}

/// Ramer–Douglas–Peucker simplification of an open chain.
pub fn simplify_rdp<T: Scalar>(points: &[Point<T>], tolerance: T) -> Vec<Point<T>> {
    simplify_rdp_indices(points, tolerance)
        .into_iter()
        .map(|i| points[i])
        .collect()
}
