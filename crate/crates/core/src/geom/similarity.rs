use crate::scalar::Scalar;

/// Cosine similarity of two non-negative vectors, clamped to `[0, 1]`.
///
/// Two zero vectors are treated as identical (1); a zero vector against a
/// non-zero one is unrelated (0). Slices of unequal length are compared
/// over their common prefix with the tail of the longer one counted in
/// its norm.
pub fn cosine_similarity<T: Scalar>(a: &[T], b: &[T]) -> T {
    let dot: T = a.iter().zip(b).map(|(&x, &y)| x * y).sum();
    let na: T = a.iter().map(|&x| x * x).sum();
    let nb: T = b.iter().map(|&x| x * x).sum();
    match (na > T::zero(), nb > T::zero()) {
        (false, false) => T::one(),
        (true, false) | (false, true) => T::zero(),
        (true, true) => (dot / (na * nb).sqrt()).max(T::zero()).min(T::one()),
    }
}
