//! Degree arithmetic for the obstruction bound on `n`-dimensional foliations.

/// `(n² + 2n, n² + 2)`: the top degree of the relevant cohomology and the
/// largest degree reachable from a proper subflag.
///
/// # Panics
/// If `n < 2`.
pub fn obstruction_bound(n: u64) -> (u64, u64) {
    assert!(n >= 2, "obstruction_bound needs n ≥ 2");
    (n * n + 2 * n, n * n + 2)
}

/// `(max_{0<d<n} (n−d)² + d² + 2n, the d attaining it)`.
pub fn subflag_degrees(n: u64) -> (u64, Vec<u64>) {
    let value = |d: u64| (n - d) * (n - d) + d * d + 2 * n;
    let max = (1..n).map(value).max().unwrap_or(0);
    (max, (1..n).filter(|&d| value(d) == max).collect())
}

/// Checks the closed form against enumeration.
pub fn obstruction_enumeration_holds(n: u64) -> bool {
    let (top, bound) = obstruction_bound(n);
    let (max, at) = subflag_degrees(n);
    max == bound && at.iter().all(|&d| d == 1 || d == n - 1) && top > bound
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(obstruction_bound(2), (8, 6));
        assert_eq!(obstruction_bound(3), (15, 11));
        assert_eq!(obstruction_bound(10), (120, 102));
        assert_eq!(subflag_degrees(10), (102, vec![1, 9]));
        assert!((2..=10).all(obstruction_enumeration_holds));
    }
}
