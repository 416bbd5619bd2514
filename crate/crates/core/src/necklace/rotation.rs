/// Start index of the lexicographically least rotation of `s`.
///
/// Duval-style scan over `s + s`, linear in `s.len()`. Among equal least
/// rotations (periodic words) the smallest index is returned.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let at = |i: usize| &s[i % n];
    let mut i = 0;
    let mut start = 0;
    while i < n {
        start = i;
        let mut j = i + 1;
        let mut k = i;
        while j < 2 * n && at(k) <= at(j) {
            if at(k) < at(j) {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            i += j - k;
        }
    }
    start
}

/// `s` rotated to start at its least rotation.
pub fn canonical_rotation<T: Ord + Clone>(s: &[T]) -> Vec<T> {
    let start = least_rotation(s);
    s[start..].iter().chain(&s[..start]).cloned().collect()
}
