//! Desk-scale proxies for asymptotic statements about sequences.

/// Fewest points a monotone tail must have to count.
pub const MIN_TAIL: usize = 3;

/// Index where the range `0..len` is split into first and last halves.
pub fn half_split(len: usize) -> usize {
    len / 2
}

/// Max over a slice, `-inf` when empty. NaNs are skipped.
pub fn sup(values: &[f64]) -> f64 {
    values.iter().copied().filter(|v| !v.is_nan()).fold(f64::NEG_INFINITY, f64::max)
}

/// First `n` of the longest strictly decreasing tail of the finite entries,
/// provided that tail has at least [`MIN_TAIL`] points.
pub fn decreasing_from(seq: &[(u64, f64)]) -> Option<u64> {
    monotone_tail(seq, |a, b| a > b)
}

/// As [`decreasing_from`], for strictly increasing tails.
pub fn increasing_from(seq: &[(u64, f64)]) -> Option<u64> {
    monotone_tail(seq, |a, b| a < b)
}

fn monotone_tail(seq: &[(u64, f64)], ordered: impl Fn(f64, f64) -> bool) -> Option<u64> {
    let finite: Vec<(u64, f64)> = seq.iter().copied().filter(|(_, v)| v.is_finite()).collect();
    let last = finite.len().checked_sub(1)?;
    let mut start = last;
    while start > 0 && ordered(finite[start - 1].1, finite[start].1) {
        start -= 1;
    }
    (finite.len() - start >= MIN_TAIL).then(|| finite[start].0)
}

/// Whether consecutive values are strictly increasing.
pub fn strictly_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}
