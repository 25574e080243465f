//! t-fold repetition of the check parities with end-anchored majority voting.

/// Repeats every symbol `t` times.
pub fn rep_encode(bits: &[u8], t: usize) -> Vec<u8> {
    bits.iter().flat_map(|&b| std::iter::repeat(b).take(t)).collect()
}

/// Majority vote over `k_tilde` consecutive windows of size `t` taken from
/// the last `t * k_tilde` symbols of `y`. A short `y` is left-padded with zeros.
pub fn rep_decode(y: &[u8], k_tilde: usize, t: usize) -> Vec<u8> {
    assert!(t % 2 == 1, "repetition factor must be odd");
    let need = t * k_tilde;
    let mut tail = vec![0u8; need.saturating_sub(y.len())];
    tail.extend_from_slice(&y[y.len().saturating_sub(need)..]);
    tail.chunks(t)
        .map(|w| {
            let ones = w.iter().filter(|&&b| b == 1).count();
            (2 * ones > t) as u8
        })
        .collect()
}
