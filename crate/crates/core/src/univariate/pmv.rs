use super::UnivariateError;

/// Generalized permanences minus variations of a sign sequence.
///
/// Consecutive nonzero entries `s_i`, `s_j` separated by `k = j - i`
/// positions contribute `(-1)^(k(k-1)/2) * sign(s_i * s_j)` when `k` is odd
/// and nothing when `k` is even. Trailing zeros are ignored.
pub fn generalized_pmv(signs: &[i8]) -> Result<i64, UnivariateError> {
    match signs.first() {
        None | Some(0) => return Err(UnivariateError::LeadingZero),
        _ => {}
    }
    let mut total = 0i64;
    let mut last = 0usize;
    for (j, &s) in signs.iter().enumerate().skip(1) {
        if s == 0 {
            continue;
        }
        let k = j - last;
        if k % 2 == 1 {
            let eps = if (k * (k - 1) / 2) % 2 == 0 { 1 } else { -1 };
            total += eps * (signs[last] * s) as i64;
        }
        last = j;
    }
    Ok(total)
}
