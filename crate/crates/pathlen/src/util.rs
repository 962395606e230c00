//! Small numeric helpers shared by the measure and enhancement modules.

/// Round to `digits` significant decimal digits. Infinities, zero and NaN
/// pass through unchanged.
pub(crate) fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().ceil() as i32;
    let factor = 10f64.powi(digits - magnitude);
    (x * factor).round() / factor
}

/// Indices attaining the maximum of `values` after rounding to 12
/// significant digits, which absorbs summation-order noise. Empty input
/// yields an empty set.
pub(crate) fn argmax_set(values: &[f64]) -> Vec<usize> {
    extremum_set(values, |a, b| a > b)
}

/// Indices attaining the minimum, with the same rounding.
pub(crate) fn argmin_set(values: &[f64]) -> Vec<usize> {
    extremum_set(values, |a, b| a < b)
}

fn extremum_set(values: &[f64], better: impl Fn(f64, f64) -> bool) -> Vec<usize> {
    let mut best = f64::NAN;
    let mut set = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let r = round_sig(v, 12);
        if set.is_empty() || better(r, best) {
            best = r;
            set.clear();
            set.push(i);
        } else if r == best {
            set.push(i);
        }
    }
    set
}
