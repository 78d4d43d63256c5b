//! Numeric formatting shared by every textual output.

/// Significant digits used in CSV, JSON and terminal output.
pub const SIG_DIGITS: i32 = 12;

/// Formats `x` with at most [`SIG_DIGITS`] significant digits, trimming
/// trailing zeros: `0.1 + 0.2` prints as `0.3`, `1.0` as `1`.
pub fn format_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// `x` rounded to [`SIG_DIGITS`] significant digits, for serializers that
/// print the shortest round-trip representation.
pub fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_rounds() {
        assert_eq!(format_sig(0.1 + 0.2), "0.3");
        assert_eq!(format_sig(1.0), "1");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(-0.0), "0");
        assert_eq!(format_sig(0.25), "0.25");
        assert_eq!(format_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(format_sig(-0.125), "-0.125");
        assert_eq!(format_sig(1234.5), "1234.5");
        assert_eq!(format_sig(0.99999999999999), "1");
        assert_eq!(format_sig(1.5e-7), "0.00000015");
    }

    #[test]
    fn round_sig_matches_format() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(2.0 / 3.0), 0.666666666667);
    }
}
