//! Closed subintervals of `[0, 1]`.
//!
//! [`Interval`] is the value type every other module works with. Besides the
//! endpoint-wise arithmetic it carries the `K_α` / `λ_α` coordinate system:
//! `K_α` is a convex combination of the endpoints and `λ_α` is the width of
//! the interval relative to the widest interval that shares its `K_α` value.
//! The pair `(K_α, λ_α)` determines the interval, see [`Interval::from_k_lambda`].

mod order;

pub use order::{AdmissibleOrder, OrderKind, OrderParseError};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::format_sig;

/// Slack allowed on endpoint validation and comparison keys.
pub const TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval bounds [{lower}, {upper}] fall outside [0, 1]")]
    OutOfRange { lower: f64, upper: f64 },
    #[error("interval bounds are inverted: lower {lower} > upper {upper}")]
    Inverted { lower: f64, upper: f64 },
    #[error("interval bounds must be finite")]
    NotFinite,
    #[error("cannot parse interval from {0:?}; expected \"[lower,upper]\"")]
    Parse(String),
}

/// A closed interval `[lower, upper]` with `0 <= lower <= upper <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Interval {
    lower: f64,
    upper: f64,
}

impl Interval {
    /// `[0, 0]`, the bottom element of every admissible order.
    pub const ZERO: Interval = Interval {
        lower: 0.0,
        upper: 0.0,
    };
    /// `[1, 1]`, the top element of every admissible order.
    pub const ONE: Interval = Interval {
        lower: 1.0,
        upper: 1.0,
    };
    /// `[0, 1]`.
    pub const UNIT: Interval = Interval {
        lower: 0.0,
        upper: 1.0,
    };

    /// Builds an interval, accepting rounding noise up to [`TOLERANCE`].
    ///
    /// Bounds a hair outside `[0, 1]` are clamped and a tiny negative width is
    /// snapped to a degenerate interval. Anything beyond the tolerance is an
    /// error; values are never silently clamped into range.
    pub fn new(lower: f64, upper: f64) -> Result<Self, IntervalError> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(IntervalError::NotFinite);
        }
        let outside = |v: f64| v < -TOLERANCE || v > 1.0 + TOLERANCE;
        if outside(lower) || outside(upper) {
            return Err(IntervalError::OutOfRange { lower, upper });
        }
        if lower > upper + TOLERANCE {
            return Err(IntervalError::Inverted { lower, upper });
        }
        Ok(Self::clamped(lower, upper))
    }

    /// Degenerate interval `[x, x]`.
    pub fn degenerate(x: f64) -> Result<Self, IntervalError> {
        Self::new(x, x)
    }

    /// Clamps both bounds into `[0, 1]` and snaps inverted bounds to their
    /// midpoint. Only for values already known to be within rounding error.
    pub(crate) fn clamped(lower: f64, upper: f64) -> Self {
        let lower = lower.clamp(0.0, 1.0);
        let upper = upper.clamp(0.0, 1.0);
        if lower > upper {
            let mid = 0.5 * (lower + upper);
            Interval {
                lower: mid,
                upper: mid,
            }
        } else {
            Interval { lower, upper }
        }
    }

    #[inline]
    pub fn lower(self) -> f64 {
        self.lower
    }

    #[inline]
    pub fn upper(self) -> f64 {
        self.upper
    }

    #[inline]
    pub fn width(self) -> f64 {
        self.upper - self.lower
    }

    #[inline]
    pub fn is_degenerate(self) -> bool {
        self.lower == self.upper
    }

    /// Standard partial order: both endpoints are `<=`.
    #[inline]
    pub fn spo_le(self, other: Interval) -> bool {
        self.lower <= other.lower && self.upper <= other.upper
    }

    /// Endpoint-wise equality within `tol`.
    pub fn approx_eq(self, other: Interval, tol: f64) -> bool {
        (self.lower - other.lower).abs() <= tol && (self.upper - other.upper).abs() <= tol
    }

    /// `K_α(X) = (1 - α)·lower + α·upper`.
    #[inline]
    pub fn k_alpha(self, alpha: f64) -> f64 {
        (1.0 - alpha) * self.lower + alpha * self.upper
    }

    /// Width relative to the widest interval with the same `K_α` value.
    ///
    /// Degenerate intervals at the ends of the range, where that widest
    /// interval has zero width, get `λ = 1` (the `0/0 = 1` convention).
    pub fn lambda_alpha(self, alpha: f64) -> f64 {
        let d = d_alpha(alpha, self.k_alpha(alpha));
        if d <= 0.0 {
            1.0
        } else {
            (self.width() / d).clamp(0.0, 1.0)
        }
    }

    /// Inverse of `(K_α, λ_α)`: the interval with `K_α = c` and width
    /// `λ·d_α(c)`.
    pub fn from_k_lambda(alpha: f64, c: f64, lambda: f64) -> Self {
        let w = lambda * d_alpha(alpha, c);
        Self::clamped(c - alpha * w, c + (1.0 - alpha) * w)
    }

    /// Endpoint-wise sum. The result can leave `[0, 1]`; see [`IntervalSum::cap_one`].
    pub fn add(self, other: Interval) -> IntervalSum {
        IntervalSum {
            lower: self.lower + other.lower,
            upper: self.upper + other.upper,
        }
    }

    /// Product of two nonnegative intervals.
    pub fn mul(self, other: Interval) -> Interval {
        Interval {
            lower: self.lower * other.lower,
            upper: self.upper * other.upper,
        }
    }

    /// `1 - X = [1 - upper, 1 - lower]`.
    pub fn complement(self) -> Interval {
        Interval {
            lower: 1.0 - self.upper,
            upper: 1.0 - self.lower,
        }
    }

    pub fn square(self) -> Interval {
        Interval {
            lower: self.lower * self.lower,
            upper: self.upper * self.upper,
        }
    }

    pub fn sqrt(self) -> Interval {
        Interval {
            lower: self.lower.sqrt(),
            upper: self.upper.sqrt(),
        }
    }

    /// `c·X = [c·lower, c·upper]` for `c >= 0`; fails when the result leaves `[0, 1]`.
    pub fn scalar_mul(self, c: f64) -> Result<Interval, IntervalError> {
        if !c.is_finite() {
            return Err(IntervalError::NotFinite);
        }
        Interval::new(c * self.lower, c * self.upper)
    }

    /// `c ∧ X = [min(c, lower), min(c, upper)]`, taken endpoint-wise.
    pub fn scalar_min(self, c: f64) -> Interval {
        let c = c.max(0.0);
        Interval {
            lower: self.lower.min(c),
            upper: self.upper.min(c),
        }
    }

    /// Endpoint-wise arithmetic mean. `None` for an empty slice.
    pub fn mean(values: &[Interval]) -> Option<Interval> {
        if values.is_empty() {
            return None;
        }
        let sum: IntervalSum = values.iter().copied().sum();
        let n = values.len() as f64;
        Some(Interval::clamped(sum.lower / n, sum.upper / n))
    }
}

/// `d_α(c)`: the largest width of an interval `X` with `K_α(X) = c`.
///
/// Computed as `min(c/α, (1 - c)/(1 - α))` with the convention `r/0 = 1`.
pub fn d_alpha(alpha: f64, c: f64) -> f64 {
    let left = if alpha == 0.0 { 1.0 } else { c / alpha };
    let right = if alpha == 1.0 {
        1.0
    } else {
        (1.0 - c) / (1.0 - alpha)
    };
    left.min(right).max(0.0)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", format_sig(self.lower), format_sig(self.upper))
    }
}

impl FromStr for Interval {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IntervalError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        let lower: f64 = lo.trim().parse().map_err(|_| bad())?;
        let upper: f64 = hi.trim().parse().map_err(|_| bad())?;
        Interval::new(lower, upper)
    }
}

impl TryFrom<(f64, f64)> for Interval {
    type Error = IntervalError;

    fn try_from((lower, upper): (f64, f64)) -> Result<Self, Self::Error> {
        Interval::new(lower, upper)
    }
}

impl From<Interval> for (f64, f64) {
    fn from(x: Interval) -> Self {
        (x.lower, x.upper)
    }
}

/// Endpoint-wise sum of intervals; may exceed 1.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IntervalSum {
    pub lower: f64,
    pub upper: f64,
}

impl IntervalSum {
    /// `min{1, Σ}` applied to both endpoints.
    pub fn cap_one(self) -> Interval {
        Interval::clamped(self.lower.min(1.0), self.upper.min(1.0))
    }
}

impl std::iter::Sum<Interval> for IntervalSum {
    fn sum<I: Iterator<Item = Interval>>(iter: I) -> Self {
        iter.fold(IntervalSum::default(), |acc, x| IntervalSum {
            lower: acc.lower + x.lower,
            upper: acc.upper + x.upper,
        })
    }
}

/// Parses a whitespace separated list such as `"[0.1,0.2] [0.5,0.7]"`.
pub fn parse_interval_list(text: &str) -> Result<Vec<Interval>, IntervalError> {
    let mut out = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let end = rest
            .find(']')
            .ok_or_else(|| IntervalError::Parse(rest.to_string()))?;
        out.push(rest[..=end].parse()?);
        rest = rest[end + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(l: f64, u: f64) -> Interval {
        Interval::new(l, u).unwrap()
    }

    #[test]
    fn construction() {
        let x = iv(0.2, 0.5);
        assert_eq!((x.lower(), x.upper()), (0.2, 0.5));
        assert!(iv(0.3, 0.3).is_degenerate());
        assert!(matches!(
            Interval::new(0.5, 0.2),
            Err(IntervalError::Inverted { .. })
        ));
        assert!(matches!(
            Interval::new(-0.1, 0.2),
            Err(IntervalError::OutOfRange { .. })
        ));
        assert!(matches!(
            Interval::new(0.1, 1.5),
            Err(IntervalError::OutOfRange { .. })
        ));
        assert_eq!(Interval::new(f64::NAN, 0.2), Err(IntervalError::NotFinite));
    }

    #[test]
    fn rounding_noise_is_snapped() {
        let x = Interval::new(0.3 + 1e-14, 0.3).unwrap();
        assert!(x.is_degenerate());
        let y = Interval::new(-1e-13, 1.0 + 1e-13).unwrap();
        assert_eq!(y, Interval::UNIT);
    }

    #[test]
    fn width_values() {
        assert!((iv(0.2, 0.5).width() - 0.3).abs() < 1e-15);
        assert_eq!(iv(0.7, 0.7).width(), 0.0);
        assert_eq!(Interval::UNIT.width(), 1.0);
    }

    #[test]
    fn k_alpha_values() {
        assert!((iv(0.2, 0.4).k_alpha(0.5) - 0.3).abs() < 1e-15);
        assert_eq!(iv(0.2, 0.4).k_alpha(1.0), 0.4);
        assert_eq!(iv(0.2, 0.4).k_alpha(0.0), 0.2);
        for a in [0.0, 0.3, 0.5, 1.0] {
            assert!((iv(0.6, 0.6).k_alpha(a) - 0.6).abs() < 1e-15);
        }
    }

    #[test]
    fn d_alpha_values() {
        assert!((d_alpha(0.5, 0.3) - 0.6).abs() < 1e-15);
        assert!((d_alpha(0.0, 0.3) - 0.7).abs() < 1e-15);
        assert_eq!(d_alpha(0.5, 1.0), 0.0);
        assert!((d_alpha(1.0, 0.3) - 0.3).abs() < 1e-15);
    }

    #[test]
    fn lambda_alpha_values() {
        assert!((iv(0.2, 0.4).lambda_alpha(0.5) - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(Interval::ONE.lambda_alpha(0.5), 1.0);
        assert_eq!(Interval::ZERO.lambda_alpha(0.5), 1.0);
        assert_eq!(Interval::UNIT.lambda_alpha(0.5), 1.0);
    }

    #[test]
    fn from_k_lambda_values() {
        assert!(Interval::from_k_lambda(0.5, 0.3, 1.0 / 3.0).approx_eq(iv(0.2, 0.4), 1e-12));
        assert_eq!(Interval::from_k_lambda(0.25, 0.7, 0.0), iv(0.7, 0.7));
        assert_eq!(Interval::from_k_lambda(0.5, 0.5, 1.0), Interval::UNIT);
    }

    #[test]
    fn arithmetic_examples() {
        let x = iv(0.6, 0.8).mul(iv(0.5, 0.5).complement());
        assert!(x.approx_eq(iv(0.3, 0.4), 1e-15));
        assert!(iv(0.3, 0.5).square().approx_eq(iv(0.09, 0.25), 1e-15));
        assert_eq!(iv(0.7, 0.9).add(iv(0.5, 0.6)).cap_one(), Interval::ONE);
        assert!(iv(0.04, 0.25).sqrt().approx_eq(iv(0.2, 0.5), 1e-15));
        assert_eq!(iv(0.2, 0.9).scalar_min(0.5), iv(0.2, 0.5));
        assert!(iv(0.2, 0.4).scalar_mul(2.0).unwrap().approx_eq(iv(0.4, 0.8), 1e-15));
        assert!(matches!(
            iv(0.2, 0.6).scalar_mul(2.0),
            Err(IntervalError::OutOfRange { .. })
        ));
        assert_eq!(iv(0.2, 0.6).complement(), iv(0.4, 0.8));
    }

    #[test]
    fn mean_of_intervals() {
        let m = Interval::mean(&[iv(0.0, 0.0), iv(0.3, 0.4)]).unwrap();
        assert!(m.approx_eq(iv(0.15, 0.2), 1e-15));
        assert_eq!(Interval::mean(&[]), None);
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(iv(0.1, 0.2).to_string(), "[0.1,0.2]");
        assert_eq!(Interval::ONE.to_string(), "[1,1]");
        assert_eq!((iv(0.1, 0.2).lower() + 0.2).to_string(), "0.30000000000000004");
        let sum = Interval::clamped(0.1 + 0.2, 0.5);
        assert_eq!(sum.to_string(), "[0.3,0.5]");
        assert_eq!(" [0.25, 0.5] ".parse::<Interval>().unwrap(), iv(0.25, 0.5));
        assert!(matches!(
            "[0.5,0.2]".parse::<Interval>(),
            Err(IntervalError::Inverted { .. })
        ));
        assert!(matches!("0.5".parse::<Interval>(), Err(IntervalError::Parse(_))));
        let list = parse_interval_list("[0.1,0.2] [0.5,0.7],[0,1]").unwrap();
        assert_eq!(list, vec![iv(0.1, 0.2), iv(0.5, 0.7), Interval::UNIT]);
    }

    #[test]
    fn serde_round_trip() {
        let x = iv(0.25, 0.75);
        let text = serde_json::to_string(&x).unwrap();
        assert_eq!(text, "[0.25,0.75]");
        assert_eq!(serde_json::from_str::<Interval>(&text).unwrap(), x);
        assert!(serde_json::from_str::<Interval>("[0.8,0.1]").is_err());
    }
}
