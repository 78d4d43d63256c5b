//! Scalar Sugeno integral and scalar FG-functional, used as oracles.

use super::FgError;
use crate::measure::{ScalarMeasure, Subset};

/// Ascending stable sort permutation and tail-set masks `E_{σ(i)}`.
fn tails(x: &[f64]) -> (Vec<usize>, Vec<Subset>) {
    let mut sigma: Vec<usize> = (0..x.len()).collect();
    sigma.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut masks = vec![Subset(0); x.len()];
    let mut mask = 0u64;
    for i in (0..x.len()).rev() {
        mask |= 1 << sigma[i];
        masks[i] = Subset(mask);
    }
    (sigma, masks)
}

fn check(mu: &ScalarMeasure, x: &[f64]) -> Result<(), FgError> {
    if x.is_empty() {
        return Err(FgError::EmptyInput);
    }
    if x.len() != mu.n() {
        return Err(FgError::LengthMismatch {
            expected: mu.n(),
            got: x.len(),
        });
    }
    Ok(())
}

/// `max_i min(x_{σ(i)}, μ(E_{σ(i)}))`.
pub fn scalar_sugeno(mu: &ScalarMeasure, x: &[f64]) -> Result<f64, FgError> {
    check(mu, x)?;
    let (sigma, masks) = tails(x);
    Ok(sigma
        .iter()
        .zip(&masks)
        .map(|(&i, &e)| x[i].min(mu.value(e)))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `G(F(x_{σ(1)}, μ(E_{σ(1)})), …, F(x_{σ(n)}, μ(E_{σ(n)})))` for a symmetric `μ`.
pub fn scalar_fg(
    mu: &ScalarMeasure,
    f: impl Fn(f64, f64) -> f64,
    g: impl Fn(&[f64]) -> f64,
    x: &[f64],
) -> Result<f64, FgError> {
    check(mu, x)?;
    if !mu.is_symmetric() {
        return Err(FgError::NonSymmetricMeasure);
    }
    let (sigma, masks) = tails(x);
    let terms: Vec<f64> = sigma
        .iter()
        .zip(&masks)
        .map(|(&i, &e)| f(x[i], mu.value(e)))
        .collect();
    Ok(g(&terms))
}
