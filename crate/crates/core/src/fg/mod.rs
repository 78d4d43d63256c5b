//! The interval-valued Sugeno-like FG-functional.
//!
//! For inputs `X_1, …, X_n` sorted ascending by an admissible order with
//! permutation `σ`, and tail sets `E_{σ(i)} = {σ(i), …, σ(n)}`,
//!
//! ```text
//! S_m^{F,G}(X) = G(F(X_{σ(1)}, m(E_{σ(1)})), …, F(X_{σ(n)}, m(E_{σ(n)})))
//! ```
//!
//! Ties in the sort are resolved by input index. Whether that choice matters
//! is decided by [`wds`]; a functional whose triple `(m, F, G)` fails the
//! check can only be built with [`FgFunctional::new_acknowledged`].

pub mod properties;
pub mod scalar;
pub mod wds;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::interval::{AdmissibleOrder, Interval};
use crate::measure::{IvFuzzyMeasure, MeasureError};
use crate::miv::MivSpec;

pub use properties::{property_suite, Counterexample, Property, PropertyReport, PropertyRow};
pub use scalar::{scalar_fg, scalar_sugeno};
pub use wds::{WdsFailure, WdsRule, WdsVerdict, WdsWitness};

/// Probes used by [`FgFunctional::new`] when no structural rule applies.
pub const DEFAULT_WDS_PROBES: usize = 2_000;

#[derive(Debug, Error)]
pub enum FgError {
    #[error("cannot aggregate an empty input")]
    EmptyInput,
    #[error("functional expects {expected} inputs, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the functional is not well-defined under ties: {0}")]
    NotWellDefined(WdsFailure),
    #[error("the scalar FG-functional needs a symmetric measure")]
    NonSymmetricMeasure,
    #[error("F = sna takes a scalar measure; the measure has non-degenerate values")]
    SnaNeedsScalarMeasure,
    #[error("explicit measure tables have a fixed arity ({0})")]
    FixedArity(usize),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

/// The function `F(X, Y)` applied to an input and a measure value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FPreset {
    /// `X ∧ Y` under the functional's order.
    Meet,
    /// `X²Y + X(1 − Y)`.
    Sugeno1,
    /// `X(1 − Y)`.
    Sugeno2,
    /// `X(1 − y)` for a scalar measure value `y`.
    Sna,
    Miv(MivSpec),
}

/// `f(x, y) = x²y + x(1 − y)`, nondecreasing in `x`, nonincreasing in `y`.
#[inline]
fn sugeno1_scalar(x: f64, y: f64) -> f64 {
    x * x * y + x * (1.0 - y)
}

impl FPreset {
    /// Interval semantics of the scalar formulas is the monotone extension
    /// `[f(X̲, Ȳ), f(X̄, Y̲)]`, exact on degenerate inputs.
    #[inline]
    pub fn apply(&self, ord: &AdmissibleOrder, x: Interval, y: Interval) -> Interval {
        match self {
            FPreset::Meet => ord.min(x, y),
            FPreset::Sugeno1 => Interval::clamped(
                sugeno1_scalar(x.lower(), y.upper()),
                sugeno1_scalar(x.upper(), y.lower()),
            ),
            FPreset::Sugeno2 | FPreset::Sna => x.mul(y.complement()),
            FPreset::Miv(spec) => spec.apply2(x, y),
        }
    }

    pub fn name(&self) -> String {
        match self {
            FPreset::Meet => "meet".into(),
            FPreset::Sugeno1 => "sugeno1".into(),
            FPreset::Sugeno2 => "sugeno2".into(),
            FPreset::Sna => "sna".into(),
            FPreset::Miv(spec) => spec.to_string(),
        }
    }

    /// Nondecreasing in the measure argument, under `ord`.
    pub fn nondecreasing_in_second(&self, ord: &AdmissibleOrder) -> bool {
        match self {
            FPreset::Meet => true,
            FPreset::Sugeno1 | FPreset::Sugeno2 | FPreset::Sna => false,
            FPreset::Miv(spec) => ord.is_alpha_family(spec.alpha()) && spec.nondecreasing_in(1),
        }
    }
}

/// Outer map `f` in `G = f ∘ ∨` or `G = f ∘ Proj_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outer {
    Identity,
    Square,
    Sqrt,
}

impl Outer {
    #[inline]
    pub fn apply(self, x: Interval) -> Interval {
        match self {
            Outer::Identity => x,
            Outer::Square => x.square(),
            Outer::Sqrt => x.sqrt(),
        }
    }
}

/// The n-ary function `G` folding the F-terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregator {
    /// `f(∨ terms)` with the order's join.
    Max(Outer),
    /// `f(first term)`.
    Proj1(Outer),
    /// Endpoint-wise arithmetic mean.
    Mean,
    /// `min{𝟏, Σ terms}` endpoint-wise.
    CappedSum,
}

impl Aggregator {
    pub fn apply(&self, ord: &AdmissibleOrder, terms: &[Interval]) -> Option<Interval> {
        match self {
            Aggregator::Max(f) => ord.max_of(terms).map(|x| f.apply(x)),
            Aggregator::Proj1(f) => terms.first().map(|&x| f.apply(x)),
            Aggregator::Mean => Interval::mean(terms),
            Aggregator::CappedSum => {
                if terms.is_empty() {
                    None
                } else {
                    Some(terms.iter().copied().sum::<crate::interval::IntervalSum>().cap_one())
                }
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Aggregator::Max(Outer::Identity) => "max",
            Aggregator::Max(Outer::Square) => "max-square",
            Aggregator::Max(Outer::Sqrt) => "max-sqrt",
            Aggregator::Proj1(Outer::Identity) => "proj1",
            Aggregator::Proj1(Outer::Square) => "proj1-square",
            Aggregator::Proj1(Outer::Sqrt) => "proj1-sqrt",
            Aggregator::Mean => "mean",
            Aggregator::CappedSum => "capped-sum",
        }
    }
}

/// Intermediate values of one evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationTrace {
    /// 0-based permutation sorting the inputs ascending.
    pub sigma: Vec<usize>,
    pub sorted: Vec<Interval>,
    /// `m(E_{σ(i)})`.
    pub measures: Vec<Interval>,
    /// `F(X_{σ(i)}, m(E_{σ(i)}))`.
    pub terms: Vec<Interval>,
    pub result: Interval,
}

/// A measure, an order, `F` and `G`, checked for well-definedness.
#[derive(Debug, Clone)]
pub struct FgFunctional {
    measure: IvFuzzyMeasure,
    order: AdmissibleOrder,
    f: FPreset,
    g: Aggregator,
    wds: WdsVerdict,
}

impl FgFunctional {
    /// Builds the functional, failing when ties make the value ambiguous.
    pub fn new(
        measure: IvFuzzyMeasure,
        order: AdmissibleOrder,
        f: FPreset,
        g: Aggregator,
    ) -> Result<Self, FgError> {
        Self::with_probes(measure, order, f, g, DEFAULT_WDS_PROBES, 0)
    }

    /// [`new`](Self::new) with an explicit probe budget and seed for the
    /// randomized part of the well-definedness check.
    pub fn with_probes(
        measure: IvFuzzyMeasure,
        order: AdmissibleOrder,
        f: FPreset,
        g: Aggregator,
        probes: usize,
        seed: u64,
    ) -> Result<Self, FgError> {
        let fg = Self::unchecked(measure, order, f, g)?;
        match wds::check(&fg, probes, seed) {
            WdsVerdict::Fail(failure) => Err(FgError::NotWellDefined(failure)),
            verdict => Ok(Self { wds: verdict, ..fg }),
        }
    }

    /// Builds the functional even if it fails the well-definedness check.
    /// Evaluation then uses the index-stable sort and the result is flagged.
    pub fn new_acknowledged(
        measure: IvFuzzyMeasure,
        order: AdmissibleOrder,
        f: FPreset,
        g: Aggregator,
    ) -> Result<Self, FgError> {
        let fg = Self::unchecked(measure, order, f, g)?;
        let verdict = wds::check(&fg, DEFAULT_WDS_PROBES, 0);
        if let WdsVerdict::Fail(failure) = &verdict {
            log::warn!("evaluating a functional that is not well-defined: {failure}");
        }
        Ok(Self { wds: verdict, ..fg })
    }

    fn unchecked(
        measure: IvFuzzyMeasure,
        order: AdmissibleOrder,
        f: FPreset,
        g: Aggregator,
    ) -> Result<Self, FgError> {
        if f == FPreset::Sna && !measure.is_degenerate_valued() {
            return Err(FgError::SnaNeedsScalarMeasure);
        }
        Ok(Self {
            measure,
            order,
            f,
            g,
            wds: WdsVerdict::Structural(WdsRule::SymmetricMeasure),
        })
    }

    /// Cardinality measure, `F = X²Y + X(1 − Y)`, `G` = mean.
    pub fn iv_sugeno1(n: usize) -> Result<Self, FgError> {
        Self::preset(n, FPreset::Sugeno1, Aggregator::Mean)
    }

    /// Cardinality measure, `F = X(1 − Y)`, `G` = mean.
    pub fn iv_sugeno2(n: usize) -> Result<Self, FgError> {
        Self::preset(n, FPreset::Sugeno2, Aggregator::Mean)
    }

    /// Cardinality measure, `F = ∧`, `G = ∨`.
    pub fn iv_sugeno3(n: usize) -> Result<Self, FgError> {
        Self::preset(n, FPreset::Meet, Aggregator::Max(Outer::Identity))
    }

    /// Cardinality measure, `F = X(1 − y)`, `G = min{𝟏, Σ}`: the functional
    /// behind the network centralities.
    pub fn network(n: usize) -> Result<Self, FgError> {
        Self::preset(n, FPreset::Sna, Aggregator::CappedSum)
    }

    fn preset(n: usize, f: FPreset, g: Aggregator) -> Result<Self, FgError> {
        Self::new(
            IvFuzzyMeasure::cardinality(n)?,
            AdmissibleOrder::default(),
            f,
            g,
        )
    }

    /// The same functional on `n` inputs. Only closed-form measures can
    /// change arity.
    pub fn with_arity(&self, n: usize) -> Result<Self, FgError> {
        if n == self.measure.n() {
            return Ok(self.clone());
        }
        let measure = self
            .measure
            .with_arity(n)
            .ok_or(FgError::FixedArity(self.measure.n()))??;
        if self.is_flagged() {
            Self::new_acknowledged(measure, self.order, self.f, self.g)
        } else {
            Self::new(measure, self.order, self.f, self.g)
        }
    }

    pub fn measure(&self) -> &IvFuzzyMeasure {
        &self.measure
    }

    pub fn order(&self) -> &AdmissibleOrder {
        &self.order
    }

    pub fn f(&self) -> &FPreset {
        &self.f
    }

    pub fn g(&self) -> &Aggregator {
        &self.g
    }

    pub fn arity(&self) -> usize {
        self.measure.n()
    }

    pub fn wds(&self) -> &WdsVerdict {
        &self.wds
    }

    /// True when the functional failed the well-definedness check and was
    /// built through [`new_acknowledged`](Self::new_acknowledged).
    pub fn is_flagged(&self) -> bool {
        matches!(self.wds, WdsVerdict::Fail(_))
    }

    #[inline]
    pub fn apply_f(&self, x: Interval, y: Interval) -> Interval {
        self.f.apply(&self.order, x, y)
    }

    pub fn apply_g(&self, terms: &[Interval]) -> Option<Interval> {
        self.g.apply(&self.order, terms)
    }

    fn check_len(&self, xs: &[Interval]) -> Result<(), FgError> {
        if xs.is_empty() {
            return Err(FgError::EmptyInput);
        }
        if xs.len() != self.measure.n() {
            return Err(FgError::LengthMismatch {
                expected: self.measure.n(),
                got: xs.len(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, xs: &[Interval]) -> Result<Interval, FgError> {
        self.check_len(xs)?;
        let sigma = self.order.sort_permutation(xs);
        Ok(self.fold(xs, &sigma))
    }

    pub fn evaluate_traced(&self, xs: &[Interval]) -> Result<EvaluationTrace, FgError> {
        self.check_len(xs)?;
        let (sorted, sigma) = self.order.sort(xs);
        let measures = self.measure.tail_values(&sigma);
        let terms: Vec<Interval> = sorted
            .iter()
            .zip(&measures)
            .map(|(&x, &m)| self.apply_f(x, m))
            .collect();
        let result = self.apply_g(&terms).ok_or(FgError::EmptyInput)?;
        Ok(EvaluationTrace {
            sigma,
            sorted,
            measures,
            terms,
            result,
        })
    }

    /// Evaluates with a caller-supplied 0-based permutation `σ`, which should
    /// sort `xs` ascending. Used to compare the admissible tie orderings.
    pub fn evaluate_with_permutation(
        &self,
        xs: &[Interval],
        sigma: &[usize],
    ) -> Result<Interval, FgError> {
        self.check_len(xs)?;
        if sigma.len() != xs.len() {
            return Err(FgError::LengthMismatch {
                expected: xs.len(),
                got: sigma.len(),
            });
        }
        Ok(self.fold(xs, sigma))
    }

    #[inline]
    fn fold(&self, xs: &[Interval], sigma: &[usize]) -> Interval {
        let measures = self.measure.tail_values(sigma);
        let terms: Vec<Interval> = sigma
            .iter()
            .zip(&measures)
            .map(|(&i, &m)| self.apply_f(xs[i], m))
            .collect();
        self.apply_g(&terms).expect("non-empty terms")
    }
}

impl fmt::Display for FgFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "S[m={}, order={}, F={}, G={}]",
            self.measure.describe(),
            self.order,
            self.f.name(),
            self.g.name()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(l: f64, u: f64) -> Interval {
        Interval::new(l, u).unwrap()
    }

    #[test]
    fn iv_sugeno3_example() {
        let fg = FgFunctional::iv_sugeno3(2).unwrap();
        let trace = fg.evaluate_traced(&[iv(0.1, 0.2), iv(0.5, 0.7)]).unwrap();
        assert_eq!(trace.sigma, vec![0, 1]);
        assert_eq!(trace.terms, vec![iv(0.1, 0.2), iv(0.5, 0.5)]);
        assert_eq!(trace.result, iv(0.5, 0.5));
    }

    #[test]
    fn iv_sugeno2_example() {
        let fg = FgFunctional::iv_sugeno2(2).unwrap();
        let y = fg.evaluate(&[iv(0.2, 0.4), iv(0.6, 0.8)]).unwrap();
        assert!(y.approx_eq(iv(0.15, 0.2), 1e-15), "{y}");
    }

    #[test]
    fn sugeno1_monotone_extension() {
        let ord = AdmissibleOrder::default();
        let y = FPreset::Sugeno1.apply(&ord, iv(0.5, 0.5), iv(0.5, 0.5));
        // 0.25·0.5 + 0.5·0.5
        assert!(y.approx_eq(iv(0.375, 0.375), 1e-15));
        let z = FPreset::Sugeno1.apply(&ord, iv(0.2, 0.6), iv(0.3, 0.5));
        let lo = 0.04 * 0.5 + 0.2 * 0.5;
        let hi = 0.36 * 0.3 + 0.6 * 0.7;
        assert!(z.approx_eq(iv(lo, hi), 1e-15));
    }

    #[test]
    fn errors() {
        let fg = FgFunctional::iv_sugeno3(2).unwrap();
        assert!(matches!(fg.evaluate(&[]), Err(FgError::EmptyInput)));
        assert!(matches!(
            fg.evaluate(&[iv(0.1, 0.2)]),
            Err(FgError::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn single_input_uses_full_measure() {
        let fg = FgFunctional::iv_sugeno3(1).unwrap();
        assert_eq!(fg.evaluate(&[iv(0.3, 0.3)]).unwrap(), iv(0.3, 0.3));
    }

    #[test]
    fn network_functional_example() {
        let fg = FgFunctional::network(2).unwrap();
        let y = fg.evaluate(&[iv(0.5, 1.0), iv(0.5, 1.0)]).unwrap();
        assert!(y.approx_eq(iv(0.25, 0.5), 1e-15));
    }

    #[test]
    fn arity_changes_for_families_only() {
        let fg = FgFunctional::iv_sugeno1(3).unwrap();
        assert_eq!(fg.with_arity(5).unwrap().arity(), 5);
        let table = IvFuzzyMeasure::from_table(
            2,
            vec![Interval::ZERO, iv(0.2, 0.2), iv(0.8, 0.8), Interval::ONE],
        )
        .unwrap();
        let fixed = FgFunctional::new(
            table,
            AdmissibleOrder::default(),
            FPreset::Meet,
            Aggregator::Max(Outer::Identity),
        )
        .unwrap();
        assert!(matches!(fixed.with_arity(3), Err(FgError::FixedArity(2))));
    }

    #[test]
    fn sna_rejects_interval_measures() {
        let table = IvFuzzyMeasure::from_table(
            1,
            vec![Interval::ZERO, Interval::ONE],
        )
        .unwrap();
        assert!(FgFunctional::new(table, AdmissibleOrder::default(), FPreset::Sna, Aggregator::CappedSum).is_ok());
        let table = IvFuzzyMeasure::from_table(
            2,
            vec![Interval::ZERO, iv(0.1, 0.3), iv(0.2, 0.2), Interval::ONE],
        )
        .unwrap();
        assert!(matches!(
            FgFunctional::new(table, AdmissibleOrder::default(), FPreset::Sna, Aggregator::CappedSum),
            Err(FgError::SnaNeedsScalarMeasure)
        ));
    }
}
