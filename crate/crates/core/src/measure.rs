//! Scalar and interval-valued fuzzy measures on subsets of `{1, …, n}`.
//!
//! Subsets are bitmasks: bit `i` stands for element `i + 1`.

use std::fmt;
use std::io::Read;
use std::path::Path;

use rand::Rng;
use thiserror::Error;

use crate::interval::{AdmissibleOrder, Interval, IntervalError};

/// Largest ground set for which a measure can be stored as a full table.
pub const MAX_TABLE_N: usize = 24;

/// Largest ground set for scalar measures, whose subsets are `u64` masks.
/// Interval-valued closed forms have no limit.
pub const MAX_N: usize = 63;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("a fuzzy measure needs a non-empty ground set")]
    EmptyGroundSet,
    #[error("ground set of size {0} exceeds the limit of {MAX_N}")]
    GroundSetTooLarge(usize),
    #[error("power measure exponent must be positive and finite (got {0})")]
    InvalidExponent(f64),
    #[error("explicit tables support n <= {MAX_TABLE_N} (got n = {0})")]
    TableTooLarge(usize),
    #[error("table for n = {n} needs {expected} entries (got {got})")]
    TableSize { n: usize, expected: usize, got: usize },
    #[error("scalar measure value {0} is outside [0, 1]")]
    ValueOutOfRange(f64),
    #[error("invalid subset bitstring {0:?}")]
    BadSubset(String),
    #[error("subset {0} appears more than once")]
    DuplicateSubset(Subset),
    #[error("subset {0} is missing from the table")]
    MissingSubset(Subset),
    #[error("invalid measure value: {0}")]
    Interval(#[from] IntervalError),
    #[error("measure CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot read measure file: {0}")]
    Io(#[from] std::io::Error),
}

/// A subset of `{1, …, n}` stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    /// 1-based elements in increasing order.
    pub fn elements(self) -> Vec<usize> {
        (0..64).filter(|i| self.0 >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_nonempty(n: usize) -> Result<(), MeasureError> {
    if n == 0 {
        Err(MeasureError::EmptyGroundSet)
    } else {
        Ok(())
    }
}

fn check_n(n: usize) -> Result<(), MeasureError> {
    if n == 0 {
        Err(MeasureError::EmptyGroundSet)
    } else if n > MAX_N {
        Err(MeasureError::GroundSetTooLarge(n))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Cardinality,
    Power(f64),
    Table(Vec<Interval>),
}

/// Outcome of [`IvFuzzyMeasure::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureValidation {
    Valid,
    /// `m(∅)` is not `[0,0]`.
    BoundaryEmpty(Interval),
    /// `m(N)` is not `[1,1]`.
    BoundaryFull(Interval),
    /// `smaller ⊂ larger` but `m(smaller)` is above `m(larger)`.
    Monotonicity { smaller: Subset, larger: Subset },
}

impl MeasureValidation {
    pub fn is_valid(&self) -> bool {
        matches!(self, MeasureValidation::Valid)
    }
}

impl fmt::Display for MeasureValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureValidation::Valid => write!(f, "valid"),
            MeasureValidation::BoundaryEmpty(v) => write!(f, "m(∅) = {v}, expected [0,0]"),
            MeasureValidation::BoundaryFull(v) => write!(f, "m(N) = {v}, expected [1,1]"),
            MeasureValidation::Monotonicity { smaller, larger } => {
                write!(f, "monotonicity violated: m({smaller}) above m({larger})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSymmetryReport {
    pub symmetric: bool,
    /// Two sets of equal size with different measure values.
    pub witness: Option<(Subset, Subset)>,
}

/// Interval-valued fuzzy measure `m: 2^N → L([0,1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct IvFuzzyMeasure {
    n: usize,
    repr: Repr,
}

impl IvFuzzyMeasure {
    /// `m(A) = [|A|/n, |A|/n]`.
    pub fn cardinality(n: usize) -> Result<Self, MeasureError> {
        check_nonempty(n)?;
        Ok(Self {
            n,
            repr: Repr::Cardinality,
        })
    }

    /// `m(A) = [(|A|/n)^p, (|A|/n)^p]`.
    pub fn power(n: usize, p: f64) -> Result<Self, MeasureError> {
        check_nonempty(n)?;
        if !(p.is_finite() && p > 0.0) {
            return Err(MeasureError::InvalidExponent(p));
        }
        Ok(Self {
            n,
            repr: Repr::Power(p),
        })
    }

    /// Explicit table indexed by subset mask. Monotonicity and boundary
    /// values are not enforced here; see [`validate`](Self::validate).
    pub fn from_table(n: usize, values: Vec<Interval>) -> Result<Self, MeasureError> {
        check_n(n)?;
        if n > MAX_TABLE_N {
            return Err(MeasureError::TableTooLarge(n));
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(MeasureError::TableSize {
                n,
                expected,
                got: values.len(),
            });
        }
        Ok(Self {
            n,
            repr: Repr::Table(values),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(Subset) -> Interval) -> Result<Self, MeasureError> {
        check_n(n)?;
        if n > MAX_TABLE_N {
            return Err(MeasureError::TableTooLarge(n));
        }
        let values = (0..1u64 << n).map(|mask| f(Subset(mask))).collect();
        Self::from_table(n, values)
    }

    /// Random monotone measure under `ord`: raw random values are raised to
    /// the order-maximum of their immediate subsets, then the boundary values
    /// are fixed.
    pub fn random_monotone<R: Rng + ?Sized>(
        n: usize,
        ord: &AdmissibleOrder,
        rng: &mut R,
    ) -> Result<Self, MeasureError> {
        Self::random_monotone_with(n, ord, rng, |rng| crate::sample::interval(rng))
    }

    /// Random monotone measure with degenerate values.
    pub fn random_degenerate<R: Rng + ?Sized>(
        n: usize,
        rng: &mut R,
    ) -> Result<Self, MeasureError> {
        Self::random_monotone_with(n, &AdmissibleOrder::default(), rng, |rng| {
            let x = crate::sample::unit(rng);
            Interval::clamped(x, x)
        })
    }

    fn random_monotone_with<R: Rng + ?Sized>(
        n: usize,
        ord: &AdmissibleOrder,
        rng: &mut R,
        mut draw: impl FnMut(&mut R) -> Interval,
    ) -> Result<Self, MeasureError> {
        check_n(n)?;
        if n > MAX_TABLE_N {
            return Err(MeasureError::TableTooLarge(n));
        }
        let size = 1usize << n;
        let mut values = vec![Interval::ZERO; size];
        for mask in 1..size {
            let mut v = draw(rng);
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    v = ord.max(v, values[mask & !(1 << i)]);
                }
            }
            values[mask] = v;
        }
        values[size - 1] = Interval::ONE;
        Self::from_table(n, values)
    }

    /// Loads a table from CSV with columns `subset,lower,upper`, where
    /// `subset` is a bitstring whose `i`-th character marks element `i + 1`.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self, MeasureError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut rows: Vec<(u64, Interval)> = Vec::new();
        let mut n: Option<usize> = None;
        for record in rdr.records() {
            let record = record?;
            let bits = record.get(0).unwrap_or("");
            let parse = |idx: usize| -> Result<f64, MeasureError> {
                record
                    .get(idx)
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| MeasureError::BadSubset(format!("{bits}: bad value column {idx}")))
            };
            if bits.is_empty() || bits.chars().any(|c| c != '0' && c != '1') {
                return Err(MeasureError::BadSubset(bits.to_string()));
            }
            match n {
                None => n = Some(bits.len()),
                Some(k) if k != bits.len() => return Err(MeasureError::BadSubset(bits.to_string())),
                _ => {}
            }
            if bits.len() > MAX_TABLE_N {
                return Err(MeasureError::TableTooLarge(bits.len()));
            }
            let mask = bits
                .chars()
                .enumerate()
                .filter(|(_, c)| *c == '1')
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            rows.push((mask, Interval::new(parse(1)?, parse(2)?)?));
        }
        let n = n.ok_or(MeasureError::EmptyGroundSet)?;
        let size = 1usize << n;
        let mut values: Vec<Option<Interval>> = vec![None; size];
        for (mask, v) in rows {
            let slot = &mut values[mask as usize];
            if slot.is_some() {
                return Err(MeasureError::DuplicateSubset(Subset(mask)));
            }
            *slot = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(mask, v)| v.ok_or(MeasureError::MissingSubset(Subset(mask as u64))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_table(n, values)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self, MeasureError> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether the value depends on cardinality only by construction.
    pub fn is_family(&self) -> bool {
        !matches!(self.repr, Repr::Table(_))
    }

    /// The same family on a different ground set, or `None` for tables.
    pub fn with_arity(&self, n: usize) -> Option<Result<Self, MeasureError>> {
        match self.repr {
            Repr::Cardinality => Some(Self::cardinality(n)),
            Repr::Power(p) => Some(Self::power(n, p)),
            Repr::Table(_) => None,
        }
    }

    /// Family description used in reports.
    pub fn describe(&self) -> String {
        match &self.repr {
            Repr::Cardinality => format!("cardinality:{}", self.n),
            Repr::Power(p) => format!("power:{},{}", self.n, crate::format_sig(*p)),
            Repr::Table(_) => format!("table:{}", self.n),
        }
    }

    #[inline]
    fn family_value(&self, k: usize) -> Interval {
        let r = k as f64 / self.n as f64;
        let v = match self.repr {
            Repr::Power(p) if k != self.n => r.powf(p),
            _ => r,
        };
        Interval::clamped(v, v)
    }

    /// `m(A)` for the subset with bitmask `mask`.
    #[inline]
    pub fn value(&self, subset: Subset) -> Interval {
        match &self.repr {
            Repr::Table(values) => values[subset.0 as usize],
            _ => self.family_value(subset.len()),
        }
    }

    /// Value of any set of size `k`, for the symmetric families.
    pub fn value_by_cardinality(&self, k: usize) -> Option<Interval> {
        match self.repr {
            Repr::Table(_) => None,
            _ => Some(self.family_value(k)),
        }
    }

    /// Measures of the tail sets `E_{σ(i)} = {σ(i), …, σ(n)}` for a 0-based
    /// permutation `σ`.
    pub fn tail_values(&self, sigma: &[usize]) -> Vec<Interval> {
        let n = sigma.len();
        let mut out = vec![Interval::ZERO; n];
        match &self.repr {
            Repr::Table(values) => {
                let mut mask = 0u64;
                for i in (0..n).rev() {
                    mask |= 1 << sigma[i];
                    out[i] = values[mask as usize];
                }
            }
            _ => {
                for (i, slot) in out.iter_mut().enumerate() {
                    *slot = self.family_value(n - i);
                }
            }
        }
        out
    }

    /// Whether every value is a degenerate interval.
    pub fn is_degenerate_valued(&self) -> bool {
        match &self.repr {
            Repr::Table(values) => values.iter().all(|v| v.is_degenerate()),
            _ => true,
        }
    }

    /// Checks boundary values and monotonicity on covering pairs
    /// `A ⊂ A ∪ {i}`, which suffices by transitivity.
    pub fn validate(&self, ord: &AdmissibleOrder) -> MeasureValidation {
        let full = Subset(full_mask(self.n));
        let empty = self.value(Subset(0));
        if !empty.approx_eq(Interval::ZERO, crate::interval::TOLERANCE) {
            return MeasureValidation::BoundaryEmpty(empty);
        }
        let top = self.value(full);
        if !top.approx_eq(Interval::ONE, crate::interval::TOLERANCE) {
            return MeasureValidation::BoundaryFull(top);
        }
        if let Repr::Table(values) = &self.repr {
            for mask in 0..values.len() {
                for i in 0..self.n {
                    let bit = 1usize << i;
                    if mask & bit != 0 {
                        continue;
                    }
                    if !ord.le(values[mask], values[mask | bit]) {
                        return MeasureValidation::Monotonicity {
                            smaller: Subset(mask as u64),
                            larger: Subset((mask | bit) as u64),
                        };
                    }
                }
            }
        }
        MeasureValidation::Valid
    }

    /// Whether `m(E) = m(F)` whenever `|E| = |F|`.
    pub fn is_symmetric(&self) -> MeasureSymmetryReport {
        let Repr::Table(values) = &self.repr else {
            return MeasureSymmetryReport {
                symmetric: true,
                witness: None,
            };
        };
        let mut first: Vec<Option<usize>> = vec![None; self.n + 1];
        for (mask, v) in values.iter().enumerate() {
            let k = mask.count_ones() as usize;
            match first[k] {
                None => first[k] = Some(mask),
                Some(rep) if values[rep] != *v => {
                    return MeasureSymmetryReport {
                        symmetric: false,
                        witness: Some((Subset(rep as u64), Subset(mask as u64))),
                    };
                }
                _ => {}
            }
        }
        MeasureSymmetryReport {
            symmetric: true,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum ScalarRepr {
    Cardinality,
    Power(f64),
    Table(Vec<f64>),
}

/// Scalar fuzzy measure `μ: 2^N → [0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMeasure {
    n: usize,
    repr: ScalarRepr,
}

impl ScalarMeasure {
    pub fn cardinality(n: usize) -> Result<Self, MeasureError> {
        check_n(n)?;
        Ok(Self {
            n,
            repr: ScalarRepr::Cardinality,
        })
    }

    pub fn power(n: usize, p: f64) -> Result<Self, MeasureError> {
        check_n(n)?;
        if !(p.is_finite() && p > 0.0) {
            return Err(MeasureError::InvalidExponent(p));
        }
        Ok(Self {
            n,
            repr: ScalarRepr::Power(p),
        })
    }

    pub fn from_table(n: usize, values: Vec<f64>) -> Result<Self, MeasureError> {
        check_n(n)?;
        if n > MAX_TABLE_N {
            return Err(MeasureError::TableTooLarge(n));
        }
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(MeasureError::TableSize {
                n,
                expected,
                got: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(MeasureError::ValueOutOfRange(bad));
        }
        Ok(Self {
            n,
            repr: ScalarRepr::Table(values),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, subset: Subset) -> f64 {
        match &self.repr {
            ScalarRepr::Cardinality => subset.len() as f64 / self.n as f64,
            ScalarRepr::Power(p) => {
                let k = subset.len();
                if k == self.n {
                    1.0
                } else {
                    (k as f64 / self.n as f64).powf(*p)
                }
            }
            ScalarRepr::Table(values) => values[subset.0 as usize],
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match &self.repr {
            ScalarRepr::Table(values) => {
                let mut seen: Vec<Option<f64>> = vec![None; self.n + 1];
                values.iter().enumerate().all(|(mask, &v)| {
                    let k = mask.count_ones() as usize;
                    match seen[k] {
                        None => {
                            seen[k] = Some(v);
                            true
                        }
                        Some(w) => w == v,
                    }
                })
            }
            _ => true,
        }
    }

    /// Embeds the measure as degenerate intervals.
    pub fn to_interval_measure(&self) -> IvFuzzyMeasure {
        let repr = match &self.repr {
            ScalarRepr::Cardinality => Repr::Cardinality,
            ScalarRepr::Power(p) => Repr::Power(*p),
            ScalarRepr::Table(values) => {
                Repr::Table(values.iter().map(|&v| Interval::clamped(v, v)).collect())
            }
        };
        IvFuzzyMeasure { n: self.n, repr }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn iv(l: f64, u: f64) -> Interval {
        Interval::new(l, u).unwrap()
    }

    fn orders() -> Vec<AdmissibleOrder> {
        vec![
            AdmissibleOrder::xu_yager(),
            AdmissibleOrder::lex1(),
            AdmissibleOrder::lex2(),
            AdmissibleOrder::alpha_beta(0.3, 0.8).unwrap(),
            AdmissibleOrder::alpha_plus(0.25).unwrap(),
            AdmissibleOrder::alpha_minus(0.75).unwrap(),
        ]
    }

    #[test]
    fn cardinality_values() {
        let m = IvFuzzyMeasure::cardinality(4).unwrap();
        assert_eq!(m.value(Subset(0b0101)), iv(0.5, 0.5));
        assert_eq!(m.value(Subset(0)), Interval::ZERO);
        assert_eq!(IvFuzzyMeasure::cardinality(3).unwrap().value(Subset(0b111)), Interval::ONE);
        assert!(matches!(
            IvFuzzyMeasure::cardinality(0),
            Err(MeasureError::EmptyGroundSet)
        ));
    }

    #[test]
    fn power_values() {
        let m = IvFuzzyMeasure::power(3, 2.0).unwrap();
        assert!(m.value(Subset(0b011)).approx_eq(iv(4.0 / 9.0, 4.0 / 9.0), 1e-15));
        assert_eq!(
            IvFuzzyMeasure::power(2, 2.0).unwrap().value(Subset(0b10)),
            iv(0.25, 0.25)
        );
        let c = IvFuzzyMeasure::cardinality(5).unwrap();
        let p = IvFuzzyMeasure::power(5, 1.0).unwrap();
        for mask in 0..32 {
            assert_eq!(c.value(Subset(mask)), p.value(Subset(mask)));
        }
        assert!(IvFuzzyMeasure::power(3, 0.0).is_err());
    }

    #[test]
    fn families_validate_under_every_order() {
        for ord in orders() {
            for n in 1..6 {
                assert!(IvFuzzyMeasure::cardinality(n).unwrap().validate(&ord).is_valid());
                assert!(IvFuzzyMeasure::power(n, 2.0).unwrap().validate(&ord).is_valid());
                assert!(IvFuzzyMeasure::power(n, 0.5).unwrap().validate(&ord).is_valid());
            }
        }
    }

    #[test]
    fn monotonicity_witness() {
        let mut values = vec![Interval::ZERO; 8];
        values[0b001] = iv(0.6, 0.6);
        values[0b010] = iv(0.1, 0.1);
        values[0b100] = iv(0.1, 0.1);
        values[0b011] = iv(0.4, 0.4);
        values[0b101] = iv(0.7, 0.7);
        values[0b110] = iv(0.5, 0.5);
        values[0b111] = Interval::ONE;
        let m = IvFuzzyMeasure::from_table(3, values).unwrap();
        assert_eq!(
            m.validate(&AdmissibleOrder::default()),
            MeasureValidation::Monotonicity {
                smaller: Subset(0b001),
                larger: Subset(0b011)
            }
        );
    }

    #[test]
    fn boundary_violation() {
        let values = vec![Interval::ZERO, iv(0.3, 0.3), iv(0.3, 0.3), iv(0.9, 1.0)];
        let m = IvFuzzyMeasure::from_table(2, values).unwrap();
        assert_eq!(
            m.validate(&AdmissibleOrder::default()),
            MeasureValidation::BoundaryFull(iv(0.9, 1.0))
        );
    }

    #[test]
    fn symmetry_reports() {
        assert!(IvFuzzyMeasure::cardinality(5).unwrap().is_symmetric().symmetric);
        assert!(IvFuzzyMeasure::power(4, 2.0).unwrap().is_symmetric().symmetric);
        let m = IvFuzzyMeasure::from_table(
            2,
            vec![Interval::ZERO, iv(0.2, 0.2), iv(0.8, 0.8), Interval::ONE],
        )
        .unwrap();
        let report = m.is_symmetric();
        assert!(!report.symmetric);
        assert_eq!(report.witness, Some((Subset(0b01), Subset(0b10))));
    }

    #[test]
    fn tail_values_follow_permutation() {
        let m = IvFuzzyMeasure::from_table(
            2,
            vec![Interval::ZERO, iv(0.2, 0.2), iv(0.8, 0.8), Interval::ONE],
        )
        .unwrap();
        assert_eq!(m.tail_values(&[0, 1]), vec![Interval::ONE, iv(0.8, 0.8)]);
        assert_eq!(m.tail_values(&[1, 0]), vec![Interval::ONE, iv(0.2, 0.2)]);
        let c = IvFuzzyMeasure::cardinality(4).unwrap();
        let tails = c.tail_values(&[3, 1, 0, 2]);
        assert_eq!(tails[0], Interval::ONE);
        assert_eq!(tails[3], iv(0.25, 0.25));
    }

    #[test]
    fn random_measures_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ord in orders() {
            for n in 1..7 {
                let m = IvFuzzyMeasure::random_monotone(n, &ord, &mut rng).unwrap();
                assert!(m.validate(&ord).is_valid(), "{ord} n={n}");
            }
        }
        let d = IvFuzzyMeasure::random_degenerate(5, &mut rng).unwrap();
        assert!(d.is_degenerate_valued());
        assert!(d.validate(&AdmissibleOrder::lex2()).is_valid());
    }

    #[test]
    fn csv_loading() {
        let text = "subset,lower,upper\n000,0,0\n100,0.2,0.3\n010,0.1,0.1\n001,0,0.2\n\
                    110,0.5,0.6\n101,0.4,0.4\n011,0.3,0.5\n111,1,1\n";
        let m = IvFuzzyMeasure::from_csv_reader(text.as_bytes()).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.value(Subset(0b001)), iv(0.2, 0.3));
        assert_eq!(m.value(Subset(0b100)), iv(0.0, 0.2));
        assert_eq!(m.value(Subset(0b110)), iv(0.3, 0.5));
        let missing = "subset,lower,upper\n00,0,0\n10,0.5,0.5\n11,1,1\n";
        assert!(matches!(
            IvFuzzyMeasure::from_csv_reader(missing.as_bytes()),
            Err(MeasureError::MissingSubset(Subset(0b10)))
        ));
        let dup = "subset,lower,upper\n0,0,0\n0,0,0\n1,1,1\n";
        assert!(matches!(
            IvFuzzyMeasure::from_csv_reader(dup.as_bytes()),
            Err(MeasureError::DuplicateSubset(_))
        ));
        let bad = "subset,lower,upper\n0x,0,0\n";
        assert!(matches!(
            IvFuzzyMeasure::from_csv_reader(bad.as_bytes()),
            Err(MeasureError::BadSubset(_))
        ));
    }

    #[test]
    fn scalar_measure_embedding() {
        let s = ScalarMeasure::from_table(2, vec![0.0, 0.3, 0.6, 1.0]).unwrap();
        assert!(!s.is_symmetric());
        let m = s.to_interval_measure();
        assert_eq!(m.value(Subset(0b10)), iv(0.6, 0.6));
        assert!(ScalarMeasure::cardinality(3).unwrap().is_symmetric());
        assert!(ScalarMeasure::from_table(1, vec![0.0, 1.5]).is_err());
        assert_eq!(Subset(0b101).to_string(), "{1,3}");
        assert_eq!(Subset(0).to_string(), "{}");
    }
}
