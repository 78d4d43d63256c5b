//! Sampled property checks for an [`FgFunctional`].
//!
//! Each row pairs an *expected* verdict, read off the sufficient conditions
//! that the functional's measure, `F` and `G` satisfy, with an *observed*
//! verdict from random inputs. A failed expectation is a bug; an observed
//! pass that was not expected just means no sufficient condition applies.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Aggregator, FPreset, FgFunctional, Outer};
use crate::interval::{AdmissibleOrder, Interval};
use crate::measure::Subset;
use crate::sample;

/// Equality tolerance of the sampled checks.
pub const PROPERTY_TOL: f64 = 1e-9;

/// Giving-back is checked on every subset up to this ground-set size.
const EXHAUSTIVE_SUBSETS_N: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    BoundaryZero,
    BoundaryOne,
    Monotonicity,
    AggregationFunction,
    Idempotency,
    Internality,
    PositiveHomogeneity,
    /// `S(c ∧ X) = c ∧ S(X)` with `c ∧ X = [c ∧ X̲, c ∧ X̄]`.
    MinHomogeneity,
    /// The same identity with `c ∧ X` read as the order's meet of `[c, c]` and `X`.
    MinHomogeneityOrderMeet,
    ComonotoneMaxitivity,
    GivingBack,
}

impl Property {
    pub const ALL: [Property; 11] = [
        Property::BoundaryZero,
        Property::BoundaryOne,
        Property::Monotonicity,
        Property::AggregationFunction,
        Property::Idempotency,
        Property::Internality,
        Property::PositiveHomogeneity,
        Property::MinHomogeneity,
        Property::MinHomogeneityOrderMeet,
        Property::ComonotoneMaxitivity,
        Property::GivingBack,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::BoundaryZero => "boundary-0",
            Property::BoundaryOne => "boundary-1",
            Property::Monotonicity => "monotonicity",
            Property::AggregationFunction => "aggregation-function",
            Property::Idempotency => "idempotency",
            Property::Internality => "internality",
            Property::PositiveHomogeneity => "positive-homogeneity",
            Property::MinHomogeneity => "min-homogeneity",
            Property::MinHomogeneityOrderMeet => "min-homogeneity-order-meet",
            Property::ComonotoneMaxitivity => "comonotone-maxitivity",
            Property::GivingBack => "giving-back",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An input where the checked identity fails.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<Interval>,
    pub got: Interval,
    pub want: Interval,
    pub note: Option<String>,
}

pub(crate) fn list(xs: &[Interval]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X={} -> {} != {}", list(&self.inputs), self.got, self.want)?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyRow {
    pub property: Property,
    pub name: &'static str,
    pub expected: bool,
    pub observed: bool,
    pub samples: usize,
    pub counterexample: Option<Counterexample>,
    /// Which sufficient conditions produced `expected`.
    pub basis: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub functional: String,
    pub wds: String,
    pub flagged: bool,
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<PropertyRow>,
}

impl PropertyReport {
    pub fn row(&self, property: Property) -> &PropertyRow {
        self.rows
            .iter()
            .find(|r| r.property == property)
            .expect("every property has a row")
    }

    /// Rows expected to hold that failed on the samples.
    pub fn unexpected_failures(&self) -> Vec<&PropertyRow> {
        self.rows.iter().filter(|r| r.expected && !r.observed).collect()
    }
}

/// What `F` satisfies, given the order and the values the measure takes.
#[derive(Debug, Clone, Copy, Default)]
struct FTraits {
    /// `F(𝟎, Y) = 𝟎` for all `Y`.
    zero_any: bool,
    zero_one: bool,
    one_one: bool,
    /// `F(𝟏, Y) = 𝟏` for all `Y`.
    one_any: bool,
    /// `F(𝟏, Y) = Y`.
    one_y_id: bool,
    /// `F(X, 𝟏) = X`.
    x_one_id: bool,
    /// `F(X, Y) = X`.
    projection: bool,
    nd_first: bool,
    /// `F(·, 𝟏)` nondecreasing.
    nd_first_at_one: bool,
    nd_second: bool,
    pos_hom: bool,
    min_hom: bool,
    min_hom_meet: bool,
    com_max: bool,
}

fn f_traits(fg: &FgFunctional) -> FTraits {
    let ord = fg.order();
    let degenerate_measure = fg.measure().is_degenerate_valued();
    let nd_second = fg.f().nondecreasing_in_second(ord);
    match fg.f() {
        FPreset::Meet => FTraits {
            zero_any: true,
            zero_one: true,
            one_one: true,
            one_any: false,
            one_y_id: true,
            x_one_id: true,
            projection: false,
            nd_first: true,
            nd_first_at_one: true,
            nd_second,
            pos_hom: false,
            min_hom: ord.is_lower_first() && degenerate_measure,
            min_hom_meet: true,
            com_max: true,
        },
        FPreset::Sugeno1 => {
            let nd = ord.is_lexicographic();
            FTraits {
                zero_any: true,
                zero_one: true,
                one_one: true,
                one_any: true,
                nd_first: nd,
                nd_first_at_one: nd,
                nd_second,
                com_max: nd,
                ..FTraits::default()
            }
        }
        FPreset::Sugeno2 | FPreset::Sna => FTraits {
            zero_any: true,
            zero_one: true,
            nd_first: degenerate_measure,
            // F(X, 𝟏) = 𝟎
            nd_first_at_one: true,
            nd_second,
            pos_hom: true,
            com_max: degenerate_measure,
            ..FTraits::default()
        },
        FPreset::Miv(spec) => {
            let nd_first = ord.is_alpha_family(spec.alpha()) && spec.nondecreasing_in(0);
            let x_one_id = spec.one_right_identity();
            FTraits {
                zero_any: spec.zero_absorbing_left(),
                zero_one: spec
                    .apply2(Interval::ZERO, Interval::ONE)
                    .approx_eq(Interval::ZERO, PROPERTY_TOL),
                one_one: spec
                    .apply2(Interval::ONE, Interval::ONE)
                    .approx_eq(Interval::ONE, PROPERTY_TOL),
                one_any: spec.one_absorbing_left(),
                one_y_id: spec.one_left_identity(),
                x_one_id,
                nd_first,
                nd_first_at_one: nd_first || x_one_id,
                nd_second,
                com_max: nd_first,
                ..FTraits::default()
            }
        }
    }
}

/// What `G` satisfies. For `G = f ∘ ∨` and `G = f ∘ Proj_1` these are the
/// traits of the whole composition, which reduce to those of `f`.
#[derive(Debug, Clone, Copy, Default)]
struct GTraits {
    zero: bool,
    one: bool,
    nondecreasing: bool,
    /// `f = id`.
    identity: bool,
    idempotent: bool,
    pos_hom: bool,
    min_hom: bool,
    min_hom_meet: bool,
    com_max: bool,
}

fn g_traits(g: &Aggregator, ord: &AdmissibleOrder) -> GTraits {
    match *g {
        Aggregator::Max(o) | Aggregator::Proj1(o) => {
            let id = o == Outer::Identity;
            // Square and sqrt can merge keys on the order's 1e-12 tie grid,
            // so monotonicity of f ∘ ∨ is only claimed for f = id.
            let nd = id;
            let min_hom = match g {
                Aggregator::Max(_) => id && ord.is_lower_first(),
                _ => id,
            };
            GTraits {
                zero: true,
                one: true,
                nondecreasing: nd,
                identity: id,
                idempotent: id,
                pos_hom: id,
                min_hom,
                min_hom_meet: id,
                com_max: nd,
            }
        }
        Aggregator::Mean => GTraits {
            zero: true,
            one: true,
            nondecreasing: true,
            idempotent: true,
            pos_hom: true,
            ..GTraits::default()
        },
        Aggregator::CappedSum => GTraits {
            zero: true,
            one: true,
            nondecreasing: ord.is_lower_first(),
            ..GTraits::default()
        },
    }
}

#[derive(Debug, Clone, Copy)]
enum Case {
    /// `G = f ∘ ∨` with `F` nondecreasing in its second argument.
    MaxMonotoneF,
    /// `G = f ∘ Proj_1`.
    Projection,
    /// Symmetric measure, any `F` and `G`.
    Symmetric,
}

impl Case {
    fn label(self) -> &'static str {
        match self {
            Case::MaxMonotoneF => "G = f o max with F nondecreasing in 2nd arg",
            Case::Projection => "G = f o Proj1",
            Case::Symmetric => "symmetric m",
        }
    }
}

fn cases(fg: &FgFunctional) -> Vec<Case> {
    let mut out = Vec::new();
    if matches!(fg.g(), Aggregator::Max(_)) && fg.f().nondecreasing_in_second(fg.order()) {
        out.push(Case::MaxMonotoneF);
    }
    if matches!(fg.g(), Aggregator::Proj1(_)) {
        out.push(Case::Projection);
    }
    if fg.measure().is_symmetric().symmetric {
        out.push(Case::Symmetric);
    }
    out
}

fn sufficient(p: Property, case: Case, f: &FTraits, g: &GTraits) -> bool {
    use Case::*;
    match p {
        Property::BoundaryZero => match case {
            MaxMonotoneF | Symmetric => f.zero_any && g.zero,
            Projection => f.zero_one && g.zero,
        },
        Property::BoundaryOne => match case {
            MaxMonotoneF | Projection => f.one_one && g.one,
            Symmetric => f.one_any && g.one,
        },
        Property::Monotonicity => match case {
            MaxMonotoneF => f.nd_first && f.nd_second && g.nondecreasing,
            Projection => f.nd_first_at_one && g.nondecreasing,
            Symmetric => f.nd_first && g.nondecreasing,
        },
        Property::AggregationFunction => {
            sufficient(Property::BoundaryZero, case, f, g)
                && sufficient(Property::BoundaryOne, case, f, g)
                && sufficient(Property::Monotonicity, case, f, g)
        }
        Property::Idempotency => match case {
            MaxMonotoneF | Projection => g.identity && f.x_one_id,
            Symmetric => g.idempotent && f.projection,
        },
        Property::Internality => match case {
            MaxMonotoneF | Projection => g.identity && f.x_one_id,
            Symmetric => false,
        },
        Property::PositiveHomogeneity => g.pos_hom && f.pos_hom,
        Property::MinHomogeneity => g.min_hom && f.min_hom,
        Property::MinHomogeneityOrderMeet => g.min_hom_meet && f.min_hom_meet,
        Property::ComonotoneMaxitivity => g.com_max && f.com_max,
        Property::GivingBack => match case {
            MaxMonotoneF => g.identity && f.zero_any && f.one_y_id,
            Projection | Symmetric => false,
        },
    }
}

fn expectation(fg: &FgFunctional, p: Property) -> (bool, String) {
    if fg.is_flagged() {
        return (false, "not well-defined; no claims".into());
    }
    let f = f_traits(fg);
    let g = g_traits(fg.g(), fg.order());
    let matched: Vec<&str> = cases(fg)
        .into_iter()
        .filter(|&c| sufficient(p, c, &f, &g))
        .map(Case::label)
        .collect();
    if matched.is_empty() {
        (false, "no sufficient condition applies".into())
    } else {
        (true, matched.join("; "))
    }
}

struct Checker<'a> {
    fg: &'a FgFunctional,
    ord: AdmissibleOrder,
    n: usize,
}

type Outcome = Result<(), Counterexample>;

impl Checker<'_> {
    fn eval(&self, xs: &[Interval]) -> Interval {
        self.fg.evaluate(xs).expect("inputs have the functional's arity")
    }

    fn expect_eq(&self, xs: &[Interval], want: Interval, note: impl FnOnce() -> Option<String>) -> Outcome {
        let got = self.eval(xs);
        if got.approx_eq(want, PROPERTY_TOL) {
            Ok(())
        } else {
            Err(Counterexample {
                inputs: xs.to_vec(),
                got,
                want,
                note: note(),
            })
        }
    }

    fn boundary(&self, value: Interval) -> Outcome {
        self.expect_eq(&vec![value; self.n], value, || None)
    }

    /// `X'` with `X ⪯ X'` componentwise: some entries raised in both
    /// endpoints, others joined with a random interval under the order.
    fn raise<R: Rng>(&self, rng: &mut R, xs: &[Interval]) -> Vec<Interval> {
        xs.iter()
            .map(|&x| match rng.gen_range(0..3) {
                0 => x,
                1 => {
                    let u = x.upper() + rng.gen::<f64>() * (1.0 - x.upper());
                    let l = (x.lower() + rng.gen::<f64>() * (1.0 - x.lower())).min(u);
                    Interval::clamped(l, u)
                }
                _ => self.ord.max(x, sample::interval(rng)),
            })
            .collect()
    }

    fn monotonicity<R: Rng>(&self, rng: &mut R, samples: usize) -> Outcome {
        for _ in 0..samples {
            let xs = sample::intervals(rng, self.n);
            let ys = self.raise(rng, &xs);
            let (a, b) = (self.eval(&xs), self.eval(&ys));
            if !self.ord.le_within(a, b, PROPERTY_TOL) {
                return Err(Counterexample {
                    inputs: xs,
                    got: a,
                    want: b,
                    note: Some(format!("raised X'={} gives a smaller value", list(&ys))),
                });
            }
        }
        Ok(())
    }

    fn idempotency<R: Rng>(&self, rng: &mut R, samples: usize) -> Outcome {
        let anchor = Interval::clamped(0.5, 0.5);
        for k in 0..samples {
            let x = if k == 0 { anchor } else { sample::interval(rng) };
            self.expect_eq(&vec![x; self.n], x, || None)?;
        }
        Ok(())
    }

    fn internality<R: Rng>(&self, rng: &mut R, samples: usize) -> Outcome {
        for k in 0..samples {
            let xs = if k % 10 == 0 {
                vec![sample::interval(rng); self.n]
            } else {
                sample::intervals(rng, self.n)
            };
            let lo = self.ord.min_of(&xs).expect("non-empty");
            let hi = self.ord.max_of(&xs).expect("non-empty");
            let y = self.eval(&xs);
            if !self.ord.le_within(lo, y, PROPERTY_TOL) {
                return Err(Counterexample {
                    inputs: xs,
                    got: y,
                    want: lo,
                    note: Some("below the minimum".into()),
                });
            }
            if !self.ord.le_within(y, hi, PROPERTY_TOL) {
                return Err(Counterexample {
                    inputs: xs,
                    got: y,
                    want: hi,
                    note: Some("above the maximum".into()),
                });
            }
        }
        Ok(())
    }

    fn positive_homogeneity<R: Rng>(&self, rng: &mut R, samples: usize) -> Outcome {
        for _ in 0..samples {
            let xs = sample::intervals(rng, self.n);
            let top = xs.iter().map(|x| x.upper()).fold(0.0, f64::max);
            let c_max = if top > 0.0 { 1.0 / top } else { 2.0 };
            let c = rng.gen_range(0.0..c_max).max(f64::MIN_POSITIVE);
            let scaled: Vec<Interval> = xs
                .iter()
                .map(|x| Interval::clamped(c * x.lower(), c * x.upper()))
                .collect();
            let y = self.eval(&xs);
            let want = Interval::clamped(c * y.lower(), c * y.upper());
            self.expect_eq(&scaled, want, || Some(format!("c={}", crate::format_sig(c))))?;
        }
        Ok(())
    }

    fn min_homogeneity<R: Rng>(&self, rng: &mut R, samples: usize) -> Outcome {
        for _ in 0..samples {
            let xs = sample::intervals(rng, self.n);
            let c = sample::unit(rng);
            let capped: Vec<Interval> = xs.iter().map(|x| x.scalar_min(c)).collect();
            let want = self.eval(&xs).scalar_min(c);
            self.expect_eq(&capped, want, || Some(format!("c={}", crate::format_sig(c))))?;
        }
        Ok(())
    }

    fn min_homogeneity_meet<R: Rng>(&self, rng: &mut R, samples: usize) -> Outcome {
        for _ in 0..samples {
            let xs = sample::intervals(rng, self.n);
            let c = sample::degenerate(rng);
            let capped: Vec<Interval> = xs.iter().map(|&x| self.ord.min(c, x)).collect();
            let want = self.ord.min(c, self.eval(&xs));
            self.expect_eq(&capped, want, || Some(format!("c={c}")))?;
        }
        Ok(())
    }

    fn comonotone_maxitivity<R: Rng>(&self, rng: &mut R, samples: usize) -> Outcome {
        let mut slots: Vec<usize> = (0..self.n).collect();
        for _ in 0..samples {
            let (a, _) = self.ord.sort(&sample::intervals(rng, self.n));
            let (b, _) = self.ord.sort(&sample::intervals(rng, self.n));
            slots.shuffle(rng);
            let mut xs = vec![Interval::ZERO; self.n];
            let mut ys = vec![Interval::ZERO; self.n];
            for (k, &slot) in slots.iter().enumerate() {
                xs[slot] = a[k];
                ys[slot] = b[k];
            }
            let joined: Vec<Interval> = xs.iter().zip(&ys).map(|(&x, &y)| self.ord.max(x, y)).collect();
            let want = self.ord.max(self.eval(&xs), self.eval(&ys));
            self.expect_eq(&joined, want, || {
                Some(format!("X={} Y={}", list(&xs), list(&ys)))
            })?;
        }
        Ok(())
    }

    fn giving_back<R: Rng>(&self, rng: &mut R, samples: usize) -> (Outcome, usize) {
        let check = |mask: u64| {
            let xs: Vec<Interval> = (0..self.n)
                .map(|i| if i < 64 && mask >> i & 1 == 1 { Interval::ONE } else { Interval::ZERO })
                .collect();
            let want = self.fg.measure().value(Subset(mask));
            self.expect_eq(&xs, want, || Some(format!("E={}", Subset(mask))))
        };
        if self.n <= EXHAUSTIVE_SUBSETS_N {
            let total = 1u64 << self.n;
            for mask in 0..total {
                if let Err(c) = check(mask) {
                    return (Err(c), total as usize);
                }
            }
            (Ok(()), total as usize)
        } else {
            let full = if self.n >= 64 { u64::MAX } else { (1u64 << self.n) - 1 };
            for _ in 0..samples {
                if let Err(c) = check(rng.gen::<u64>() & full) {
                    return (Err(c), samples);
                }
            }
            (Ok(()), samples)
        }
    }
}

/// Runs every property on `samples` seeded random inputs.
pub fn property_suite(fg: &FgFunctional, samples: usize, seed: u64) -> PropertyReport {
    let samples = samples.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checker = Checker {
        fg,
        ord: *fg.order(),
        n: fg.arity(),
    };
    let mut observed: Vec<(Property, Outcome, usize)> = Vec::new();
    observed.push((Property::BoundaryZero, checker.boundary(Interval::ZERO), 1));
    observed.push((Property::BoundaryOne, checker.boundary(Interval::ONE), 1));
    observed.push((Property::Monotonicity, checker.monotonicity(&mut rng, samples), samples));
    let aggregation = observed
        .iter()
        .find_map(|(_, o, _)| o.clone().err())
        .map_or(Ok(()), Err);
    observed.push((Property::AggregationFunction, aggregation, samples));
    observed.push((Property::Idempotency, checker.idempotency(&mut rng, samples), samples));
    observed.push((Property::Internality, checker.internality(&mut rng, samples), samples));
    observed.push((
        Property::PositiveHomogeneity,
        checker.positive_homogeneity(&mut rng, samples),
        samples,
    ));
    observed.push((Property::MinHomogeneity, checker.min_homogeneity(&mut rng, samples), samples));
    observed.push((
        Property::MinHomogeneityOrderMeet,
        checker.min_homogeneity_meet(&mut rng, samples),
        samples,
    ));
    observed.push((
        Property::ComonotoneMaxitivity,
        checker.comonotone_maxitivity(&mut rng, samples),
        samples,
    ));
    let (giving_back, checked) = checker.giving_back(&mut rng, samples);
    observed.push((Property::GivingBack, giving_back, checked));

    let rows = observed
        .into_iter()
        .map(|(property, outcome, samples)| {
            let (expected, basis) = expectation(fg, property);
            PropertyRow {
                property,
                name: property.name(),
                expected,
                observed: outcome.is_ok(),
                samples,
                counterexample: outcome.err(),
                basis,
            }
        })
        .collect();
    PropertyReport {
        functional: fg.to_string(),
        wds: fg.wds().to_string(),
        flagged: fg.is_flagged(),
        samples,
        seed,
        rows,
    }
}
