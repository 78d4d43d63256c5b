//! Well-definedness under ties.
//!
//! When inputs tie under the order, several permutations sort them and each
//! pairs the tied inputs with different tail sets. The functional is
//! well-defined when all of them give the same value. Three structural rules
//! guarantee this: a symmetric measure, `G = f ∘ Proj_1`, or `G = f ∘ ∨` with
//! `F` nondecreasing in its second argument. Anything else is probed with
//! random tied vectors.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Aggregator, FgFunctional};
use crate::interval::{AdmissibleOrder, Interval};
use crate::sample;

/// Outputs further apart than this count as different.
pub const WDS_TOL: f64 = 1e-12;

/// Tie orderings are enumerated exhaustively up to this many.
const MAX_ENUMERATED: usize = 720;
const RANDOM_ORDERINGS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WdsRule {
    SymmetricMeasure,
    Projection,
    MaxWithMonotoneF,
}

impl fmt::Display for WdsRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WdsRule::SymmetricMeasure => "symmetric measure",
            WdsRule::Projection => "G = f o Proj1",
            WdsRule::MaxWithMonotoneF => "G = f o max with F nondecreasing in its second argument",
        })
    }
}

/// Two tie-consistent permutations of the same input with different outputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WdsWitness {
    pub inputs: Vec<Interval>,
    /// 0-based permutations.
    pub sigma_a: Vec<usize>,
    pub sigma_b: Vec<usize>,
    pub output_a: Interval,
    pub output_b: Interval,
}

fn one_based(sigma: &[usize]) -> String {
    let parts: Vec<String> = sigma.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for WdsWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.inputs.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "X=({}): sigma={} gives {}, sigma={} gives {}",
            xs.join(","),
            one_based(&self.sigma_a),
            self.output_a,
            one_based(&self.sigma_b),
            self.output_b
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WdsFailure {
    pub reason: String,
    pub witness: Option<WdsWitness>,
}

impl fmt::Display for WdsFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.reason)?;
        if let Some(w) = &self.witness {
            write!(f, "; witness {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WdsVerdict {
    Structural(WdsRule),
    Empirical { probes: usize },
    Fail(WdsFailure),
}

impl WdsVerdict {
    pub fn passed(&self) -> bool {
        !matches!(self, WdsVerdict::Fail(_))
    }
}

impl fmt::Display for WdsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WdsVerdict::Structural(rule) => write!(f, "pass (structural: {rule})"),
            WdsVerdict::Empirical { probes } => write!(f, "pass ({probes} tie probes)"),
            WdsVerdict::Fail(failure) => write!(f, "fail: {failure}"),
        }
    }
}

/// The structural rule guaranteeing well-definedness, if any applies.
pub fn structural_rule(fg: &FgFunctional) -> Option<WdsRule> {
    if fg.measure().is_symmetric().symmetric {
        return Some(WdsRule::SymmetricMeasure);
    }
    match fg.g() {
        Aggregator::Proj1(_) => Some(WdsRule::Projection),
        Aggregator::Max(_) if fg.f().nondecreasing_in_second(fg.order()) => {
            Some(WdsRule::MaxWithMonotoneF)
        }
        _ => None,
    }
}

/// Structural rules first, then `probes` random tied vectors.
pub fn check(fg: &FgFunctional, probes: usize, seed: u64) -> WdsVerdict {
    if let Some(rule) = structural_rule(fg) {
        return WdsVerdict::Structural(rule);
    }
    let witness = probe(fg, probes, seed);
    if *fg.g() == Aggregator::CappedSum {
        return WdsVerdict::Fail(WdsFailure {
            reason: "G = capped-sum is only admitted with a symmetric measure".into(),
            witness,
        });
    }
    match witness {
        Some(w) => WdsVerdict::Fail(WdsFailure {
            reason: "tie orderings give different values".into(),
            witness: Some(w),
        }),
        None => WdsVerdict::Empirical { probes },
    }
}

/// Runs `probes` random tied vectors, ignoring structural rules.
pub fn probe(fg: &FgFunctional, probes: usize, seed: u64) -> Option<WdsWitness> {
    let n = fg.arity();
    if n < 2 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..probes {
        let xs = sample::intervals_with_ties(&mut rng, n);
        let sigmas = tie_permutations(fg.order(), &xs, Some(&mut rng));
        if let Some(w) = compare_orderings(fg, &xs, &sigmas) {
            return Some(w);
        }
    }
    None
}

/// First disagreement among all tie-consistent orderings of `xs`.
pub fn find_witness(fg: &FgFunctional, xs: &[Interval]) -> Option<WdsWitness> {
    let sigmas = tie_permutations(fg.order(), xs, None::<&mut ChaCha8Rng>);
    compare_orderings(fg, xs, &sigmas)
}

/// Every tie-consistent ordering of `xs` with its output.
pub fn tie_permutation_outputs(fg: &FgFunctional, xs: &[Interval]) -> Vec<(Vec<usize>, Interval)> {
    tie_permutations(fg.order(), xs, None::<&mut ChaCha8Rng>)
        .into_iter()
        .filter_map(|s| fg.evaluate_with_permutation(xs, &s).ok().map(|y| (s, y)))
        .collect()
}

fn compare_orderings(fg: &FgFunctional, xs: &[Interval], sigmas: &[Vec<usize>]) -> Option<WdsWitness> {
    let (first, rest) = sigmas.split_first()?;
    let base = fg.evaluate_with_permutation(xs, first).ok()?;
    for sigma in rest {
        let out = fg.evaluate_with_permutation(xs, sigma).ok()?;
        if !out.approx_eq(base, WDS_TOL) {
            return Some(WdsWitness {
                inputs: xs.to_vec(),
                sigma_a: first.clone(),
                sigma_b: sigma.clone(),
                output_a: base,
                output_b: out,
            });
        }
    }
    None
}

/// Permutations sorting `xs` ascending under `ord`. The stable one comes
/// first. All are listed when there are at most 720; beyond that a random
/// subset is drawn when `rng` is given, or only the stable one otherwise.
pub fn tie_permutations<R: rand::Rng>(
    ord: &AdmissibleOrder,
    xs: &[Interval],
    rng: Option<&mut R>,
) -> Vec<Vec<usize>> {
    let stable = ord.sort_permutation(xs);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &stable {
        match groups.last_mut() {
            Some(g) if ord.compare(xs[g[0]], xs[i]).is_eq() => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let total = groups
        .iter()
        .try_fold(1usize, |acc, g| acc.checked_mul(factorial(g.len())?));
    match total {
        Some(t) if t <= MAX_ENUMERATED => {
            let mut out = vec![Vec::with_capacity(xs.len())];
            for g in &groups {
                let perms = permutations(g);
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        perms.iter().map(move |p| {
                            let mut v = prefix.clone();
                            v.extend_from_slice(p);
                            v
                        })
                    })
                    .collect();
            }
            out
        }
        _ => {
            let mut out = vec![stable];
            if let Some(rng) = rng {
                for _ in 0..RANDOM_ORDERINGS {
                    let mut sigma = Vec::with_capacity(xs.len());
                    for g in &groups {
                        let mut g = g.clone();
                        g.shuffle(rng);
                        sigma.extend(g);
                    }
                    out.push(sigma);
                }
            }
            out
        }
    }
}

fn factorial(k: usize) -> Option<usize> {
    (1..=k).try_fold(1usize, |acc, i| acc.checked_mul(i))
}

/// All orderings of `items`, the given order first.
fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &head) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fg::{FPreset, Outer};
    use crate::measure::IvFuzzyMeasure;

    fn iv(l: f64, u: f64) -> Interval {
        Interval::new(l, u).unwrap()
    }

    fn skewed() -> IvFuzzyMeasure {
        IvFuzzyMeasure::from_table(
            2,
            vec![Interval::ZERO, iv(0.2, 0.2), iv(0.8, 0.8), Interval::ONE],
        )
        .unwrap()
    }

    #[test]
    fn permutations_of_groups() {
        let ord = AdmissibleOrder::default();
        let xs = [iv(0.3, 0.3), iv(0.1, 0.1), iv(0.3, 0.3), iv(0.3, 0.3)];
        let sigmas = tie_permutations(&ord, &xs, None::<&mut ChaCha8Rng>);
        assert_eq!(sigmas.len(), 6);
        assert_eq!(sigmas[0], vec![1, 0, 2, 3]);
        assert!(sigmas.iter().all(|s| s[0] == 1));
    }

    #[test]
    fn structural_rules() {
        let ord = AdmissibleOrder::default();
        let card = FgFunctional::iv_sugeno2(3).unwrap();
        assert_eq!(card.wds(), &WdsVerdict::Structural(WdsRule::SymmetricMeasure));
        let proj = FgFunctional::new(skewed(), ord, FPreset::Sugeno2, Aggregator::Proj1(Outer::Square)).unwrap();
        assert_eq!(proj.wds(), &WdsVerdict::Structural(WdsRule::Projection));
        let max = FgFunctional::new(skewed(), ord, FPreset::Meet, Aggregator::Max(Outer::Sqrt)).unwrap();
        assert_eq!(max.wds(), &WdsVerdict::Structural(WdsRule::MaxWithMonotoneF));
    }

    #[test]
    fn mean_with_skewed_measure_fails() {
        let ord = AdmissibleOrder::default();
        let err = FgFunctional::new(skewed(), ord, FPreset::Meet, Aggregator::Mean).unwrap_err();
        assert!(matches!(err, crate::fg::FgError::NotWellDefined(_)));
        let fg = FgFunctional::new_acknowledged(skewed(), ord, FPreset::Meet, Aggregator::Mean).unwrap();
        assert!(fg.is_flagged());
        let xs = [iv(0.3, 0.3), iv(0.3, 0.3)];
        let outputs = tie_permutation_outputs(&fg, &xs);
        assert_eq!(outputs.len(), 2);
        assert_eq!(outputs[0].0, vec![0, 1]);
        assert!(outputs[0].1.approx_eq(iv(0.3, 0.3), 1e-15));
        assert_eq!(outputs[1].0, vec![1, 0]);
        assert!(outputs[1].1.approx_eq(iv(0.25, 0.25), 1e-15));
        let w = find_witness(&fg, &xs).unwrap();
        assert_eq!(
            w.to_string(),
            "X=([0.3,0.3],[0.3,0.3]): sigma=(1,2) gives [0.3,0.3], sigma=(2,1) gives [0.25,0.25]"
        );
    }

    #[test]
    fn capped_sum_needs_symmetry() {
        let ord = AdmissibleOrder::default();
        match check(
            &FgFunctional::new_acknowledged(skewed(), ord, FPreset::Sugeno2, Aggregator::CappedSum).unwrap(),
            200,
            1,
        ) {
            WdsVerdict::Fail(f) => assert!(f.reason.contains("capped-sum")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
