//! Ensemble score fusion.
//!
//! Several classifiers score every class on every band of a trial. The
//! spread of the classifier scores for one (trial, band, class) cell becomes
//! an interval; the per-band intervals of each class are aggregated with an
//! [`FgFunctional`] and the class with the largest aggregate wins.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fg::{FgError, FgFunctional};
use crate::interval::{AdmissibleOrder, Interval};

#[derive(Debug, Error)]
pub enum FusionError {
    #[error("trial {trial}: no score for band {band}, class {class}")]
    MissingCell {
        trial: String,
        band: String,
        class: String,
    },
    #[error("trial {trial}, band {band}, classifier {classifier}, class {class}: score {score} is outside [0, 1]")]
    ScoreOutOfRange {
        trial: String,
        band: String,
        classifier: String,
        class: String,
        score: f64,
    },
    #[error("the functional takes {expected} inputs but the table has {bands} bands")]
    ArityMismatch { expected: usize, bands: usize },
    #[error("trial {0} has no label")]
    UnlabeledTrial(String),
    #[error("partition {0} has an empty test set")]
    EmptyPartition(usize),
    #[error("{trials} trials with test fraction {fraction} leave an empty test set")]
    TooFewTrials { trials: usize, fraction: f64 },
    #[error("invalid partition parameters: {0}")]
    BadPartitionSpec(String),
    #[error("the score table is empty")]
    EmptyTable,
    #[error(transparent)]
    Fg(#[from] FgError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRecord {
    pub trial_id: String,
    pub band_id: String,
    pub classifier_id: String,
    pub class_id: String,
    pub score: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScoreTable {
    pub records: Vec<ScoreRecord>,
}

impl ScoreTable {
    pub fn new(records: Vec<ScoreRecord>) -> Self {
        Self { records }
    }

    /// Reads `trial_id,band_id,classifier_id,class_id,score` rows.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self, FusionError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let records = rdr.deserialize().collect::<Result<Vec<ScoreRecord>, _>>()?;
        Ok(Self { records })
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self, FusionError> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), FusionError> {
        let mut w = csv::Writer::from_writer(writer);
        for r in &self.records {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Rescales every trial's scores to span `[0, 1]`. Trials whose scores
    /// are all equal are mapped to 0.5.
    pub fn rescale_per_trial(&mut self) {
        let mut ranges: BTreeMap<String, (f64, f64)> = BTreeMap::new();
        for r in &self.records {
            let e = ranges
                .entry(r.trial_id.clone())
                .or_insert((f64::INFINITY, f64::NEG_INFINITY));
            e.0 = e.0.min(r.score);
            e.1 = e.1.max(r.score);
        }
        log::info!("rescaling scores of {} trials to [0, 1] (per-trial min-max)", ranges.len());
        for r in &mut self.records {
            let (lo, hi) = ranges[&r.trial_id];
            r.score = if hi > lo { (r.score - lo) / (hi - lo) } else { 0.5 };
        }
    }
}

/// Ground-truth class of each trial.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Labels(pub BTreeMap<String, String>);

#[derive(Debug, Serialize, Deserialize)]
struct LabelRecord {
    trial_id: String,
    class_id: String,
}

impl Labels {
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self, FusionError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut map = BTreeMap::new();
        for rec in rdr.deserialize() {
            let rec: LabelRecord = rec?;
            map.insert(rec.trial_id, rec.class_id);
        }
        Ok(Self(map))
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self, FusionError> {
        Self::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), FusionError> {
        let mut w = csv::Writer::from_writer(writer);
        for (trial_id, class_id) in &self.0 {
            w.serialize(LabelRecord {
                trial_id: trial_id.clone(),
                class_id: class_id.clone(),
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn get(&self, trial: &str) -> Option<&str> {
        self.0.get(trial).map(String::as_str)
    }
}

/// `[min, max]` of the classifier scores per (trial, class, band). Trials,
/// classes and bands are kept in sorted order.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalLogits {
    pub trials: Vec<String>,
    pub classes: Vec<String>,
    pub bands: Vec<String>,
    /// `cells[t][c][b]`.
    pub cells: Vec<Vec<Vec<Interval>>>,
}

impl IntervalLogits {
    pub fn get(&self, trial: usize, class: usize) -> &[Interval] {
        &self.cells[trial][class]
    }
}

pub fn build_interval_logits(table: &ScoreTable) -> Result<IntervalLogits, FusionError> {
    if table.records.is_empty() {
        return Err(FusionError::EmptyTable);
    }
    let mut trials = BTreeSet::new();
    let mut classes = BTreeSet::new();
    let mut bands = BTreeSet::new();
    for r in &table.records {
        if !(0.0..=1.0).contains(&r.score) {
            return Err(FusionError::ScoreOutOfRange {
                trial: r.trial_id.clone(),
                band: r.band_id.clone(),
                classifier: r.classifier_id.clone(),
                class: r.class_id.clone(),
                score: r.score,
            });
        }
        trials.insert(r.trial_id.as_str());
        classes.insert(r.class_id.as_str());
        bands.insert(r.band_id.as_str());
    }
    let index = |set: &BTreeSet<&str>| -> BTreeMap<String, usize> {
        set.iter().enumerate().map(|(i, s)| (s.to_string(), i)).collect()
    };
    let (ti, ci, bi) = (index(&trials), index(&classes), index(&bands));
    let mut ranges = vec![vec![vec![None::<(f64, f64)>; bands.len()]; classes.len()]; trials.len()];
    for r in &table.records {
        let slot = &mut ranges[ti[&r.trial_id]][ci[&r.class_id]][bi[&r.band_id]];
        *slot = Some(match *slot {
            None => (r.score, r.score),
            Some((lo, hi)) => (lo.min(r.score), hi.max(r.score)),
        });
    }
    let to_vec = |set: BTreeSet<&str>| -> Vec<String> { set.into_iter().map(String::from).collect() };
    let (trials, classes, bands) = (to_vec(trials), to_vec(classes), to_vec(bands));
    let mut cells = Vec::with_capacity(trials.len());
    for (t, per_trial) in ranges.into_iter().enumerate() {
        let mut row = Vec::with_capacity(classes.len());
        for (c, per_class) in per_trial.into_iter().enumerate() {
            let mut v = Vec::with_capacity(bands.len());
            for (b, cell) in per_class.into_iter().enumerate() {
                let (lo, hi) = cell.ok_or_else(|| FusionError::MissingCell {
                    trial: trials[t].clone(),
                    band: bands[b].clone(),
                    class: classes[c].clone(),
                })?;
                v.push(Interval::new(lo, hi).expect("scores were range-checked"));
            }
            row.push(v);
        }
        cells.push(row);
    }
    Ok(IntervalLogits {
        trials,
        classes,
        bands,
        cells,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decision {
    pub trial_id: String,
    pub class_id: String,
    /// Aggregate of each class, in the logits' class order.
    pub aggregates: Vec<Interval>,
}

/// Aggregates each class's band intervals and picks the largest under `ord`.
/// Ties go to the lexicographically smallest class id.
pub fn fuse_and_decide(
    logits: &IntervalLogits,
    fg: &FgFunctional,
    ord: &AdmissibleOrder,
) -> Result<Vec<Decision>, FusionError> {
    if fg.arity() != logits.bands.len() {
        return Err(FusionError::ArityMismatch {
            expected: fg.arity(),
            bands: logits.bands.len(),
        });
    }
    logits
        .cells
        .par_iter()
        .enumerate()
        .map(|(t, per_class)| {
            let aggregates = per_class
                .iter()
                .map(|bands| fg.evaluate(bands))
                .collect::<Result<Vec<_>, _>>()?;
            let mut best = 0;
            for (c, &a) in aggregates.iter().enumerate().skip(1) {
                if ord.compare(a, aggregates[best]).is_gt() {
                    best = c;
                }
            }
            Ok(Decision {
                trial_id: logits.trials[t].clone(),
                class_id: logits.classes[best].clone(),
                aggregates,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub train: Vec<String>,
    pub test: Vec<String>,
}

/// `k` seeded random splits; each test set holds `round(N·fraction)` trials.
pub fn make_partitions(
    trial_ids: &[String],
    k: usize,
    fraction: f64,
    seed: u64,
) -> Result<Vec<Partition>, FusionError> {
    if k == 0 {
        return Err(FusionError::BadPartitionSpec("k must be at least 1".into()));
    }
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(FusionError::BadPartitionSpec(format!(
            "test fraction must lie in (0, 1), got {fraction}"
        )));
    }
    let mut ids: Vec<String> = trial_ids.to_vec();
    ids.sort();
    ids.dedup();
    let test_len = (ids.len() as f64 * fraction).round() as usize;
    if test_len == 0 {
        return Err(FusionError::TooFewTrials {
            trials: ids.len(),
            fraction,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..k)
        .map(|_| {
            let mut shuffled = ids.clone();
            shuffled.shuffle(&mut rng);
            let mut test = shuffled[..test_len].to_vec();
            let mut train = shuffled[test_len..].to_vec();
            test.sort();
            train.sort();
            Partition { train, test }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionMetrics {
    pub test_size: usize,
    pub accuracy: f64,
    pub f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionReport {
    pub accuracy: f64,
    pub accuracy_std: f64,
    pub f1: f64,
    pub f1_std: f64,
    pub partitions: Vec<PartitionMetrics>,
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn f1_for(pairs: &[(&str, &str)], positive: &str) -> f64 {
    let (mut tp, mut fp, mut fn_) = (0usize, 0usize, 0usize);
    for &(pred, truth) in pairs {
        match (pred == positive, truth == positive) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            _ => {}
        }
    }
    if tp + fp + fn_ == 0 {
        return 1.0;
    }
    2.0 * tp as f64 / (2 * tp + fp + fn_) as f64
}

/// Binary F1 with the lexicographically second class as positive; macro-F1
/// when there are more classes.
pub fn f1_score(pairs: &[(&str, &str)], classes: &[String]) -> f64 {
    if classes.len() == 2 {
        f1_for(pairs, &classes[1])
    } else {
        classes.iter().map(|c| f1_for(pairs, c)).sum::<f64>() / classes.len().max(1) as f64
    }
}

/// Accuracy and F1 over each partition's test trials, then their mean and
/// population standard deviation.
pub fn evaluate(
    decisions: &[Decision],
    labels: &Labels,
    partitions: &[Partition],
) -> Result<FusionReport, FusionError> {
    let by_trial: BTreeMap<&str, &str> = decisions
        .iter()
        .map(|d| (d.trial_id.as_str(), d.class_id.as_str()))
        .collect();
    let classes: Vec<String> = labels
        .0
        .values()
        .map(String::as_str)
        .chain(by_trial.values().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(String::from)
        .collect();
    let mut metrics = Vec::with_capacity(partitions.len());
    for (k, part) in partitions.iter().enumerate() {
        if part.test.is_empty() {
            return Err(FusionError::EmptyPartition(k));
        }
        let mut pairs = Vec::with_capacity(part.test.len());
        for t in &part.test {
            let truth = labels
                .get(t)
                .ok_or_else(|| FusionError::UnlabeledTrial(t.clone()))?;
            let pred = by_trial
                .get(t.as_str())
                .ok_or_else(|| FusionError::UnlabeledTrial(t.clone()))?;
            pairs.push((*pred, truth));
        }
        let correct = pairs.iter().filter(|(p, t)| p == t).count();
        metrics.push(PartitionMetrics {
            test_size: pairs.len(),
            accuracy: correct as f64 / pairs.len() as f64,
            f1: f1_score(&pairs, &classes),
        });
    }
    if metrics.is_empty() {
        return Err(FusionError::BadPartitionSpec("no partitions".into()));
    }
    let (accuracy, accuracy_std) = mean_std(&metrics.iter().map(|m| m.accuracy).collect::<Vec<_>>());
    let (f1, f1_std) = mean_std(&metrics.iter().map(|m| m.f1).collect::<Vec<_>>());
    Ok(FusionReport {
        accuracy,
        accuracy_std,
        f1,
        f1_std,
        partitions: metrics,
    })
}

/// Shape of a generated score table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub trials: usize,
    pub classes: usize,
    pub bands: usize,
    pub classifiers: usize,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            trials: 200,
            classes: 2,
            bands: 4,
            classifiers: 3,
            seed: 2024,
        }
    }
}

/// Seeded synthetic scores. Each band separates the true class by a margin
/// that shrinks with the band index, and each classifier adds its own noise.
pub fn synthetic(spec: &SyntheticSpec) -> (ScoreTable, Labels) {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let width = |k: usize| (k.max(2) - 1).to_string().len();
    let id = |prefix: &str, i: usize, of: usize| format!("{prefix}{i:0w$}", w = width(of));
    let mut records = Vec::new();
    let mut labels = BTreeMap::new();
    for t in 0..spec.trials {
        let trial = id("t", t, spec.trials);
        let truth = rng.gen_range(0..spec.classes);
        labels.insert(trial.clone(), id("c", truth, spec.classes));
        for b in 0..spec.bands {
            let margin = 0.07 / (b + 1) as f64;
            for k in 0..spec.classifiers {
                let bias = rng.gen_range(-0.05..0.05);
                for c in 0..spec.classes {
                    let centre = if c == truth { 0.5 + margin } else { 0.5 - margin };
                    let score = (centre + bias + rng.gen_range(-0.3..0.3)).clamp(0.0, 1.0);
                    records.push(ScoreRecord {
                        trial_id: trial.clone(),
                        band_id: id("b", b, spec.bands),
                        classifier_id: id("k", k, spec.classifiers),
                        class_id: id("c", c, spec.classes),
                        score: crate::format::round_sig(score),
                    });
                }
            }
        }
    }
    (ScoreTable::new(records), Labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(trial: &str, band: &str, k: &str, class: &str, score: f64) -> ScoreRecord {
        ScoreRecord {
            trial_id: trial.into(),
            band_id: band.into(),
            classifier_id: k.into(),
            class_id: class.into(),
            score,
        }
    }

    fn iv(l: f64, u: f64) -> Interval {
        Interval::new(l, u).unwrap()
    }

    #[test]
    fn cell_intervals() {
        let t = ScoreTable::new(vec![
            rec("t1", "b1", "svm", "A", 0.55),
            rec("t1", "b1", "gp", "A", 0.70),
            rec("t1", "b1", "knn", "A", 0.62),
        ]);
        let l = build_interval_logits(&t).unwrap();
        assert_eq!(l.get(0, 0), &[iv(0.55, 0.70)]);
    }

    #[test]
    fn missing_and_out_of_range() {
        let t = ScoreTable::new(vec![
            rec("t1", "b1", "k", "A", 0.5),
            rec("t1", "b2", "k", "A", 0.5),
            rec("t1", "b1", "k", "B", 0.5),
        ]);
        assert!(matches!(build_interval_logits(&t), Err(FusionError::MissingCell { .. })));
        let t = ScoreTable::new(vec![rec("t1", "b1", "k", "A", 1.2)]);
        assert!(matches!(build_interval_logits(&t), Err(FusionError::ScoreOutOfRange { .. })));
    }

    #[test]
    fn two_class_example() {
        let mut records = Vec::new();
        for (band, a, b) in [("b1", (0.6, 0.8), (0.2, 0.3)), ("b2", (0.5, 0.7), (0.1, 0.4))] {
            records.push(rec("t", band, "k1", "A", a.0));
            records.push(rec("t", band, "k2", "A", a.1));
            records.push(rec("t", band, "k1", "B", b.0));
            records.push(rec("t", band, "k2", "B", b.1));
        }
        let logits = build_interval_logits(&ScoreTable::new(records)).unwrap();
        let fg = FgFunctional::iv_sugeno3(2).unwrap();
        let d = fuse_and_decide(&logits, &fg, &AdmissibleOrder::default()).unwrap();
        assert_eq!(d[0].class_id, "A");
        // [0.2,0.3] and [0.1,0.4] tie on K_0.5; the narrower one sorts first
        assert_eq!(d[0].aggregates, vec![iv(0.5, 0.7), iv(0.1, 0.4)]);
        let fg3 = FgFunctional::iv_sugeno3(3).unwrap();
        assert!(matches!(
            fuse_and_decide(&logits, &fg3, &AdmissibleOrder::default()),
            Err(FusionError::ArityMismatch { expected: 3, bands: 2 })
        ));
    }

    #[test]
    fn ties_pick_the_first_class() {
        let t = ScoreTable::new(vec![
            rec("t", "b", "k", "Z", 0.4),
            rec("t", "b", "k", "M", 0.4),
        ]);
        let logits = build_interval_logits(&t).unwrap();
        let fg = FgFunctional::iv_sugeno3(1).unwrap();
        let d = fuse_and_decide(&logits, &fg, &AdmissibleOrder::default()).unwrap();
        assert_eq!(d[0].class_id, "M");
    }

    #[test]
    fn f1_hand_example() {
        let mut pairs = vec![("1", "1"); 3];
        pairs.push(("1", "0"));
        pairs.push(("0", "1"));
        let classes = vec!["0".to_string(), "1".to_string()];
        assert!((f1_score(&pairs, &classes) - 0.75).abs() < 1e-15);
    }

    #[test]
    fn partitions() {
        let ids: Vec<String> = (0..80).map(|i| format!("t{i}")).collect();
        let p = make_partitions(&ids, 10, 0.5, 3).unwrap();
        assert_eq!(p.len(), 10);
        assert!(p.iter().all(|s| s.test.len() == 40 && s.train.len() == 40));
        assert_eq!(p, make_partitions(&ids, 10, 0.5, 3).unwrap());
        let two = vec!["a".to_string(), "b".to_string()];
        let p = make_partitions(&two, 1, 0.5, 0).unwrap();
        assert_eq!((p[0].train.len(), p[0].test.len()), (1, 1));
        assert!(matches!(
            make_partitions(&two[..1], 1, 0.4, 0),
            Err(FusionError::TooFewTrials { .. })
        ));
    }

    #[test]
    fn evaluation_errors() {
        let d = vec![Decision {
            trial_id: "t".into(),
            class_id: "A".into(),
            aggregates: vec![],
        }];
        let labels = Labels([("t".to_string(), "A".to_string())].into_iter().collect());
        let empty = Partition {
            train: vec![],
            test: vec![],
        };
        assert!(matches!(evaluate(&d, &labels, &[empty]), Err(FusionError::EmptyPartition(0))));
        let part = Partition {
            train: vec![],
            test: vec!["u".into()],
        };
        assert!(matches!(evaluate(&d, &labels, &[part]), Err(FusionError::UnlabeledTrial(_))));
        let part = Partition {
            train: vec![],
            test: vec!["t".into()],
        };
        let r = evaluate(&d, &labels, &[part]).unwrap();
        assert_eq!((r.accuracy, r.f1), (1.0, 1.0));
    }

    #[test]
    fn synthetic_is_seeded() {
        let spec = SyntheticSpec {
            trials: 10,
            ..SyntheticSpec::default()
        };
        let (a, la) = synthetic(&spec);
        let (b, lb) = synthetic(&spec);
        assert_eq!(a, b);
        assert_eq!(la, lb);
        assert_eq!(a.records.len(), 10 * 4 * 3 * 2);
        build_interval_logits(&a).unwrap();
    }
}
