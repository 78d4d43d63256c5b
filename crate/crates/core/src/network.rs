//! Affinity-based centralities on weighted digraphs.
//!
//! Directed affinities `F_C(x, y)` are turned into symmetric interval
//! affinities `[min(F_C(x,y), F_C(y,x)), max(..)]`; an actor's intervals are
//! aggregated with an [`FgFunctional`] and the width of the aggregate
//! measures how lopsided its relationships are.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fg::{FgError, FgFunctional};
use crate::interval::Interval;

/// Two directed affinities closer than this count as equal when splitting
/// relationships into altruism and egoism sets.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("edge {src} -> {dst}: weight {weight} must be finite and >= 0")]
    BadWeight { src: String, dst: String, weight: f64 },
    #[error("window must be at least 1")]
    BadWindow,
    #[error("unknown affinity {0:?}; expected bf or bcf")]
    UnknownAffinity(String),
    #[error(transparent)]
    Fg(#[from] FgError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Sparse weighted digraph. Actors keep their first-appearance order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightedGraph {
    actors: Vec<String>,
    index: HashMap<String, usize>,
    /// Outgoing edges per actor, sorted by target.
    out: Vec<Vec<(usize, f64)>>,
}

#[derive(Debug, Deserialize)]
struct EdgeRecord {
    src: String,
    dst: String,
    weight: f64,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_actor(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.actors.len();
        self.actors.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.out.push(Vec::new());
        i
    }

    /// Adds `weight` to `C(src, dst)`.
    pub fn add_edge(&mut self, src: &str, dst: &str, weight: f64) -> Result<(), NetworkError> {
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(NetworkError::BadWeight {
                src: src.into(),
                dst: dst.into(),
                weight,
            });
        }
        let s = self.add_actor(src);
        let d = self.add_actor(dst);
        self.add_weight(s, d, weight);
        Ok(())
    }

    fn add_weight(&mut self, s: usize, d: usize, weight: f64) {
        let row = &mut self.out[s];
        match row.binary_search_by_key(&d, |&(t, _)| t) {
            Ok(k) => row[k].1 += weight,
            Err(k) => row.insert(k, (d, weight)),
        }
    }

    /// Reads `src,dst,weight` rows; repeated edges are summed.
    pub fn from_edge_csv<R: Read>(reader: R) -> Result<Self, NetworkError> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let mut g = Self::new();
        for rec in rdr.deserialize() {
            let e: EdgeRecord = rec?;
            g.add_edge(&e.src, &e.dst, e.weight)?;
        }
        Ok(g)
    }

    pub fn from_edge_csv_path(path: impl AsRef<Path>) -> Result<Self, NetworkError> {
        Self::from_edge_csv(std::fs::File::open(path)?)
    }

    /// Undirected co-occurrence counts: every pair of distinct tokens at most
    /// `window` positions apart adds 1 in both directions.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S], window: usize) -> Result<Self, NetworkError> {
        if window == 0 {
            return Err(NetworkError::BadWindow);
        }
        let mut g = Self::new();
        let ids: Vec<usize> = tokens.iter().map(|t| g.add_actor(t.as_ref())).collect();
        for i in 0..ids.len() {
            for j in i + 1..ids.len().min(i + window + 1) {
                if ids[i] != ids[j] {
                    g.add_weight(ids[i], ids[j], 1.0);
                    g.add_weight(ids[j], ids[i], 1.0);
                }
            }
        }
        Ok(g)
    }

    /// Tokens are separated by any whitespace, line breaks included.
    pub fn from_token_file(path: impl AsRef<Path>, window: usize) -> Result<Self, NetworkError> {
        let text = std::fs::read_to_string(path)?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        Self::from_tokens(&tokens, window)
    }

    /// Multiplies every weight by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut g = self.clone();
        for row in &mut g.out {
            for e in row {
                e.1 *= c;
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.actors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actors.is_empty()
    }

    pub fn actors(&self) -> &[String] {
        &self.actors
    }

    pub fn actor_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn out_edges(&self, x: usize) -> &[(usize, f64)] {
        &self.out[x]
    }

    pub fn weight(&self, x: usize, y: usize) -> f64 {
        let row = &self.out[x];
        row.binary_search_by_key(&y, |&(t, _)| t)
            .map(|k| row[k].1)
            .unwrap_or(0.0)
    }

    pub fn row_sum(&self, x: usize) -> f64 {
        self.out[x].iter().map(|e| e.1).sum()
    }

    /// Edges as `(src, dst, weight)` in actor order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, f64)> + '_ {
        self.out.iter().enumerate().flat_map(move |(s, row)| {
            row.iter()
                .map(move |&(d, w)| (self.actors[s].as_str(), self.actors[d].as_str(), w))
        })
    }
}

/// Random digraph with `n` actors and about `out_degree` weighted edges each.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, out_degree: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new();
    for i in 0..n {
        g.add_actor(&format!("v{i}"));
    }
    if n < 2 {
        return g;
    }
    for s in 0..n {
        for _ in 0..out_degree {
            let d = rng.gen_range(0..n);
            if d != s {
                let w = rng.gen_range(1..=5) as f64;
                g.add_weight(s, d, w);
            }
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AffinityKind {
    /// Best friend: `C(x, y) / Σ_a C(x, a)`.
    Bf,
    /// Best common friend: `max_a min(C(x, a), C(y, a)) / Σ_a C(x, a)`.
    Bcf,
}

impl FromStr for AffinityKind {
    type Err = NetworkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bf" => Ok(AffinityKind::Bf),
            "bcf" => Ok(AffinityKind::Bcf),
            other => Err(NetworkError::UnknownAffinity(other.to_string())),
        }
    }
}

impl fmt::Display for AffinityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AffinityKind::Bf => "bf",
            AffinityKind::Bcf => "bcf",
        })
    }
}

fn row_total(g: &WeightedGraph, x: usize) -> Option<f64> {
    let total = g.row_sum(x);
    if total > 0.0 {
        Some(total)
    } else {
        log::warn!("actor {:?} has no outgoing weight; its affinities are 0", g.actors[x]);
        None
    }
}

pub fn bf_affinity(g: &WeightedGraph, x: usize, y: usize) -> f64 {
    row_total(g, x).map_or(0.0, |total| g.weight(x, y) / total)
}

pub fn bcf_affinity(g: &WeightedGraph, x: usize, y: usize) -> f64 {
    row_total(g, x).map_or(0.0, |total| {
        g.out_edges(x)
            .iter()
            .map(|&(a, w)| w.min(g.weight(y, a)))
            .fold(0.0, f64::max)
            / total
    })
}

/// Dense directed affinities `F_C(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinityMatrix {
    n: usize,
    values: Vec<f64>,
}

impl AffinityMatrix {
    pub fn compute(g: &WeightedGraph, kind: AffinityKind) -> Self {
        let n = g.len();
        let incoming = match kind {
            AffinityKind::Bcf => {
                let mut inc: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
                for (s, row) in g.out.iter().enumerate() {
                    for &(d, w) in row {
                        inc[d].push((s, w));
                    }
                }
                inc
            }
            AffinityKind::Bf => Vec::new(),
        };
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|x| {
                let mut row = vec![0.0; n];
                let Some(total) = row_total(g, x) else {
                    return row;
                };
                match kind {
                    AffinityKind::Bf => {
                        for &(y, w) in g.out_edges(x) {
                            row[y] = w / total;
                        }
                    }
                    AffinityKind::Bcf => {
                        for &(a, wxa) in g.out_edges(x) {
                            for &(y, wya) in &incoming[a] {
                                row[y] = row[y].max(wxa.min(wya));
                            }
                        }
                        for v in &mut row {
                            *v /= total;
                        }
                    }
                }
                row
            })
            .collect();
        Self {
            n,
            values: rows.concat(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.values[x * self.n..(x + 1) * self.n]
    }
}

/// `[min(F(x,y), F(y,x)), max(F(x,y), F(y,x))]`.
pub fn iv_affinity(f: &AffinityMatrix, x: usize, y: usize) -> Interval {
    let (a, b) = (f.get(x, y), f.get(y, x));
    Interval::clamped(a.min(b), a.max(b))
}

/// Symmetric interval affinities, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct IvAffinityMatrix {
    n: usize,
    values: Vec<Interval>,
}

impl IvAffinityMatrix {
    /// Computes each unordered pair once and mirrors it.
    pub fn from_affinities(f: &AffinityMatrix) -> Self {
        let n = f.len();
        let mut values = vec![Interval::ZERO; n * n];
        for x in 0..n {
            values[x * n + x] = iv_affinity(f, x, x);
            for y in x + 1..n {
                let v = iv_affinity(f, x, y);
                values[x * n + y] = v;
                values[y * n + x] = v;
            }
        }
        Self { n, values }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, x: usize, y: usize) -> Interval {
        self.values[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[Interval] {
        &self.values[x * self.n..(x + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                let (a, b) = (self.get(x, y), self.get(y, x));
                a.lower().to_bits() == b.lower().to_bits() && a.upper().to_bits() == b.upper().to_bits()
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Centrality {
    pub actor: String,
    pub asymmetry: f64,
    pub altruism: f64,
    pub egoism: f64,
    pub generosity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityReport {
    pub affinity: AffinityKind,
    pub functional: String,
    pub actors: Vec<Centrality>,
}

/// Everything computed for one graph.
#[derive(Debug, Clone)]
pub struct NetworkAnalysis {
    pub directed: AffinityMatrix,
    pub intervals: IvAffinityMatrix,
    pub report: CentralityReport,
}

/// Width of `fg` applied to `xs` at arity `xs.len()`; 0 for an empty set.
fn aggregate_width(fg: &FgFunctional, xs: &[Interval]) -> Result<f64, FgError> {
    if xs.is_empty() {
        return Ok(0.0);
    }
    let fg = fg.with_arity(xs.len())?;
    Ok(fg.evaluate(xs)?.width())
}

/// Asymmetry aggregates the interval affinities with every other actor.
/// Altruism and egoism aggregate over the actor's relationships (pairs with
/// a nonzero affinity in some direction) where its own affinity is at least,
/// respectively at most, the other's; a tie puts the partner in both sets.
/// `fg` is re-instantiated at each needed arity, so its measure must be a
/// closed-form family.
pub fn centralities(
    g: &WeightedGraph,
    kind: AffinityKind,
    fg: &FgFunctional,
) -> Result<NetworkAnalysis, NetworkError> {
    let directed = AffinityMatrix::compute(g, kind);
    let intervals = IvAffinityMatrix::from_affinities(&directed);
    let actors = (0..g.len())
        .into_par_iter()
        .map(|x| -> Result<Centrality, FgError> {
            let mut all = Vec::with_capacity(g.len().saturating_sub(1));
            let mut altruism = Vec::new();
            let mut egoism = Vec::new();
            for y in (0..g.len()).filter(|&y| y != x) {
                let v = intervals.get(x, y);
                all.push(v);
                let (own, other) = (directed.get(x, y), directed.get(y, x));
                if own == 0.0 && other == 0.0 {
                    continue;
                }
                if other <= own + TIE_TOL {
                    altruism.push(v);
                }
                if own <= other + TIE_TOL {
                    egoism.push(v);
                }
            }
            let asymmetry = aggregate_width(fg, &all)?;
            let altruism = aggregate_width(fg, &altruism)?;
            let egoism = aggregate_width(fg, &egoism)?;
            Ok(Centrality {
                actor: g.actors[x].clone(),
                asymmetry,
                altruism,
                egoism,
                generosity: altruism - egoism,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NetworkAnalysis {
        directed,
        intervals,
        report: CentralityReport {
            affinity: kind,
            functional: fg.to_string(),
            actors,
        },
    })
}
