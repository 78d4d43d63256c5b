//! Flat `key = value` run configuration and the functional it describes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ivfg_core::fg::DEFAULT_WDS_PROBES;
use ivfg_core::miv::{self, PresetParams};
use ivfg_core::{
    AdmissibleOrder, Aggregator, FPreset, FgError, FgFunctional, IvFuzzyMeasure, Outer,
};

use crate::error::CliError;

/// Keys accepted in a config file besides the functional keys.
const PARAM_KEYS: [&str; 8] = [
    "samples",
    "n",
    "partitions",
    "test_fraction",
    "rescale",
    "window",
    "affinity",
    "trials",
];

/// Functional presets selectable with `preset =` or `--preset`.
pub const PRESETS: [&str; 4] = ["iv-sugeno1", "iv-sugeno2", "iv-sugeno3", "network"];

#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub order: Option<String>,
    pub measure: Option<String>,
    pub f: Option<String>,
    pub g: Option<String>,
    pub miv_preset: Option<String>,
    pub miv_alpha: Option<f64>,
    pub miv_a1: Option<f64>,
    pub miv_a2: Option<f64>,
    pub miv_gamma: Option<f64>,
    pub seed: Option<u64>,
    pub acknowledge_non_wds: Option<bool>,
    /// Subcommand parameters, keyed as in [`PARAM_KEYS`].
    pub params: BTreeMap<String, String>,
    /// Directory that relative `table:` paths resolve against.
    pub base_dir: Option<PathBuf>,
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: cannot parse {value:?}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(CliError::Config(format!("{key}: expected true or false, got {value:?}"))),
    }
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let v = Some(value.to_string());
        match key {
            "preset" => self.preset = v,
            "order" => self.order = v,
            "measure" => self.measure = v,
            "f" | "F" => self.f = v,
            "g" | "G" => self.g = v,
            "miv.preset" => self.miv_preset = v,
            "miv.alpha" => self.miv_alpha = Some(parse_num(key, value)?),
            "miv.a1" => self.miv_a1 = Some(parse_num(key, value)?),
            "miv.a2" => self.miv_a2 = Some(parse_num(key, value)?),
            "miv.gamma" => self.miv_gamma = Some(parse_num(key, value)?),
            "seed" => self.seed = Some(parse_num(key, value)?),
            "acknowledge_non_wds" => self.acknowledge_non_wds = Some(parse_bool(key, value)?),
            k if PARAM_KEYS.contains(&k) => {
                self.params.insert(k.to_string(), value.to_string());
            }
            other => return Err(CliError::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Fields set in `other` win.
    pub fn merge(mut self, other: RunConfig) -> Self {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if other.$field.is_some() { self.$field = other.$field; })*
            };
        }
        if other.measure.is_some() {
            self.base_dir = other.base_dir.clone();
        }
        take!(
            preset, order, measure, f, g, miv_preset, miv_alpha, miv_a1, miv_a2, miv_gamma, seed,
            acknowledge_non_wds
        );
        self.params.extend(other.params);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// Subcommand parameter: flag value, else config value, else `default`.
    pub fn param<T: std::str::FromStr>(
        &self,
        key: &str,
        flag: Option<T>,
        default: T,
    ) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.params.get(key) {
            Some(s) => parse_num(key, s),
            None => Ok(default),
        }
    }

    pub fn order(&self) -> Result<AdmissibleOrder, CliError> {
        match &self.order {
            None => Ok(AdmissibleOrder::default()),
            Some(s) => s
                .parse()
                .map_err(|e| CliError::Config(format!("order {s:?}: {e}"))),
        }
    }

    /// Measure on `n` inputs. A table measure keeps its own size.
    fn measure(&self, name: &str, n: usize) -> Result<IvFuzzyMeasure, CliError> {
        let cfg_err = |e: ivfg_core::MeasureError| CliError::Config(format!("measure {name:?}: {e}"));
        let (kind, arg) = match name.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (name.trim(), None),
        };
        match (kind, arg) {
            ("cardinality", None) => IvFuzzyMeasure::cardinality(n).map_err(cfg_err),
            ("power", Some(p)) => {
                IvFuzzyMeasure::power(n, parse_num("measure power", p)?).map_err(cfg_err)
            }
            ("table", Some(file)) => {
                let mut path = PathBuf::from(file);
                if path.is_relative() {
                    if let Some(dir) = &self.base_dir {
                        path = dir.join(path);
                    }
                }
                IvFuzzyMeasure::from_csv_path(&path).map_err(cfg_err)
            }
            _ => Err(CliError::Config(format!(
                "unknown measure {name:?}; expected cardinality, power:P or table:FILE"
            ))),
        }
    }

    fn miv_spec(&self, preset_name: Option<&str>) -> Result<miv::MivSpec, CliError> {
        let d = PresetParams::default();
        let params = PresetParams {
            alpha: self.miv_alpha.unwrap_or(d.alpha),
            a1: self.miv_a1.unwrap_or(d.a1),
            a2: self.miv_a2.unwrap_or(d.a2),
            gamma: self.miv_gamma.unwrap_or(d.gamma),
        };
        let name = preset_name
            .or(self.miv_preset.as_deref())
            .unwrap_or("(i)");
        miv::preset(name, params).map_err(|e| CliError::Config(format!("miv preset: {e}")))
    }

    fn f_preset(&self, name: &str) -> Result<FPreset, CliError> {
        let (kind, arg) = match name.split_once(':') {
            Some((k, a)) => (k.trim(), Some(a.trim())),
            None => (name.trim(), None),
        };
        match (kind, arg) {
            ("meet", None) => Ok(FPreset::Meet),
            ("sugeno1", None) => Ok(FPreset::Sugeno1),
            ("sugeno2", None) => Ok(FPreset::Sugeno2),
            ("sna", None) => Ok(FPreset::Sna),
            ("miv", p) => Ok(FPreset::Miv(self.miv_spec(p)?)),
            _ => Err(CliError::Config(format!(
                "unknown F {name:?}; expected meet, sugeno1, sugeno2, sna or miv[:PRESET]"
            ))),
        }
    }

    fn g_aggregator(name: &str) -> Result<Aggregator, CliError> {
        Ok(match name.trim() {
            "max" => Aggregator::Max(Outer::Identity),
            "max-square" => Aggregator::Max(Outer::Square),
            "max-sqrt" => Aggregator::Max(Outer::Sqrt),
            "proj1" => Aggregator::Proj1(Outer::Identity),
            "proj1-square" => Aggregator::Proj1(Outer::Square),
            "proj1-sqrt" => Aggregator::Proj1(Outer::Sqrt),
            "mean" => Aggregator::Mean,
            "capped-sum" => Aggregator::CappedSum,
            other => {
                return Err(CliError::Config(format!(
                    "unknown G {other:?}; expected max, max-square, max-sqrt, proj1, \
                     proj1-square, proj1-sqrt, mean or capped-sum"
                )))
            }
        })
    }

    /// Builds the functional on `n` inputs. Fields not set fall back to
    /// the named preset, then to `default_preset`.
    pub fn functional(&self, n: usize, default_preset: &str) -> Result<FgFunctional, CliError> {
        let preset = self.preset.as_deref().unwrap_or(default_preset);
        let (p_f, p_g) = match preset {
            "iv-sugeno1" => ("sugeno1", "mean"),
            "iv-sugeno2" => ("sugeno2", "mean"),
            "iv-sugeno3" => ("meet", "max"),
            "network" => ("sna", "capped-sum"),
            other => {
                return Err(CliError::Config(format!(
                    "unknown preset {other:?}; expected one of {}",
                    PRESETS.join(", ")
                )))
            }
        };
        let measure_name = self.measure.as_deref().unwrap_or("cardinality");
        let measure = self.measure(measure_name, n)?;
        let order = self.order()?;
        let f = self.f_preset(self.f.as_deref().unwrap_or(p_f))?;
        let g = Self::g_aggregator(self.g.as_deref().unwrap_or(p_g))?;
        let built = if self.acknowledge_non_wds.unwrap_or(false) {
            FgFunctional::new_acknowledged(measure, order, f, g)
        } else {
            FgFunctional::with_probes(measure, order, f, g, DEFAULT_WDS_PROBES, self.seed())
        };
        built.map_err(|e| match e {
            FgError::NotWellDefined(failure) => CliError::Config(format!(
                "the functional is not well-defined under ties: {failure}\n\
                 (pass --acknowledge-non-wds to evaluate it with the stable sort)"
            )),
            other => CliError::Config(other.to_string()),
        })
    }
}
