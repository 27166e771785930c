//! Flat `key = value` run configuration.
//!
//! ```text
//! # comments start with '#'
//! manifest = data/manifest.csv
//! plan.rotate = tip_vertical
//! family.lambda = inf
//! grid.sectors = 0, 2, 3
//! ```

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use shapesection::learn::{GridSpec, LogisticOptions, SplitSpec, StepRule};
use shapesection::normalize::NormalizationPlan;
use shapesection::reparam::{Lambda, ParamFamily};

use crate::error::{CliError, CliResult};

/// Which part of the dataset `pipeline` and `gridsearch` operate on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subset {
    All,
    Train,
    Test,
}

impl FromStr for Subset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Subset::All),
            "train" => Ok(Subset::Train),
            "test" => Ok(Subset::Test),
            _ => Err(format!("unknown subset {s:?}, expected all, train or test")),
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subset::All => "all",
            Subset::Train => "train",
            Subset::Test => "test",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub manifest: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub threshold: u8,
    /// Unused by the pipeline, which is deterministic; kept so configs can
    /// record one.
    pub seed: u64,
    pub subset: Subset,
    pub plan: NormalizationPlan,
    pub family: ParamFamily,
    /// Gaussian smoothing width in vertices before curvature estimation;
    /// 0 disables it.
    pub smoothing: f64,
    /// `None` means the default axes.
    pub grid: Option<GridSpec>,
    pub split: SplitSpec,
    pub knn_k: usize,
    pub logistic: LogisticOptions,
}

pub const DEFAULT_LAMBDAS: [f64; 9] = [0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1000.0, 2000.0, f64::INFINITY];
pub const DEFAULT_SECTORS: [usize; 9] = [0, 2, 3, 4, 5, 7, 9, 10, 20];

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            manifest: None,
            out: None,
            threshold: 128,
            seed: 0,
            subset: Subset::All,
            plan: NormalizationPlan::default(),
            family: ParamFamily::arc_length(1000),
            smoothing: 0.0,
            grid: None,
            split: SplitSpec::default(),
            knn_k: 5,
            logistic: LogisticOptions::default(),
        }
    }
}

pub const KEYS: &[&str] = &[
    "manifest",
    "out",
    "threshold",
    "seed",
    "subset",
    "plan.direction",
    "plan.start",
    "plan.scale",
    "plan.translate",
    "plan.rotate",
    "family.lambda",
    "family.sectors",
    "family.samples",
    "family.smoothing",
    "grid.lambdas",
    "grid.sectors",
    "grid.samples",
    "split.train_per_class",
    "knn.k",
    "logistic.penalty",
    "logistic.iters",
    "logistic.step",
    "logistic.step_rule",
];

fn lambda_from(s: &str) -> Result<Lambda, String> {
    let lam: Lambda = s.parse()?;
    ParamFamily::new(lam, 0, 3).map_err(|e| e.to_string())?;
    Ok(lam)
}

fn lambda_of(v: f64) -> Lambda {
    if v.is_infinite() {
        Lambda::Infinite
    } else {
        Lambda::Finite(v)
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> CliResult<T>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e: T::Err| CliError::config(key, e.to_string()))
}

fn parse_list<T>(key: &str, value: &str, item: impl Fn(&str) -> Result<T, String>) -> CliResult<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| item(s).map_err(|e| CliError::config(key, e)))
        .collect()
}

/// Grid axes being collected while parsing, resolved once all keys are seen.
#[derive(Default)]
struct GridKeys {
    lambdas: Option<Vec<Lambda>>,
    sectors: Option<Vec<usize>>,
    samples: Option<usize>,
}

#[derive(Default)]
struct FamilyKeys {
    lambda: Option<Lambda>,
    sectors: Option<usize>,
    samples: Option<usize>,
}

#[derive(Default)]
struct StepKeys {
    rule: Option<String>,
    step: Option<f64>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::parse(&text)?;
        // Relative paths in a config file are relative to the file itself.
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.manifest, &mut cfg.out].into_iter().flatten() {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let mut cfg = RunConfig::default();
        let mut grid = GridKeys::default();
        let mut fam = FamilyKeys::default();
        let mut step = StepKeys::default();
        let mut seen = std::collections::HashSet::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config {
                    key: format!("line {}", lineno + 1),
                    msg: "expected `key = value`".into(),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(CliError::config(key, "unknown key"));
            }
            if !seen.insert(key.to_string()) {
                return Err(CliError::config(key, "given more than once"));
            }
            match key {
                "manifest" => cfg.manifest = Some(PathBuf::from(value)),
                "out" => cfg.out = Some(PathBuf::from(value)),
                "threshold" => cfg.threshold = parse_value(key, value)?,
                "seed" => cfg.seed = parse_value(key, value)?,
                "subset" => cfg.subset = parse_value(key, value)?,
                "plan.direction" => cfg.plan.direction = parse_value(key, value)?,
                "plan.start" => cfg.plan.start = parse_value(key, value)?,
                "plan.scale" => cfg.plan.scale = parse_value(key, value)?,
                "plan.translate" => cfg.plan.translate = parse_value(key, value)?,
                "plan.rotate" => cfg.plan.rotate = parse_value(key, value)?,
                "family.lambda" => fam.lambda = Some(lambda_from(value).map_err(|e| CliError::config(key, e))?),
                "family.sectors" => fam.sectors = Some(parse_value(key, value)?),
                "family.samples" => fam.samples = Some(parse_value(key, value)?),
                "family.smoothing" => {
                    let s: f64 = parse_value(key, value)?;
                    if !(s.is_finite() && s >= 0.0) {
                        return Err(CliError::config(key, "must be a finite value >= 0"));
                    }
                    cfg.smoothing = s;
                }
                "grid.lambdas" => grid.lambdas = Some(parse_list(key, value, lambda_from)?),
                "grid.sectors" => {
                    grid.sectors = Some(parse_list(key, value, |s| {
                        s.parse().map_err(|e: std::num::ParseIntError| e.to_string())
                    })?)
                }
                "grid.samples" => grid.samples = Some(parse_value(key, value)?),
                "split.train_per_class" => cfg.split.train_per_class = parse_value(key, value)?,
                "knn.k" => {
                    cfg.knn_k = parse_value(key, value)?;
                    if cfg.knn_k == 0 {
                        return Err(CliError::config(key, "must be at least 1"));
                    }
                }
                "logistic.penalty" => {
                    let p: f64 = parse_value(key, value)?;
                    if !(p.is_finite() && p >= 0.0) {
                        return Err(CliError::config(key, "must be a finite value >= 0"));
                    }
                    cfg.logistic.penalty = p;
                }
                "logistic.iters" => cfg.logistic.iters = parse_value(key, value)?,
                "logistic.step" => {
                    let s: f64 = parse_value(key, value)?;
                    if !(s.is_finite() && s > 0.0) {
                        return Err(CliError::config(key, "must be a finite value > 0"));
                    }
                    step.step = Some(s);
                }
                "logistic.step_rule" => step.rule = Some(value.to_string()),
                _ => unreachable!("key list and match arms disagree on {key}"),
            }
        }

        let default_fam = cfg.family;
        let family = ParamFamily {
            lambda: fam.lambda.unwrap_or(default_fam.lambda),
            sectors: fam.sectors.unwrap_or(default_fam.sectors),
            samples: fam.samples.unwrap_or(default_fam.samples),
        };
        family.validate().map_err(|e| {
            let key = if fam.samples.is_some() { "family.samples" } else { "family.sectors" };
            CliError::config(key, e.to_string())
        })?;
        cfg.family = family;

        if grid.lambdas.is_some() || grid.sectors.is_some() || grid.samples.is_some() {
            let spec = GridSpec {
                lambdas: grid.lambdas.unwrap_or_else(|| DEFAULT_LAMBDAS.map(lambda_of).to_vec()),
                sectors: grid.sectors.unwrap_or_else(|| DEFAULT_SECTORS.to_vec()),
                samples: grid.samples.unwrap_or(cfg.family.samples),
            };
            spec.validate().map_err(|e| CliError::config("grid", e.to_string()))?;
            cfg.grid = Some(spec);
        }

        let initial = step.step.unwrap_or(1.0);
        cfg.logistic.step = match step.rule.as_deref() {
            None | Some("backtracking") => StepRule::Backtracking { initial },
            Some("fixed") => StepRule::Fixed(initial),
            Some(other) => {
                return Err(CliError::config(
                    "logistic.step_rule",
                    format!("unknown rule {other:?}, expected backtracking or fixed"),
                ))
            }
        };
        Ok(cfg)
    }

    /// Grid axes from the config, or the default table.
    pub fn grid_spec(&self) -> GridSpec {
        self.grid.clone().unwrap_or_else(|| GridSpec {
            lambdas: DEFAULT_LAMBDAS.map(lambda_of).to_vec(),
            sectors: DEFAULT_SECTORS.to_vec(),
            samples: self.family.samples,
        })
    }

    pub fn require_manifest(&self) -> CliResult<&Path> {
        self.manifest
            .as_deref()
            .ok_or_else(|| CliError::config("manifest", "no dataset manifest given"))
    }

    pub fn require_out(&self) -> CliResult<&Path> {
        self.out
            .as_deref()
            .ok_or_else(|| CliError::config("out", "no output directory given"))
    }
}
