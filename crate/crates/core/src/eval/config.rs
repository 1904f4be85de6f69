//! Flat `key = value` configuration for simulation runs.
//!
//! Recognized keys (`#` starts a comment):
//!
//! | key | default | meaning |
//! |-----|---------|---------|
//! | `pool_dir` | required | directory written by `gen-codes` |
//! | `n` | required | frame length; must match the pool |
//! | `n_d` | `round(0.05·n)` | shortened + punctured bits per frame |
//! | `blocks` | required | number of key blocks |
//! | `seed` | `0` | session seed |
//! | `q_init` | `0.03` | previous-block QBER assumed for block 0 |
//! | `trace.kind` | `walk` | `constant`, `walk` or `replay` |
//! | `trace.q0` | `0.03` | starting / constant QBER |
//! | `trace.sigma_step` | `0.001` | walk step standard deviation |
//! | `trace.q_lo`, `trace.q_hi` | `0.02`, `0.05` | walk reflection bounds |
//! | `trace.seed` | derived from `seed` | walk seed |
//! | `trace.file` | — | replay CSV (`block_index,qber`) |
//! | `prior.kind` | `window` | `window` or `flat` |
//! | `prior.alpha1`, `prior.alpha2` | `500` | sigmoid slopes |
//! | `prior.q_min`, `prior.q_max` | `0.01`, `0.08` | window edges |
//! | `hist.bin_width` | `0.0005` | histogram bin width |
//!
//! Relative paths are resolved against the configuration file's directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::estimator::{Prior, QberWindowPrior};
use crate::rng::derive_seed;
use crate::simulation::QberTraceModel;

/// Default fraction of each frame given to shortened and punctured bits.
pub const DEFAULT_EXTENSION_FRACTION: f64 = 0.05;
/// Previous-block QBER assumed for the first block.
pub const DEFAULT_Q_INIT: f64 = 0.03;

const TRACE_SEED_TAG: u64 = 0x0074_7261_6365;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub pool_dir: PathBuf,
    pub n: usize,
    pub n_d: usize,
    pub blocks: usize,
    pub seed: u64,
    pub q_init: f64,
    pub trace: QberTraceModel,
    pub prior: Prior,
    pub bin_width: f64,
}

impl SimulationConfig {
    /// Config with defaults for everything except the required values.
    pub fn new(pool_dir: impl Into<PathBuf>, n: usize, blocks: usize, seed: u64) -> Self {
        SimulationConfig {
            pool_dir: pool_dir.into(),
            n,
            n_d: default_n_d(n),
            blocks,
            seed,
            q_init: DEFAULT_Q_INIT,
            trace: QberTraceModel::RandomWalk {
                q0: 0.03,
                sigma_step: 0.001,
                q_lo: 0.02,
                q_hi: 0.05,
                seed: derive_seed(seed, TRACE_SEED_TAG),
            },
            prior: Prior::Window(QberWindowPrior::DEPLOYED),
            bin_width: 0.0005,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, &path.display().to_string(), base)
    }

    pub fn parse(text: &str, source_name: &str, base_dir: &Path) -> Result<Self> {
        let mut kv = KeyValues::parse(text, source_name)?;
        let n: usize = kv.required("n")?;
        let seed: u64 = kv.optional("seed")?.unwrap_or(0);
        let pool_dir: PathBuf = base_dir.join(kv.required::<String>("pool_dir")?);
        let blocks = kv.required("blocks")?;
        let mut cfg = SimulationConfig::new(pool_dir, n, blocks, seed);
        if let Some(n_d) = kv.optional("n_d")? {
            cfg.n_d = n_d;
        }
        if let Some(q) = kv.optional("q_init")? {
            cfg.q_init = q;
        }
        if let Some(w) = kv.optional("hist.bin_width")? {
            cfg.bin_width = w;
        }

        let kind: String = kv.optional("trace.kind")?.unwrap_or_else(|| "walk".into());
        let q0 = kv.optional("trace.q0")?.unwrap_or(0.03);
        cfg.trace = match kind.as_str() {
            "constant" => QberTraceModel::Constant { q0 },
            "walk" => QberTraceModel::RandomWalk {
                q0,
                sigma_step: kv.optional("trace.sigma_step")?.unwrap_or(0.001),
                q_lo: kv.optional("trace.q_lo")?.unwrap_or(0.02),
                q_hi: kv.optional("trace.q_hi")?.unwrap_or(0.05),
                seed: kv
                    .optional("trace.seed")?
                    .unwrap_or_else(|| derive_seed(seed, TRACE_SEED_TAG)),
            },
            "replay" => {
                let file: String = kv.required("trace.file")?;
                QberTraceModel::load_replay(base_dir.join(file))?
            }
            other => return Err(kv.error("trace.kind", format!("unknown trace kind {other:?}"))),
        };

        let prior_kind: String = kv
            .optional("prior.kind")?
            .unwrap_or_else(|| "window".into());
        cfg.prior = match prior_kind.as_str() {
            "flat" => Prior::Flat,
            "window" => {
                let d = QberWindowPrior::DEPLOYED;
                let w = QberWindowPrior::new(
                    kv.optional("prior.alpha1")?.unwrap_or(d.alpha_low()),
                    kv.optional("prior.alpha2")?.unwrap_or(d.alpha_high()),
                    kv.optional("prior.q_min")?.unwrap_or(d.q_min()),
                    kv.optional("prior.q_max")?.unwrap_or(d.q_max()),
                )
                .map_err(|e| kv.error("prior.kind", e.to_string()))?;
                Prior::Window(w)
            }
            other => return Err(kv.error("prior.kind", format!("unknown prior kind {other:?}"))),
        };

        kv.reject_unused()?;
        cfg.validate()
            .map_err(|e| Error::parse(source_name, 0, e.to_string()))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_d >= self.n {
            return Err(Error::argument(format!(
                "n_d={} must be below n={}",
                self.n_d, self.n
            )));
        }
        if self.blocks == 0 {
            return Err(Error::argument("blocks must be positive"));
        }
        if !(self.q_init > 0.0 && self.q_init < 0.5) {
            return Err(Error::argument(format!(
                "q_init={} outside (0, 0.5)",
                self.q_init
            )));
        }
        if !(self.bin_width > 0.0 && self.bin_width.is_finite()) {
            return Err(Error::argument("hist.bin_width must be positive"));
        }
        self.trace.validate()
    }

    /// Sifted-key bits per block (`n - n_d`).
    pub fn block_bits(&self) -> usize {
        self.n - self.n_d
    }
}

pub fn default_n_d(n: usize) -> usize {
    (n as f64 * DEFAULT_EXTENSION_FRACTION).round() as usize
}

struct KeyValues {
    source_name: String,
    entries: BTreeMap<String, (usize, String)>,
    used: Vec<String>,
}

impl KeyValues {
    fn parse(text: &str, source_name: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::parse(
                    source_name,
                    i + 1,
                    format!("expected `key = value`, got {line:?}"),
                ));
            };
            let key = key.trim().to_string();
            if entries
                .insert(key.clone(), (i + 1, value.trim().to_string()))
                .is_some()
            {
                return Err(Error::parse(
                    source_name,
                    i + 1,
                    format!("duplicate key {key:?}"),
                ));
            }
        }
        Ok(KeyValues {
            source_name: source_name.to_string(),
            entries,
            used: Vec::new(),
        })
    }

    fn error(&self, key: &str, message: String) -> Error {
        let line = self.entries.get(key).map(|e| e.0).unwrap_or(0);
        Error::parse(&self.source_name, line, message)
    }

    fn optional<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        self.used.push(key.to_string());
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, value)) => value.parse().map(Some).map_err(|_| {
                Error::parse(
                    &self.source_name,
                    *line,
                    format!("invalid value {value:?} for {key}"),
                )
            }),
        }
    }

    fn required<T: FromStr>(&mut self, key: &str) -> Result<T> {
        self.optional(key)?.ok_or_else(|| {
            Error::parse(
                &self.source_name,
                0,
                format!("missing required key {key:?}"),
            )
        })
    }

    fn reject_unused(&self) -> Result<()> {
        match self.entries.iter().find(|(k, _)| !self.used.contains(k)) {
            Some((key, (line, _))) => Err(Error::parse(
                &self.source_name,
                *line,
                format!("unknown key {key:?}"),
            )),
            None => Ok(()),
        }
    }
}
