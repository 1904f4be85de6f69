//! Binary-symmetric-channel key pairs and synthetic per-block QBER traces.

use std::fs;
use std::path::Path;

use rand::distr::{Bernoulli, Distribution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;

use crate::bits::BitBlock;
use crate::error::{Error, Result};
use crate::ldpc::csv_error;

/// Sifted-key blocks of the two parties.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyPair {
    pub alice: BitBlock,
    pub bob: BitBlock,
    /// Channel flip probability used to generate the pair.
    pub applied_qber: f64,
    /// Fraction of positions where the keys differ.
    pub realized_error_fraction: f64,
}

/// Draws a uniform key for Alice and flips each bit independently with
/// probability `q` for Bob.
pub fn generate_key_pair(n_bits: usize, q: f64, seed: u64) -> Result<KeyPair> {
    let flips = Bernoulli::new(q)
        .ok()
        .filter(|_| q <= 0.5)
        .ok_or_else(|| Error::argument(format!("channel QBER {q} outside [0, 0.5]")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut alice = Vec::with_capacity(n_bits);
    let mut bob = Vec::with_capacity(n_bits);
    let mut errors = 0usize;
    for _ in 0..n_bits {
        let a: bool = rng.random();
        let e = flips.sample(&mut rng);
        errors += usize::from(e);
        alice.push(a);
        bob.push(a ^ e);
    }
    Ok(KeyPair {
        alice: alice.into(),
        bob: bob.into(),
        applied_qber: q,
        realized_error_fraction: if n_bits == 0 {
            0.0
        } else {
            errors as f64 / n_bits as f64
        },
    })
}

/// Model of the channel QBER over consecutive blocks.
#[derive(Debug, Clone, PartialEq)]
pub enum QberTraceModel {
    Constant {
        q0: f64,
    },
    /// Gaussian random walk reflected at `[q_lo, q_hi]`.
    RandomWalk {
        q0: f64,
        sigma_step: f64,
        q_lo: f64,
        q_hi: f64,
        seed: u64,
    },
    /// Per-block values read from a CSV file.
    Replay {
        values: Vec<f64>,
    },
}

impl QberTraceModel {
    pub fn validate(&self) -> Result<()> {
        let in_open_half = |q: f64| q > 0.0 && q < 0.5;
        match *self {
            QberTraceModel::Constant { q0 } if !in_open_half(q0) => Err(Error::argument(format!(
                "constant QBER {q0} outside (0, 0.5)"
            ))),
            QberTraceModel::RandomWalk {
                q0,
                sigma_step,
                q_lo,
                q_hi,
                ..
            } => {
                if !(in_open_half(q_lo) && in_open_half(q_hi) && q_lo <= q_hi) {
                    return Err(Error::argument(format!(
                        "walk bounds [{q_lo}, {q_hi}] not inside (0, 0.5)"
                    )));
                }
                if !(q_lo..=q_hi).contains(&q0) {
                    return Err(Error::argument(format!(
                        "walk start {q0} outside [{q_lo}, {q_hi}]"
                    )));
                }
                if !(sigma_step >= 0.0 && sigma_step.is_finite()) {
                    return Err(Error::argument(format!(
                        "walk step {sigma_step} must be >= 0"
                    )));
                }
                Ok(())
            }
            QberTraceModel::Replay { ref values } => {
                match values.iter().position(|&q| !in_open_half(q)) {
                    Some(i) => Err(Error::argument(format!(
                        "replayed QBER at block {i} outside (0, 0.5)"
                    ))),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }

    /// Reads a replay trace with header `block_index,qber`; rows must be
    /// ordered by block index starting from 0.
    pub fn load_replay(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let name = path.display().to_string();
        let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
        let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
        if headers.iter().map(str::trim).collect::<Vec<_>>() != ["block_index", "qber"] {
            return Err(Error::parse(&name, 1, "expected header `block_index,qber`"));
        }
        let mut values = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let line = i + 2;
            let record = record.map_err(|e| csv_error(path, e))?;
            let index: usize = record[0]
                .trim()
                .parse()
                .map_err(|_| Error::parse(&name, line, "invalid block_index"))?;
            if index != i {
                return Err(Error::parse(
                    &name,
                    line,
                    format!("expected block_index {i}, found {index}"),
                ));
            }
            let q: f64 = record[1]
                .trim()
                .parse()
                .map_err(|_| Error::parse(&name, line, "invalid qber"))?;
            values.push(q);
        }
        let model = QberTraceModel::Replay { values };
        model.validate()?;
        Ok(model)
    }
}

/// Deterministic QBER sequence realized from a [`QberTraceModel`].
#[derive(Debug, Clone)]
pub struct QberTrace {
    model: QberTraceModel,
    emitted: Vec<f64>,
    rng: Option<ChaCha8Rng>,
}

impl QberTrace {
    pub fn new(model: QberTraceModel) -> Result<Self> {
        model.validate()?;
        let rng = match model {
            QberTraceModel::RandomWalk { seed, .. } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Ok(QberTrace {
            model,
            emitted: Vec::new(),
            rng,
        })
    }

    pub fn model(&self) -> &QberTraceModel {
        &self.model
    }

    /// QBER of block `block_index`. Walk values are generated in order and
    /// cached, so any access pattern yields the same sequence.
    pub fn qber(&mut self, block_index: usize) -> Result<f64> {
        match &self.model {
            QberTraceModel::Constant { q0 } => Ok(*q0),
            QberTraceModel::Replay { values } => values
                .get(block_index)
                .copied()
                .ok_or(Error::EndOfTrace(block_index)),
            &QberTraceModel::RandomWalk {
                q0,
                sigma_step,
                q_lo,
                q_hi,
                ..
            } => {
                let rng = self.rng.as_mut().expect("walk has an rng");
                let step = Normal::new(0.0, sigma_step).expect("validated step");
                while self.emitted.len() <= block_index {
                    let next = match self.emitted.last() {
                        None => q0,
                        Some(&prev) => reflect(prev + step.sample(rng), q_lo, q_hi),
                    };
                    self.emitted.push(next);
                }
                Ok(self.emitted[block_index])
            }
        }
    }

    /// QBER values of the first `blocks` blocks.
    pub fn materialize(&mut self, blocks: usize) -> Result<Vec<f64>> {
        (0..blocks).map(|i| self.qber(i)).collect()
    }
}

/// Functional form of [`QberTrace::qber`] for a fresh trace.
pub fn next_trace_qber(model: &QberTraceModel, block_index: usize) -> Result<f64> {
    QberTrace::new(model.clone())?.qber(block_index)
}

/// Folds `x` back into `[lo, hi]` by mirror reflection at the bounds.
fn reflect(mut x: f64, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let width = hi - lo;
    // Reduce modulo the reflection period first so huge steps terminate.
    let period = 2.0 * width;
    let mut offset = (x - lo).rem_euclid(period);
    if offset > width {
        offset = period - offset;
    }
    x = lo + offset;
    x.clamp(lo, hi)
}

/// Writes a replay trace (`block_index,qber`).
pub fn save_replay(values: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::from("block_index,qber\n");
    for (i, q) in values.iter().enumerate() {
        out.push_str(&format!("{i},{q:.16e}\n"));
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}
