use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::SimulationConfig;
use super::report::{aggregate, EvaluationReport};
use crate::bits::relative_syndrome;
use crate::error::{Error, Result};
use crate::estimator::{effective_degrees, estimate_mixed, estimate_qber_syndrome};
use crate::exec::Execution;
use crate::extension::{extend_key, plan_extension, select_code};
use crate::ldpc::CodePool;
use crate::rng::derive_seed;
use crate::simulation::{generate_key_pair, QberTrace};

// Per-block stream tags under the block seed.
const CHANNEL: u64 = 0;
const LAYOUT: u64 = 1;
const PUNCTURE_ALICE: u64 = 2;
const PUNCTURE_BOB: u64 = 3;

/// Outcome of one simulated block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockRecord {
    pub block_index: usize,
    pub n: usize,
    pub n_s: usize,
    pub n_p: usize,
    pub rate: f64,
    /// Realized error fraction over the block's key bits.
    pub q_true: f64,
    pub q_prev: f64,
    /// `None` when the syndrome estimator failed on this block.
    pub q_synd: Option<f64>,
    pub q_mix: Option<f64>,
    pub m_eff: usize,
    pub converged: bool,
}

impl BlockRecord {
    pub fn is_flagged(&self) -> bool {
        self.q_synd.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub records: Vec<BlockRecord>,
    pub report: EvaluationReport,
}

/// Simulates `config.blocks` consecutive key blocks and compares the
/// previous-block, syndrome and mixed QBER estimates on each.
///
/// Every block draws its randomness from streams derived from
/// `(config.seed, block_index)`, and the previous-block estimate is the
/// realized QBER of the preceding block, so blocks are independent once the
/// trace is fixed and `exec` does not affect the output.
pub fn run_evaluation(
    config: &SimulationConfig,
    pool: &CodePool,
    exec: Execution,
) -> Result<Evaluation> {
    config.validate()?;
    if pool.n() != config.n {
        return Err(Error::argument(format!(
            "config frame length {} does not match pool frame length {}",
            config.n,
            pool.n()
        )));
    }
    let trace = QberTrace::new(config.trace.clone())?.materialize(config.blocks)?;
    let block_bits = config.block_bits();
    let indices: Vec<usize> = (0..config.blocks).collect();

    let q_true = exec.try_map(&indices, |&i| {
        let seed = derive_seed(derive_seed(config.seed, i as u64), CHANNEL);
        generate_key_pair(block_bits, trace[i], seed).map(|kp| kp.realized_error_fraction)
    })?;

    let records = exec.try_map(&indices, |&i| {
        let q_prev = if i == 0 { config.q_init } else { q_true[i - 1] };
        simulate_block(config, pool, i, trace[i], q_prev)
    })?;
    let report = aggregate(&records);
    Ok(Evaluation { records, report })
}

fn simulate_block(
    config: &SimulationConfig,
    pool: &CodePool,
    block_index: usize,
    channel_qber: f64,
    q_prev: f64,
) -> Result<BlockRecord> {
    let block_seed = derive_seed(config.seed, block_index as u64);
    let keys = generate_key_pair(
        config.block_bits(),
        channel_qber,
        derive_seed(block_seed, CHANNEL),
    )?;

    let selection = select_code(pool, q_prev, config.n_d)?;
    let h = &pool.codes()[selection.code_index].matrix;
    let layout = plan_extension(
        config.n,
        selection.n_s,
        selection.n_p,
        derive_seed(block_seed, LAYOUT),
    )?;

    let mut alice_rng = ChaCha8Rng::seed_from_u64(derive_seed(block_seed, PUNCTURE_ALICE));
    let mut bob_rng = ChaCha8Rng::seed_from_u64(derive_seed(block_seed, PUNCTURE_BOB));
    let alice_ext = extend_key(&keys.alice, &layout, false, &mut alice_rng)?;
    let bob_ext = extend_key(&keys.bob, &layout, false, &mut bob_rng)?;
    let delta_s = relative_syndrome(&h.syndrome(&alice_ext)?, &h.syndrome(&bob_ext)?)?;

    let profile = effective_degrees(h, &layout)?;
    let (q_synd, converged) = match estimate_qber_syndrome(&delta_s, &profile, &config.prior) {
        Ok(est) => (Some(est.q_est), est.converged),
        Err(Error::Estimation(_)) => (None, false),
        Err(e) => return Err(e),
    };

    Ok(BlockRecord {
        block_index,
        n: config.n,
        n_s: selection.n_s,
        n_p: selection.n_p,
        rate: selection.rate,
        q_true: keys.realized_error_fraction,
        q_prev,
        q_synd,
        q_mix: q_synd.map(|q| estimate_mixed(q_prev, q)),
        m_eff: profile.usable_rows(),
        converged,
    })
}
