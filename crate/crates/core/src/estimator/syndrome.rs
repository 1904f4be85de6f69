use super::brent;
use super::prior::Prior;
use super::profile::{EffectiveDegreeProfile, SyndromeTally};
use crate::bits::BitBlock;
use crate::error::{EstimationError, Result};

/// Lower end of the QBER search interval.
pub const SEARCH_LOWER: f64 = 1e-4;
/// Upper end of the QBER search interval.
pub const SEARCH_UPPER: f64 = 0.5 - 1e-4;
/// Number of log-posterior samples used to bracket the maximum.
pub const GRID_POINTS: usize = 512;
/// Absolute location tolerance of the final refinement.
pub const Q_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult {
    pub q_est: f64,
    /// Log-likelihood plus log-prior at `q_est`.
    pub log_posterior: f64,
    /// Number of syndrome rows that entered the likelihood.
    pub m_eff: usize,
    pub iterations: usize,
    pub converged: bool,
}

/// Maximum a-posteriori QBER from a relative syndrome.
///
/// The log-posterior is sampled on a uniform grid over
/// `[SEARCH_LOWER, SEARCH_UPPER]`; the best sample and its neighbours bracket
/// a Brent refinement, so multimodal posteriors resolve to the global
/// maximum at grid resolution.
pub fn estimate_qber_syndrome(
    delta_s: &BitBlock,
    profile: &EffectiveDegreeProfile,
    prior: &Prior,
) -> Result<EstimateResult> {
    let tally = SyndromeTally::new(delta_s, profile)?;
    let m_eff = tally.usable_rows() as usize;
    if m_eff == 0 {
        return Err(EstimationError::NoInformativeRows.into());
    }
    let posterior = |q: f64| tally.log_likelihood(q) + prior.log_density(q);

    let step = (SEARCH_UPPER - SEARCH_LOWER) / (GRID_POINTS - 1) as f64;
    let grid_q = |i: usize| SEARCH_LOWER + step * i as f64;
    let mut best: Option<(usize, f64)> = None;
    for i in 0..GRID_POINTS {
        let value = posterior(grid_q(i));
        if value.is_finite() && best.is_none_or(|(_, b)| value > b) {
            best = Some((i, value));
        }
    }
    let (i_best, grid_best) = best.ok_or(EstimationError::DegeneratePosterior)?;

    let lower = grid_q(i_best.saturating_sub(1));
    let upper = grid_q((i_best + 1).min(GRID_POINTS - 1));
    let refined = brent::maximize(posterior, lower, grid_q(i_best), upper, Q_TOLERANCE);

    let (q_est, log_posterior) = if refined.value >= grid_best {
        (refined.x, refined.value)
    } else {
        (grid_q(i_best), grid_best)
    };
    Ok(EstimateResult {
        q_est,
        log_posterior,
        m_eff,
        iterations: refined.iterations,
        converged: refined.converged,
    })
}

/// Equal-weight average of the previous-block and syndrome estimates.
#[inline]
pub fn estimate_mixed(q_prev: f64, q_synd: f64) -> f64 {
    0.5 * (q_prev + q_synd)
}
