//! Syndrome-based QBER estimation.
//!
//! The XOR of the two parties' syndromes depends only on the error pattern.
//! Each row whose positions avoid punctured bits is a Bernoulli variable with
//! success probability `xor_prob(q, d̃)`, where `d̃` counts the row's key
//! positions. The estimate maximizes the resulting log-likelihood plus an
//! optional sigmoid-window log-prior.

mod brent;
mod parity;
mod prior;
mod profile;
mod syndrome;

pub use brent::{maximize, BrentResult};
pub use parity::{q_ml_regular, xor_prob, RegularEstimate, P_EST_CLAMP};
pub use prior::{window_log_prior, Prior, QberWindowPrior};
pub use profile::{
    effective_degrees, log_likelihood, p_ml, EffectiveDegreeProfile, RowStatus, SyndromeTally,
};
pub use syndrome::{
    estimate_mixed, estimate_qber_syndrome, EstimateResult, GRID_POINTS, Q_TOLERANCE, SEARCH_LOWER,
    SEARCH_UPPER,
};
