//! Syndrome-based QBER estimation for LDPC information reconciliation.
//!
//! Two parties holding correlated sifted keys compute LDPC syndromes of their
//! extended keys. The XOR of those syndromes depends only on the error
//! pattern, so it yields an on-the-fly estimate of the quantum bit error rate
//! (QBER) for the very block being reconciled. The crate covers:
//!
//! * [`ldpc`]: sparse parity-check matrices, PEG construction, alist I/O;
//! * [`extension`]: shortened/punctured extended keys and code selection;
//! * [`estimator`]: the syndrome-likelihood estimator and its closed-form
//!   special case;
//! * [`simulation`]: binary symmetric channel key pairs and QBER traces;
//! * [`eval`]: the block pipeline comparing previous-block, syndrome and mixed
//!   estimates.

pub mod bits;
pub mod error;
pub mod estimator;
pub mod eval;
pub mod exec;
pub mod extension;
pub mod ldpc;
pub mod rng;
pub mod simulation;

pub use bits::{relative_syndrome, BitBlock};
pub use error::{Error, EstimationError, Result};
pub use exec::Execution;
