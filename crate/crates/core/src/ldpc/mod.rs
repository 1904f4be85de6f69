//! Sparse parity-check matrices, their construction and serialization.

mod alist;
mod matrix;
mod peg;
mod pool;

pub use alist::{load_alist, parse_alist, save_alist, to_alist_string};
pub use matrix::ParityCheckMatrix;
pub use peg::{
    construct_gallager, construct_peg, construct_peg_with, DegreeDistribution, PegOptions,
};
pub(crate) use pool::csv_error;
pub use pool::{rows_for_rate, CodePool, PoolCode, MANIFEST_FILE};
