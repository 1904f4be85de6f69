//! Block-by-block evaluation of QBER estimators and its CSV reports.

mod config;
mod histogram;
mod pipeline;
mod report;

use std::fs;
use std::path::Path;

pub use config::{default_n_d, SimulationConfig, DEFAULT_EXTENSION_FRACTION, DEFAULT_Q_INIT};
pub use histogram::{emit_histogram, Histogram};
pub use pipeline::{run_evaluation, BlockRecord, Evaluation};
pub use report::{
    aggregate, blocks_csv, format_float, read_blocks_csv, report_csv, Approach, ApproachStats,
    EvaluationReport, BLOCKS_HEADER, REPORT_HEADER,
};

use crate::error::{Error, Result};

/// Writes `blocks.csv`, `report.csv` and `hist_<approach>.csv` into `dir`.
pub fn write_outputs(dir: impl AsRef<Path>, evaluation: &Evaluation, bin_width: f64) -> Result<()> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    report::write_file(&dir.join("blocks.csv"), &blocks_csv(&evaluation.records))?;
    report::write_file(&dir.join("report.csv"), &report_csv(&evaluation.report))?;
    for approach in Approach::ALL {
        let hist = emit_histogram(&evaluation.records, approach, bin_width)?;
        report::write_file(&dir.join(format!("hist_{approach}.csv")), &hist.to_csv())?;
    }
    Ok(())
}
