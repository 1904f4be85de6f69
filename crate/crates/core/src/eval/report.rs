use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use super::pipeline::BlockRecord;
use crate::error::{Error, Result};
use crate::ldpc::csv_error;

pub const BLOCKS_HEADER: [&str; 11] = [
    "block_index",
    "n",
    "n_s",
    "n_p",
    "rate",
    "q_true",
    "q_prev",
    "q_synd",
    "q_mix",
    "m_eff",
    "converged",
];
pub const REPORT_HEADER: [&str; 4] = ["approach", "bias", "accuracy", "blocks_used"];

/// QBER estimation approach under comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Approach {
    /// Previous block's QBER.
    Prev,
    /// Syndrome likelihood.
    Synd,
    /// Mean of the two.
    Mix,
}

impl Approach {
    pub const ALL: [Approach; 3] = [Approach::Prev, Approach::Synd, Approach::Mix];

    pub fn name(self) -> &'static str {
        match self {
            Approach::Prev => "prev",
            Approach::Synd => "synd",
            Approach::Mix => "mix",
        }
    }

    /// This approach's estimate for a block, `None` for flagged blocks.
    pub fn estimate(self, record: &BlockRecord) -> Option<f64> {
        record.q_synd?;
        match self {
            Approach::Prev => Some(record.q_prev),
            Approach::Synd => record.q_synd,
            Approach::Mix => record.q_mix,
        }
    }
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Approach {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Approach::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::argument(format!("unknown approach {s:?}")))
    }
}

/// Bias `mean(q - q_est)` and accuracy `rms(q - q_est)` of one approach.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproachStats {
    pub approach: Approach,
    pub bias: f64,
    pub accuracy: f64,
    pub blocks_used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub stats: [ApproachStats; 3],
    pub total_blocks: usize,
    /// Blocks on which the syndrome estimator failed; excluded from all stats.
    pub failed_blocks: usize,
}

impl EvaluationReport {
    pub fn get(&self, approach: Approach) -> &ApproachStats {
        &self.stats[Approach::ALL
            .iter()
            .position(|&a| a == approach)
            .expect("known approach")]
    }
}

/// Population mean and RMS of `q_true - q_est` over unflagged records,
/// accumulated in record order.
pub fn aggregate(records: &[BlockRecord]) -> EvaluationReport {
    let stats = Approach::ALL.map(|approach| {
        let (mut sum, mut sum_sq, mut count) = (0.0, 0.0, 0usize);
        for r in records {
            if let Some(est) = approach.estimate(r) {
                let err = r.q_true - est;
                sum += err;
                sum_sq += err * err;
                count += 1;
            }
        }
        let (bias, accuracy) = if count == 0 {
            (f64::NAN, f64::NAN)
        } else {
            (sum / count as f64, (sum_sq / count as f64).sqrt())
        };
        ApproachStats {
            approach,
            bias,
            accuracy,
            blocks_used: count,
        }
    });
    EvaluationReport {
        stats,
        total_blocks: records.len(),
        failed_blocks: records.iter().filter(|r| r.is_flagged()).count(),
    }
}

/// Float format used in all CSV output: 17 significant digits, exact round trip.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn format_option(x: Option<f64>) -> String {
    x.map_or_else(|| "NaN".to_string(), format_float)
}

pub fn blocks_csv(records: &[BlockRecord]) -> String {
    let mut out = BLOCKS_HEADER.join(",");
    out.push('\n');
    for r in records {
        let fields = [
            r.block_index.to_string(),
            r.n.to_string(),
            r.n_s.to_string(),
            r.n_p.to_string(),
            format_float(r.rate),
            format_float(r.q_true),
            format_float(r.q_prev),
            format_option(r.q_synd),
            format_option(r.q_mix),
            r.m_eff.to_string(),
            r.converged.to_string(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn report_csv(report: &EvaluationReport) -> String {
    let mut out = REPORT_HEADER.join(",");
    out.push('\n');
    for s in &report.stats {
        out.push_str(&format!(
            "{},{},{},{}\n",
            s.approach,
            format_float(s.bias),
            format_float(s.accuracy),
            s.blocks_used
        ));
    }
    out
}

/// Reads a `blocks.csv` stream.
pub fn read_blocks_csv(path: impl AsRef<Path>) -> Result<Vec<BlockRecord>> {
    let path = path.as_ref();
    let name = path.display().to_string();
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    if headers.iter().ne(BLOCKS_HEADER) {
        return Err(Error::parse(
            &name,
            1,
            format!("expected header `{}`", BLOCKS_HEADER.join(",")),
        ));
    }
    fn parse<T: FromStr>(row: &csv::StringRecord, k: usize, name: &str, line: usize) -> Result<T> {
        let s = row.get(k).unwrap_or("");
        s.trim().parse().map_err(|_| {
            Error::parse(
                name,
                line,
                format!("invalid {} value {s:?}", BLOCKS_HEADER[k]),
            )
        })
    }
    let opt = |v: f64| (!v.is_nan()).then_some(v);
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| csv_error(path, e))?;
        records.push(BlockRecord {
            block_index: parse(&row, 0, &name, line)?,
            n: parse(&row, 1, &name, line)?,
            n_s: parse(&row, 2, &name, line)?,
            n_p: parse(&row, 3, &name, line)?,
            rate: parse(&row, 4, &name, line)?,
            q_true: parse(&row, 5, &name, line)?,
            q_prev: parse(&row, 6, &name, line)?,
            q_synd: opt(parse(&row, 7, &name, line)?),
            q_mix: opt(parse(&row, 8, &name, line)?),
            m_eff: parse(&row, 9, &name, line)?,
            converged: parse(&row, 10, &name, line)?,
        });
    }
    Ok(records)
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(i: usize, q_true: f64, q_prev: f64, q_synd: Option<f64>) -> BlockRecord {
        BlockRecord {
            block_index: i,
            n: 100,
            n_s: 2,
            n_p: 3,
            rate: 0.5,
            q_true,
            q_prev,
            q_synd,
            q_mix: q_synd.map(|s| 0.5 * (q_prev + s)),
            m_eff: 40,
            converged: q_synd.is_some(),
        }
    }

    #[test]
    fn aggregates_are_population_moments() {
        let records = vec![
            record(0, 0.03, 0.02, Some(0.04)),
            record(1, 0.05, 0.03, Some(0.05)),
            record(2, 0.04, 0.05, None),
        ];
        let rep = aggregate(&records);
        assert_eq!(rep.failed_blocks, 1);
        let prev = rep.get(Approach::Prev);
        assert_eq!(prev.blocks_used, 2);
        assert!((prev.bias - 0.015).abs() < 1e-15);
        assert!((prev.accuracy - ((0.01f64.powi(2) + 0.02f64.powi(2)) / 2.0).sqrt()).abs() < 1e-15);
        let synd = rep.get(Approach::Synd);
        assert!((synd.bias - (-0.005)).abs() < 1e-15);
        for s in &rep.stats {
            assert!(s.accuracy >= s.bias.abs());
        }
    }

    #[test]
    fn blocks_csv_round_trip() {
        let records = vec![
            record(0, 0.031, 0.03, Some(0.0337)),
            record(1, 0.029, 0.031, None),
        ];
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("blocks.csv");
        write_file(&path, &blocks_csv(&records)).unwrap();
        assert_eq!(read_blocks_csv(&path).unwrap(), records);
    }

    #[test]
    fn bad_header_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("blocks.csv");
        write_file(&path, "a,b\n1,2\n").unwrap();
        assert!(matches!(
            read_blocks_csv(&path),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 2.5e-7, -0.00041] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(f64::NAN), "NaN");
    }
}
