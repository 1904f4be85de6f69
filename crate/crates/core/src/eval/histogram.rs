use super::pipeline::BlockRecord;
use super::report::{format_float, Approach};
use crate::error::{Error, Result};

/// Density histogram of estimation errors `q_true - q_est`.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub approach: Approach,
    pub bin_width: f64,
    /// `(bin_left, bin_right, density)`; contiguous, left-closed bins.
    pub bins: Vec<(f64, f64, f64)>,
}

impl Histogram {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,density\n");
        for &(l, r, d) in &self.bins {
            out.push_str(&format!(
                "{},{},{}\n",
                format_float(l),
                format_float(r),
                format_float(d)
            ));
        }
        out
    }

    /// Sample mean reconstructed from bin midpoints.
    pub fn midpoint_mean(&self) -> f64 {
        self.bins
            .iter()
            .map(|&(l, r, d)| 0.5 * (l + r) * d * (r - l))
            .sum()
    }
}

/// Bins `q_true - q_est` of one approach over unflagged records. Bin `k`
/// covers `[k·w, (k+1)·w)`; all bins between the extreme errors are emitted,
/// so densities integrate to one.
pub fn emit_histogram(
    records: &[BlockRecord],
    approach: Approach,
    bin_width: f64,
) -> Result<Histogram> {
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return Err(Error::argument(format!(
            "bin width {bin_width} must be positive"
        )));
    }
    let bin_of = |e: f64| (e / bin_width).floor() as i64;
    let errors: Vec<f64> = records
        .iter()
        .filter_map(|r| approach.estimate(r).map(|est| r.q_true - est))
        .collect();
    let (Some(lo), Some(hi)) = (
        errors.iter().copied().map(bin_of).min(),
        errors.iter().copied().map(bin_of).max(),
    ) else {
        return Err(Error::argument("no unflagged records to histogram"));
    };
    let mut counts = vec![0usize; (hi - lo + 1) as usize];
    for &e in &errors {
        counts[(bin_of(e) - lo) as usize] += 1;
    }
    let total = errors.len() as f64;
    let bins = counts
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let left = (lo + k as i64) as f64 * bin_width;
            (left, left + bin_width, c as f64 / (total * bin_width))
        })
        .collect();
    Ok(Histogram {
        approach,
        bin_width,
        bins,
    })
}
