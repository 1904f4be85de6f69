use super::parity::{ln_even_parity, xor_prob};
use crate::bits::BitBlock;
use crate::error::{Error, EstimationError, Result};
use crate::extension::{ExtensionLayout, PositionRole};
use crate::ldpc::ParityCheckMatrix;

/// How one syndrome row relates to the extension layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    /// Row covers `degree >= 1` key positions and no punctured position.
    Usable { degree: u32 },
    /// Row touches a punctured position; its relative syndrome bit is a fair coin.
    Punctured,
    /// Row covers only shortened positions; its relative syndrome bit is always 0.
    Exhausted,
}

/// Per-row effective degrees `d̃ᵢ = dᵢ - |Aᵢ ∩ S|` and usability flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveDegreeProfile {
    rows: Vec<RowStatus>,
    usable: usize,
}

impl EffectiveDegreeProfile {
    pub fn from_rows(rows: Vec<RowStatus>) -> Self {
        let usable = rows
            .iter()
            .filter(|r| matches!(r, RowStatus::Usable { .. }))
            .count();
        EffectiveDegreeProfile { rows, usable }
    }

    /// Profile of a matrix used without shortening or puncturing.
    pub fn unextended(h: &ParityCheckMatrix) -> Self {
        Self::from_rows(
            h.row_degrees()
                .into_iter()
                .map(|d| RowStatus::Usable { degree: d as u32 })
                .collect(),
        )
    }

    pub fn rows(&self) -> &[RowStatus] {
        &self.rows
    }

    /// Number of rows (`m`).
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of usable rows (`m_eff`).
    pub fn usable_rows(&self) -> usize {
        self.usable
    }

    pub fn effective_degree(&self, row: usize) -> Option<u32> {
        match self.rows[row] {
            RowStatus::Usable { degree } => Some(degree),
            _ => None,
        }
    }
}

/// Classifies every row of `h` against the layout's shortened and punctured sets.
pub fn effective_degrees(
    h: &ParityCheckMatrix,
    layout: &ExtensionLayout,
) -> Result<EffectiveDegreeProfile> {
    if h.n() != layout.n() {
        return Err(Error::argument(format!(
            "matrix frame length {} does not match layout length {}",
            h.n(),
            layout.n()
        )));
    }
    let rows = h
        .rows()
        .iter()
        .map(|row| {
            let mut key = 0u32;
            for &j in row {
                match layout.role(j) {
                    PositionRole::Punctured => return RowStatus::Punctured,
                    PositionRole::Key => key += 1,
                    PositionRole::Shortened => {}
                }
            }
            if key == 0 {
                RowStatus::Exhausted
            } else {
                RowStatus::Usable { degree: key }
            }
        })
        .collect();
    Ok(EffectiveDegreeProfile::from_rows(rows))
}

/// Counts of zero and one relative-syndrome bits per effective degree. The
/// likelihood only depends on these counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeTally {
    /// `(degree, zeros, ones)` sorted by degree.
    bins: Vec<(u32, u64, u64)>,
}

impl SyndromeTally {
    pub fn new(delta_s: &BitBlock, profile: &EffectiveDegreeProfile) -> Result<Self> {
        if delta_s.len() != profile.len() {
            return Err(Error::argument(format!(
                "relative syndrome has {} bits, profile has {} rows",
                delta_s.len(),
                profile.len()
            )));
        }
        let mut by_degree = std::collections::BTreeMap::<u32, (u64, u64)>::new();
        for (i, (bit, status)) in delta_s.iter().zip(profile.rows()).enumerate() {
            match *status {
                RowStatus::Usable { degree } => {
                    let e = by_degree.entry(degree).or_default();
                    if bit {
                        e.1 += 1;
                    } else {
                        e.0 += 1;
                    }
                }
                RowStatus::Exhausted if bit => {
                    return Err(EstimationError::ImpossibleEvent(i).into());
                }
                _ => {}
            }
        }
        Ok(SyndromeTally {
            bins: by_degree.into_iter().map(|(d, (z, o))| (d, z, o)).collect(),
        })
    }

    pub fn bins(&self) -> &[(u32, u64, u64)] {
        &self.bins
    }

    pub fn usable_rows(&self) -> u64 {
        self.bins.iter().map(|b| b.1 + b.2).sum()
    }

    pub fn ones(&self) -> u64 {
        self.bins.iter().map(|b| b.2).sum()
    }

    /// `Σ_d zeros_d·ln(1 - p(q,d)) + ones_d·ln p(q,d)`.
    pub fn log_likelihood(&self, q: f64) -> f64 {
        self.bins
            .iter()
            .map(|&(d, zeros, ones)| {
                let mut acc = 0.0;
                if zeros > 0 {
                    acc += zeros as f64 * ln_even_parity(q, d);
                }
                if ones > 0 {
                    acc += ones as f64 * xor_prob(q, d).ln();
                }
                acc
            })
            .sum()
    }
}

/// Fraction of ones in the relative syndrome over usable rows.
pub fn p_ml(delta_s: &BitBlock, profile: &EffectiveDegreeProfile) -> Result<f64> {
    let tally = SyndromeTally::new(delta_s, profile)?;
    let used = tally.usable_rows();
    if used == 0 {
        return Err(EstimationError::NoInformativeRows.into());
    }
    Ok(tally.ones() as f64 / used as f64)
}

/// Log-likelihood of QBER `q` given the relative syndrome, skipping rows that
/// touch punctured positions.
pub fn log_likelihood(q: f64, delta_s: &BitBlock, profile: &EffectiveDegreeProfile) -> Result<f64> {
    Ok(SyndromeTally::new(delta_s, profile)?.log_likelihood(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::plan_extension;
    use approx::assert_abs_diff_eq;

    fn h3() -> ParityCheckMatrix {
        ParityCheckMatrix::new(5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap()
    }

    /// Layout over 5 positions with the given shortened/punctured positions.
    fn layout_with(shortened: &[usize], punctured: &[usize]) -> ExtensionLayout {
        // Search seeds until the shuffle yields the requested sets.
        for seed in 0.. {
            let l = plan_extension(5, shortened.len(), punctured.len(), seed).unwrap();
            if l.shortened_positions() == shortened && l.punctured_positions() == punctured {
                return l;
            }
        }
        unreachable!()
    }

    #[test]
    fn no_extension_keeps_row_degrees() {
        let p = effective_degrees(&h3(), &plan_extension(5, 0, 0, 1).unwrap()).unwrap();
        assert_eq!(p, EffectiveDegreeProfile::unextended(&h3()));
        assert_eq!(p.usable_rows(), 2);
        assert_eq!(p.effective_degree(0), Some(3));
    }

    #[test]
    fn punctured_row_is_unusable() {
        let p = effective_degrees(&h3(), &layout_with(&[], &[1])).unwrap();
        assert_eq!(p.rows()[0], RowStatus::Punctured);
        assert_eq!(p.rows()[1], RowStatus::Usable { degree: 3 });
    }

    #[test]
    fn shortened_positions_reduce_degree() {
        let p = effective_degrees(&h3(), &layout_with(&[1, 2], &[])).unwrap();
        assert_eq!(p.rows()[0], RowStatus::Usable { degree: 1 });
        assert_eq!(p.rows()[1], RowStatus::Usable { degree: 2 });
    }

    #[test]
    fn fully_shortened_row_is_exhausted() {
        let p = effective_degrees(&h3(), &layout_with(&[0, 1, 2], &[])).unwrap();
        assert_eq!(p.rows()[0], RowStatus::Exhausted);
        assert_eq!(p.usable_rows(), 1);
        let ok: BitBlock = "01".parse().unwrap();
        assert!(log_likelihood(0.1, &ok, &p).is_ok());
        let bad: BitBlock = "10".parse().unwrap();
        assert!(matches!(
            log_likelihood(0.1, &bad, &p),
            Err(Error::Estimation(EstimationError::ImpossibleEvent(0)))
        ));
    }

    #[test]
    fn p_ml_examples() {
        let profile = EffectiveDegreeProfile::from_rows(vec![RowStatus::Usable { degree: 3 }; 4]);
        assert_eq!(p_ml(&BitBlock::zeros(4), &profile).unwrap(), 0.0);
        assert_eq!(p_ml(&"1010".parse().unwrap(), &profile).unwrap(), 0.5);
        let none = EffectiveDegreeProfile::from_rows(vec![RowStatus::Punctured; 4]);
        assert!(matches!(
            p_ml(&BitBlock::zeros(4), &none),
            Err(Error::Estimation(EstimationError::NoInformativeRows))
        ));
    }

    #[test]
    fn likelihood_limits() {
        let one = EffectiveDegreeProfile::from_rows(vec![RowStatus::Usable { degree: 1 }]);
        let ll = log_likelihood(0.07, &"1".parse().unwrap(), &one).unwrap();
        assert_abs_diff_eq!(ll, 0.07f64.ln(), epsilon = 1e-14);

        let profile = EffectiveDegreeProfile::from_rows(vec![RowStatus::Usable { degree: 6 }; 50]);
        let zeros = BitBlock::zeros(50);
        assert!(log_likelihood(1e-12, &zeros, &profile).unwrap().abs() < 1e-9);
    }

    #[test]
    fn tally_matches_per_row_product() {
        let profile = EffectiveDegreeProfile::from_rows(vec![
            RowStatus::Usable { degree: 2 },
            RowStatus::Punctured,
            RowStatus::Usable { degree: 5 },
            RowStatus::Usable { degree: 2 },
            RowStatus::Usable { degree: 5 },
        ]);
        let ds: BitBlock = "11010".parse().unwrap();
        let q = 0.04;
        let direct: f64 = [(2u32, true), (5, false), (2, true), (5, false)]
            .iter()
            .map(|&(d, b)| {
                let p = xor_prob(q, d);
                (if b { p } else { 1.0 - p }).ln()
            })
            .sum();
        assert_abs_diff_eq!(
            log_likelihood(q, &ds, &profile).unwrap(),
            direct,
            epsilon = 1e-13
        );
    }
}
