use crate::error::{Error, Result};

/// Probability that the XOR of `d` independent Bernoulli(`q`) bits is one:
/// `(1 - (1 - 2q)^d) / 2`, evaluated as `-expm1(d·ln1p(-2q)) / 2` so that
/// small `q·d` keeps full relative precision. Defined for `q ∈ [0, 0.5]`.
#[inline]
pub fn xor_prob(q: f64, d: u32) -> f64 {
    if d == 0 {
        return 0.0;
    }
    -(f64::from(d) * (-2.0 * q).ln_1p()).exp_m1() / 2.0
}

/// `ln(1 - xor_prob(q, d))`.
#[inline]
pub(crate) fn ln_even_parity(q: f64, d: u32) -> f64 {
    (-xor_prob(q, d)).ln_1p()
}

/// Closed-form estimate of `q` for a row-regular code from the fraction of
/// ones in the relative syndrome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularEstimate {
    pub q: f64,
    /// `p_est` was at or above 0.5 and was clamped to just below it.
    pub clamped: bool,
}

/// Largest `p_est` accepted before clamping.
pub const P_EST_CLAMP: f64 = 0.5 - 1e-9;

/// Inverse of [`xor_prob`] in `q`: `q = (1 - (1 - 2p)^(1/d)) / 2`.
pub fn q_ml_regular(p_est: f64, d_c: u32) -> Result<RegularEstimate> {
    if d_c == 0 {
        return Err(Error::argument("row degree must be positive"));
    }
    if p_est.is_nan() || p_est < 0.0 {
        return Err(Error::argument(format!(
            "p_est={p_est} must be non-negative"
        )));
    }
    let clamped = p_est > P_EST_CLAMP;
    let p = p_est.min(P_EST_CLAMP);
    let q = -((-2.0 * p).ln_1p() / f64::from(d_c)).exp_m1() / 2.0;
    Ok(RegularEstimate { q, clamped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn boundary_values() {
        assert_eq!(xor_prob(0.0, 7), 0.0);
        assert_eq!(xor_prob(0.3, 0), 0.0);
        assert_eq!(xor_prob(0.5, 1), 0.5);
        assert_abs_diff_eq!(xor_prob(0.5, 9), 0.5, epsilon = 1e-15);
        assert_eq!(xor_prob(0.2, 1), 0.2);
    }

    #[test]
    fn worked_example_d4() {
        // 4·0.05·0.95³ + 4·0.05³·0.95 = (1 - 0.9⁴)/2 = 0.17195
        let direct = 4.0 * 0.05 * 0.95f64.powi(3) + 4.0 * 0.05f64.powi(3) * 0.95;
        assert_abs_diff_eq!(direct, 0.17195, epsilon = 1e-15);
        assert_abs_diff_eq!(xor_prob(0.05, 4), 0.17195, epsilon = 1e-15);
        assert_abs_diff_eq!(q_ml_regular(0.17195, 4).unwrap().q, 0.05, epsilon = 1e-15);
    }

    #[test]
    fn regular_inverse_edges() {
        assert_eq!(q_ml_regular(0.0, 3).unwrap().q, 0.0);
        assert!(q_ml_regular(0.1, 0).is_err());
        assert!(q_ml_regular(-0.1, 2).is_err());
        let r = q_ml_regular(0.6, 5).unwrap();
        assert!(r.clamped && r.q < 0.5 && r.q > 0.4);
        assert!(!q_ml_regular(0.3, 5).unwrap().clamped);
    }
}
