#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use synqber::ldpc::DegreeDistribution;
use synqber::BitBlock;

pub fn irregular_dv20() -> DegreeDistribution {
    DegreeDistribution::parse(
        include_str!("../../../../configs/irregular_dv20.dist"),
        "irregular_dv20.dist",
    )
    .expect("bundled distribution parses")
}

pub fn random_bits(len: usize, rng: &mut ChaCha8Rng) -> BitBlock {
    (0..len).map(|_| rng.random::<bool>()).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Binomial-sum oracle for the probability that an XOR of `d` Bernoulli(q)
/// bits is one.
pub fn xor_prob_binomial(q: f64, d: u32) -> f64 {
    let mut total = 0.0;
    let mut binom = 1.0f64; // C(d, j)
    for j in 0..=d {
        if j > 0 {
            binom = binom * f64::from(d - j + 1) / f64::from(j);
        }
        if j % 2 == 1 {
            total += binom * q.powi(j as i32) * (1.0 - q).powi((d - j) as i32);
        }
    }
    total
}

/// Regularized upper tail of the chi-square distribution.
pub fn chi_square_sf(statistic: f64, dof: f64) -> f64 {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    ChiSquared::new(dof).expect("valid dof").sf(statistic)
}

/// Two-sample Kolmogorov–Smirnov test; returns `(D, asymptotic p-value)`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> (f64, f64) {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let en = (na * nb / (na + nb)).sqrt();
    let lambda = (en + 0.12 + 0.11 / en) * d;
    let mut p = 0.0;
    for k in 1..200 {
        let term = 2.0 * (-1f64).powi(k - 1) * (-2.0 * (k as f64 * lambda).powi(2)).exp();
        p += term;
        if term.abs() < 1e-12 {
            break;
        }
    }
    (d, p.clamp(0.0, 1.0))
}

/// Pool whose matrices only carry the right shape; enough for code selection.
pub fn stub_pool(n: usize, rates: &[f64]) -> synqber::ldpc::CodePool {
    use synqber::ldpc::{rows_for_rate, CodePool, ParityCheckMatrix, PoolCode};
    let codes = rates
        .iter()
        .map(|&rate| {
            let m = rows_for_rate(n, rate);
            let rows = (0..m).map(|i| vec![i]).collect();
            PoolCode {
                rate,
                matrix: ParityCheckMatrix::new(n, rows).unwrap(),
            }
        })
        .collect();
    CodePool::new(n, codes).unwrap()
}

pub fn standard_rates() -> Vec<f64> {
    (0..9).map(|i| 0.5 + 0.05 * i as f64).collect()
}

/// Exhaustive enumeration oracle: every `(code, n_p)` pair, sorted by
/// `(|f - 1|, m, n_p)`. Returns `(code_index, n_p, f)`.
pub fn select_code_oracle(
    pool: &synqber::ldpc::CodePool,
    q_prev: f64,
    n_d: usize,
) -> (usize, usize, f64) {
    let h = -q_prev * q_prev.log2() - (1.0 - q_prev) * (1.0 - q_prev).log2();
    let mut candidates = Vec::new();
    for (i, code) in pool.codes().iter().enumerate() {
        let m = code.matrix.m();
        for n_p in 0..=n_d.min(m) {
            let f = (m - n_p) as f64 / ((pool.n() - n_d) as f64 * h);
            candidates.push(((f - 1.0).abs(), m, n_p, i, f));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let best = candidates[0];
    (best.3, best.2, best.4)
}
