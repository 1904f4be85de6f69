mod common;

use proptest::prelude::*;
use rand::Rng;
use synqber::estimator::{
    effective_degrees, estimate_qber_syndrome, xor_prob, EffectiveDegreeProfile, Prior,
    QberWindowPrior, RowStatus, SyndromeTally,
};
use synqber::extension::{extend_key, plan_extension};
use synqber::ldpc::{construct_peg, ParityCheckMatrix};
use synqber::simulation::generate_key_pair;
use synqber::{relative_syndrome, BitBlock};

proptest! {
    #[test]
    fn xor_prob_matches_binomial_sum(q in 0.0f64..=0.5, d in 0u32..=64) {
        let oracle = common::xor_prob_binomial(q, d);
        prop_assert!((xor_prob(q, d) - oracle).abs() < 1e-12);
    }

    #[test]
    fn xor_prob_is_strictly_increasing(a in 0.0f64..0.5, b in 0.0f64..0.5, d in 1u32..=64) {
        prop_assume!((a - b).abs() > 1e-9);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(xor_prob(lo, d) <= xor_prob(hi, d));
        // Strictness is only visible once the gap exceeds double rounding.
        let gap = 0.5 * ((1.0 - 2.0 * lo).powi(d as i32) - (1.0 - 2.0 * hi).powi(d as i32));
        if gap > 1e-14 {
            prop_assert!(xor_prob(lo, d) < xor_prob(hi, d));
        }
        prop_assert_eq!(xor_prob(0.5, d), 0.5);
    }
}

fn half_rate_code(n: usize, seed: u64) -> ParityCheckMatrix {
    construct_peg(n, n / 2, &common::irregular_dv20(), seed).unwrap()
}

#[test]
fn punctured_rows_look_like_fair_coins() {
    let h = half_rate_code(1000, 3);
    let layout = plan_extension(1000, 20, 30, 9).unwrap();
    let profile = effective_degrees(&h, &layout).unwrap();
    let punctured: Vec<usize> = (0..h.m())
        .filter(|&i| profile.rows()[i] == RowStatus::Punctured)
        .collect();
    assert!(!punctured.is_empty());

    let kp = generate_key_pair(layout.n_key(), 0.04, 5).unwrap();
    let mut alice = common::rng(10);
    let mut bob = common::rng(11);
    let draws = 4000;
    let mut ones = vec![0u64; punctured.len()];
    for _ in 0..draws {
        let a = extend_key(&kp.alice, &layout, false, &mut alice).unwrap();
        let b = extend_key(&kp.bob, &layout, false, &mut bob).unwrap();
        let ds = relative_syndrome(&h.syndrome(&a).unwrap(), &h.syndrome(&b).unwrap()).unwrap();
        for (count, &row) in ones.iter_mut().zip(&punctured) {
            *count += u64::from(ds.get(row));
        }
    }
    let expected = draws as f64 / 2.0;
    let chi2: f64 = ones
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / (draws as f64 / 4.0))
        .sum();
    let p = common::chi_square_sf(chi2, punctured.len() as f64);
    assert!(
        p > 0.001,
        "chi2={chi2} over {} rows, p={p}",
        punctured.len()
    );
}

/// Drops shortened columns from `h` outright and keeps the rows that still
/// touch a key position.
fn reduced_matrix(h: &ParityCheckMatrix, key_positions: &[usize]) -> ParityCheckMatrix {
    let mut new_index = vec![usize::MAX; h.n()];
    for (k, &pos) in key_positions.iter().enumerate() {
        new_index[pos] = k;
    }
    let rows = h
        .rows()
        .iter()
        .map(|row| {
            let mut r: Vec<usize> = row
                .iter()
                .filter(|&&j| new_index[j] != usize::MAX)
                .map(|&j| new_index[j])
                .collect();
            r.sort_unstable();
            r
        })
        .filter(|r| !r.is_empty())
        .collect();
    ParityCheckMatrix::new(key_positions.len(), rows).unwrap()
}

#[test]
fn shortened_layout_matches_degree_reduced_code() {
    let h = half_rate_code(1000, 8);
    let layout = plan_extension(1000, 150, 0, 21).unwrap();
    let profile = effective_degrees(&h, &layout).unwrap();
    let reduced = reduced_matrix(&h, layout.key_positions());
    let reduced_profile = EffectiveDegreeProfile::unextended(&reduced);
    let prior = Prior::Flat;
    let q = 0.05;
    let trials = 400;
    let mut rng = common::rng(77);

    let mut via_layout = Vec::with_capacity(trials);
    let mut via_reduced = Vec::with_capacity(trials);
    for t in 0..trials {
        let kp = generate_key_pair(layout.n_key(), q, 1000 + t as u64).unwrap();
        let a = extend_key(&kp.alice, &layout, false, &mut rng).unwrap();
        let b = extend_key(&kp.bob, &layout, false, &mut rng).unwrap();
        let ds = relative_syndrome(&h.syndrome(&a).unwrap(), &h.syndrome(&b).unwrap()).unwrap();
        via_layout.push(estimate_qber_syndrome(&ds, &profile, &prior).unwrap().q_est);

        let kp = generate_key_pair(layout.n_key(), q, 50_000 + t as u64).unwrap();
        let error = kp.alice.xor(&kp.bob).unwrap();
        let ds = reduced.syndrome(&error).unwrap();
        via_reduced.push(
            estimate_qber_syndrome(&ds, &reduced_profile, &prior)
                .unwrap()
                .q_est,
        );
    }
    let (d, p) = common::ks_two_sample(&via_layout, &via_reduced);
    assert!(p > 0.01, "KS D={d}, p={p}");
}

#[test]
fn syndrome_estimate_is_centred_at_q_005_n_4000() {
    let h = half_rate_code(4000, 12);
    let profile = EffectiveDegreeProfile::unextended(&h);
    let trials = 1000;
    let mut sum = 0.0;
    for t in 0..trials {
        let kp = generate_key_pair(4000, 0.05, t).unwrap();
        let ds = h.syndrome(&kp.alice.xor(&kp.bob).unwrap()).unwrap();
        sum += estimate_qber_syndrome(&ds, &profile, &Prior::Flat)
            .unwrap()
            .q_est;
    }
    let mean = sum / trials as f64;
    assert!((mean - 0.05).abs() < 0.003, "mean estimate {mean}");
}

#[test]
fn returned_estimates_are_local_maxima() {
    let h = half_rate_code(2000, 2);
    let layout = plan_extension(2000, 40, 60, 6).unwrap();
    let profile = effective_degrees(&h, &layout).unwrap();
    let prior = Prior::Window(QberWindowPrior::DEPLOYED);
    let mut rng = common::rng(4);
    for _ in 0..200 {
        let ds: BitBlock = {
            let p = rng.random_range(0.0..0.5);
            (0..h.m()).map(|_| rng.random_bool(p)).collect()
        };
        let est = estimate_qber_syndrome(&ds, &profile, &prior).unwrap();
        let tally = SyndromeTally::new(&ds, &profile).unwrap();
        let post = |q: f64| tally.log_likelihood(q) + prior.log_density(q);
        assert!(
            (est.log_posterior - post(est.q_est)).abs() <= 1e-9 * est.log_posterior.abs().max(1.0)
        );
        for delta in [-1e-5, 1e-5] {
            let q = est.q_est + delta;
            if (1e-4..=0.5 - 1e-4).contains(&q) {
                assert!(
                    est.log_posterior >= post(q),
                    "q_est={} delta={delta}",
                    est.q_est
                );
            }
        }
    }
}
