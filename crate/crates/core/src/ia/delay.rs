use itertools::Itertools;
use rand::Rng;

use crate::error::{invalid, Result};
use crate::ff::PrimeField;
use crate::rng;

/// Expected NGJV matching delay `(q-1)^{n²}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NgjvDelay {
    pub value: f64,
    /// Set when the value overflowed to `+inf`.
    pub saturated: bool,
}

pub fn ngjv_expected_delay(n: usize, q: u32) -> NgjvDelay {
    let value = ((q as f64) - 1.0).powf((n * n) as f64);
    NgjvDelay { value, saturated: value.is_infinite() }
}

/// Probability that `L` independent uniform nonzero elements of F_q sum to 0.
///
/// Each summand has law `(1+ρ)U − ρδ₀` with `ρ = 1/(q−1)`, so the L-fold sum
/// has mass `1/q + (−1)^L / (q (q−1)^{L−1})` at zero. The sign matters: for
/// L = 1 the sum is a single nonzero element and the mass is 0.
pub fn recovery_failure_prob(q: u32, l: u32) -> Result<f64> {
    if q < 2 || l == 0 {
        return Err(invalid("need q >= 2 and L >= 1"));
    }
    let qf = q as f64;
    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
    Ok(1.0 / qf + sign / (qf * (qf - 1.0).powi(l as i32 - 1)))
}

/// Exact zero-sum frequency by enumerating all `(q−1)^L` tuples.
pub fn enumerate_zero_combination(field: PrimeField, l: usize) -> f64 {
    let mut zero = 0u64;
    let mut total = 0u64;
    for tuple in (0..l).map(|_| field.nonzero()).multi_cartesian_product() {
        total += 1;
        if tuple.iter().fold(0, |acc, v| field.add(acc, *v)) == 0 {
            zero += 1;
        }
    }
    if l == 0 {
        return 1.0;
    }
    zero as f64 / total as f64
}

/// Monte Carlo zero-sum frequency: each sample draws nonzero coefficients
/// `λ_k` and direct gains `h_k`, and checks whether `Σ λ_k h_k = 0`.
pub fn sample_zero_combination(field: PrimeField, l: usize, samples: u64, seed: u64) -> f64 {
    let q = field.modulus();
    let mut r = rng::seeded(seed);
    let mut zero = 0u64;
    for _ in 0..samples {
        let s = (0..l).fold(0, |acc, _| {
            let lambda = r.random_range(1..q);
            let h = r.random_range(1..q);
            field.add(acc, field.mul(lambda, h))
        });
        if s == 0 {
            zero += 1;
        }
    }
    zero as f64 / samples as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ngjv_closed_form() {
        assert_eq!(ngjv_expected_delay(2, 3).value, 16.0);
        assert_eq!(ngjv_expected_delay(1, 2).value, 1.0);
        assert!(ngjv_expected_delay(40, 65_521).saturated);
    }

    #[test]
    fn failure_probability_examples() {
        assert_eq!(recovery_failure_prob(7, 1).unwrap(), 0.0);
        assert!((recovery_failure_prob(3, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!((recovery_failure_prob(5, 3).unwrap() - 0.1875).abs() < 1e-15);
        assert!(recovery_failure_prob(1, 1).is_err());
    }

    #[test]
    fn failure_probability_matches_enumeration() {
        for q in [2u32, 3, 5, 7] {
            let f = PrimeField::new(q).unwrap();
            for l in 1..=4 {
                let exact = enumerate_zero_combination(f, l);
                assert!((exact - recovery_failure_prob(q, l as u32).unwrap()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn failure_is_order_one_over_q() {
        for q in [3u32, 5, 7, 11, 101, 65_521] {
            for l in 1..12 {
                let p = recovery_failure_prob(q, l).unwrap();
                assert!((0.0..1.0).contains(&p));
                if l >= 2 {
                    assert!(q as f64 * p <= 2.0 + 1e-12);
                }
            }
        }
    }
}
