use crate::error::{invalid, Result};
use crate::info::{noise_capacity, validate_pmf};
use crate::stats::compensated_sum;

/// Closed-form single- and multi-user capacities used as reference lines.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceCapacity {
    /// Additive noise over F_q with noise pmf `Z`: `log q − H(Z)`.
    FiniteField { noise: Vec<f64> },
    /// `log₂(1 + snr)`.
    Gaussian { snr: f64 },
    /// Mean of `log₂(1 + g)` over fading samples `g = snr |H|²`.
    ErgodicGaussian { gains: Vec<f64> },
    /// Multiple-access sum rate `log₂(1 + Σ snr_i)`.
    MacSum { snrs: Vec<f64> },
    /// Per-user rate of complement-pairing alignment, half the noise capacity.
    NgjvRate { noise: Vec<f64> },
}

fn check_snr(snr: f64) -> Result<f64> {
    if snr >= 0.0 && snr.is_finite() {
        Ok(snr)
    } else {
        Err(invalid(format!("snr must be finite and non-negative, got {snr}")))
    }
}

pub fn reference_capacity(kind: &ReferenceCapacity) -> Result<f64> {
    match kind {
        ReferenceCapacity::FiniteField { noise } => {
            validate_pmf(noise)?;
            Ok(noise_capacity(noise))
        }
        ReferenceCapacity::Gaussian { snr } => Ok((1.0 + check_snr(*snr)?).log2()),
        ReferenceCapacity::ErgodicGaussian { gains } => {
            if gains.is_empty() {
                return Err(invalid("ergodic capacity needs at least one fading sample"));
            }
            let rates = gains.iter().map(|&g| check_snr(g).map(|g| (1.0 + g).log2())).collect::<Result<Vec<_>>>()?;
            Ok(compensated_sum(rates) / gains.len() as f64)
        }
        ReferenceCapacity::MacSum { snrs } => {
            let total = snrs.iter().map(|&s| check_snr(s)).collect::<Result<Vec<_>>>()?;
            Ok((1.0 + compensated_sum(total)).log2())
        }
        ReferenceCapacity::NgjvRate { noise } => {
            validate_pmf(noise)?;
            Ok(noise_capacity(noise) / 2.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::binary_entropy;

    #[test]
    fn closed_forms() {
        assert_eq!(reference_capacity(&ReferenceCapacity::Gaussian { snr: 1.0 }).unwrap(), 1.0);
        let mac = reference_capacity(&ReferenceCapacity::MacSum { snrs: vec![1.0, 1.0] }).unwrap();
        assert!((mac - 3f64.log2()).abs() < 1e-15);
        let bsc = vec![0.89, 0.11];
        let ff = reference_capacity(&ReferenceCapacity::FiniteField { noise: bsc.clone() }).unwrap();
        assert!((ff - (1.0 - binary_entropy(0.11))).abs() < 1e-12);
        let ngjv = reference_capacity(&ReferenceCapacity::NgjvRate { noise: bsc }).unwrap();
        assert!((2.0 * ngjv - ff).abs() < 1e-15);
        let erg = reference_capacity(&ReferenceCapacity::ErgodicGaussian { gains: vec![0.0, 3.0] }).unwrap();
        assert!((erg - 1.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_inputs() {
        assert!(reference_capacity(&ReferenceCapacity::FiniteField { noise: vec![0.5, 0.6] }).is_err());
        assert!(reference_capacity(&ReferenceCapacity::Gaussian { snr: -1.0 }).is_err());
        assert!(reference_capacity(&ReferenceCapacity::ErgodicGaussian { gains: vec![] }).is_err());
    }

    #[test]
    fn ergodic_is_below_gaussian_at_the_mean() {
        // Jensen: the fading average sits below the rate at the mean gain.
        let gains = vec![0.1, 0.5, 2.0, 4.0];
        let mean = gains.iter().sum::<f64>() / 4.0;
        let erg = reference_capacity(&ReferenceCapacity::ErgodicGaussian { gains }).unwrap();
        assert!(erg < reference_capacity(&ReferenceCapacity::Gaussian { snr: mean }).unwrap());
    }
}
