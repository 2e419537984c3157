//! Entropy and mutual information in bits.

use crate::error::{invalid, Result};

/// Check that `pmf` is a probability vector to within 1e-12.
pub fn validate_pmf(pmf: &[f64]) -> Result<()> {
    if pmf.is_empty() {
        return Err(invalid("empty pmf"));
    }
    if pmf.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(invalid("pmf has a negative or non-finite entry"));
    }
    let total: f64 = pmf.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(invalid(format!("pmf sums to {total}, not 1")));
    }
    Ok(())
}

/// Shannon entropy `H(P)` in bits; zero-mass entries contribute nothing.
pub fn entropy(pmf: &[f64]) -> f64 {
    -pmf.iter().filter(|p| **p > 0.0).map(|p| p * p.log2()).sum::<f64>()
}

/// Binary entropy H₂(p).
pub fn binary_entropy(p: f64) -> f64 {
    entropy(&[p, 1.0 - p])
}

/// `I(X; Y)` from a joint table `joint[x][y]` (need not be normalised).
pub fn mutual_information(joint: &[Vec<f64>]) -> f64 {
    let total: f64 = joint.iter().flatten().sum();
    if total <= 0.0 {
        return 0.0;
    }
    let cols = joint.iter().map(Vec::len).max().unwrap_or(0);
    let px: Vec<f64> = joint.iter().map(|r| r.iter().sum::<f64>() / total).collect();
    let mut py = vec![0.0; cols];
    for row in joint {
        for (y, v) in row.iter().enumerate() {
            py[y] += v / total;
        }
    }
    let mut mi = 0.0;
    for (x, row) in joint.iter().enumerate() {
        for (y, v) in row.iter().enumerate() {
            let pxy = v / total;
            if pxy > 0.0 {
                mi += pxy * (pxy / (px[x] * py[y])).log2();
            }
        }
    }
    mi.max(0.0)
}

/// `D(Z) = log₂ q − H(Z)`: capacity of the additive-noise channel over F_q.
pub fn noise_capacity(pmf: &[f64]) -> f64 {
    ((pmf.len() as f64).log2() - entropy(pmf)).max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert!((entropy(&[0.25; 4]) - 2.0).abs() < 1e-15);
        assert!((1.0 - binary_entropy(0.11) - 0.500_084_04).abs() < 1e-8);
    }

    #[test]
    fn mutual_information_of_copy_and_independent() {
        let copy = vec![vec![0.5, 0.0], vec![0.0, 0.5]];
        assert!((mutual_information(&copy) - 1.0).abs() < 1e-15);
        let indep = vec![vec![0.06, 0.14], vec![0.24, 0.56]];
        assert!(mutual_information(&indep).abs() < 1e-15);
    }

    #[test]
    fn noise_capacity_is_zero_only_for_uniform() {
        assert!(noise_capacity(&[0.2; 5]).abs() < 1e-12);
        for p0 in [0.3, 0.5, 0.9, 1.0] {
            let rest = (1.0 - p0) / 4.0;
            let pmf = [p0, rest, rest, rest, rest];
            assert!(noise_capacity(&pmf) > 0.0);
        }
    }

    #[test]
    fn pmf_validation() {
        assert!(validate_pmf(&[0.5, 0.5]).is_ok());
        assert!(validate_pmf(&[0.5, 0.6]).is_err());
        assert!(validate_pmf(&[1.5, -0.5]).is_err());
    }
}
