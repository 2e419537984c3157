use crate::error::{invalid, Result};
use crate::special::binomial_pmf;

use super::channel::GtChannel;

/// Largest K for the exact pattern enumeration.
pub const MAX_EXACT_K: usize = 20;

fn check(channel: &GtChannel, k: usize, i: usize, p: f64) -> Result<Vec<Vec<f64>>> {
    if k == 0 || i == 0 || i > k {
        return Err(invalid(format!("need 1 <= i <= K, got i = {i}, K = {k}")));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("inclusion probability must lie in (0,1), got {p}")));
    }
    (0..=k).map(|c| channel.law(c)).collect()
}

fn xlog2(num: f64, den: f64) -> f64 {
    if num > 0.0 { num * (num / den).log2() } else { 0.0 }
}

/// `I(X_A : X_B, Y)` in bits, where A holds the `i` misidentified
/// coordinates and B the other `K - i`, every coordinate independently
/// Bernoulli(p), and Y is the channel output for the pool.
///
/// Evaluated by exact summation over all 2^K inclusion patterns, using
/// the independence of A and B: `I = Σ P(a) P(b) W(y|a,b) log W(y|a,b) / P(y|b)`.
pub fn mutual_info(channel: &GtChannel, k: usize, i: usize, p: f64) -> Result<f64> {
    let laws = check(channel, k, i, p)?;
    if k > MAX_EXACT_K {
        return Err(invalid(format!("exact enumeration supports K <= {MAX_EXACT_K}")));
    }
    let weight = |bits: u32, len: usize| p.powi(bits as i32) * (1.0 - p).powi((len - bits as usize) as i32);
    let a_patterns: Vec<(f64, usize)> = (0u32..1 << i).map(|a| (weight(a.count_ones(), i), a.count_ones() as usize)).collect();
    let ys = channel.alphabet_size();
    let mut total = 0.0;
    for b in 0u32..1 << (k - i) {
        let pb = weight(b.count_ones(), k - i);
        let kb = b.count_ones() as usize;
        let mut py_b = vec![0.0; ys];
        for &(pa, ka) in &a_patterns {
            for (y, w) in laws[ka + kb].iter().enumerate() {
                py_b[y] += pa * w;
            }
        }
        for &(pa, ka) in &a_patterns {
            for (y, &w) in laws[ka + kb].iter().enumerate() {
                total += pb * pa * xlog2(w, py_b[y]);
            }
        }
    }
    Ok(total.max(0.0))
}

/// The same quantity through the defect counts `k₁ ~ Bin(i, p)` and
/// `k₂ ~ Bin(K - i, p)`, which are sufficient for an only-defects-matter
/// channel. Kept as an independent cross-check of [`mutual_info`].
pub fn mutual_info_by_counts(channel: &GtChannel, k: usize, i: usize, p: f64) -> Result<f64> {
    let laws = check(channel, k, i, p)?;
    let b1 = binomial_pmf(i, p);
    let b2 = binomial_pmf(k - i, p);
    let mut total = 0.0;
    for (k2, &p2) in b2.iter().enumerate() {
        for y in 0..channel.alphabet_size() {
            let py = b1.iter().enumerate().map(|(k1, p1)| p1 * laws[k1 + k2][y]).sum::<f64>();
            for (k1, &p1) in b1.iter().enumerate() {
                total += p2 * p1 * xlog2(laws[k1 + k2][y], py);
            }
        }
    }
    Ok(total.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::gt::channel::{all_test_channels, make_channel, ChannelKind};
    use crate::info::{binary_entropy, entropy, mutual_information};

    /// Joint table of (A pattern) × (B pattern, y), fed to the generic
    /// mutual information routine.
    fn brute_force(channel: &GtChannel, k: usize, i: usize, p: f64) -> f64 {
        let ys = channel.alphabet_size();
        let rows = 1usize << i;
        let cols = (1usize << (k - i)) * ys;
        let mut joint = vec![vec![0.0; cols]; rows];
        for full in 0u32..1 << k {
            let a = (full & ((1 << i) - 1)) as usize;
            let b = (full >> i) as usize;
            let ones = full.count_ones() as i32;
            let w = p.powi(ones) * (1.0 - p).powi(k as i32 - ones);
            let pmf = channel.transition(k, ones as usize).unwrap();
            for (y, py) in pmf.iter().enumerate() {
                joint[a][b * ys + y] += w * py;
            }
        }
        mutual_information(&joint)
    }

    #[test]
    fn single_item_deterministic_is_one_bit() {
        let det = make_channel(ChannelKind::Deterministic).unwrap();
        assert!((mutual_info(&det, 1, 1, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((mutual_info(&det, 1, 1, 0.2).unwrap() - binary_entropy(0.2)).abs() < 1e-12);
        assert!(mutual_info(&det, 1, 1, 1e-9).unwrap() < 1e-6);
    }

    #[test]
    fn exact_paths_agree_with_brute_force() {
        for ch in all_test_channels().into_iter().filter(|c| c.only_defects_matter()) {
            for k in 1..=3 {
                for i in 1..=k {
                    for p in [0.2, 0.5] {
                        let exact = mutual_info(&ch, k, i, p).unwrap();
                        assert!((exact - brute_force(&ch, k, i, p)).abs() < 1e-9, "{} K={k} i={i}", ch.name());
                        assert!((exact - mutual_info_by_counts(&ch, k, i, p).unwrap()).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn information_bounds_and_monotonicity() {
        let det = make_channel(ChannelKind::Deterministic).unwrap();
        for ch in all_test_channels().into_iter().filter(|c| c.only_defects_matter()) {
            for k in 1..=5 {
                for i in 1..=k {
                    let mi = mutual_info(&ch, k, i, 0.3).unwrap();
                    let h_inputs = i as f64 * binary_entropy(0.3);
                    let cap = (ch.alphabet_size() as f64).log2() + entropy(&binomial_pmf(k - i, 0.3));
                    assert!(mi >= 0.0 && mi <= h_inputs + 1e-12 && mi <= cap + 1e-12, "{}", ch.name());
                }
            }
        }
        for k in 1..=6 {
            let vals: Vec<f64> = (1..=k).map(|i| mutual_info(&det, k, i, 0.5).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[1] >= w[0] - 1e-12), "{vals:?}");
        }
    }

    #[test]
    fn non_odm_channels_are_rejected() {
        let sym = make_channel(ChannelKind::Symmetric).unwrap();
        assert!(matches!(mutual_info(&sym, 2, 1, 0.5), Err(Error::UnsupportedChannel(_))));
        let det = make_channel(ChannelKind::Deterministic).unwrap();
        assert!(mutual_info(&det, 2, 3, 0.5).is_err());
        assert!(mutual_info(&det, 2, 1, 1.0).is_err());
    }
}
