use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::ff::FieldMatrix;
use crate::rng::{derive_seed, substream};

use super::channel::{make_channel, ChannelKind, GtChannel, NEGATIVE, POSITIVE};
use super::decode::ml_decode;
use super::design::TestDesign;
use super::graph::{interference_graph, InterferenceGraph};

/// Fields at least this large decode against the deterministic channel.
pub const DETERMINISTIC_FROM_Q: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscoveryReport {
    /// Estimated interferers of each receiver.
    pub inferred: Vec<Vec<usize>>,
    pub graph: InterferenceGraph,
    /// Misclassified user pairs over all `N(N-1)/2` pairs.
    pub error_rate: f64,
    /// Participation pattern over the N transmitters.
    pub design: TestDesign,
    /// `positives[j][t]`: receiver j saw a nonzero sum in slot t.
    pub positives: Vec<Vec<bool>>,
    pub decoder: GtChannel,
}

/// Channel the receivers decode against: exact per-slot cancellation law
/// for small fields, the deterministic channel once cancellation is rare.
pub fn discovery_channel(q: u32) -> Result<GtChannel> {
    if q >= DETERMINISTIC_FROM_Q {
        make_channel(ChannelKind::Deterministic)
    } else {
        make_channel(ChannelKind::FieldCancellation { q })
    }
}

/// Every transmitter fixes a uniform nonzero message; in each of `slots`
/// slots it transmits with probability p. Receiver j observes
/// `Σ_{i≠j} h_ji x_it m_i` (its own link is known and removed) and reads
/// the slot as positive iff the sum is nonzero. With its interferer count
/// known, it then decodes its interferer set by maximum likelihood.
pub fn discovery_simulation(h: &FieldMatrix, slots: usize, p: f64, seed: u64) -> Result<DiscoveryReport> {
    let field = h.field();
    let q = field.modulus();
    if q < 3 {
        return Err(invalid("discovery needs q >= 3"));
    }
    let truth = interference_graph(h)?;
    let n = h.rows();
    let r = &mut substream(seed, 0);
    let messages: Vec<u32> = (0..n).map(|_| r.random_range(1..q)).collect();
    let design = TestDesign::bernoulli(n, slots, p, derive_seed(seed, 1))?;
    let decoder = discovery_channel(q)?;
    let mut inferred = Vec::with_capacity(n);
    let mut positives = Vec::with_capacity(n);
    for j in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
        let seen: Vec<bool> = (0..slots)
            .map(|t| {
                let y = others
                    .iter()
                    .filter(|&&i| design.pool(t)[i])
                    .fold(0, |acc, &i| field.add(acc, field.mul(h.get(j, i), messages[i])));
                y != 0
            })
            .collect();
        let k_j = others.iter().filter(|&&i| h.get(j, i) != 0).count();
        let local = TestDesign::from_pools(
            others.len(),
            (0..slots).map(|t| others.iter().map(|&i| design.pool(t)[i]).collect()).collect(),
        )?;
        let outcomes: Vec<usize> = seen.iter().map(|&s| if s { POSITIVE } else { NEGATIVE }).collect();
        let decoded = ml_decode(&local, &outcomes, &decoder, k_j)?;
        inferred.push(decoded.set.into_iter().map(|a| others[a]).collect::<Vec<_>>());
        positives.push(seen);
    }
    let graph = InterferenceGraph::new(
        n,
        inferred.iter().enumerate().flat_map(|(j, s)| s.iter().map(move |&i| (i, j))).collect::<Vec<_>>(),
    )?;
    let pairs = n * n.saturating_sub(1) / 2;
    let wrong = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| graph.has_edge(a, b) != truth.has_edge(a, b)).count();
    if pairs == 0 {
        return Err(Error::Dimension("discovery needs at least two users".into()));
    }
    Ok(DiscoveryReport { inferred, graph, error_rate: wrong as f64 / pairs as f64, design, positives, decoder })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PrimeField;
    use crate::gt::bounds::bounds;
    use crate::gt::design::sample_defects;
    use crate::ia::recovery_failure_prob;

    /// Nonzero diagonal; receiver j hears the interferers in `sets[j]`.
    fn gains(q: u32, sets: &[Vec<usize>], seed: u64) -> FieldMatrix {
        let f = PrimeField::new(q).unwrap();
        let n = sets.len();
        let r = &mut substream(seed, 9);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|j| (0..n).map(|i| if i == j || sets[j].contains(&i) { r.random_range(1..q) as i64 } else { 0 }).collect())
            .collect();
        FieldMatrix::from_rows(f, &rows).unwrap()
    }

    #[test]
    fn silent_network_is_recovered() {
        let h = FieldMatrix::identity(PrimeField::new(7).unwrap(), 5);
        let rep = discovery_simulation(&h, 3, 0.5, 1).unwrap();
        assert!(rep.inferred.iter().all(|s| s.is_empty()));
        assert_eq!(rep.error_rate, 0.0);
        assert!(discovery_simulation(&FieldMatrix::identity(PrimeField::new(2).unwrap(), 3), 3, 0.5, 1).is_err());
    }

    #[test]
    fn large_field_recovers_most_pairs() {
        let det = make_channel(ChannelKind::Deterministic).unwrap();
        let t_bar = bounds(&det, 8, 2, None).unwrap().t_upper;
        let slots = 12usize;
        assert!(slots as f64 >= t_bar.ceil() + 4.0, "T̄ = {t_bar}");
        let mut total = 0.0;
        for seed in 0..200u64 {
            let sets: Vec<Vec<usize>> = (0..8)
                .map(|j| {
                    let picks = sample_defects(7, 2, derive_seed(seed, j as u64)).unwrap();
                    picks.into_iter().map(|a| if a >= j { a + 1 } else { a }).collect()
                })
                .collect();
            let h = gains(101, &sets, seed);
            total += discovery_simulation(&h, slots, 0.3, seed).unwrap().error_rate;
        }
        assert!(total / 200.0 <= 0.1, "mean error {}", total / 200.0);
    }

    #[test]
    fn small_field_cancellation_frequency() {
        // Receiver 0 hears users 1 and 2. Messages are fixed per run, so only
        // the first slot in which both transmit is counted.
        let (mut both, mut zero) = (0usize, 0usize);
        for seed in 0..4000u64 {
            let h = gains(3, &[vec![1, 2], vec![], vec![]], seed);
            let rep = discovery_simulation(&h, 4, 0.5, seed).unwrap();
            for t in 0..4 {
                if rep.design.pool(t)[1] && rep.design.pool(t)[2] {
                    both += 1;
                    zero += usize::from(!rep.positives[0][t]);
                    break;
                }
            }
        }
        let expect = recovery_failure_prob(3, 2).unwrap();
        let freq = zero as f64 / both as f64;
        assert!(freq > 0.0);
        assert!((freq - expect).abs() < 3.0 * (expect * (1.0 - expect) / both as f64).sqrt(), "{freq} vs {expect}");
    }
}
