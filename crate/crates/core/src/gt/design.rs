use rand::Rng;

use crate::error::{invalid, Result};
use crate::rng::substream;

use super::channel::GtChannel;

/// T testing pools over N items; `pools[t][i]` marks item i in test t.
#[derive(Debug, Clone, PartialEq)]
pub struct TestDesign {
    items: usize,
    pools: Vec<Vec<bool>>,
    /// Inclusion probability when the design was drawn at random.
    pub p: Option<f64>,
}

impl TestDesign {
    pub fn from_pools(items: usize, pools: Vec<Vec<bool>>) -> Result<Self> {
        if pools.iter().any(|x| x.len() != items) {
            return Err(invalid(format!("every pool must list {items} items")));
        }
        Ok(Self { items, pools, p: None })
    }

    /// Test t holds item t alone.
    pub fn identity(items: usize) -> Self {
        let pools = (0..items).map(|t| (0..items).map(|i| i == t).collect()).collect();
        Self { items, pools, p: None }
    }

    pub fn empty(items: usize, tests: usize) -> Self {
        Self { items, pools: vec![vec![false; items]; tests], p: None }
    }

    /// Every entry independently 1 with probability p.
    pub fn bernoulli(items: usize, tests: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(invalid(format!("inclusion probability {p} outside [0,1]")));
        }
        let r = &mut substream(seed, 0);
        let pools = (0..tests).map(|_| (0..items).map(|_| r.random::<f64>() < p).collect()).collect();
        Ok(Self { items, pools, p: Some(p) })
    }

    pub fn items(&self) -> usize {
        self.items
    }

    pub fn tests(&self) -> usize {
        self.pools.len()
    }

    pub fn pool(&self, t: usize) -> &[bool] {
        &self.pools[t]
    }

    /// `n_t`.
    pub fn pool_size(&self, t: usize) -> usize {
        self.pools[t].iter().filter(|x| **x).count()
    }

    /// `k_t` for the defective set `defects`.
    pub fn defects_in_pool(&self, t: usize, defects: &[usize]) -> usize {
        defects.iter().filter(|&&i| self.pools[t][i]).count()
    }
}

/// Uniform random defective set of size k, sorted.
pub fn sample_defects(items: usize, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k > items {
        return Err(invalid(format!("cannot pick {k} defects among {items} items")));
    }
    let mut set = rand::seq::index::sample(&mut substream(seed, 2), items, k).into_vec();
    set.sort_unstable();
    Ok(set)
}

pub(crate) fn check_defects(items: usize, defects: &[usize]) -> Result<()> {
    let mut seen = vec![false; items];
    for &i in defects {
        if i >= items || std::mem::replace(&mut seen[i], true) {
            return Err(invalid(format!("defect {i} is out of range or repeated")));
        }
    }
    Ok(())
}

/// Outcome of every test, drawn from `p(y | n_t, k_t)`.
pub fn run_design(design: &TestDesign, defects: &[usize], channel: &GtChannel, seed: u64) -> Result<Vec<usize>> {
    check_defects(design.items(), defects)?;
    let r = &mut substream(seed, 1);
    (0..design.tests())
        .map(|t| channel.sample(design.pool_size(t), design.defects_in_pool(t, defects), r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gt::channel::{make_channel, ChannelKind, POSITIVE};

    #[test]
    fn identity_design_reads_the_indicator() {
        let det = make_channel(ChannelKind::Deterministic).unwrap();
        let y = run_design(&TestDesign::identity(6), &[2], &det, 0).unwrap();
        assert_eq!(y, vec![0, 0, 1, 0, 0, 0]);
        assert!(run_design(&TestDesign::identity(6), &[6], &det, 0).is_err());
        assert!(run_design(&TestDesign::identity(6), &[1, 1], &det, 0).is_err());
    }

    #[test]
    fn empty_pools_follow_the_zero_law() {
        let add = make_channel(ChannelKind::Addition { q: 0.1 }).unwrap();
        let y = run_design(&TestDesign::empty(5, 10_000), &[0, 3], &add, 4).unwrap();
        let frac = y.iter().filter(|&&v| v == POSITIVE).count() as f64 / 1e4;
        assert!((frac - 0.1).abs() < 3.0 * (0.09f64 / 1e4).sqrt(), "{frac}");
        let det = make_channel(ChannelKind::Deterministic).unwrap();
        assert!(run_design(&TestDesign::empty(5, 20), &[1], &det, 4).unwrap().iter().all(|&v| v == 0));
    }

    #[test]
    fn designs_are_reproducible() {
        let a = TestDesign::bernoulli(10, 15, 0.3, 8).unwrap();
        assert_eq!(a, TestDesign::bernoulli(10, 15, 0.3, 8).unwrap());
        assert_ne!(a, TestDesign::bernoulli(10, 15, 0.3, 9).unwrap());
        let ch = make_channel(ChannelKind::Dilution { u: 0.3 }).unwrap();
        assert_eq!(run_design(&a, &[1, 4], &ch, 2).unwrap(), run_design(&a, &[1, 4], &ch, 2).unwrap());
    }
}
