use itertools::Itertools;

use crate::error::{Error, Result};
use crate::special::choose;

use super::channel::GtChannel;
use super::design::TestDesign;

/// Largest number of candidate sets the decoder will enumerate.
pub const ML_GUARD: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Decoded {
    /// Sorted item indices.
    pub set: Vec<usize>,
    /// Natural-log likelihood of the returned set.
    pub log_likelihood: f64,
    /// Another candidate reached the same likelihood.
    pub tie: bool,
}

/// Maximum-likelihood defective set of size `k`. Candidates are visited in
/// lexicographic order and the first maximiser wins.
pub fn ml_decode(design: &TestDesign, outcomes: &[usize], channel: &GtChannel, k: usize) -> Result<Decoded> {
    let n = design.items();
    if outcomes.len() != design.tests() {
        return Err(Error::Dimension(format!("{} outcomes for {} tests", outcomes.len(), design.tests())));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("cannot pick {k} defects among {n} items")));
    }
    let candidates = choose(n as u64, k as u64);
    if candidates > ML_GUARD {
        return Err(Error::EnumerationGuard { candidates, guard: ML_GUARD });
    }
    let sizes: Vec<usize> = (0..design.tests()).map(|t| design.pool_size(t)).collect();
    // ln p(y_t | n_t, k) for every test and every k up to K.
    let table: Vec<Vec<f64>> = (0..design.tests())
        .map(|t| (0..=k.min(sizes[t])).map(|kk| channel.transition(sizes[t], kk).map(|pmf| pmf[outcomes[t]].ln())).collect())
        .collect::<Result<_>>()?;
    let mut best: Option<Decoded> = None;
    for cand in (0..n).combinations(k) {
        let ll: f64 = (0..design.tests()).map(|t| table[t][design.defects_in_pool(t, &cand)]).sum();
        match &mut best {
            Some(b) if ll > b.log_likelihood => *b = Decoded { set: cand, log_likelihood: ll, tie: false },
            Some(b) => b.tie |= ll == b.log_likelihood,
            None => best = Some(Decoded { set: cand, log_likelihood: ll, tie: false }),
        }
    }
    Ok(best.expect("at least one candidate set"))
}
