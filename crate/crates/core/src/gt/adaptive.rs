use crate::error::{invalid, Result};

use super::design::check_defects;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptiveOutcome {
    pub tests_used: usize,
    /// Sorted item indices.
    pub recovered: Vec<usize>,
}

/// Binary splitting on the deterministic channel with the defect count
/// known in advance.
///
/// While defects remain, the untested items are known to hold at least
/// one, so the whole pool is never tested: the first half of the current
/// candidate block is tested and the search moves into whichever half must
/// hold a defect. Items in a negative pool are cleared. When the remaining
/// items are exactly as many as the missing defects they are all declared
/// defective without a test. K = 0 costs one negative whole-pool test.
/// For K = 1 this uses ⌈log₂ N⌉ tests.
pub fn adaptive_binary_splitting(items: usize, k: usize, defects: &[usize]) -> Result<AdaptiveOutcome> {
    check_defects(items, defects)?;
    if defects.len() != k {
        return Err(invalid(format!("declared K = {k} but {} defects given", defects.len())));
    }
    let mut is_defect = vec![false; items];
    for &d in defects {
        is_defect[d] = true;
    }
    let mut tests = 0usize;
    let mut test = |pool: &[usize]| {
        tests += 1;
        pool.iter().any(|&i| is_defect[i])
    };
    if k == 0 {
        let _negative = test(&(0..items).collect::<Vec<_>>());
        return Ok(AdaptiveOutcome { tests_used: 1, recovered: Vec::new() });
    }
    let mut remaining: Vec<usize> = (0..items).collect();
    let mut found = Vec::with_capacity(k);
    while found.len() < k {
        if remaining.len() == k - found.len() {
            found.append(&mut remaining);
            break;
        }
        let mut block = remaining.clone();
        while block.len() > 1 {
            let half = block.len().div_ceil(2);
            let (first, second) = block.split_at(half);
            block = if test(first) {
                first.to_vec()
            } else {
                remaining.retain(|i| !first.contains(i));
                second.to_vec()
            };
        }
        found.push(block[0]);
        remaining.retain(|&i| i != block[0]);
    }
    found.sort_unstable();
    Ok(AdaptiveOutcome { tests_used: tests, recovered: found })
}
