use super::SchemeSpec;
use crate::error::{invalid, Result};

/// Which stage vectors the search visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchSpace {
    /// Nondecreasing vectors only; optimal vectors always have this shape.
    #[default]
    Nondecreasing,
    /// Every composition of n into K positive parts.
    Full,
}

/// Optimal JAP-B stage vector for `(n, K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestScheme {
    pub stages: Vec<usize>,
    pub exponent: u64,
    /// Number of visited vectors attaining the optimum.
    pub optimal_count: usize,
}

/// Visit compositions of `n` into `k` positive parts in lexicographic order.
fn compositions(n: usize, k: usize, min_part: usize, nondecreasing: bool, prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if k == 0 {
        if n == 0 {
            visit(prefix);
        }
        return;
    }
    let lo = if nondecreasing { min_part } else { 1 };
    // remaining k-1 parts need at least `lo` each when nondecreasing, 1 otherwise
    let reserve = if nondecreasing { 0 } else { k - 1 };
    let mut part = lo;
    while part + reserve <= n {
        if nondecreasing && part * k > n {
            break;
        }
        prefix.push(part);
        compositions(n - part, k - 1, part, nondecreasing, prefix, visit);
        prefix.pop();
        part += 1;
    }
}

fn exponent_of(n: usize, a: &[usize]) -> u64 {
    a.iter()
        .enumerate()
        .map(|(k, ak)| ((*ak as i64 - 1) * (n as i64 - k as i64 - 2)).max(0) as u64)
        .max()
        .unwrap_or(0)
}

/// Best JAP-B scheme for `n` users and `K` stages, `1 <= K <= n-2`.
/// Ties go to the lexicographically smallest vector.
pub fn best_scheme(n: usize, k: usize) -> Result<BestScheme> {
    best_scheme_in(n, k, SearchSpace::Nondecreasing)
}

pub fn best_scheme_in(n: usize, k: usize, space: SearchSpace) -> Result<BestScheme> {
    if k == 0 || n < 3 || k > n - 2 {
        return Err(invalid(format!("K = {k} outside 1..=n-2 for n = {n}")));
    }
    let mut best: Option<BestScheme> = None;
    compositions(n, k, 1, space == SearchSpace::Nondecreasing, &mut Vec::new(), &mut |a| {
        let e = exponent_of(n, a);
        match &mut best {
            Some(b) if e > b.exponent => {}
            Some(b) if e == b.exponent => b.optimal_count += 1,
            _ => best = Some(BestScheme { stages: a.to_vec(), exponent: e, optimal_count: 1 }),
        }
    });
    Ok(best.expect("A(n,K) is non-empty for K <= n"))
}

impl BestScheme {
    pub fn spec(&self) -> SchemeSpec {
        SchemeSpec::japb(self.stages.clone()).expect("search yields valid vectors")
    }
}

/// Closed-form bounds on the best exponent, `K <= n-2`:
/// `(n/K)(n−2) − (2n−K−2) <= T(n,K) <= (n/K)(n−2)`.
pub fn exponent_bounds(n: usize, k: usize) -> Result<(f64, f64)> {
    if k == 0 || n < 3 || k > n - 2 {
        return Err(invalid(format!("K = {k} outside 1..=n-2 for n = {n}")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let upper = nf * (nf - 2.0) / kf;
    Ok((upper - (2.0 * nf - kf - 2.0), upper))
}

/// One cell of the best-scheme table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableCell {
    pub n: usize,
    pub k: usize,
    /// `None` for the TDMA cell K = n-1.
    pub best: Option<BestScheme>,
}

impl TableCell {
    pub fn exponent(&self) -> u64 {
        self.best.as_ref().map_or(0, |b| b.exponent)
    }

    pub fn label(&self) -> String {
        match &self.best {
            Some(b) => b.spec().to_string(),
            None => "TDMA".to_string(),
        }
    }
}

/// Table cells for `n` in `n_range` and `K = 1..=n-1`; K = n-1 is TDMA.
pub fn scheme_table(n_range: std::ops::RangeInclusive<usize>) -> Result<Vec<TableCell>> {
    let mut cells = Vec::new();
    for k in 1..*n_range.end() {
        for n in n_range.clone() {
            if k + 1 > n {
                continue;
            }
            let best = if k + 1 == n { None } else { Some(best_scheme(n, k)?) };
            cells.push(TableCell { n, k, best });
        }
    }
    Ok(cells)
}
