use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ff::FieldMatrix;

/// Largest graph for the exact independence-number search.
pub const EXACT_MIS_LIMIT: usize = 30;

/// Users joined when either crosslink between them is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterferenceGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndependenceNumber {
    pub value: usize,
    /// False when the graph exceeded the exact-search limit and `value` is
    /// a greedy lower bound.
    pub exact: bool,
}

impl InterferenceGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("invalid edge ({a}, {b}) for {n} users")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    fn neighbour_masks(&self) -> Vec<u64> {
        let mut m = vec![0u64; self.n];
        for &(a, b) in &self.edges {
            m[a] |= 1 << b;
            m[b] |= 1 << a;
        }
        m
    }

    fn greedy(&self) -> usize {
        let mut deg = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (deg[v], v));
        let mut chosen: Vec<usize> = Vec::new();
        for v in order {
            if chosen.iter().all(|&u| !self.has_edge(u, v)) {
                chosen.push(v);
            }
        }
        chosen.len()
    }

    /// Size of the largest independent set.
    pub fn independence_number(&self) -> IndependenceNumber {
        if self.n > EXACT_MIS_LIMIT {
            return IndependenceNumber { value: self.greedy(), exact: false };
        }
        fn search(cand: u64, size: usize, best: &mut usize, nb: &[u64]) {
            if cand == 0 {
                *best = (*best).max(size);
                return;
            }
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            search(cand & !(1 << v) & !nb[v], size + 1, best, nb);
            // Skipping v only helps if some neighbour of v can be taken.
            if cand & nb[v] != 0 {
                search(cand & !(1 << v), size, best, nb);
            }
        }
        let nb = self.neighbour_masks();
        let mut best = 0;
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        search(all, 0, &mut best, &nb);
        IndependenceNumber { value: best, exact: true }
    }
}

/// Edge ij iff `h_ji ≠ 0` or `h_ij ≠ 0`; zero entries are allowed.
pub fn interference_graph(h: &FieldMatrix) -> Result<InterferenceGraph> {
    if !h.is_square() {
        return Err(Error::Dimension("interference graph needs a square gain matrix".into()));
    }
    let n = h.rows();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| h.get(j, i) != 0 || h.get(i, j) != 0);
    InterferenceGraph::new(n, edges.collect::<Vec<_>>())
}
