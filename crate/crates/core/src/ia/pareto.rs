use std::fmt;

use num_rational::Ratio;

use super::{best_scheme, SchemeSpec};
use crate::error::{invalid, Result};

/// A parent scheme shared among `n` users.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChildScheme {
    pub dof: Ratio<u64>,
    pub exponent: u64,
}

/// Time-share an m-user parent among n ≥ m users: DOF scales by m/n and the
/// exponent is unchanged.
pub fn child_scheme(parent: &SchemeSpec, n: usize) -> Result<ChildScheme> {
    let m = parent.n();
    if m > n {
        return Err(invalid(format!("parent has {m} users, more than n = {n}")));
    }
    Ok(ChildScheme { dof: parent.dof() * Ratio::new(m as u64, n as u64), exponent: parent.delay_exponent() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeDescriptor {
    Ngjv,
    Tdma,
    Parent(SchemeSpec),
    Child { parent: SchemeSpec, n: usize },
}

impl fmt::Display for SchemeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Ngjv => f.write_str("NGJV"),
            Self::Tdma => f.write_str("TDMA"),
            Self::Parent(s) => write!(f, "{s}"),
            Self::Child { parent, n } => write!(f, "{parent} shared by {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierPoint {
    pub dof: Ratio<u64>,
    pub exponent: u64,
    pub scheme: SchemeDescriptor,
}

fn candidates(n: usize) -> Result<Vec<FrontierPoint>> {
    let mut out = vec![
        FrontierPoint { dof: Ratio::new(1, 2), exponent: (n * n) as u64, scheme: SchemeDescriptor::Ngjv },
        FrontierPoint { dof: Ratio::new(1, n as u64), exponent: 0, scheme: SchemeDescriptor::Tdma },
    ];
    for k in 1..=n - 2 {
        let spec = best_scheme(n, k)?.spec();
        out.push(FrontierPoint { dof: spec.dof(), exponent: spec.delay_exponent(), scheme: SchemeDescriptor::Parent(spec) });
    }
    for m in 3..n {
        for k in 1..=m - 2 {
            let parent = best_scheme(m, k)?.spec();
            let child = child_scheme(&parent, n)?;
            out.push(FrontierPoint {
                dof: child.dof,
                exponent: child.exponent,
                scheme: SchemeDescriptor::Child { parent, n },
            });
        }
    }
    Ok(out)
}

fn dominates(a: &FrontierPoint, b: &FrontierPoint) -> bool {
    a.dof >= b.dof && a.exponent <= b.exponent && (a.dof > b.dof || a.exponent < b.exponent)
}

/// Non-dominated schemes under (maximise DOF, minimise exponent), sorted by
/// decreasing DOF. Of several schemes at the same point the first enumerated
/// is kept: NGJV, TDMA, parents by K, then children by parent size.
pub fn pareto_frontier(n: usize) -> Result<Vec<FrontierPoint>> {
    if n < 3 {
        return Err(invalid("pareto frontier needs n >= 3"));
    }
    let all = candidates(n)?;
    let mut front: Vec<FrontierPoint> = Vec::new();
    for p in &all {
        if all.iter().any(|o| dominates(o, p)) {
            continue;
        }
        if front.iter().any(|f| f.dof == p.dof && f.exponent == p.exponent) {
            continue;
        }
        front.push(p.clone());
    }
    front.sort_by(|a, b| b.dof.cmp(&a.dof));
    Ok(front)
}
