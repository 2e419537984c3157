use super::{FieldVector, PrimeField};
use crate::error::{Error, Result};

/// Reduce `m` (rows × cols) to reduced row-echelon form in place, scanning
/// columns left to right. Returns the pivot column of each nonzero row.
fn rref(field: PrimeField, m: &mut [Vec<u32>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = field.inv(m[r][c]).expect("pivot is nonzero");
        for v in m[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for k in 0..cols {
                    let t = field.mul(factor, m[r][k]);
                    m[i][k] = field.sub(m[i][k], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{λ : Σ λ_k v_k = 0}` for vectors of common length `len`.
///
/// Basis vectors are returned in increasing order of their free column, and
/// each has a 1 in that column.
pub fn null_space(field: PrimeField, vectors: &[&[u32]], len: usize) -> Vec<Vec<u32>> {
    let m = vectors.len();
    // rows = coordinates, columns = vectors
    let mut a: Vec<Vec<u32>> = (0..len).map(|r| vectors.iter().map(|v| v[r]).collect()).collect();
    let pivots = rref(field, &mut a, m);
    let mut is_pivot = vec![false; m];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m)
        .filter(|c| !is_pivot[*c])
        .map(|free| {
            let mut lambda = vec![0u32; m];
            lambda[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                lambda[pc] = field.neg(a[row][free]);
            }
            lambda
        })
        .collect()
}

/// Rank of the span of `rows`, by elimination on the rows themselves.
pub fn rank(field: PrimeField, rows: &[Vec<u32>]) -> usize {
    let mut basis: Vec<(usize, Vec<u32>)> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for (lead, b) in &basis {
            if v[*lead] != 0 {
                let f = v[*lead];
                for (x, y) in v.iter_mut().zip(b) {
                    *x = field.sub(*x, field.mul(f, *y));
                }
            }
        }
        if let Some(lead) = v.iter().position(|x| *x != 0) {
            let inv = field.inv(v[lead]).expect("nonzero");
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
            basis.push((lead, v));
        }
    }
    basis.len()
}

pub(crate) fn check_common(vectors: &[FieldVector]) -> Result<(PrimeField, usize)> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::Dimension("empty vector list".into()))?;
    let (field, len) = (first.field(), first.len());
    for v in vectors {
        if v.field() != field {
            return Err(Error::Dimension("vectors over different fields".into()));
        }
        if v.len() != len {
            return Err(Error::Dimension(format!("vector lengths {} and {}", len, v.len())));
        }
    }
    Ok((field, len))
}

/// Nonzero `λ` with `Σ λ_k v_k = 0`, or `None` if the vectors are independent.
///
/// The result is the null-space basis vector of the first free column, so the
/// same input always yields the same coefficients.
pub fn solve_dependence(vectors: &[FieldVector]) -> Result<Option<Vec<u32>>> {
    let (field, len) = check_common(vectors)?;
    let refs: Vec<&[u32]> = vectors.iter().map(FieldVector::entries).collect();
    Ok(null_space(field, &refs, len).into_iter().next())
}
