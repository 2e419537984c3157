use std::borrow::Borrow;

use super::{null_space, ChannelState};
use crate::error::{Error, Result};

/// Coefficients letting receiver `j` (zero-based) decode its own message from
/// the pseudomessages it saw under `states`.
///
/// A returned `λ` makes the interference vectors combine to zero while the
/// direct gains `h_jj` combine to a nonzero element. Among the null-space basis
/// vectors of the interference vectors, the first whose direct combination is
/// nonzero is returned; if none is, no combination in the null space works.
pub fn recovery_check<S: Borrow<ChannelState>>(j: usize, states: &[S]) -> Result<Option<Vec<u32>>> {
    let first = states
        .first()
        .ok_or_else(|| Error::Dimension("no channel states".into()))?
        .borrow();
    let (field, n) = (first.field(), first.n());
    if states.iter().any(|s| s.borrow().field() != field || s.borrow().n() != n) {
        return Err(Error::Dimension("channel states differ in n or q".into()));
    }
    if j >= n {
        return Err(Error::Dimension(format!("receiver {j} out of range for n = {n}")));
    }
    let interference: Vec<Vec<u32>> = states.iter().map(|s| s.borrow().interference_vector(j)).collect();
    let direct: Vec<u32> = states.iter().map(|s| s.borrow().gain(j, j)).collect();
    let refs: Vec<&[u32]> = interference.iter().map(Vec::as_slice).collect();
    Ok(null_space(field, &refs, n - 1)
        .into_iter()
        .find(|lambda| field.dot(lambda, &direct) != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{FieldMatrix, PrimeField};
    use itertools::Itertools;

    fn all_states(f: PrimeField, n: usize) -> Vec<ChannelState> {
        (0..n * n)
            .map(|_| 1..f.modulus())
            .multi_cartesian_product()
            .map(|d| ChannelState::new(FieldMatrix::from_elems(f, n, n, d).unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn complementary_pair_recovers_with_unit_coefficients() {
        let f = PrimeField::new(5).unwrap();
        for h in all_states(f, 2).into_iter().take(64) {
            if let Some(c) = h.complement() {
                for j in 0..2 {
                    assert_eq!(recovery_check(j, &[h.clone(), c.clone()]).unwrap(), Some(vec![1, 1]));
                }
            }
        }
    }

    #[test]
    fn single_state_never_suffices() {
        let f = PrimeField::new(7).unwrap();
        let h = crate::ff::sample_channel_state(f, 3, 1).unwrap();
        for j in 0..3 {
            assert_eq!(recovery_check(j, &[h.clone()]).unwrap(), None);
        }
    }

    #[test]
    fn exhaustive_pairs_match_brute_force_q3() {
        let f = PrimeField::new(3).unwrap();
        let states = all_states(f, 2);
        for a in &states {
            for b in &states {
                for j in 0..2 {
                    let brute = (0..2).map(|_| 0u32..3).multi_cartesian_product().any(|l| {
                        let int = f.add(f.mul(l[0], a.gain(j, 1 - j)), f.mul(l[1], b.gain(j, 1 - j)));
                        let dir = f.add(f.mul(l[0], a.gain(j, j)), f.mul(l[1], b.gain(j, j)));
                        int == 0 && dir != 0
                    });
                    let got = recovery_check(j, &[a, b]).unwrap();
                    assert_eq!(got.is_some(), brute);
                    if let Some(l) = got {
                        let int = f.add(f.mul(l[0], a.gain(j, 1 - j)), f.mul(l[1], b.gain(j, 1 - j)));
                        let dir = f.add(f.mul(l[0], a.gain(j, j)), f.mul(l[1], b.gain(j, j)));
                        assert_eq!((int, dir != 0), (0, true));
                    }
                }
            }
        }
    }

    #[test]
    fn errors() {
        let f = PrimeField::new(3).unwrap();
        let g = PrimeField::new(5).unwrap();
        let a = crate::ff::sample_channel_state(f, 2, 0).unwrap();
        let b = crate::ff::sample_channel_state(g, 2, 0).unwrap();
        assert!(recovery_check(0, &[a.clone(), b]).is_err());
        assert!(recovery_check(2, &[a]).is_err());
        assert!(recovery_check::<ChannelState>(0, &[]).is_err());
    }
}
