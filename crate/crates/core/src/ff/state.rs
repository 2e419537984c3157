use rand::Rng;

use super::PrimeField;
use crate::error::{Error, Result};
use crate::rng;

/// A vector over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldVector {
    field: PrimeField,
    entries: Vec<u32>,
}

impl FieldVector {
    /// Entries are reduced mod q.
    pub fn new(field: PrimeField, entries: impl IntoIterator<Item = i64>) -> Self {
        let entries = entries.into_iter().map(|v| field.elem(v)).collect();
        Self { field, entries }
    }

    pub fn from_elems(field: PrimeField, entries: Vec<u32>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|e| !field.contains(**e)) {
            return Err(Error::InvalidArgument(format!(
                "entry {bad} outside F_{}",
                field.modulus()
            )));
        }
        Ok(Self { field, entries })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A square-or-rectangular matrix over F_q; zeros allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let data = rows.iter().flatten().map(|v| field.elem(*v)).collect();
        Ok(Self { field, rows: rows.len(), cols, data })
    }

    pub fn from_elems(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|e| !field.contains(*e)) {
            return Err(Error::InvalidArgument("matrix entry outside the field".into()));
        }
        Ok(Self { field, rows, cols, data })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1 % field.modulus();
        }
        Self { field, rows: n, cols: n, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entrywise `self - other`.
    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix shapes or fields differ".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(*a, *b)).collect();
        Ok(FieldMatrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }
}

/// One fast-fading realisation: an n×n matrix over F_q with every entry
/// nonzero. Row j, column i holds the gain from transmitter i to receiver j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelState(FieldMatrix);

impl ChannelState {
    pub fn new(matrix: FieldMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::Dimension(format!(
                "channel state must be square with n >= 1, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.data.contains(&0) {
            return Err(Error::InvalidArgument("channel state has a zero entry".into()));
        }
        Ok(Self(matrix))
    }

    /// Draw every entry uniformly from `1..q`.
    pub fn sample<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let q = field.modulus();
        let data = (0..n * n).map(|_| rng.random_range(1..q)).collect();
        Ok(Self(FieldMatrix { field, rows: n, cols: n, data }))
    }

    /// `I - H`, if that is again a valid state.
    pub fn complement(&self) -> Option<ChannelState> {
        let id = FieldMatrix::identity(self.field(), self.n());
        id.sub(&self.0).ok().and_then(|m| ChannelState::new(m).ok())
    }

    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    pub fn n(&self) -> usize {
        self.0.rows
    }

    /// `h_{ji}`: gain from transmitter `i` at receiver `j` (zero-based).
    pub fn gain(&self, j: usize, i: usize) -> u32 {
        self.0.get(j, i)
    }

    pub fn row(&self, j: usize) -> &[u32] {
        self.0.row(j)
    }

    /// Row `j` with column `j` removed.
    pub fn interference_vector(&self, j: usize) -> Vec<u32> {
        self.row(j).iter().enumerate().filter(|(i, _)| *i != j).map(|(_, v)| *v).collect()
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.0
    }
}

/// Seeded draw of a channel state on the default stream of `seed`.
pub fn sample_channel_state(field: PrimeField, n: usize, seed: u64) -> Result<ChannelState> {
    ChannelState::sample(field, n, &mut rng::seeded(seed))
}

/// Additive noise law on F_q.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseModel {
    field: PrimeField,
    pmf: Vec<f64>,
}

impl NoiseModel {
    pub fn new(field: PrimeField, pmf: Vec<f64>) -> Result<Self> {
        if pmf.len() != field.modulus() as usize {
            return Err(Error::Dimension(format!(
                "noise pmf has {} entries for F_{}",
                pmf.len(),
                field.modulus()
            )));
        }
        crate::info::validate_pmf(&pmf)?;
        Ok(Self { field, pmf })
    }

    pub fn noiseless(field: PrimeField) -> Self {
        let mut pmf = vec![0.0; field.modulus() as usize];
        pmf[0] = 1.0;
        Self { field, pmf }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// `D(Z) = log₂ q − H(Z)`.
    pub fn capacity(&self) -> f64 {
        crate::info::noise_capacity(&self.pmf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_field_states_are_all_ones() {
        let f = PrimeField::new(2).unwrap();
        for seed in 0..5 {
            let h = sample_channel_state(f, 3, seed).unwrap();
            assert!(h.matrix().data.iter().all(|v| *v == 1));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(sample_channel_state(f, 2, 11).unwrap(), sample_channel_state(f, 2, 11).unwrap());
    }

    #[test]
    fn cell_frequencies_are_uniform() {
        let f = PrimeField::new(5).unwrap();
        let mut r = rng::seeded(2024);
        let mut counts = [0usize; 5];
        let draws = 100_000;
        for _ in 0..draws {
            counts[ChannelState::sample(f, 2, &mut r).unwrap().gain(0, 0) as usize] += 1;
        }
        assert_eq!(counts[0], 0);
        for c in &counts[1..] {
            assert!((*c as f64 / draws as f64 - 0.25).abs() < 0.01);
        }
    }

    #[test]
    fn complement_and_validation() {
        let f = PrimeField::new(3).unwrap();
        let h = ChannelState::new(FieldMatrix::from_rows(f, &[vec![2, 1], vec![1, 2]]).unwrap()).unwrap();
        let c = h.complement().unwrap();
        assert_eq!(c.row(0), &[2, 2]);
        let bad = ChannelState::new(FieldMatrix::from_rows(f, &[vec![1, 1], vec![1, 1]]).unwrap()).unwrap();
        assert!(bad.complement().is_none());
        assert!(ChannelState::new(FieldMatrix::from_rows(f, &[vec![0, 1], vec![1, 1]]).unwrap()).is_err());
        assert!(NoiseModel::new(f, vec![0.5, 0.5]).is_err());
        assert!((NoiseModel::noiseless(f).capacity() - 3f64.log2()).abs() < 1e-15);
    }
}
