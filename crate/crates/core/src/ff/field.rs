use crate::error::{Error, Result};

/// The prime field F_q, q < 2^16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub const MAX_MODULUS: u32 = u16::MAX as u32;

    pub fn new(q: u32) -> Result<Self> {
        if q > Self::MAX_MODULUS {
            return Err(Error::FieldTooLarge(q));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Self { q })
    }

    pub fn modulus(self) -> u32 {
        self.q
    }

    /// Reduce any integer into `[0, q)`.
    pub fn elem(self, v: i64) -> u32 {
        v.rem_euclid(self.q as i64) as u32
    }

    pub fn contains(self, a: u32) -> bool {
        a < self.q
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.q
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.q - b) % self.q
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.q - a) % self.q
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a % self.q == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.q as i64, (a % self.q) as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (t0, t1) = (t1, t0 - quot * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.elem(t0))
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `Σ a_k b_k`.
    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let q = self.q as u64;
        (a.iter().zip(b).fold(0u64, |acc, (x, y)| (acc + *x as u64 * *y as u64) % q)) as u32
    }

    /// Nonzero elements `1..q`.
    pub fn nonzero(self) -> std::ops::Range<u32> {
        1..self.q
    }
}
