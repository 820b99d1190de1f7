//! Arithmetic in F_p for primes below 256, with residues stored as `u8`.

use crate::error::TensorError;
use crate::plocal::is_prime;

#[derive(Clone)]
pub struct Field {
    p: u32,
    // floor(2^16 / p); see `reduce`
    magic: u32,
    inv: [u8; 256],
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(p: u32) -> Result<Field, TensorError> {
        if p >= 256 || !is_prime(p as u64) {
            return Err(TensorError::UnsupportedPrime(p));
        }
        let mut inv = [0u8; 256];
        for a in 1..p {
            let b = (1..p).find(|b| a * b % p == 1).unwrap();
            inv[a as usize] = b as u8;
        }
        Ok(Field {
            p,
            magic: (1 << 16) / p,
            inv,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces `x < 2^16`. The estimate `q` is the true quotient or one
    /// less, so at most one correction is needed.
    #[inline(always)]
    fn reduce(&self, x: u32) -> u32 {
        let q = (x * self.magic) >> 16;
        let r = x - q * self.p;
        r.min(r.wrapping_sub(self.p))
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.reduce(a as u32 + b as u32) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.reduce(a as u32 + self.p - b as u32) as u8
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.reduce(a as u32 * b as u32) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            (self.p - a as u32) as u8
        }
    }

    /// Inverse of a nonzero residue.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    /// Residue of an arbitrary integer.
    pub fn from_i64(&self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }

    /// `dst += c * src`, entrywise.
    #[inline]
    pub fn axpy(&self, dst: &mut [u8], src: &[u8], c: u8) {
        if c == 0 {
            return;
        }
        let c = c as u32;
        let p = self.p;
        let m = self.magic;
        for (d, &s) in dst.iter_mut().zip(src) {
            let x = *d as u32 + c * s as u32;
            let q = (x * m) >> 16;
            let r = x - q * p;
            *d = r.min(r.wrapping_sub(p)) as u8;
        }
    }

    /// `v *= c`, entrywise.
    pub fn scale(&self, v: &mut [u8], c: u8) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }
}
