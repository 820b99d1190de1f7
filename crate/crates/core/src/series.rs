//! Truncated integer power series used for all dimension bookkeeping.

use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};

use crate::error::SeriesError;
use crate::plocal::PrimeConfig;

/// `sum_{d <= cap} c_d t^d`. Arithmetic truncates above the cap.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertSeries {
    coeffs: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(degree: u32) -> Parity {
        if degree.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl HilbertSeries {
    pub fn zero(cap: usize) -> Self {
        HilbertSeries {
            coeffs: vec![0; cap + 1],
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(cap, 0, 1)
    }

    /// `c t^d`, or zero if `d` is above the cap.
    pub fn monomial(cap: usize, d: usize, c: i64) -> Self {
        let mut s = Self::zero(cap);
        if d <= cap {
            s.coeffs[d] = c;
        }
        s
    }

    /// Builds a series from coefficients; the cap is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least a constant term"
        );
        HilbertSeries { coeffs }
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    /// Restriction to degrees `<= cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(cap + 1, 0);
        HilbertSeries { coeffs }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Lowest degree where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let top = self.cap().max(other.cap());
        (0..=top).find(|&d| self.coeff(d) != other.coeff(d))
    }

    fn check_caps(&self, other: &Self) -> Result<(), SeriesError> {
        if self.cap() != other.cap() {
            return Err(SeriesError::CapMismatch(self.cap(), other.cap()));
        }
        Ok(())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_caps(other)?;
        let cap = self.cap();
        let mut out = vec![0i64; cap + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..=cap - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(HilbertSeries { coeffs: out })
    }

    /// The unique `q` with `q * other = self` up to the cap.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_caps(other)?;
        let b0 = other.coeffs[0];
        if b0 != 1 && b0 != -1 {
            return Err(SeriesError::NonUnitConstant(b0));
        }
        let cap = self.cap();
        let mut q = vec![0i64; cap + 1];
        for d in 0..=cap {
            let mut acc = self.coeffs[d];
            for j in 1..=d {
                acc -= other.coeffs[j] * q[d - j];
            }
            q[d] = acc * b0;
        }
        Ok(HilbertSeries { coeffs: q })
    }
}

impl Index<usize> for HilbertSeries {
    type Output = i64;

    fn index(&self, d: usize) -> &i64 {
        &self.coeffs[d]
    }
}

impl Add for &HilbertSeries {
    type Output = HilbertSeries;

    fn add(self, rhs: &HilbertSeries) -> HilbertSeries {
        let cap = self.cap().max(rhs.cap());
        HilbertSeries {
            coeffs: (0..=cap).map(|d| self.coeff(d) + rhs.coeff(d)).collect(),
        }
    }
}

impl Sub for &HilbertSeries {
    type Output = HilbertSeries;

    fn sub(self, rhs: &HilbertSeries) -> HilbertSeries {
        let cap = self.cap().max(rhs.cap());
        HilbertSeries {
            coeffs: (0..=cap).map(|d| self.coeff(d) - rhs.coeff(d)).collect(),
        }
    }
}

/// `1 + t^d`.
pub fn exterior_factor(d: u32, cap: usize) -> HilbertSeries {
    &HilbertSeries::one(cap) + &HilbertSeries::monomial(cap, d as usize, 1)
}

/// `1 / (1 - t^d)`.
pub fn polynomial_factor(d: u32, cap: usize) -> HilbertSeries {
    let mut s = HilbertSeries::zero(cap);
    if d == 0 {
        // a degree-zero polynomial generator has no truncated meaning
        panic!("polynomial factor in degree zero");
    }
    for k in (0..=cap).step_by(d as usize) {
        s.coeffs[k] = 1;
    }
    s
}

/// Series of the free graded-commutative algebra: `(1 + t^d)` per odd
/// generator, `1/(1 - t^d)` per even one.
pub fn free_commutative_series(
    generators: &[(u32, Parity)],
    cap: usize,
) -> Result<HilbertSeries, SeriesError> {
    let mut acc = HilbertSeries::one(cap);
    for &(d, parity) in generators {
        if d == 0 {
            return Err(SeriesError::ZeroDegree);
        }
        if Parity::of(d) != parity {
            return Err(SeriesError::ParityMismatch { degree: d });
        }
        let factor = match parity {
            Parity::Odd => exterior_factor(d, cap),
            Parity::Even => polynomial_factor(d, cap),
        };
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// `1 / (1 - sum_i t^{d_i})`.
pub fn tensor_algebra_series(degrees: &[u32], cap: usize) -> Result<HilbertSeries, SeriesError> {
    let mut denom = HilbertSeries::one(cap);
    for &d in degrees {
        if d == 0 {
            return Err(SeriesError::ZeroDegree);
        }
        denom = &denom - &HilbertSeries::monomial(cap, d as usize, 1);
    }
    HilbertSeries::one(cap).div(&denom)
}

/// Generators of the double loop space of `S^{2n+1}` below the cap:
/// odd ones in degrees `2n p^i - 1`, even ones in `2n p^{i+1} - 2`.
pub fn omega2_sphere_generators(cfg: &PrimeConfig) -> Vec<(u32, Parity)> {
    let cap = cfg.max_degree as u64;
    let mut gens = Vec::new();
    let mut i = 0;
    loop {
        let odd = cfg.tau_degree(i);
        let even = cfg.sigma_degree(i + 1);
        if odd > cap && even > cap {
            break;
        }
        if odd <= cap {
            gens.push((odd as u32, Parity::Odd));
        }
        if even <= cap {
            gens.push((even as u32, Parity::Even));
        }
        i += 1;
    }
    gens.sort_by_key(|g| g.0);
    gens
}

pub fn omega2_sphere_series(cfg: &PrimeConfig) -> HilbertSeries {
    free_commutative_series(&omega2_sphere_generators(cfg), cfg.max_degree as usize)
        .expect("generator parities are correct by construction")
}

/// `(1 + t^{2n-1})` when `k_min = 0`, times one factor
/// `(1 + t^{2np^k - 1}) / (1 - t^{2np^k - 2})` per stage `k >= max(1, k_min)`
/// whose even degree fits under the cap. `r` plays no role.
pub fn vn_factor_series(cfg: &PrimeConfig, k_min: u32) -> HilbertSeries {
    let cap = cfg.max_degree as usize;
    let mut acc = HilbertSeries::one(cap);
    if k_min == 0 {
        acc = acc
            .mul(&exterior_factor(cfg.tau_degree(0) as u32, cap))
            .unwrap();
    }
    let mut k = k_min.max(1);
    while cfg.sigma_degree(k) <= cap as u64 {
        let odd = exterior_factor(cfg.tau_degree(k).min(u32::MAX as u64) as u32, cap);
        let even = polynomial_factor(cfg.sigma_degree(k) as u32, cap);
        acc = acc.mul(&odd).unwrap().mul(&even).unwrap();
        k += 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(c: &[i64]) -> HilbertSeries {
        HilbertSeries::from_coeffs(c.to_vec())
    }

    /// Linear recurrence oracle `c_d = sum_j c_{d - d_j}`, `c_0 = 1`.
    fn recurrence(degrees: &[usize], cap: usize) -> Vec<i64> {
        let mut c = vec![0i64; cap + 1];
        c[0] = 1;
        for d in 1..=cap {
            c[d] = degrees.iter().filter(|&&k| k <= d).map(|&k| c[d - k]).sum();
        }
        c
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(s(&[1, 1, 0]).mul(&s(&[1, -1, 0])).unwrap(), s(&[1, 0, -1]));
        let geometric = HilbertSeries::one(6)
            .div(&s(&[1, -1, 0, 0, 0, 0, 0]))
            .unwrap();
        assert_eq!(
            geometric.mul(&s(&[1, -1, 0, 0, 0, 0, 0])).unwrap(),
            HilbertSeries::one(6)
        );
        let a = exterior_factor(5, 18);
        let b = exterior_factor(4, 18);
        let mut expect = vec![0i64; 19];
        for d in [0, 4, 5, 9] {
            expect[d] = 1;
        }
        assert_eq!(a.mul(&b).unwrap(), s(&expect));
        assert_eq!(
            a.mul(&HilbertSeries::one(5)),
            Err(SeriesError::CapMismatch(18, 5))
        );
    }

    #[test]
    fn division_examples() {
        let fib = HilbertSeries::one(8)
            .div(&s(&[1, -1, -1, 0, 0, 0, 0, 0, 0]))
            .unwrap();
        assert_eq!(fib.coeffs(), recurrence(&[1, 2], 8).as_slice());
        assert_eq!(fib.coeffs(), &[1, 1, 2, 3, 5, 8, 13, 21, 34]);
        let a = s(&[1, 3, -2, 7]);
        assert_eq!(a.div(&a).unwrap(), HilbertSeries::one(3));
        let q = s(&[1, 0, -1, 0, 0, 0, 0])
            .div(&s(&[1, -1, -1, 0, 0, 0, 0]))
            .unwrap();
        assert_eq!(q.coeffs(), &[1, 1, 1, 2, 3, 5, 8]);
        assert_eq!(
            a.div(&s(&[2, 1, 0, 0])),
            Err(SeriesError::NonUnitConstant(2))
        );
        // constant term -1 is also a unit
        let neg = s(&[-1, 1, 0, 0]);
        assert_eq!(a.div(&neg).unwrap().mul(&neg).unwrap(), a);
    }

    #[test]
    fn free_commutative_examples() {
        let f = free_commutative_series(&[(1, Parity::Odd), (4, Parity::Even)], 6).unwrap();
        assert_eq!(f.coeffs(), &[1, 1, 0, 0, 1, 1, 0]);
        assert_eq!(
            free_commutative_series(&[], 4).unwrap(),
            HilbertSeries::one(4)
        );
        let even = free_commutative_series(&[(2, Parity::Even)], 6).unwrap();
        assert_eq!(even.coeffs(), &[1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(
            free_commutative_series(&[(2, Parity::Odd)], 6),
            Err(SeriesError::ParityMismatch { degree: 2 })
        );
    }

    #[test]
    fn tensor_series_examples() {
        let t = tensor_algebra_series(&[1, 2], 5).unwrap();
        assert_eq!(t.coeffs(), &[1, 1, 2, 3, 5, 8]);
        let t13 = tensor_algebra_series(&[1, 3], 6).unwrap();
        assert_eq!(t13.coeffs(), recurrence(&[1, 3], 6).as_slice());
        assert_eq!(t13.coeffs(), &[1, 1, 1, 2, 3, 4, 6]);
        assert_eq!(
            tensor_algebra_series(&[], 3).unwrap(),
            HilbertSeries::one(3)
        );
        for d in 1..=5u32 {
            let one_var = tensor_algebra_series(&[d], 20).unwrap();
            for k in 0..=20usize {
                let expect = if k % d as usize == 0 { 1 } else { 0 };
                assert_eq!(one_var[k], expect);
            }
        }
    }

    #[test]
    fn omega2_examples() {
        let cfg = PrimeConfig::new(3, 1, 1, 18).unwrap();
        let gens: Vec<u32> = omega2_sphere_generators(&cfg).iter().map(|g| g.0).collect();
        assert_eq!(gens, vec![1, 4, 5, 16, 17]);
        // (1+t)(1+t^5)(1+t^17) / ((1-t^4)(1-t^16)), expanded by hand
        let mut expect = HilbertSeries::one(18);
        for f in [
            exterior_factor(1, 18),
            exterior_factor(5, 18),
            exterior_factor(17, 18),
            polynomial_factor(4, 18),
            polynomial_factor(16, 18),
        ] {
            expect = expect.mul(&f).unwrap();
        }
        assert_eq!(omega2_sphere_series(&cfg), expect);
        assert_eq!(
            omega2_sphere_series(&cfg).coeffs()[..10],
            [1, 1, 0, 0, 1, 2, 1, 0, 1, 2]
        );

        let small = PrimeConfig::new(3, 1, 1, 3).unwrap();
        assert_eq!(omega2_sphere_series(&small).coeffs(), &[1, 1, 0, 0]);

        let p5 = PrimeConfig::new(5, 1, 1, 8).unwrap();
        let expect = exterior_factor(1, 8).mul(&polynomial_factor(8, 8)).unwrap();
        assert_eq!(omega2_sphere_series(&p5), expect);
    }

    #[test]
    fn vn_examples() {
        let cfg = PrimeConfig::new(3, 1, 1, 18).unwrap();
        let mut expect = exterior_factor(1, 18);
        for f in [
            exterior_factor(5, 18),
            polynomial_factor(4, 18),
            exterior_factor(17, 18),
            polynomial_factor(16, 18),
        ] {
            expect = expect.mul(&f).unwrap();
        }
        assert_eq!(vn_factor_series(&cfg, 0), expect);
        let small = PrimeConfig::new(3, 1, 1, 3).unwrap();
        assert_eq!(vn_factor_series(&small, 1), HilbertSeries::one(3));
        let top = exterior_factor(17, 18)
            .mul(&polynomial_factor(16, 18))
            .unwrap();
        assert_eq!(vn_factor_series(&cfg, 2), top);
        // r does not enter
        let r3 = PrimeConfig::new(3, 3, 1, 18).unwrap();
        assert_eq!(vn_factor_series(&r3, 0), vn_factor_series(&cfg, 0));
    }

    #[test]
    fn omega2_is_cap_monotone() {
        let big = omega2_sphere_series(&PrimeConfig::new(3, 1, 1, 40).unwrap());
        for cap in 2..40 {
            let small = omega2_sphere_series(&PrimeConfig::new(3, 1, 1, cap).unwrap());
            assert_eq!(small, big.truncate(cap as usize));
        }
    }

    proptest! {
        #[test]
        fn div_inverts_mul(
            a in proptest::collection::vec(-9i64..10, 9),
            mut b in proptest::collection::vec(-9i64..10, 9),
            neg in any::<bool>(),
        ) {
            b[0] = if neg { -1 } else { 1 };
            let (a, b) = (s(&a), s(&b));
            prop_assert_eq!(a.mul(&b).unwrap().div(&b).unwrap(), a.clone());
            prop_assert_eq!(a.div(&b).unwrap().mul(&b).unwrap(), a);
        }
    }
}
