//! Exact p-local arithmetic: valuations, Legendre's formula, binomial
//! valuations and rationals whose denominators are prime to `p`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ArithError;

/// Primality by trial division; inputs here are small configuration values.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The global parameters of a run.
///
/// `p` is the (odd) prime, `r` the Bockstein index, `n` the half-degree
/// parameter (generators sit in degrees `2n-1` and `2n`) and `max_degree`
/// the truncation degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeConfig {
    pub p: u32,
    pub r: u32,
    pub n: u32,
    pub max_degree: u32,
}

impl PrimeConfig {
    pub fn new(p: u32, r: u32, n: u32, max_degree: u32) -> Result<Self, ArithError> {
        if p < 3 || !is_prime(p as u64) {
            return Err(ArithError::Config("p must be an odd prime".into()));
        }
        if r < 1 {
            return Err(ArithError::Config("r must be at least 1".into()));
        }
        if n < 1 {
            return Err(ArithError::Config("n must be at least 1".into()));
        }
        if max_degree < 2 * n {
            return Err(ArithError::Config(format!(
                "max degree must be at least 2n = {}",
                2 * n
            )));
        }
        Ok(PrimeConfig {
            p,
            r,
            n,
            max_degree,
        })
    }

    /// Same parameters with another degree cap.
    pub fn with_max_degree(&self, max_degree: u32) -> Result<Self, ArithError> {
        PrimeConfig::new(self.p, self.r, self.n, max_degree)
    }

    /// `p^k` as a u64, saturating on overflow.
    pub fn p_pow(&self, k: u32) -> u64 {
        (self.p as u64).saturating_pow(k)
    }

    /// Degree `2n p^k - 1` of `tau_k`.
    pub fn tau_degree(&self, k: u32) -> u64 {
        (2 * self.n as u64).saturating_mul(self.p_pow(k)) - 1
    }

    /// Degree `2n p^k - 2` of `sigma_k` (only meaningful for `k >= 1`).
    pub fn sigma_degree(&self, k: u32) -> u64 {
        (2 * self.n as u64).saturating_mul(self.p_pow(k)) - 2
    }

    /// Largest `k >= 1` with `2n p^k - 2 <= D`, or `None` if no stage fits.
    pub fn k_max(&self) -> Option<u32> {
        let mut k = 0;
        while self.sigma_degree(k + 1) <= self.max_degree as u64 {
            k += 1;
        }
        (k > 0).then_some(k)
    }
}

/// Exponent of `p` in the nonzero integer `m`.
pub fn vp(p: u64, m: &BigInt) -> Result<u64, ArithError> {
    if m.is_zero() {
        return Err(ArithError::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut m = m.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

/// [`vp`] for machine integers.
pub fn vp_i64(p: u64, m: i64) -> Result<u64, ArithError> {
    vp(p, &BigInt::from(m))
}

/// Legendre's formula: `sum_{i>=1} floor(m / p^i)`.
pub fn vp_factorial(p: u64, m: u64) -> u64 {
    let mut total = 0;
    let mut q = m / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// `v_p(C(m, k))` via Legendre's formula.
pub fn vp_binomial(p: u64, m: u64, k: u64) -> Result<u64, ArithError> {
    if k > m {
        return Err(ArithError::BinomialRange { m, k });
    }
    Ok(vp_factorial(p, m) - vp_factorial(p, k) - vp_factorial(p, m - k))
}

/// Exact binomial coefficient.
pub fn binomial(m: u64, k: u64) -> Result<BigUint, ArithError> {
    if k > m {
        return Err(ArithError::BinomialRange { m, k });
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// Exact factorial.
pub fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

/// A rational number with denominator prime to `p`, kept in lowest terms
/// with a positive denominator so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLocalRational {
    p: u64,
    numerator: BigInt,
    denominator: BigInt,
}

impl PLocalRational {
    pub fn new(
        p: u64,
        numerator: impl Into<BigInt>,
        denominator: impl Into<BigInt>,
    ) -> Result<Self, ArithError> {
        let mut num: BigInt = numerator.into();
        let mut den: BigInt = denominator.into();
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        if den.sign() == Sign::Minus {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_zero() && !g.is_one() {
            num /= &g;
            den /= &g;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        if (&den % BigInt::from(p)).is_zero() {
            return Err(ArithError::NotPLocal {
                numerator: num.to_string(),
                denominator: den.to_string(),
                p,
            });
        }
        Ok(PLocalRational {
            p,
            numerator: num,
            denominator: den,
        })
    }

    pub fn integer(p: u64, value: impl Into<BigInt>) -> Self {
        PLocalRational {
            p,
            numerator: value.into(),
            denominator: BigInt::one(),
        }
    }

    pub fn zero(p: u64) -> Self {
        Self::integer(p, 0)
    }

    pub fn one(p: u64) -> Self {
        Self::integer(p, 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Valuation of a nonzero element; always nonnegative.
    pub fn valuation(&self) -> Result<u64, ArithError> {
        vp(self.p, &self.numerator)
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(self.p, other.p, "p-local rationals over different primes");
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_prime(other);
        PLocalRational::new(
            self.p,
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
        )
        .expect("product of p-local rationals is p-local")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_prime(other);
        PLocalRational::new(
            self.p,
            &self.numerator * &other.denominator + &other.numerator * &self.denominator,
            &self.denominator * &other.denominator,
        )
        .expect("sum of p-local rationals is p-local")
    }

    pub fn neg(&self) -> Self {
        PLocalRational {
            p: self.p,
            numerator: -self.numerator.clone(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn scale_int(&self, k: impl Into<BigInt>) -> Self {
        self.mul(&PLocalRational::integer(self.p, k))
    }

    /// `self / other`, provided the quotient is again p-local.
    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_prime(other);
        if other.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        PLocalRational::new(
            self.p,
            &self.numerator * &other.denominator,
            &self.denominator * &other.numerator,
        )
    }
}

impl fmt::Debug for PLocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PLocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

/// True iff `q` is nonzero with valuation zero.
pub fn is_p_local_unit(q: &PLocalRational) -> bool {
    !q.is_zero() && q.valuation() == Ok(0)
}

/// Image of `q` in `F_p`.
pub fn reduce_mod_p(q: &PLocalRational) -> u32 {
    let p = BigInt::from(q.p);
    let num = q.numerator.mod_floor(&p).to_u64().unwrap();
    let den = q.denominator.mod_floor(&p).to_u64().unwrap();
    let inv = mod_pow(den, q.p - 2, q.p);
    ((num * inv) % q.p) as u32
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: strip factors of p by repeated division.
    fn trial_division_vp(p: u64, mut m: u64) -> u64 {
        let mut v = 0;
        while m.is_multiple_of(p) {
            m /= p;
            v += 1;
        }
        v
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(trial_division_vp(3, 84), 1);
        assert_eq!(vp_i64(3, 84).unwrap(), 1);
        assert_eq!(vp_i64(3, 1).unwrap(), 0);
        assert_eq!(trial_division_vp(5, 250), 3);
        assert_eq!(vp_i64(5, 250).unwrap(), 3);
        assert_eq!(vp_i64(3, -27).unwrap(), 3);
        assert_eq!(vp_i64(3, 0), Err(ArithError::ZeroValuation));
    }

    #[test]
    fn legendre_examples() {
        // 9! = 362880 = 2^7 3^4 5 7
        assert_eq!(vp(3, &BigInt::from(factorial(9))).unwrap(), 4);
        assert_eq!(vp_factorial(3, 9), 4);
        assert_eq!(vp_factorial(3, 0), 0);
        assert_eq!(vp_factorial(5, 26), 6);
    }

    #[test]
    fn legendre_matches_factorization() {
        for p in [3u64, 5, 7] {
            for m in 0..=40u64 {
                let direct = vp(p, &BigInt::from(factorial(m))).unwrap();
                assert_eq!(vp_factorial(p, m), direct, "p={p} m={m}");
            }
        }
    }

    #[test]
    fn binomial_valuation_examples() {
        assert_eq!(binomial(9, 3).unwrap(), BigUint::from(84u32));
        assert_eq!(vp_binomial(3, 9, 3).unwrap(), 1);
        assert_eq!(vp_i64(3, 3).unwrap(), 1);
        assert_eq!(binomial(6, 3).unwrap(), BigUint::from(20u32));
        assert_eq!(vp_binomial(3, 6, 3).unwrap(), 0);
        for m in 0..30 {
            assert_eq!(vp_binomial(3, m, 0).unwrap(), 0);
        }
        assert_eq!(
            vp_binomial(3, 2, 3),
            Err(ArithError::BinomialRange { m: 2, k: 3 })
        );
    }

    #[test]
    fn binomial_valuation_matches_big_integer() {
        for p in [3u64, 5] {
            for m in 0..60u64 {
                for k in 0..=m {
                    let c = BigInt::from(binomial(m, k).unwrap());
                    assert_eq!(vp_binomial(p, m, k).unwrap(), vp(p, &c).unwrap());
                }
            }
        }
    }

    #[test]
    fn scaled_binomial_valuation_identity() {
        for p in [3u64, 5] {
            for s in [1u32, 2] {
                let q = p.pow(s);
                for i in 1..=200u64 {
                    assert_eq!(
                        vp_binomial(p, q * i, q).unwrap(),
                        vp_i64(p, i as i64).unwrap(),
                        "p={p} s={s} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn unit_examples() {
        let c31 = BigInt::from(binomial(3, 1).unwrap());
        let half = PLocalRational::new(3, c31, 6).unwrap();
        assert_eq!(half, PLocalRational::new(3, 1, 2).unwrap());
        assert!(is_p_local_unit(&half));
        assert!(!is_p_local_unit(&PLocalRational::new(3, 3, 2).unwrap()));
        let c93 = BigInt::from(binomial(9, 3).unwrap());
        let fourteen = PLocalRational::new(3, c93, 6).unwrap();
        assert_eq!(fourteen, PLocalRational::integer(3, 14));
        assert!(is_p_local_unit(&fourteen));
        assert!(!is_p_local_unit(&PLocalRational::zero(3)));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_p(&PLocalRational::new(3, 1, 2).unwrap()), 2);
        assert_eq!(reduce_mod_p(&PLocalRational::zero(3)), 0);
        assert_eq!(reduce_mod_p(&PLocalRational::integer(5, 14)), 4);
        assert_eq!(reduce_mod_p(&PLocalRational::new(5, -1, 2).unwrap()), 2);
    }

    #[test]
    fn normalization_is_structural() {
        let a = PLocalRational::new(3, 4, -8).unwrap();
        let b = PLocalRational::new(3, -1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.denominator(), &BigInt::from(2));
        assert!(PLocalRational::new(3, 1, 6).is_err());
        assert!(PLocalRational::new(3, 1, 0).is_err());
    }

    #[test]
    fn leading_sigma_coefficient_is_unit() {
        for p in [3u64, 5] {
            for k in 1..=3u32 {
                let c = BigInt::from(binomial(p.pow(k), p.pow(k - 1)).unwrap());
                let q = PLocalRational::new(p, c, 2 * p).unwrap();
                assert!(is_p_local_unit(&q), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn config_validation() {
        assert!(PrimeConfig::new(3, 1, 1, 18).is_ok());
        assert!(PrimeConfig::new(4, 1, 1, 18).is_err());
        assert!(PrimeConfig::new(2, 1, 1, 18).is_err());
        assert!(PrimeConfig::new(3, 0, 1, 18).is_err());
        assert!(PrimeConfig::new(3, 1, 2, 3).is_err());
        let cfg = PrimeConfig::new(3, 1, 1, 18).unwrap();
        assert_eq!(cfg.k_max(), Some(2));
        assert_eq!(PrimeConfig::new(3, 1, 1, 3).unwrap().k_max(), None);
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in 1i64..100_000, b in 1i64..100_000, neg in any::<bool>()) {
            let a = if neg { -a } else { a };
            for p in [3u64, 5, 7] {
                prop_assert_eq!(
                    vp_i64(p, a * b).unwrap(),
                    vp_i64(p, a).unwrap() + vp_i64(p, b).unwrap()
                );
            }
        }

        #[test]
        fn reduction_is_a_ring_map(
            an in -500i64..500, ad in 1i64..500,
            bn in -500i64..500, bd in 1i64..500,
        ) {
            let p = 5u64;
            prop_assume!(ad % 5 != 0 && bd % 5 != 0);
            let a = PLocalRational::new(p, an, ad).unwrap();
            let b = PLocalRational::new(p, bn, bd).unwrap();
            let (ra, rb) = (reduce_mod_p(&a) as u64, reduce_mod_p(&b) as u64);
            prop_assert_eq!(reduce_mod_p(&a.add(&b)) as u64, (ra + rb) % p);
            prop_assert_eq!(reduce_mod_p(&a.mul(&b)) as u64, (ra * rb) % p);
        }
    }
}
