//! Exact binomial coefficients and rational helpers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `C(n, k)` with a signed top argument; zero for negative `n`.
pub fn binomial_i(n: i64, k: u64) -> BigUint {
    if n < 0 {
        BigUint::zero()
    } else {
        binomial(n as u64, k)
    }
}

pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn big_to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// `1 / x` for a positive big integer.
pub fn reciprocal(x: &BigUint) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(x.clone()))
}

/// Best-effort `f64` view of an exact rational (for reports only).
pub fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}
