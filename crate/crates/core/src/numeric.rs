//! Small exact-arithmetic helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Falling factorial (x)_k = x(x-1)...(x-k+1).
pub fn falling(x: i64, k: usize) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, i| acc * (x - i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    falling(n as i64, k) / factorial(k)
}

/// Exact division; `what` names the identity for the diagnostic.
pub fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::NoSolution(format!("{what}: division by zero")));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!("{what}: {num} / {den}")));
    }
    Ok(q)
}

pub fn nonnegative(x: BigInt, what: &str) -> Result<BigInt> {
    if x.is_negative() {
        Err(Error::Negative(format!("{what}: {x}")))
    } else {
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(9), BigInt::from(362_880));
        assert_eq!(falling(5, 2), BigInt::from(20));
        assert_eq!(falling(3, 0), BigInt::from(1));
        assert_eq!(falling(-1, 2), BigInt::from(2));
        assert_eq!(binomial(8, 3), BigInt::from(56));
        assert_eq!(binomial(2, 3), BigInt::from(0));
        assert!(exact_div(&7.into(), &2.into(), "t").is_err());
        assert_eq!(exact_div(&8.into(), &2.into(), "t").unwrap(), BigInt::from(4));
    }
}
