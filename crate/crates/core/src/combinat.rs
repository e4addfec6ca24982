//! Integer factorials and binomials with the out-of-range-is-zero convention.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(a)!/(b)!` for `a ≥ b`, i.e. the falling product `(b+1)(b+2)…a`.
pub fn factorial_ratio(a: u32, b: u32) -> BigInt {
    debug_assert!(a >= b);
    (b + 1..=a).fold(BigInt::one(), |acc, k| acc * k)
}

/// `binom(a, b)`; zero whenever `b < 0` or `b > a` (with `a ≥ 0`).
pub fn binomial(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// `(-1)^k` as a big integer.
pub fn sign(k: u32) -> BigInt {
    if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        // Pascal's rule across the whole table, including the zero border
        for a in 1..25 {
            for b in -2..28 {
                assert_eq!(binomial(a, b), binomial(a - 1, b - 1) + binomial(a - 1, b));
            }
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(factorial_ratio(10, 7), BigInt::from(720));
        assert_eq!(factorial(30) / factorial(20), factorial_ratio(30, 20));
    }
}
