//! Generalized Laguerre polynomials `L_k^α` with integer `α ≥ 0`, their
//! Gamma-weighted moments, and the two binomial identities behind the
//! closed-form Hankel norms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::combinat::{binomial, factorial, factorial_ratio, sign};
use crate::error::{Error, Result};

/// Exact coefficients of `L_k^α(y) = Σ_i c_i yⁱ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaguerrePoly {
    pub degree: u32,
    pub alpha: u32,
    /// `c_i = (-1)^i binom(k+α, k-i) / i!` for `i = 0..=k`.
    pub coeffs: Vec<BigRational>,
}

impl LaguerrePoly {
    pub fn new(degree: u32, alpha: u32) -> Self {
        let top = i64::from(degree) + i64::from(alpha);
        let coeffs = (0..=degree)
            .map(|i| {
                BigRational::new(
                    sign(i) * binomial(top, i64::from(degree - i)),
                    factorial(i),
                )
            })
            .collect();
        Self { degree, alpha, coeffs }
    }

    /// Horner evaluation at an exact rational point.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

/// Shorthand for [`LaguerrePoly::new`].
pub fn laguerre_coeffs(k: u32, alpha: u32) -> LaguerrePoly {
    LaguerrePoly::new(k, alpha)
}

/// `L_k^α(x)` in floating point via the three-term recurrence
/// `(j+1) L_{j+1} = (2j+1+α-x) L_j - (j+α) L_{j-1}`.
pub fn laguerre_eval(k: u32, alpha: u32, x: f64) -> f64 {
    let a = f64::from(alpha);
    let mut prev = 1.0;
    if k == 0 {
        return prev;
    }
    let mut cur = 1.0 + a - x;
    for j in 1..k {
        let j = f64::from(j);
        let next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Index triple of the moment `I_{a,b,c} = ∫₀^∞ yᵃ L_b^c(y) e^{-y} dy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MomentTriple {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl MomentTriple {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Self { a, b, c }
    }

    pub fn exact(self) -> BigInt {
        moment_i(self.a, self.b, self.c)
    }
}

/// `I_{a,b,c} = Σ_{i=0}^{b} (-1)^i binom(b+c, b-i) (a+i)!/i!`.
///
/// Always an integer, since each term is a binomial times a falling product.
pub fn moment_i(a: u32, b: u32, c: u32) -> BigInt {
    let top = i64::from(b) + i64::from(c);
    (0..=b)
        .map(|i| sign(i) * binomial(top, i64::from(b - i)) * factorial_ratio(a + i, i))
        .sum()
}

/// Closed form of `I_{n,r,n-s} = s!(r+n-s)!/r! · (-1)^r binom(n, s-r)`.
pub fn moment_i_closed(n: u32, r: u32, s: u32) -> Result<BigInt> {
    if n < s {
        return Err(Error::Precondition(format!(
            "closed moment needs n >= s, got n = {n}, s = {s}"
        )));
    }
    let shifted = r + n - s;
    Ok(factorial(s)
        * factorial_ratio(shifted, r)
        * sign(r)
        * binomial(i64::from(n), i64::from(s) - i64::from(r)))
}

/// Checks `Σ_{i=0}^r (-1)^i binom(r,i) binom(n+i,s) = (-1)^r binom(n, s-r)`.
pub fn identity_gould(r: u32, n: u32, s: u32) -> bool {
    let (r64, n64, s64) = (i64::from(r), i64::from(n), i64::from(s));
    let lhs: BigInt = (0..=r)
        .map(|i| sign(i) * binomial(r64, i64::from(i)) * binomial(n64 + i64::from(i), s64))
        .sum();
    lhs == sign(r) * binomial(n64, s64 - r64)
}

/// Checks `Σ_{r=0}^{s} binom(n, s-r) binom(s, r) = binom(n+s, s)`.
pub fn identity_vandermonde(n: u32, s: u32) -> bool {
    let (n64, s64) = (i64::from(n), i64::from(s));
    let lhs: BigInt = (0..=s64)
        .map(|r| binomial(n64, s64 - r) * binomial(s64, r))
        .sum();
    lhs == binomial(n64 + s64, s64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, ToPrimitive};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_coefficient_vectors() {
        assert_eq!(laguerre_coeffs(0, 5).coeffs, vec![BigRational::one()]);
        assert_eq!(laguerre_coeffs(1, 1).coeffs, vec![q(2, 1), q(-1, 1)]);
        assert_eq!(
            laguerre_coeffs(2, 0).coeffs,
            vec![q(1, 1), q(-2, 1), q(1, 2)]
        );
        for k in 0..12 {
            for alpha in 0..6 {
                let p = laguerre_coeffs(k, alpha);
                assert_eq!(p.coeffs.len(), k as usize + 1);
                let lead = BigRational::new(sign(k), factorial(k));
                assert_eq!(p.coeffs[k as usize], lead);
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(laguerre_eval(1, 1, 2.0), 0.0);
        assert!((laguerre_eval(2, 0, 1.0) + 0.5).abs() < 1e-15);
        for k in 0..15u32 {
            for alpha in 0..6u32 {
                let expect = binomial(i64::from(k + alpha), i64::from(k)).to_f64().unwrap();
                assert!((laguerre_eval(k, alpha, 0.0) - expect).abs() <= 1e-12 * expect);
            }
        }
    }

    #[test]
    fn recurrence_matches_exact_polynomial() {
        for k in 0..=30u32 {
            for alpha in [0u32, 1, 3, 7] {
                let p = laguerre_coeffs(k, alpha);
                for x4 in [0i64, 1, 3, 10, 37, 101, 200] {
                    let xq = q(x4, 4);
                    let exact = p.eval_exact(&xq).to_f64().unwrap();
                    let approx = laguerre_eval(k, alpha, x4 as f64 / 4.0);
                    let scale = exact.abs().max(1.0);
                    // relative bound on values of order one or larger; absolute near roots
                    assert!(
                        (exact - approx).abs() <= 1e-10 * scale,
                        "k={k} alpha={alpha} x={}: {exact} vs {approx}",
                        x4 as f64 / 4.0
                    );
                }
            }
        }
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moment_i(1, 0, 0), BigInt::from(1));
        assert_eq!(moment_i(2, 1, 1), BigInt::from(-2));
        assert_eq!(moment_i(1, 1, 0), BigInt::from(-1));
        assert_eq!(MomentTriple::new(2, 1, 1).exact(), BigInt::from(-2));
        assert_eq!(moment_i_closed(2, 1, 1).unwrap(), BigInt::from(-2));
        assert_eq!(moment_i_closed(5, 0, 0).unwrap(), factorial(5));
        assert!(moment_i_closed(3, 2, 5).is_err());
    }

    /// Moments recomputed from the polynomial coefficients and `∫ y^p e^{-y} = p!`.
    #[test]
    fn moment_against_coefficient_integration() {
        for a in 0..12 {
            for b in 0..8 {
                for c in 0..6 {
                    let direct: BigRational = laguerre_coeffs(b, c)
                        .coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, ci)| ci * BigRational::from_integer(factorial(a + i as u32)))
                        .sum();
                    assert_eq!(BigRational::from_integer(moment_i(a, b, c)), direct);
                }
            }
        }
    }

    #[test]
    fn closed_moment_sweep() {
        for n in 0..=20 {
            for s in 0..=n {
                for r in 0..=10 {
                    assert_eq!(moment_i(n, r, n - s), moment_i_closed(n, r, s).unwrap());
                }
            }
        }
    }

    #[test]
    fn identities() {
        assert!(identity_gould(1, 2, 1));
        assert!(identity_vandermonde(2, 2));
        for r in 0..=30 {
            for n in 0..=30 {
                for s in 0..=30 {
                    assert!(identity_gould(r, n, s), "gould r={r} n={n} s={s}");
                }
            }
        }
        for n in 0..=30 {
            for s in 0..=30 {
                assert!(identity_vandermonde(n, s));
            }
        }
    }
}
