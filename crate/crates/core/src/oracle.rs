//! Floating-point cross-checks by Gauss–Laguerre quadrature.
//!
//! Angular integrals are taken analytically (only equal-sector monomial pairs
//! survive), and what remains is a radial integral `∫₀^∞ P(y) e^{-y} dy` with
//! `y = m|z|²` and `P` a polynomial, which an `n`-node rule integrates exactly
//! up to rounding whenever `deg P ≤ 2n - 1`.
//!
//! Several of the integrals checked here vanish exactly while their integrands
//! reach `10²⁶` and beyond, so node refinement and every sum run in 256-bit
//! binary floating point; results are rounded to `f64` at the end.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::polyfock::{sector_of, PolyPoly};
use crate::scalar::Scalar;

pub const MAX_NODES: usize = 64;

/// Working precision, in bits.
const PRECISION: usize = 256;

type Real = FBig<HalfEven, 2>;

fn real_from_f64(x: f64) -> Real {
    Real::try_from(x).expect("finite").with_precision(PRECISION).value()
}

fn real_from_int(n: i64) -> Real {
    Real::from(IBig::from(n)).with_precision(PRECISION).value()
}

fn real_from_bigint(n: &BigInt) -> Real {
    Real::from(IBig::from_le_bytes(&n.to_signed_bytes_le()))
        .with_precision(PRECISION)
        .value()
}

fn real_from_rational(r: &BigRational) -> Real {
    real_from_bigint(r.numer()) / real_from_bigint(r.denom())
}

fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

fn powi(x: &Real, p: u32) -> Real {
    let mut acc = real_from_int(1);
    for _ in 0..p {
        acc = &acc * x;
    }
    acc
}

/// `L_k^α(x)` by the three-term recurrence, in working precision.
fn laguerre(k: u32, alpha: u32, x: &Real) -> Real {
    let a = real_from_int(i64::from(alpha));
    let mut prev = real_from_int(1);
    if k == 0 {
        return prev;
    }
    let mut cur = &(&prev + &a) - x;
    for j in 1..k {
        let jr = real_from_int(i64::from(j));
        let lead = &(&(&real_from_int(2 * i64::from(j) + 1) + &a) - x) * &cur;
        let next = (&lead - &(&(&jr + &a) * &prev)) / real_from_int(i64::from(j) + 1);
        prev = cur;
        cur = next;
    }
    cur
}

/// Nodes and weights of the `n`-point rule for `∫₀^∞ f(y) e^{-y} dy`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    precise_nodes: Vec<Real>,
    precise_weights: Vec<Real>,
}

impl QuadRule {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Highest polynomial degree integrated exactly.
    pub fn exact_degree(&self) -> u32 {
        2 * self.nodes.len() as u32 - 1
    }

    /// `Σ wᵢ f(xᵢ)` in `f64`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }

    fn integrate_precise(&self, f: impl Fn(&Real) -> Real) -> f64 {
        let total = self
            .precise_nodes
            .iter()
            .zip(&self.precise_weights)
            .fold(real_from_int(0), |acc, (x, w)| acc + w * &f(x));
        to_f64(&total)
    }

    fn require_degree(&self, degree: u32) -> Result<()> {
        if degree > self.exact_degree() {
            Err(Error::InsufficientNodes {
                nodes: self.nodes.len(),
                degree,
            })
        } else {
            Ok(())
        }
    }
}

/// Golub–Welsch: the nodes are the eigenvalues of the Jacobi matrix of the
/// Laguerre recurrence (diagonal `2k+1`, off-diagonal `k`).
///
/// The `f64` eigenvalues are then polished by Newton's method on `L_n` in
/// working precision, and the weights come from `w = x / ((n+1) L_{n+1}(x))²`
/// rather than from eigenvector components, which carry only absolute
/// accuracy and so lose the tiny weights at the far nodes.
pub fn gauss_laguerre(node_count: usize) -> Result<QuadRule> {
    if !(1..=MAX_NODES).contains(&node_count) {
        return Err(Error::NodeCount(node_count));
    }
    let n = node_count;
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            (2 * i + 1) as f64
        } else if i.abs_diff(j) == 1 {
            i.max(j) as f64
        } else {
            0.0
        }
    });
    let mut guesses: Vec<f64> = SymmetricEigen::new(jacobi).eigenvalues.iter().copied().collect();
    guesses.sort_by(f64::total_cmp);

    let deg = n as u32;
    let n_real = real_from_int(n as i64);
    let tolerance = real_from_f64(2f64.powi(-(PRECISION as i32) + 8));
    let precise_nodes: Vec<Real> = guesses
        .iter()
        .map(|&guess| {
            let mut x = real_from_f64(guess);
            for _ in 0..12 {
                let value = laguerre(deg, 0, &x);
                let prev = laguerre(deg - 1, 0, &x);
                // x L_n' = n (L_n - L_{n-1})
                let slope = &n_real * &(&value - &prev) / &x;
                let step = value / slope;
                x = &x - &step;
                let bound = &tolerance * &x;
                if &step * &step <= &bound * &bound {
                    break;
                }
            }
            x
        })
        .collect();
    let scale = real_from_int(n as i64 + 1);
    let precise_weights: Vec<Real> = precise_nodes
        .iter()
        .map(|x| {
            let next = &scale * &laguerre(deg + 1, 0, x);
            x / &(&next * &next)
        })
        .collect();
    Ok(QuadRule {
        nodes: precise_nodes.iter().map(to_f64).collect(),
        weights: precise_weights.iter().map(to_f64).collect(),
        precise_nodes,
        precise_weights,
    })
}

/// Smallest rule exact for `degree`, plus two guard nodes.
pub fn rule_for_degree(degree: u32) -> Result<QuadRule> {
    gauss_laguerre((degree as usize + 1).div_ceil(2) + 2)
}

/// `∫₀^∞ yᵃ L_b^c(y) e^{-y} dy` by quadrature.
pub fn quad_moment(a: u32, b: u32, c: u32, rule: &QuadRule) -> Result<f64> {
    rule.require_degree(a + b)?;
    Ok(rule.integrate_precise(|y| powi(y, a) * laguerre(b, c, y)))
}

fn positive(m: &BigRational) -> Result<()> {
    if !m.is_positive() {
        return Err(Error::NonPositiveParameter(m.to_string()));
    }
    Ok(())
}

/// Value of a scalar at `m`, given `m` and `√m` in working precision.
fn eval_scalar(s: &Scalar, m: &Real, root: &Real) -> Real {
    s.terms().fold(real_from_int(0), |acc, (h, c)| {
        let base = if h % 2 == 0 { real_from_int(1) } else { root.clone() };
        let half = h.div_euclid(2);
        let power = if half >= 0 {
            powi(m, half as u32)
        } else {
            real_from_int(1) / powi(m, half.unsigned_abs())
        };
        acc + real_from_rational(c) * power * base
    })
}

/// Coefficients of the radial polynomial `P` with `⟨f, g⟩ = ∫₀^∞ P(y) e^{-y} dy`.
fn radial_polynomial(f: &PolyPoly, g: &PolyPoly, m: &BigRational) -> Vec<Real> {
    let m_real = real_from_rational(m);
    let root = m_real.sqrt();
    let mut coeffs: Vec<Real> = Vec::new();
    for (fm, fc) in f.terms() {
        let fc = eval_scalar(fc, &m_real, &root);
        for (gm, gc) in g.terms() {
            if sector_of(fm) != sector_of(gm) {
                continue;
            }
            // |z|^{2p} with p = a + d, and dμ_m becomes m^{-p-1} y^p e^{-y} dy
            let p = (fm.0 + gm.1) as usize;
            if coeffs.len() <= p {
                coeffs.resize(p + 1, real_from_int(0));
            }
            let term = &fc * &eval_scalar(gc, &m_real, &root) / powi(&m_real, p as u32 + 1);
            coeffs[p] = &coeffs[p] + &term;
        }
    }
    coeffs
}

/// `⟨f, g⟩` at a rational `m > 0` by quadrature of the radial integral.
pub fn quad_inner(f: &PolyPoly, g: &PolyPoly, m: &BigRational, rule: &QuadRule) -> Result<f64> {
    positive(m)?;
    let poly = radial_polynomial(f, g, m);
    if poly.is_empty() {
        return Ok(0.0);
    }
    rule.require_degree(poly.len() as u32 - 1)?;
    Ok(rule.integrate_precise(|y| {
        poly.iter()
            .rev()
            .fold(real_from_int(0), |acc, c| acc * y + c)
    }))
}

/// Highest radial power `p` appearing in `⟨f, g⟩`.
pub fn radial_degree(f: &PolyPoly, g: &PolyPoly) -> u32 {
    let top = |p: &PolyPoly| p.terms().map(|((j, k), _)| j.max(k)).max().unwrap_or(0);
    top(f) + top(g)
}

/// `f64` value of an exact rational, for comparisons against the oracle.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::factorial;
    use crate::laguerre::moment_i;
    use crate::polyfock::{inner, BasisElement, BasisKind};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_rules() {
        let r1 = gauss_laguerre(1).unwrap();
        assert!((r1.nodes[0] - 1.0).abs() < 1e-15);
        assert!((r1.weights[0] - 1.0).abs() < 1e-15);
        let r2 = gauss_laguerre(2).unwrap();
        let s2 = 2f64.sqrt();
        assert!((r2.nodes[0] - (2.0 - s2)).abs() < 1e-14);
        assert!((r2.nodes[1] - (2.0 + s2)).abs() < 1e-14);
        assert!(gauss_laguerre(0).is_err());
        assert!(gauss_laguerre(65).is_err());
    }

    #[test]
    fn weights_sum_to_one() {
        for n in 1..=MAX_NODES {
            let rule = gauss_laguerre(n).unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert!((total - 1.0).abs() <= 1e-12, "n={n}: {total}");
            assert!(rule.weights.iter().all(|w| *w >= 0.0));
            assert!(rule.nodes.iter().all(|x| *x > 0.0));
        }
    }

    #[test]
    fn factorial_moments() {
        for n in 1..=MAX_NODES {
            let rule = gauss_laguerre(n).unwrap();
            for p in 0..=(2 * n as u32 - 1).min(25) {
                let exact = factorial(p).to_f64().unwrap();
                let got = rule.integrate(|y| y.powi(p as i32));
                assert!(((got - exact) / exact).abs() <= 1e-12, "n={n} p={p}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn moment_examples() {
        let rule = rule_for_degree(3).unwrap();
        assert!((quad_moment(1, 0, 0, &rule).unwrap() - 1.0).abs() < 1e-13);
        assert!((quad_moment(2, 1, 1, &rule).unwrap() + 2.0).abs() < 1e-13);
        let tiny = gauss_laguerre(1).unwrap();
        assert!(matches!(quad_moment(2, 1, 0, &tiny), Err(Error::InsufficientNodes { .. })));
    }

    #[test]
    fn moment_sweep() {
        let rule = rule_for_degree(30).unwrap();
        for a in 0..=20 {
            for b in 0..=10 {
                for c in 0..=10 {
                    let exact = moment_i(a, b, c).to_f64().unwrap();
                    let got = quad_moment(a, b, c, &rule).unwrap();
                    assert!((got - exact).abs() <= 1e-10 * exact.abs().max(1.0), "I({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn inner_examples() {
        let rule = rule_for_degree(8).unwrap();
        let z = PolyPoly::zbar_z(0, 1);
        let m1 = q(1, 1);
        assert!((quad_inner(&z, &z, &m1, &rule).unwrap() - 1.0).abs() < 1e-14);
        let zb = PolyPoly::zbar_z(1, 0);
        let z2 = PolyPoly::zbar_z(0, 2);
        assert_eq!(quad_inner(&zb, &z2, &q(5, 2), &rule).unwrap(), 0.0);
        let e = BasisElement::new(BasisKind::E2 { j: 0, k: 1 }, 2).unwrap();
        let m3 = q(3, 1);
        let raw = quad_inner(&e.vector, &e.vector, &m3, &rule).unwrap();
        let normalized = raw * e.normalization_sq.eval(&m3).unwrap();
        assert!((normalized - 1.0).abs() < 1e-13);
        let exact = inner(&e.vector, &e.vector).eval(&m3).unwrap();
        assert!((raw - exact).abs() <= 1e-13 * exact);
        assert!(quad_inner(&z, &z, &q(-1, 1), &rule).is_err());
        let big = PolyPoly::zbar_z(4, 9);
        assert!(quad_inner(&big, &big, &m1, &gauss_laguerre(2).unwrap()).is_err());
    }
}
