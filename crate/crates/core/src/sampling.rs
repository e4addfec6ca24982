//! Seeded random generators for polynomials and kernel elements.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::error::Result;
use crate::polyfock::{basis_in_sector, PolyPoly};
use crate::scalar::Scalar;

/// Rational `p/q` with `p ∈ [-bound, bound]`, `q ∈ [1, bound]`, so the value
/// lies in `[-bound, bound]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> BigRational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound.max(1));
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Analytic polynomial of degree at most `max_degree`; may be zero.
pub fn random_analytic<R: Rng + ?Sized>(rng: &mut R, max_degree: u32) -> PolyPoly {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs: Vec<_> = (0..=degree).map(|_| random_rational(rng, 10)).collect();
    PolyPoly::analytic(&coeffs)
}

/// Analytic polynomial of exact degree `degree` (nonzero leading coefficient).
pub fn random_analytic_exact<R: Rng + ?Sized>(rng: &mut R, degree: u32) -> PolyPoly {
    let mut coeffs: Vec<_> = (0..=degree).map(|_| random_rational(rng, 10)).collect();
    while coeffs[degree as usize].is_zero() {
        coeffs[degree as usize] = random_rational(rng, 10);
    }
    PolyPoly::analytic(&coeffs)
}

/// Polyanalytic polynomial with up to `terms` monomials `z̄ʲzᵏ`, `j ≤ max_j`,
/// `k ≤ max_k`, and `m`-free rational coefficients.
pub fn random_polypoly<R: Rng + ?Sized>(rng: &mut R, max_j: u32, max_k: u32, terms: usize) -> PolyPoly {
    let count = rng.gen_range(0..=terms);
    PolyPoly::from_terms((0..count).map(|_| {
        let j = rng.gen_range(0..=max_j);
        let k = rng.gen_range(0..=max_k);
        ((j, k), Scalar::from_rational(random_rational(rng, 10)))
    }))
}

/// Nonzero element of `F^{N,m}`: a rational combination of one to four basis
/// vectors with sector indices `i, k ≤ max_index` (and `r, j ≤ N-1`).
pub fn random_kernel_element<R: Rng + ?Sized>(rng: &mut R, order: u32, max_index: u32) -> Result<PolyPoly> {
    let lowest = -(i64::from(order.min(max_index + 1)) - 1);
    loop {
        let mut h = PolyPoly::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let d = rng.gen_range(lowest..=i64::from(max_index));
            let sector = basis_in_sector(order, d)?;
            let pick = &sector[rng.gen_range(0..sector.len())];
            let mut c = random_rational(rng, 10);
            while c.is_zero() {
                c = random_rational(rng, 10);
            }
            h.add_scaled(&pick.vector, &Scalar::from_rational(c));
        }
        if !h.is_zero() {
            return Ok(h);
        }
    }
}
