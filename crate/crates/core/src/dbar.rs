//! Minimal `L²(μ_m)`-norm solutions of `(∂̄)^N u = f` for analytic polynomial
//! data `f`: `u = (I - P_{F^{N,m}})(z̄^N/N! · f)`.

use num_rational::BigRational;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::factorial;
use crate::error::{Error, Result};
use crate::polyfock::{basis_in_sector, dbar, inner, sector_decompose, PolyPoly};
use crate::projection::project_f_generic;
use crate::sampling::random_kernel_element;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub u: PolyPoly,
    /// `(∂̄)^N u = f` exactly.
    pub residual_ok: bool,
    /// `u ⊥ F^{N,m}` exactly.
    pub orthogonal_ok: bool,
    pub norm_sq: Scalar,
}

impl SolutionReport {
    pub fn accepted(&self) -> bool {
        self.residual_ok && self.orthogonal_ok
    }
}

/// The particular solution `z̄^N/N! · f`.
pub fn particular_solution(f: &PolyPoly, order: u32) -> PolyPoly {
    let inv = Scalar::from_rational(BigRational::new(One::one(), factorial(order)));
    f.shift(order, 0).scale(&inv)
}

/// Checks `⟨u, e⟩ = 0` against every basis vector of `F^{N,m}` that shares a
/// sector with `u`; other basis vectors are orthogonal by the selection rule.
pub fn is_orthogonal_to_kernel(u: &PolyPoly, order: u32) -> Result<bool> {
    for (d, part) in sector_decompose(u) {
        for e in basis_in_sector(order, d)? {
            if !inner(&part, &e.vector).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn solve_min_norm(f: &PolyPoly, order: u32) -> Result<SolutionReport> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    f.require_analytic()?;
    let particular = particular_solution(f, order);
    let u = &particular - &project_f_generic(&particular, order)?;
    let residual_ok = dbar(&u, order) == *f;
    let orthogonal_ok = is_orthogonal_to_kernel(&u, order)?;
    let norm_sq = inner(&u, &u);
    Ok(SolutionReport {
        u,
        residual_ok,
        orthogonal_ok,
        norm_sq,
    })
}

/// For `trials` seeded random nonzero `h ∈ F^{N,m}`, checks
/// `‖u + h‖² > ‖u‖²` exactly at `m = 1`.
pub fn verify_minimality(report: &SolutionReport, order: u32, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = report.norm_sq.at_unit();
    for _ in 0..trials {
        let h = random_kernel_element(&mut rng, order, 10)?;
        let moved = &report.u + &h;
        if inner(&moved, &moved).at_unit() <= base {
            return Ok(false);
        }
    }
    Ok(report.accepted())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyfock::norm_sq;
    use crate::sampling::random_analytic;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        let r = solve_min_norm(&PolyPoly::zero(), 2).unwrap();
        assert!(r.u.is_zero() && r.accepted());

        let r = solve_min_norm(&PolyPoly::one(), 1).unwrap();
        assert_eq!(r.u, PolyPoly::zbar_z(1, 0));
        assert_eq!(r.norm_sq, Scalar::t_pow(-4));

        let r = solve_min_norm(&PolyPoly::zbar_z(0, 1), 1).unwrap();
        let expect = PolyPoly::zbar_z(1, 1) - PolyPoly::monomial(0, 0, Scalar::t_pow(-2));
        assert_eq!(r.u, expect);
        assert_eq!(r.norm_sq.at_unit(), q(1, 1));
        assert!(r.accepted());

        assert!(solve_min_norm(&PolyPoly::zbar_z(1, 1), 1).is_err());
        assert!(solve_min_norm(&PolyPoly::one(), 0).is_err());
    }

    #[test]
    fn minimality_for_z_squared() {
        let r = solve_min_norm(&PolyPoly::zbar_z(0, 2), 2).unwrap();
        assert!(verify_minimality(&r, 2, 100, 7).unwrap());
    }

    #[test]
    fn right_inverse_and_pythagoras() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for order in 1..=4 {
            for _ in 0..6 {
                let f = random_analytic(&mut rng, 10);
                let r = solve_min_norm(&f, order).unwrap();
                assert!(r.residual_ok && r.orthogonal_ok);
                assert_eq!(dbar(&r.u, order), f);
                let particular = particular_solution(&f, order);
                let p = project_f_generic(&particular, order).unwrap();
                assert_eq!(r.norm_sq, norm_sq(&particular) - norm_sq(&p));
            }
        }
    }

    #[test]
    fn non_minimal_solution_is_detected() {
        // z̄ + 1 also solves ∂̄u = 1 but is not orthogonal to F_m
        let mut r = solve_min_norm(&PolyPoly::one(), 1).unwrap();
        r.u = &r.u + &PolyPoly::one();
        assert!(!is_orthogonal_to_kernel(&r.u, 1).unwrap());
    }
}
