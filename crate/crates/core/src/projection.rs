//! Orthogonal projections of polyanalytic polynomials onto `F^{N,m}`,
//! `S^{N,m}`, `conj(F⁰_m)` and the finite-rank corrector span.
//!
//! Everything is sectorwise: a monomial of sector `d` meets at most `N` basis
//! vectors, so no projection is ever truncated.

use num_rational::BigRational;
use num_traits::Zero;

use crate::combinat::factorial_ratio;
use crate::error::{Error, Result};
use crate::laguerre::{moment_i, LaguerrePoly};
use crate::polyfock::{basis_in_sector, inner, sector_decompose, PolyPoly};
use crate::scalar::Scalar;

/// `zᵖ · L(m z̄z)` for the Laguerre polynomial `lag`, or `z̄ᵖ · L(m z̄z)` when
/// `holomorphic` is false.
fn laguerre_times_power(lag: &LaguerrePoly, p: u32, holomorphic: bool) -> PolyPoly {
    PolyPoly::from_terms(lag.coeffs.iter().enumerate().map(|(l, c)| {
        let l = l as u32;
        let mono = if holomorphic { (l, l + p) } else { (l + p, l) };
        (mono, Scalar::monomial(c.clone(), 2 * l as i32))
    }))
}

/// `P_{F^{N,m}}(z̄ˢ zⁿ)` from the three-branch closed form with the moments
/// `I_{a,b,c}`.
pub fn project_monomial_f(s: u32, n: u32, order: u32) -> Result<PolyPoly> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut out = PolyPoly::zero();
    if n >= s {
        let alpha = n - s;
        let m_factor = Scalar::m_pow(-(s as i32));
        for r in 0..order {
            let weight = BigRational::new(moment_i(n, r, alpha), factorial_ratio(r + alpha, r));
            let lag = LaguerrePoly::new(r, alpha);
            out.add_scaled(
                &laguerre_times_power(&lag, alpha, true),
                &m_factor.scale(&weight),
            );
        }
    } else if s - n < order {
        let alpha = s - n;
        let m_factor = Scalar::m_pow(-(n as i32));
        for j in 0..(order + n - s) {
            let weight = BigRational::new(moment_i(s, j, alpha), factorial_ratio(j + alpha, j));
            let lag = LaguerrePoly::new(j, alpha);
            out.add_scaled(
                &laguerre_times_power(&lag, alpha, false),
                &m_factor.scale(&weight),
            );
        }
    }
    Ok(out)
}

/// `P_{F^{N,m}} f` by expansion in the orthonormal basis, one sector at a time.
pub fn project_f_generic(f: &PolyPoly, order: u32) -> Result<PolyPoly> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut out = PolyPoly::zero();
    for (d, part) in sector_decompose(f) {
        for e in basis_in_sector(order, d)? {
            let c = e.projection_coeff(&part);
            out.add_scaled(&e.vector, &c);
        }
    }
    Ok(out)
}

/// Pairwise-orthogonal (unnormalized) vectors with their exact squared norms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrthogonalSet {
    pub vectors: Vec<PolyPoly>,
    pub norms_sq: Vec<Scalar>,
}

impl OrthogonalSet {
    /// Classical Gram–Schmidt in input order, exact. Every squared norm met
    /// along the way must be a monomial in `t`, which holds for any span of
    /// same-sector monomials.
    pub fn gram_schmidt(inputs: impl IntoIterator<Item = PolyPoly>) -> Result<Self> {
        let mut set = Self::default();
        for w in inputs {
            let mut u = w.clone();
            for (v, nsq) in set.vectors.iter().zip(&set.norms_sq) {
                let c = inner(&w, v).div_unit(nsq)?;
                u.add_scaled(v, &-c);
            }
            if u.is_zero() {
                continue;
            }
            let nsq = inner(&u, &u);
            // fail early rather than on first use
            nsq.inv_unit()?;
            set.vectors.push(u);
            set.norms_sq.push(nsq);
        }
        Ok(set)
    }

    pub fn project(&self, f: &PolyPoly) -> Result<PolyPoly> {
        let mut out = PolyPoly::zero();
        for (v, nsq) in self.vectors.iter().zip(&self.norms_sq) {
            let c = inner(f, v).div_unit(nsq)?;
            out.add_scaled(v, &c);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Orthogonal basis of the sector-`d` part of `S^{N,m}`,
/// `span{z̄ʲ z^{j+d} : 0 ≤ j ≤ N-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorBasisS {
    pub order: u32,
    pub sector: u32,
    pub basis: OrthogonalSet,
}

pub fn build_sector_basis_s(order: u32, d: i64) -> Result<SectorBasisS> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if d < 0 {
        return Err(Error::NegativeSector(d));
    }
    let d = d as u32;
    let basis = OrthogonalSet::gram_schmidt((0..order).map(|j| PolyPoly::zbar_z(j, j + d)))?;
    Ok(SectorBasisS {
        order,
        sector: d,
        basis,
    })
}

/// `P_{S^{N,m}} f`; negative sectors of `f` are annihilated.
pub fn project_s(f: &PolyPoly, order: u32) -> Result<PolyPoly> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut out = PolyPoly::zero();
    for (d, part) in sector_decompose(f) {
        if d < 0 {
            continue;
        }
        let basis = build_sector_basis_s(order, d)?;
        out = out + basis.basis.project(&part)?;
    }
    Ok(out)
}

/// Projection onto `conj(F⁰_m) = closure of span{z̄ᵏ : k ≥ 1}`.
pub fn project_conj_f0(f: &PolyPoly) -> Result<PolyPoly> {
    let mut out = PolyPoly::zero();
    for (d, part) in sector_decompose(f) {
        if d >= 0 {
            continue;
        }
        let target = PolyPoly::zbar_z(d.unsigned_abs() as u32, 0);
        let c = inner(&part, &target).div_unit(&inner(&target, &target))?;
        out.add_scaled(&target, &c);
    }
    Ok(out)
}

/// Orthogonal basis of `span{z̄ʲ zᵏ : 0 ≤ k < j ≤ N-1}`, sector by sector.
pub fn corrector_basis(order: u32) -> Result<Vec<(i64, OrthogonalSet)>> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    (1..order)
        .map(|k_gap| {
            let d = -i64::from(k_gap);
            let set = OrthogonalSet::gram_schmidt(
                (k_gap..order).map(|j| PolyPoly::zbar_z(j, j - k_gap)),
            )?;
            Ok((d, set))
        })
        .collect()
}

/// Projection onto the corrector span `span{z̄ʲ zᵏ : 0 ≤ k < j ≤ N-1}`,
/// of dimension `N(N-1)/2`.
pub fn project_corrector(f: &PolyPoly, order: u32) -> Result<PolyPoly> {
    let bases = corrector_basis(order)?;
    let parts = sector_decompose(f);
    let mut out = PolyPoly::zero();
    for (d, set) in &bases {
        if let Some(part) = parts.get(d) {
            out = out + set.project(part)?;
        }
    }
    Ok(out)
}

/// Rank of the Gram matrix `⟨vᵢ, vⱼ⟩` evaluated exactly at `m = 1`.
pub fn gram_rank_at_unit(vectors: &[PolyPoly]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|a| vectors.iter().map(|b| inner(a, b).at_unit()).collect())
        .collect();
    rational_rank(&mut rows)
}

/// Row-echelon rank over `ℚ`.
pub fn rational_rank(rows: &mut [Vec<BigRational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// `N(N-1)/2`, the dimension of the corrector span.
pub fn corrector_dimension(order: u32) -> usize {
    let n = order as usize;
    n * n.saturating_sub(1) / 2
}
