//! Polyanalytic polynomials `Σ c_{jk} z̄ʲ zᵏ` with the Gaussian inner product
//! of `L²(μ_m)`, `dμ_m = π⁻¹ e^{-m|z|²} dA`, and the orthonormal bases of the
//! polyanalytic Fock spaces `F^{N,m}`.
//!
//! The inner product only couples monomials of equal *sector* `d = k - j`:
//!
//! ```text
//! ⟨z̄ᵃzᵇ, z̄ᶜzᵈ⟩ = δ_{a+d, b+c} · (a+d)! / m^{a+d+1}
//! ```
//!
//! which makes every projection of a polynomial a finite exact sum.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinat::{factorial, factorial_ratio};
use crate::error::{Error, Result};
use crate::laguerre::LaguerrePoly;
use crate::scalar::Scalar;

/// Exponent pair `(j, k)` of `z̄ʲ zᵏ`.
pub type Monomial = (u32, u32);

/// `d = k - j`.
pub fn sector_of((j, k): Monomial) -> i64 {
    i64::from(k) - i64::from(j)
}

/// Finite sum `Σ c_{jk} z̄ʲ zᵏ` with exact [`Scalar`] coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PolyPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl PolyPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Scalar::one())
    }

    /// `c · z̄ʲ zᵏ`.
    pub fn monomial(j: u32, k: u32, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term((j, k), &c);
        out
    }

    /// `z̄ʲ zᵏ` with unit coefficient.
    pub fn zbar_z(j: u32, k: u32) -> Self {
        Self::monomial(j, k, Scalar::one())
    }

    /// Analytic polynomial `Σ cₖ zᵏ` from rational coefficients `c₀, c₁, …`.
    pub fn analytic(coeffs: &[BigRational]) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out.add_term((0, k as u32), &Scalar::from_rational(c.clone()));
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (mono, c) in terms {
            out.add_term(mono, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, j: u32, k: u32) -> Scalar {
        self.terms.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term carries a power of `z̄`.
    pub fn is_analytic(&self) -> bool {
        self.terms.keys().all(|&(j, _)| j == 0)
    }

    pub fn require_analytic(&self) -> Result<()> {
        match self.terms.keys().find(|&&(j, _)| j != 0) {
            Some(&(j, k)) => Err(Error::NotAnalytic { j, k }),
            None => Ok(()),
        }
    }

    /// Highest power of `z` in an analytic polynomial; `None` for zero.
    pub fn holomorphic_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, k)| k).max()
    }

    pub fn antiholomorphic_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(j, _)| j).max()
    }

    pub fn scale(&self, c: &Scalar) -> PolyPoly {
        let mut out = PolyPoly::zero();
        for (mono, coeff) in &self.terms {
            out.add_term(*mono, &(coeff * c));
        }
        out
    }

    /// Multiplies by the monomial `z̄ʲ zᵏ`.
    pub fn shift(&self, j: u32, k: u32) -> PolyPoly {
        PolyPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + j, b + k), c.clone()))
                .collect(),
        }
    }

    /// Value at `m = 1` of every coefficient.
    pub fn at_unit(&self) -> BTreeMap<Monomial, BigRational> {
        self.terms
            .iter()
            .map(|(m, c)| (*m, c.at_unit()))
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .collect()
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PolyPoly, c: &Scalar) {
        for (mono, coeff) in &other.terms {
            self.add_term(*mono, &(coeff * c));
        }
    }
}

impl Add<&PolyPoly> for &PolyPoly {
    type Output = PolyPoly;
    fn add(self, rhs: &PolyPoly) -> PolyPoly {
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(*mono, c);
        }
        out
    }
}

impl Sub<&PolyPoly> for &PolyPoly {
    type Output = PolyPoly;
    fn sub(self, rhs: &PolyPoly) -> PolyPoly {
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(*mono, &-c);
        }
        out
    }
}

impl Neg for &PolyPoly {
    type Output = PolyPoly;
    fn neg(self) -> PolyPoly {
        PolyPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul<&PolyPoly> for &PolyPoly {
    type Output = PolyPoly;
    fn mul(self, rhs: &PolyPoly) -> PolyPoly {
        let mut out = PolyPoly::zero();
        for (&(a, b), c1) in &self.terms {
            for (&(c, d), c2) in &rhs.terms {
                out.add_term((a + c, b + d), &(c1 * c2));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<PolyPoly> for PolyPoly {
            type Output = PolyPoly;
            fn $method(self, rhs: PolyPoly) -> PolyPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&PolyPoly> for PolyPoly {
            type Output = PolyPoly;
            fn $method(self, rhs: &PolyPoly) -> PolyPoly {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for PolyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, ((j, k), c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if *j > 0 {
                write!(f, "·z̄^{j}")?;
            }
            if *k > 0 {
                write!(f, "·z^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyPoly({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct PolyPolyRepr {
    terms: Vec<(u32, u32, Scalar)>,
}

impl Serialize for PolyPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyPolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(&(j, k), c)| (j, k, c.clone()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyPolyRepr::deserialize(deserializer)?;
        Ok(PolyPoly::from_terms(
            repr.terms.into_iter().map(|(j, k, c)| ((j, k), c)),
        ))
    }
}

/// Gaussian radial moment `∫ |z|^{2p} dμ_m = p! / m^{p+1}`.
pub fn radial_moment(p: u32) -> Scalar {
    Scalar::monomial(
        BigRational::from_integer(factorial(p)),
        -2 * (p as i32 + 1),
    )
}

/// `⟨z̄ᵃzᵇ, z̄ᶜzᵈ⟩` in `L²(μ_m)`.
pub fn monomial_inner(a: u32, b: u32, c: u32, d: u32) -> Scalar {
    if a + d != b + c {
        return Scalar::zero();
    }
    radial_moment(a + d)
}

/// Bilinear inner product; coefficients are real so no conjugation is needed
/// on them, and the monomial conjugation is carried by [`monomial_inner`].
pub fn inner(f: &PolyPoly, g: &PolyPoly) -> Scalar {
    // bucket g by sector so only matching pairs are visited
    let mut by_sector: BTreeMap<i64, Vec<(Monomial, &Scalar)>> = BTreeMap::new();
    for (mono, c) in g.terms() {
        by_sector.entry(sector_of(mono)).or_default().push((mono, c));
    }
    let mut acc = Scalar::zero();
    for ((a, b), c1) in f.terms() {
        let Some(bucket) = by_sector.get(&sector_of((a, b))) else {
            continue;
        };
        for &((c, d), c2) in bucket {
            acc += &(&(c1 * c2) * &monomial_inner(a, b, c, d));
        }
    }
    acc
}

pub fn norm_sq(f: &PolyPoly) -> Scalar {
    inner(f, f)
}

/// `ḡ · f` for an analytic symbol `g`.
pub fn mul_conj_symbol(f: &PolyPoly, g: &PolyPoly) -> Result<PolyPoly> {
    g.require_analytic()?;
    let conj_g = PolyPoly::from_terms(g.terms().map(|((_, k), c)| ((k, 0), c.clone())));
    Ok(f * &conj_g)
}

/// `(∂̄)^order f`, using `∂̄(z̄ʲzᵏ) = j z̄^{j-1} zᵏ`.
pub fn dbar(f: &PolyPoly, order: u32) -> PolyPoly {
    PolyPoly::from_terms(f.terms().filter(|((j, _), _)| *j >= order).map(|((j, k), c)| {
        let falling = BigRational::from_integer(factorial_ratio(j, j - order));
        ((j - order, k), c.scale(&falling))
    }))
}

/// Splits `f` into its sector components `f_d`, `d = k - j`.
pub fn sector_decompose(f: &PolyPoly) -> BTreeMap<i64, PolyPoly> {
    let mut out: BTreeMap<i64, PolyPoly> = BTreeMap::new();
    for (mono, c) in f.terms() {
        out.entry(sector_of(mono)).or_default().add_term(mono, c);
    }
    out
}

/// Which element of the `F^{N,m}` basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisKind {
    /// `e¹_{i,r} ∝ zⁱ L_r^i(m|z|²)`, sector `+i`.
    E1 { i: u32, r: u32 },
    /// `e²_{j,k} ∝ z̄ᵏ L_j^k(m|z|²)`, sector `-k`.
    E2 { j: u32, k: u32 },
    /// Standard Fock basis `eₙ = e¹_{n,0}`.
    Standard { n: u32 },
}

/// Orthonormal basis vector of `F^{N,m}`, stored without its square-root
/// prefactor.
///
/// The normalized element is `√normalization_sq · vector`; only the squared
/// prefactor is ever needed downstream, so everything stays exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub kind: BasisKind,
    pub order: u32,
    /// `zⁱ L_r^i(m z̄z)` or `z̄ᵏ L_j^k(m z̄z)`.
    pub vector: PolyPoly,
    /// `r!/(r+i)! · m^{i+1}` (resp. `j!/(j+k)! · m^{k+1}`).
    pub normalization_sq: Scalar,
}

impl BasisElement {
    pub fn new(kind: BasisKind, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let (lag_degree, alpha, holo) = match kind {
            BasisKind::E1 { i, r } => {
                if r >= order {
                    return Err(Error::BasisIndex(format!("e1({i},{r}) needs r <= {}", order - 1)));
                }
                (r, i, true)
            }
            BasisKind::Standard { n } => (0, n, true),
            BasisKind::E2 { j, k } => {
                if k == 0 || k >= order || j + k >= order {
                    return Err(Error::BasisIndex(format!(
                        "e2({j},{k}) needs 1 <= k <= {} and j <= N-k-1",
                        order.saturating_sub(1)
                    )));
                }
                (j, k, false)
            }
        };
        let lag = LaguerrePoly::new(lag_degree, alpha);
        let mut vector = PolyPoly::zero();
        for (l, c) in lag.coeffs.iter().enumerate() {
            let l = l as u32;
            // L(m z̄z) contributes c_l m^l z̄^l z^l
            let coeff = Scalar::monomial(c.clone(), 2 * l as i32);
            let mono = if holo { (l, l + alpha) } else { (l + alpha, l) };
            vector.add_term(mono, &coeff);
        }
        let ratio = BigRational::new(BigInt::one(), factorial_ratio(lag_degree + alpha, lag_degree));
        let normalization_sq = Scalar::monomial(ratio, 2 * (alpha as i32 + 1));
        Ok(Self {
            kind,
            order,
            vector,
            normalization_sq,
        })
    }

    /// Exact `‖vector‖²`, the inverse of [`normalization_sq`](Self::normalization_sq).
    pub fn vector_norm_sq(&self) -> Scalar {
        self.normalization_sq
            .inv_unit()
            .expect("normalization is a nonzero monomial")
    }

    pub fn sector(&self) -> i64 {
        match self.kind {
            BasisKind::E1 { i, .. } => i64::from(i),
            BasisKind::Standard { n } => i64::from(n),
            BasisKind::E2 { k, .. } => -i64::from(k),
        }
    }

    /// Coefficient of `vector` in the orthogonal projection of `f` onto this
    /// element: `⟨f, vector⟩ · normalization_sq`.
    pub fn projection_coeff(&self, f: &PolyPoly) -> Scalar {
        &inner(f, &self.vector) * &self.normalization_sq
    }
}

/// Shorthand for [`BasisElement::new`].
pub fn basis_element(kind: BasisKind, order: u32) -> Result<BasisElement> {
    BasisElement::new(kind, order)
}

/// The basis elements of `F^{N,m}` living in sector `d`: `e¹_{d,r}` for
/// `d ≥ 0`, `e²_{j,-d}` for `d < 0`. At most `N` of them.
pub fn basis_in_sector(order: u32, d: i64) -> Result<Vec<BasisElement>> {
    if order == 0 {
        return Err(Error::ZeroOrder);
    }
    if d >= 0 {
        (0..order)
            .map(|r| BasisElement::new(BasisKind::E1 { i: d as u32, r }, order))
            .collect()
    } else {
        let k = d.unsigned_abs();
        if k >= u64::from(order) {
            return Ok(Vec::new());
        }
        let k = k as u32;
        (0..order - k)
            .map(|j| BasisElement::new(BasisKind::E2 { j, k }, order))
            .collect()
    }
}

/// Every basis element of `F^{N,m}` with holomorphic sector index `i ≤ max_i`.
pub fn basis_up_to(order: u32, max_i: u32) -> Result<Vec<BasisElement>> {
    let mut out = Vec::new();
    for d in -(i64::from(order) - 1)..=i64::from(max_i) {
        out.extend(basis_in_sector(order, d)?);
    }
    Ok(out)
}
