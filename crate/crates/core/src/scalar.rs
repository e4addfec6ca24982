//! Exact scalars: Laurent polynomials in `t = √m` with rational coefficients.
//!
//! Every inner product and norm in the crate lives in this ring. The Fock
//! parameter `m` stays symbolic, so a value such as `s!/mˢ` is stored as
//! `s!·t^{-2s}` and compared exactly, independently of any concrete `m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact element of `ℚ[t, t⁻¹]`, where `t² = m`.
///
/// The map is keyed by the exponent of `t` and never stores a zero
/// coefficient, so structural equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<i32, BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    /// `coeff · t^h`.
    pub fn monomial(coeff: BigRational, h: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(h, coeff);
        }
        Self { terms }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(r, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    /// `t^h`, i.e. `m^{h/2}`.
    pub fn t_pow(h: i32) -> Self {
        Self::monomial(BigRational::one(), h)
    }

    /// `m^k`.
    pub fn m_pow(k: i32) -> Self {
        Self::t_pow(2 * k)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(h, c)| (*h, c))
    }

    pub fn coeff(&self, h: i32) -> BigRational {
        self.terms.get(&h).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns `(h, c)` when `self = c·t^h` with `c ≠ 0`.
    pub fn as_unit(&self) -> Option<(i32, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(h, c)| (*h, c))
        } else {
            None
        }
    }

    /// Multiplicative inverse; only monomials are invertible in this ring.
    pub fn inv_unit(&self) -> Result<Scalar> {
        match self.as_unit() {
            Some((h, c)) => Ok(Scalar::monomial(c.recip(), -h)),
            None => Err(Error::NonUnitDivisor(self.to_string())),
        }
    }

    pub fn div_unit(&self, divisor: &Scalar) -> Result<Scalar> {
        Ok(self * &divisor.inv_unit()?)
    }

    pub fn scale(&self, r: &BigRational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(h, c)| (*h, c * r)).collect(),
        }
    }

    /// Exact value at `m = 1`.
    pub fn at_unit(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Exact value at a rational `m > 0`. Odd powers of `t` need `√m`, so
    /// `None` is returned when such a term is present and `m` is not the
    /// square of a rational.
    pub fn eval_exact(&self, m: &BigRational) -> Result<Option<BigRational>> {
        if !m.is_positive() {
            return Err(Error::NonPositiveParameter(m.to_string()));
        }
        let root = rational_sqrt(m);
        let mut acc = BigRational::zero();
        for (h, c) in &self.terms {
            let value = if h % 2 == 0 {
                pow_rational(m, h / 2)
            } else {
                match &root {
                    Some(r) => pow_rational(r, *h),
                    None => return Ok(None),
                }
            };
            acc += c * value;
        }
        Ok(Some(acc))
    }

    /// Floating-point value at a rational `m > 0`: the rounded exact value
    /// when it is rational, otherwise a floating-point evaluation.
    pub fn eval(&self, m: &BigRational) -> Result<f64> {
        match self.eval_exact(m)? {
            Some(exact) => Ok(exact.to_f64().unwrap_or(f64::NAN)),
            None => Ok(self.eval_f64(m.to_f64().unwrap_or(f64::NAN))),
        }
    }

    /// Floating-point value at `m`; the caller guarantees `m > 0`.
    pub fn eval_f64(&self, m: f64) -> f64 {
        let root = m.sqrt();
        self.terms
            .iter()
            .map(|(h, c)| {
                let factor = if h % 2 == 0 {
                    m.powi(h / 2)
                } else {
                    m.powi(h.div_euclid(2)) * root
                };
                c.to_f64().unwrap_or(f64::NAN) * factor
            })
            .fold(0.0, |acc, x| acc + x)
    }

    fn insert_add(&mut self, h: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(h) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

fn pow_rational(base: &BigRational, exp: i32) -> BigRational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), exp.unsigned_abs() as usize)
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let sqrt_exact = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(sqrt_exact(r.numer())?, sqrt_exact(r.denom())?))
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (h, c) in &rhs.terms {
            self.insert_add(*h, c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (h, c) in &rhs.terms {
            self.insert_add(*h, -c.clone());
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (h1, c1) in &self.terms {
            for (h2, c2) in &rhs.terms {
                out.insert_add(h1 + h2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(h, c)| (*h, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (h, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let abs = c.abs();
            match *h {
                0 => write!(f, "{abs}")?,
                _ if abs.is_one() => write!(f, "t^{h}")?,
                _ => write!(f, "{abs}*t^{h}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    terms: Vec<(i32, String)>,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarRepr {
            terms: self
                .terms
                .iter()
                .map(|(h, c)| (*h, rational_to_string(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let mut out = Scalar::zero();
        for (h, c) in repr.terms {
            let c = parse_rational(&c).map_err(D::Error::custom)?;
            out.insert_add(h, c);
        }
        Ok(out)
    }
}
