//! Big, small and middle Hankel operators on the Fock space, the operator
//! `H̃^N_ḡ = (I - P_{F^{N,m}})(ḡ ·)`, the closed-form norms `‖H̃^N_{z̄ˢ} eₙ‖²`
//! and the boundedness classifier for polynomial symbols.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, factorial};
use crate::error::{Error, Result};
use crate::polyfock::{inner, mul_conj_symbol, BasisElement, BasisKind, PolyPoly};
use crate::projection::{project_conj_f0, project_corrector, project_f_generic, project_s};
use crate::scalar::Scalar;

fn symbol_product(g: &PolyPoly, f: &PolyPoly) -> Result<PolyPoly> {
    f.require_analytic()?;
    mul_conj_symbol(f, g)
}

/// `H̃^N_ḡ f = (I - P_{F^{N,m}})(ḡ f)`.
pub fn apply_tilde(g: &PolyPoly, order: u32, f: &PolyPoly) -> Result<PolyPoly> {
    let gf = symbol_product(g, f)?;
    let p = project_f_generic(&gf, order)?;
    Ok(&gf - &p)
}

/// Middle Hankel operator `H^{Y_N}_ḡ f = (I - P_{S^{N,m}})(ḡ f)`.
pub fn apply_middle_y(g: &PolyPoly, order: u32, f: &PolyPoly) -> Result<PolyPoly> {
    let gf = symbol_product(g, f)?;
    let p = project_s(&gf, order)?;
    Ok(&gf - &p)
}

/// Small Hankel operator `h_ḡ f = Q(ḡ f)`.
pub fn apply_small(g: &PolyPoly, f: &PolyPoly) -> Result<PolyPoly> {
    project_conj_f0(&symbol_product(g, f)?)
}

/// Big Hankel operator `H_ḡ f = (I - P)(ḡ f)`, i.e. `H̃^1_ḡ`.
pub fn apply_big(g: &PolyPoly, f: &PolyPoly) -> Result<PolyPoly> {
    apply_tilde(g, 1, f)
}

/// `H^{Y_N}_ḡ f - H̃^N_ḡ f` computed directly as the corrector projection of `ḡ f`.
pub fn finite_rank_difference(g: &PolyPoly, order: u32, f: &PolyPoly) -> Result<PolyPoly> {
    project_corrector(&symbol_product(g, f)?, order)
}

fn check_order(order: u32) -> Result<()> {
    if order == 0 {
        Err(Error::ZeroOrder)
    } else {
        Ok(())
    }
}

/// `‖H̃^N_{z̄ˢ} eₙ‖²` from the binomial closed form
/// `(s!/mˢ)·{binom(n+s, s) - Σ_{r<N} binom(n, s-r) binom(s, r)}`.
pub fn norm_sq_closed(s: u32, order: u32, n: u32) -> Result<Scalar> {
    check_order(order)?;
    let (s64, n64) = (i64::from(s), i64::from(n));
    let tail: BigInt = (0..i64::from(order))
        .map(|r| binomial(n64, s64 - r) * binomial(s64, r))
        .sum();
    let bracket = binomial(n64 + s64, s64) - tail;
    Ok(Scalar::monomial(
        BigRational::from_integer(factorial(s) * bracket),
        -2 * s as i32,
    ))
}

/// `‖H̃^N_{z̄ˢ} eₙ‖²` from the Gram route: apply the operator to `zⁿ`, take the
/// inner product, then multiply by the squared normalization `m^{n+1}/n!` of `eₙ`.
pub fn norm_sq_gram(s: u32, order: u32, n: u32) -> Result<Scalar> {
    let en = BasisElement::new(BasisKind::Standard { n }, 1)?;
    let image = apply_tilde(&PolyPoly::zbar_z(0, s), order, &en.vector)?;
    Ok(&inner(&image, &image) * &en.normalization_sq)
}

/// `n ↦ ‖H̃^N_{z̄ˢ} eₙ‖²` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormSequence {
    pub s: u32,
    pub order: u32,
    pub values: Vec<Scalar>,
    /// Whether `values` came from the closed form (the Gram route was always
    /// computed alongside and matched).
    pub closed_form_used: bool,
}

impl NormSequence {
    pub fn n_max(&self) -> Option<u32> {
        self.values.len().checked_sub(1).map(|n| n as u32)
    }

    /// Largest value at a concrete `m`.
    pub fn observed_sup(&self, m: &BigRational) -> Result<Option<f64>> {
        let mut best: Option<f64> = None;
        for v in &self.values {
            let x = v.eval(m)?;
            best = Some(best.map_or(x, |b: f64| b.max(x)));
        }
        Ok(best)
    }
}

/// Both routes for every `n`, asserted equal.
pub fn norm_sq_sequence(s: u32, order: u32, n_max: u32) -> Result<NormSequence> {
    check_order(order)?;
    let mut values = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let closed = norm_sq_closed(s, order, n)?;
        let gram = norm_sq_gram(s, order, n)?;
        if closed != gram {
            return Err(Error::PathMismatch(format!(
                "norm s={s} N={order} n={n}: closed {closed} vs gram {gram}"
            )));
        }
        values.push(closed);
    }
    Ok(NormSequence {
        s,
        order,
        values,
        closed_form_used: true,
    })
}

/// `⟨H̃^N_{z̄ˢ} zᵖ, H̃^N_{z̄ˢ} zⁿ⟩` for `p ≠ n`.
///
/// The normalized value `⟨H̃eₚ, H̃eₙ⟩` differs by the positive factor
/// `√(m^{p+1}/p! · m^{n+1}/n!)`, so the two vanish together.
pub fn cross_orthogonality(s: u32, order: u32, p: u32, n: u32) -> Result<Scalar> {
    if p == n {
        return Err(Error::Precondition(format!("cross term needs p != n, got {p}")));
    }
    let g = PolyPoly::zbar_z(0, s);
    let hp = apply_tilde(&g, order, &PolyPoly::zbar_z(0, p))?;
    let hn = apply_tilde(&g, order, &PolyPoly::zbar_z(0, n))?;
    Ok(inner(&hp, &hn))
}

/// Finite-difference degree of a norm sequence on its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Growth {
    /// Every value on the tail is zero.
    ZeroSequence,
    Degree(u32),
}

/// Exact finite-difference degree of `n ↦ value(n)` at `m = 1` over `n ≥ s`.
///
/// Requires `n_max ≥ s + max(s - N, 0) + 2`, so that at least two entries of
/// the decisive difference row are seen.
pub fn growth_degree(seq: &NormSequence) -> Result<Growth> {
    let excess = seq.s.saturating_sub(seq.order);
    let needed = seq.s + excess + 2;
    let have = seq.n_max().unwrap_or(0);
    if seq.values.is_empty() || have < needed {
        return Err(Error::InsufficientTerms { needed, have });
    }
    let mut row: Vec<BigRational> = seq.values[seq.s as usize..]
        .iter()
        .map(Scalar::at_unit)
        .collect();
    if row.iter().all(Zero::is_zero) {
        return Ok(Growth::ZeroSequence);
    }
    let mut degree = 0;
    loop {
        let next: Vec<BigRational> = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        if next.iter().all(Zero::is_zero) {
            return Ok(Growth::Degree(degree));
        }
        if next.len() < 2 {
            return Err(Error::InsufficientTerms { needed: needed + 1, have });
        }
        row = next;
        degree += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Tilde,
    MiddleY,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Zero,
    /// Finite rank and nonzero; only reachable for the middle operator.
    Compact,
    BoundedNoncompact,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub operator_kind: OperatorKind,
    /// `None` for the zero symbol.
    pub symbol_degree: Option<u32>,
    pub order: u32,
    pub verdict: Verdict,
    pub compact: bool,
    /// Growth of `‖H̃^N_{z̄ˢ} eₙ‖²` for the leading monomial `zˢ` of `g`.
    pub evidence: Growth,
}

/// Boundedness and compactness of `H̃^N_ḡ` or `H^{Y_N}_ḡ` for an analytic
/// polynomial symbol `g`, decided by its degree against `N`.
pub fn classify(g: &PolyPoly, order: u32, kind: OperatorKind) -> Result<Classification> {
    check_order(order)?;
    g.require_analytic()?;
    let degree = g.holomorphic_degree();
    let s = degree.unwrap_or(0);
    let evidence = if degree.is_none() {
        Growth::ZeroSequence
    } else {
        let n_max = s + s.saturating_sub(order) + 2;
        growth_degree(&norm_sq_sequence(s, order, n_max)?)?
    };
    let verdict = match (degree, kind) {
        (None, _) => Verdict::Zero,
        (Some(d), _) if d > order => Verdict::Unbounded,
        (Some(d), _) if d == order => Verdict::BoundedNoncompact,
        (Some(_), OperatorKind::Tilde) => Verdict::Zero,
        // constants multiply analytic f into F_m ⊂ S^{N,m}
        (Some(0), OperatorKind::MiddleY) => Verdict::Zero,
        (Some(_), OperatorKind::MiddleY) => Verdict::Compact,
    };
    Ok(Classification {
        operator_kind: kind,
        symbol_degree: degree,
        order,
        verdict,
        compact: matches!(verdict, Verdict::Zero | Verdict::Compact),
        evidence,
    })
}

/// Running maximum of `‖H̃eₖ‖²` over `k ≤ n` at `m = 1`: the squared operator
/// norm on `span{e₀..eₙ}` given the diagonal structure.
pub fn running_max_at_unit(seq: &NormSequence) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = Vec::with_capacity(seq.values.len());
    for v in &seq.values {
        let x = v.at_unit();
        let next = match out.last() {
            Some(prev) if *prev > x => prev.clone(),
            _ => x,
        };
        out.push(next);
    }
    out
}
