//! The invariant battery behind `verify`.
//!
//! Every sweep runs over indices strictly below `n_max`, so `n_max = 0`
//! performs no checks at all.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use midhankel::hankel::{apply_big, apply_middle_y, apply_small, norm_sq_closed, norm_sq_gram};
use midhankel::laguerre::{identity_gould, identity_vandermonde, moment_i, moment_i_closed};
use midhankel::oracle::{quad_inner, quad_moment, radial_degree, rule_for_degree, QuadRule};
use midhankel::polyfock::{basis_up_to, inner, norm_sq};
use midhankel::projection::{project_f_generic, project_monomial_f};
use midhankel::sampling::random_analytic;
use midhankel::{PolyPoly, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::CliError;

const REL_TOL: f64 = 1e-10;
const ZERO_TOL: f64 = 1e-12;

/// Source of exact moments `I_{a,b,c}` that the battery checks against.
pub trait MomentTable {
    fn moment(&self, a: u32, b: u32, c: u32) -> BigInt;
}

/// The exact moments.
pub struct ExactMoments;

impl MomentTable for ExactMoments {
    fn moment(&self, a: u32, b: u32, c: u32) -> BigInt {
        moment_i(a, b, c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CategoryResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CategoryResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            self.first_failure.get_or_insert_with(describe);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatteryReport {
    pub categories: Vec<CategoryResult>,
    pub total_checks: usize,
    pub total_failures: usize,
    pub passed: bool,
    pub warnings: Vec<String>,
}

pub fn run_battery(cfg: &RunConfig, table: &dyn MomentTable) -> Result<BatteryReport, CliError> {
    let bound = cfg.n_max;
    let mut rules = RuleCache::default();
    let categories = vec![
        identities(bound, table),
        projection_two_path(bound, cfg.order)?,
        orthonormality(bound, cfg.order)?,
        norm_routes(bound, cfg.order)?,
        norm_chain(bound, cfg.order, &cfg.m, cfg.seed)?,
        oracle_agreement(bound, cfg.order, &cfg.m, table, &mut rules)?,
    ];
    let total_checks = categories.iter().map(|c| c.checks).sum();
    let total_failures = categories.iter().map(|c| c.failures).sum();
    let mut warnings = Vec::new();
    if total_checks == 0 {
        warnings.push(format!("empty sweep (n_max = {bound}): no checks were run"));
    }
    Ok(BatteryReport {
        categories,
        total_checks,
        total_failures,
        passed: total_failures == 0,
        warnings,
    })
}

#[derive(Default)]
struct RuleCache(HashMap<u32, QuadRule>);

impl RuleCache {
    fn for_degree(&mut self, degree: u32) -> Result<&QuadRule, CliError> {
        match self.0.entry(degree) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(rule_for_degree(degree)?)),
        }
    }
}

fn identities(bound: u32, table: &dyn MomentTable) -> CategoryResult {
    let mut out = CategoryResult::new("identities");
    for r in 0..bound {
        for n in 0..bound {
            for s in 0..bound {
                out.check(identity_gould(r, n, s), || format!("gould r={r} n={n} s={s}"));
            }
        }
    }
    for n in 0..bound {
        for s in 0..bound {
            out.check(identity_vandermonde(n, s), || format!("vandermonde n={n} s={s}"));
        }
    }
    for n in 0..bound {
        for s in 0..=n {
            for r in 0..bound {
                let ok = moment_i_closed(n, r, s).is_ok_and(|v| v == table.moment(n, r, n - s));
                out.check(ok, || format!("closed moment n={n} r={r} s={s}"));
            }
        }
    }
    out
}

fn projection_two_path(bound: u32, max_order: u32) -> Result<CategoryResult, CliError> {
    let mut out = CategoryResult::new("projection_two_path");
    for order in 1..=max_order {
        for s in 0..bound {
            for n in 0..bound {
                let closed = project_monomial_f(s, n, order)?;
                let generic = project_f_generic(&PolyPoly::zbar_z(s, n), order)?;
                out.check(closed == generic, || format!("s={s} n={n} N={order}"));
            }
        }
    }
    Ok(out)
}

/// Exact orthonormality of the `F^{N,m}` basis with indices below the bound.
fn orthonormality(bound: u32, max_order: u32) -> Result<CategoryResult, CliError> {
    let mut out = CategoryResult::new("orthonormality");
    if bound == 0 {
        return Ok(out);
    }
    for order in 1..=max_order {
        let basis = basis_up_to(order, bound - 1)?;
        for x in &basis {
            for y in &basis {
                let value = inner(&x.vector, &y.vector);
                let ok = if x.kind == y.kind {
                    &value * &x.normalization_sq == Scalar::one()
                } else {
                    value.is_zero()
                };
                out.check(ok, || format!("N={order} {:?} {:?}", x.kind, y.kind));
            }
        }
    }
    Ok(out)
}

fn norm_routes(bound: u32, max_order: u32) -> Result<CategoryResult, CliError> {
    let mut out = CategoryResult::new("norm_routes");
    for order in 1..=max_order {
        for s in 0..bound {
            for n in 0..bound {
                let ok = norm_sq_closed(s, order, n)? == norm_sq_gram(s, order, n)?;
                out.check(ok, || format!("s={s} N={order} n={n}"));
            }
        }
    }
    Ok(out)
}

/// Exact value of a norm at `m`; norms only carry even powers of `√m`.
fn norm_at(f: &PolyPoly, m: &BigRational) -> Result<BigRational, CliError> {
    norm_sq(f)
        .eval_exact(m)?
        .ok_or_else(|| CliError::Output(format!("norm of {f} is irrational at m = {m}")))
}

/// `‖hf‖² ≤ ‖H^{Y_N}f‖² ≤ ‖Hf‖²` and nesting in `N`, on `bound` seeded pairs.
fn norm_chain(
    bound: u32,
    max_order: u32,
    m: &BigRational,
    seed: u64,
) -> Result<CategoryResult, CliError> {
    let mut out = CategoryResult::new("norm_chain");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for pair in 0..bound {
        let g = random_analytic(&mut rng, 5);
        let f = random_analytic(&mut rng, 5);
        let small = norm_at(&apply_small(&g, &f)?, m)?;
        let big = norm_at(&apply_big(&g, &f)?, m)?;
        let mut middle = Vec::new();
        for order in 1..=max_order + 1 {
            middle.push(norm_at(&apply_middle_y(&g, order, &f)?, m)?);
        }
        for (i, pair_of) in middle.windows(2).enumerate() {
            let order = i + 1;
            let (mid, next) = (&pair_of[0], &pair_of[1]);
            out.check(small <= *mid && *mid <= big, || {
                format!("pair {pair} N={order}: chain {small} <= {mid} <= {big}")
            });
            out.check(next <= mid, || format!("pair {pair} N={order}: nesting"));
        }
    }
    Ok(out)
}

fn close(got: f64, exact: f64, exact_is_zero: bool) -> bool {
    if exact_is_zero {
        got.abs() <= ZERO_TOL
    } else {
        (got - exact).abs() <= REL_TOL * exact.abs()
    }
}

fn oracle_agreement(
    bound: u32,
    max_order: u32,
    m: &BigRational,
    table: &dyn MomentTable,
    rules: &mut RuleCache,
) -> Result<CategoryResult, CliError> {
    let mut out = CategoryResult::new("oracle_agreement");
    for a in 0..bound {
        for b in 0..bound {
            for c in 0..bound {
                let exact = table.moment(a, b, c);
                let got = quad_moment(a, b, c, rules.for_degree(a + b)?)?;
                let value = exact.to_f64().unwrap_or(f64::NAN);
                out.check(close(got, value, exact.is_zero()), || {
                    format!("moment ({a},{b},{c}): quadrature {got:e} vs {exact}")
                });
            }
        }
    }
    if bound == 0 {
        return Ok(out);
    }
    for order in 1..=max_order {
        let basis = basis_up_to(order, bound - 1)?;
        for x in &basis {
            for y in &basis {
                let exact = inner(&x.vector, &y.vector);
                let rule = rules.for_degree(radial_degree(&x.vector, &y.vector))?;
                let got = quad_inner(&x.vector, &y.vector, m, rule)?;
                let value = exact.eval(m)?;
                out.check(close(got, value, exact.is_zero()), || {
                    format!("N={order} {:?} {:?}: quadrature {got:e} vs {value:e}", x.kind, y.kind)
                });
            }
        }
    }
    Ok(out)
}
