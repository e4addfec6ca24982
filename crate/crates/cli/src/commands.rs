//! The five commands. Each collects its full result before rendering, so
//! output depends only on the configuration.

use midhankel::dbar::{solve_min_norm, verify_minimality};
use midhankel::hankel::{classify, norm_sq_closed, norm_sq_gram, OperatorKind};
use midhankel::polyfock::norm_sq;
use midhankel::projection::{project_f_generic, project_monomial_f};
use midhankel::scalar::rational_to_string;
use midhankel::PolyPoly;
use serde_json::json;

use crate::battery::{run_battery, MomentTable};
use crate::config::RunConfig;
use crate::table::{to_value, Cell, Rendered, Table};
use crate::{CliError, Outcome, EXIT_OK, EXIT_VERIFICATION};

pub const MINIMALITY_TRIALS: usize = 100;

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

fn finish(rendered: Rendered, cfg: &RunConfig, ok: bool, warnings: Vec<String>) -> Result<Outcome, CliError> {
    Ok(Outcome {
        stdout: rendered.render(cfg.format)?,
        warnings,
        code: status(ok),
    })
}

/// `‖H̃^N_{z̄ˢ} eₙ‖²` for `n = 0..=n_max`, by closed form and Gram route.
pub fn norms(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = cfg.require_s()?;
    let mut table = Table::new(vec!["n", "norm_sq_exact", "norm_sq_at_m", "source", "agree"]);
    let mut rows = Vec::new();
    let mut all_agree = true;
    let mut sup = f64::NEG_INFINITY;
    for n in 0..=cfg.n_max {
        let closed = norm_sq_closed(s, cfg.order, n)?;
        let agree = closed == norm_sq_gram(s, cfg.order, n)?;
        let at_m = closed.eval(&cfg.m)?;
        all_agree &= agree;
        sup = sup.max(at_m);
        let exact = to_value(&closed)?;
        table.push(vec![
            Cell::Int(n.into()),
            Cell::Exact(exact.clone()),
            Cell::Float(at_m),
            Cell::Text("closed".into()),
            Cell::Bool(agree),
        ]);
        rows.push(json!({
            "n": n,
            "norm_sq_exact": exact,
            "norm_sq_at_m": at_m,
            "source": "closed",
            "agree": agree,
        }));
    }
    let document = json!({
        "command": "norms",
        "s": s,
        "N": cfg.order,
        "m": rational_to_string(&cfg.m),
        "rows": rows,
        "observed_sup": sup,
        "all_agree": all_agree,
    });
    finish(Rendered { table, document }, cfg, all_agree, Vec::new())
}

/// Verdicts for both operator kinds with growth evidence.
pub fn classify_symbol(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let g = cfg.require_symbol()?;
    let mut table = Table::new(vec!["operator_kind", "symbol_degree", "N", "verdict", "compact", "evidence"]);
    let mut records = Vec::new();
    for kind in [OperatorKind::Tilde, OperatorKind::MiddleY] {
        let c = classify(g, cfg.order, kind)?;
        let record = to_value(&c)?;
        table.push(vec![
            Cell::Text(record["operator_kind"].as_str().unwrap_or_default().into()),
            Cell::Text(c.symbol_degree.map_or_else(|| "none".into(), |d| d.to_string())),
            Cell::Int(c.order.into()),
            Cell::Text(record["verdict"].as_str().unwrap_or_default().into()),
            Cell::Bool(c.compact),
            Cell::Exact(record["evidence"].clone()),
        ]);
        records.push(record);
    }
    let document = json!({
        "command": "classify",
        "symbol": to_value(g)?,
        "N": cfg.order,
        "classifications": records,
    });
    finish(Rendered { table, document }, cfg, true, Vec::new())
}

/// Minimal-norm solution of `(∂̄)^N u = f`, with seeded minimality trials.
pub fn solve_dbar(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let f = match (&cfg.rhs, &cfg.symbol) {
        (Some(f), _) | (None, Some(f)) => f,
        (None, None) => return Err(CliError::Validation("--rhs or --symbol is required".into())),
    };
    let report = solve_min_norm(f, cfg.order)?;
    let minimal = verify_minimality(&report, cfg.order, MINIMALITY_TRIALS, cfg.seed)?;
    let at_m = report.norm_sq.eval(&cfg.m)?;
    let ok = report.accepted() && minimal;
    let mut table = Table::new(vec![
        "u",
        "residual_ok",
        "orthogonal_ok",
        "minimality_ok",
        "norm_sq_exact",
        "norm_sq_at_m",
    ]);
    table.push(vec![
        Cell::exact(&report.u)?,
        Cell::Bool(report.residual_ok),
        Cell::Bool(report.orthogonal_ok),
        Cell::Bool(minimal),
        Cell::exact(&report.norm_sq)?,
        Cell::Float(at_m),
    ]);
    let document = json!({
        "command": "solve-dbar",
        "N": cfg.order,
        "m": rational_to_string(&cfg.m),
        "f": to_value(f)?,
        "u": to_value(&report.u)?,
        "residual_ok": report.residual_ok,
        "orthogonal_ok": report.orthogonal_ok,
        "minimality_ok": minimal,
        "minimality_trials": MINIMALITY_TRIALS,
        "seed": cfg.seed,
        "norm_sq_exact": to_value(&report.norm_sq)?,
        "norm_sq_at_m": at_m,
    });
    finish(Rendered { table, document }, cfg, ok, Vec::new())
}

/// `P_{F^{N,m}}(z̄ˢzⁿ)` for one `n` or for `n = 0..=n_max`, both paths compared.
pub fn project(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let s = cfg.require_s()?;
    let indices: Vec<u32> = match cfg.n {
        Some(n) => vec![n],
        None => (0..=cfg.n_max).collect(),
    };
    let mut table = Table::new(vec!["n", "projection", "norm_sq_exact", "norm_sq_at_m", "agree"]);
    let mut rows = Vec::new();
    let mut all_agree = true;
    for n in indices {
        let closed = project_monomial_f(s, n, cfg.order)?;
        let agree = closed == project_f_generic(&PolyPoly::zbar_z(s, n), cfg.order)?;
        all_agree &= agree;
        let norm = norm_sq(&closed);
        let at_m = norm.eval(&cfg.m)?;
        let projection = to_value(&closed)?;
        let norm_exact = to_value(&norm)?;
        table.push(vec![
            Cell::Int(n.into()),
            Cell::Exact(projection.clone()),
            Cell::Exact(norm_exact.clone()),
            Cell::Float(at_m),
            Cell::Bool(agree),
        ]);
        rows.push(json!({
            "n": n,
            "projection": projection,
            "norm_sq_exact": norm_exact,
            "norm_sq_at_m": at_m,
            "agree": agree,
        }));
    }
    let document = json!({
        "command": "project",
        "s": s,
        "N": cfg.order,
        "m": rational_to_string(&cfg.m),
        "rows": rows,
        "all_agree": all_agree,
    });
    finish(Rendered { table, document }, cfg, all_agree, Vec::new())
}

/// Runs the invariant battery against the given moment table.
pub fn verify(cfg: &RunConfig, moments: &dyn MomentTable) -> Result<Outcome, CliError> {
    let report = run_battery(cfg, moments)?;
    let mut table = Table::new(vec!["category", "checks", "failures", "status", "first_failure"]);
    for c in &report.categories {
        table.push(vec![
            Cell::Text(c.name.into()),
            Cell::Int(c.checks as u64),
            Cell::Int(c.failures as u64),
            Cell::Text(if c.failures == 0 { "pass" } else { "fail" }.into()),
            Cell::Text(c.first_failure.clone().unwrap_or_default()),
        ]);
    }
    let document = json!({
        "command": "verify",
        "n_max": cfg.n_max,
        "N": cfg.order,
        "m": rational_to_string(&cfg.m),
        "seed": cfg.seed,
        "report": to_value(&report)?,
    });
    let warnings = report.warnings.clone();
    finish(Rendered { table, document }, cfg, report.passed, warnings)
}
