//! Run configuration: command-line flags layered over an optional JSON file.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use midhankel::{parse_rational, PolyPoly};
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Flags shared by every command. All optional so a config file can fill gaps.
#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    /// Gaussian weight parameter as `p/q` or an integer
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub m: Option<String>,
    /// Polyanalytic order N >= 1
    #[arg(long = "N", global = true)]
    pub order: Option<u32>,
    /// Symbol exponent: the operators use g = z^s
    #[arg(long, global = true)]
    pub s: Option<u32>,
    /// Single index n (project only)
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Analytic symbol coefficients "c0,c1,..."
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub symbol: Option<String>,
    /// Right-hand side coefficients for solve-dbar; defaults to --symbol
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub rhs: Option<String>,
    /// Upper row index, or the exclusive sweep bound for verify
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON file with any of the keys above; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Contents of a `--config` file.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub m: Option<String>,
    #[serde(rename = "N")]
    pub order: Option<u32>,
    pub s: Option<u32>,
    pub n: Option<u32>,
    pub symbol: Option<String>,
    pub rhs: Option<String>,
    pub n_max: Option<u32>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("bad config {}: {e}", path.display())))
    }
}

/// Validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub m: BigRational,
    pub order: u32,
    pub s: Option<u32>,
    pub n: Option<u32>,
    pub symbol: Option<PolyPoly>,
    pub rhs: Option<PolyPoly>,
    pub n_max: u32,
    pub format: Format,
    pub seed: u64,
}

pub const DEFAULT_N_MAX: u32 = 12;

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let m_text = flags.m.clone().or(file.m).unwrap_or_else(|| "1".into());
        let m = parse_rational(&m_text).map_err(|e| CliError::Validation(e.to_string()))?;
        if !m.is_positive() {
            return Err(CliError::Validation(format!("m must be positive, got {m_text}")));
        }
        let order = flags.order.or(file.order).unwrap_or(1);
        if order == 0 {
            return Err(CliError::Validation("N must be at least 1".into()));
        }
        let symbol = flags.symbol.clone().or(file.symbol);
        let rhs = flags.rhs.clone().or(file.rhs);
        Ok(Self {
            m,
            order,
            s: flags.s.or(file.s),
            n: flags.n.or(file.n),
            symbol: symbol.as_deref().map(parse_polynomial).transpose()?,
            rhs: rhs.as_deref().map(parse_polynomial).transpose()?,
            n_max: flags.n_max.or(file.n_max).unwrap_or(DEFAULT_N_MAX),
            format: flags.format.or(file.format).unwrap_or_default(),
            seed: flags.seed.or(file.seed).unwrap_or(0),
        })
    }

    pub fn require_s(&self) -> Result<u32, CliError> {
        self.s.ok_or_else(|| CliError::Validation("--s is required".into()))
    }

    pub fn require_symbol(&self) -> Result<&PolyPoly, CliError> {
        self.symbol
            .as_ref()
            .ok_or_else(|| CliError::Validation("--symbol is required".into()))
    }
}

/// Parses `"c0,c1,..."` into `Σ cᵢ zⁱ`.
pub fn parse_polynomial(text: &str) -> Result<PolyPoly, CliError> {
    if text.trim().is_empty() {
        return Err(CliError::Validation("empty polynomial coefficient list".into()));
    }
    let coeffs = text
        .split(',')
        .map(|c| parse_rational(c.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Validation(format!("bad polynomial {text:?}: {e}")))?;
    Ok(PolyPoly::analytic(&coeffs))
}
