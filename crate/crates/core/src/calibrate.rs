//! Chooses among the documented interpretation variants by building and
//! exhaustively verifying every requested order under each of them.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{build_matrix, classify, InterpretationConfig};
use crate::verifier::{verify_fast_with, VerifyOptions, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    Pass { colors_used: usize },
    Fail { colors_used: usize, violations: u64, first: Violation },
    BuildError { reason: String },
}

impl Outcome {
    pub fn passes(&self) -> bool {
        matches!(self, Outcome::Pass { .. })
    }
}

/// Builds `n` under `cfg` and verifies it with the fast verifier.
pub fn evaluate(n: usize, cfg: &InterpretationConfig) -> Outcome {
    match build_matrix(n, cfg) {
        Err(e) => Outcome::BuildError { reason: e.to_string() },
        Ok(m) => {
            let report = verify_fast_with(m.grid(), &VerifyOptions { max_stored: 1 });
            if report.passes() && report.colors_used <= n {
                Outcome::Pass { colors_used: report.colors_used }
            } else if let Some(first) = report.violations.first() {
                Outcome::Fail { colors_used: report.colors_used, violations: report.violation_count, first: first.clone() }
            } else {
                Outcome::BuildError { reason: format!("uses {} colors, more than n={n}", report.colors_used) }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantOutcome {
    pub variant: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

/// The verdict for one order under the chosen config, plus what every
/// other variant did with it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NFinding {
    pub n: usize,
    #[serde(rename = "type")]
    pub type_label: &'static str,
    pub exceptional: bool,
    /// Outcome under the chosen config.
    pub chosen: Outcome,
    /// True when some variant in the grid passes this `n`.
    pub any_variant_passes: bool,
    pub variants: Vec<VariantOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CalibrationReport {
    pub chosen: String,
    pub passing: usize,
    pub total: usize,
    pub findings: Vec<NFinding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CalibrateError {
    #[error("calibration needs at least one n")]
    Empty,
    #[error("n={0} has no construction")]
    Unsupported(usize),
}

/// Runs every variant of [`InterpretationConfig::variant_grid`] over
/// `n_list` and returns the variant passing the most orders (the earliest in
/// grid order on ties, so the default wins unless beaten).
pub fn calibrate_interpretation(
    n_list: &[usize],
) -> Result<(InterpretationConfig, CalibrationReport), CalibrateError> {
    if n_list.is_empty() {
        return Err(CalibrateError::Empty);
    }
    if let Some(&bad) = n_list.iter().find(|&&n| !classify(n).is_supported()) {
        return Err(CalibrateError::Unsupported(bad));
    }
    let grid = InterpretationConfig::variant_grid();
    // outcomes[v][idx] for variant v and n_list[idx]
    let outcomes: Vec<Vec<Outcome>> =
        grid.iter().map(|cfg| n_list.iter().map(|&n| evaluate(n, cfg)).collect()).collect();

    let mut best = 0;
    let mut best_score = 0;
    for (v, row) in outcomes.iter().enumerate() {
        let score = row.iter().filter(|o| o.passes()).count();
        if score > best_score {
            best = v;
            best_score = score;
        }
    }

    let findings = n_list
        .iter()
        .enumerate()
        .map(|(idx, &n)| {
            let cls = classify(n);
            let variants: Vec<VariantOutcome> = grid
                .iter()
                .zip(&outcomes)
                .map(|(cfg, row)| VariantOutcome { variant: cfg.name(), outcome: row[idx].clone() })
                .collect();
            NFinding {
                n,
                type_label: cls.label(),
                exceptional: cls.is_exceptional(),
                chosen: outcomes[best][idx].clone(),
                any_variant_passes: variants.iter().any(|v| v.outcome.passes()),
                variants,
            }
        })
        .collect();

    let chosen = grid[best].clone();
    let report = CalibrationReport { chosen: chosen.name(), passing: best_score, total: n_list.len(), findings };
    Ok((chosen, report))
}
