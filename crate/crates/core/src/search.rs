//! Exact minimum number of colors for which `K_{rows,cols}` admits a coloring
//! where every 4-cycle sees at least `q` distinct colors, by exhaustive
//! backtracking. Only meant for tiny instances.
//!
//! The quantity computed is the minimum, over such colorings, of the number
//! of colors used.

use std::time::Instant;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coloring::{build_matrix, classify, BuildError, InterpretationConfig};
use crate::grid::{Color, ColorGrid};
use crate::verifier::{classify_quadruple, verify_fast, Violation};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub rows: usize,
    pub cols: usize,
    pub q: u8,
    pub max_colors: u32,
    /// Limit on colour assignments tried across the whole search.
    pub budget: u64,
    /// Canonical color order: a new color may appear only after all smaller ones.
    pub symmetry_breaking: bool,
}

impl SearchParams {
    pub fn new(rows: usize, cols: usize, q: u8, max_colors: u32) -> Self {
        SearchParams { rows, cols, q, max_colors, budget: DEFAULT_NODE_BUDGET, symmetry_breaking: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    /// `min_colors` is exact.
    Exact,
    /// No coloring with at most `max_colors` colors exists.
    Infeasible,
    /// The node budget ran out; the minimum is unknown.
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub rows: usize,
    pub cols: usize,
    pub q: u8,
    pub max_colors: u32,
    pub min_colors: Option<u32>,
    /// Smallest color count not yet ruled out when the budget ran out.
    pub lower_bound: u32,
    pub witness: Option<ColorGrid>,
    pub nodes: u64,
    pub status: SearchStatus,
}

impl Serialize for SearchResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            rows: usize,
            cols: usize,
            q: u8,
            max_colors: u32,
            min_colors: Option<u32>,
            lower_bound: u32,
            witness: Option<Vec<Vec<Color>>>,
            nodes: u64,
            status: SearchStatus,
        }
        Wire {
            rows: self.rows,
            cols: self.cols,
            q: self.q,
            max_colors: self.max_colors,
            min_colors: self.min_colors,
            lower_bound: self.lower_bound,
            witness: self.witness.as_ref().map(ColorGrid::to_rows),
            nodes: self.nodes,
            status: self.status,
        }
        .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("both parts need at least 2 vertices (got {rows}x{cols})")]
    TooSmall { rows: usize, cols: usize },
    #[error("q must be 3 or 4 (got {0})")]
    UnsupportedQ(u8),
    #[error("max_colors {max_colors} exceeds the number of edges {edges}")]
    TooManyColors { max_colors: u32, edges: usize },
}

struct Backtracker<'a> {
    params: &'a SearchParams,
    colors: u32,
    cells: Vec<Color>,
    nodes: u64,
    out_of_budget: bool,
}

impl Backtracker<'_> {
    /// All quadruples completed by cell `(r, c)` still have `>= q` colors.
    fn consistent(&self, r: usize, c: usize) -> bool {
        let cols = self.params.cols;
        let here = self.cells[r * cols + c];
        for r0 in 0..r {
            let top = self.cells[r0 * cols + c];
            for c0 in 0..c {
                let d = classify_quadruple(self.cells[r0 * cols + c0], top, self.cells[r * cols + c0], here);
                if d < self.params.q {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&mut self, pos: usize, used: u32) -> bool {
        if pos == self.cells.len() {
            return true;
        }
        let (r, c) = (pos / self.params.cols, pos % self.params.cols);
        let top = if self.params.symmetry_breaking { self.colors.min(used + 1) } else { self.colors };
        for color in 1..=top {
            if self.nodes >= self.params.budget {
                self.out_of_budget = true;
                return false;
            }
            self.nodes += 1;
            self.cells[pos] = color;
            if self.consistent(r, c) && self.dfs(pos + 1, used.max(color)) {
                return true;
            }
            if self.out_of_budget {
                return false;
            }
        }
        self.cells[pos] = 0;
        false
    }
}

/// Tries `c = q, q+1, ..., max_colors` and returns the first feasible count
/// with the lexicographically smallest (row-major) witness for it.
pub fn min_colors_exhaustive(params: &SearchParams) -> Result<SearchResult, SearchError> {
    let SearchParams { rows, cols, q, max_colors, .. } = *params;
    if rows < 2 || cols < 2 {
        return Err(SearchError::TooSmall { rows, cols });
    }
    if !(3..=4).contains(&q) {
        return Err(SearchError::UnsupportedQ(q));
    }
    if max_colors as usize > rows * cols {
        return Err(SearchError::TooManyColors { max_colors, edges: rows * cols });
    }
    let mut nodes = 0u64;
    let result = |min_colors, lower_bound, witness, nodes, status| SearchResult {
        rows,
        cols,
        q,
        max_colors,
        min_colors,
        lower_bound,
        witness,
        nodes,
        status,
    };
    for colors in q as u32..=max_colors {
        let local = SearchParams { budget: params.budget - nodes, ..*params };
        let mut bt = Backtracker {
            params: &local,
            colors,
            cells: vec![0; rows * cols],
            nodes: 0,
            out_of_budget: false,
        };
        let found = bt.dfs(0, 0);
        nodes += bt.nodes;
        if found {
            let witness = ColorGrid::new(rows, cols, bt.cells);
            return Ok(result(Some(colors), colors, Some(witness), nodes, SearchStatus::Exact));
        }
        if bt.out_of_budget {
            return Ok(result(None, colors, None, nodes, SearchStatus::Budget));
        }
    }
    Ok(result(None, max_colors + 1, None, nodes, SearchStatus::Infeasible))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessStatus {
    Pass,
    Fail,
    Unsupported,
    CornerMismatch,
    BuildError,
}

/// Whether the construction for `n` certifies `f(K_{n,n}, C4, 3) <= n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessReport {
    pub n: usize,
    #[serde(rename = "type")]
    pub type_label: &'static str,
    pub status: WitnessStatus,
    pub colors_used: usize,
    pub violations: u64,
    pub first_violation: Option<Violation>,
    pub detail: Option<String>,
    pub elapsed_ms: f64,
}

impl WitnessReport {
    pub fn passes(&self) -> bool {
        self.status == WitnessStatus::Pass
    }
}

pub fn verify_bound_witness(n: usize, cfg: &InterpretationConfig) -> WitnessReport {
    let start = Instant::now();
    let cls = classify(n);
    let mut report = WitnessReport {
        n,
        type_label: cls.label(),
        status: WitnessStatus::Unsupported,
        colors_used: 0,
        violations: 0,
        first_violation: None,
        detail: cls.reason.map(str::to_string),
        elapsed_ms: 0.0,
    };
    if cls.is_supported() {
        match build_matrix(n, cfg) {
            Err(e) => {
                report.status = match e {
                    BuildError::CornerMismatch { .. } => WitnessStatus::CornerMismatch,
                    _ => WitnessStatus::BuildError,
                };
                report.detail = Some(e.to_string());
            }
            Ok(m) => {
                let v = verify_fast(m.grid());
                report.colors_used = v.colors_used;
                report.violations = v.violation_count;
                report.first_violation = v.violations.first().cloned();
                report.status = if v.is_bound_witness() { WitnessStatus::Pass } else { WitnessStatus::Fail };
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::verify_naive;

    fn run(rows: usize, cols: usize, q: u8, max: u32) -> SearchResult {
        min_colors_exhaustive(&SearchParams::new(rows, cols, q, max)).unwrap()
    }

    #[test]
    fn single_four_cycle_needs_three() {
        let r = run(2, 2, 3, 4);
        assert_eq!(r.min_colors, Some(3));
        assert_eq!(r.status, SearchStatus::Exact);
        assert_eq!(r.witness.unwrap().cells(), &[1, 1, 2, 3]);
    }

    #[test]
    fn two_colors_are_not_enough_for_one_cycle() {
        let r = run(2, 2, 3, 2);
        assert_eq!(r.status, SearchStatus::Infeasible);
        assert_eq!(r.min_colors, None);
        assert_eq!(r.lower_bound, 3);
    }

    #[test]
    fn rainbow_cycle_needs_four() {
        assert_eq!(run(2, 2, 4, 4).min_colors, Some(4));
    }

    #[test]
    fn three_by_three() {
        let r = run(3, 3, 3, 9);
        assert_eq!(r.min_colors, Some(3));
        assert!(verify_naive(r.witness.as_ref().unwrap()).passes());
    }

    #[test]
    fn two_by_three_is_bounded() {
        let r = run(2, 3, 3, 6);
        let c = r.min_colors.unwrap();
        assert!((3..=6).contains(&c));
    }

    #[test]
    fn budget_is_reported_not_guessed() {
        let mut p = SearchParams::new(3, 3, 3, 9);
        p.budget = 5;
        let r = min_colors_exhaustive(&p).unwrap();
        assert_eq!(r.status, SearchStatus::Budget);
        assert_eq!(r.min_colors, None);
        assert!(r.nodes <= 5);
    }

    #[test]
    fn invalid_params() {
        assert!(matches!(
            min_colors_exhaustive(&SearchParams::new(1, 3, 3, 3)),
            Err(SearchError::TooSmall { .. })
        ));
        assert!(matches!(min_colors_exhaustive(&SearchParams::new(2, 2, 2, 3)), Err(SearchError::UnsupportedQ(2))));
        assert!(matches!(
            min_colors_exhaustive(&SearchParams::new(2, 2, 3, 5)),
            Err(SearchError::TooManyColors { .. })
        ));
    }

    #[test]
    fn bound_witness_examples() {
        let cfg = InterpretationConfig::default();
        assert!(verify_bound_witness(8, &cfg).passes());
        assert!(verify_bound_witness(12, &cfg).passes());
        assert_eq!(verify_bound_witness(5, &cfg).status, WitnessStatus::Unsupported);
    }
}
