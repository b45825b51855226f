//! Tags every quadruple `(i, j; l, m)` with the proof region (Step / Case)
//! it belongs to and tallies quadruples and violations per region.
//!
//! Region boundaries are data: one row per index box, bounds affine in `n`.
//! Regions marked "supplement" cover quadruples that the written case
//! analysis does not enumerate explicitly (the last column paired with an
//! earlier one when `i` or `j` hits the last row); they keep the map total.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{classify, ColoringMatrix, TypeTag, Variant};
use crate::tables::NExpr;
use crate::verifier::classify_quadruple;

/// Inclusive index box for the four indices; `i < j` and `l < m` are implied.
#[derive(Clone, Copy, Debug)]
pub struct RegionSpec {
    pub label: &'static str,
    pub i: (NExpr, NExpr),
    pub j: (NExpr, NExpr),
    pub l: (NExpr, NExpr),
    pub m: (NExpr, NExpr),
}

const fn k(c: i64) -> NExpr {
    NExpr::konst(c)
}
const fn np(c: i64) -> NExpr {
    NExpr::n_plus(c)
}
const fn hp(c: i64) -> NExpr {
    NExpr::half_plus(c)
}
const fn sixth(c: i64) -> NExpr {
    NExpr::new(1, c, 6)
}
const fn at(e: NExpr) -> (NExpr, NExpr) {
    (e, e)
}
const fn span(lo: NExpr, hi: NExpr) -> (NExpr, NExpr) {
    (lo, hi)
}
const fn region(
    label: &'static str,
    i: (NExpr, NExpr),
    j: (NExpr, NExpr),
    l: (NExpr, NExpr),
    m: (NExpr, NExpr),
) -> RegionSpec {
    RegionSpec { label, i, j, l, m }
}

const FIRST: (NExpr, NExpr) = at(k(1));
const LAST: (NExpr, NExpr) = at(np(0));
const BODY_COLS: (NExpr, NExpr) = span(k(2), np(0));
const INNER_ROWS: (NExpr, NExpr) = span(k(2), np(-1));
const UPPER: (NExpr, NExpr) = span(k(2), hp(-1));
const MIDDLE: (NExpr, NExpr) = span(hp(0), np(-2));

/// Regions whose boundaries are the same for every family.
const COMMON: &[RegionSpec] = &[
    // Step 1: cyclic body against itself and against row 1.
    region("Step 1 Case 1", span(k(2), np(-1)), span(k(2), np(-1)), BODY_COLS, BODY_COLS),
    region("Step 1 Case 2", FIRST, span(k(2), np(-1)), BODY_COLS, BODY_COLS),
    // Step 2: row 1 against the last row.
    region("Step 2 Case 2", FIRST, LAST, MIDDLE, MIDDLE),
    region("Step 2 Case 2", FIRST, LAST, UPPER, MIDDLE),
    region("Step 2 Case 4", FIRST, LAST, MIDDLE, at(np(-1))),
    region("Step 2 Case 5", FIRST, LAST, at(np(-1)), LAST),
    region("Step 2 supplement (m = n)", FIRST, LAST, span(k(2), np(-2)), LAST),
    // Step 3: body rows against the last row.
    region("Step 3 Case 2", INNER_ROWS, LAST, MIDDLE, MIDDLE),
    region("Step 3 Case 2", INNER_ROWS, LAST, UPPER, MIDDLE),
    region("Step 3 Case 4", INNER_ROWS, LAST, MIDDLE, span(np(-1), np(0))),
    region("Step 3 Case 5", INNER_ROWS, LAST, at(np(-1)), LAST),
    region("Step 3 supplement (m = n)", INNER_ROWS, LAST, UPPER, LAST),
    // Steps 4-8: the first column.
    region("Step 4 Case 1", FIRST, at(k(2)), FIRST, BODY_COLS),
    region("Step 4 Case 2", FIRST, span(k(3), hp(1)), FIRST, BODY_COLS),
    region("Step 4 Case 3", FIRST, span(hp(2), np(-1)), FIRST, BODY_COLS),
    region("Step 4 Case 4", FIRST, LAST, FIRST, BODY_COLS),
    region("Step 5 Case 1", at(k(2)), span(k(3), hp(1)), FIRST, BODY_COLS),
    region("Step 5 Case 2", at(k(2)), span(hp(2), np(-1)), FIRST, BODY_COLS),
    region("Step 5 Case 3", at(k(2)), LAST, FIRST, BODY_COLS),
    region("Step 6 Case 1", span(k(3), hp(1)), span(k(4), np(-1)), FIRST, BODY_COLS),
    region("Step 6 Case 2", span(hp(2), np(-1)), span(hp(3), np(-1)), FIRST, BODY_COLS),
    region("Step 7 Case 1", span(k(3), hp(1)), LAST, FIRST, UPPER),
    region("Step 7 Case 2", span(k(3), hp(1)), LAST, FIRST, MIDDLE),
    region("Step 7 Case 3", span(k(3), hp(1)), LAST, FIRST, at(np(-1))),
    region("Step 7 Case 4", span(k(3), hp(1)), LAST, FIRST, LAST),
    region("Step 8 Case 1", span(hp(2), np(-1)), LAST, FIRST, UPPER),
    region("Step 8 Case 2", span(hp(2), np(-1)), LAST, FIRST, MIDDLE),
    region("Step 8 Case 3", span(hp(2), np(-1)), LAST, FIRST, at(np(-1))),
    region("Step 8 Case 4", span(hp(2), np(-1)), LAST, FIRST, LAST),
];

/// Steps 2 and 3, Cases 1 and 3, split where each family's last row changes formula.
const TYPE1_SPLITS: &[RegionSpec] = &[
    region("Step 2 Case 1", FIRST, LAST, UPPER, UPPER),
    region("Step 2 Case 3", FIRST, LAST, UPPER, at(np(-1))),
    region("Step 3 Case 1", INNER_ROWS, LAST, UPPER, UPPER),
    region("Step 3 Case 3", INNER_ROWS, LAST, UPPER, at(np(-1))),
];

const TYPE2_SPLITS: &[RegionSpec] = &[
    region("Step 2 Case 1 (G2.1)", FIRST, LAST, span(k(2), hp(-2)), span(k(2), hp(-2))),
    region("Step 2 Case 1 (G2.2)", FIRST, LAST, span(k(2), hp(-2)), at(hp(-1))),
    region("Step 2 Case 3 (G2.1)", FIRST, LAST, span(k(2), hp(-2)), at(np(-1))),
    region("Step 2 Case 3 (G2.2)", FIRST, LAST, at(hp(-1)), at(np(-1))),
    region("Step 3 Case 1 (G2.1)", INNER_ROWS, LAST, span(k(2), hp(-2)), span(k(2), hp(-2))),
    region("Step 3 Case 1 (G2.2)", INNER_ROWS, LAST, span(k(2), hp(-2)), at(hp(-1))),
    region("Step 3 Case 3 (G2.1)", INNER_ROWS, LAST, span(k(2), hp(-2)), at(np(-1))),
    region("Step 3 Case 3 (G2.2)", INNER_ROWS, LAST, at(hp(-1)), at(np(-1))),
];

// Type 3: the last row switches from n-2l to n-2(l+1) after (n-4)/6.
const TYPE3_SPLITS: &[RegionSpec] = &[
    region("Step 2 Case 1 (G3.1)", FIRST, LAST, span(k(2), sixth(-4)), span(k(2), sixth(-4))),
    region("Step 2 Case 1 (G3.1)", FIRST, LAST, span(sixth(2), hp(-2)), span(sixth(2), hp(-2))),
    region("Step 2 Case 1 (G3.2)", FIRST, LAST, span(k(2), sixth(-4)), span(sixth(2), hp(-2))),
    region("Step 2 Case 1 (G3.3)", FIRST, LAST, span(k(2), sixth(-4)), at(hp(-1))),
    region("Step 2 Case 1 (G3.4)", FIRST, LAST, span(sixth(2), hp(-2)), at(hp(-1))),
    region("Step 2 Case 3 (G3.1)", FIRST, LAST, span(k(2), sixth(-4)), at(np(-1))),
    region("Step 2 Case 3 (G3.2)", FIRST, LAST, span(sixth(2), hp(-2)), at(np(-1))),
    region("Step 2 Case 3 (G3.3)", FIRST, LAST, at(hp(-1)), at(np(-1))),
    region("Step 3 Case 1 (G3.1)", INNER_ROWS, LAST, span(k(2), sixth(-4)), span(k(2), sixth(-4))),
    region("Step 3 Case 1 (G3.1)", INNER_ROWS, LAST, span(sixth(2), hp(-2)), span(sixth(2), hp(-2))),
    region("Step 3 Case 1 (G3.2)", INNER_ROWS, LAST, span(k(2), sixth(-4)), span(sixth(2), hp(-2))),
    region("Step 3 Case 1 (G3.3)", INNER_ROWS, LAST, span(k(2), sixth(-4)), at(hp(-1))),
    region("Step 3 Case 1 (G3.4)", INNER_ROWS, LAST, span(sixth(2), hp(-2)), at(hp(-1))),
    region("Step 3 Case 3 (G3.1)", INNER_ROWS, LAST, span(k(2), sixth(-4)), at(np(-1))),
    region("Step 3 Case 3 (G3.2)", INNER_ROWS, LAST, span(sixth(2), hp(-2)), at(np(-1))),
    region("Step 3 Case 3 (G3.3)", INNER_ROWS, LAST, at(hp(-1)), at(np(-1))),
];

// n = 22 moves the split to (n-10)/6 | (n-4)/6.
const TYPE3_N22_SPLITS: &[RegionSpec] = &[
    region("Step 2 Case 1 (G3.1)", FIRST, LAST, span(k(2), sixth(-10)), span(k(2), sixth(-10))),
    region("Step 2 Case 1 (G3.1)", FIRST, LAST, span(sixth(-4), hp(-2)), span(sixth(-4), hp(-2))),
    region("Step 2 Case 1 (G3.2)", FIRST, LAST, span(k(2), sixth(-10)), span(sixth(-4), hp(-2))),
    region("Step 2 Case 1 (G3.3)", FIRST, LAST, span(k(2), sixth(-10)), at(hp(-1))),
    region("Step 2 Case 1 (G3.4)", FIRST, LAST, span(sixth(-4), hp(-2)), at(hp(-1))),
    region("Step 2 Case 3 (G3.1)", FIRST, LAST, span(k(2), sixth(-10)), at(np(-1))),
    region("Step 2 Case 3 (G3.2)", FIRST, LAST, span(sixth(-4), hp(-2)), at(np(-1))),
    region("Step 2 Case 3 (G3.3)", FIRST, LAST, at(hp(-1)), at(np(-1))),
    region("Step 3 Case 1 (G3.1)", INNER_ROWS, LAST, span(k(2), sixth(-10)), span(k(2), sixth(-10))),
    region("Step 3 Case 1 (G3.1)", INNER_ROWS, LAST, span(sixth(-4), hp(-2)), span(sixth(-4), hp(-2))),
    region("Step 3 Case 1 (G3.2)", INNER_ROWS, LAST, span(k(2), sixth(-10)), span(sixth(-4), hp(-2))),
    region("Step 3 Case 1 (G3.3)", INNER_ROWS, LAST, span(k(2), sixth(-10)), at(hp(-1))),
    region("Step 3 Case 1 (G3.4)", INNER_ROWS, LAST, span(sixth(-4), hp(-2)), at(hp(-1))),
    region("Step 3 Case 3 (G3.1)", INNER_ROWS, LAST, span(k(2), sixth(-10)), at(np(-1))),
    region("Step 3 Case 3 (G3.2)", INNER_ROWS, LAST, span(sixth(-4), hp(-2)), at(np(-1))),
    region("Step 3 Case 3 (G3.3)", INNER_ROWS, LAST, at(hp(-1)), at(np(-1))),
];

/// The region table for order `n`, or `None` when `n` has no construction.
pub fn region_table(n: usize) -> Option<Vec<RegionSpec>> {
    let cls = classify(n);
    let splits = match (cls.tag, cls.variant) {
        (TypeTag::Type1, _) => TYPE1_SPLITS,
        (TypeTag::Type2, _) => TYPE2_SPLITS,
        (TypeTag::Type3, Variant::ExceptionN22) => TYPE3_N22_SPLITS,
        (TypeTag::Type3, _) => TYPE3_SPLITS,
        (TypeTag::Unsupported, _) => return None,
    };
    Some(COMMON.iter().chain(splits).copied().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionCount {
    pub label: &'static str,
    pub quadruples: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageMap {
    pub n: usize,
    /// One entry per distinct label, in table order.
    pub regions: Vec<RegionCount>,
}

impl CoverageMap {
    pub fn get(&self, label: &str) -> Option<&RegionCount> {
        self.regions.iter().find(|r| r.label == label)
    }

    pub fn total_quadruples(&self) -> u64 {
        self.regions.iter().map(|r| r.quadruples).sum()
    }

    pub fn total_violations(&self) -> u64 {
        self.regions.iter().map(|r| r.violations).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoverageError {
    #[error("n={0} has no construction and no region table")]
    Unsupported(usize),
    #[error("region bound {expr} is fractional at n={n}")]
    FractionalBound { n: usize, expr: String },
    #[error("quadruple ({i},{j};{l},{m}) matches no region")]
    RegionGap { i: usize, j: usize, l: usize, m: usize },
    #[error("quadruple ({i},{j};{l},{m}) matches both {first:?} and {second:?}")]
    RegionOverlap { i: usize, j: usize, l: usize, m: usize, first: &'static str, second: &'static str },
}

struct ResolvedRegion {
    slot: usize,
    bounds: [(i64, i64); 4],
}

impl ResolvedRegion {
    fn contains(&self, q: [i64; 4]) -> bool {
        self.bounds.iter().zip(q).all(|(&(lo, hi), x)| lo <= x && x <= hi)
    }
}

/// Tags every quadruple of `mat` with its region and counts violations.
pub fn partition_coverage(mat: &ColoringMatrix) -> Result<CoverageMap, CoverageError> {
    let n = mat.n();
    let table = region_table(n).ok_or(CoverageError::Unsupported(n))?;
    let ni = n as i64;
    let mut labels: Vec<&'static str> = Vec::new();
    let mut resolved = Vec::with_capacity(table.len());
    for spec in &table {
        let slot = match labels.iter().position(|&l| l == spec.label) {
            Some(s) => s,
            None => {
                labels.push(spec.label);
                labels.len() - 1
            }
        };
        let mut bounds = [(0, 0); 4];
        for (b, (lo, hi)) in bounds.iter_mut().zip([spec.i, spec.j, spec.l, spec.m]) {
            let ev = |e: NExpr| e.eval(ni).ok_or(CoverageError::FractionalBound { n, expr: e.to_string() });
            *b = (ev(lo)?, ev(hi)?);
        }
        resolved.push(ResolvedRegion { slot, bounds });
    }

    let mut counts: Vec<RegionCount> =
        labels.iter().map(|&label| RegionCount { label, quadruples: 0, violations: 0 }).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            for l in 1..=n {
                for m in l + 1..=n {
                    let q = [i as i64, j as i64, l as i64, m as i64];
                    let mut hit: Option<usize> = None;
                    for r in resolved.iter().filter(|r| r.contains(q)) {
                        if let Some(prev) = hit {
                            return Err(CoverageError::RegionOverlap {
                                i,
                                j,
                                l,
                                m,
                                first: labels[prev],
                                second: labels[r.slot],
                            });
                        }
                        hit = Some(r.slot);
                    }
                    let slot = hit.ok_or(CoverageError::RegionGap { i, j, l, m })?;
                    let d = classify_quadruple(mat.at(i, l), mat.at(i, m), mat.at(j, l), mat.at(j, m));
                    counts[slot].quadruples += 1;
                    if d < 3 {
                        counts[slot].violations += 1;
                    }
                }
            }
        }
    }
    Ok(CoverageMap { n, regions: counts })
}
