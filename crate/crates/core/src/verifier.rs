//! Almost-rainbow verification: every 2x2 submatrix (every 4-cycle of
//! `K_{r,c}`) must contain at least three distinct colors.
//!
//! [`verify_naive`] enumerates all quadruples directly and serves as the
//! oracle. [`verify_fast`] produces an identical report in `O(rows^2 * cols)`
//! expected time: for a fixed row pair each column reduces to its color
//! signature `{a_il, a_jl}`, and a column pair violates exactly when the
//! union of the two signatures has at most two colors.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::grid::{Color, ColorGrid};

pub const DEFAULT_MAX_STORED: usize = 1000;

/// Number of distinct values among four colors.
#[inline]
pub fn classify_quadruple(a: Color, b: Color, c: Color, d: Color) -> u8 {
    let mut count = 1;
    if b != a {
        count += 1;
    }
    if c != a && c != b {
        count += 1;
    }
    if d != a && d != b && d != c {
        count += 1;
    }
    count
}

/// A 4-cycle with at most two distinct colors. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub m: usize,
    /// `(a_il, a_im, a_jl, a_jm)`
    pub colors: [Color; 4],
    pub distinct: u8,
}

impl Violation {
    fn from_grid(grid: &ColorGrid, r1: usize, r2: usize, c1: usize, c2: usize) -> Self {
        let colors = [grid.get(r1, c1), grid.get(r1, c2), grid.get(r2, c1), grid.get(r2, c2)];
        Violation {
            i: r1 + 1,
            j: r2 + 1,
            l: c1 + 1,
            m: c2 + 1,
            colors,
            distinct: classify_quadruple(colors[0], colors[1], colors[2], colors[3]),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Violations beyond this many are counted but not stored.
    pub max_stored: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_stored: DEFAULT_MAX_STORED }
    }
}

/// Full audit of one grid. Equality and serialization ignore `elapsed`.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub rows: usize,
    pub cols: usize,
    pub colors_used: usize,
    pub checked: u64,
    /// The first `max_stored` violations in lexicographic `(i, j, l, m)` order.
    pub violations: Vec<Violation>,
    pub violation_count: u64,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn n(&self) -> usize {
        self.rows
    }

    pub fn passes(&self) -> bool {
        self.violation_count == 0
    }

    pub fn truncated(&self) -> bool {
        self.violation_count > self.violations.len() as u64
    }

    /// Zero violations with at most `n` colors certifies `f(K_{n,n}, C4, 3) <= n`.
    pub fn is_bound_witness(&self) -> bool {
        self.rows == self.cols && self.passes() && self.colors_used <= self.rows
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.colors_used == other.colors_used
            && self.checked == other.checked
            && self.violations == other.violations
            && self.violation_count == other.violation_count
    }
}

impl Eq for VerificationReport {}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            n: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            cols: Option<usize>,
            colors_used: usize,
            checked: u64,
            violations: &'a [Violation],
            violation_count: u64,
            truncated: bool,
        }
        Wire {
            n: self.rows,
            cols: (self.cols != self.rows).then_some(self.cols),
            colors_used: self.colors_used,
            checked: self.checked,
            violations: &self.violations,
            violation_count: self.violation_count,
            truncated: self.truncated(),
        }
        .serialize(s)
    }
}

fn choose2(x: usize) -> u64 {
    let x = x as u64;
    x * x.saturating_sub(1) / 2
}

/// Number of 4-cycles in `K_{rows,cols}`.
pub fn quadruple_count(rows: usize, cols: usize) -> u64 {
    choose2(rows) * choose2(cols)
}

pub fn verify_naive(grid: &ColorGrid) -> VerificationReport {
    verify_naive_with(grid, &VerifyOptions::default())
}

pub fn verify_naive_with(grid: &ColorGrid, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let (rows, cols) = (grid.rows(), grid.cols());
    let mut violations = Vec::new();
    let mut count = 0u64;
    for r1 in 0..rows {
        for r2 in r1 + 1..rows {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    let d = classify_quadruple(grid.get(r1, c1), grid.get(r1, c2), grid.get(r2, c1), grid.get(r2, c2));
                    if d < 3 {
                        count += 1;
                        if violations.len() < opts.max_stored {
                            violations.push(Violation::from_grid(grid, r1, r2, c1, c2));
                        }
                    }
                }
            }
        }
    }
    VerificationReport {
        rows,
        cols,
        colors_used: grid.colors_used(),
        checked: quadruple_count(rows, cols),
        violations,
        violation_count: count,
        elapsed: start.elapsed(),
    }
}

pub fn verify_fast(grid: &ColorGrid) -> VerificationReport {
    verify_fast_with(grid, &VerifyOptions::default())
}

/// Above this many distinct colors the pair counters fall back to a hash map.
const DENSE_PAIR_LIMIT: usize = 1024;

/// Per-row-pair counters, reset in O(1) by bumping a generation stamp.
struct SignatureCounts {
    k: usize,
    generation: u32,
    single_stamp: Vec<u32>,
    single: Vec<u32>,
    pair_stamp: Vec<u32>,
    pair: Vec<u32>,
    sparse: HashMap<(u32, u32), u32>,
    dense: bool,
}

impl SignatureCounts {
    fn new(k: usize) -> Self {
        let dense = k <= DENSE_PAIR_LIMIT;
        let pair_len = if dense { k * k } else { 0 };
        SignatureCounts {
            k,
            generation: 0,
            single_stamp: vec![0; k],
            single: vec![0; k],
            pair_stamp: vec![0; pair_len],
            pair: vec![0; pair_len],
            sparse: HashMap::new(),
            dense,
        }
    }

    fn reset(&mut self) {
        self.generation += 1;
        self.sparse.clear();
    }

    fn singles(&self, x: u32) -> u64 {
        let x = x as usize;
        if self.single_stamp[x] == self.generation {
            self.single[x] as u64
        } else {
            0
        }
    }

    fn add_single(&mut self, x: u32) {
        let x = x as usize;
        if self.single_stamp[x] != self.generation {
            self.single_stamp[x] = self.generation;
            self.single[x] = 0;
        }
        self.single[x] += 1;
    }

    /// Returns true when this is the first column with signature `{x, y}`.
    fn add_pair(&mut self, x: u32, y: u32) -> bool {
        if self.dense {
            let idx = x as usize * self.k + y as usize;
            if self.pair_stamp[idx] != self.generation {
                self.pair_stamp[idx] = self.generation;
                self.pair[idx] = 1;
                true
            } else {
                self.pair[idx] += 1;
                false
            }
        } else {
            let e = self.sparse.entry((x, y)).or_insert(0);
            *e += 1;
            *e == 1
        }
    }

    fn pairs(&self, x: u32, y: u32) -> u64 {
        if self.dense {
            self.pair[x as usize * self.k + y as usize] as u64
        } else {
            self.sparse.get(&(x, y)).copied().unwrap_or(0) as u64
        }
    }
}

/// Relabels colors to `0..k` so counters can be flat arrays.
fn densify(grid: &ColorGrid) -> (Vec<u32>, usize) {
    let mut palette: Vec<Color> = grid.cells().to_vec();
    palette.sort_unstable();
    palette.dedup();
    let index: HashMap<Color, u32> = palette.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
    (grid.cells().iter().map(|c| index[c]).collect(), palette.len())
}

pub fn verify_fast_with(grid: &ColorGrid, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let (rows, cols) = (grid.rows(), grid.cols());
    let (dense, k) = densify(grid);
    let mut counts = SignatureCounts::new(k);
    let mut distinct_pairs: Vec<(u32, u32)> = Vec::with_capacity(cols);
    let mut violations = Vec::new();
    let mut total = 0u64;

    for r1 in 0..rows {
        let top = &dense[r1 * cols..(r1 + 1) * cols];
        for r2 in r1 + 1..rows {
            let bottom = &dense[r2 * cols..(r2 + 1) * cols];
            counts.reset();
            distinct_pairs.clear();
            let mut singletons = 0usize;
            for (&a, &b) in top.iter().zip(bottom) {
                if a == b {
                    counts.add_single(a);
                    singletons += 1;
                } else {
                    let key = if a < b { (a, b) } else { (b, a) };
                    if counts.add_pair(key.0, key.1) {
                        distinct_pairs.push(key);
                    }
                }
            }
            // Any two singleton columns span at most two colors; a pair
            // column clashes with singletons of either of its colors and
            // with other columns carrying the same pair.
            let mut here = choose2(singletons);
            for &(x, y) in &distinct_pairs {
                let p = counts.pairs(x, y);
                here += p * (p - 1) / 2 + p * (counts.singles(x) + counts.singles(y));
            }
            total += here;
            if here > 0 && violations.len() < opts.max_stored {
                enumerate_row_pair(grid, top, bottom, r1, r2, k, opts.max_stored, &mut violations);
            }
        }
    }

    VerificationReport {
        rows,
        cols,
        colors_used: k,
        checked: quadruple_count(rows, cols),
        violations,
        violation_count: total,
        elapsed: start.elapsed(),
    }
}

/// Lists the violating column pairs of one row pair in `(l, m)` order,
/// stopping once `cap` violations are stored overall.
#[allow(clippy::too_many_arguments)]
fn enumerate_row_pair(
    grid: &ColorGrid,
    top: &[u32],
    bottom: &[u32],
    r1: usize,
    r2: usize,
    k: usize,
    cap: usize,
    out: &mut Vec<Violation>,
) {
    let mut singles_all: Vec<usize> = Vec::new();
    let mut singles_by_color: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut pairs_touching: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut pairs_by_key: HashMap<(u32, u32), Vec<usize>> = HashMap::new();
    for (c, (&a, &b)) in top.iter().zip(bottom).enumerate() {
        if a == b {
            singles_all.push(c);
            singles_by_color[a as usize].push(c);
        } else {
            pairs_touching[a as usize].push(c);
            pairs_touching[b as usize].push(c);
            pairs_by_key.entry((a.min(b), a.max(b))).or_default().push(c);
        }
    }
    let after = |list: &[usize], c: usize| -> Vec<usize> {
        let from = list.partition_point(|&x| x <= c);
        list[from..].to_vec()
    };
    for c1 in 0..top.len() {
        let (a, b) = (top[c1], bottom[c1]);
        let mut partners = if a == b {
            let mut p = after(&singles_all, c1);
            p.extend(after(&pairs_touching[a as usize], c1));
            p
        } else {
            let mut p = after(&singles_by_color[a as usize], c1);
            p.extend(after(&singles_by_color[b as usize], c1));
            p.extend(after(&pairs_by_key[&(a.min(b), a.max(b))], c1));
            p
        };
        partners.sort_unstable();
        for c2 in partners {
            if out.len() >= cap {
                return;
            }
            out.push(Violation::from_grid(grid, r1, r2, c1, c2));
        }
    }
}

/// Histogram of distinct-color counts over all quadruples; index `d` holds
/// the number of 2x2 submatrices with exactly `d` colors (`d` in 1..=4).
pub fn distinct_histogram(grid: &ColorGrid) -> [u64; 5] {
    let mut hist = [0u64; 5];
    let (rows, cols) = (grid.rows(), grid.cols());
    for r1 in 0..rows {
        for r2 in r1 + 1..rows {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    let d = classify_quadruple(grid.get(r1, c1), grid.get(r1, c2), grid.get(r2, c1), grid.get(r2, c2));
                    hist[d as usize] += 1;
                }
            }
        }
    }
    hist
}
