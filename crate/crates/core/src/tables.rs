//! Piecewise definitions of the appended first column `V` and last row `U`,
//! stored as data so each branch can be audited against its written form.
//!
//! Every bound and value is an affine function of the order `n` (and, for
//! value rules, of the running index). Bounds are inclusive.

use std::fmt;

/// `(n_coef * n + offset) / den`, required to divide exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NExpr {
    pub n_coef: i64,
    pub offset: i64,
    pub den: i64,
}

impl NExpr {
    pub const fn new(n_coef: i64, offset: i64, den: i64) -> Self {
        NExpr { n_coef, offset, den }
    }

    pub const fn konst(c: i64) -> Self {
        NExpr::new(0, c, 1)
    }

    /// `n + offset`
    pub const fn n_plus(offset: i64) -> Self {
        NExpr::new(1, offset, 1)
    }

    /// `n / 2 + offset`
    pub const fn half_plus(offset: i64) -> Self {
        NExpr::new(1, 2 * offset, 2)
    }

    /// Evaluates at `n`; `None` when the division is not exact.
    pub fn eval(self, n: i64) -> Option<i64> {
        let num = self.n_coef * n + self.offset;
        (num % self.den == 0).then_some(num / self.den)
    }
}

impl fmt::Display for NExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = match (self.n_coef, self.offset) {
            (0, c) => format!("{c}"),
            (a, 0) => coef_n(a),
            (a, c) if c < 0 => format!("{}-{}", coef_n(a), -c),
            (a, c) => format!("{}+{}", coef_n(a), c),
        };
        if self.den == 1 {
            f.write_str(&num)
        } else if self.offset == 0 {
            write!(f, "{num}/{}", self.den)
        } else {
            write!(f, "({num})/{}", self.den)
        }
    }
}

fn coef_n(a: i64) -> String {
    match a {
        1 => "n".into(),
        -1 => "-n".into(),
        a => format!("{a}n"),
    }
}

/// How a branch computes its color at index `x` (row `i` for `V`, column `l` for `U`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueRule {
    /// A value depending only on `n`.
    Fixed(NExpr),
    /// `idx_coef * x + base(n)`.
    Linear { idx_coef: i64, base: NExpr },
    /// The family's special value: `Y` for Type 2, `n-9` (or its exception
    /// replacement) for Type 3.
    Pivot,
}

impl ValueRule {
    pub fn eval(self, x: i64, n: i64, pivot: Option<i64>) -> Option<i64> {
        match self {
            ValueRule::Fixed(e) => e.eval(n),
            ValueRule::Linear { idx_coef, base } => base.eval(n).map(|b| idx_coef * x + b),
            ValueRule::Pivot => pivot,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Branch {
    pub lo: NExpr,
    pub hi: NExpr,
    pub value: ValueRule,
}

impl Branch {
    const fn new(lo: NExpr, hi: NExpr, value: ValueRule) -> Self {
        Branch { lo, hi, value }
    }

    const fn at(idx: NExpr, value: ValueRule) -> Self {
        Branch { lo: idx, hi: idx, value }
    }

    /// A branch written as an index range rather than a single index.
    pub fn is_range(&self) -> bool {
        self.lo != self.hi
    }
}

/// Branch lists for the first column `V` (indexed by row) and the last row
/// `U` (indexed by column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTable {
    pub first_column: Vec<Branch>,
    pub last_row: Vec<Branch>,
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
const fn fixed(e: NExpr) -> ValueRule {
    ValueRule::Fixed(e)
}
/// `idx_coef * x + n + c`
const fn lin(idx_coef: i64, c: i64) -> ValueRule {
    ValueRule::Linear { idx_coef, base: NExpr::n_plus(c) }
}

// Type 1, n = 2 + 6k.
const TYPE1_V: &[Branch] = &[
    Branch::at(k(1), fixed(k(1))),
    Branch::at(k(2), fixed(k(3))),
    Branch::new(k(3), hp(1), fixed(np(0))),
    // 2(i-1) - n
    Branch::new(hp(2), np(-1), ValueRule::Linear { idx_coef: 2, base: NExpr::new(-1, -2, 1) }),
    Branch::at(np(0), fixed(np(-2))),
];
const TYPE1_U: &[Branch] = &[
    Branch::new(k(1), hp(-1), lin(-2, 0)),
    Branch::new(hp(0), np(-2), fixed(np(0))),
    Branch::at(np(-1), fixed(np(-1))),
    Branch::at(np(0), fixed(k(1))),
];

// Type 2, n = 6 + 6k.
const TYPE2_V: &[Branch] = &[
    Branch::at(k(1), fixed(k(1))),
    Branch::at(k(2), fixed(k(3))),
    Branch::new(k(3), hp(1), fixed(np(0))),
    Branch::at(hp(2), ValueRule::Pivot),
    // 2(i-2) - n
    Branch::new(hp(3), np(-1), ValueRule::Linear { idx_coef: 2, base: NExpr::new(-1, -4, 1) }),
    Branch::at(np(0), fixed(np(-2))),
];
const TYPE2_U: &[Branch] = &[
    Branch::at(k(1), fixed(np(-2))),
    // n - 2(l+1)
    Branch::new(k(2), hp(-2), lin(-2, -2)),
    Branch::at(hp(-1), ValueRule::Pivot),
    Branch::new(hp(0), np(-2), fixed(np(0))),
    Branch::at(np(-1), fixed(np(-1))),
    Branch::at(np(0), fixed(k(1))),
];

// n = 6: literal vectors. The corner (6,1) is shared with U.
const TYPE2_N6_V: &[Branch] = &[
    Branch::at(k(1), fixed(k(1))),
    Branch::at(k(2), fixed(k(5))),
    Branch::new(k(3), k(4), fixed(k(6))),
    Branch::at(k(5), fixed(k(4))),
    Branch::at(k(6), fixed(k(3))),
];
const TYPE2_N6_U: &[Branch] = &[
    Branch::at(k(1), fixed(k(3))),
    Branch::new(k(2), k(4), fixed(k(6))),
    Branch::at(k(5), fixed(k(5))),
    Branch::at(k(6), fixed(k(1))),
];

// Type 3, n = 4 + 6k; also used with substituted pivots for n = 10, 16.
const TYPE3_V: &[Branch] = &[
    Branch::at(k(1), fixed(k(1))),
    Branch::at(k(2), fixed(k(3))),
    Branch::new(k(3), hp(1), fixed(np(0))),
    Branch::at(hp(2), ValueRule::Pivot),
    Branch::new(hp(3), NExpr::new(5, 4, 6), ValueRule::Linear { idx_coef: 2, base: NExpr::new(-1, -4, 1) }),
    Branch::new(NExpr::new(5, 10, 6), np(-1), ValueRule::Linear { idx_coef: 2, base: NExpr::new(-1, -2, 1) }),
    Branch::at(np(0), fixed(np(-2))),
];
const TYPE3_U: &[Branch] = &[
    Branch::new(k(1), NExpr::new(1, -4, 6), lin(-2, 0)),
    Branch::new(NExpr::new(1, 2, 6), hp(-2), lin(-2, -2)),
    Branch::at(hp(-1), ValueRule::Pivot),
    Branch::new(hp(0), np(-2), fixed(np(0))),
    Branch::at(np(-1), fixed(np(-1))),
    Branch::at(np(0), fixed(k(1))),
];

// n = 22 overrides the split points of both piecewise linear stretches.
const TYPE3_N22_V: &[Branch] = &[
    Branch::at(k(1), fixed(k(1))),
    Branch::at(k(2), fixed(k(3))),
    Branch::new(k(3), hp(1), fixed(np(0))),
    Branch::at(hp(2), ValueRule::Pivot),
    Branch::new(hp(3), NExpr::new(5, -2, 6), ValueRule::Linear { idx_coef: 2, base: NExpr::new(-1, -4, 1) }),
    Branch::new(NExpr::new(5, 4, 6), np(-1), ValueRule::Linear { idx_coef: 2, base: NExpr::new(-1, -2, 1) }),
    Branch::at(np(0), fixed(np(-2))),
];
const TYPE3_N22_U: &[Branch] = &[
    Branch::new(k(1), NExpr::new(1, -10, 6), lin(-2, 0)),
    Branch::new(NExpr::new(1, -4, 6), hp(-2), lin(-2, -2)),
    Branch::at(hp(-1), ValueRule::Pivot),
    Branch::new(hp(0), np(-2), fixed(np(0))),
    Branch::at(np(-1), fixed(np(-1))),
    Branch::at(np(0), fixed(k(1))),
];

/// All construction tables used by one interpretation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchBounds {
    pub type1: BranchTable,
    pub type2: BranchTable,
    pub type2_n6: BranchTable,
    pub type3: BranchTable,
    pub type3_n22: BranchTable,
    /// Shift applied to every boundary between two adjacent range branches;
    /// `+1` hands the shared endpoint region to the earlier branch.
    pub boundary_shift: i64,
}

fn table(v: &[Branch], u: &[Branch]) -> BranchTable {
    BranchTable { first_column: v.to_vec(), last_row: u.to_vec() }
}

impl Default for BranchBounds {
    fn default() -> Self {
        BranchBounds {
            type1: table(TYPE1_V, TYPE1_U),
            type2: table(TYPE2_V, TYPE2_U),
            type2_n6: table(TYPE2_N6_V, TYPE2_N6_U),
            type3: table(TYPE3_V, TYPE3_U),
            type3_n22: table(TYPE3_N22_V, TYPE3_N22_U),
            boundary_shift: 0,
        }
    }
}

impl BranchBounds {
    pub fn with_boundary_shift(shift: i64) -> Self {
        BranchBounds { boundary_shift: shift, ..Default::default() }
    }
}

/// One branch evaluated at a concrete `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolvedBranch {
    pub lo: i64,
    pub hi: i64,
    pub value: ValueRule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolveError {
    Fractional { branch: usize, expr: NExpr },
    Partition { detail: String },
}

/// Evaluates every bound at `n`, applies the boundary shift, and checks that
/// the non-empty ranges tile `1..=n` in order.
pub fn resolve(branches: &[Branch], n: i64, shift: i64) -> Result<Vec<ResolvedBranch>, ResolveError> {
    let mut out = Vec::with_capacity(branches.len());
    for (idx, b) in branches.iter().enumerate() {
        let lo = b.lo.eval(n).ok_or(ResolveError::Fractional { branch: idx, expr: b.lo })?;
        let hi = b.hi.eval(n).ok_or(ResolveError::Fractional { branch: idx, expr: b.hi })?;
        out.push(ResolvedBranch { lo, hi, value: b.value });
    }
    if shift != 0 {
        for idx in 0..branches.len().saturating_sub(1) {
            if branches[idx].is_range() && branches[idx + 1].is_range() {
                out[idx].hi += shift;
                out[idx + 1].lo += shift;
            }
        }
    }
    let mut next = 1;
    for (idx, b) in out.iter().enumerate() {
        if b.lo > b.hi {
            continue;
        }
        if b.lo != next {
            return Err(ResolveError::Partition {
                detail: format!("branch {idx} covers {}..={} but index {next} is next", b.lo, b.hi),
            });
        }
        next = b.hi + 1;
    }
    if next != n + 1 {
        return Err(ResolveError::Partition { detail: format!("branches end at {} instead of {n}", next - 1) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nexpr_eval_and_display() {
        let e = NExpr::new(5, 4, 6);
        assert_eq!(e.eval(28), Some(24));
        assert_eq!(e.eval(27), None);
        assert_eq!(e.to_string(), "(5n+4)/6");
        assert_eq!(hp(-1).to_string(), "(n-2)/2");
        assert_eq!(k(3).to_string(), "3");
    }

    #[test]
    fn default_tables_partition_in_type() {
        let bb = BranchBounds::default();
        for n in (8..=200).step_by(6) {
            resolve(&bb.type1.first_column, n, 0).unwrap();
            resolve(&bb.type1.last_row, n, 0).unwrap();
        }
        for n in (12..=200).step_by(6) {
            resolve(&bb.type2.first_column, n, 0).unwrap();
            resolve(&bb.type2.last_row, n, 0).unwrap();
        }
        for n in (10..=200).step_by(6) {
            resolve(&bb.type3.first_column, n, 0).unwrap();
            resolve(&bb.type3.last_row, n, 0).unwrap();
        }
        resolve(&bb.type3_n22.first_column, 22, 0).unwrap();
        resolve(&bb.type3_n22.last_row, 22, 0).unwrap();
        resolve(&bb.type2_n6.first_column, 6, 0).unwrap();
        resolve(&bb.type2_n6.last_row, 6, 0).unwrap();
    }

    #[test]
    fn out_of_type_n_is_fractional() {
        let bb = BranchBounds::default();
        assert!(matches!(
            resolve(&bb.type3.first_column, 12, 0),
            Err(ResolveError::Fractional { .. })
        ));
    }

    #[test]
    fn shift_that_breaks_tiling_is_reported() {
        // For n = 10 the second linear stretch of V is empty; shifting it up
        // makes the first stretch run into row n.
        let bb = BranchBounds::default();
        assert!(matches!(
            resolve(&bb.type3.first_column, 10, 1),
            Err(ResolveError::Partition { .. })
        ));
    }
}
