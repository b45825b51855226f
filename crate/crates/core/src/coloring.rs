//! The coloring construction: classification of `n`, the cyclic body, the
//! appended first column and last row, and assembly of the full matrix.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::grid::{Color, ColorGrid};
use crate::tables::{resolve, BranchBounds, BranchTable, ResolveError, ResolvedBranch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TypeTag {
    Type1,
    Type2,
    Type3,
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    Regular,
    ExceptionN6,
    ExceptionN10,
    ExceptionN16,
    ExceptionN22,
}

/// Which construction family governs a given order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeClass {
    pub n: usize,
    pub tag: TypeTag,
    /// From `n = 2+6k` (Type 1), `6+6k` (Type 2) or `4+6k` (Type 3).
    pub k: usize,
    pub variant: Variant,
    /// Type 2 only.
    pub y_value: Option<Color>,
    /// Set exactly when `tag == Unsupported`.
    pub reason: Option<&'static str>,
}

impl TypeClass {
    pub fn is_supported(&self) -> bool {
        self.tag != TypeTag::Unsupported
    }

    pub fn is_exceptional(&self) -> bool {
        self.is_supported() && self.variant != Variant::Regular
    }

    /// The special value used by the pivot branch of `V` and `U`.
    pub fn pivot(&self) -> Option<i64> {
        let n = self.n as i64;
        match (self.tag, self.variant) {
            (TypeTag::Type2, _) => self.y_value.map(i64::from),
            (TypeTag::Type3, Variant::ExceptionN10) => Some(n - 8),
            (TypeTag::Type3, Variant::ExceptionN16) => Some(n - 11),
            (TypeTag::Type3, Variant::ExceptionN22) => Some(n - 5),
            (TypeTag::Type3, _) => Some(n - 9),
            _ => None,
        }
    }

    /// Stable machine-readable label, used as the `type` field of matrix JSON.
    pub fn label(&self) -> &'static str {
        match (self.tag, self.variant) {
            (TypeTag::Type1, _) => "type1",
            (TypeTag::Type2, Variant::ExceptionN6) => "type2-n6",
            (TypeTag::Type2, _) => "type2",
            (TypeTag::Type3, Variant::ExceptionN10) => "type3-n10",
            (TypeTag::Type3, Variant::ExceptionN16) => "type3-n16",
            (TypeTag::Type3, Variant::ExceptionN22) => "type3-n22",
            (TypeTag::Type3, _) => "type3",
            (TypeTag::Unsupported, _) => "unsupported",
        }
    }

    fn table<'a>(&self, bounds: &'a BranchBounds) -> Option<&'a BranchTable> {
        Some(match (self.tag, self.variant) {
            (TypeTag::Type1, _) => &bounds.type1,
            (TypeTag::Type2, Variant::ExceptionN6) => &bounds.type2_n6,
            (TypeTag::Type2, _) => &bounds.type2,
            (TypeTag::Type3, Variant::ExceptionN22) => &bounds.type3_n22,
            (TypeTag::Type3, _) => &bounds.type3,
            (TypeTag::Unsupported, _) => return None,
        })
    }
}

impl fmt::Display for TypeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason {
            Some(reason) => write!(f, "unsupported (n={}: {reason})", self.n),
            None => write!(f, "{} (n={}, k={})", self.label(), self.n, self.k),
        }
    }
}

/// Classifies `n` into its construction family. Total for `n >= 1`.
pub fn classify(n: usize) -> TypeClass {
    let unsupported = |reason| TypeClass {
        n,
        tag: TypeTag::Unsupported,
        k: 0,
        variant: Variant::Regular,
        y_value: None,
        reason: Some(reason),
    };
    if n % 2 == 1 {
        return unsupported("odd n has no construction");
    }
    if n < 6 {
        return unsupported("no construction for n < 6");
    }
    let supported = |tag, k, variant, y_value| TypeClass { n, tag, k, variant, y_value, reason: None };
    match n % 6 {
        2 => supported(TypeTag::Type1, (n - 2) / 6, Variant::Regular, None),
        0 => {
            let k = (n - 6) / 6;
            let y = if k % 2 == 0 { n / 2 - 2 } else { n / 2 + 1 };
            let variant = if n == 6 { Variant::ExceptionN6 } else { Variant::Regular };
            supported(TypeTag::Type2, k, variant, Some(y as Color))
        }
        _ => {
            let variant = match n {
                10 => Variant::ExceptionN10,
                16 => Variant::ExceptionN16,
                22 => Variant::ExceptionN22,
                _ => Variant::Regular,
            };
            supported(TypeTag::Type3, (n - 4) / 6, variant, None)
        }
    }
}

/// How a body row index maps to its exponent of the cyclic shift.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExponentRule {
    /// `s = (n + 1) - i`: row 2 is the identity shift, row `n-1` is the shift by 2.
    #[default]
    Descending,
    /// `s = i - 2`: the mirrored reading.
    Ascending,
}

impl ExponentRule {
    pub fn exponent(self, i: usize, n: usize) -> i64 {
        match self {
            ExponentRule::Descending => (n + 1) as i64 - i as i64,
            ExponentRule::Ascending => i as i64 - 2,
        }
    }
}

/// How an integer is mapped to a label in `{1, ..., n-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ResidueRule {
    /// `((x - 1) mod (n - 1)) + 1`, so multiples of `n-1` map to `n-1`.
    #[default]
    Canonical,
    /// `(x mod (n - 1)) + 1`.
    Shifted,
}

impl ResidueRule {
    pub fn apply(self, x: i64, n: usize) -> Color {
        let m = n as i64 - 1;
        let r = match self {
            ResidueRule::Canonical => (x - 1).rem_euclid(m) + 1,
            ResidueRule::Shifted => x.rem_euclid(m) + 1,
        };
        r as Color
    }
}

/// Indexing conventions that the construction leaves open.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterpretationConfig {
    pub exponent_rule: ExponentRule,
    pub residue_rule: ResidueRule,
    pub branch_bounds: BranchBounds,
}

impl InterpretationConfig {
    pub fn new(exponent_rule: ExponentRule, residue_rule: ResidueRule, boundary_shift: i64) -> Self {
        InterpretationConfig {
            exponent_rule,
            residue_rule,
            branch_bounds: BranchBounds::with_boundary_shift(boundary_shift),
        }
    }

    pub fn is_default(&self) -> bool {
        *self == InterpretationConfig::default()
    }

    /// Name of the form `desc-canonical-0`; the default config is `default`.
    pub fn name(&self) -> String {
        if self.is_default() {
            return "default".into();
        }
        let exp = match self.exponent_rule {
            ExponentRule::Descending => "desc",
            ExponentRule::Ascending => "asc",
        };
        let res = match self.residue_rule {
            ResidueRule::Canonical => "canonical",
            ResidueRule::Shifted => "shifted",
        };
        format!("{exp}-{res}-{}", self.branch_bounds.boundary_shift)
    }

    /// Every variant tried by calibration, default first.
    pub fn variant_grid() -> Vec<InterpretationConfig> {
        let mut out = Vec::new();
        for exp in [ExponentRule::Descending, ExponentRule::Ascending] {
            for res in [ResidueRule::Canonical, ResidueRule::Shifted] {
                for shift in [0, -1, 1] {
                    out.push(InterpretationConfig::new(exp, res, shift));
                }
            }
        }
        out
    }

    /// Parses a name produced by [`InterpretationConfig::name`].
    pub fn from_name(name: &str) -> Option<Self> {
        if name == "default" {
            return Some(Self::default());
        }
        Self::variant_grid().into_iter().find(|c| c.name() == name || c.is_default() && name == "desc-canonical-0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("n={n} is unsupported: {reason}")]
    Unsupported { n: usize, reason: &'static str },
    #[error("n={n}: corner cell (n,1) disagrees, V gives {from_v} but U gives {from_u}")]
    CornerMismatch { n: usize, from_v: Color, from_u: Color },
    #[error("n={n}: bound {expr} of {part} branch {branch} is fractional")]
    FractionalBound { n: usize, part: &'static str, branch: usize, expr: String },
    #[error("n={n}: {part} branches do not partition 1..={n}: {detail}")]
    BranchPartition { n: usize, part: &'static str, detail: String },
    #[error("n={n}: {part} value at index {index} is {value}, outside 1..={n}")]
    ColorOutOfRange { n: usize, part: &'static str, index: usize, value: i64 },
}

/// The cyclic shift `sigma^(r)(c) = r + c (mod n-1)`, labelled in `{1..n-1}`.
pub fn sigma_power(r: i64, c: i64, n: usize, cfg: &InterpretationConfig) -> Color {
    debug_assert!(n >= 3);
    cfg.residue_rule.apply(r + c, n)
}

/// Body entry `a_{i,l}` for `1 <= i <= n-1` and `2 <= l <= n`.
pub fn body_entry(i: usize, l: usize, n: usize, cfg: &InterpretationConfig) -> Color {
    assert!((1..n).contains(&i) && (2..=n).contains(&l), "({i},{l}) is outside the body of an order-{n} matrix");
    if i == 1 {
        l as Color
    } else {
        sigma_power(cfg.exponent_rule.exponent(i, n), l as i64 - 1, n, cfg)
    }
}

fn evaluate_part(
    n: usize,
    cls: &TypeClass,
    cfg: &InterpretationConfig,
    part: &'static str,
    pick: impl Fn(&BranchTable) -> &[crate::tables::Branch],
) -> Result<Vec<Color>, BuildError> {
    let Some(table) = cls.table(&cfg.branch_bounds) else {
        return Err(BuildError::Unsupported { n, reason: cls.reason.unwrap_or("unsupported") });
    };
    let ni = n as i64;
    let resolved: Vec<ResolvedBranch> = resolve(pick(table), ni, cfg.branch_bounds.boundary_shift).map_err(|e| match e {
        ResolveError::Fractional { branch, expr } => BuildError::FractionalBound { n, part, branch, expr: expr.to_string() },
        ResolveError::Partition { detail } => BuildError::BranchPartition { n, part, detail },
    })?;
    let pivot = cls.pivot();
    let mut out = Vec::with_capacity(n);
    for b in resolved.iter().filter(|b| b.lo <= b.hi) {
        for x in b.lo..=b.hi {
            let value = b.value.eval(x, ni, pivot).ok_or_else(|| BuildError::FractionalBound {
                n,
                part,
                branch: 0,
                expr: format!("{:?}", b.value),
            })?;
            if !(1..=ni).contains(&value) {
                return Err(BuildError::ColorOutOfRange { n, part, index: x as usize, value });
            }
            out.push(value as Color);
        }
    }
    Ok(out)
}

/// The first column `(a_{1,1}, ..., a_{n,1})`.
pub fn first_column(n: usize, cls: &TypeClass, cfg: &InterpretationConfig) -> Result<Vec<Color>, BuildError> {
    evaluate_part(n, cls, cfg, "first column", |t| &t.first_column)
}

/// The last row `(a_{n,1}, ..., a_{n,n})`.
pub fn last_row(n: usize, cls: &TypeClass, cfg: &InterpretationConfig) -> Result<Vec<Color>, BuildError> {
    evaluate_part(n, cls, cfg, "last row", |t| &t.last_row)
}

/// An `n x n` coloring of `K_{n,n}` with colors in `1..=n`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringMatrix {
    n: usize,
    label: String,
    grid: ColorGrid,
}

impl ColoringMatrix {
    /// Wraps a square grid whose entries lie in `1..=n`.
    pub fn from_grid(grid: ColorGrid, label: impl Into<String>) -> Option<Self> {
        let n = grid.rows();
        if !grid.is_square() || grid.cells().iter().any(|&c| c == 0 || c as usize > n) {
            return None;
        }
        Some(ColoringMatrix { n, label: label.into(), grid })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Construction family label (`type1`, `type3-n22`, ...) or a caller-chosen tag.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn grid(&self) -> &ColorGrid {
        &self.grid
    }

    pub fn into_grid(self) -> ColorGrid {
        self.grid
    }

    /// 1-based entry `a_{i,l}`.
    pub fn at(&self, i: usize, l: usize) -> Color {
        self.grid.at(i, l)
    }
}

impl AsRef<ColorGrid> for ColoringMatrix {
    fn as_ref(&self) -> &ColorGrid {
        &self.grid
    }
}

/// Assembles the full matrix: `V` as column 1, `U` as row `n`, cyclic body elsewhere.
pub fn build_matrix(n: usize, cfg: &InterpretationConfig) -> Result<ColoringMatrix, BuildError> {
    let cls = classify(n);
    if let Some(reason) = cls.reason {
        return Err(BuildError::Unsupported { n, reason });
    }
    let v = first_column(n, &cls, cfg)?;
    let u = last_row(n, &cls, cfg)?;
    if v[n - 1] != u[0] {
        return Err(BuildError::CornerMismatch { n, from_v: v[n - 1], from_u: u[0] });
    }
    let mut grid = ColorGrid::filled(n, n, 0);
    for i in 1..n {
        grid.set(i - 1, 0, v[i - 1]);
        for l in 2..=n {
            grid.set(i - 1, l - 1, body_entry(i, l, n, cfg));
        }
    }
    for (l, &c) in u.iter().enumerate() {
        grid.set(n - 1, l, c);
    }
    Ok(ColoringMatrix { n, label: cls.label().to_string(), grid })
}
