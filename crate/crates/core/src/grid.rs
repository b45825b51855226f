use std::fmt;

/// A single edge color. Valid colors are `>= 1`.
pub type Color = u32;

/// Row-major rectangular grid of colors; cell `(r, c)` is the edge between
/// left vertex `r` and right vertex `c` of `K_{rows,cols}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorGrid {
    rows: usize,
    cols: usize,
    cells: Vec<Color>,
}

impl ColorGrid {
    pub fn new(rows: usize, cols: usize, cells: Vec<Color>) -> Self {
        assert_eq!(cells.len(), rows * cols, "cell count must equal rows * cols");
        ColorGrid { rows, cols, cells }
    }

    pub fn filled(rows: usize, cols: usize, color: Color) -> Self {
        ColorGrid::new(rows, cols, vec![color; rows * cols])
    }

    /// Builds a grid from nested rows. Returns `None` if the rows are ragged.
    pub fn from_rows(rows: &[Vec<Color>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(ColorGrid::new(rows.len(), cols, rows.concat()))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based access.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Color {
        self.cells[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, color: Color) {
        self.cells[r * self.cols + c] = color;
    }

    /// 1-based access, `(i, l)` = (row, column).
    #[inline]
    pub fn at(&self, i: usize, l: usize) -> Color {
        self.get(i - 1, l - 1)
    }

    pub fn row(&self, r: usize) -> &[Color] {
        &self.cells[r * self.cols..(r + 1) * self.cols]
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    pub fn to_rows(&self) -> Vec<Vec<Color>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<Color> = self.cells.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn max_color(&self) -> Color {
        self.cells.iter().copied().max().unwrap_or(0)
    }

    /// Returns a copy with rows reordered so that new row `k` is old row `perm[k]`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        let cells = perm.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        ColorGrid::new(self.rows, self.cols, cells)
    }

    /// Returns a copy with columns reordered so that new column `k` is old column `perm[k]`.
    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.cols);
        let mut cells = Vec::with_capacity(self.cells.len());
        for r in 0..self.rows {
            cells.extend(perm.iter().map(|&c| self.get(r, c)));
        }
        ColorGrid::new(self.rows, self.cols, cells)
    }

    pub fn map_colors(&self, f: impl Fn(Color) -> Color) -> Self {
        ColorGrid::new(self.rows, self.cols, self.cells.iter().map(|&c| f(c)).collect())
    }
}

impl fmt::Display for ColorGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.max_color().to_string().len();
        for r in 0..self.rows {
            for (c, v) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v:>width$}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
