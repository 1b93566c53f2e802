//! Southeast border paths of `(k,n)`-diagrams.
//!
//! A diagram is stored only through its border path: the sequence of unit
//! steps walked from the top-right corner to the bottom-left corner. Step
//! `i` (1-based) carries label `i`; a south step labels a row, a west step
//! labels a column. Everything else (shape, cells, corners) is derived.
//!
//! Grid coordinates used throughout the crate are `(r, c)` with `r = 0` the
//! top row and `c = 0` the leftmost column. Labels and grid coordinates are
//! converted with [`BorderPath::row_index`] and [`BorderPath::col_index`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest number of columns a diagram may have (one `u64` bitmask per row).
pub const MAX_COLUMNS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    South,
    West,
}

impl Step {
    pub fn from_char(ch: char) -> Result<Step> {
        match ch {
            'S' => Ok(Step::South),
            'W' => Ok(Step::West),
            other => Err(Error::BadStep(other)),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::South => 'S',
            Step::West => 'W',
        }
    }

    pub fn flipped(self) -> Step {
        match self {
            Step::South => Step::West,
            Step::West => Step::South,
        }
    }
}

/// A cell addressed by its labels: `row` is the label of a south step and
/// `col` the label of a west step. The cell lies inside the diagram exactly
/// when `row < col`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Cell {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorderPath {
    steps: Vec<Step>,
    /// Row labels, top to bottom (increasing).
    row_labels: Vec<usize>,
    /// Column labels, left to right (decreasing).
    col_labels: Vec<usize>,
    /// Row lengths, top to bottom (weakly decreasing).
    shape: Vec<usize>,
    /// Column heights, left to right (weakly decreasing).
    heights: Vec<usize>,
}

impl BorderPath {
    pub fn new(steps: Vec<Step>) -> Result<BorderPath> {
        if steps.is_empty() {
            return Err(Error::EmptyPath);
        }
        let num_cols = steps.iter().filter(|s| **s == Step::West).count();
        if num_cols > MAX_COLUMNS {
            return Err(Error::TooWide(num_cols));
        }
        let mut row_labels = Vec::new();
        let mut col_labels = Vec::new();
        let mut shape = Vec::new();
        let mut heights = Vec::new();
        let mut wests_after = num_cols;
        let mut souths_before = 0;
        for (i, step) in steps.iter().enumerate() {
            match step {
                Step::South => {
                    row_labels.push(i + 1);
                    shape.push(wests_after);
                    souths_before += 1;
                }
                Step::West => {
                    col_labels.push(i + 1);
                    heights.push(souths_before);
                    wests_after -= 1;
                }
            }
        }
        // Columns were visited right to left.
        col_labels.reverse();
        heights.reverse();
        Ok(BorderPath {
            steps,
            row_labels,
            col_labels,
            shape,
            heights,
        })
    }

    /// Rebuilds the path of a diagram from its row lengths (top to bottom)
    /// and its number of columns.
    pub fn from_shape(shape: &[usize], num_cols: usize) -> Result<BorderPath> {
        let mut steps = Vec::with_capacity(shape.len() + num_cols);
        let mut current = num_cols;
        for &len in shape {
            if len > current {
                return Err(Error::Parse(format!(
                    "row lengths must be weakly decreasing and at most {num_cols}"
                )));
            }
            while current > len {
                steps.push(Step::West);
                current -= 1;
            }
            steps.push(Step::South);
        }
        while current > 0 {
            steps.push(Step::West);
            current -= 1;
        }
        BorderPath::new(steps)
    }

    /// The `(h+1) x (w+1)` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Result<BorderPath> {
        let mut steps = vec![Step::South; rows];
        steps.extend(std::iter::repeat_n(Step::West, cols));
        BorderPath::new(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Step carrying label `label` (1-based).
    pub fn step(&self, label: usize) -> Option<Step> {
        label
            .checked_sub(1)
            .and_then(|i| self.steps.get(i))
            .copied()
    }

    /// The diagram length `n` (rows plus columns).
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn num_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn num_cols(&self) -> usize {
        self.col_labels.len()
    }

    /// Row labels in increasing order (top to bottom).
    pub fn row_labels(&self) -> &[usize] {
        &self.row_labels
    }

    /// Column labels in increasing order (right to left).
    pub fn column_labels(&self) -> Vec<usize> {
        let mut labels = self.col_labels.clone();
        labels.reverse();
        labels
    }

    /// Row lengths, top to bottom.
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn row_len(&self, r: usize) -> usize {
        self.shape[r]
    }

    /// Column heights, left to right.
    pub fn col_height(&self, c: usize) -> usize {
        self.heights[c]
    }

    pub fn num_cells(&self) -> usize {
        self.shape.iter().sum()
    }

    pub fn row_index(&self, label: usize) -> Option<usize> {
        self.row_labels.binary_search(&label).ok()
    }

    pub fn col_index(&self, label: usize) -> Option<usize> {
        self.col_labels
            .binary_search_by(|probe| label.cmp(probe))
            .ok()
    }

    pub fn row_label(&self, r: usize) -> usize {
        self.row_labels[r]
    }

    pub fn col_label(&self, c: usize) -> usize {
        self.col_labels[c]
    }

    /// Grid coordinates of a labelled cell, if it lies inside the diagram.
    pub fn locate(&self, cell: Cell) -> Option<(usize, usize)> {
        let r = self.row_index(cell.row)?;
        let c = self.col_index(cell.col)?;
        (c < self.shape[r]).then_some((r, c))
    }

    pub fn cell_at(&self, r: usize, c: usize) -> Cell {
        Cell::new(self.row_labels[r], self.col_labels[c])
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.locate(cell).is_some()
    }

    /// Corner cells `(i, i+1)` for every south step `i` directly followed
    /// by a west step, in increasing label order.
    pub fn corners(&self) -> Vec<Cell> {
        self.steps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == Step::South && w[1] == Step::West)
            .map(|(i, _)| Cell::new(i + 1, i + 2))
            .collect()
    }

    pub fn num_corners(&self) -> usize {
        self.steps
            .windows(2)
            .filter(|w| w[0] == Step::South && w[1] == Step::West)
            .count()
    }

    pub fn is_corner(&self, cell: Cell) -> bool {
        cell.col == cell.row + 1
            && self.step(cell.row) == Some(Step::South)
            && self.step(cell.col) == Some(Step::West)
    }

    /// Path of the diagram reflected along its main diagonal.
    pub fn transpose(&self) -> BorderPath {
        let steps = self.steps.iter().rev().map(|s| s.flipped()).collect();
        BorderPath::new(steps).expect("transposed path has the same length")
    }

    pub fn is_rectangular(&self) -> bool {
        let first_west = self.steps.iter().position(|s| *s == Step::West);
        match first_west {
            None => true,
            Some(p) => self.steps[p..].iter().all(|s| *s == Step::West),
        }
    }

    /// `true` if there is neither an empty row nor an empty column.
    pub fn first_south_last_west(&self) -> bool {
        self.steps.first() == Some(&Step::South) && self.steps.last() == Some(&Step::West)
    }
}

impl fmt::Display for BorderPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for BorderPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<BorderPath> {
        let steps = s
            .trim()
            .chars()
            .map(Step::from_char)
            .collect::<Result<Vec<_>>>()?;
        BorderPath::new(steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(s: &str) -> BorderPath {
        s.parse().unwrap()
    }

    #[test]
    fn labels_of_the_four_by_eight_diagram() {
        let p = path("SWSSWWWS");
        assert_eq!(p.len(), 8);
        assert_eq!(p.num_rows(), 4);
        assert_eq!(p.row_labels(), &[1, 3, 4, 8]);
        assert_eq!(p.column_labels(), vec![2, 5, 6, 7]);
        assert_eq!(p.shape(), &[4, 3, 3, 0]);
        // Leftmost column carries the largest label.
        assert_eq!(p.col_label(0), 7);
        assert_eq!(p.col_index(2), Some(3));
    }

    #[test]
    fn single_cell_and_cell_free_diagrams() {
        let p = path("SW");
        assert_eq!((p.num_rows(), p.num_cols()), (1, 1));
        assert_eq!(p.num_cells(), 1);

        let p = path("SSS");
        assert_eq!((p.num_rows(), p.num_cols()), (3, 0));
        assert_eq!(p.num_cells(), 0);
        assert!(p.corners().is_empty());
    }

    #[test]
    fn empty_path_is_rejected() {
        assert_eq!("".parse::<BorderPath>(), Err(Error::EmptyPath));
        assert_eq!("SX".parse::<BorderPath>(), Err(Error::BadStep('X')));
    }

    #[test]
    fn corners_of_small_paths() {
        assert_eq!(
            path("SWSSWWWS").corners(),
            vec![Cell::new(1, 2), Cell::new(4, 5)]
        );
        assert_eq!(
            path("SWSW").corners(),
            vec![Cell::new(1, 2), Cell::new(3, 4)]
        );
    }

    #[test]
    fn corner_is_rightmost_cell_of_its_row_and_bottom_of_its_column() {
        let p = path("SWSSWWWSW");
        for corner in p.corners() {
            let (r, c) = p.locate(corner).unwrap();
            assert_eq!(p.row_len(r), c + 1);
            assert_eq!(p.col_height(c), r + 1);
        }
    }

    #[test]
    fn cells_lie_below_the_diagonal_of_labels() {
        let p = path("SWSSWWWS");
        for &row in p.row_labels() {
            for col in p.column_labels() {
                assert_eq!(p.contains(Cell::new(row, col)), row < col);
            }
        }
    }

    #[test]
    fn shape_reconstructs_path() {
        for s in ["SWSSWWWS", "SW", "SSS", "WWS", "SWWSWS"] {
            let p = path(s);
            let q = BorderPath::from_shape(p.shape(), p.num_cols()).unwrap();
            assert_eq!(p, q, "{s}");
        }
    }

    #[test]
    fn transpose_is_an_involution() {
        let p = path("SWSSWWWSW");
        let t = p.transpose();
        assert_eq!(t.num_rows(), p.num_cols());
        assert_eq!(t.transpose(), p);
        assert_eq!(t.num_corners(), p.num_corners());
    }
}
