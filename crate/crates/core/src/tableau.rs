//! Tree-like tableaux, permutation tableaux and non-ambiguous trees.
//!
//! A filling is stored as one `u64` bitmask per row; bit `c` of row `r` is
//! the cell at grid coordinates `(r, c)` (see [`crate::path`]). For a
//! tree-like tableau a set bit is a point, for a permutation tableau it is
//! a `1`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::path::{BorderPath, Cell, Step};

#[inline]
fn below(c: usize) -> u64 {
    (1u64 << c) - 1
}

#[inline]
fn bit(c: usize) -> u64 {
    1u64 << c
}

fn check_mask_inside(path: &BorderPath, rows: &[u64]) -> std::result::Result<(), String> {
    if rows.len() != path.num_rows() {
        return Err(format!(
            "expected {} rows, got {}",
            path.num_rows(),
            rows.len()
        ));
    }
    for (r, &mask) in rows.iter().enumerate() {
        let len = path.row_len(r);
        let allowed = if len == 64 { u64::MAX } else { below(len) };
        if mask & !allowed != 0 {
            return Err(format!("row {} has entries outside its {len} cells", r + 1));
        }
    }
    Ok(())
}

/// Per-tableau statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StatRecord {
    pub corners: usize,
    pub occupied_corners: usize,
    pub non_occupied_corners: usize,
    /// Non-root points in the first row.
    pub top: usize,
    /// Non-root points in the first column.
    pub left: usize,
    pub first_column_points: usize,
    pub first_row_points: usize,
}

/// The four classes of non-occupied corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NocClass {
    /// No point above except in the first row, no point to the left except
    /// in the first column.
    AB,
    /// Only the column condition holds.
    A1,
    /// Only the row condition holds.
    OneB,
    /// Neither condition holds.
    OneOne,
}

impl NocClass {
    pub const ALL: [NocClass; 4] = [NocClass::AB, NocClass::A1, NocClass::OneB, NocClass::OneOne];

    pub fn name(self) -> &'static str {
        match self {
            NocClass::AB => "AB",
            NocClass::A1 => "A1",
            NocClass::OneB => "1B",
            NocClass::OneOne => "11",
        }
    }
}

impl fmt::Display for NocClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeLikeTableau {
    path: Arc<BorderPath>,
    rows: Vec<u64>,
}

impl TreeLikeTableau {
    /// Builds and validates a tableau from labelled dot cells.
    pub fn new(path: BorderPath, dots: &[Cell]) -> Result<TreeLikeTableau> {
        let mut rows = vec![0u64; path.num_rows()];
        for &cell in dots {
            let (r, c) = path.locate(cell).ok_or_else(|| {
                Error::InvalidTreeLike(format!("cell {cell} is outside the diagram"))
            })?;
            rows[r] |= bit(c);
        }
        TreeLikeTableau::from_rows(Arc::new(path), rows)
    }

    pub fn from_rows(path: Arc<BorderPath>, rows: Vec<u64>) -> Result<TreeLikeTableau> {
        let t = TreeLikeTableau { path, rows };
        t.validate().map_err(Error::InvalidTreeLike)?;
        Ok(t)
    }

    pub(crate) fn from_rows_unchecked(path: Arc<BorderPath>, rows: Vec<u64>) -> TreeLikeTableau {
        debug_assert!(TreeLikeTableau {
            path: path.clone(),
            rows: rows.clone()
        }
        .validate()
        .is_ok());
        TreeLikeTableau { path, rows }
    }

    /// Checks every tree-like rule and reports the first violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let path = &*self.path;
        if !path.first_south_last_west() {
            return Err("path must start with a south step and end with a west step".into());
        }
        check_mask_inside(path, &self.rows)?;
        if self.rows[0] & 1 == 0 {
            return Err("top-left cell must hold the root point".into());
        }
        let mut above = 0u64;
        for (r, &mask) in self.rows.iter().enumerate() {
            if mask == 0 {
                return Err(format!("row {} is empty", path.row_label(r)));
            }
            for c in 0..path.row_len(r) {
                if mask & bit(c) == 0 || (r == 0 && c == 0) {
                    continue;
                }
                let has_above = above & bit(c) != 0;
                let has_left = mask & below(c) != 0;
                if has_above == has_left {
                    return Err(format!(
                        "point {} must have exactly one of a point above or a point to its left",
                        path.cell_at(r, c)
                    ));
                }
            }
            above |= mask;
        }
        for c in 0..path.num_cols() {
            if above & bit(c) == 0 {
                return Err(format!("column {} is empty", path.col_label(c)));
            }
        }
        Ok(())
    }

    pub fn path(&self) -> &BorderPath {
        &self.path
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Number of points.
    pub fn size(&self) -> usize {
        self.rows.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn has_point(&self, r: usize, c: usize) -> bool {
        self.rows[r] & bit(c) != 0
    }

    pub fn has_dot(&self, cell: Cell) -> bool {
        self.path
            .locate(cell)
            .is_some_and(|(r, c)| self.has_point(r, c))
    }

    pub fn dots(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for (r, &mask) in self.rows.iter().enumerate() {
            for c in 0..self.path.row_len(r) {
                if mask & bit(c) != 0 {
                    out.push(self.path.cell_at(r, c));
                }
            }
        }
        out
    }

    pub fn first_row_points(&self) -> usize {
        self.rows[0].count_ones() as usize
    }

    pub fn first_column_points(&self) -> usize {
        self.rows.iter().filter(|m| *m & 1 != 0).count()
    }

    /// Non-root points in the first row.
    pub fn top(&self) -> usize {
        self.first_row_points() - 1
    }

    /// Non-root points in the first column.
    pub fn left(&self) -> usize {
        self.first_column_points() - 1
    }

    pub fn stats(&self) -> StatRecord {
        let mut occupied = 0;
        let mut corners = 0;
        for corner in self.path.corners() {
            corners += 1;
            if self.has_dot(corner) {
                occupied += 1;
            }
        }
        StatRecord {
            corners,
            occupied_corners: occupied,
            non_occupied_corners: corners - occupied,
            top: self.top(),
            left: self.left(),
            first_column_points: self.first_column_points(),
            first_row_points: self.first_row_points(),
        }
    }

    pub fn non_occupied_corners(&self) -> Vec<Cell> {
        self.path
            .corners()
            .into_iter()
            .filter(|c| !self.has_dot(*c))
            .collect()
    }

    /// Classifies a non-occupied corner.
    pub fn noc_class(&self, corner: Cell) -> Result<NocClass> {
        if !self.path.is_corner(corner) {
            return Err(Error::NotACorner {
                row: corner.row,
                col: corner.col,
            });
        }
        let (r, c) = self
            .path
            .locate(corner)
            .expect("corners lie inside the diagram");
        if self.has_point(r, c) {
            return Err(Error::OccupiedCorner {
                row: corner.row,
                col: corner.col,
            });
        }
        let column_clear = (1..r).all(|i| !self.has_point(i, c));
        let row_clear = self.rows[r] & below(c) & !1 == 0;
        Ok(match (column_clear, row_clear) {
            (true, true) => NocClass::AB,
            (true, false) => NocClass::A1,
            (false, true) => NocClass::OneB,
            (false, false) => NocClass::OneOne,
        })
    }

    /// Reflection along the main diagonal; swaps `top` and `left`.
    pub fn transpose(&self) -> TreeLikeTableau {
        let path = self.path.transpose();
        let mut rows = vec![0u64; path.num_rows()];
        for (r, &mask) in self.rows.iter().enumerate() {
            for (c, row) in rows.iter_mut().enumerate().take(self.path.row_len(r)) {
                if mask & bit(c) != 0 {
                    *row |= bit(r);
                }
            }
        }
        TreeLikeTableau::from_rows_unchecked(Arc::new(path), rows)
    }

    pub fn to_text(&self) -> String {
        render(&self.path, &self.rows, 'o', '.')
    }

    pub fn parse(text: &str) -> Result<TreeLikeTableau> {
        let mut lines = text.lines();
        let block =
            read_block(&mut lines)?.ok_or_else(|| Error::Parse("no tableau found".into()))?;
        finish_single(&mut lines)?;
        block.into_tree_like()
    }
}

impl fmt::Display for TreeLikeTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationTableau {
    path: Arc<BorderPath>,
    rows: Vec<u64>,
}

impl PermutationTableau {
    /// Builds and validates a tableau from the cells holding a `1`.
    pub fn new(path: BorderPath, ones: &[Cell]) -> Result<PermutationTableau> {
        let mut rows = vec![0u64; path.num_rows()];
        for &cell in ones {
            let (r, c) = path.locate(cell).ok_or_else(|| {
                Error::InvalidPermutationTableau(format!("cell {cell} is outside the diagram"))
            })?;
            rows[r] |= bit(c);
        }
        PermutationTableau::from_rows(Arc::new(path), rows)
    }

    pub fn from_rows(path: Arc<BorderPath>, rows: Vec<u64>) -> Result<PermutationTableau> {
        let t = PermutationTableau { path, rows };
        t.validate().map_err(Error::InvalidPermutationTableau)?;
        Ok(t)
    }

    pub(crate) fn from_rows_unchecked(path: Arc<BorderPath>, rows: Vec<u64>) -> PermutationTableau {
        debug_assert!(PermutationTableau {
            path: path.clone(),
            rows: rows.clone()
        }
        .validate()
        .is_ok());
        PermutationTableau { path, rows }
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        let path = &*self.path;
        if path.steps()[0] != Step::South {
            return Err("path must start with a south step".into());
        }
        check_mask_inside(path, &self.rows)?;
        let mut above = 0u64;
        for (r, &mask) in self.rows.iter().enumerate() {
            for c in 0..path.row_len(r) {
                if mask & bit(c) == 0 && above & bit(c) != 0 && mask & below(c) != 0 {
                    return Err(format!(
                        "the 0 in cell {} has a 1 above it and a 1 to its left",
                        path.cell_at(r, c)
                    ));
                }
            }
            above |= mask;
        }
        for c in 0..path.num_cols() {
            if above & bit(c) == 0 {
                return Err(format!("column {} has no 1", path.col_label(c)));
            }
        }
        Ok(())
    }

    pub fn path(&self) -> &BorderPath {
        &self.path
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Diagram length.
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn is_one(&self, r: usize, c: usize) -> bool {
        self.rows[r] & bit(c) != 0
    }

    pub fn value(&self, cell: Cell) -> Option<u8> {
        self.path
            .locate(cell)
            .map(|(r, c)| u8::from(self.is_one(r, c)))
    }

    pub fn num_corners(&self) -> usize {
        self.path.num_corners()
    }

    pub fn to_text(&self) -> String {
        render(&self.path, &self.rows, '1', '0')
    }

    pub fn parse(text: &str) -> Result<PermutationTableau> {
        let mut lines = text.lines();
        let block =
            read_block(&mut lines)?.ok_or_else(|| Error::Parse("no tableau found".into()))?;
        finish_single(&mut lines)?;
        block.into_permutation_tableau()
    }
}

impl fmt::Display for PermutationTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A tree-like tableau of rectangular shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonAmbiguousTree(TreeLikeTableau);

impl NonAmbiguousTree {
    pub fn new(tableau: TreeLikeTableau) -> Result<NonAmbiguousTree> {
        if !tableau.path().is_rectangular() {
            return Err(Error::NotRectangular(format!(
                "shape {:?} is not a rectangle",
                tableau.path().shape()
            )));
        }
        Ok(NonAmbiguousTree(tableau))
    }

    /// Rows minus one.
    pub fn height(&self) -> usize {
        self.0.path().num_rows() - 1
    }

    /// Columns minus one.
    pub fn width(&self) -> usize {
        self.0.path().num_cols() - 1
    }

    pub fn tableau(&self) -> &TreeLikeTableau {
        &self.0
    }

    pub fn into_tableau(self) -> TreeLikeTableau {
        self.0
    }

    pub fn transpose(&self) -> NonAmbiguousTree {
        NonAmbiguousTree(self.0.transpose())
    }
}

impl fmt::Display for NonAmbiguousTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn render(path: &BorderPath, rows: &[u64], set: char, unset: char) -> String {
    let mut out = path.to_string();
    for (r, &mask) in rows.iter().enumerate() {
        out.push('\n');
        for c in 0..path.row_len(r) {
            out.push(if mask & bit(c) != 0 { set } else { unset });
        }
    }
    out
}

/// Keyword standing for the empty (size 0) tree-like tableau in text streams.
pub const EMPTY_TABLEAU: &str = "empty";

/// One object read from the text interchange format: a path line followed
/// by one line per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextBlock {
    pub path: BorderPath,
    pub rows: Vec<String>,
}

impl TextBlock {
    fn masks(&self, set: char, unset: char) -> Result<Vec<u64>> {
        self.rows
            .iter()
            .enumerate()
            .map(|(r, line)| {
                let len = self.path.row_len(r);
                if line.chars().count() != len {
                    return Err(Error::Parse(format!(
                        "row {} must have {len} characters, found {:?}",
                        r + 1,
                        line
                    )));
                }
                let mut mask = 0u64;
                for (c, ch) in line.chars().enumerate() {
                    if ch == set {
                        mask |= bit(c);
                    } else if ch != unset {
                        return Err(Error::Parse(format!(
                            "unexpected character {ch:?} (expected {set:?} or {unset:?})"
                        )));
                    }
                }
                Ok(mask)
            })
            .collect()
    }

    pub fn into_tree_like(self) -> Result<TreeLikeTableau> {
        let rows = self.masks('o', '.')?;
        TreeLikeTableau::from_rows(Arc::new(self.path), rows)
    }

    pub fn into_permutation_tableau(self) -> Result<PermutationTableau> {
        let rows = self.masks('1', '0')?;
        PermutationTableau::from_rows(Arc::new(self.path), rows)
    }
}

/// A block that may also be the [`EMPTY_TABLEAU`] keyword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaybeBlock {
    Empty,
    Block(TextBlock),
}

/// Reads the next block, skipping blank separator lines. Returns `None` at
/// end of input.
pub fn read_block<'a, I>(lines: &mut I) -> Result<Option<TextBlock>>
where
    I: Iterator<Item = &'a str>,
{
    match read_maybe_block(lines)? {
        None => Ok(None),
        Some(MaybeBlock::Block(b)) => Ok(Some(b)),
        Some(MaybeBlock::Empty) => Err(Error::Parse(format!(
            "{EMPTY_TABLEAU:?} is not allowed here"
        ))),
    }
}

pub fn read_maybe_block<'a, I>(lines: &mut I) -> Result<Option<MaybeBlock>>
where
    I: Iterator<Item = &'a str>,
{
    let header = loop {
        match lines.next() {
            None => return Ok(None),
            Some(l) if l.trim().is_empty() => continue,
            Some(l) => break l.trim(),
        }
    };
    if header == EMPTY_TABLEAU {
        return Ok(Some(MaybeBlock::Empty));
    }
    let path: BorderPath = header.parse()?;
    let mut rows = Vec::with_capacity(path.num_rows());
    for r in 0..path.num_rows() {
        match lines.next() {
            Some(line) => rows.push(line.trim_end().to_string()),
            // Trailing empty rows may be cut off by line splitting.
            None if path.row_len(r) == 0 => rows.push(String::new()),
            None => {
                return Err(Error::Parse(format!(
                    "path {path} needs {} row lines, input ended after {r}",
                    path.num_rows()
                )))
            }
        }
    }
    Ok(Some(MaybeBlock::Block(TextBlock { path, rows })))
}

fn finish_single<'a, I>(lines: &mut I) -> Result<()>
where
    I: Iterator<Item = &'a str>,
{
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::Parse("trailing input after the tableau".into()));
    }
    Ok(())
}
