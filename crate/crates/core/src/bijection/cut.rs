//! Cutting a tree-like tableau at a corner.
//!
//! Let the corner sit at grid position `(r, q)`. The lines through its
//! bottom and right edges split the diagram into three parts:
//!
//! * `M`, rows `0..=r` by columns `0..=q` (always a full rectangle),
//! * `L`, the rows below `r` (they only reach columns `0..q`),
//! * `R`, rows `0..r` to the right of column `q`.
//!
//! The left tableau is `L` under a new first row of length `q`, with a point
//! over every column that is non-empty in `M`. The right tableau is `R`
//! beside a new first column of height `r`, with a point next to every row
//! that is non-empty in `M`. `M` with its empty rows and columns removed is a
//! non-ambiguous tree.
//!
//! A side is empty (size 0) exactly when the corner lies in the first
//! column (`q = 0`, no left tableau) or in the first row (`r = 0`, no right
//! tableau).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::path::{BorderPath, Cell};
use crate::tableau::{NonAmbiguousTree, TreeLikeTableau};

/// The three pieces of a tree-like tableau cut at one of its corners.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    pub left: Option<TreeLikeTableau>,
    pub right: Option<TreeLikeTableau>,
    pub nat: NonAmbiguousTree,
}

impl Cut {
    /// Checks the size-independent compatibility conditions and returns the
    /// total size `n_l + n_r + 1`.
    pub fn check(&self) -> Result<usize> {
        let w = self.left.as_ref().map_or(0, |t| t.first_row_points());
        let h = self.right.as_ref().map_or(0, |t| t.first_column_points());
        if self.nat.height() != h || self.nat.width() != w {
            return Err(Error::DimensionMismatch(format!(
                "non-ambiguous tree is {}x{} (height x width), the side tableaux require {h}x{w}",
                self.nat.height(),
                self.nat.width()
            )));
        }
        Ok(self.left_size() + self.right_size() + 1)
    }

    pub fn left_size(&self) -> usize {
        self.left.as_ref().map_or(0, |t| t.size())
    }

    pub fn right_size(&self) -> usize {
        self.right.as_ref().map_or(0, |t| t.size())
    }
}

fn set_bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&c| mask >> c & 1 == 1)
}

pub fn cut_at_corner(t: &TreeLikeTableau, corner: Cell) -> Result<Cut> {
    let path = t.path();
    if !path.is_corner(corner) {
        return Err(Error::NotACorner {
            row: corner.row,
            col: corner.col,
        });
    }
    let (r, q) = path.locate(corner).expect("corners lie inside the diagram");
    let rows = t.rows();
    let m_mask = (1u64 << (q + 1)) - 1;
    // M, row by row; L and R read straight from `rows`.
    let m_rows: Vec<u64> = rows[..=r].iter().map(|m| m & m_mask).collect();
    let m_cols = m_rows.iter().fold(0u64, |a, m| a | m);

    let left = (q > 0).then(|| {
        let mut shape = vec![q];
        shape.extend((r + 1..path.num_rows()).map(|i| path.row_len(i)));
        let lp = BorderPath::from_shape(&shape, q).expect("rows below a corner are shorter");
        let mut lrows = vec![m_cols & ((1u64 << q) - 1)];
        lrows.extend_from_slice(&rows[r + 1..]);
        TreeLikeTableau::from_rows_unchecked(Arc::new(lp), lrows)
    });

    let right = (r > 0).then(|| {
        let extra = path.num_cols() - q - 1;
        let shape: Vec<usize> = (0..r).map(|i| path.row_len(i) - q).collect();
        let rp = BorderPath::from_shape(&shape, extra + 1).expect("rows above a corner are longer");
        let rrows = (0..r)
            .map(|i| (rows[i] >> (q + 1)) << 1 | u64::from(m_rows[i] != 0))
            .collect();
        TreeLikeTableau::from_rows_unchecked(Arc::new(rp), rrows)
    });

    let kept_cols: Vec<usize> = set_bits(m_cols).collect();
    let nat_rows: Vec<u64> = m_rows
        .iter()
        .filter(|m| **m != 0)
        .map(|&m| {
            kept_cols
                .iter()
                .enumerate()
                .filter(|(_, &c)| m >> c & 1 == 1)
                .fold(0u64, |a, (j, _)| a | 1 << j)
        })
        .collect();
    let np = BorderPath::rectangle(nat_rows.len(), kept_cols.len())?;
    let nat = NonAmbiguousTree::new(TreeLikeTableau::from_rows_unchecked(Arc::new(np), nat_rows))?;
    Ok(Cut { left, right, nat })
}

/// Inverse of [`cut_at_corner`]: rebuilds the tableau and its corner.
pub fn glue(cut: &Cut) -> Result<(TreeLikeTableau, Cell)> {
    cut.check()?;
    let q = cut.left.as_ref().map_or(0, |t| t.path().num_cols());
    let r = cut.right.as_ref().map_or(0, |t| t.path().num_rows());
    // Rows and columns of M that receive the rows and columns of the tree.
    let mut nat_rows: Vec<usize> = match &cut.right {
        Some(t) => (0..r).filter(|&i| t.rows()[i] & 1 == 1).collect(),
        None => Vec::new(),
    };
    nat_rows.push(r);
    let mut nat_cols: Vec<usize> = match &cut.left {
        Some(t) => set_bits(t.rows()[0]).collect(),
        None => Vec::new(),
    };
    nat_cols.push(q);

    let right_cols = cut.right.as_ref().map_or(0, |t| t.path().num_cols() - 1);
    let mut shape: Vec<usize> = (0..r)
        .map(|i| q + cut.right.as_ref().expect("r > 0").path().row_len(i))
        .collect();
    shape.push(q + 1);
    if let Some(t) = &cut.left {
        shape.extend((1..t.path().num_rows()).map(|i| t.path().row_len(i)));
    }
    let path = BorderPath::from_shape(&shape, q + 1 + right_cols)?;

    let mut rows = vec![0u64; shape.len()];
    let nat = cut.nat.tableau();
    for (i, &mask) in nat.rows().iter().enumerate() {
        for j in set_bits(mask) {
            rows[nat_rows[i]] |= 1 << nat_cols[j];
        }
    }
    if let Some(t) = &cut.right {
        for (i, &mask) in t.rows().iter().enumerate() {
            rows[i] |= (mask >> 1) << (q + 1);
        }
    }
    if let Some(t) = &cut.left {
        for (i, &mask) in t.rows().iter().enumerate().skip(1) {
            rows[r + i] |= mask;
        }
    }
    let corner = path.cell_at(r, q);
    let t = TreeLikeTableau::from_rows(Arc::new(path), rows)?;
    Ok((t, corner))
}
