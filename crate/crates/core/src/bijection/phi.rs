//! The bijection from tree-like tableaux of size `n` to permutation tableaux
//! of length `n`.
//!
//! Forward map: the topmost point of every column becomes a `1`, every other
//! point a `0`. An empty cell becomes `0` when one of those point-zeros lies
//! to its right in its row, or one of those point-ones lies below it in its
//! column. Zeros written into empty cells do not force further zeros. The
//! remaining empty cells become `1`, and the leftmost column is deleted.
//!
//! Inverse: the topmost `1` of every column marks the topmost point of the
//! corresponding column. In each row the only other possible point is the
//! leftmost one, which needs a point above it; every candidate position is
//! tried and the one whose forward filling reproduces the row is kept.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::path::{BorderPath, Step};
use crate::tableau::{PermutationTableau, TreeLikeTableau};

/// Row of the topmost point (or `1`) of every column, `usize::MAX` if none.
fn topmost(path: &BorderPath, rows: &[u64]) -> Vec<usize> {
    (0..path.num_cols())
        .map(|c| {
            (0..path.col_height(c))
                .find(|&r| rows[r] >> c & 1 == 1)
                .unwrap_or(usize::MAX)
        })
        .collect()
}

/// Forward filling of one row. `leftmost` is the column of the single
/// non-topmost point of the row (if any), `top` the topmost-point rows.
/// Returns the 0/1 mask over all columns of the tree-like diagram.
fn fill_row(r: usize, len: usize, top: &[usize], leftmost: Option<usize>) -> u64 {
    let mut mask = 0u64;
    for (c, &t) in top.iter().enumerate().take(len) {
        let one = t == r || (leftmost.is_none_or(|p| p < c) && t <= r && leftmost != Some(c));
        if one {
            mask |= 1 << c;
        }
    }
    mask
}

pub fn phi(t: &TreeLikeTableau) -> PermutationTableau {
    let path = t.path();
    let top = topmost(path, t.rows());
    let rows = t
        .rows()
        .iter()
        .enumerate()
        .map(|(r, &dots)| {
            // At most one point per row is not the topmost of its column.
            let others = dots & !row_topmost_mask(r, path.row_len(r), &top);
            let leftmost = (others != 0).then(|| others.trailing_zeros() as usize);
            fill_row(r, path.row_len(r), &top, leftmost) >> 1
        })
        .collect();
    let mut steps = path.steps().to_vec();
    steps.pop();
    let pt_path = BorderPath::new(steps).expect("tree-like paths have length at least 2");
    PermutationTableau::from_rows_unchecked(Arc::new(pt_path), rows)
}

fn row_topmost_mask(r: usize, len: usize, top: &[usize]) -> u64 {
    (0..len)
        .filter(|&c| top[c] == r)
        .fold(0u64, |m, c| m | 1 << c)
}

pub fn phi_inverse(p: &PermutationTableau) -> Result<TreeLikeTableau> {
    let mut steps = p.path().steps().to_vec();
    steps.push(Step::West);
    let path = Arc::new(BorderPath::new(steps)?);
    // Columns of the tree-like diagram: 0 is the new first column.
    let shifted: Vec<u64> = p.rows().iter().map(|m| m << 1).collect();
    let mut top = topmost(&path, &shifted);
    top[0] = 0;

    let mut rows = Vec::with_capacity(path.num_rows());
    for r in 0..path.num_rows() {
        let len = path.row_len(r);
        let firsts = row_topmost_mask(r, len, &top);
        if r == 0 {
            if fill_row(0, len, &top, None) >> 1 != p.rows()[0] {
                return Err(Error::InvalidPermutationTableau(
                    "first row has no preimage".into(),
                ));
            }
            rows.push(firsts);
            continue;
        }
        let bound = if firsts == 0 {
            len
        } else {
            firsts.trailing_zeros() as usize
        };
        let target = p.rows()[r];
        let mut found = None;
        for c in (0..bound).filter(|&c| top[c] < r) {
            if fill_row(r, len, &top, Some(c)) >> 1 == target {
                if found.is_some() {
                    return Err(Error::InvalidPermutationTableau(format!(
                        "row {} has several preimages",
                        path.row_label(r)
                    )));
                }
                found = Some(c);
            }
        }
        let c = found.ok_or_else(|| {
            Error::InvalidPermutationTableau(format!("row {} has no preimage", path.row_label(r)))
        })?;
        rows.push(firsts | 1 << c);
    }
    TreeLikeTableau::from_rows(path, rows)
}

/// `1` if the border edge labelled `n` (the size) is a south step: then the
/// edges `n` and `n + 1` form a corner that disappears under [`phi`].
pub fn corner_transfer_delta(t: &TreeLikeTableau) -> usize {
    usize::from(t.path().step(t.size()) == Some(Step::South))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::enumerate::{permutation_tableaux, tree_like_tableaux};

    fn sample_tree_like() -> TreeLikeTableau {
        TreeLikeTableau::parse("SWSSWWWSW\no.o.o\noo.o\n..o.\no").unwrap()
    }

    fn sample_image() -> PermutationTableau {
        PermutationTableau::parse("SWSSWWWS\n0101\n111\n001\n").unwrap()
    }

    #[test]
    fn phi_on_sample() {
        assert_eq!(phi(&sample_tree_like()), sample_image());
    }

    #[test]
    fn phi_inverse_on_sample() {
        assert_eq!(phi_inverse(&sample_image()).unwrap(), sample_tree_like());
    }

    #[test]
    fn size_one_maps_to_single_row() {
        let t = TreeLikeTableau::parse("SW\no").unwrap();
        let p = phi(&t);
        assert_eq!(p.path().to_string(), "S");
        assert_eq!(phi_inverse(&p).unwrap(), t);
        assert_eq!(corner_transfer_delta(&t), 1);
    }

    #[test]
    fn images_are_valid_and_distinct() {
        for n in 1..=6 {
            let mut seen = HashSet::new();
            for t in tree_like_tableaux(n).unwrap() {
                let p = phi(&t);
                p.validate().unwrap();
                assert_eq!(p.len(), n);
                assert_eq!(p.path().steps(), &t.path().steps()[..n]);
                assert!(seen.insert(p));
            }
        }
    }

    #[test]
    fn round_trips_both_ways() {
        for n in 1..=6 {
            for t in tree_like_tableaux(n).unwrap() {
                assert_eq!(phi_inverse(&phi(&t)).unwrap(), t);
            }
            for p in permutation_tableaux(n).unwrap() {
                assert_eq!(phi(&phi_inverse(&p).unwrap()), p);
            }
        }
    }

    #[test]
    fn corner_transfer_per_object() {
        for n in 1..=6 {
            for t in tree_like_tableaux(n).unwrap() {
                assert_eq!(
                    phi(&t).num_corners(),
                    t.path().num_corners() - corner_transfer_delta(&t)
                );
            }
        }
    }
}
