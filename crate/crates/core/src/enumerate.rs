//! Exhaustive generation of tree-like tableaux, permutation tableaux and
//! non-ambiguous trees.
//!
//! Canonical order: border paths first, lexicographically with `S < W`;
//! then fillings, lexicographically on the row-major cell sequence with
//! "empty" (or `0`) before "point" (or `1`). Each filling is found by a
//! row-major backtracking search that checks the defining rules as soon as
//! a cell is decided:
//!
//! * tree-like: a new point needs exactly one of a point above it or a point
//!   to its left; a row may not end empty; a column may not end empty.
//! * permutation: a `0` may not have both a `1` above and a `1` to its left;
//!   a column may not end without a `1`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::path::{BorderPath, Step};
use crate::tableau::{NonAmbiguousTree, PermutationTableau, TreeLikeTableau};

/// Largest size accepted by the generators.
pub const MAX_SIZE: usize = 40;

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("size must be at least 1".into()));
    }
    if n > MAX_SIZE {
        return Err(Error::OutOfRange(format!("size {n} exceeds {MAX_SIZE}")));
    }
    Ok(())
}

/// `first`, then `free` steps read from `bits` (most significant first),
/// then `last`.
fn path_from_bits(first: Step, bits: u64, free: usize, last: Option<Step>) -> BorderPath {
    let mut steps = Vec::with_capacity(free + 2);
    steps.push(first);
    for j in (0..free).rev() {
        steps.push(if bits >> j & 1 == 0 {
            Step::South
        } else {
            Step::West
        });
    }
    steps.extend(last);
    BorderPath::new(steps).expect("generated paths are non-empty")
}

/// Border paths of tree-like tableaux of size `n`: length `n + 1`, first
/// step south, last step west.
pub fn tree_like_paths(n: usize) -> Result<impl Iterator<Item = BorderPath>> {
    check_size(n)?;
    let free = n - 1;
    Ok(
        (0..1u64 << free)
            .map(move |bits| path_from_bits(Step::South, bits, free, Some(Step::West))),
    )
}

/// Border paths of permutation tableaux of length `n`: first step south.
pub fn permutation_paths(n: usize) -> Result<impl Iterator<Item = BorderPath>> {
    check_size(n)?;
    let free = n - 1;
    Ok((0..1u64 << free).map(move |bits| path_from_bits(Step::South, bits, free, None)))
}

struct Search<'a> {
    path: &'a BorderPath,
    rows: Vec<u64>,
    out: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn new(path: &BorderPath) -> Search<'_> {
        Search {
            path,
            rows: vec![0; path.num_rows()],
            out: Vec::new(),
        }
    }

    /// `above` is the union of the rows strictly above `r`.
    fn tree_like(&mut self, r: usize, c: usize, above: u64) {
        let path = self.path;
        if r == path.num_rows() {
            self.out.push(self.rows.clone());
            return;
        }
        let len = path.row_len(r);
        if c == len {
            let next = above | self.rows[r];
            self.tree_like(r + 1, 0, next);
            return;
        }
        let b = 1u64 << c;
        let root = r == 0 && c == 0;
        let column_ends = path.col_height(c) == r + 1;
        let row_ends = c + 1 == len;

        let may_stay_empty =
            !root && !(column_ends && above & b == 0) && !(row_ends && self.rows[r] == 0);
        if may_stay_empty {
            self.tree_like(r, c + 1, above);
        }

        let has_above = above & b != 0;
        let has_left = self.rows[r] & (b - 1) != 0;
        if root || has_above != has_left {
            self.rows[r] |= b;
            self.tree_like(r, c + 1, above);
            self.rows[r] &= !b;
        }
    }

    fn permutation(&mut self, r: usize, c: usize, above: u64) {
        let path = self.path;
        if r == path.num_rows() {
            self.out.push(self.rows.clone());
            return;
        }
        let len = path.row_len(r);
        if c == len {
            let next = above | self.rows[r];
            self.permutation(r + 1, 0, next);
            return;
        }
        let b = 1u64 << c;
        let column_ends = path.col_height(c) == r + 1;
        let forbidden_zero = above & b != 0 && self.rows[r] & (b - 1) != 0;
        if !forbidden_zero && !(column_ends && above & b == 0) {
            self.permutation(r, c + 1, above);
        }
        self.rows[r] |= b;
        self.permutation(r, c + 1, above);
        self.rows[r] &= !b;
    }
}

/// All tree-like fillings of one diagram, in canonical order.
pub fn tree_like_fillings(path: &Arc<BorderPath>) -> Vec<TreeLikeTableau> {
    if !path.first_south_last_west() {
        return Vec::new();
    }
    let mut search = Search::new(path);
    search.tree_like(0, 0, 0);
    search
        .out
        .into_iter()
        .map(|rows| TreeLikeTableau::from_rows_unchecked(path.clone(), rows))
        .collect()
}

/// All permutation-tableau fillings of one diagram, in canonical order.
pub fn permutation_fillings(path: &Arc<BorderPath>) -> Vec<PermutationTableau> {
    if path.steps()[0] != Step::South {
        return Vec::new();
    }
    let mut search = Search::new(path);
    search.permutation(0, 0, 0);
    search
        .out
        .into_iter()
        .map(|rows| PermutationTableau::from_rows_unchecked(path.clone(), rows))
        .collect()
}

/// Every tree-like tableau of size `n`, once, in canonical order.
pub fn tree_like_tableaux(n: usize) -> Result<impl Iterator<Item = TreeLikeTableau>> {
    Ok(tree_like_paths(n)?.flat_map(|p| tree_like_fillings(&Arc::new(p))))
}

/// Every permutation tableau of length `n`, once, in canonical order.
pub fn permutation_tableaux(n: usize) -> Result<impl Iterator<Item = PermutationTableau>> {
    Ok(permutation_paths(n)?.flat_map(|p| permutation_fillings(&Arc::new(p))))
}

/// Every non-ambiguous tree of height `h` and width `w`, in canonical order.
pub fn non_ambiguous_trees(h: usize, w: usize) -> Result<Vec<NonAmbiguousTree>> {
    check_size(h + w + 1)?;
    let path = Arc::new(BorderPath::rectangle(h + 1, w + 1)?);
    Ok(tree_like_fillings(&path)
        .into_iter()
        .map(|t| NonAmbiguousTree::new(t).expect("rectangular path"))
        .collect())
}

/// Same stream as [`tree_like_tableaux`], materialized with one parallel
/// task per border path. The result does not depend on the thread count.
pub fn par_tree_like_tableaux(n: usize) -> Result<Vec<TreeLikeTableau>> {
    let paths: Vec<_> = tree_like_paths(n)?.map(Arc::new).collect();
    Ok(paths.par_iter().flat_map_iter(tree_like_fillings).collect())
}

/// Folds `visit` over every tableau of size `n` in parallel and combines
/// the per-path accumulators with `combine`. `combine` must be associative;
/// the combination order is fixed by the path order.
pub fn par_fold_tree_like<A, I, V, C>(n: usize, init: I, visit: V, combine: C) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &TreeLikeTableau) + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    let paths: Vec<_> = tree_like_paths(n)?.map(Arc::new).collect();
    Ok(paths
        .par_iter()
        .map(|p| {
            let mut acc = init();
            for t in tree_like_fillings(p) {
                visit(&mut acc, &t);
            }
            acc
        })
        .reduce(&init, &combine))
}

/// Parallel fold over permutation tableaux of length `n`.
pub fn par_fold_permutation<A, I, V, C>(n: usize, init: I, visit: V, combine: C) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &PermutationTableau) + Sync + Send,
    C: Fn(A, A) -> A + Sync + Send,
{
    let paths: Vec<_> = permutation_paths(n)?.map(Arc::new).collect();
    Ok(paths
        .par_iter()
        .map(|p| {
            let mut acc = init();
            for t in permutation_fillings(p) {
                visit(&mut acc, &t);
            }
            acc
        })
        .reduce(&init, &combine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Cell;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn sizes_are_validated() {
        assert!(tree_like_tableaux(0).is_err());
        assert!(permutation_tableaux(0).is_err());
    }

    #[test]
    fn tree_like_counts_are_factorials() {
        assert_eq!(tree_like_tableaux(1).unwrap().count(), 1);
        assert_eq!(tree_like_tableaux(3).unwrap().count(), 6);
        for n in 1..=7 {
            assert_eq!(
                tree_like_tableaux(n).unwrap().count(),
                factorial(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn size_eight_has_40320_tableaux() {
        assert_eq!(tree_like_tableaux(8).unwrap().count(), 40320);
        assert_eq!(permutation_tableaux(8).unwrap().count(), 40320);
    }

    #[test]
    fn permutation_counts_are_factorials() {
        let only = permutation_tableaux(1).unwrap().collect::<Vec<_>>();
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].path().to_string(), "S");
        for n in 1..=7 {
            assert_eq!(
                permutation_tableaux(n).unwrap().count(),
                factorial(n),
                "n={n}"
            );
        }
    }

    /// All 0/1 fillings of every path, filtered by the definition.
    fn brute_force_permutation_tableaux(n: usize) -> Vec<PermutationTableau> {
        let mut out = Vec::new();
        for path in permutation_paths(n).unwrap() {
            let cells: Vec<(usize, usize)> = (0..path.num_rows())
                .flat_map(|r| (0..path.row_len(r)).map(move |c| (r, c)))
                .collect();
            let path = Arc::new(path);
            for bits in 0..1u64 << cells.len() {
                let mut rows = vec![0u64; path.num_rows()];
                for (k, &(r, c)) in cells.iter().enumerate() {
                    if bits >> k & 1 == 1 {
                        rows[r] |= 1 << c;
                    }
                }
                if let Ok(t) = PermutationTableau::from_rows(path.clone(), rows) {
                    out.push(t);
                }
            }
        }
        out
    }

    #[test]
    fn permutation_search_matches_brute_force() {
        for n in 1..=5 {
            let mut brute = brute_force_permutation_tableaux(n);
            let mut fast: Vec<_> = permutation_tableaux(n).unwrap().collect();
            brute.sort();
            fast.sort();
            assert_eq!(brute, fast, "n={n}");
        }
        assert_eq!(brute_force_permutation_tableaux(3).len(), 6);
    }

    #[test]
    fn size_eight_image_is_generated() {
        let image = PermutationTableau::parse("SWSSWWWS\n0101\n111\n001\n").unwrap();
        assert!(permutation_tableaux(8).unwrap().any(|t| t == image));
    }

    #[test]
    fn generated_objects_revalidate() {
        for n in 1..=6 {
            for t in tree_like_tableaux(n).unwrap() {
                t.validate().unwrap();
                assert_eq!(t.path().len(), n + 1);
                assert_eq!(t.size(), n);
            }
            for p in permutation_tableaux(n).unwrap() {
                p.validate().unwrap();
            }
        }
    }

    #[test]
    fn order_is_canonical_and_parallel_stable() {
        let seq: Vec<_> = tree_like_tableaux(6).unwrap().collect();
        let keys: Vec<(String, Vec<bool>)> = seq
            .iter()
            .map(|t| {
                let cells = (0..t.path().num_rows())
                    .flat_map(|r| (0..t.path().row_len(r)).map(move |c| (r, c)))
                    .map(|(r, c)| t.has_point(r, c))
                    .collect();
                (t.path().to_string(), cells)
            })
            .collect();
        // 'S' < 'W' as characters, false < true as bits.
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(par_tree_like_tableaux(6).unwrap(), seq);
    }

    #[test]
    fn small_non_ambiguous_trees() {
        assert_eq!(non_ambiguous_trees(0, 0).unwrap().len(), 1);
        assert_eq!(non_ambiguous_trees(0, 2).unwrap().len(), 1);
        assert_eq!(non_ambiguous_trees(1, 1).unwrap().len(), 3);
        let row = &non_ambiguous_trees(0, 2).unwrap()[0];
        assert_eq!(row.tableau().dots().len(), 3);
        assert!(row.tableau().has_dot(Cell::new(1, 2)));
    }

    #[test]
    fn occupied_corners_total_factorial() {
        for n in 1..=7 {
            let total: usize = tree_like_tableaux(n)
                .unwrap()
                .map(|t| t.stats().occupied_corners)
                .sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn parallel_fold_matches_sequential() {
        let seq: usize = tree_like_tableaux(7)
            .unwrap()
            .map(|t| t.stats().corners)
            .sum();
        let par =
            par_fold_tree_like(7, || 0usize, |a, t| *a += t.stats().corners, |a, b| a + b).unwrap();
        assert_eq!(seq, par);
    }
}
