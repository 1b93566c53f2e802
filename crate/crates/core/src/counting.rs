//! Closed-form counts, permutation statistics and brute-force oracles.
//!
//! Ascents and descents are attached to values: `π_i` is a descent when
//! `π_i > π_{i+1}` and an ascent otherwise, where `π_{n+1} = n + 1`. With
//! that convention `n` is an ascent exactly when it sits in the last
//! position.
//!
//! Every closed form is evaluated in checked `u64` arithmetic and returns
//! [`Error::Overflow`] instead of wrapping.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::phi::corner_transfer_delta;
use crate::enumerate::{par_fold_permutation, par_fold_tree_like};
use crate::error::{Error, Result};
use crate::path::Step;

/// A permutation of `[n]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Permutation> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{one_line:?} is not a permutation of 1..{n}"
                )));
            }
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation((1..=n).collect())
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(ascent values, descent values)`; together they partition `[n]`.
    pub fn ascents_descents(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let n = self.len();
        let mut asc = BTreeSet::new();
        let mut desc = BTreeSet::new();
        for i in 0..n {
            let next = self.0.get(i + 1).copied().unwrap_or(n + 1);
            if self.0[i] > next {
                desc.insert(self.0[i]);
            } else {
                asc.insert(self.0[i]);
            }
        }
        (asc, desc)
    }

    fn is_ascent_value(&self, positions: &[usize], v: usize) -> bool {
        let i = positions[v];
        self.0.get(i + 1).is_none_or(|&next| v < next)
    }

    /// Maximal ascending runs as `(start, length)`, 1-based starts.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.len() {
            if i == self.len() || self.0[i] < self.0[i - 1] {
                out.push((start + 1, i - start));
                start = i;
            }
        }
        out
    }

    /// Positions (1-based) of ascending runs of size 1.
    pub fn runs_of_size_one(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&k| crate::bijection::is_run_of_size_one(&self.0, k))
            .collect()
    }

    pub fn num_cycles(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut cycles = 0;
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i] - 1;
            }
        }
        cycles
    }

    /// `Σ max(π_i - i, 0)`.
    pub fn positive_displacement(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &v)| v.saturating_sub(i + 1))
            .sum()
    }

    /// Positions `i` with `π_i > π_{i+1} > π_{i+2}`.
    pub fn double_descents(&self) -> usize {
        self.0
            .windows(3)
            .filter(|w| w[0] > w[1] && w[1] > w[2])
            .count()
    }

    /// Positions `i` with `π_i > i`.
    pub fn excedances(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, &v)| v > i + 1)
            .count()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// Largest `n` for which the brute-force permutation oracles will run.
pub const MAX_BRUTE_FORCE: usize = 12;

fn check_brute(n: usize) -> Result<()> {
    if n == 0 || n > MAX_BRUTE_FORCE {
        return Err(Error::OutOfRange(format!(
            "brute force needs 1 <= n <= {MAX_BRUTE_FORCE}, got {n}"
        )));
    }
    Ok(())
}

/// All permutations of `[n]` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n).permutations(n).map(Permutation)
}

/// Parallel sum of `f` over all permutations of `[n]`, sharded by the first
/// letter.
fn par_sum_permutations<F>(n: usize, f: F) -> Result<u64>
where
    F: Fn(&Permutation) -> u64 + Sync,
{
    check_brute(n)?;
    Ok((1..=n)
        .into_par_iter()
        .map(|first| {
            let rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
            rest.iter()
                .copied()
                .permutations(n - 1)
                .map(|tail| {
                    let mut p = Vec::with_capacity(n);
                    p.push(first);
                    p.extend(tail);
                    f(&Permutation(p))
                })
                .sum::<u64>()
        })
        .sum())
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    Ok(())
}

pub fn factorial(n: usize) -> Result<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| {
        acc.checked_mul(k).ok_or(Error::Overflow("factorial"))
    })
}

pub fn binomial(n: usize, k: usize) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = 1u64;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step.
        acc = acc.checked_mul(n - i).ok_or(Error::Overflow("binomial"))? / (i + 1);
    }
    Ok(acc)
}

fn mul(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn exact_div(a: u64, b: u64) -> u64 {
    assert_eq!(a % b, 0, "{a} is not divisible by {b}");
    a / b
}

/// Corners over all permutation tableaux of length `n`:
/// `(n-1)! (n² + 4n - 6) / 6`, and `0` for `n = 1`.
pub fn c_pt(n: usize) -> Result<u64> {
    check_n(n)?;
    if n == 1 {
        return Ok(0);
    }
    let f = factorial(n - 1)?;
    let n = n as u64;
    let poly = n * n + 4 * n - 6;
    Ok(exact_div(mul(f, poly, "c_pt")?, 6))
}

/// Corners over all tree-like tableaux of size `n`: `n! (n + 4) / 6`, and
/// `1` for `n = 1`.
pub fn c_tlt(n: usize) -> Result<u64> {
    check_n(n)?;
    if n == 1 {
        return Ok(1);
    }
    Ok(exact_div(mul(factorial(n)?, n as u64 + 4, "c_tlt")?, 6))
}

/// Occupied corners over all tree-like tableaux of size `n`: `n!`.
pub fn occ(n: usize) -> Result<u64> {
    check_n(n)?;
    factorial(n)
}

/// Non-occupied corners: `n! (n - 2) / 6`, and `0` for `n <= 2`.
pub fn noc(n: usize) -> Result<u64> {
    check_n(n)?;
    if n <= 2 {
        return Ok(0);
    }
    Ok(exact_div(mul(factorial(n)?, n as u64 - 2, "noc")?, 6))
}

/// Ascending runs of size 1 over all permutations of `[n]`:
/// `[2 C(n,2) + C(n,3)] (n-2)!`, and `1` for `n = 1`.
pub fn runs1_total(n: usize) -> Result<u64> {
    check_n(n)?;
    if n == 1 {
        return Ok(1);
    }
    let b = mul(2, binomial(n, 2)?, "runs1_total")?
        .checked_add(binomial(n, 3)?)
        .ok_or(Error::Overflow("runs1_total"))?;
    mul(b, factorial(n - 2)?, "runs1_total")
}

/// `(n-1)!`, the number of permutation tableaux of length `n` whose border
/// edge `n` is a south step.
pub fn xn_count(n: usize) -> Result<u64> {
    check_n(n)?;
    factorial(n - 1)
}

fn check_bi(n: usize, i: usize) -> Result<()> {
    if n < 2 || i == 0 || i >= n {
        return Err(Error::OutOfRange(format!(
            "need n >= 2 and 1 <= i < n, got n = {n}, i = {i}"
        )));
    }
    Ok(())
}

/// Three-case count of permutations where `i` is an ascent and `i + 1` a
/// descent: `(i-1)(n-2)! + (n-i)(n-2)! + (n-i)(i-1)(n-2)!`.
pub fn formula_bi(n: usize, i: usize) -> Result<u64> {
    check_bi(n, i)?;
    let f = factorial(n - 2)?;
    let (a, b) = ((i - 1) as u64, (n - i) as u64);
    let cases = a + b + mul(a, b, "formula_bi")?;
    mul(cases, f, "formula_bi")
}

/// Brute-force count of permutations of `[n]` in which `i` is an ascent and
/// `i + 1` is a descent.
pub fn count_bi(n: usize, i: usize) -> Result<u64> {
    check_bi(n, i)?;
    par_sum_permutations(n, |p| {
        let pos = positions(p);
        u64::from(p.is_ascent_value(&pos, i) && !p.is_ascent_value(&pos, i + 1))
    })
}

fn positions(p: &Permutation) -> Vec<usize> {
    let mut pos = vec![0; p.len() + 1];
    for (i, &v) in p.one_line().iter().enumerate() {
        pos[v] = i;
    }
    pos
}

/// `#{(π, i) : i ascent, i + 1 descent}` by brute force.
pub fn ascent_descent_pairs(n: usize) -> Result<u64> {
    par_sum_permutations(n, |p| {
        let pos = positions(p);
        (1..p.len())
            .filter(|&i| p.is_ascent_value(&pos, i) && !p.is_ascent_value(&pos, i + 1))
            .count() as u64
    })
}

/// Runs of size 1 over all permutations of `[n]`, by brute force.
pub fn runs1_brute(n: usize) -> Result<u64> {
    par_sum_permutations(n, |p| p.runs_of_size_one().len() as u64)
}

pub fn displacement_sum(n: usize) -> Result<u64> {
    par_sum_permutations(n, |p| p.positive_displacement() as u64)
}

pub fn double_descent_total(n: usize) -> Result<u64> {
    par_sum_permutations(n, |p| p.double_descents() as u64)
}

pub fn excedance_total(n: usize) -> Result<u64> {
    par_sum_permutations(n, |p| p.excedances() as u64)
}

/// Scans permutation tableaux of length `n` for those whose border edge
/// `n` is a south step.
pub fn xn_oracle(n: usize) -> Result<u64> {
    par_fold_permutation(
        n,
        || 0u64,
        |acc, p| *acc += u64::from(p.path().step(n) == Some(Step::South)),
        |a, b| a + b,
    )
}

/// Corners over all permutation tableaux of length `n`, by enumeration.
pub fn pt_corner_total(n: usize) -> Result<u64> {
    par_fold_permutation(
        n,
        || 0u64,
        |acc, p| *acc += p.num_corners() as u64,
        |a, b| a + b,
    )
}

/// Unsigned Stirling numbers of the first kind `c(n, k)` for `k = 0..=n`,
/// from `c(n, k) = c(n-1, k-1) + (n-1) c(n-1, k)`.
pub fn stirling_first_row(n: usize) -> Result<Vec<u64>> {
    let mut row = vec![1u64];
    for m in 1..=n {
        let mut next = vec![0u64; m + 1];
        for k in 1..=m {
            let carry = row.get(k).copied().unwrap_or(0);
            next[k] = mul(carry, (m - 1) as u64, "stirling")?
                .checked_add(row[k - 1])
                .ok_or(Error::Overflow("stirling"))?;
        }
        row = next;
    }
    Ok(row)
}

/// Number of permutations of `[n]` with `k` cycles, for each `k >= 1`,
/// by brute-force cycle counting.
pub fn cycle_distribution(n: usize) -> Result<BTreeMap<usize, u64>> {
    check_brute(n)?;
    let mut out = BTreeMap::new();
    for p in permutations(n) {
        *out.entry(p.num_cycles()).or_insert(0) += 1;
    }
    Ok(out)
}

/// Per-size totals gathered in one pass over the tree-like tableaux.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TreeLikeTotals {
    pub tableaux: u64,
    pub corners: u64,
    pub occupied: u64,
    pub non_occupied: u64,
    /// `Σ [edge n is a south step]`.
    pub transfer: u64,
    /// Number of tableaux by points in the first column.
    pub first_column: BTreeMap<usize, u64>,
}

impl TreeLikeTotals {
    fn merge(mut self, other: TreeLikeTotals) -> TreeLikeTotals {
        self.tableaux += other.tableaux;
        self.corners += other.corners;
        self.occupied += other.occupied;
        self.non_occupied += other.non_occupied;
        self.transfer += other.transfer;
        for (k, v) in other.first_column {
            *self.first_column.entry(k).or_insert(0) += v;
        }
        self
    }
}

pub fn tree_like_totals(n: usize) -> Result<TreeLikeTotals> {
    par_fold_tree_like(
        n,
        TreeLikeTotals::default,
        |acc, t| {
            let s = t.stats();
            acc.tableaux += 1;
            acc.corners += s.corners as u64;
            acc.occupied += s.occupied_corners as u64;
            acc.non_occupied += s.non_occupied_corners as u64;
            acc.transfer += corner_transfer_delta(t) as u64;
            *acc.first_column.entry(s.first_column_points).or_insert(0) += 1;
        },
        TreeLikeTotals::merge,
    )
}

/// The three quantities that are claimed to match `noc(n + 1)`, side by
/// side. Only the displacement sum is known to agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisplacementReport {
    pub n: usize,
    pub noc_next: u64,
    pub displacement: u64,
    /// Over permutations of `[n - 1]`.
    pub double_descents_prev: u64,
    /// Over permutations of `[n + 1]`; this one does agree.
    pub double_descents_next: u64,
    pub excedances: u64,
}

pub fn displacement_report(n: usize) -> Result<DisplacementReport> {
    Ok(DisplacementReport {
        n,
        noc_next: noc(n + 1)?,
        displacement: displacement_sum(n)?,
        double_descents_prev: if n >= 2 {
            double_descent_total(n - 1)?
        } else {
            0
        },
        double_descents_next: double_descent_total(n + 1)?,
        excedances: excedance_total(n)?,
    })
}
