//! Triplets `(lσ, rσ, m)` and ascending runs of size 1.
//!
//! A position `k` of a permutation `σ` of `[n]` is an ascending run of size 1
//! when `σ(k-1) > σ(k) > σ(k+1)`, reading `σ(0) = n + 1` and `σ(n+1) = 0`.
//!
//! Forward direction: number the cycles `L_1, L_2, ...` of `lσ` and
//! `R_1, R_2, ...` of `rσ` by increasing maximum, each written maximum first,
//! and shift every value of `rσ` up by `n_l + 1`. Swap blocks in `m` with
//! [`m_star`], then replace `0*` by `n_l + 1`, `i*` by `L_i` and `j` by
//! `R_j`. The value `n_l + 1` ends up as a run of size 1.
//!
//! Backward direction: the marked value `v` splits the remaining letters into
//! maximal blocks of values below `v` and above `v`. Inside a block the cycle
//! starts are the left-to-right maxima, which gives back the cycles and the
//! letters of the starred word; [`m_star_inverse`] then recovers `m`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::word::{colored_words, m_star, m_star_inverse, ColoredLetter, ColoredWord};
use crate::error::{Error, Result};

/// A permutation in canonical cycle notation: every cycle starts with its
/// maximum and cycles come by increasing maximum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleForm {
    cycles: Vec<Vec<usize>>,
    size: usize,
}

impl CycleForm {
    /// Validates an already canonical cycle list.
    pub fn new(cycles: Vec<Vec<usize>>) -> Result<CycleForm> {
        let size: usize = cycles.iter().map(Vec::len).sum();
        let mut seen = vec![false; size + 1];
        let mut last_max = 0;
        for cycle in &cycles {
            let first = *cycle
                .first()
                .ok_or_else(|| Error::InvalidCycles("empty cycle".into()))?;
            for &v in cycle {
                if v == 0 || v > size || seen[v] {
                    return Err(Error::InvalidCycles(format!(
                        "values must be 1..{size}, each once (offending {v})"
                    )));
                }
                seen[v] = true;
                if v > first {
                    return Err(Error::InvalidCycles(format!(
                        "cycle starting with {first} must start with its maximum {v}"
                    )));
                }
            }
            if first <= last_max {
                return Err(Error::InvalidCycles(
                    "cycles must come by increasing maximum".into(),
                ));
            }
            last_max = first;
        }
        Ok(CycleForm { cycles, size })
    }

    pub fn empty() -> CycleForm {
        CycleForm {
            cycles: Vec::new(),
            size: 0,
        }
    }

    /// Canonical cycles of a permutation given in one-line notation.
    pub fn from_one_line(perm: &[usize]) -> Result<CycleForm> {
        check_permutation(perm)?;
        let mut done = vec![false; perm.len() + 1];
        let mut cycles = Vec::new();
        for start in 1..=perm.len() {
            if done[start] {
                continue;
            }
            let mut cycle = vec![start];
            done[start] = true;
            let mut v = perm[start - 1];
            while v != start {
                cycle.push(v);
                done[v] = true;
                v = perm[v - 1];
            }
            let top = cycle.iter().position_max().expect("non-empty");
            cycle.rotate_left(top);
            cycles.push(cycle);
        }
        cycles.sort_by_key(|c| c[0]);
        Ok(CycleForm {
            cycles,
            size: perm.len(),
        })
    }

    pub fn to_one_line(&self) -> Vec<usize> {
        let mut perm = vec![0; self.size];
        for cycle in &self.cycles {
            for (i, &v) in cycle.iter().enumerate() {
                perm[v - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        perm
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in &self.cycles {
            write!(f, "({})", cycle.iter().join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for CycleForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<CycleForm> {
        let s = s.trim();
        if s == "()" {
            return Ok(CycleForm::empty());
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| Error::InvalidCycles(format!("cannot read {rest:?}")))?;
            let cycle = inner
                .0
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::InvalidCycles(format!("bad value {t:?}")))
                })
                .collect::<Result<Vec<usize>>>()?;
            cycles.push(cycle);
            rest = inner.1.trim_start();
        }
        CycleForm::new(cycles)
    }
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len() + 1];
    for &v in perm {
        if v == 0 || v > perm.len() || seen[v] {
            return Err(Error::InvalidPermutation(format!(
                "{perm:?} is not a permutation of 1..{}",
                perm.len()
            )));
        }
        seen[v] = true;
    }
    Ok(())
}

/// `true` if position `k` (1-based) of `perm` is an ascending run of size 1.
pub fn is_run_of_size_one(perm: &[usize], k: usize) -> bool {
    let n = perm.len();
    if k == 0 || k > n {
        return false;
    }
    let before = if k == 1 { n + 1 } else { perm[k - 2] };
    let after = if k == n { 0 } else { perm[k] };
    before > perm[k - 1] && perm[k - 1] > after
}

/// A permutation with a marked ascending run of size 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedRunPermutation {
    perm: Vec<usize>,
    k: usize,
}

impl MarkedRunPermutation {
    pub fn new(perm: Vec<usize>, k: usize) -> Result<MarkedRunPermutation> {
        check_permutation(&perm)?;
        if !is_run_of_size_one(&perm, k) {
            return Err(Error::NotARunOfSizeOne { k });
        }
        Ok(MarkedRunPermutation { perm, k })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// 1-based position of the marked run.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn marked_value(&self) -> usize {
        self.perm[self.k - 1]
    }

    /// Two lines: the one-line notation, then `mark k`.
    pub fn to_text(&self) -> String {
        format!("{}\nmark {}", self.perm.iter().join(" "), self.k)
    }
}

/// A pair of permutations with a colored word whose alphabet matches their
/// cycle counts: `h` cycles on the left, `w` on the right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triplet {
    pub left: CycleForm,
    pub right: CycleForm,
    pub word: ColoredWord,
}

impl Triplet {
    pub fn new(left: CycleForm, right: CycleForm, word: ColoredWord) -> Result<Triplet> {
        if word.h() != left.num_cycles() || word.w() != right.num_cycles() {
            return Err(Error::DimensionMismatch(format!(
                "word of type ({},{}) needs {} left and {} right cycles, found {} and {}",
                word.h(),
                word.w(),
                word.h(),
                word.w(),
                left.num_cycles(),
                right.num_cycles()
            )));
        }
        Ok(Triplet { left, right, word })
    }

    /// `n_l + n_r + 1`.
    pub fn size(&self) -> usize {
        self.left.size() + self.right.size() + 1
    }

    /// Three lines: left cycles, right cycles, word.
    pub fn to_text(&self) -> String {
        format!("{}\n{}\n{}", self.left, self.right, self.word)
    }

    pub fn parse(text: &str) -> Result<Triplet> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let [l, r, m] = lines[..] else {
            return Err(Error::Parse(format!(
                "a triplet has three lines, found {}",
                lines.len()
            )));
        };
        Triplet::new(l.parse()?, r.parse()?, m.parse()?)
    }
}

pub fn triplet_words_to_run(t: &Triplet) -> Result<MarkedRunPermutation> {
    let t = Triplet::new(t.left.clone(), t.right.clone(), t.word.clone())?;
    let pivot = t.left.size() + 1;
    let starred = m_star(&t.word);
    let mut perm = Vec::with_capacity(t.size());
    let mut k = 0;
    for l in &starred.letters {
        match (l.pointed, l.value) {
            (true, 0) => {
                perm.push(pivot);
                k = perm.len();
            }
            (true, i) => perm.extend_from_slice(&t.left.cycles()[i - 1]),
            (false, j) => perm.extend(t.right.cycles()[j - 1].iter().map(|v| v + pivot)),
        }
    }
    MarkedRunPermutation::new(perm, k)
}

/// Splits a same-side block at its left-to-right maxima.
fn split_at_maxima(block: &[usize]) -> Vec<Vec<usize>> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut best = 0;
    for &v in block {
        if v > best {
            best = v;
            cycles.push(vec![v]);
        } else {
            cycles.last_mut().expect("first value is a maximum").push(v);
        }
    }
    cycles
}

pub fn run_to_triplet(p: &MarkedRunPermutation) -> Result<Triplet> {
    let pivot = p.marked_value();
    let k = p.k();
    let perm = p.perm();
    // (is_left, cycles) per block, with `None` standing for the mark.
    let mut pieces: Vec<Option<(bool, Vec<Vec<usize>>)>> = Vec::new();
    for (i, segment) in [&perm[..k - 1], &perm[k..]].into_iter().enumerate() {
        if i == 1 {
            pieces.push(None);
        }
        for block in segment.chunk_by(|a, b| (*a < pivot) == (*b < pivot)) {
            let left = block[0] < pivot;
            let values: Vec<usize> = if left {
                block.to_vec()
            } else {
                block.iter().map(|v| v - pivot).collect()
            };
            pieces.push(Some((left, split_at_maxima(&values))));
        }
    }
    let mut maxima = [Vec::new(), Vec::new()];
    for (left, cycles) in pieces.iter().flatten() {
        maxima[usize::from(*left)].extend(cycles.iter().map(|c| c[0]));
    }
    for m in &mut maxima {
        m.sort_unstable();
    }
    let rank = |left: bool, max: usize| -> usize {
        maxima[usize::from(left)]
            .binary_search(&max)
            .expect("collected above")
            + 1
    };
    let mut letters = Vec::with_capacity(maxima[0].len() + maxima[1].len() + 1);
    let mut sides: [Vec<Vec<usize>>; 2] = [Vec::new(), Vec::new()];
    for piece in &pieces {
        match piece {
            None => letters.push(ColoredLetter::ZERO),
            Some((left, cycles)) => {
                for c in cycles {
                    letters.push(ColoredLetter {
                        value: rank(*left, c[0]),
                        pointed: *left,
                    });
                    sides[usize::from(*left)].push(c.clone());
                }
            }
        }
    }
    let [mut right, mut left] = sides;
    left.sort_by_key(|c| c[0]);
    right.sort_by_key(|c| c[0]);
    let left = CycleForm::new(left)?;
    let right = CycleForm::new(right)?;
    let word = m_star_inverse(&letters, left.num_cycles(), right.num_cycles())?;
    Triplet::new(left, right, word)
}

/// Permutations of `[m]` in lexicographic one-line order.
pub fn permutations(m: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=m).permutations(m)
}

/// Every triplet of total size `n`, grouped by `n_l` and then in
/// lexicographic order of the two permutations and the word.
pub fn all_triplets(n: usize) -> Vec<Triplet> {
    let cycle_forms = |m: usize| -> Vec<CycleForm> {
        permutations(m)
            .map(|p| CycleForm::from_one_line(&p).expect("generated permutation"))
            .collect()
    };
    let mut words: HashMap<(usize, usize), Vec<ColoredWord>> = HashMap::new();
    let mut out = Vec::new();
    for n_l in 0..n {
        let lefts = cycle_forms(n_l);
        let rights = cycle_forms(n - 1 - n_l);
        for l in &lefts {
            for r in &rights {
                let ws = words
                    .entry((l.num_cycles(), r.num_cycles()))
                    .or_insert_with(|| colored_words(l.num_cycles(), r.num_cycles()));
                for m in ws.iter() {
                    out.push(Triplet {
                        left: l.clone(),
                        right: r.clone(),
                        word: m.clone(),
                    });
                }
            }
        }
    }
    out
}
