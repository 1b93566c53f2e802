//! Corners of tree-like tableaux and ascending runs of size 1.
//!
//! The map cuts a tableau at a corner and turns the three pieces into a
//! triplet, which [`triplet_words_to_run`] sends to a marked permutation.
//! The pieces are matched with permutations and words by rank:
//!
//! * tree-like tableaux of size `m` with `k` points in their first row, in
//!   canonical order, pair up with permutations of `[m]` with `k` cycles, in
//!   lexicographic order. The left piece uses this directly; the right piece
//!   goes through its transpose, so its first column counts the cycles.
//! * non-ambiguous trees of height `h` and width `w`, in canonical order,
//!   pair up with colored words of type `(h, w)`, in lexicographic order. The
//!   transposed tree of the cut is used, so that the word has one pointed
//!   letter per left cycle and one unpointed letter per right cycle.
//!
//! Both pairings are between equinumerous classes, so the composite is a
//! bijection from (tableau, corner) pairs of size `n` onto marked runs of
//! size 1 in permutations of `[n]`.

use std::collections::{BTreeMap, HashMap};

use super::cut::{cut_at_corner, glue, Cut};
use super::run::{permutations, run_to_triplet, triplet_words_to_run};
use super::run::{CycleForm, MarkedRunPermutation, Triplet};
use super::word::{colored_words, ColoredWord};
use crate::enumerate::{non_ambiguous_trees, tree_like_tableaux};
use crate::error::{Error, Result};
use crate::path::Cell;
use crate::tableau::{NonAmbiguousTree, TreeLikeTableau};

/// Lookup tables for every tableau size up to `max_n`.
#[derive(Debug, Clone)]
pub struct CornerRunBijection {
    max_n: usize,
    to_cycles: HashMap<TreeLikeTableau, CycleForm>,
    from_cycles: HashMap<CycleForm, TreeLikeTableau>,
    to_word: HashMap<NonAmbiguousTree, ColoredWord>,
    from_word: HashMap<ColoredWord, NonAmbiguousTree>,
}

/// Pairs keys and values class by class, both in iteration order.
fn pair_up<K, V, A>(
    keys: impl Iterator<Item = K>,
    values: impl Iterator<Item = V>,
    class_k: impl Fn(&K) -> A,
    class_v: impl Fn(&V) -> A,
    what: &str,
) -> Result<Vec<(K, V)>>
where
    A: Ord + std::fmt::Debug,
{
    let mut ks: BTreeMap<A, Vec<K>> = BTreeMap::new();
    for k in keys {
        ks.entry(class_k(&k)).or_default().push(k);
    }
    let mut vs: BTreeMap<A, Vec<V>> = BTreeMap::new();
    for v in values {
        vs.entry(class_v(&v)).or_default().push(v);
    }
    let mut out = Vec::new();
    for (class, kk) in ks {
        let vv = vs.remove(&class).unwrap_or_default();
        if vv.len() != kk.len() {
            return Err(Error::MissingTable(format!(
                "{what} class {class:?}: {} objects against {}",
                kk.len(),
                vv.len()
            )));
        }
        out.extend(kk.into_iter().zip(vv));
    }
    if let Some((class, _)) = vs.into_iter().next() {
        return Err(Error::MissingTable(format!(
            "{what} class {class:?} has no objects"
        )));
    }
    Ok(out)
}

impl CornerRunBijection {
    pub fn new(max_n: usize) -> Result<CornerRunBijection> {
        if max_n == 0 {
            return Err(Error::OutOfRange("size must be at least 1".into()));
        }
        let mut to_cycles = HashMap::new();
        let mut from_cycles = HashMap::new();
        for m in 1..max_n {
            let pairs = pair_up(
                tree_like_tableaux(m)?,
                permutations(m).map(|p| CycleForm::from_one_line(&p).expect("permutation")),
                |t| t.first_row_points(),
                |c| c.num_cycles(),
                "tableau/permutation",
            )?;
            for (t, c) in pairs {
                from_cycles.insert(c.clone(), t.clone());
                to_cycles.insert(t, c);
            }
        }
        let mut to_word = HashMap::new();
        let mut from_word = HashMap::new();
        for h in 0..max_n {
            for w in 0..max_n - h {
                let nats = non_ambiguous_trees(h, w)?;
                let words = colored_words(h, w);
                if nats.len() != words.len() {
                    return Err(Error::MissingTable(format!(
                        "{} trees of height {h} and width {w} against {} words",
                        nats.len(),
                        words.len()
                    )));
                }
                for (nat, word) in nats.into_iter().zip(words) {
                    from_word.insert(word.clone(), nat.clone());
                    to_word.insert(nat, word);
                }
            }
        }
        Ok(CornerRunBijection {
            max_n,
            to_cycles,
            from_cycles,
            to_word,
            from_word,
        })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::MissingTable(format!(
                "size {n} exceeds the tables built for {}",
                self.max_n
            )));
        }
        Ok(())
    }

    fn cycles_of(&self, t: Option<&TreeLikeTableau>) -> Result<CycleForm> {
        match t {
            None => Ok(CycleForm::empty()),
            Some(t) => self
                .to_cycles
                .get(t)
                .cloned()
                .ok_or_else(|| Error::MissingTable(format!("tableau of size {}", t.size()))),
        }
    }

    fn tableau_of(&self, c: &CycleForm) -> Result<Option<TreeLikeTableau>> {
        if c.size() == 0 {
            return Ok(None);
        }
        self.from_cycles
            .get(c)
            .cloned()
            .map(Some)
            .ok_or_else(|| Error::MissingTable(format!("permutation {c}")))
    }

    pub fn cut_to_triplet(&self, cut: &Cut) -> Result<Triplet> {
        let left = self.cycles_of(cut.left.as_ref())?;
        let right = self.cycles_of(cut.right.as_ref().map(|t| t.transpose()).as_ref())?;
        let word = self
            .to_word
            .get(&cut.nat.transpose())
            .cloned()
            .ok_or_else(|| Error::MissingTable("non-ambiguous tree".into()))?;
        Triplet::new(left, right, word)
    }

    pub fn triplet_to_cut(&self, t: &Triplet) -> Result<Cut> {
        self.check_size(t.size())?;
        let left = self.tableau_of(&t.left)?;
        let right = self.tableau_of(&t.right)?.map(|r| r.transpose());
        let nat = self
            .from_word
            .get(&t.word)
            .ok_or_else(|| Error::MissingTable(format!("word {}", t.word)))?
            .transpose();
        Ok(Cut { left, right, nat })
    }

    pub fn corner_to_run(&self, t: &TreeLikeTableau, corner: Cell) -> Result<MarkedRunPermutation> {
        self.check_size(t.size())?;
        let cut = cut_at_corner(t, corner)?;
        triplet_words_to_run(&self.cut_to_triplet(&cut)?)
    }

    pub fn run_to_corner(&self, p: &MarkedRunPermutation) -> Result<(TreeLikeTableau, Cell)> {
        self.check_size(p.perm().len())?;
        let triplet = run_to_triplet(p)?;
        glue(&self.triplet_to_cut(&triplet)?)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::bijection::run::is_run_of_size_one;

    #[test]
    fn size_one() {
        let b = CornerRunBijection::new(1).unwrap();
        let t = TreeLikeTableau::parse("SW\no").unwrap();
        let p = b.corner_to_run(&t, Cell::new(1, 2)).unwrap();
        assert_eq!((p.perm(), p.k()), (&[1][..], 1));
        assert_eq!(b.run_to_corner(&p).unwrap(), (t, Cell::new(1, 2)));
    }

    #[test]
    fn bijective_up_to_six() {
        let b = CornerRunBijection::new(6).unwrap();
        for n in 1..=6 {
            let mut images = HashSet::new();
            for t in tree_like_tableaux(n).unwrap() {
                for corner in t.path().corners() {
                    let p = b.corner_to_run(&t, corner).unwrap();
                    assert_eq!(b.run_to_corner(&p).unwrap(), (t.clone(), corner));
                    assert!(images.insert(p));
                }
            }
            let runs: usize = permutations(n)
                .map(|p| (1..=n).filter(|&k| is_run_of_size_one(&p, k)).count())
                .sum();
            assert_eq!(images.len(), runs);
        }
    }

    #[test]
    fn reverse_permutation_has_three_preimages() {
        let b = CornerRunBijection::new(3).unwrap();
        for k in 1..=3 {
            let p = MarkedRunPermutation::new(vec![3, 2, 1], k).unwrap();
            let (t, corner) = b.run_to_corner(&p).unwrap();
            assert_eq!(b.corner_to_run(&t, corner).unwrap(), p);
        }
    }

    #[test]
    fn sizes_beyond_the_tables_are_refused() {
        let b = CornerRunBijection::new(2).unwrap();
        let p = MarkedRunPermutation::new(vec![3, 2, 1], 1).unwrap();
        assert!(matches!(b.run_to_corner(&p), Err(Error::MissingTable(_))));
    }
}
