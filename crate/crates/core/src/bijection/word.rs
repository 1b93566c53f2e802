//! Colored words.
//!
//! A colored word of type `(h, w)` is an arrangement of the pointed letters
//! `0*, 1*, ..., h*` and the unpointed letters `1, ..., w` that ends with a
//! pointed letter and in which any two adjacent letters of the same color
//! increase. Valid words of type `(h, w)` are equinumerous with
//! non-ambiguous trees of height `h` and width `w`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Ordered by value, then unpointed before pointed: `0* < 1 < 1* < 2 < ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredLetter {
    pub value: usize,
    pub pointed: bool,
}

impl ColoredLetter {
    pub fn pointed(value: usize) -> ColoredLetter {
        ColoredLetter {
            value,
            pointed: true,
        }
    }

    pub fn unpointed(value: usize) -> ColoredLetter {
        ColoredLetter {
            value,
            pointed: false,
        }
    }

    pub const ZERO: ColoredLetter = ColoredLetter {
        value: 0,
        pointed: true,
    };
}

impl fmt::Display for ColoredLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pointed {
            write!(f, "{}*", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl FromStr for ColoredLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<ColoredLetter> {
        let (digits, pointed) = match s.strip_suffix('*') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let value = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad letter {s:?}")))?;
        Ok(ColoredLetter { value, pointed })
    }
}

fn parse_letters(text: &str) -> Result<Vec<ColoredLetter>> {
    text.split_whitespace().map(str::parse).collect()
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[ColoredLetter]) -> fmt::Result {
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// Checks that `letters` uses every letter of the `(h, w)` alphabet once.
fn check_alphabet(letters: &[ColoredLetter], h: usize, w: usize) -> Result<()> {
    if letters.len() != h + w + 1 {
        return Err(Error::InvalidWord(format!(
            "an ({h},{w}) word has {} letters, found {}",
            h + w + 1,
            letters.len()
        )));
    }
    let mut seen_p = vec![false; h + 1];
    let mut seen_u = vec![false; w + 1];
    for l in letters {
        let slot = if l.pointed {
            seen_p.get_mut(l.value)
        } else if l.value >= 1 {
            seen_u.get_mut(l.value)
        } else {
            None
        };
        match slot {
            Some(s) if !*s => *s = true,
            Some(_) => return Err(Error::InvalidWord(format!("letter {l} repeated"))),
            None => {
                return Err(Error::InvalidWord(format!(
                    "letter {l} is outside the ({h},{w}) alphabet"
                )))
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredWord {
    letters: Vec<ColoredLetter>,
    h: usize,
    w: usize,
}

impl ColoredWord {
    pub fn new(letters: Vec<ColoredLetter>, h: usize, w: usize) -> Result<ColoredWord> {
        check_alphabet(&letters, h, w)?;
        if !letters.last().is_some_and(|l| l.pointed) {
            return Err(Error::InvalidWord("the last letter must be pointed".into()));
        }
        if let Some(pair) = letters
            .windows(2)
            .find(|p| p[0].pointed == p[1].pointed && p[0].value > p[1].value)
        {
            return Err(Error::InvalidWord(format!(
                "adjacent letters {} {} of the same color decrease",
                pair[0], pair[1]
            )));
        }
        Ok(ColoredWord { letters, h, w })
    }

    /// Reads a word, taking the alphabet from the letters present.
    pub fn parse(text: &str) -> Result<ColoredWord> {
        let letters = parse_letters(text)?;
        let pointed = letters.iter().filter(|l| l.pointed).count();
        if pointed == 0 {
            return Err(Error::InvalidWord("no pointed letter".into()));
        }
        let w = letters.len() - pointed;
        ColoredWord::new(letters, pointed - 1, w)
    }

    pub fn letters(&self) -> &[ColoredLetter] {
        &self.letters
    }

    /// Largest pointed value.
    pub fn h(&self) -> usize {
        self.h
    }

    /// Largest unpointed value.
    pub fn w(&self) -> usize {
        self.w
    }
}

impl fmt::Display for ColoredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

impl FromStr for ColoredWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<ColoredWord> {
        ColoredWord::parse(s)
    }
}

struct WordSearch {
    h: usize,
    w: usize,
    used_p: Vec<bool>,
    used_u: Vec<bool>,
    current: Vec<ColoredLetter>,
}

impl WordSearch {
    fn new(h: usize, w: usize) -> WordSearch {
        WordSearch {
            h,
            w,
            used_p: vec![false; h + 1],
            used_u: vec![false; w + 1],
            current: Vec::with_capacity(h + w + 1),
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[ColoredLetter])) {
        if self.current.len() == self.h + self.w + 1 {
            if self.current.last().is_some_and(|l| l.pointed) {
                visit(&self.current);
            }
            return;
        }
        let prev = self.current.last().copied();
        for value in 0..=self.h.max(self.w) {
            for pointed in [false, true] {
                let letter = ColoredLetter { value, pointed };
                let free = if pointed {
                    value <= self.h && !self.used_p[value]
                } else {
                    value >= 1 && value <= self.w && !self.used_u[value]
                };
                let rising = prev.is_none_or(|p| p.pointed != pointed || p.value < value);
                if !(free && rising) {
                    continue;
                }
                self.mark(letter, true);
                self.current.push(letter);
                self.run(visit);
                self.current.pop();
                self.mark(letter, false);
            }
        }
    }

    fn mark(&mut self, l: ColoredLetter, on: bool) {
        if l.pointed {
            self.used_p[l.value] = on;
        } else {
            self.used_u[l.value] = on;
        }
    }
}

/// All valid words of type `(h, w)` in lexicographic letter order.
pub fn colored_words(h: usize, w: usize) -> Vec<ColoredWord> {
    let mut out = Vec::new();
    WordSearch::new(h, w).run(&mut |letters| {
        out.push(ColoredWord {
            letters: letters.to_vec(),
            h,
            w,
        })
    });
    out
}

pub fn count_colored_words(h: usize, w: usize) -> u64 {
    let mut count = 0;
    WordSearch::new(h, w).run(&mut |_| count += 1);
    count
}

/// The image of a word under the block swap. It ends with an unpointed
/// letter exactly when a swap took place, so it is generally not a valid
/// [`ColoredWord`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StarredWord {
    pub letters: Vec<ColoredLetter>,
    pub h: usize,
    pub w: usize,
    pub swapped: bool,
}

impl fmt::Display for StarredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.letters)
    }
}

/// Splits `letters` into maximal runs of one color.
fn color_blocks(letters: &[ColoredLetter]) -> Vec<&[ColoredLetter]> {
    letters.chunk_by(|a, b| a.pointed == b.pointed).collect()
}

/// Writes `m = u 0* a1 b1 ... ap bp` (each `ai` a maximal unpointed block,
/// each `bi` a maximal pointed block) as `u 0* b1 a1 ... bp ap`. Words where
/// `0*` is last or followed by a pointed letter are left alone.
pub fn m_star(m: &ColoredWord) -> StarredWord {
    let letters = m.letters();
    let z = letters
        .iter()
        .position(|l| *l == ColoredLetter::ZERO)
        .expect("every word contains 0*");
    let applies = letters.get(z + 1).is_some_and(|l| !l.pointed);
    let mut out = letters[..=z].to_vec();
    if applies {
        for pair in color_blocks(&letters[z + 1..]).chunks(2) {
            out.extend_from_slice(pair[1]);
            out.extend_from_slice(pair[0]);
        }
    } else {
        out.extend_from_slice(&letters[z + 1..]);
    }
    StarredWord {
        letters: out,
        h: m.h(),
        w: m.w(),
        swapped: applies,
    }
}

/// Inverse of [`m_star`]. Whether a swap has to be undone is read off the
/// last letter.
pub fn m_star_inverse(letters: &[ColoredLetter], h: usize, w: usize) -> Result<ColoredWord> {
    check_alphabet(letters, h, w)?;
    if letters.last().is_some_and(|l| l.pointed) {
        return ColoredWord::new(letters.to_vec(), h, w);
    }
    let z = letters
        .iter()
        .position(|l| *l == ColoredLetter::ZERO)
        .expect("alphabet checked");
    let tail = color_blocks(&letters[z + 1..]);
    if tail.first().is_none_or(|b| !b[0].pointed) {
        return Err(Error::InvalidWord(
            "a swapped word must continue with a pointed block after 0*".into(),
        ));
    }
    let mut out = letters[..=z].to_vec();
    for pair in tail.chunks(2) {
        out.extend_from_slice(pair[1]);
        out.extend_from_slice(pair[0]);
    }
    ColoredWord::new(out, h, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::non_ambiguous_trees;

    #[test]
    fn worked_word_is_valid() {
        let m = ColoredWord::parse("2 3 2* 3* 1 4 0* 1*").unwrap();
        assert_eq!((m.h(), m.w()), (3, 4));
        assert_eq!(m.to_string(), "2 3 2* 3* 1 4 0* 1*");
    }

    #[test]
    fn invalid_words_are_rejected() {
        // Ends unpointed.
        assert!(ColoredWord::parse("0* 1").is_err());
        // Decreasing pointed pair.
        assert!(ColoredWord::parse("1* 0*").is_err());
        // Repeated letter.
        assert!(ColoredWord::new(parse_letters("1 1 0*").unwrap(), 0, 2).is_err());
        // Unpointed zero.
        assert!(ColoredWord::parse("0 0*").is_err());
    }

    #[test]
    fn smallest_alphabets() {
        assert_eq!(count_colored_words(0, 0), 1);
        assert_eq!(colored_words(0, 0)[0].to_string(), "0*");
        let words: Vec<String> = colored_words(1, 1).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["0* 1 1*", "1 0* 1*", "1* 1 0*"]);
    }

    #[test]
    fn word_counts_match_tree_counts() {
        for h in 0..=4 {
            for w in 0..=4 - h {
                assert_eq!(
                    count_colored_words(h, w),
                    non_ambiguous_trees(h, w).unwrap().len() as u64,
                    "({h},{w})"
                );
            }
        }
    }

    #[test]
    fn worked_swap() {
        let m = ColoredWord::parse("1* 4 0* 1 2 2* 3 3*").unwrap();
        let s = m_star(&m);
        assert!(s.swapped);
        assert_eq!(s.to_string(), "1* 4 0* 2* 1 2 3* 3");
        assert_eq!(m_star_inverse(&s.letters, 3, 4).unwrap(), m);
    }

    #[test]
    fn swap_is_identity_when_zero_is_last_or_followed_by_pointed() {
        for text in ["1 0*", "2 3 2* 3* 1 4 0* 1*"] {
            let m = ColoredWord::parse(text).unwrap();
            let s = m_star(&m);
            assert!(!s.swapped);
            assert_eq!(s.letters, m.letters());
        }
    }

    #[test]
    fn swap_round_trips() {
        for h in 0..=5 {
            for w in 0..=5 - h {
                for m in colored_words(h, w) {
                    let s = m_star(&m);
                    assert_eq!(s.swapped, !s.letters.last().unwrap().pointed);
                    assert_eq!(m_star_inverse(&s.letters, h, w).unwrap(), m);
                }
            }
        }
    }
}
