use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// A signed generator: `k + 1` for `g_k`, `-(k + 1)` for its inverse.
pub type Letter = i32;

pub fn letter(generator: usize, positive: bool) -> Letter {
    let l = generator as Letter + 1;
    if positive {
        l
    } else {
        -l
    }
}

pub fn letter_generator(l: Letter) -> usize {
    (l.unsigned_abs() - 1) as usize
}

/// A freely reduced word in the generators of a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(k: usize) -> Self {
        Word(vec![letter(k, true)])
    }

    /// Reduces as it goes.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn push(&mut self, l: Letter) {
        assert_ne!(l, 0, "zero is not a letter");
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Replaces each generator `g_k` by `images[k]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::empty();
        for &l in &self.0 {
            let image = &images[letter_generator(l)];
            if l > 0 {
                for &m in &image.0 {
                    w.push(m);
                }
            } else {
                for &m in image.0.iter().rev() {
                    w.push(-m);
                }
            }
        }
        w
    }

    /// One more than the largest generator index used, zero when empty.
    pub fn generator_bound(&self) -> usize {
        self.0.iter().map(|&l| letter_generator(l) + 1).max().unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.generator_bound() > rank {
            return Err(Error::InvalidWord(format!("{self} uses a generator beyond rank {rank}")));
        }
        Ok(())
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0; rank];
        for &l in &self.0 {
            sums[letter_generator(l)] += l.signum() as i64;
        }
        sums
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", letter_generator(l))?;
            if l < 0 {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// `g0 g1^-1 g0`; `1` or the empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let mut w = Word::empty();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (stem, positive) = match token.strip_suffix("^-1") {
                Some(stem) => (stem, false),
                None => (token, true),
            };
            let k = stem
                .strip_prefix('g')
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(|| Error::InvalidWord(format!("bad token `{token}`")))?;
            w.push(letter(k, positive));
        }
        Ok(w)
    }
}

/// A uniformly chosen length in `0..=max_len`, then letters chosen uniformly
/// among those that keep the word reduced.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    if rank == 0 {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let k = rng.gen_range(0..rank);
        let l = letter(k, rng.gen_bool(0.5));
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    Word(letters)
}

/// Every reduced word of length at most `max_len`, shortest first, then in
/// letter order `g0, g0⁻¹, g1, …`.
pub fn all_words(rank: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..rank).flat_map(|k| [letter(k, true), letter(k, false)]).collect();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &alphabet {
                if w.0.last() != Some(&-l) {
                    let mut v = w.clone();
                    v.0.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_rendering() {
        let w = Word::from_letters([1, 2, -2, -1, 1]);
        assert_eq!(w, Word::generator(0));
        let c: Word = "g0 g1 g0^-1 g1^-1".parse().unwrap();
        assert_eq!(c.to_string(), "g0 g1 g0^-1 g1^-1");
        assert_eq!(c.concat(&c.inverse()), Word::empty());
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!("1".parse::<Word>().unwrap(), Word::empty());
        assert!("h2".parse::<Word>().is_err());
    }

    #[test]
    fn substitution() {
        let a2: Word = "g0 g0".parse().unwrap();
        let images = vec![a2.clone(), Word::generator(0)];
        let w: Word = "g0 g1^-1".parse().unwrap();
        assert_eq!(w.substitute(&images), Word::generator(0));
        assert_eq!(Word::generator(1).pow(-2).to_string(), "g1^-1 g1^-1");
    }

    #[test]
    fn counts_of_reduced_words() {
        // 1 + 4 + 12 + 36 in F₂.
        assert_eq!(all_words(2, 3).len(), 53);
        assert!(all_words(2, 3).iter().all(|w| Word::from_letters(w.letters().iter().copied()) == *w));
    }
}
