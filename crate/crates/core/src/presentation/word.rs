//! Freely reduced words in a free group on finitely many generators.
//!
//! Generators are indexed from zero. In text they are written with the
//! positional alphabet `a, b, c, ...`; an uppercase letter is the formal
//! inverse, so `abAB` is the commutator `a b a^-1 b^-1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest generator count expressible with the single-letter alphabet.
pub const ALPHABET_SIZE: usize = 26;

/// A generator or its formal inverse.
///
/// The derived order is `a < A < b < B < ...`, which is the order used for
/// every lexicographic tie-break in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    /// Signed generator form: `+1` for the generator, `-1` for its inverse.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::pos(c as usize - 'a' as usize))
        } else if c.is_ascii_uppercase() {
            Some(Letter::neg(c as usize - 'A' as usize))
        } else {
            None
        }
    }

    pub fn to_char(self) -> char {
        assert!(self.generator < ALPHABET_SIZE, "generator {} has no letter", self.generator);
        let base = if self.inverse { b'A' } else { b'a' };
        (base + self.generator as u8) as char
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generator < ALPHABET_SIZE {
            write!(f, "{}", self.to_char())
        } else if self.inverse {
            write!(f, "x{}^-1", self.generator)
        } else {
            write!(f, "x{}", self.generator)
        }
    }
}

/// Reduces a raw letter sequence to its free normal form.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for l in raw {
        match stack.last() {
            Some(&top) if top.cancels(l) => {
                stack.pop();
            }
            _ => stack.push(l),
        }
    }
    Word(stack)
}

/// A freely reduced word. The reduction invariant holds for every value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::pos(g)])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        free_reduce(raw)
    }

    /// Parses a positional-alphabet word and freely reduces it. `-` and the
    /// empty string both denote the identity.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(free_reduce(parse_letters(s)?))
    }

    /// Parses and checks every generator index against `num_generators`.
    pub fn parse_over(s: &str, num_generators: usize) -> Result<Self> {
        let w = Word::parse(s)?;
        w.check_generators(num_generators)?;
        Ok(w)
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
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `self` if `sign` is positive, otherwise the inverse.
    pub fn signed(&self, sign: i8) -> Word {
        if sign >= 0 {
            self.clone()
        } else {
            self.inverse()
        }
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    pub fn check_generators(&self, num_generators: usize) -> Result<()> {
        match self.max_generator() {
            Some(g) if g >= num_generators => Err(Error::malformed(format!(
                "generator index {} out of range for {} generators",
                g + 1,
                num_generators
            ))),
            _ => Ok(()),
        }
    }

    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| l.sign())
            .sum()
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.0.iter().filter(|l| l.generator == generator).count()
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k].cancels(self.0[n - 1 - k]) {
            k += 1;
        }
        (Word(self.0[k..n - k].to_vec()), Word(self.0[..k].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) => self.0.len() == 1 || !a.cancels(*b),
            _ => true,
        }
    }

    /// Rotation moving the first `k` letters to the end. Only meaningful on
    /// cyclically reduced words, where it stays reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        free_reduce(v)
    }

    /// Least word, in letter order, among all rotations of the cyclic
    /// reduction and of its inverse.
    pub fn canonical_cyclic(&self) -> Word {
        let (core, _) = self.cyclic_reduce();
        let inv = core.inverse();
        let mut best = core.clone();
        for w in [&core, &inv] {
            for k in 0..w.len() {
                let r = w.rotate(k);
                if r < best {
                    best = r;
                }
            }
        }
        best
    }

    /// Replaces every occurrence of `generator` by `image` (and its inverse
    /// by `image^-1`), then freely reduces.
    pub fn substitute(&self, generator: usize, image: &Word) -> Word {
        let inv = image.inverse();
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if l.generator == generator {
                out.extend_from_slice(if l.inverse { &inv.0 } else { &image.0 });
            } else {
                out.push(l);
            }
        }
        free_reduce(out)
    }

    /// Shifts every generator index above `removed` down by one. The word
    /// must not mention `removed`.
    pub fn drop_generator(&self, removed: usize) -> Word {
        debug_assert_eq!(self.occurrences(removed), 0);
        Word(
            self.0
                .iter()
                .map(|l| {
                    if l.generator > removed {
                        Letter::new(l.generator - 1, l.inverse)
                    } else {
                        *l
                    }
                })
                .collect(),
        )
    }

    /// Text token: the letters, or `-` for the empty word.
    pub fn token(&self) -> String {
        if self.0.is_empty() {
            "-".to_string()
        } else {
            self.to_string()
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        free_reduce(self.0.iter().chain(rhs.0.iter()).copied())
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Raw letters of a positional-alphabet string, without reduction.
pub fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.chars()
        .enumerate()
        .map(|(i, c)| {
            Letter::from_char(c).ok_or_else(|| {
                Error::malformed(format!("unexpected character {c:?} at position {}", i + 1))
            })
        })
        .collect()
}
