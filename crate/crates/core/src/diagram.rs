//! Normal-form Kirby diagrams of thickenings of 2-complexes.
//!
//! A diagram is stored as `n` dotted circles (1-handles) and a list of
//! framed attaching circles `h_i`, each recorded by the word it reads off
//! the 1-handles. Every `h_i` carries an implicit 0-framed meridian `m_i`,
//! no other pair of circles links, and there are `n` 3-handles plus one
//! 0- and one 4-handle. Those parts are determined by the rest and are not
//! stored.

use std::fmt;

use serde::Serialize;

use crate::algebra::{coboundary_witness, symmetric_signature, F2Vector, IntegerMatrix};
use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Word};

/// One framed attaching circle together with its implicit meridian.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Handle {
    pub word: Word,
    pub framing: i64,
}

impl Handle {
    pub fn new(word: Word, framing: i64) -> Self {
        Handle { word, framing }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalFormDiagram {
    pub num_one_handles: usize,
    pub handles: Vec<Handle>,
}

/// Diagram data as read from text, before words are reduced or indices
/// checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDiagram {
    pub num_one_handles: usize,
    pub handles: Vec<(Vec<Letter>, i64)>,
}

impl RawDiagram {
    /// Every way the data fails the normal-form clauses, one line each.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, (letters, framing)) in self.handles.iter().enumerate() {
            if letters.iter().any(|l| l.generator >= self.num_one_handles) {
                out.push(format!("generator index out of range at handle {}", i + 1));
            }
            if letters.windows(2).any(|p| p[0].cancels(p[1])) {
                out.push(format!("word not freely reduced at handle {}", i + 1));
            }
            if !(0..=1).contains(framing) {
                out.push(format!("framing out of {{0,1}} at handle {}", i + 1));
            }
        }
        out
    }

    /// Reduces words and checks indices. Framings are kept as given.
    pub fn into_diagram(self) -> Result<NormalFormDiagram> {
        let handles = self
            .handles
            .into_iter()
            .map(|(letters, f)| Handle::new(Word::reduce(letters), f))
            .collect();
        NormalFormDiagram::new(self.num_one_handles, handles)
    }
}

impl From<&NormalFormDiagram> for RawDiagram {
    fn from(d: &NormalFormDiagram) -> Self {
        RawDiagram {
            num_one_handles: d.num_one_handles,
            handles: d
                .handles
                .iter()
                .map(|h| (h.word.letters().to_vec(), h.framing))
                .collect(),
        }
    }
}

/// The pair (fundamental group, second Stiefel-Whitney class) that
/// determines the normal 1-type, with the class represented by the
/// framing cocycle on the presentation complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalOneType {
    pub presentation: Presentation,
    pub w_class: F2Vector,
    pub spin: bool,
}

impl NormalFormDiagram {
    /// Checks that every word only uses the `num_one_handles` generators.
    pub fn new(num_one_handles: usize, handles: Vec<Handle>) -> Result<Self> {
        for (i, h) in handles.iter().enumerate() {
            h.word.check_generators(num_one_handles).map_err(|e| {
                Error::malformed(format!("handle {}: {e}", i + 1))
            })?;
        }
        Ok(NormalFormDiagram {
            num_one_handles,
            handles,
        })
    }

    /// Attaching circles for the relators, each with a 0-framed meridian.
    pub fn from_presentation(p: &Presentation, framings: &[i64]) -> Result<Self> {
        if framings.len() != p.num_relators() {
            return Err(Error::malformed(format!(
                "{} framings for {} relators",
                framings.len(),
                p.num_relators()
            )));
        }
        let handles = p
            .relators
            .iter()
            .zip(framings)
            .map(|(w, &f)| Handle::new(w.clone(), f))
            .collect();
        NormalFormDiagram::new(p.num_generators, handles)
    }

    /// Connected sum of `n` copies of `S^1 x S^3`.
    pub fn one_handles_only(n: usize) -> Self {
        NormalFormDiagram {
            num_one_handles: n,
            handles: Vec::new(),
        }
    }

    pub fn num_handles(&self) -> usize {
        self.handles.len()
    }

    pub fn framings(&self) -> Vec<i64> {
        self.handles.iter().map(|h| h.framing).collect()
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            num_generators: self.num_one_handles,
            relators: self.handles.iter().map(|h| h.word.clone()).collect(),
        }
    }

    pub fn validate(&self) -> Vec<String> {
        RawDiagram::from(self).validate()
    }

    pub fn is_normalized(&self) -> bool {
        self.handles.iter().all(|h| (0..=1).contains(&h.framing))
    }

    fn require_normalized(&self) -> Result<()> {
        match self.handles.iter().position(|h| !(0..=1).contains(&h.framing)) {
            Some(i) => Err(Error::precondition(format!(
                "diagram not normalized: framing {} at handle {}",
                self.handles[i].framing,
                i + 1
            ))),
            None => Ok(()),
        }
    }

    /// One 0-handle, `n` 1-handles, `2k` 2-handles, `n` 3-handles, one
    /// 4-handle.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.num_one_handles as i64 + 2 * self.handles.len() as i64
    }

    /// Linking matrix of the 2-handles ordered `h_1, m_1, h_2, m_2, ...`.
    pub fn linking_matrix(&self) -> Result<IntegerMatrix<i64>> {
        self.require_normalized()?;
        let k = self.handles.len();
        Ok(IntegerMatrix::from_fn(2 * k, 2 * k, |i, j| {
            if i / 2 != j / 2 {
                0
            } else {
                match (i % 2, j % 2) {
                    (0, 0) => self.handles[i / 2].framing,
                    (1, 1) => 0,
                    _ => 1,
                }
            }
        }))
    }

    pub fn signature(&self) -> Result<i64> {
        symmetric_signature(&self.linking_matrix()?)
    }

    pub fn normal_one_type(&self) -> Result<NormalOneType> {
        self.require_normalized()?;
        let presentation = self.presentation();
        let w_class = F2Vector::from_parities(self.framings());
        let spin = coboundary_witness(&presentation, &w_class)?.is_some();
        Ok(NormalOneType {
            presentation,
            w_class,
            spin,
        })
    }

    /// Representative up to isotopy of the attaching circles: each word
    /// becomes its least cyclic rotation (of itself or its inverse) and the
    /// handles are sorted.
    pub fn canonicalize(&self) -> NormalFormDiagram {
        let mut handles: Vec<Handle> = self
            .handles
            .iter()
            .map(|h| Handle::new(h.word.canonical_cyclic(), h.framing))
            .collect();
        handles.sort();
        NormalFormDiagram {
            num_one_handles: self.num_one_handles,
            handles,
        }
    }

    pub fn canonically_equal(&self, other: &NormalFormDiagram) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    /// Appends a handle; used by surgery and stabilization.
    pub(crate) fn push(&mut self, h: Handle) {
        self.handles.push(h);
    }
}

impl fmt::Display for NormalFormDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, [", self.num_one_handles)?;
        for (i, h) in self.handles.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", h.word.token(), h.framing)?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_letters;

    pub(crate) fn d(n: usize, hs: &[(&str, i64)]) -> NormalFormDiagram {
        NormalFormDiagram::new(
            n,
            hs.iter().map(|(w, f)| Handle::new(Word::parse(w).unwrap(), *f)).collect(),
        )
        .unwrap()
    }

    fn raw(n: usize, hs: &[(&str, i64)]) -> RawDiagram {
        RawDiagram {
            num_one_handles: n,
            handles: hs.iter().map(|(w, f)| (parse_letters(w).unwrap(), *f)).collect(),
        }
    }

    #[test]
    fn from_presentation_examples() {
        let p = Presentation::parse(1, &[]).unwrap();
        assert_eq!(NormalFormDiagram::from_presentation(&p, &[]).unwrap(), d(1, &[]));
        let p = Presentation::parse(1, &["aaa"]).unwrap();
        assert_eq!(NormalFormDiagram::from_presentation(&p, &[0]).unwrap(), d(1, &[("aaa", 0)]));
        let p = Presentation::parse(2, &["abAB"]).unwrap();
        assert_eq!(NormalFormDiagram::from_presentation(&p, &[1]).unwrap(), d(2, &[("abAB", 1)]));
        assert!(matches!(NormalFormDiagram::from_presentation(&p, &[]), Err(Error::Malformed(_))));
    }

    #[test]
    fn validate_examples() {
        assert_eq!(raw(1, &[("aa", 2)]).validate(), vec!["framing out of {0,1} at handle 1"]);
        assert_eq!(raw(1, &[("aA", 0)]).validate(), vec!["word not freely reduced at handle 1"]);
        assert!(raw(2, &[("abAB", 1)]).validate().is_empty());
        assert_eq!(raw(1, &[("ab", 0)]).validate(), vec!["generator index out of range at handle 1"]);
        assert_eq!(d(1, &[("a", 3)]).validate(), vec!["framing out of {0,1} at handle 1"]);
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(d(1, &[]).euler_characteristic(), 0);
        assert_eq!(d(2, &[]).euler_characteristic(), -2);
        assert_eq!(d(1, &[("aaa", 0)]).euler_characteristic(), 2);
    }

    #[test]
    fn linking_matrix_examples() {
        let m = |rows: Vec<Vec<i64>>| IntegerMatrix::from_rows(rows);
        assert_eq!(d(1, &[("aaa", 0)]).linking_matrix().unwrap(), m(vec![vec![0, 1], vec![1, 0]]));
        assert_eq!(d(1, &[("a", 1)]).linking_matrix().unwrap(), m(vec![vec![1, 1], vec![1, 0]]));
        let expected = m(vec![vec![0, 1], vec![1, 0]]).direct_sum(&m(vec![vec![1, 1], vec![1, 0]]));
        assert_eq!(d(1, &[("a", 0), ("aa", 1)]).linking_matrix().unwrap(), expected);
        assert!(matches!(d(1, &[("a", 2)]).linking_matrix(), Err(Error::Precondition(_))));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(d(1, &[("aaa", 0)]).signature().unwrap(), 0);
        assert_eq!(d(1, &[("a", 1)]).signature().unwrap(), 0);
        assert_eq!(d(3, &[("abc", 1), ("", 0)]).signature().unwrap(), 0);
    }

    #[test]
    fn normal_one_type_examples() {
        let t = d(1, &[("aaa", 0)]).normal_one_type().unwrap();
        assert_eq!(t.w_class, F2Vector::from_bits(vec![false]));
        assert!(t.spin);
        let t = d(1, &[("aa", 1)]).normal_one_type().unwrap();
        assert_eq!(t.presentation, Presentation::parse(1, &["aa"]).unwrap());
        assert!(!t.spin);
        assert!(d(1, &[("a", 1)]).normal_one_type().unwrap().spin);
    }

    #[test]
    fn canonicalize_examples() {
        let c = d(2, &[("aab", 0), ("aba", 0)]).canonicalize();
        assert_eq!(c.handles[0], c.handles[1]);
        assert_eq!(c.handles[0].word, Word::parse("aab").unwrap());
        let c = d(2, &[("BA", 0)]).canonicalize();
        assert_eq!(c.handles[0].word, Word::parse("ab").unwrap());
        assert_eq!(c.canonicalize(), c);
    }
}
