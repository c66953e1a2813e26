//! Finite group presentations and the transformations `T1`, `T1'`, `S1`,
//! `S2` and `S2'` that connect any two presentations of isomorphic groups.
//!
//! Indices in this API are zero-based. Text formats use one-based relator
//! indices and the positional alphabet for generators.

mod group;
mod word;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use group::{default_fingerprint_groups, hom_count, FiniteGroup};
pub use word::{free_reduce, parse_letters, Letter, Word, ALPHABET_SIZE};

/// Generator count together with a list of freely reduced relators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Presentation {
    pub num_generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, rejecting relators that mention generators
    /// outside `0..num_generators`.
    pub fn new(num_generators: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            r.check_generators(num_generators)?;
        }
        Ok(Presentation {
            num_generators,
            relators,
        })
    }

    /// Convenience constructor from positional-alphabet strings.
    pub fn parse(num_generators: usize, relators: &[&str]) -> Result<Self> {
        let rels = relators
            .iter()
            .map(|s| Word::parse_over(s, num_generators))
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(num_generators, rels)
    }

    pub fn num_relators(&self) -> usize {
        self.relators.len()
    }

    fn check_relator(&self, rel: usize) -> Result<()> {
        if rel >= self.relators.len() {
            return Err(Error::malformed(format!(
                "relator index {} out of range ({} relators)",
                rel + 1,
                self.relators.len()
            )));
        }
        Ok(())
    }

    fn check_generator(&self, gen: usize) -> Result<()> {
        if gen >= self.num_generators {
            return Err(Error::malformed(format!(
                "generator index {} out of range ({} generators)",
                gen + 1,
                self.num_generators
            )));
        }
        Ok(())
    }

    /// Key invariant under relator reordering, cyclic rotation and
    /// inversion of relators.
    pub fn canonical_key(&self) -> (usize, Vec<Word>) {
        let mut rels: Vec<Word> = self.relators.iter().map(Word::canonical_cyclic).collect();
        rels.sort();
        (self.num_generators, rels)
    }

    /// Key invariant under relator reordering only.
    pub fn unordered_key(&self) -> (usize, Vec<Word>) {
        let mut rels = self.relators.clone();
        rels.sort();
        (self.num_generators, rels)
    }

    /// `T1`: adjoin a generator `y` (index `n`) and the relator `y x^-1`.
    pub fn tietze_t1(&self, x: &Word) -> Result<Presentation> {
        x.check_generators(self.num_generators)?;
        let y = Word::generator(self.num_generators);
        let mut relators = self.relators.clone();
        relators.push(&y * &x.inverse());
        Ok(Presentation {
            num_generators: self.num_generators + 1,
            relators,
        })
    }

    /// `T1'`: eliminate generator `gen` using relator `rel`, which must
    /// contain it exactly once after cyclic reduction.
    pub fn tietze_t1_inverse(&self, gen: usize, rel: usize) -> Result<Presentation> {
        self.check_generator(gen)?;
        self.check_relator(rel)?;
        let image = solve_for_generator(&self.relators[rel], gen)?;
        Ok(self.eliminate(gen, rel, &image))
    }

    pub(crate) fn eliminate(&self, gen: usize, rel: usize, image: &Word) -> Presentation {
        let relators = self
            .relators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != rel)
            .map(|(_, r)| r.substitute(gen, image).drop_generator(gen))
            .collect();
        Presentation {
            num_generators: self.num_generators - 1,
            relators,
        }
    }

    /// `S1`: replace relator `i` by `r_i w^-1 s w`, where `s` is relator `j`
    /// raised to `sign`.
    pub fn tietze_s1(&self, i: usize, j: usize, sign: i8, w: &Word) -> Result<Presentation> {
        self.check_relator(i)?;
        self.check_relator(j)?;
        if i == j {
            return Err(Error::precondition("S1 needs two distinct relators"));
        }
        w.check_generators(self.num_generators)?;
        let mut relators = self.relators.clone();
        relators[i] = relator_product(&self.relators[i], &self.relators[j], sign, w);
        Ok(Presentation {
            num_generators: self.num_generators,
            relators,
        })
    }

    /// `S2` (append the empty relator) when `delete` is `None`, otherwise
    /// `S2'` deleting the given relator, which must be literally empty.
    pub fn tietze_s2(&self, delete: Option<usize>) -> Result<Presentation> {
        let mut relators = self.relators.clone();
        match delete {
            None => relators.push(Word::empty()),
            Some(rel) => {
                self.check_relator(rel)?;
                if !self.relators[rel].is_empty() {
                    return Err(Error::precondition(format!(
                        "relator {} is not the empty word",
                        rel + 1
                    )));
                }
                relators.remove(rel);
            }
        }
        Ok(Presentation {
            num_generators: self.num_generators,
            relators,
        })
    }
}

/// `r w^-1 s^sign w`, freely reduced.
pub(crate) fn relator_product(r: &Word, s: &Word, sign: i8, w: &Word) -> Word {
    free_reduce(
        r.letters()
            .iter()
            .chain(w.inverse().letters())
            .chain(s.signed(sign).letters())
            .chain(w.letters())
            .copied(),
    )
}

/// Solves `relator = 1` for `gen`, which must occur exactly once in the
/// cyclic reduction of the relator. Returns the word the generator equals.
pub(crate) fn solve_for_generator(relator: &Word, gen: usize) -> Result<Word> {
    let (core, _) = relator.cyclic_reduce();
    let count = core.occurrences(gen);
    if count != 1 {
        return Err(Error::precondition(format!(
            "generator {} occurs {} times in the cyclic reduction of {}, expected once",
            Letter::pos(gen),
            count,
            relator.token()
        )));
    }
    let pos = core
        .letters()
        .iter()
        .position(|l| l.generator == gen)
        .expect("occurrence counted above");
    // core ~ g^e * rest, so g = rest^-1 when e = +1 and g = rest when e = -1
    let rotated = core.rotate(pos);
    let rest = Word::reduce(rotated.letters()[1..].iter().copied());
    Ok(if core.letters()[pos].inverse {
        rest
    } else {
        rest.inverse()
    })
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for g in 0..self.num_generators {
            if g > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", Letter::pos(g))?;
        }
        write!(f, " |")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}", r.token())?;
        }
        write!(f, ">")
    }
}
