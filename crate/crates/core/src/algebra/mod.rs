//! Exact integer and mod-2 linear algebra, and the homological invariants
//! of a presentation complex built from it.

mod f2;
mod matrix;
mod signature;
mod smith;

use std::fmt;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::presentation::Presentation;

pub use f2::{F2Matrix, F2Vector};
pub use matrix::{IntegerMatrix, Scalar};
pub use signature::symmetric_signature;
pub use smith::{smith_normal_form, SmithForm};

/// First homology `Z^free_rank ⊕ Z/t_1 ⊕ ... ⊕ Z/t_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct H1 {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

/// `Z^2+Z/3`, `Z`, or `0` for the trivial group.
impl fmt::Display for H1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl Serialize for H1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("H1", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        let torsion: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

/// Relator-by-generator matrix of exponent sums, the boundary map of the
/// presentation complex in degree two.
pub fn exponent_matrix<T: Scalar + From<i64>>(p: &Presentation) -> IntegerMatrix<T> {
    IntegerMatrix::from_fn(p.num_relators(), p.num_generators, |i, g| {
        T::from(p.relators[i].exponent_sum(g))
    })
}

/// Abelianization of the presented group.
pub fn h1_invariants(p: &Presentation) -> H1 {
    let snf = smith_normal_form(&exponent_matrix::<BigInt>(p));
    H1 {
        free_rank: p.num_generators - snf.rank(),
        torsion: snf.torsion(),
    }
}

/// Mod-2 coboundary from 1-cochains to 2-cochains: entry `(i, g)` is the
/// exponent sum of generator `g` in relator `i`, reduced mod 2.
pub fn coboundary_matrix(p: &Presentation) -> F2Matrix {
    F2Matrix::from_fn(p.num_relators(), p.num_generators, |i, g| {
        p.relators[i].exponent_sum(g).rem_euclid(2) == 1
    })
}

/// A 1-cochain whose coboundary is `c`, if one exists.
pub fn coboundary_witness(p: &Presentation, c: &F2Vector) -> Result<Option<F2Vector>> {
    if c.len() != p.num_relators() {
        return Err(Error::malformed(format!(
            "cocycle has {} entries for {} relators",
            c.len(),
            p.num_relators()
        )));
    }
    coboundary_matrix(p).solve(c)
}

/// Dimension of the second mod-2 cohomology of the presentation complex.
pub fn h2_f2_dimension(p: &Presentation) -> usize {
    p.num_relators() - coboundary_matrix(p).rank()
}
