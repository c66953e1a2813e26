//! Symbolic engine for group presentations and normal-form Kirby diagrams
//! of 4-dimensional thickenings of 2-complexes.
//!
//! Presentations are rewritten by Tietze transformations; each
//! transformation has a geometric counterpart on diagrams that emits a
//! replayable [`MoveCertificate`]. [`stable_diffeo_decide`] compares two
//! diagrams up to stable diffeomorphism; a positive answer carries a
//! certificate and a negative one names the invariant that differs.
//!
//! The integer linear algebra is generic over the scalar; the aliases
//! below fix the two scalars used in practice.

pub mod algebra;
pub mod classify;
pub mod diagram;
pub mod error;
pub mod moves;
pub mod presentation;
pub mod surgery;
pub mod text;

pub use algebra::{
    coboundary_matrix, coboundary_witness, exponent_matrix, h1_invariants, h2_f2_dimension, smith_normal_form,
    symmetric_signature, F2Matrix, F2Vector, IntegerMatrix, Scalar, SmithForm, H1,
};
pub use classify::{
    stable_diffeo_decide, tietze_search, transport, DecideOptions, InvariantWitness, SearchConfig, TietzePath,
    TietzeStep, Verdict,
};
pub use diagram::{Handle, NormalFormDiagram, NormalOneType, RawDiagram};
pub use error::{Error, Result};
pub use moves::{apply_move, apply_moves, replay, stabilize, Move, MoveCertificate, ReplayError};
pub use presentation::{default_fingerprint_groups, hom_count, FiniteGroup, Letter, Presentation, Word};
pub use surgery::{realize_presentation_by_surgery, surgery_on_loop};

/// Machine-word integer matrices; enough for linking matrices and small
/// relation matrices.
pub type IntMatrix = IntegerMatrix<i64>;
/// Arbitrary-precision integer matrices, used for homology.
pub type BigIntMatrix = IntegerMatrix<num_bigint::BigInt>;
pub type IntSmithForm = SmithForm<i64>;
pub type BigIntSmithForm = SmithForm<num_bigint::BigInt>;
