//! Elementary Kirby moves that keep a diagram in normal form, and
//! replayable certificates built from them.
//!
//! Handle and generator indices are zero-based here; the certificate text
//! format shifts them to one-based.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Handle, NormalFormDiagram};
use crate::error::{Error, Result};
use crate::presentation::{relator_product, solve_for_generator, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum Move {
    /// Slide `h_i` over `h_j` along the path `w` and clean up with `m_j`:
    /// `h_i <- h_i w^-1 h_j^sign w`, framings add mod 2.
    RelatorMultiply { i: usize, j: usize, sign: i8, w: Word },
    /// Slide `h_i` over its own meridian twice, shifting the framing by 2.
    MeridianFrameSlide { i: usize, delta: i64 },
    /// Twist the 1-handle `generator`. At parity level the framing of every
    /// `h_i` moves by the exponent sum of the generator in its word.
    HandleTwist { generator: usize },
    /// Isotopy of `h_i`: conjugate by `w`, optionally reverse orientation.
    Isotopy { i: usize, w: Word, invert: bool },
    /// New 1-handle `y` with a 0-framed circle reading `y x^-1`.
    AddGenerator { x: Word },
    /// Cancel the 1-handle `generator` against `h_rel`, which passes over it
    /// exactly once and has framing 0.
    CancelPair { generator: usize, rel: usize },
    /// Connected sum with `S^2 x S^2`: an unknotted 0-framed circle.
    Stabilize,
    /// Remove an unknotted 0-framed circle and its meridian.
    Destabilize { rel: usize },
}

/// Moves to replay after stabilizing the source `left_stabilizations` times
/// and the target `right_stabilizations` times.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MoveCertificate {
    pub moves: Vec<Move>,
    pub left_stabilizations: usize,
    pub right_stabilizations: usize,
}

impl MoveCertificate {
    pub fn identity() -> Self {
        MoveCertificate::default()
    }

    pub fn single(m: Move) -> Self {
        MoveCertificate {
            moves: vec![m],
            ..Default::default()
        }
    }

    /// `self` followed by `next`. Only meaningful when `next` carries no
    /// stabilizations of its own.
    pub fn then(mut self, next: MoveCertificate) -> Self {
        debug_assert_eq!(next.left_stabilizations + next.right_stabilizations, 0);
        self.moves.extend(next.moves);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("move {} rejected: {source}", index + 1)]
    Rejected { index: usize, source: Error },
    #[error("diagrams differ after replaying {moves} moves")]
    Mismatch { moves: usize },
}

impl ReplayError {
    /// Zero-based index of the offending move, when one was rejected.
    pub fn move_index(&self) -> Option<usize> {
        match self {
            ReplayError::Rejected { index, .. } => Some(*index),
            ReplayError::Mismatch { .. } => None,
        }
    }
}

fn check_handle(d: &NormalFormDiagram, i: usize) -> Result<()> {
    if i >= d.handles.len() {
        return Err(Error::rejected(format!(
            "handle index {} out of range ({} handles)",
            i + 1,
            d.handles.len()
        )));
    }
    Ok(())
}

fn check_generator(d: &NormalFormDiagram, g: usize) -> Result<()> {
    if g >= d.num_one_handles {
        return Err(Error::rejected(format!(
            "1-handle index {} out of range ({} 1-handles)",
            g + 1,
            d.num_one_handles
        )));
    }
    Ok(())
}

fn check_word(d: &NormalFormDiagram, w: &Word) -> Result<()> {
    w.check_generators(d.num_one_handles)
        .map_err(|e| Error::rejected(e.to_string()))
}

/// Applies one move, returning the new diagram.
pub fn apply_move(d: &NormalFormDiagram, m: &Move) -> Result<NormalFormDiagram> {
    let mut out = d.clone();
    match m {
        Move::RelatorMultiply { i, j, sign, w } => {
            check_handle(d, *i)?;
            check_handle(d, *j)?;
            check_word(d, w)?;
            if i == j {
                return Err(Error::rejected("a handle cannot slide over itself"));
            }
            if sign.abs() != 1 {
                return Err(Error::rejected(format!("sign must be +1 or -1, got {sign}")));
            }
            let (hi, hj) = (&d.handles[*i], &d.handles[*j]);
            out.handles[*i] = Handle::new(
                relator_product(&hi.word, &hj.word, *sign, w),
                (hi.framing + hj.framing).rem_euclid(2),
            );
        }
        Move::MeridianFrameSlide { i, delta } => {
            check_handle(d, *i)?;
            if delta.abs() != 2 {
                return Err(Error::rejected(format!("meridian slide shifts framing by ±2, got {delta}")));
            }
            out.handles[*i].framing += delta;
        }
        Move::HandleTwist { generator } => {
            check_generator(d, *generator)?;
            for h in &mut out.handles {
                h.framing = (h.framing + h.word.exponent_sum(*generator)).rem_euclid(2);
            }
        }
        Move::Isotopy { i, w, invert } => {
            check_handle(d, *i)?;
            check_word(d, w)?;
            let conj = &(w * &d.handles[*i].word) * &w.inverse();
            out.handles[*i].word = if *invert { conj.inverse() } else { conj };
        }
        Move::AddGenerator { x } => {
            check_word(d, x)?;
            let y = Word::generator(d.num_one_handles);
            out.num_one_handles += 1;
            out.push(Handle::new(&y * &x.inverse(), 0));
        }
        Move::CancelPair { generator, rel } => {
            check_generator(d, *generator)?;
            check_handle(d, *rel)?;
            let h = &d.handles[*rel];
            if h.framing != 0 {
                return Err(Error::rejected(format!(
                    "cancelling handle {} needs framing 0, has {}",
                    rel + 1,
                    h.framing
                )));
            }
            let image = solve_for_generator(&h.word, *generator)
                .map_err(|e| Error::rejected(e.to_string()))?;
            out.handles = d
                .handles
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != *rel)
                .map(|(_, h)| {
                    Handle::new(h.word.substitute(*generator, &image).drop_generator(*generator), h.framing)
                })
                .collect();
            out.num_one_handles -= 1;
        }
        Move::Stabilize => out.push(Handle::new(Word::empty(), 0)),
        Move::Destabilize { rel } => {
            check_handle(d, *rel)?;
            let h = &d.handles[*rel];
            if !h.word.is_empty() || h.framing != 0 {
                return Err(Error::rejected(format!(
                    "handle {} is not an unknotted 0-framed circle",
                    rel + 1
                )));
            }
            out.handles.remove(*rel);
        }
    }
    Ok(out)
}

/// Applies a move sequence, reporting the index of the first rejected move.
pub fn apply_moves(d: &NormalFormDiagram, moves: &[Move]) -> Result<NormalFormDiagram, ReplayError> {
    moves.iter().enumerate().try_fold(d.clone(), |cur, (index, m)| {
        apply_move(&cur, m).map_err(|source| ReplayError::Rejected { index, source })
    })
}

pub fn stabilize(d: &NormalFormDiagram, times: usize) -> NormalFormDiagram {
    let mut out = d.clone();
    for _ in 0..times {
        out.push(Handle::new(Word::empty(), 0));
    }
    out
}

/// Checks that the certificate carries `source` to `target` up to
/// isotopy, after the recorded stabilizations on each side.
pub fn replay(
    source: &NormalFormDiagram,
    cert: &MoveCertificate,
    target: &NormalFormDiagram,
) -> Result<(), ReplayError> {
    let start = stabilize(source, cert.left_stabilizations);
    let end = apply_moves(&start, &cert.moves)?;
    let goal = stabilize(target, cert.right_stabilizations);
    if end.canonically_equal(&goal) {
        Ok(())
    } else {
        Err(ReplayError::Mismatch {
            moves: cert.moves.len(),
        })
    }
}

fn run(d: &NormalFormDiagram, moves: Vec<Move>) -> Result<(NormalFormDiagram, MoveCertificate)> {
    let out = apply_moves(d, &moves).map_err(|e| match e {
        ReplayError::Rejected { source, .. } => source,
        ReplayError::Mismatch { .. } => unreachable!(),
    })?;
    Ok((
        out,
        MoveCertificate {
            moves,
            ..Default::default()
        },
    ))
}

/// Geometric `T1`: a new 1-handle cancelled by a 0-framed circle reading
/// `y x^-1`.
pub fn geometric_t1(d: &NormalFormDiagram, x: &Word) -> Result<(NormalFormDiagram, MoveCertificate)> {
    run(d, vec![Move::AddGenerator { x: x.clone() }])
}

/// Moves eliminating `generator` against handle `rel`: a twist if the
/// handle is odd-framed, an isotopy bringing the generator to the front of
/// the word, then the cancellation.
pub fn t1_inverse_moves(d: &NormalFormDiagram, generator: usize, rel: usize) -> Result<Vec<Move>> {
    check_generator(d, generator)?;
    check_handle(d, rel)?;
    let h = &d.handles[rel];
    let (core, conj) = h.word.cyclic_reduce();
    if core.occurrences(generator) != 1 {
        return Err(Error::rejected(format!(
            "1-handle {} does not pass exactly once through handle {}",
            Letter::pos(generator),
            rel + 1
        )));
    }
    let mut moves = Vec::new();
    if h.framing.rem_euclid(2) == 1 {
        moves.push(Move::HandleTwist { generator });
    } else {
        for _ in 0..h.framing.abs() / 2 {
            moves.push(Move::MeridianFrameSlide { i: rel, delta: -h.framing.signum() * 2 });
        }
    }
    let pos = core
        .letters()
        .iter()
        .position(|l| l.generator == generator)
        .expect("single occurrence");
    // core = u g v; conjugating c u g v c^-1 by u^-1 c^-1 gives g v u
    let u = Word::reduce(core.letters()[..pos].iter().copied());
    let w = &u.inverse() * &conj.inverse();
    if !w.is_empty() {
        moves.push(Move::Isotopy { i: rel, w, invert: false });
    }
    moves.push(Move::CancelPair { generator, rel });
    Ok(moves)
}

/// First handle through which `generator` passes exactly once.
pub fn eliminating_handle(d: &NormalFormDiagram, generator: usize) -> Option<usize> {
    d.handles
        .iter()
        .position(|h| h.word.cyclic_reduce().0.occurrences(generator) == 1)
}

/// Geometric `T1'` eliminating `generator` against the first handle that
/// passes over it exactly once.
pub fn geometric_t1_inverse(
    d: &NormalFormDiagram,
    generator: usize,
) -> Result<(NormalFormDiagram, MoveCertificate)> {
    check_generator(d, generator)?;
    let rel = eliminating_handle(d, generator).ok_or_else(|| {
        Error::rejected(format!(
            "no handle passes exactly once over 1-handle {}",
            Letter::pos(generator)
        ))
    })?;
    geometric_t1_inverse_at(d, generator, rel)
}

pub fn geometric_t1_inverse_at(
    d: &NormalFormDiagram,
    generator: usize,
    rel: usize,
) -> Result<(NormalFormDiagram, MoveCertificate)> {
    let moves = t1_inverse_moves(d, generator, rel)?;
    run(d, moves)
}

pub fn geometric_s1(
    d: &NormalFormDiagram,
    i: usize,
    j: usize,
    sign: i8,
    w: &Word,
) -> Result<(NormalFormDiagram, MoveCertificate)> {
    run(d, vec![Move::RelatorMultiply { i, j, sign, w: w.clone() }])
}

pub fn geometric_s2(d: &NormalFormDiagram) -> Result<(NormalFormDiagram, MoveCertificate)> {
    run(d, vec![Move::Stabilize])
}

/// Removes the first unknotted 0-framed circle.
pub fn geometric_s2_inverse(d: &NormalFormDiagram) -> Result<(NormalFormDiagram, MoveCertificate)> {
    let rel = d
        .handles
        .iter()
        .position(|h| h.word.is_empty() && h.framing == 0)
        .ok_or_else(|| Error::rejected("no unknotted 0-framed circle to remove"))?;
    run(d, vec![Move::Destabilize { rel }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coboundary_matrix;

    fn d(n: usize, hs: &[(&str, i64)]) -> NormalFormDiagram {
        NormalFormDiagram::new(
            n,
            hs.iter().map(|(w, f)| Handle::new(Word::parse(w).unwrap(), *f)).collect(),
        )
        .unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn relator_multiply_example() {
        let m = Move::RelatorMultiply { i: 0, j: 1, sign: -1, w: w("a") };
        assert_eq!(apply_move(&d(1, &[("aaa", 0), ("a", 1)]), &m).unwrap(), d(1, &[("aa", 1), ("a", 1)]));
        let m = Move::RelatorMultiply { i: 0, j: 0, sign: 1, w: w("") };
        assert!(matches!(apply_move(&d(1, &[("a", 0)]), &m), Err(Error::RejectedMove(_))));
    }

    #[test]
    fn handle_twist_examples() {
        let t = Move::HandleTwist { generator: 0 };
        assert_eq!(apply_move(&d(1, &[("aaa", 0)]), &t).unwrap(), d(1, &[("aaa", 1)]));
        let base = d(2, &[("abAB", 0)]);
        assert_eq!(apply_move(&base, &t).unwrap(), base);
    }

    #[test]
    fn twist_changes_cocycle_by_column() {
        let base = d(2, &[("aab", 0), ("ab", 1), ("bbb", 1)]);
        let cob = coboundary_matrix(&base.presentation());
        for g in 0..2 {
            let after = apply_move(&base, &Move::HandleTwist { generator: g }).unwrap();
            let before_w = base.normal_one_type().unwrap().w_class;
            let after_w = after.normal_one_type().unwrap().w_class;
            assert_eq!(after_w.add(&before_w), cob.column(g));
        }
    }

    #[test]
    fn cancel_pair_example() {
        let m = Move::CancelPair { generator: 1, rel: 0 };
        assert_eq!(apply_move(&d(2, &[("b", 0), ("bab", 1)]), &m).unwrap(), d(1, &[("a", 1)]));
        let odd = d(2, &[("b", 1), ("bab", 1)]);
        assert!(matches!(apply_move(&odd, &m), Err(Error::RejectedMove(_))));
        let twice = d(2, &[("bab", 0)]);
        assert!(apply_move(&twice, &m).is_err());
    }

    #[test]
    fn stabilize_and_slides() {
        assert_eq!(apply_move(&d(1, &[]), &Move::Stabilize).unwrap(), d(1, &[("", 0)]));
        let m = Move::MeridianFrameSlide { i: 0, delta: -2 };
        assert_eq!(apply_move(&d(1, &[("a", 2)]), &m).unwrap(), d(1, &[("a", 0)]));
        let m = Move::MeridianFrameSlide { i: 0, delta: 1 };
        assert!(apply_move(&d(1, &[("a", 2)]), &m).is_err());
        let m = Move::Destabilize { rel: 0 };
        assert!(apply_move(&d(1, &[("a", 0)]), &m).is_err());
        assert_eq!(apply_move(&d(1, &[("", 0)]), &m).unwrap(), d(1, &[]));
    }

    #[test]
    fn isotopy_conjugates_and_inverts() {
        let m = Move::Isotopy { i: 0, w: w("A"), invert: false };
        assert_eq!(apply_move(&d(2, &[("ab", 0)]), &m).unwrap(), d(2, &[("ba", 0)]));
        let m = Move::Isotopy { i: 0, w: w(""), invert: true };
        assert_eq!(apply_move(&d(2, &[("ab", 1)]), &m).unwrap(), d(2, &[("BA", 1)]));
    }

    #[test]
    fn replay_examples() {
        let base = d(1, &[("aaa", 0)]);
        replay(&base, &MoveCertificate::identity(), &base).unwrap();
        let target = d(1, &[("aaa", 0), ("", 0)]);
        let cert = MoveCertificate {
            left_stabilizations: 1,
            ..Default::default()
        };
        replay(&base, &cert, &target).unwrap();
        let (two, cert) = geometric_t1(&base, &w("aa")).unwrap();
        assert_eq!(two, d(2, &[("aaa", 0), ("bAA", 0)]));
        replay(&base, &cert, &two).unwrap();
        let err = replay(&base, &MoveCertificate::identity(), &two).unwrap_err();
        assert_eq!(err, ReplayError::Mismatch { moves: 0 });
        let bad = MoveCertificate::single(Move::CancelPair { generator: 0, rel: 0 });
        assert_eq!(replay(&base, &bad, &two).unwrap_err().move_index(), Some(0));
    }

    #[test]
    fn geometric_t1_round_trip() {
        let base = d(1, &[("aaa", 0)]);
        let (two, _) = geometric_t1(&base, &w("aa")).unwrap();
        let (back, cert) = geometric_t1_inverse(&two, 1).unwrap();
        assert_eq!(back, base);
        replay(&two, &cert, &back).unwrap();
    }

    #[test]
    fn geometric_t1_inverse_twists_odd_handle() {
        // twisting b flips "b" (exponent 1) and leaves "bab" (exponent 2)
        let start = d(2, &[("b", 1), ("bab", 1)]);
        let (out, cert) = geometric_t1_inverse(&start, 1).unwrap();
        assert_eq!(cert.moves[0], Move::HandleTwist { generator: 1 });
        assert_eq!(out, d(1, &[("a", 1)]));
        replay(&start, &cert, &out).unwrap();
    }

    #[test]
    fn geometric_t1_inverse_uses_isotopy_for_buried_generator() {
        let start = d(3, &[("cabC", 0), ("bcb", 1)]);
        let (out, cert) = geometric_t1_inverse(&start, 1).unwrap();
        assert!(cert.moves.iter().any(|m| matches!(m, Move::Isotopy { .. })));
        let expected = start.presentation().tietze_t1_inverse(1, 0).unwrap();
        assert_eq!(out.presentation(), expected);
        replay(&start, &cert, &out).unwrap();
    }

    #[test]
    fn geometric_s2_round_trip() {
        let base = d(1, &[]);
        let (st, cert) = geometric_s2(&base).unwrap();
        assert_eq!(st, d(1, &[("", 0)]));
        assert_eq!(st.euler_characteristic(), base.euler_characteristic() + 2);
        replay(&base, &cert, &st).unwrap();
        let (back, _) = geometric_s2_inverse(&st).unwrap();
        assert_eq!(back, base);
        assert!(geometric_s2_inverse(&base).is_err());
    }
}
