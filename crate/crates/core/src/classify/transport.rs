use std::collections::VecDeque;

use crate::diagram::NormalFormDiagram;
use crate::error::{Error, Result};
use crate::moves::{apply_move, stabilize, t1_inverse_moves, Move, MoveCertificate};

use super::search::{TietzePath, TietzeStep};

/// Realizes a Tietze path on a diagram whose presentation it starts from.
///
/// `T1`, `T1'` and `S1` steps become handle moves; every `S2` step consumes
/// one of the `S^2 x S^2` summands added up front and recorded as a left
/// stabilization. `S2'` steps become destabilizations.
pub fn transport(path: &TietzePath, d: &NormalFormDiagram) -> Result<(NormalFormDiagram, MoveCertificate)> {
    let stabilizations = path.steps.iter().filter(|s| matches!(s, TietzeStep::S2Add)).count();
    let mut cur = stabilize(d, stabilizations);
    let mut pres = d.presentation();
    // relator index -> handle index; spare summands wait in `reserved`
    let mut map: Vec<usize> = (0..d.num_handles()).collect();
    let mut reserved: VecDeque<usize> = (d.num_handles()..cur.num_handles()).collect();
    let mut moves = Vec::new();

    let drop_handle = |map: &mut Vec<usize>, reserved: &mut VecDeque<usize>, rel: usize| {
        let h = map.remove(rel);
        for x in map.iter_mut().chain(reserved.iter_mut()) {
            if *x > h {
                *x -= 1;
            }
        }
    };

    for (k, step) in path.steps.iter().enumerate() {
        let fail = |e: Error| Error::rejected(format!("path step {}: {e}", k + 1));
        let next = step.apply(&pres).map_err(fail)?;
        let step_moves = match step {
            TietzeStep::T1 { x } => {
                map.push(cur.num_handles());
                vec![Move::AddGenerator { x: x.clone() }]
            }
            TietzeStep::T1Inverse { generator, rel } => {
                let ms = t1_inverse_moves(&cur, *generator, map[*rel]).map_err(fail)?;
                drop_handle(&mut map, &mut reserved, *rel);
                ms
            }
            TietzeStep::S1 { i, j, sign, w } => vec![Move::RelatorMultiply {
                i: map[*i],
                j: map[*j],
                sign: *sign,
                w: w.clone(),
            }],
            TietzeStep::S2Add => {
                map.push(reserved.pop_front().expect("one summand per S2 step"));
                Vec::new()
            }
            TietzeStep::S2Delete { rel } => {
                let m = Move::Destabilize { rel: map[*rel] };
                drop_handle(&mut map, &mut reserved, *rel);
                vec![m]
            }
        };
        for m in &step_moves {
            cur = apply_move(&cur, m).map_err(fail)?;
        }
        moves.extend(step_moves);
        pres = next;
        debug_assert!(map.iter().zip(&pres.relators).all(|(&h, r)| cur.handles[h].word == *r));
    }

    Ok((
        cur,
        MoveCertificate {
            moves,
            left_stabilizations: stabilizations,
            right_stabilizations: 0,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Handle;
    use crate::moves::replay;
    use crate::presentation::Word;

    fn d(n: usize, hs: &[(&str, i64)]) -> NormalFormDiagram {
        NormalFormDiagram::new(
            n,
            hs.iter().map(|(w, f)| Handle::new(Word::parse(w).unwrap(), *f)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_t1() {
        let path = TietzePath::new(vec![TietzeStep::T1 { x: Word::empty() }]);
        let base = d(1, &[("aaa", 0)]);
        let (out, cert) = transport(&path, &base).unwrap();
        assert_eq!(out, d(2, &[("aaa", 0), ("b", 0)]));
        assert_eq!(cert.moves, vec![Move::AddGenerator { x: Word::empty() }]);
        replay(&base, &cert, &out).unwrap();
    }

    #[test]
    fn s2_counts_a_stabilization() {
        let base = d(2, &[("abAB", 1)]);
        let (out, cert) = transport(&TietzePath::new(vec![TietzeStep::S2Add]), &base).unwrap();
        assert_eq!(out, d(2, &[("abAB", 1), ("", 0)]));
        assert_eq!((cert.left_stabilizations, cert.right_stabilizations), (1, 0));
        assert!(cert.moves.is_empty());
        replay(&base, &cert, &out).unwrap();
    }

    #[test]
    fn empty_path_is_identity() {
        let base = d(1, &[("aa", 1)]);
        let (out, cert) = transport(&TietzePath::default(), &base).unwrap();
        assert_eq!(out, base);
        assert_eq!(cert, MoveCertificate::identity());
    }

    #[test]
    fn mixed_path_keeps_handles_aligned() {
        let base = d(2, &[("aab", 1), ("ab", 0)]);
        let path = TietzePath::new(vec![
            TietzeStep::S2Add,
            TietzeStep::T1 { x: Word::parse("aB").unwrap() },
            TietzeStep::S1 { i: 0, j: 1, sign: -1, w: Word::empty() },
            TietzeStep::T1Inverse { generator: 1, rel: 1 },
            TietzeStep::S2Delete { rel: 1 },
        ]);
        let end = path.apply(&base.presentation()).unwrap();
        let (out, cert) = transport(&path, &base).unwrap();
        assert_eq!(out.presentation().unordered_key(), end.unordered_key());
        assert_eq!(cert.left_stabilizations, 1);
        replay(&base, &cert, &out).unwrap();
    }

    #[test]
    fn failing_step_is_named() {
        let base = d(1, &[("aaa", 0)]);
        let path = TietzePath::new(vec![TietzeStep::S2Delete { rel: 0 }]);
        let err = transport(&path, &base).unwrap_err();
        assert!(err.to_string().contains("path step 1"), "{err}");
    }
}
