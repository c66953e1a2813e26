//! Stable diffeomorphism decisions for normal-form diagrams.
//!
//! Two thickenings with the same signature and the same normal 1-type are
//! stably diffeomorphic. Fundamental groups are told apart by finite-quotient
//! and homology fingerprints, and identified through an explicit Tietze
//! path along which the framing classes are compared. A positive answer
//! always comes with a certificate that replays.

mod search;
mod transport;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{coboundary_witness, h1_invariants, F2Vector};
use crate::diagram::NormalFormDiagram;
use crate::error::{Error, Result};
use crate::moves::{apply_move, replay, Move, MoveCertificate};
use crate::presentation::{hom_count, FiniteGroup, Word};

pub use search::{tietze_search, words_up_to, SearchConfig, TietzePath, TietzeStep};
pub use transport::transport;

/// An invariant whose values differ between the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantWitness {
    pub name: String,
    pub left: String,
    pub right: String,
}

impl InvariantWitness {
    fn new(name: impl Into<String>, left: impl ToString, right: impl ToString) -> Self {
        InvariantWitness {
            name: name.into(),
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    StablyDiffeomorphic {
        certificate: MoveCertificate,
        path: TietzePath,
    },
    /// Every invariant found to differ, in the order they were checked.
    DistinctInvariant { witnesses: Vec<InvariantWitness> },
    NotDetermined { reason: String },
}

impl Verdict {
    /// Scripting exit code: 0, 1 or 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::StablyDiffeomorphic { .. } => 0,
            Verdict::DistinctInvariant { .. } => 1,
            Verdict::NotDetermined { .. } => 2,
        }
    }
}

/// Decision options. `groups` are the fingerprint targets.
#[derive(Debug, Clone)]
pub struct DecideOptions {
    pub search: SearchConfig,
    pub groups: Vec<FiniteGroup>,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            search: SearchConfig::default(),
            groups: crate::presentation::default_fingerprint_groups(),
        }
    }
}

/// Decides whether two normalized diagrams are stably diffeomorphic.
///
/// `path`, when supplied, must carry the first presentation to the second
/// up to order, rotation and inversion of relators; otherwise one is
/// searched for within `options.search`.
pub fn stable_diffeo_decide(
    d1: &NormalFormDiagram,
    d2: &NormalFormDiagram,
    path: Option<&TietzePath>,
    options: &DecideOptions,
) -> Result<Verdict> {
    let (sig1, sig2) = (d1.signature()?, d2.signature()?);
    if sig1 != sig2 {
        return Ok(Verdict::DistinctInvariant {
            witnesses: vec![InvariantWitness::new("signature", sig1, sig2)],
        });
    }

    let (p1, p2) = (d1.presentation(), d2.presentation());
    let mut witnesses = Vec::new();
    for g in &options.groups {
        let (a, b) = (hom_count(&p1, g), hom_count(&p2, g));
        if a != b {
            witnesses.push(InvariantWitness::new(format!("hom_count {}", g.name()), a, b));
        }
    }
    let (h1, h2) = (h1_invariants(&p1), h1_invariants(&p2));
    if h1 != h2 {
        witnesses.push(InvariantWitness::new("H1", h1, h2));
    }
    let (t1, t2) = (d1.normal_one_type()?, d2.normal_one_type()?);
    if t1.spin != t2.spin {
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        witnesses.push(InvariantWitness::new("spin", yes_no(t1.spin), yes_no(t2.spin)));
    }
    if !witnesses.is_empty() {
        return Ok(Verdict::DistinctInvariant { witnesses });
    }

    let path = match path {
        Some(p) => {
            let end = p.apply(&p1)?;
            if end.canonical_key() != p2.canonical_key() {
                return Err(Error::malformed(format!(
                    "supplied path ends at {end}, not at {p2}"
                )));
            }
            p.clone()
        }
        None => match tietze_search(&p1, &p2, &options.search) {
            Some(p) => p,
            None => {
                return Ok(Verdict::NotDetermined {
                    reason: format!(
                        "no Tietze path found within depth {}, word bound {}, budget {}",
                        options.search.depth, options.search.word_bound, options.search.budget
                    ),
                })
            }
        },
    };

    let (moved, mut certificate) = match transport(&path, d1) {
        Ok(x) => x,
        Err(e) => {
            return Ok(Verdict::NotDetermined {
                reason: format!("path could not be realized by handle moves: {e}"),
            })
        }
    };

    let Some(twists) = match_framing_classes(&moved, d2)? else {
        return Ok(Verdict::NotDetermined {
            reason: "framing classes differ under the identification of fundamental groups given by the path"
                .to_string(),
        });
    };
    let mut cur = moved;
    for g in twists {
        let m = Move::HandleTwist { generator: g };
        cur = apply_move(&cur, &m)?;
        certificate.moves.push(m);
    }

    let balance = certificate.left_stabilizations.min(certificate.right_stabilizations);
    certificate.left_stabilizations -= balance;
    certificate.right_stabilizations -= balance;
    if let Err(e) = replay(d1, &certificate, d2) {
        panic!("emitted certificate failed to replay: {e}");
    }
    Ok(Verdict::StablyDiffeomorphic { certificate, path })
}

/// Pairs the handles of `moved` with those of `target` (same words up to
/// rotation and inversion) and looks for a pairing under which the
/// framing cocycles differ by a coboundary. Returns the generators to
/// twist.
fn match_framing_classes(moved: &NormalFormDiagram, target: &NormalFormDiagram) -> Result<Option<Vec<usize>>> {
    let mut groups: BTreeMap<Word, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, h) in moved.handles.iter().enumerate() {
        groups.entry(h.word.canonical_cyclic()).or_default().0.push(i);
    }
    for (i, h) in target.handles.iter().enumerate() {
        groups.entry(h.word.canonical_cyclic()).or_default().1.push(i);
    }
    if moved.num_one_handles != target.num_one_handles
        || groups.values().any(|(a, b)| a.len() != b.len())
    {
        return Err(Error::precondition("diagrams do not carry the same attaching circles"));
    }

    let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().collect();
    let pres = moved.presentation();
    let mut assignment = vec![0usize; moved.num_handles()];
    let mut tries = 0usize;
    let mut found = None;
    assign_groups(&groups, 0, &mut assignment, &mut tries, &mut |assignment| {
        let diff = F2Vector::from_parities(
            (0..moved.num_handles()).map(|i| moved.handles[i].framing + target.handles[assignment[i]].framing),
        );
        match coboundary_witness(&pres, &diff) {
            Ok(Some(chi)) => {
                found = Some(chi.support().collect());
                true
            }
            _ => false,
        }
    });
    Ok(found)
}

/// Upper bound on pairings tried among handles with repeated words.
const MAX_PAIRINGS: usize = 5040;

fn assign_groups(
    groups: &[(Vec<usize>, Vec<usize>)],
    gi: usize,
    assignment: &mut Vec<usize>,
    tries: &mut usize,
    check: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if gi == groups.len() {
        *tries += 1;
        return check(assignment);
    }
    let (src, dst) = &groups[gi];
    let mut perm = dst.clone();
    permute(&mut perm, 0, &mut |p| {
        if *tries >= MAX_PAIRINGS {
            return true;
        }
        for (s, d) in src.iter().zip(p) {
            assignment[*s] = *d;
        }
        assign_groups(groups, gi + 1, assignment, tries, check)
    })
}

/// Visits permutations of `v[k..]` until `visit` returns true.
fn permute(v: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == v.len() {
        return visit(v);
    }
    for i in k..v.len() {
        v.swap(k, i);
        if permute(v, k + 1, visit) {
            v.swap(k, i);
            return true;
        }
        v.swap(k, i);
    }
    false
}
