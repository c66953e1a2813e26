//! Bounded bidirectional breadth-first search for Tietze paths.
//!
//! The forward side explores every transformation from the source. The
//! backward side explores only `T1`, `S1` and `S2` from the target, since
//! each of those has a single-step exact inverse (`T1'` on the last
//! generator and relator, `S1` with the opposite sign, `S2'` on the last
//! relator). The two sides meet when their presentations agree up to
//! relator order; the forward side also stops as soon as it reaches the
//! target up to rotation, inversion and order of relators.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Word, ALPHABET_SIZE};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "op")]
pub enum TietzeStep {
    T1 { x: Word },
    T1Inverse { generator: usize, rel: usize },
    S1 { i: usize, j: usize, sign: i8, w: Word },
    S2Add,
    S2Delete { rel: usize },
}

impl TietzeStep {
    pub fn apply(&self, p: &Presentation) -> Result<Presentation> {
        match self {
            TietzeStep::T1 { x } => p.tietze_t1(x),
            TietzeStep::T1Inverse { generator, rel } => p.tietze_t1_inverse(*generator, *rel),
            TietzeStep::S1 { i, j, sign, w } => p.tietze_s1(*i, *j, *sign, w),
            TietzeStep::S2Add => p.tietze_s2(None),
            TietzeStep::S2Delete { rel } => p.tietze_s2(Some(*rel)),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TietzePath {
    pub steps: Vec<TietzeStep>,
}

impl TietzePath {
    pub fn new(steps: Vec<TietzeStep>) -> Self {
        TietzePath { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies every step in order, naming the first step that fails.
    pub fn apply(&self, p: &Presentation) -> Result<Presentation> {
        self.steps.iter().enumerate().try_fold(p.clone(), |cur, (k, s)| {
            s.apply(&cur)
                .map_err(|e| Error::precondition(format!("path step {}: {e}", k + 1)))
        })
    }
}

/// Search bounds: total path length, longest word used in `T1`/`S1`
/// candidates, and the number of stored presentations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub depth: usize,
    pub word_bound: usize,
    pub budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth: 4,
            word_bound: 4,
            budget: 100_000,
        }
    }
}

/// All freely reduced words of length at most `max_len`, in shortlex order.
pub fn words_up_to(num_generators: usize, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..num_generators)
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_none_or(|last| !last.cancels(l)) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|v| Word::reduce(v.iter().copied())));
        layer = next;
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Forward,
    Backward,
}

struct Neighbours<'a> {
    words: &'a HashMap<usize, Vec<Word>>,
}

impl Neighbours<'_> {
    fn of(&self, p: &Presentation, side: Side) -> Vec<(TietzeStep, Presentation)> {
        let words = &self.words[&p.num_generators];
        let k = p.num_relators();
        let mut out = Vec::new();
        let mut push = |step: TietzeStep| {
            if let Ok(q) = step.apply(p) {
                out.push((step, q));
            }
        };
        if p.num_generators < ALPHABET_SIZE {
            for x in words {
                push(TietzeStep::T1 { x: x.clone() });
            }
        }
        if side == Side::Forward {
            for g in 0..p.num_generators {
                for r in 0..k {
                    if p.relators[r].cyclic_reduce().0.occurrences(g) == 1 {
                        push(TietzeStep::T1Inverse { generator: g, rel: r });
                    }
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                for sign in [1i8, -1] {
                    for w in words {
                        push(TietzeStep::S1 { i, j, sign, w: w.clone() });
                    }
                }
            }
        }
        push(TietzeStep::S2Add);
        if side == Side::Forward {
            for r in 0..k {
                if p.relators[r].is_empty() {
                    push(TietzeStep::S2Delete { rel: r });
                }
            }
        }
        out
    }
}

/// Exact single-step inverse of a backward-side step applied to `before`.
fn invert_backward(step: &TietzeStep, before: &Presentation) -> TietzeStep {
    match step {
        TietzeStep::T1 { .. } => TietzeStep::T1Inverse {
            generator: before.num_generators,
            rel: before.num_relators(),
        },
        TietzeStep::S1 { i, j, sign, w } => TietzeStep::S1 {
            i: *i,
            j: *j,
            sign: -sign,
            w: w.clone(),
        },
        TietzeStep::S2Add => TietzeStep::S2Delete {
            rel: before.num_relators(),
        },
        _ => unreachable!("backward search only uses T1, S1 and S2"),
    }
}

type Parents = HashMap<Presentation, Option<(Presentation, TietzeStep)>>;

fn trace(parents: &Parents, end: &Presentation) -> Vec<(Presentation, TietzeStep)> {
    let mut out = Vec::new();
    let mut cur = end.clone();
    while let Some(Some((prev, step))) = parents.get(&cur) {
        out.push((prev.clone(), step.clone()));
        cur = prev.clone();
    }
    out.reverse();
    out
}

/// Searches for a path from `source` to a presentation equal to `target`
/// up to order, rotation and inversion of relators.
///
/// Candidate moves are generated in a fixed order and merged sequentially,
/// so the result depends only on the inputs and the bounds even though
/// neighbourhoods are computed in parallel.
pub fn tietze_search(source: &Presentation, target: &Presentation, config: &SearchConfig) -> Option<TietzePath> {
    let goal = target.canonical_key();
    if source.canonical_key() == goal {
        return Some(TietzePath::default());
    }

    let mut words: HashMap<usize, Vec<Word>> = HashMap::new();
    let mut fwd: Parents = HashMap::from([(source.clone(), None)]);
    let mut bwd: Parents = HashMap::from([(target.clone(), None)]);
    let mut fwd_keys: HashMap<(usize, Vec<Word>), Presentation> =
        HashMap::from([(source.unordered_key(), source.clone())]);
    let mut bwd_keys: HashMap<(usize, Vec<Word>), Presentation> =
        HashMap::from([(target.unordered_key(), target.clone())]);
    let mut fwd_frontier = vec![source.clone()];
    let mut bwd_frontier = vec![target.clone()];
    let (mut fwd_depth, mut bwd_depth) = (0, 0);

    while fwd_depth + bwd_depth < config.depth && fwd.len() + bwd.len() < config.budget {
        let side = if bwd_frontier.len() < fwd_frontier.len() {
            Side::Backward
        } else {
            Side::Forward
        };
        let frontier = match side {
            Side::Forward => std::mem::take(&mut fwd_frontier),
            Side::Backward => std::mem::take(&mut bwd_frontier),
        };
        if frontier.is_empty() {
            break;
        }
        for p in &frontier {
            words
                .entry(p.num_generators)
                .or_insert_with(|| words_up_to(p.num_generators, config.word_bound));
        }
        let gen = Neighbours { words: &words };
        let expanded: Vec<Vec<(TietzeStep, Presentation)>> =
            frontier.par_iter().map(|p| gen.of(p, side)).collect();

        let mut next = Vec::new();
        for (p, neighbours) in frontier.iter().zip(expanded) {
            for (step, q) in neighbours {
                match side {
                    Side::Forward => {
                        if fwd.contains_key(&q) {
                            continue;
                        }
                        fwd.insert(q.clone(), Some((p.clone(), step)));
                        if q.canonical_key() == goal {
                            return Some(TietzePath::new(trace(&fwd, &q).into_iter().map(|(_, s)| s).collect()));
                        }
                        let key = q.unordered_key();
                        if let Some(b) = bwd_keys.get(&key) {
                            return Some(join(&q, &fwd, b, &bwd));
                        }
                        fwd_keys.entry(key).or_insert_with(|| q.clone());
                    }
                    Side::Backward => {
                        if bwd.contains_key(&q) {
                            continue;
                        }
                        bwd.insert(q.clone(), Some((p.clone(), step)));
                        let key = q.unordered_key();
                        if let Some(f) = fwd_keys.get(&key) {
                            let f = f.clone();
                            return Some(join(&f, &fwd, &q, &bwd));
                        }
                        bwd_keys.entry(key).or_insert_with(|| q.clone());
                    }
                }
                next.push(q);
                if fwd.len() + bwd.len() >= config.budget {
                    return None;
                }
            }
        }
        match side {
            Side::Forward => {
                fwd_frontier = next;
                fwd_depth += 1;
            }
            Side::Backward => {
                bwd_frontier = next;
                bwd_depth += 1;
            }
        }
    }
    None
}

/// Concatenates the forward path to `meet_fwd` with the inverted backward
/// path from `meet_bwd`, translating relator indices between the two
/// orderings of the shared relator multiset.
fn join(meet_fwd: &Presentation, fwd: &Parents, meet_bwd: &Presentation, bwd: &Parents) -> TietzePath {
    let mut steps: Vec<TietzeStep> = trace(fwd, meet_fwd).into_iter().map(|(_, s)| s).collect();

    // perm[b] = index in the forward ordering of backward relator b
    let mut used = vec![false; meet_fwd.num_relators()];
    let mut perm: Vec<usize> = meet_bwd
        .relators
        .iter()
        .map(|r| {
            let f = (0..meet_fwd.num_relators())
                .find(|&f| !used[f] && meet_fwd.relators[f] == *r)
                .expect("meeting presentations share their relators");
            used[f] = true;
            f
        })
        .collect();

    let remove = |perm: &mut Vec<usize>, b: usize| -> usize {
        let f = perm.remove(b);
        for x in perm.iter_mut() {
            if *x > f {
                *x -= 1;
            }
        }
        f
    };

    for (before, step) in trace(bwd, meet_bwd).into_iter().rev() {
        let inv = invert_backward(&step, &before);
        let translated = match inv {
            TietzeStep::S1 { i, j, sign, w } => TietzeStep::S1 {
                i: perm[i],
                j: perm[j],
                sign,
                w,
            },
            TietzeStep::T1Inverse { generator, rel } => TietzeStep::T1Inverse {
                generator,
                rel: remove(&mut perm, rel),
            },
            TietzeStep::S2Delete { rel } => TietzeStep::S2Delete {
                rel: remove(&mut perm, rel),
            },
            _ => unreachable!(),
        };
        steps.push(translated);
    }
    TietzePath::new(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{hom_count, FiniteGroup};

    fn p(n: usize, rels: &[&str]) -> Presentation {
        Presentation::parse(n, rels).unwrap()
    }

    #[test]
    fn word_enumeration_counts() {
        // 1 + 4 + 4*3 + 4*9
        assert_eq!(words_up_to(2, 3).len(), 53);
        assert_eq!(words_up_to(0, 4), vec![Word::empty()]);
        let ws = words_up_to(1, 2);
        assert_eq!(ws.iter().map(|w| w.token()).collect::<Vec<_>>(), vec!["-", "a", "A", "aa", "AA"]);
    }

    #[test]
    fn finds_single_t1() {
        let cfg = SearchConfig { depth: 2, ..Default::default() };
        let path = tietze_search(&p(1, &["aaa"]), &p(2, &["aaa", "b"]), &cfg).unwrap();
        assert_eq!(path.steps, vec![TietzeStep::T1 { x: Word::empty() }]);
    }

    #[test]
    fn equal_presentations_give_empty_path() {
        let a = p(2, &["abAB"]);
        assert!(tietze_search(&a, &a, &SearchConfig::default()).unwrap().is_empty());
        // rotation of a relator is already equal up to canonical form
        assert!(tietze_search(&a, &p(2, &["bABa"]), &SearchConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn non_isomorphic_groups_have_no_path() {
        let cfg = SearchConfig { depth: 2, word_bound: 2, budget: 5_000 };
        let (a, b) = (p(1, &["aaa"]), p(1, &["aa"]));
        assert!(tietze_search(&a, &b, &cfg).is_none());
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!((hom_count(&a, &z3), hom_count(&b, &z3)), (3, 1));
    }

    #[test]
    fn backward_meeting_is_translated() {
        // the backward frontier is expanded once the forward one has grown
        let src = p(1, &["aaa", "a"]);
        let dst = p(2, &["a", "aaa", "bA"]);
        let cfg = SearchConfig { depth: 3, word_bound: 1, budget: 100_000 };
        let path = tietze_search(&src, &dst, &cfg).unwrap();
        let end = path.apply(&src).unwrap();
        assert_eq!(end.canonical_key(), dst.canonical_key());
    }

    #[test]
    fn join_translates_indices() {
        let meet_fwd = p(2, &["", "b", "aaa"]);
        let meet_bwd = p(2, &["aaa", "b", ""]);
        let mut fwd: Parents = HashMap::new();
        fwd.insert(meet_fwd.clone(), None);
        let mut bwd: Parents = HashMap::new();
        let target = p(2, &["aaa", "b"]);
        bwd.insert(target.clone(), None);
        bwd.insert(meet_bwd.clone(), Some((target.clone(), TietzeStep::S2Add)));
        let path = join(&meet_fwd, &fwd, &meet_bwd, &bwd);
        assert_eq!(path.steps, vec![TietzeStep::S2Delete { rel: 0 }]);
        assert_eq!(path.apply(&meet_fwd).unwrap().unordered_key(), target.unordered_key());
    }
}
