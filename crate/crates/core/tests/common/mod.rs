//! Random instances and independent oracles shared by the integration tests.
#![allow(dead_code)]

use handlebody::{Handle, IntMatrix, Letter, NormalFormDiagram, Presentation, Word};
use rand::Rng;

pub fn random_word<R: Rng>(rng: &mut R, num_generators: usize, max_len: usize) -> Word {
    if num_generators == 0 {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    Word::reduce((0..len).map(|_| Letter::new(rng.gen_range(0..num_generators), rng.gen())))
}

/// A presentation with 1..=max_gens generators and 0..=max_rels relators.
pub fn random_presentation<R: Rng>(rng: &mut R, max_gens: usize, max_rels: usize, max_len: usize) -> Presentation {
    let n = rng.gen_range(1..=max_gens);
    let k = rng.gen_range(0..=max_rels);
    Presentation::new(n, (0..k).map(|_| random_word(rng, n, max_len)).collect()).unwrap()
}

pub fn random_diagram<R: Rng>(rng: &mut R, max_gens: usize, max_rels: usize, max_len: usize) -> NormalFormDiagram {
    let p = random_presentation(rng, max_gens, max_rels, max_len);
    let framings: Vec<i64> = (0..p.num_relators()).map(|_| rng.gen_range(0..=1)).collect();
    NormalFormDiagram::from_presentation(&p, &framings).unwrap()
}

pub fn diagram(n: usize, handles: &[(&str, i64)]) -> NormalFormDiagram {
    NormalFormDiagram::new(
        n,
        handles.iter().map(|(w, f)| Handle::new(Word::parse(w).unwrap(), *f)).collect(),
    )
    .unwrap()
}

/// Every freely reduced word over `n` generators of length at most `max_len`,
/// built letter by letter without reference to the library's enumerator.
pub fn all_reduced_words(n: usize, max_len: usize) -> Vec<Word> {
    let mut layer: Vec<Vec<(usize, bool)>> = vec![Vec::new()];
    let mut out = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..n {
                for inv in [false, true] {
                    if w.last() == Some(&(g, !inv)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push((g, inv));
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|w| Word::reduce(w.iter().map(|&(g, i)| Letter::new(g, i)))));
        layer = next;
    }
    out
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// k x k minors and the k-th factor is `d_k / d_{k-1}`.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = 1;
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Signature from floating-point eigenvalues.
pub fn float_signature(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 0;
    }
    let a = nalgebra::DMatrix::from_fn(n, n, |i, j| m[i][j] as f64);
    let eig = a.symmetric_eigen();
    eig.eigenvalues.iter().map(|&l| if l > 1e-9 { 1 } else if l < -1e-9 { -1 } else { 0 }).sum()
}

/// The 2k x 2k block matrix with blocks `[[f, 1], [1, 0]]`, built without
/// the library's normalization check.
pub fn block_linking_matrix(d: &NormalFormDiagram) -> IntMatrix {
    let k = d.handles.len();
    IntMatrix::from_fn(2 * k, 2 * k, |i, j| {
        if i / 2 != j / 2 {
            0
        } else if i % 2 == 0 && j % 2 == 0 {
            d.handles[i / 2].framing
        } else if i % 2 == 1 && j % 2 == 1 {
            0
        } else {
            1
        }
    })
}

#[allow(clippy::needless_range_loop)]
pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}
