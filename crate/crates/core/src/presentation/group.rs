//! Finite groups as Cayley tables, and homomorphism counting from a
//! presentation into them.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

use super::Presentation;

/// A finite group given by its multiplication table, validated on
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Checks closure, associativity, identity and inverses.
    #[allow(clippy::needless_range_loop)]
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::malformed("group table is empty"));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::malformed("group table is not square"));
            }
            if row.iter().any(|&x| x >= n) {
                return Err(Error::malformed("group table is not closed"));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::malformed("group table has no identity"))?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or_else(|| Error::malformed(format!("element {x} has no inverse")))?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::malformed(format!(
                            "group table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.into(),
            table,
            identity,
            inverses,
        })
    }

    /// Builds the table of a group given by an explicit element list closed
    /// under `mul`.
    pub fn from_elements<E, F>(name: impl Into<String>, elements: Vec<E>, mul: F) -> Result<Self>
    where
        E: Eq + Hash + Clone,
        F: Fn(&E, &E) -> E,
    {
        let index: HashMap<E, usize> = elements.iter().cloned().zip(0..).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in &elements {
                let ab = mul(a, b);
                row.push(
                    *index
                        .get(&ab)
                        .ok_or_else(|| Error::malformed("element list not closed under product"))?,
                );
            }
            table.push(row);
        }
        FiniteGroup::from_table(name, table)
    }

    /// Subgroup of `Sym(degree)` generated by the given permutations.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<usize>]) -> Result<Self> {
        let identity: Vec<usize> = (0..degree).collect();
        let compose = |p: &Vec<usize>, q: &Vec<usize>| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let mut elements = vec![identity];
        let mut frontier = 0;
        while frontier < elements.len() {
            let x = elements[frontier].clone();
            frontier += 1;
            for g in gens {
                let y = compose(&x, g);
                if !elements.contains(&y) {
                    elements.push(y);
                }
            }
        }
        FiniteGroup::from_elements(name, elements, compose)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(format!("Z/{n}"), table).expect("cyclic table is a group")
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (m, n) = (a.order(), b.order());
        let table = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| a.table[x / n][y / n] * n + b.table[x % n][y % n])
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("{}x{}", a.name, b.name), table).expect("product of groups")
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut swap: Vec<usize> = (0..degree).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
            gens.push(swap);
            gens.push(cycle);
        }
        FiniteGroup::from_permutations(format!("S{degree}"), degree, &gens).expect("symmetric group")
    }

    /// Symmetries of the regular `n`-gon, of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_permutations(format!("D{n}"), n, &[rotation, reflection]).expect("dihedral group")
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Self {
        // (sign, unit) with unit 0 = 1, 1 = i, 2 = j, 3 = k
        let elements: Vec<(i8, u8)> = [1, -1]
            .into_iter()
            .flat_map(|s| (0..4).map(move |u| (s, u)))
            .collect();
        let mul = |&(s, a): &(i8, u8), &(t, b): &(i8, u8)| -> (i8, u8) {
            let (sign, unit) = match (a, b) {
                (0, x) | (x, 0) => (1, x),
                (x, y) if x == y => (-1, 0),
                (1, 2) => (1, 3),
                (2, 3) => (1, 1),
                (3, 1) => (1, 2),
                (2, 1) => (-1, 3),
                (3, 2) => (-1, 1),
                (1, 3) => (-1, 2),
                _ => unreachable!(),
            };
            (s * t * sign, unit)
        };
        FiniteGroup::from_elements("Q8", elements, mul).expect("quaternion group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// Groups used to fingerprint fundamental groups: every group of order at
/// most 8 that the classifier compares by default.
pub fn default_fingerprint_groups() -> Vec<FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2);
    vec![
        z2.clone(),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::product(&z2, &z2),
        FiniteGroup::symmetric(3),
        FiniteGroup::cyclic(5),
        FiniteGroup::cyclic(6),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
    ]
}

/// Number of assignments of group elements to generators that satisfy
/// every relator, by exhaustive enumeration.
pub fn hom_count(p: &Presentation, g: &FiniteGroup) -> u64 {
    let n = p.num_generators;
    let order = g.order();
    let mut images = vec![g.identity(); n];
    let mut inv_images = vec![g.identity(); n];
    let mut tuple = vec![0usize; n];
    let mut count = 0u64;
    loop {
        for i in 0..n {
            images[i] = tuple[i];
            inv_images[i] = g.inv(tuple[i]);
        }
        let ok = p.relators.iter().all(|r| {
            r.letters().iter().fold(g.identity(), |acc, l| {
                let x = if l.inverse {
                    inv_images[l.generator]
                } else {
                    images[l.generator]
                };
                g.mul(acc, x)
            }) == g.identity()
        });
        if ok {
            count += 1;
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            tuple[i] += 1;
            if tuple[i] < order {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}
