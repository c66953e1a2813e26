use serde::Serialize;

use super::matrix::{IntegerMatrix, Scalar};

/// Smith normal form `left * M * right = diagonal`, with both transforms
/// unimodular and the diagonal entries forming a divisibility chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmithForm<T> {
    /// Nonzero diagonal entries `d_1 | d_2 | ...`, all positive.
    pub invariant_factors: Vec<T>,
    pub diagonal: IntegerMatrix<T>,
    pub left: IntegerMatrix<T>,
    pub right: IntegerMatrix<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Factors greater than one: the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<T> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Computes the Smith normal form by alternating row and column
/// elimination with a smallest-pivot strategy.
pub fn smith_normal_form<T: Scalar>(m: &IntegerMatrix<T>) -> SmithForm<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut left = IntegerMatrix::identity(rows);
    let mut right = IntegerMatrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&d, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))))
        else {
            break;
        };
        move_to_pivot(&mut d, &mut left, &mut right, t, pi, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = -(d[(i, t)].clone() / d[(t, t)].clone());
                    d.add_row_multiple(i, t, &q);
                    left.add_row_multiple(i, t, &q);
                    dirty |= !d[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = -(d[(t, j)].clone() / d[(t, t)].clone());
                    d.add_col_multiple(j, t, &q);
                    right.add_col_multiple(j, t, &q);
                    dirty |= !d[(t, j)].is_zero();
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; promote it
                let line = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                let (pi, pj) = min_abs_entry(&d, line).expect("pivot is nonzero");
                move_to_pivot(&mut d, &mut left, &mut right, t, pi, pj);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = T::one();
                    d.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..rows.min(cols))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SmithForm {
        invariant_factors,
        diagonal: d,
        left,
        right,
    }
}

fn min_abs_entry<T: Scalar>(
    d: &IntegerMatrix<T>,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T)> = None;
    for (i, j) in cells {
        let v = d[(i, j)].abs();
        if v.is_zero() {
            continue;
        }
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some(((i, j), v));
        }
    }
    best.map(|(c, _)| c)
}

fn move_to_pivot<T: Scalar>(
    d: &mut IntegerMatrix<T>,
    left: &mut IntegerMatrix<T>,
    right: &mut IntegerMatrix<T>,
    t: usize,
    i: usize,
    j: usize,
) {
    d.swap_rows(t, i);
    left.swap_rows(t, i);
    d.swap_cols(t, j);
    right.swap_cols(t, j);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix<i64>) -> Vec<i64> {
        let s = smith_normal_form(m);
        assert_eq!(s.left.mul(m).mul(&s.right), s.diagonal);
        assert!(s.diagonal.is_diagonal());
        assert_eq!(s.left.determinant().abs(), 1);
        assert_eq!(s.right.determinant().abs(), 1);
        for w in s.invariant_factors.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        s.invariant_factors
    }

    #[test]
    fn examples() {
        assert_eq!(check(&IntegerMatrix::identity(2)), vec![1, 1]);
        assert_eq!(check(&IntegerMatrix::from_rows(vec![vec![2, 0], vec![0, 3]])), vec![1, 6]);
        assert_eq!(check(&IntegerMatrix::zeros(2, 3)), Vec::<i64>::new());
        assert_eq!(check(&IntegerMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])), vec![2, 6, 12]);
        assert_eq!(check(&IntegerMatrix::from_rows(vec![vec![-3]])), vec![3]);
        assert_eq!(check(&IntegerMatrix::zeros(0, 2)), Vec::<i64>::new());
    }
}
