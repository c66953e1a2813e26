use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::matrix::{IntegerMatrix, Scalar};

/// Signature of a symmetric integer matrix: positive minus negative
/// eigenvalue count.
///
/// The matrix is diagonalized by congruence over the rationals, which
/// preserves inertia, so the answer is exact.
pub fn symmetric_signature<T: Scalar>(m: &IntegerMatrix<T>) -> Result<i64> {
    if !m.is_symmetric() {
        return Err(Error::precondition("signature requires a symmetric matrix"));
    }
    let n = m.rows();
    let mut a: Vec<Vec<Ratio<T>>> = (0..n)
        .map(|i| (0..n).map(|j| Ratio::from_integer(m[(i, j)].clone())).collect())
        .collect();

    let mut signature = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                swap_congruent(&mut a, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // a_kk = a_jj = 0 and a_kj != 0: e_k + e_j has square 2 a_kj
                add_congruent(&mut a, k, j, &Ratio::one());
            } else {
                continue;
            }
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if !a[i][k].is_zero() {
                let factor = -(a[i][k].clone() / pivot.clone());
                add_congruent(&mut a, i, k, &factor);
            }
        }
        signature += if pivot.is_positive() { 1 } else { -1 };
    }
    Ok(signature)
}

fn swap_congruent<T: Scalar>(a: &mut [Vec<Ratio<T>>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i += f row_j followed by col_i += f col_j.
#[allow(clippy::needless_range_loop)]
fn add_congruent<T: Scalar>(a: &mut [Vec<Ratio<T>>], i: usize, j: usize, f: &Ratio<T>) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone() * f.clone();
        a[i][c] = a[i][c].clone() + v;
    }
    for row in a.iter_mut().take(n) {
        let v = row[j].clone() * f.clone();
        row[i] = row[i].clone() + v;
    }
}
