//! Vectors and matrices over the two-element field.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct F2Vector(Vec<bool>);

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector(vec![false; len])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        F2Vector(bits)
    }

    /// Parities of the given integers.
    pub fn from_parities<I: IntoIterator<Item = i64>>(values: I) -> Self {
        F2Vector(values.into_iter().map(|v| v.rem_euclid(2) == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: bool) {
        self.0[i] = v;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        assert_eq!(self.len(), other.len(), "F2 vector length mismatch");
        F2Vector(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

/// `(0 1 1)`
impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", u8::from(*b))?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            rows,
            cols,
            data: vec![F2Vector::zeros(cols); rows],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        F2Matrix {
            rows,
            cols,
            data: (0..rows)
                .map(|i| F2Vector((0..cols).map(|j| f(i, j)).collect()))
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn column(&self, j: usize) -> F2Vector {
        F2Vector(self.data.iter().map(|r| r.get(j)).collect())
    }

    pub fn mul_vec(&self, x: &F2Vector) -> Result<F2Vector> {
        if x.len() != self.cols {
            return Err(Error::malformed(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(F2Vector(
            self.data
                .iter()
                .map(|r| r.0.iter().zip(&x.0).fold(false, |acc, (a, b)| acc ^ (a & b)))
                .collect(),
        ))
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        eliminate(&mut m, self.cols).len()
    }

    /// Some `x` with `self * x = b`, or `None` if `b` is outside the column
    /// space. Free variables are set to zero.
    pub fn solve(&self, b: &F2Vector) -> Result<Option<F2Vector>> {
        if b.len() != self.rows {
            return Err(Error::malformed(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug: Vec<F2Vector> = self
            .data
            .iter()
            .zip(&b.0)
            .map(|(r, &bi)| {
                let mut v = r.0.clone();
                v.push(bi);
                F2Vector(v)
            })
            .collect();
        let pivots = eliminate(&mut aug, self.cols);
        // inconsistent iff some row reads 0 = 1
        if aug.iter().skip(pivots.len()).any(|r| r.get(self.cols)) {
            return Ok(None);
        }
        let mut x = F2Vector::zeros(self.cols);
        for (row, &col) in pivots.iter().enumerate() {
            x.set(col, aug[row].get(self.cols));
        }
        Ok(Some(x))
    }
}

/// Reduced row echelon form in place over the first `cols` columns.
/// Returns pivot columns; pivot rows are the leading rows.
fn eliminate(m: &mut [F2Vector], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| m[i].get(col)) else {
            continue;
        };
        m.swap(row, p);
        for i in 0..m.len() {
            if i != row && m[i].get(col) {
                let r = m[row].clone();
                m[i] = m[i].add(&r);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}
