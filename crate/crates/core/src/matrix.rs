//! Dense integer matrices.
//!
//! Every combinatorial object in the crate (adjacency, fusion, essential,
//! toric matrices) is an `IntMatrix`. Arithmetic is exact `i64`; the sizes
//! involved never exceed a few dozen rows.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        Self::try_from(rows.to_vec()).expect("ragged rows")
    }

    /// Parses the compact notation used in printed tables: one string per row,
    /// one character per entry, `.` for zero and a decimal digit otherwise.
    pub fn from_dotted(rows: &[&str]) -> Self {
        let parsed: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        '.' => 0,
                        d => d.to_digit(10).expect("digit or '.'") as i64,
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(&parsed)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn sum(&self) -> i64 {
        self.data.iter().sum()
    }

    pub fn trace(&self) -> i64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn count_nonzero(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, &v)| ((k / self.cols, k % self.cols), v))
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| v[i] * self[(i, j)]).sum())
            .collect()
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    /// Keeps only the listed columns; the others are set to zero.
    pub fn mask_columns(&self, keep: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            if keep.contains(&j) {
                self[(i, j)]
            } else {
                0
            }
        })
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)] as f64)
    }

    /// Renders rows with `.` for zero, entries separated by a space.
    pub fn render_dotted(&self) -> String {
        let width = self
            .data
            .iter()
            .map(|v| if *v == 0 { 1 } else { v.to_string().len() })
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|&v| {
                    let s = if v == 0 { ".".to_string() } else { v.to_string() };
                    format!("{s:>width$}")
                })
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = String;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, String> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err("rows have different lengths".into());
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

macro_rules! owned_op {
    ($tr:ident, $f:ident) => {
        impl $tr for IntMatrix {
            type Output = IntMatrix;

            fn $f(self, rhs: IntMatrix) -> IntMatrix {
                (&self).$f(&rhs)
            }
        }
    };
}

owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.render_dotted())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_dotted())
    }
}

/// Sum of `coeff * m` over the given terms; `shape` is used when `terms` is empty.
pub fn linear_combination<'a>(
    shape: (usize, usize),
    terms: impl IntoIterator<Item = (i64, &'a IntMatrix)>,
) -> IntMatrix {
    let mut acc = IntMatrix::zeros(shape.0, shape.1);
    for (c, m) in terms {
        if c != 0 {
            acc = &acc + &m.scale(c);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dotted_roundtrip() {
        let m = IntMatrix::from_dotted(&["1.2", ".3."]);
        assert_eq!(m.to_rows(), vec![vec![1, 0, 2], vec![0, 3, 0]]);
        assert_eq!(m.render_dotted(), "1 . 2\n. 3 .\n");
    }

    #[test]
    fn product_and_power() {
        let g = IntMatrix::from_dotted(&[".1.", "1.1", ".1."]);
        let g2 = &g * &g;
        assert_eq!(g2, IntMatrix::from_dotted(&["1.1", ".2.", "1.1"]));
        assert_eq!(g.pow(0), IntMatrix::identity(3));
        assert_eq!(g.pow(3), &g2 * &g);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(IntMatrix::try_from(vec![vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn masking_columns() {
        let m = IntMatrix::from_dotted(&["123", "456"]);
        assert_eq!(m.mask_columns(&[0, 2]), IntMatrix::from_dotted(&["1.3", "4.6"]));
    }
}
