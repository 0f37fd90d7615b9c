//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::IntMatrix;

pub type Q = BigRational;
pub type QMatrix = Vec<Vec<Q>>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn to_qmatrix(m: &IntMatrix) -> QMatrix {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(q).collect())
        .collect()
}

/// Converts back to integers; `None` if some entry is not integral or overflows.
pub fn to_intmatrix(m: &QMatrix) -> Option<IntMatrix> {
    let rows: Option<Vec<Vec<i64>>> = m
        .iter()
        .map(|r| r.iter().map(to_i64).collect())
        .collect();
    IntMatrix::try_from(rows?).ok()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Reduced row echelon form in place. Returns the pivot columns.
///
/// `column_order` fixes the order in which columns are tried as pivots;
/// `None` means left to right.
pub fn rref_with_order(m: &mut QMatrix, column_order: Option<&[usize]>) -> Vec<usize> {
    let nrows = m.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = m[0].len();
    let default: Vec<usize> = (0..ncols).collect();
    let order = column_order.unwrap_or(&default);
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    rref_with_order(m, None)
}

pub fn rank(m: &QMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).len()
}

/// Solves `a x = b`. Free variables are set to zero. `None` if inconsistent.
pub fn solve(a: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &c) in aug.iter().zip(&pivots) {
        x[c] = row[ncols].clone();
    }
    Some(x)
}

/// Basis of the right nullspace of `a`.
pub fn nullspace(a: &QMatrix, ncols: usize) -> Vec<Vec<Q>> {
    let mut w = a.clone();
    let pivots = rref(&mut w);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); ncols];
            v[free] = Q::one();
            for (row, &p) in w.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

pub fn qmul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[t][j].is_zero() {
                    out[i][j] += &a[i][t] * &b[t][j];
                }
            }
        }
    }
    out
}

pub fn qmat_vec(a: &QMatrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Characteristic polynomial det(X·I − M), coefficients in ascending degree.
///
/// Faddeev–LeVerrier: M_k = M·M_{k−1} + c_{n−k+1} I, c_{n−k} = −tr(M·M_k)/k.
pub fn charpoly(m: &IntMatrix) -> Vec<i64> {
    assert!(m.is_square());
    let n = m.nrows();
    let a = to_qmatrix(m);
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk: QMatrix = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        let mut next = qmul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = qmul(&a, &mk);
        let tr: Q = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / q(k as i64);
    }
    coeffs
        .iter()
        .map(|c| to_i64(c).expect("integer characteristic polynomial"))
        .collect()
}

pub fn is_nonnegative(v: &[Q]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_nullspace() {
        let a = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve(&a, &[q(1), q(3)]).is_none());
        let x = solve(&a, &[q(1), q(2)]).unwrap();
        assert_eq!(qmat_vec(&a, &x), vec![q(1), q(2)]);
        let ns = nullspace(&a, 2);
        assert_eq!(ns.len(), 1);
        assert_eq!(qmat_vec(&a, &ns[0]), vec![q(0), q(0)]);
    }

    #[test]
    fn charpoly_of_path() {
        // A3: X^3 - 2X
        let g = IntMatrix::from_dotted(&[".1.", "1.1", ".1."]);
        assert_eq!(charpoly(&g), vec![0, -2, 0, 1]);
    }

    #[test]
    fn rref_respects_column_order() {
        let mut m = vec![vec![q(1), q(1)]];
        assert_eq!(rref_with_order(&mut m, Some(&[1, 0])), vec![1]);
        assert_eq!(m[0], vec![q(1), q(1)]);
    }
}
