//! Dense exact linear algebra over a [`Field`].

use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: Coeff>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

pub fn zeros<T: Coeff>(rows: usize, cols: usize) -> Matrix<T> {
    vec![vec![T::zero(); cols]; rows]
}

pub fn transpose<T: Coeff>(m: &Matrix<T>) -> Matrix<T> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul<T: Coeff>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc.plus(&row[k].times(&b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Coeff>(a: &Matrix<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (x, y)| acc.plus(&x.times(y))))
        .collect()
}

pub fn mat_sub<T: Coeff>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.minus(y)).collect()).collect()
}

pub fn is_zero_matrix<T: Coeff>(a: &Matrix<T>) -> bool {
    a.iter().all(|r| r.iter().all(Coeff::is_zero))
}

/// Reduced row echelon form, visiting columns in the given order.
/// Returns the reduced matrix and the pivot columns in the order found.
pub fn rref_with_order<T: Field>(m: &Matrix<T>, order: &[usize]) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inverse().expect("nonzero pivot");
        a[r] = a[r].iter().map(|x| x.times(&inv)).collect();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.minus(&f.times(y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rref<T: Field>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let cols = m.first().map_or(0, Vec::len);
    let order: Vec<usize> = (0..cols).collect();
    rref_with_order(m, &order)
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{x : m x = 0}` over `cols` unknowns, with columns
/// eliminated in `order`; each basis vector has a 1 at one free column.
pub fn kernel_with_order<T: Field>(m: &Matrix<T>, cols: usize, order: &[usize]) -> Vec<(usize, Vec<T>)> {
    let (r, pivots) = rref_with_order(m, order);
    let free: Vec<usize> = order.iter().copied().filter(|c| !pivots.contains(c)).collect();
    free.into_iter()
        .map(|f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r[row][f].negated();
            }
            (f, v)
        })
        .collect()
}

pub fn kernel<T: Field>(m: &Matrix<T>, cols: usize) -> Vec<Vec<T>> {
    let order: Vec<usize> = (0..cols).collect();
    kernel_with_order(m, cols, &order).into_iter().map(|(_, v)| v).collect()
}

pub fn determinant<T: Field>(m: &Matrix<T>) -> T {
    let n = m.len();
    let mut a = m.clone();
    let mut det = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return T::zero() };
        if p != c {
            a.swap(p, c);
            det = det.negated();
        }
        det = det.times(&a[c][c]);
        let inv = a[c][c].inverse().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].times(&inv);
            let pivot_row = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(&pivot_row).skip(c) {
                *x = x.minus(&f.times(y));
            }
        }
    }
    det
}

pub fn inverse<T: Field>(m: &Matrix<T>) -> Result<Matrix<T>> {
    let n = m.len();
    let aug: Matrix<T> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let order: Vec<usize> = (0..n).collect();
    let (r, pivots) = rref_with_order(&aug, &order);
    if pivots.len() < n {
        return Err(Error::DivisionByZero);
    }
    Ok(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Leading principal minors `det(m[..k, ..k])` for k = 1..n.
pub fn leading_minors<T: Field>(m: &Matrix<T>) -> Vec<T> {
    (1..=m.len())
        .map(|k| {
            let sub: Matrix<T> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ScalarK;

    fn k(n: i64) -> ScalarK {
        ScalarK::from_int(n)
    }

    #[test]
    fn determinant_and_inverse() {
        let m = vec![vec![k(2), k(1), k(0)], vec![k(1), k(3), k(1)], vec![k(0), k(1), k(4)]];
        assert_eq!(determinant(&m), k(18));
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(3));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![k(1), k(2), k(3)]];
        let ker = kernel(&m, 3);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(mat_vec(&m, &v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn singular_inverse_fails() {
        let m = vec![vec![k(1), k(2)], vec![k(2), k(4)]];
        assert!(inverse(&m).is_err());
        assert!(determinant(&m).is_zero());
    }
}
