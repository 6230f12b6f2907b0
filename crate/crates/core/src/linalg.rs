//! Dense exact linear algebra over any [`FieldScalar`].

use num_traits::Zero;

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::field::FieldScalar;
use crate::poly::RationalPolynomial;

pub type Matrix<T> = Vec<Vec<T>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<T: FieldScalar>(m: &mut Matrix<T>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero_elt()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv_ref().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero_elt() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub_ref(&p.mul_ref(&f));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: FieldScalar>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<T: FieldScalar>(m: &Matrix<T>, like: &T) -> Vec<Vec<T>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![like.zero_like(); cols];
            x[f] = like.one_like();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = a[row][f].neg_ref();
            }
            x
        })
        .collect()
}

/// Solves the square system `m x = b`.
pub fn solve<T: FieldScalar>(m: &Matrix<T>, b: &[T]) -> Result<Vec<T>> {
    let n = m.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut aug: Matrix<T> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular(format!("{n}x{n} system is singular")));
    }
    Ok(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn transpose<T: Clone>(m: &Matrix<T>) -> Matrix<T> {
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<T: FieldScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = row[0].zero_like();
                    for t in 0..inner {
                        acc = acc.add_ref(&row[t].mul_ref(&b[t][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Characteristic polynomial `det(x I - m)` by Faddeev-LeVerrier.
pub fn charpoly(m: &Matrix<Rational>) -> RationalPolynomial {
    let n = m.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = int(1);
    let mut mk: Matrix<Rational> = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = m (M_{k-1} + c_{n-k+1} I)
        let mut prev = mk.clone();
        for (i, row) in prev.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = mat_mul(m, &prev);
        let trace: Rational = (0..n).map(|i| mk[i][i].clone()).sum();
        coeffs[n - k] = -trace / int(k as i64);
    }
    RationalPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    /// Determinant by cofactor expansion, as an independent route.
    fn det(a: &Matrix<RationalPolynomial>) -> RationalPolynomial {
        let n = a.len();
        if n == 1 {
            return a[0][0].clone();
        }
        let mut acc = RationalPolynomial::zero();
        for j in 0..n {
            let minor: Matrix<RationalPolynomial> =
                a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = &a[0][j] * &det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn charpoly_matches_cofactor_determinant() {
        let a = m(&[&[2, -1, 3, 0], &[1, 0, 4, -2], &[5, 1, -1, 1], &[0, 3, 2, 7]]);
        let xi: Matrix<RationalPolynomial> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let c = RationalPolynomial::constant(-a[i][j].clone());
                        if i == j {
                            &c + &RationalPolynomial::x()
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(charpoly(&a), det(&xi));
    }

    #[test]
    fn solve_and_nullspace() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let sing = m(&[&[1, 2], &[2, 4]]);
        assert!(solve(&sing, &[int(1), int(1)]).is_err());
        let ns = nullspace(&sing, &int(0));
        assert_eq!(ns, vec![vec![int(-2), int(1)]]);
        assert_eq!(rank(&sing), 1);
    }
}
