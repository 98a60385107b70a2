//! Small dense linear algebra: polynomial determinants and ranks over a field.

use super::field::Field;
use super::poly::{Polynomial, RingExt};

/// Determinant of a square polynomial matrix by fraction-free Bareiss
/// elimination. All intermediate divisions are exact.
pub fn determinant<F: Field>(rows: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let n = rows.len();
    assert!(n > 0, "determinant of an empty matrix");
    assert!(rows.iter().all(|r| r.len() == n), "matrix is not square");
    let ring = rows[0][0].ring().clone();
    let mut a: Vec<Vec<Polynomial<F>>> = rows.to_vec();
    let mut prev = ring.one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Row-reduces in place and returns the rank.
pub fn rank<F: Field>(field: &F, rows: &mut [Vec<F::Elem>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][c]) {
                let factor = rows[i][c].clone();
                let pivot = rows[r][c..ncols].to_vec();
                for (x, y) in rows[i][c..ncols].iter_mut().zip(&pivot) {
                    *x = field.sub(x, &field.mul(&factor, y));
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::{PrimeField, Rationals};
    use crate::polyring::parse::parse_polynomial;
    use crate::polyring::poly::Ring;

    #[test]
    fn symbolic_determinants() {
        let r = Ring::new(Rationals, 4);
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        let m = vec![vec![p("x0"), p("x1")], vec![p("x2"), p("x3")]];
        assert_eq!(determinant(&m), p("x0*x3 - x1*x2"));
        // zero pivot forces a row swap
        let m = vec![
            vec![p("0"), p("x1"), p("0")],
            vec![p("x0"), p("0"), p("0")],
            vec![p("0"), p("0"), p("x2")],
        ];
        assert_eq!(determinant(&m), p("-x0*x1*x2"));
        let twos: Vec<Vec<_>> = (0..4)
            .map(|i| (0..4).map(|j| if i == j { p("2") } else { p("0") }).collect())
            .collect();
        assert_eq!(determinant(&twos), p("16"));
    }

    #[test]
    fn rank_over_prime_field() {
        let f = PrimeField::default();
        let mut m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&f, &mut m), 2);
    }
}
