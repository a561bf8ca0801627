//! Exact determinants.
//!
//! Rational rows are scaled to integer rows by the lcm of their
//! denominators, the integer determinant is taken by fraction-free (Bareiss)
//! elimination, and the scale is divided back out.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{PartialMatrix, Rational};

/// Exact determinant of a square, fully specified matrix.
pub fn determinant(m: &PartialMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    Ok(determinant_dense(&m.to_dense()?))
}

/// Determinant of square dense rows. An empty matrix has determinant 1.
pub fn determinant_dense(rows: &[Vec<Rational>]) -> Rational {
    determinant_counted(rows).0
}

/// Determinant together with the number of arithmetic operations spent in
/// the elimination.
pub fn determinant_counted(rows: &[Vec<Rational>]) -> (Rational, u64) {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    let mut scale = BigInt::one();
    let mut ints = Vec::with_capacity(n);
    for row in rows {
        let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        ints.push(
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect::<Vec<_>>(),
        );
        scale *= lcm;
    }
    let (det, ops) = bareiss(ints);
    (Rational::new(det, scale), ops)
}

/// Fraction-free Gaussian elimination on an integer matrix. Every division
/// is exact. A zero pivot is replaced by swapping in a lower row.
pub fn bareiss(mut a: Vec<Vec<BigInt>>) -> (BigInt, u64) {
    let n = a.len();
    if n == 0 {
        return (BigInt::one(), 0);
    }
    let mut ops = 0u64;
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return (BigInt::zero(), ops),
            }
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            for j in k + 1..n {
                let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
                ops += 4;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    (if negate { -det } else { det }, ops)
}

/// Laplace expansion along the first row. Exponential; kept as an
/// independent reference for small matrices.
pub fn cofactor_determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    if n == 1 {
        return rows[0][0].clone();
    }
    let mut total = Rational::zero();
    for col in 0..n {
        if rows[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &rows[0][col] * cofactor_determinant(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_partial_matrix;

    fn det_of(text: &str) -> Rational {
        determinant(&parse_partial_matrix(text).unwrap()).unwrap()
    }

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn small_cases() {
        assert_eq!(det_of("1 2\n3 4"), int(-2));
        assert_eq!(det_of("5"), int(5));
        assert_eq!(det_of("1/2 1/3\n1/4 1/5"), Rational::new(1.into(), 60.into()));
    }

    #[test]
    fn vandermonde_three() {
        // Vandermonde product (2-1)(3-1)(3-2) = 2.
        let rows = parse_partial_matrix("1 1 1\n1 2 4\n1 3 9").unwrap().to_dense().unwrap();
        assert_eq!(cofactor_determinant(&rows), int(2));
        assert_eq!(determinant_dense(&rows), int(2));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        assert_eq!(det_of("0 1\n1 0"), int(-1));
        assert_eq!(det_of("0 1 2\n0 3 4\n5 6 7"), int(5 * (4 - 6)));
        assert_eq!(det_of("0 1\n0 2"), int(0));
    }

    #[test]
    fn rejects_bad_shapes() {
        let rect = parse_partial_matrix("1 2 3\n4 5 6").unwrap();
        assert!(matches!(determinant(&rect), Err(Error::Shape(_))));
        let holed = parse_partial_matrix("1 ?\n3 4").unwrap();
        assert!(matches!(determinant(&holed), Err(Error::Shape(_))));
    }
}
