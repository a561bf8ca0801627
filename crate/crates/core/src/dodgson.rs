//! Total positivity in cubic time by Dodgson condensation.
//!
//! Level `k` of the condensation holds every contiguous `k`×`k` minor. The
//! next level follows from the Desnanot–Jacobi identity
//!
//! ```text
//! next[i][j] = (curr[i][j]·curr[i+1][j+1] − curr[i][j+1]·curr[i+1][j]) / prev[i+1][j+1]
//! ```
//!
//! The TP check verifies that a whole level is positive before building the
//! next one, so every divisor it ever uses is a positive minor. Positivity of
//! all contiguous minors implies total positivity (Fekete).

use std::ops::{Div, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, PartialMatrix, Rational};
use crate::report::{CheckReport, Counters, MinorWitness};
use crate::signature::Sign;

/// One level of the condensation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondensationState {
    /// Order of the minors held in `curr`.
    pub level: usize,
    /// Contiguous `(level-1)`-minors. At level 1 this is the all-ones
    /// `(m+1)`×`(n+1)` grid.
    pub prev: Vec<Vec<Rational>>,
    /// Contiguous `level`-minors, `(m-level+1)`×`(n-level+1)`.
    pub curr: Vec<Vec<Rational>>,
}

impl CondensationState {
    /// Level 1 of a fully specified matrix.
    pub fn new(matrix: &PartialMatrix) -> Result<Self> {
        let curr = matrix.to_dense()?;
        let prev = vec![vec![Rational::one(); matrix.cols() + 1]; matrix.rows() + 1];
        Ok(CondensationState { level: 1, prev, curr })
    }

    pub fn rows(&self) -> usize {
        self.curr.len()
    }

    pub fn cols(&self) -> usize {
        self.curr.first().map_or(0, Vec::len)
    }
}

/// Builds level `k+1` from level `k`.
pub fn condense_level(state: &CondensationState) -> Result<CondensationState> {
    if state.rows() < 2 || state.cols() < 2 {
        return Err(Error::Shape(format!(
            "cannot condense a {}x{} level",
            state.rows(),
            state.cols()
        )));
    }
    let divisors = (state.level > 1).then_some(state.prev.as_slice());
    let mut ops = 0;
    let next = condense_grid(divisors, &state.curr, &mut ops, |_| {})?;
    Ok(CondensationState {
        level: state.level + 1,
        prev: state.curr.clone(),
        curr: next,
    })
}

/// One condensation step. `prev == None` stands for the all-ones grid, in
/// which case no division happens.
fn condense_grid<T>(
    prev: Option<&[Vec<T>]>,
    curr: &[Vec<T>],
    ops: &mut u64,
    mut on_divisor: impl FnMut(&T),
) -> Result<Vec<Vec<T>>>
where
    T: Clone + Zero + Sub<Output = T> + for<'a> Div<&'a T, Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    let rows = curr.len() - 1;
    let cols = curr[0].len() - 1;
    let mut next = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for j in 0..cols {
            let cross = &curr[i][j] * &curr[i + 1][j + 1] - &curr[i][j + 1] * &curr[i + 1][j];
            *ops += 3;
            let value = match prev {
                None => cross,
                Some(p) => {
                    let d = &p[i + 1][j + 1];
                    if d.is_zero() {
                        return Err(Error::DivisorZero { row: i + 1, col: j + 1 });
                    }
                    on_divisor(d);
                    *ops += 1;
                    cross / d
                }
            };
            row.push(value);
        }
        next.push(row);
    }
    Ok(next)
}

/// Decides total positivity of a fully specified matrix.
///
/// On failure the witness is the first non-positive contiguous minor,
/// scanning levels in ascending order and each level row-major. Matrices
/// with more rows than columns are condensed as their transpose.
pub fn tp_check_dodgson(matrix: &PartialMatrix) -> Result<CheckReport> {
    tp_check_dodgson_observed(matrix, |_| {})
}

/// [`tp_check_dodgson`] reporting every divisor it uses to `on_divisor`.
///
/// Rows are scaled by positive integers to clear denominators, so the
/// divisors seen here are positive multiples of the true minors.
pub fn tp_check_dodgson_observed(
    matrix: &PartialMatrix,
    mut on_divisor: impl FnMut(&BigInt),
) -> Result<CheckReport> {
    if !matrix.is_fully_specified() {
        return Err(Error::Shape("the Dodgson check needs a fully specified matrix".into()));
    }
    let transposed = matrix.rows() > matrix.cols();
    let oriented;
    let a = if transposed {
        oriented = matrix.transpose();
        &oriented
    } else {
        matrix
    };

    // Integer rows: row i is multiplied by the lcm of its denominators.
    let mut scales = Vec::with_capacity(a.rows());
    let mut curr: Vec<Vec<BigInt>> = Vec::with_capacity(a.rows());
    for i in 1..=a.rows() {
        let cells: Vec<&Rational> = a.row(i).iter().flatten().collect();
        let lcm = cells.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        curr.push(cells.iter().map(|v| v.numer() * (&lcm / v.denom())).collect());
        scales.push(lcm);
    }

    let mut counters = Counters::default();
    let mut prev: Option<Vec<Vec<BigInt>>> = None;
    let mut level = 1;
    loop {
        counters.minors_evaluated += (curr.len() * curr[0].len()) as u64;
        if let Some((i, j)) = first_nonpositive(&curr) {
            let scale: BigInt = scales[i..i + level].iter().product();
            let witness = MinorWitness {
                rows: IndexSet::contiguous(i + 1, level),
                cols: IndexSet::contiguous(j + 1, level),
                value: Rational::new(curr[i][j].clone(), scale),
                required_sign: Sign::Plus,
                strict: true,
            };
            let witness = if transposed { witness.transposed() } else { witness };
            return Ok(CheckReport::fail(witness, counters));
        }
        if curr.len() < 2 || curr[0].len() < 2 {
            return Ok(CheckReport::pass(counters));
        }
        let next = condense_grid(prev.as_deref(), &curr, &mut counters.arithmetic_ops, &mut on_divisor)?;
        prev = Some(std::mem::replace(&mut curr, next));
        level += 1;
    }
}

fn first_nonpositive(grid: &[Vec<BigInt>]) -> Option<(usize, usize)> {
    grid.iter().enumerate().find_map(|(i, row)| {
        row.iter().position(|v| !v.is_positive()).map(|j| (i, j))
    })
}

/// Number of minors of order ≥ 2 a full condensation of an `m`×`n` matrix
/// computes: `Σ_{k=1}^{m-1} (m-k)(n-k) = (3m²n − m³ − 3mn + m) / 6`.
pub fn predicted_step_count(m: u64, n: u64) -> Result<u64> {
    if m == 0 || m > n {
        return Err(Error::Argument(format!(
            "predicted_step_count needs 1 <= m <= n, got m={m}, n={n}"
        )));
    }
    let (m, n) = (m as u128, n as u128);
    let total = 3 * m * m * n + m - m * m * m - 3 * m * n;
    u64::try_from(total / 6).map_err(|_| Error::Argument("step count overflows u64".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::determinant;
    use crate::matrix::parse_partial_matrix;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect()
    }

    #[test]
    fn vandermonde_levels() {
        let m = parse_partial_matrix("1 1 1\n1 2 4\n1 3 9").unwrap();
        let s1 = CondensationState::new(&m).unwrap();
        let s2 = condense_level(&s1).unwrap();
        assert_eq!(s2.level, 2);
        assert_eq!(s2.curr, ints(&[&[1, 2], &[1, 6]]));
        let s3 = condense_level(&s2).unwrap();
        assert_eq!(s3.curr, ints(&[&[2]]));
        assert_eq!(s3.curr[0][0], determinant(&m).unwrap());
        assert!(matches!(condense_level(&s3), Err(Error::Shape(_))));
    }

    #[test]
    fn identity_two_by_two() {
        let m = parse_partial_matrix("1 0\n0 1").unwrap();
        let s2 = condense_level(&CondensationState::new(&m).unwrap()).unwrap();
        assert_eq!(s2.curr, ints(&[&[1]]));
    }

    #[test]
    fn zero_divisor_is_an_error() {
        // The centre entry is 0, so level 3 would divide by it.
        let m = parse_partial_matrix("1 1 1\n1 0 1\n1 1 1").unwrap();
        let s2 = condense_level(&CondensationState::new(&m).unwrap()).unwrap();
        assert_eq!(condense_level(&s2), Err(Error::DivisorZero { row: 1, col: 1 }));
    }

    #[test]
    fn counterexample_fails_at_order_one() {
        let m = parse_partial_matrix("1 0 1\n1 0 0").unwrap();
        let r = tp_check_dodgson(&m).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.order(), 1);
        assert_eq!(w.rows.as_slice(), &[1]);
        assert_eq!(w.cols.as_slice(), &[2]);
        assert!(w.value.is_zero());
    }

    #[test]
    fn simple_passes() {
        assert!(tp_check_dodgson(&parse_partial_matrix("1 1 1\n1 2 4\n1 3 9").unwrap()).unwrap().passed());
        assert!(tp_check_dodgson(&parse_partial_matrix("1").unwrap()).unwrap().passed());
        assert!(!tp_check_dodgson(&parse_partial_matrix("-1").unwrap()).unwrap().passed());
    }

    #[test]
    fn tall_matrix_witness_is_in_original_coordinates() {
        // Transposed internally; the 2x2 minor on rows {2,3} is 1*1 - 2*1 < 0.
        let m = parse_partial_matrix("1 1\n1 2\n2 1").unwrap();
        let r = tp_check_dodgson(&m).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.reevaluate(&m).unwrap(), w.value);
        assert_eq!(w.rows.as_slice(), &[2, 3]);
        assert_eq!(w.cols.as_slice(), &[1, 2]);
    }

    #[test]
    fn rational_witness_value_is_unscaled() {
        let m = parse_partial_matrix("1/2 1/3\n1/3 1/5").unwrap();
        let w = tp_check_dodgson(&m).unwrap().witness.unwrap();
        assert_eq!(w.value, Rational::new((-1).into(), 90.into()));
    }

    #[test]
    fn rejects_partial_input() {
        let m = parse_partial_matrix("1 ?\n1 1").unwrap();
        assert!(matches!(tp_check_dodgson(&m), Err(Error::Shape(_))));
    }

    #[test]
    fn step_counts() {
        assert_eq!(predicted_step_count(3, 3).unwrap(), 5);
        assert_eq!(predicted_step_count(1, 7).unwrap(), 0);
        assert_eq!(predicted_step_count(2, 3).unwrap(), 2);
        assert!(predicted_step_count(3, 2).is_err());
        assert!(predicted_step_count(0, 2).is_err());
    }
}
