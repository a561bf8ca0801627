//! Strictly sign-regular matrices for any signature, built by bordering.
//!
//! Growth starts from `[e_1]`, appends rows until the matrix is `m`×1 and
//! then appends columns. Each new entry `x` sits at the bottom-right corner
//! of every new minor it belongs to, so each such minor is affine in `x`
//! with slope equal to a smaller, already fixed minor. The entry is the
//! first value on a fixed candidate ladder for which all of these minors
//! carry the required sign, or the simplest rational in the admissible
//! interval when no ladder value fits.
//!
//! Entry-by-entry choices can paint a column into a corner. When that
//! happens the column is rebuilt in one piece as
//! `Σ_l (-δ)^(n-l)·a_l + δ^n·σ·(t, t², …)`: in every new minor the lowest
//! power of `δ` carries the required sign, so halving `δ` must eventually
//! succeed. Nothing is trusted: the finished matrix is re-checked before it
//! is returned.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::det::determinant_dense;
use crate::dodgson::tp_check_dodgson;
use crate::error::{Error, Result};
use crate::matrix::{PartialMatrix, Rational};
use crate::oracle::{check_property_brute, for_each_combination, PropertySpec};
use crate::report::satisfies;
use crate::signature::{Sign, Signature};

/// Largest `t` for which `±2^t` and `±2^-t` appear on the ladder.
pub const LADDER_MAX_EXPONENT: u32 = 64;

/// Candidate values in search order: `0, 1, -1, 1/2, -1/2, 2, -2, 1/4, ...`.
pub fn candidate_ladder() -> impl Iterator<Item = Rational> {
    let pow = |t: u32| Rational::from_integer(BigInt::one() << t);
    std::iter::once(Rational::zero())
        .chain([Rational::one(), -Rational::one()])
        .chain((1..=LADDER_MAX_EXPONENT).flat_map(move |t| {
            let big = pow(t);
            let small = big.recip();
            [small.clone(), -small, big.clone(), -big]
        }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    /// The initial 1×1 matrix.
    Seed,
    Row,
    Column,
}

/// How the values of a line were found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fill {
    /// Entry by entry from the candidate ladder.
    Ladder,
    /// As a whole, by the dominance construction.
    Dominance,
}

/// One bordering step: the line appended to a `rows_before`×`cols_before`
/// matrix and its values top-to-bottom or left-to-right. For ladder fills
/// `attempts` holds how many candidates each value took (one past the
/// ladder length for an interval pick); for dominance fills it holds the
/// number of `t` and `δ` refinements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderingStep {
    pub rows_before: usize,
    pub cols_before: usize,
    pub line: Line,
    pub fill: Fill,
    pub values: Vec<Rational>,
    pub attempts: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BorderingTrace {
    pub steps: Vec<BorderingStep>,
}

impl BorderingTrace {
    /// Rebuilds the matrix the trace describes.
    pub fn replay(&self) -> Result<PartialMatrix> {
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for step in &self.steps {
            let width = rows.first().map_or(0, Vec::len);
            if (rows.len(), width) != (step.rows_before, step.cols_before) {
                return Err(Error::Shape(format!(
                    "trace step expects a {}x{} matrix, replay has {}x{width}",
                    step.rows_before,
                    step.cols_before,
                    rows.len()
                )));
            }
            match step.line {
                Line::Seed | Line::Row => {
                    if step.values.len() != width.max(1) {
                        return Err(Error::Shape("row length does not match".into()));
                    }
                    rows.push(step.values.clone());
                }
                Line::Column => {
                    if step.values.len() != rows.len() {
                        return Err(Error::Shape("column length does not match".into()));
                    }
                    for (row, v) in rows.iter_mut().zip(&step.values) {
                        row.push(v.clone());
                    }
                }
            }
        }
        PartialMatrix::from_values(rows)
    }
}

/// An `m`×`n` matrix whose order-`k` minors all satisfy `e_k·A > 0`, and the
/// bordering trace that produced it.
///
/// For the all-positive signature only the contiguous minors ending at each
/// new entry are constrained (by Fekete's criterion this already makes the
/// growing leading block totally positive) and the result is certified by
/// Dodgson condensation. Every other signature constrains all new minors
/// and is certified by the brute-force oracle.
pub fn generate_ssr(m: usize, n: usize, signature: &Signature) -> Result<(PartialMatrix, BorderingTrace)> {
    if m == 0 || n == 0 {
        return Err(Error::Argument(format!("cannot generate a {m}x{n} matrix")));
    }
    let order = m.min(n);
    if signature.len() < order {
        return Err(Error::Argument(format!(
            "signature has {} signs, a {m}x{n} matrix needs {order}",
            signature.len()
        )));
    }
    let signature = signature.truncated(order);
    let contiguous_only = signature.is_all_positive();

    let mut grid = PartialMatrix::unspecified(m, n);
    let mut trace = BorderingTrace::default();

    let fill = |grid: &mut PartialMatrix, i: usize, j: usize| -> Option<(Rational, usize)> {
        let constraints = entry_constraints(grid, i, j, &signature, contiguous_only);
        let (value, attempts) = match candidate_ladder()
            .enumerate()
            .find(|(_, x)| constraints.iter().all(|c| c.holds(x)))
        {
            Some((index, x)) => (x, index + 1),
            None => (Interval::feasible(&constraints)?.simplest(), ladder_len() + 1),
        };
        debug_assert!(constraints.iter().all(|c| c.holds(&value)));
        grid.set(i, j, Some(value.clone()));
        Some((value, attempts))
    };
    // Rows only ever meet 1×1 minors while the matrix has one column.
    let single = |grid: &mut PartialMatrix, i: usize| {
        fill(grid, i, 1).ok_or(Error::CandidateExhausted { rows: m, cols: n, row: i, col: 1 })
    };

    let (seed, tries) = single(&mut grid, 1)?;
    trace.steps.push(BorderingStep {
        rows_before: 0,
        cols_before: 0,
        line: Line::Seed,
        fill: Fill::Ladder,
        values: vec![seed],
        attempts: vec![tries],
    });
    for i in 2..=m {
        let (v, tries) = single(&mut grid, i)?;
        trace.steps.push(BorderingStep {
            rows_before: i - 1,
            cols_before: 1,
            line: Line::Row,
            fill: Fill::Ladder,
            values: vec![v],
            attempts: vec![tries],
        });
    }
    for j in 2..=n {
        let greedy: Option<Vec<(Rational, usize)>> = (1..=m).map(|i| fill(&mut grid, i, j)).collect();
        let (fill_rule, values, attempts) = match greedy {
            Some(cells) => {
                let (values, attempts) = cells.into_iter().unzip();
                (Fill::Ladder, values, attempts)
            }
            None => {
                let (values, attempts) = dominant_column(&grid, j, &signature)
                    .ok_or(Error::CandidateExhausted { rows: m, cols: n, row: 1, col: j })?;
                for (i, v) in values.iter().enumerate() {
                    grid.set(i + 1, j, Some(v.clone()));
                }
                (Fill::Dominance, values, attempts)
            }
        };
        trace.steps.push(BorderingStep {
            rows_before: m,
            cols_before: j - 1,
            line: Line::Column,
            fill: fill_rule,
            values,
            attempts,
        });
    }

    certify(&grid, &signature)?;
    Ok((grid, trace))
}

fn certify(matrix: &PartialMatrix, signature: &Signature) -> Result<()> {
    let report = if signature.is_all_positive() {
        tp_check_dodgson(matrix)?
    } else {
        check_property_brute(matrix, &PropertySpec::new(signature.clone(), true))?
    };
    match report.witness {
        None => Ok(()),
        Some(w) => Err(Error::Certification(format!(
            "minor on rows {} cols {} equals {}",
            w.rows, w.cols, w.value
        ))),
    }
}

/// Weakly sign-regular matrices: a strictly sign-regular matrix already is
/// one, so this is [`generate_ssr`].
pub fn generate_wsr(m: usize, n: usize, signature: &Signature) -> Result<(PartialMatrix, BorderingTrace)> {
    generate_ssr(m, n, signature)
}

/// A totally positive `m`×`n` matrix.
pub fn generate_tp(m: usize, n: usize) -> Result<PartialMatrix> {
    let (matrix, _) = generate_ssr(m, n, &Signature::all_positive(m.min(n)))?;
    Ok(matrix)
}

/// Largest number of halvings or doublings tried for `δ` and `t`.
const DOMINANCE_ROUNDS: u32 = 256;

/// A column `x` for the filled block `A = [1..m]×[1..j-1]` such that every
/// minor of `[A | x]` through `x` has the required sign, together with the
/// number of `t` and `δ` refinements it took.
///
/// With `x = Σ_l (-δ)^(n-l)·a_l + δ^n·σ·w`, a minor on rows `R` and old
/// columns `C` expands to `Σ_l (-δ)^(n-l)·det[A_RC | a_l]` plus the `w` term.
/// Terms with `l ∈ C` vanish and the lowest surviving power comes from the
/// largest `l ∉ C`; sorting `a_l` into place past the `n-l` larger columns
/// of `C` cancels `(-1)^(n-l)`, leaving the sign of an SSR minor of order
/// `|C|+1`. When `C` holds every old column only the `w` term survives, and
/// with `w_i = t^i` for large `t` its sign is `σ·e_n`.
fn dominant_column(grid: &PartialMatrix, j: usize, signature: &Signature) -> Option<(Vec<Rational>, Vec<usize>)> {
    let m = grid.rows();
    let n = j - 1;
    let block: Vec<Vec<Rational>> = (1..=m)
        .map(|i| (1..=n).map(|c| grid.get(i, c).cloned().expect("block is filled")).collect())
        .collect();
    let sigma = if n < m {
        signature.sign(n + 1).as_i8() * signature.sign(n).as_i8()
    } else {
        1
    };
    let column = |delta: &Rational, t: &Rational| -> Vec<Rational> {
        (0..m)
            .map(|i| {
                let mut x = Rational::zero();
                let mut scale = Rational::one();
                for l in (0..n).rev() {
                    x += &scale * &block[i][l];
                    scale *= -delta;
                }
                // scale is now (-δ)^n; the sign flip is folded into σ below.
                let power = (0..=i).fold(Rational::one(), |acc, _| acc * t);
                let lead = if n % 2 == 0 { scale } else { -scale };
                x + lead * power * Rational::from_integer(sigma.into())
            })
            .collect()
    };
    let half = Rational::new(1.into(), 2.into());
    let full_order_ok = |x: &[Rational]| new_minors_hold(&block, x, signature, Some(n + 1));
    let mut t = Rational::from_integer(2.into());
    let mut t_rounds = 1;
    while !full_order_ok(&column(&half, &t)) {
        if t_rounds == DOMINANCE_ROUNDS as usize {
            return None;
        }
        t *= Rational::from_integer(2.into());
        t_rounds += 1;
    }
    let mut delta = half.clone();
    for d_rounds in 1..=DOMINANCE_ROUNDS as usize {
        let x = column(&delta, &t);
        if new_minors_hold(&block, &x, signature, None) {
            let mut attempts = vec![0; m];
            attempts[0] = t_rounds;
            if m > 1 {
                attempts[1] = d_rounds;
            }
            return Some((x, attempts));
        }
        delta *= &half;
    }
    None
}

/// Whether every minor of `[block | x]` that uses `x` satisfies the strict
/// sign condition; with `only_order` set, just the minors of that order.
fn new_minors_hold(block: &[Vec<Rational>], x: &[Rational], signature: &Signature, only_order: Option<usize>) -> bool {
    let m = block.len();
    let n = block.first().map_or(0, Vec::len);
    let rows: Vec<usize> = (0..m).collect();
    let cols: Vec<usize> = (0..n).collect();
    let orders = match only_order {
        Some(k) if k <= m.min(n + 1) => k..=k,
        Some(_) => return true,
        None => 1..=m.min(n + 1),
    };
    orders.into_iter().all(|k| {
        let sign = signature.sign(k);
        for_each_combination(&rows, k, &mut |r| {
            for_each_combination(&cols, k - 1, &mut |c| {
                let dense: Vec<Vec<Rational>> = r
                    .iter()
                    .map(|&i| c.iter().map(|&l| block[i][l].clone()).chain([x[i].clone()]).collect())
                    .collect();
                if satisfies(sign, true, &determinant_dense(&dense)) {
                    std::ops::ControlFlow::Continue(())
                } else {
                    std::ops::ControlFlow::Break(())
                }
            })
        })
        .is_continue()
    })
}

fn ladder_len() -> usize {
    3 + 4 * LADDER_MAX_EXPONENT as usize
}

/// Open interval of admissible values; `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Interval {
    lo: Option<Rational>,
    hi: Option<Rational>,
}

impl Interval {
    /// Intersection of all constraints, or `None` if it is empty.
    fn feasible(constraints: &[Constraint]) -> Option<Interval> {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for c in constraints {
            let slope = c.sign.apply(&c.slope);
            let offset = c.sign.apply(&c.offset);
            if slope.is_zero() {
                if !offset.is_positive() {
                    return None;
                }
                continue;
            }
            let bound = -offset / &slope;
            if slope.is_positive() {
                if lo.as_ref().map_or(true, |l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().map_or(true, |h| bound < *h) {
                hi = Some(bound);
            }
        }
        match (&lo, &hi) {
            (Some(l), Some(h)) if l >= h => None,
            _ => Some(Interval { lo, hi }),
        }
    }

    /// The rational with the smallest denominator, then smallest magnitude,
    /// strictly inside the interval.
    fn simplest(&self) -> Rational {
        let below_zero = self.hi.as_ref().is_some_and(|h| !h.is_positive());
        let above_zero = self.lo.as_ref().is_some_and(|l| !l.is_negative());
        if below_zero {
            -simplest_above(&-self.hi.clone().unwrap(), self.lo.as_ref().map(|l| -l).as_ref())
        } else if above_zero {
            simplest_above(self.lo.as_ref().unwrap(), self.hi.as_ref())
        } else {
            Rational::zero()
        }
    }
}

/// Simplest rational in `(lo, hi)` for `lo ≥ 0`, by descending the
/// Stern–Brocot tree through continued fractions.
fn simplest_above(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let whole = lo.floor();
    let next = &whole + Rational::one();
    if hi.map_or(true, |h| next < *h) {
        return next;
    }
    let hi = hi.expect("bounded when no integer fits");
    let upper = (lo > &whole).then(|| (lo - &whole).recip());
    let inner = simplest_above(&(hi - &whole).recip(), upper.as_ref());
    whole + inner.recip()
}

/// `sign · (slope·x + offset) > 0`.
struct Constraint {
    sign: Sign,
    slope: Rational,
    offset: Rational,
}

impl Constraint {
    fn holds(&self, x: &Rational) -> bool {
        satisfies(self.sign, true, &(&self.slope * x + &self.offset))
    }
}

/// One constraint per minor whose bottom-right corner is `(i, j)` and whose
/// other cells lie in the already filled block `[1..i]×[1..j]`.
fn entry_constraints(
    grid: &PartialMatrix,
    i: usize,
    j: usize,
    signature: &Signature,
    contiguous_only: bool,
) -> Vec<Constraint> {
    let mut out = Vec::new();
    for k in 1..=i.min(j) {
        let sign = signature.sign(k);
        if contiguous_only {
            let rows: Vec<usize> = (i + 1 - k..=i).collect();
            let cols: Vec<usize> = (j + 1 - k..=j).collect();
            out.push(corner_constraint(grid, &rows, &cols, sign));
            continue;
        }
        let earlier_rows: Vec<usize> = (1..i).collect();
        let earlier_cols: Vec<usize> = (1..j).collect();
        let _ = for_each_combination::<()>(&earlier_rows, k - 1, &mut |r| {
            let _ = for_each_combination::<()>(&earlier_cols, k - 1, &mut |c| {
                let rows: Vec<usize> = r.iter().copied().chain([i]).collect();
                let cols: Vec<usize> = c.iter().copied().chain([j]).collect();
                out.push(corner_constraint(grid, &rows, &cols, sign));
                std::ops::ControlFlow::Continue(())
            });
            std::ops::ControlFlow::Continue(())
        });
    }
    out
}

/// The minor on `rows`×`cols` as an affine function of its (unset)
/// bottom-right cell: slope is the complementary leading minor, offset is
/// the value with the corner set to zero.
fn corner_constraint(grid: &PartialMatrix, rows: &[usize], cols: &[usize], sign: Sign) -> Constraint {
    let k = rows.len();
    let mut dense: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&r| {
            cols.iter()
                .map(|&c| grid.get(r, c).cloned().unwrap_or_else(Rational::zero))
                .collect()
        })
        .collect();
    dense[k - 1][k - 1] = Rational::zero();
    let offset = determinant_dense(&dense);
    let leading: Vec<Vec<Rational>> = dense[..k - 1].iter().map(|r| r[..k - 1].to_vec()).collect();
    let slope = determinant_dense(&leading);
    Constraint { sign, slope, offset }
}
