//! Partial-matrix checking by deletion.
//!
//! A fully specified submatrix cannot contain an unspecified cell `(i, j)`,
//! so it lies inside the matrix with row `i` deleted or inside the matrix
//! with column `j` deleted. A partial matrix therefore has any property
//! inherited by submatrices iff both deletions have it. Recursing until no
//! holes remain visits at most `2^x` fully specified subproblems, `x` being
//! the number of holes.

use std::collections::HashMap;

use crate::dodgson::tp_check_dodgson;
use crate::error::Result;
use crate::matrix::{IndexSet, PartialMatrix};
use crate::oracle::{check_property_brute, PropertySpec};
use crate::report::{CheckReport, Counters, MinorWitness};

/// Decides a property exactly on fully specified matrices.
pub type FullChecker<'a> = dyn Fn(&PartialMatrix) -> Result<CheckReport> + Sync + 'a;

/// Which hole to split on. Both branches are always checked, so the rule
/// only affects the amount of work, never the verdict.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HoleRule {
    /// First unspecified cell in row-major order.
    #[default]
    RowMajor,
    /// Cell whose row and column hold the most holes; ties go row-major.
    MaxDegree,
}

/// A submatrix of the original matrix, named by its surviving indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubproblemKey {
    pub live_rows: IndexSet,
    pub live_cols: IndexSet,
}

/// First unspecified cell in row-major order.
pub fn find_unspecified(matrix: &PartialMatrix) -> Option<(usize, usize)> {
    (1..=matrix.rows())
        .flat_map(|i| (1..=matrix.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !matrix.is_specified(i, j))
}

/// The checker used for fully specified subproblems: Dodgson condensation
/// for total positivity, the brute-force oracle for every other property.
pub fn full_checker_for(spec: &PropertySpec) -> impl Fn(&PartialMatrix) -> Result<CheckReport> + Sync + '_ {
    move |m| {
        if spec.is_tp() {
            tp_check_dodgson(m)
        } else {
            check_property_brute(m, spec)
        }
    }
}

pub fn recursive_partial_check(matrix: &PartialMatrix, full_checker: &FullChecker<'_>) -> Result<CheckReport> {
    recursive_partial_check_with(matrix, full_checker, HoleRule::RowMajor)
}

/// Recursive deletion check with an explicit hole rule.
///
/// The row-deleted branch is explored first and a failure there skips the
/// column-deleted branch. Witnesses are reported in the coordinates of
/// `matrix`.
pub fn recursive_partial_check_with(
    matrix: &PartialMatrix,
    full_checker: &FullChecker<'_>,
    rule: HoleRule,
) -> Result<CheckReport> {
    let mut solver = Solver {
        matrix,
        checker: full_checker,
        rule,
        memo: HashMap::new(),
        work: Counters::default(),
        distinct_leaves: 0,
    };
    let root = SubproblemKey {
        live_rows: IndexSet::full(matrix.rows()),
        live_cols: IndexSet::full(matrix.cols()),
    };
    let outcome = solver.solve(root)?;
    let counters = Counters {
        subproblems: solver.distinct_leaves,
        subproblems_raw: outcome.raw_leaves,
        ..solver.work
    };
    Ok(match outcome.witness {
        Some(w) => CheckReport::fail(w, counters),
        None => CheckReport::pass(counters),
    })
}

#[derive(Clone)]
struct Outcome {
    witness: Option<MinorWitness>,
    /// Leaves the unmemoized recursion would visit below this node.
    raw_leaves: u64,
}

struct Solver<'a, 'c> {
    matrix: &'a PartialMatrix,
    checker: &'a FullChecker<'c>,
    rule: HoleRule,
    memo: HashMap<SubproblemKey, Outcome>,
    work: Counters,
    distinct_leaves: u64,
}

impl Solver<'_, '_> {
    fn solve(&mut self, key: SubproblemKey) -> Result<Outcome> {
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let outcome = if key.live_rows.is_empty() || key.live_cols.is_empty() {
            self.distinct_leaves += 1;
            Outcome {
                witness: None,
                raw_leaves: 1,
            }
        } else {
            match self.pick_hole(&key) {
                None => {
                    self.distinct_leaves += 1;
                    let sub = self.matrix.submatrix(&key.live_rows, &key.live_cols)?;
                    let report = (self.checker)(&sub)?;
                    self.work.minors_evaluated += report.counters.minors_evaluated;
                    self.work.arithmetic_ops += report.counters.arithmetic_ops;
                    Outcome {
                        witness: report.witness.map(|w| w.lift(&key.live_rows, &key.live_cols)),
                        raw_leaves: 1,
                    }
                }
                Some((i, j)) => {
                    let without_row = self.solve(SubproblemKey {
                        live_rows: key.live_rows.without(i),
                        live_cols: key.live_cols.clone(),
                    })?;
                    if without_row.witness.is_some() {
                        without_row
                    } else {
                        let without_col = self.solve(SubproblemKey {
                            live_rows: key.live_rows.clone(),
                            live_cols: key.live_cols.without(j),
                        })?;
                        Outcome {
                            witness: without_col.witness,
                            raw_leaves: without_row.raw_leaves + without_col.raw_leaves,
                        }
                    }
                }
            }
        };
        self.memo.insert(key, outcome.clone());
        Ok(outcome)
    }

    fn pick_hole(&self, key: &SubproblemKey) -> Option<(usize, usize)> {
        let holes = key
            .live_rows
            .iter()
            .flat_map(|i| key.live_cols.iter().map(move |j| (i, j)))
            .filter(|&(i, j)| !self.matrix.is_specified(i, j));
        match self.rule {
            HoleRule::RowMajor => holes.into_iter().next(),
            HoleRule::MaxDegree => {
                let holes: Vec<(usize, usize)> = holes.collect();
                let degree = |&(i, j): &(usize, usize)| holes.iter().filter(|&&(a, b)| a == i || b == j).count();
                // max_by_key keeps the last maximum; reverse to prefer row-major order.
                holes.iter().rev().max_by_key(|h| degree(h)).copied()
            }
        }
    }
}
