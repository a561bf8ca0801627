//! Checker verdicts, witness minors and instrumentation counters.

use std::ops::AddAssign;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::det::determinant;
use crate::error::Result;
use crate::matrix::{IndexSet, PartialMatrix, Rational};
use crate::signature::Sign;

/// A specified minor that breaks the sign condition. This is the
/// certificate that a (partial) matrix lacks the property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub value: Rational,
    pub required_sign: Sign,
    pub strict: bool,
}

impl MinorWitness {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// True iff `value` breaks the required sign condition.
    pub fn violates(&self) -> bool {
        !satisfies(self.required_sign, self.strict, &self.value)
    }

    /// Recomputes the minor on `matrix`.
    pub fn reevaluate(&self, matrix: &PartialMatrix) -> Result<Rational> {
        determinant(&matrix.submatrix(&self.rows, &self.cols)?)
    }

    /// Translates a witness reported on a submatrix back to the parent,
    /// where `rows[i]`/`cols[j]` are the parent indices of local row `i`
    /// and column `j`.
    pub fn lift(self, rows: &IndexSet, cols: &IndexSet) -> MinorWitness {
        MinorWitness {
            rows: rows.lift(&self.rows),
            cols: cols.lift(&self.cols),
            ..self
        }
    }

    pub fn transposed(self) -> MinorWitness {
        MinorWitness {
            rows: self.cols,
            cols: self.rows,
            ..self
        }
    }
}

/// `sign · value > 0` when strict, `sign · value ≥ 0` otherwise.
pub fn satisfies(sign: Sign, strict: bool, value: &Rational) -> bool {
    let signed = sign.apply(value);
    if strict {
        signed.is_positive()
    } else {
        !signed.is_negative()
    }
}

/// Work done by a checker.
///
/// `subproblems` counts distinct fully specified subproblems (after
/// memoization); `subproblems_raw` counts them as a naive recursion would.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub minors_evaluated: u64,
    pub subproblems: u64,
    pub subproblems_raw: u64,
    pub arithmetic_ops: u64,
}

impl AddAssign for Counters {
    fn add_assign(&mut self, rhs: Counters) {
        self.minors_evaluated += rhs.minors_evaluated;
        self.subproblems += rhs.subproblems;
        self.subproblems_raw += rhs.subproblems_raw;
        self.arithmetic_ops += rhs.arithmetic_ops;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of a check. A failing report always carries its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub witness: Option<MinorWitness>,
    pub counters: Counters,
}

impl CheckReport {
    pub fn pass(counters: Counters) -> Self {
        CheckReport {
            witness: None,
            counters,
        }
    }

    pub fn fail(witness: MinorWitness, counters: Counters) -> Self {
        debug_assert!(witness.violates());
        CheckReport {
            witness: Some(witness),
            counters,
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.witness.is_some() {
            Verdict::Fail
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn violation_rules() {
        let w = |value: i64, sign, strict| MinorWitness {
            rows: IndexSet::full(1),
            cols: IndexSet::full(1),
            value: int(value),
            required_sign: sign,
            strict,
        };
        assert!(w(0, Sign::Plus, true).violates());
        assert!(!w(0, Sign::Plus, false).violates());
        assert!(w(-1, Sign::Plus, false).violates());
        assert!(!w(-1, Sign::Minus, true).violates());
        assert!(w(1, Sign::Minus, false).violates());
    }

    #[test]
    fn lift_maps_to_parent_indices() {
        let w = MinorWitness {
            rows: IndexSet::new(vec![1, 2]).unwrap(),
            cols: IndexSet::new(vec![1, 2]).unwrap(),
            value: int(0),
            required_sign: Sign::Plus,
            strict: true,
        };
        let lifted = w.lift(&IndexSet::new(vec![2, 4, 5]).unwrap(), &IndexSet::new(vec![1, 3]).unwrap());
        assert_eq!(lifted.rows.as_slice(), &[2, 4]);
        assert_eq!(lifted.cols.as_slice(), &[1, 3]);
    }
}
