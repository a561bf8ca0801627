//! Reference checker: enumerate every fully specified square submatrix and
//! test its determinant against the sign condition. No shortcuts, so that
//! every faster checker can be compared against it.

use std::ops::ControlFlow;

use num_bigint::BigUint;

use crate::det::determinant_counted;
use crate::error::{Error, Result};
use crate::matrix::{IndexSet, PartialMatrix};
use crate::report::{satisfies, CheckReport, Counters, MinorWitness};
use crate::signature::Signature;

/// Sign-regularity property: order-`k` minors `A` must satisfy
/// `e_k·A > 0` (strict) or `e_k·A ≥ 0` (weak).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PropertySpec {
    pub signature: Signature,
    pub strict: bool,
}

impl PropertySpec {
    pub fn new(signature: Signature, strict: bool) -> Self {
        PropertySpec { signature, strict }
    }

    /// Total positivity for matrices with at most `len` rows or columns.
    pub fn tp(len: usize) -> Self {
        PropertySpec::new(Signature::all_positive(len), true)
    }

    /// Total nonnegativity for matrices with at most `len` rows or columns.
    pub fn tn(len: usize) -> Self {
        PropertySpec::new(Signature::all_positive(len), false)
    }

    pub fn is_tp(&self) -> bool {
        self.strict && self.signature.is_all_positive()
    }

    pub(crate) fn ensure_covers(&self, matrix: &PartialMatrix) -> Result<()> {
        let needed = matrix.rows().min(matrix.cols());
        if self.signature.len() < needed {
            return Err(Error::Argument(format!(
                "signature has {} signs but a {}x{} matrix has minors up to order {needed}",
                self.signature.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(())
    }
}

/// Visits every `(rows, cols)` pair whose submatrix is fully specified, in
/// ascending order, then lexicographically by rows, then by columns.
///
/// Row subsets are only extended while at least `k` columns remain fully
/// specified on every chosen row.
pub fn for_each_specified_submatrix<B>(
    matrix: &PartialMatrix,
    mut visit: impl FnMut(&IndexSet, &IndexSet) -> ControlFlow<B>,
) -> ControlFlow<B> {
    let (m, n) = (matrix.rows(), matrix.cols());
    for k in 1..=m.min(n) {
        let all_cols: Vec<usize> = (1..=n).collect();
        let mut chosen = Vec::with_capacity(k);
        extend_rows(matrix, k, 1, &mut chosen, &all_cols, &mut visit)?;
    }
    ControlFlow::Continue(())
}

fn extend_rows<B>(
    matrix: &PartialMatrix,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    support: &[usize],
    visit: &mut impl FnMut(&IndexSet, &IndexSet) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if chosen.len() == k {
        let rows = IndexSet::new(chosen.clone()).expect("rows are chosen in increasing order");
        return for_each_combination(support, k, &mut |cols| {
            visit(&rows, &IndexSet::new(cols.to_vec()).expect("columns come from a sorted support"))
        });
    }
    let remaining = k - chosen.len();
    for r in start..=matrix.rows() + 1 - remaining {
        let narrowed: Vec<usize> = support.iter().copied().filter(|&c| matrix.is_specified(r, c)).collect();
        if narrowed.len() < k {
            continue;
        }
        chosen.push(r);
        let flow = extend_rows(matrix, k, r + 1, chosen, &narrowed, visit);
        chosen.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Visits the `k`-subsets of `items` in lexicographic order.
pub(crate) fn for_each_combination<B>(
    items: &[usize],
    k: usize,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    fn go<B>(
        items: &[usize],
        k: usize,
        start: usize,
        acc: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if acc.len() == k {
            return visit(acc);
        }
        let need = k - acc.len();
        for i in start..=items.len() - need {
            acc.push(items[i]);
            let flow = go(items, k, i + 1, acc, visit);
            acc.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
    if k > items.len() {
        return ControlFlow::Continue(());
    }
    go(items, k, 0, &mut Vec::with_capacity(k), visit)
}

/// All fully specified square submatrices, in enumeration order.
pub fn enumerate_specified_submatrices(matrix: &PartialMatrix) -> Vec<(IndexSet, IndexSet)> {
    let mut out = Vec::new();
    let _ = for_each_specified_submatrix::<()>(matrix, |r, c| {
        out.push((r.clone(), c.clone()));
        ControlFlow::Continue(())
    });
    out
}

/// Evaluates one specified minor against `spec`, returning a witness if it
/// violates the condition.
fn test_minor(
    matrix: &PartialMatrix,
    spec: &PropertySpec,
    rows: &IndexSet,
    cols: &IndexSet,
    counters: &mut Counters,
) -> Option<MinorWitness> {
    let dense = matrix
        .dense_submatrix(rows, cols)
        .expect("enumerated submatrices are fully specified");
    let (value, ops) = determinant_counted(&dense);
    counters.minors_evaluated += 1;
    counters.arithmetic_ops += ops;
    let sign = spec.signature.sign(rows.len());
    (!satisfies(sign, spec.strict, &value)).then(|| MinorWitness {
        rows: rows.clone(),
        cols: cols.clone(),
        value,
        required_sign: sign,
        strict: spec.strict,
    })
}

/// Checks `matrix` against `spec` by testing every specified minor. The
/// witness is the first violator in enumeration order.
pub fn check_property_brute(matrix: &PartialMatrix, spec: &PropertySpec) -> Result<CheckReport> {
    spec.ensure_covers(matrix)?;
    let mut counters = Counters::default();
    let flow = for_each_specified_submatrix(matrix, |rows, cols| {
        match test_minor(matrix, spec, rows, cols, &mut counters) {
            Some(w) => ControlFlow::Break(w),
            None => ControlFlow::Continue(()),
        }
    });
    Ok(match flow {
        ControlFlow::Break(w) => CheckReport::fail(w, counters),
        ControlFlow::Continue(()) => CheckReport::pass(counters),
    })
}

/// Checks an explicit list of minors, in the given order. Each pair must
/// select a fully specified square submatrix.
pub fn check_minors<'a>(
    matrix: &PartialMatrix,
    spec: &PropertySpec,
    minors: impl IntoIterator<Item = &'a (IndexSet, IndexSet)>,
) -> Result<CheckReport> {
    spec.ensure_covers(matrix)?;
    let mut counters = Counters::default();
    for (rows, cols) in minors {
        if rows.len() != cols.len() || !matrix.submatrix(rows, cols)?.is_fully_specified() {
            return Err(Error::Shape(format!("{rows}x{cols} is not a specified square submatrix")));
        }
        if let Some(w) = test_minor(matrix, spec, rows, cols, &mut counters) {
            return Ok(CheckReport::fail(w, counters));
        }
    }
    Ok(CheckReport::pass(counters))
}

/// Number of fully specified square submatrices.
///
/// Counts without listing them: a set `R` of rows whose common specified
/// columns number `c` contributes `C(c, |R|)` minors.
pub fn specified_minor_count(matrix: &PartialMatrix) -> u64 {
    let (m, n) = (matrix.rows(), matrix.cols());
    let words = n.div_ceil(64).max(1);
    let mut masks = vec![0u64; m * words];
    for i in 1..=m {
        for j in 1..=n {
            if matrix.is_specified(i, j) {
                masks[(i - 1) * words + (j - 1) / 64] |= 1 << ((j - 1) % 64);
            }
        }
    }
    let mut scratch = vec![0u64; (m + 1) * words];
    scratch[..words].iter_mut().for_each(|w| *w = !0);
    count_rows(&masks, words, 0, 0, &mut scratch)
}

/// Sums `C(|support|, depth + 1)` over every way to add one more row at or
/// after `start`, then recurses. `scratch[depth]` holds the current support.
fn count_rows(masks: &[u64], words: usize, start: usize, depth: usize, scratch: &mut [u64]) -> u64 {
    let rows = masks.len() / words;
    let mut total = 0u64;
    for r in start..rows {
        let (head, tail) = scratch.split_at_mut((depth + 1) * words);
        let support = &head[depth * words..];
        let next = &mut tail[..words];
        let mut size = 0;
        for w in 0..words {
            next[w] = support[w] & masks[r * words + w];
            size += next[w].count_ones() as u64;
        }
        let k = depth as u64 + 1;
        if size < k {
            continue;
        }
        total += binomial(size, k);
        total += count_rows(masks, words, r + 1, depth + 1, scratch);
    }
    total
}

fn binomial(n: u64, k: u64) -> u64 {
    let c = (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1));
    u64::try_from(c).expect("minor count fits in u64")
}

/// Upper bound on the number of specified minors of an `m`×`n` partial
/// matrix: `Σ_k C(m,k)·C(n,k) = C(m+n, n) − 1`.
pub fn minor_count_bound(m: usize, n: usize) -> BigUint {
    let mut c = BigUint::from(1u32);
    for i in 0..n {
        c = c * BigUint::from(m + n - i) / BigUint::from(i + 1);
    }
    c - 1u32
}
