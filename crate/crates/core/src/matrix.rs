//! Rational scalars, index sets and (partial) matrices.
//!
//! All row and column indices exposed by this module are 1-based. A
//! [`PartialMatrix`] with no unspecified cells is an ordinary matrix; there is
//! no separate dense type.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar. `num_rational` keeps values in lowest terms with a
/// positive denominator, and its `Display` prints integers without `/1`.
pub type Rational = num_rational::BigRational;

/// Parses one numeric token: an integer or `p/q` with optional signs.
///
/// Only ASCII digits are accepted in each part; a zero denominator is
/// rejected.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    fn int(part: &str) -> std::result::Result<BigInt, String> {
        let digits = part.strip_prefix(['+', '-']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("malformed number `{part}`"));
        }
        BigInt::from_str(part).map_err(|e| format!("malformed number `{part}`: {e}"))
    }
    match token.split_once('/') {
        None => Ok(Rational::from_integer(int(token)?)),
        Some((p, q)) => {
            let num = int(p)?;
            let den = int(q)?;
            if den.is_zero() {
                return Err(format!("zero denominator in `{token}`"));
            }
            Ok(Rational::new(num, den))
        }
    }
}

pub(crate) fn rational_from_i64(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Sorted, strictly increasing set of 1-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::Bounds("indices are 1-based".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument(format!(
                "index set {indices:?} is not strictly increasing"
            )));
        }
        Ok(IndexSet(indices))
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        IndexSet((1..=n).collect())
    }

    /// The contiguous run `{start, ..., start + len - 1}`.
    pub fn contiguous(start: usize, len: usize) -> Self {
        assert!(start >= 1, "indices are 1-based");
        IndexSet((start..start + len).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// The same set with `index` removed.
    pub fn without(&self, index: usize) -> Self {
        IndexSet(self.0.iter().copied().filter(|&i| i != index).collect())
    }

    /// Maps each local index `i` to `self[i]`, translating an index set of a
    /// submatrix back to the coordinates of its parent.
    pub fn lift(&self, local: &IndexSet) -> IndexSet {
        IndexSet(local.iter().map(|i| self.0[i - 1]).collect())
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(s: IndexSet) -> Self {
        s.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// An `m`×`n` grid whose cells are either a rational value or unspecified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Option<Rational>>,
}

/// A fully specified matrix is a `PartialMatrix` without holes.
pub type Matrix = PartialMatrix;

impl PartialMatrix {
    /// Builds a matrix from row-major cells.
    pub fn new(rows: usize, cols: usize, cells: Vec<Option<Rational>>) -> Result<Self> {
        if rows.checked_mul(cols) != Some(cells.len()) {
            return Err(Error::Shape(format!(
                "{} cells cannot form a {rows}x{cols} matrix",
                cells.len()
            )));
        }
        Ok(PartialMatrix { rows, cols, cells })
    }

    pub fn from_rows(rows: Vec<Vec<Option<Rational>>>) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "row {} has {} cells, expected {n}",
                bad + 1,
                rows[bad].len()
            )));
        }
        PartialMatrix::new(m, n, rows.into_iter().flatten().collect())
    }

    pub fn from_values(rows: Vec<Vec<Rational>>) -> Result<Self> {
        PartialMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Some).collect())
                .collect(),
        )
    }

    /// Fully specified matrix from integer rows.
    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        PartialMatrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| Some(rational_from_i64(v))).collect())
                .collect(),
        )
    }

    /// Integer matrix where `None` marks an unspecified cell.
    pub fn from_optional_integers<R: AsRef<[Option<i64>]>>(rows: &[R]) -> Result<Self> {
        PartialMatrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|v| v.map(rational_from_i64)).collect())
                .collect(),
        )
    }

    /// The `rows`×`cols` matrix with every cell unspecified.
    pub fn unspecified(rows: usize, cols: usize) -> Self {
        PartialMatrix {
            rows,
            cols,
            cells: vec![None; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn offset(&self, row: usize, col: usize) -> usize {
        assert!(
            (1..=self.rows).contains(&row) && (1..=self.cols).contains(&col),
            "cell ({row}, {col}) outside a {}x{} matrix",
            self.rows,
            self.cols
        );
        (row - 1) * self.cols + (col - 1)
    }

    /// The cell at 1-based `(row, col)`; `None` if unspecified.
    ///
    /// Panics if the position is out of range.
    pub fn get(&self, row: usize, col: usize) -> Option<&Rational> {
        self.cells[self.offset(row, col)].as_ref()
    }

    pub fn is_specified(&self, row: usize, col: usize) -> bool {
        self.get(row, col).is_some()
    }

    pub fn set(&mut self, row: usize, col: usize, value: Option<Rational>) {
        let at = self.offset(row, col);
        self.cells[at] = value;
    }

    pub fn is_fully_specified(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    pub fn unspecified_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    /// Row `row` (1-based) as a slice of cells.
    pub fn row(&self, row: usize) -> &[Option<Rational>] {
        let start = self.offset(row, 1);
        &self.cells[start..start + self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 1..=self.cols {
            for i in 1..=self.rows {
                cells.push(self.get(i, j).cloned());
            }
        }
        PartialMatrix {
            rows: self.cols,
            cols: self.rows,
            cells,
        }
    }

    /// The submatrix on the selected rows and columns, keeping holes.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        let out_of = |set: &IndexSet, bound: usize| set.iter().find(|&i| i > bound);
        if let Some(i) = out_of(rows, self.rows) {
            return Err(Error::Bounds(format!("row {i} outside 1..={}", self.rows)));
        }
        if let Some(j) = out_of(cols, self.cols) {
            return Err(Error::Bounds(format!("column {j} outside 1..={}", self.cols)));
        }
        let mut cells = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.iter() {
            for j in cols.iter() {
                cells.push(self.get(i, j).cloned());
            }
        }
        PartialMatrix::new(rows.len(), cols.len(), cells)
    }

    /// The matrix with row `row` deleted.
    pub fn delete_row(&self, row: usize) -> Result<Self> {
        if !(1..=self.rows).contains(&row) {
            return Err(Error::Bounds(format!("row {row} outside 1..={}", self.rows)));
        }
        self.submatrix(&IndexSet::full(self.rows).without(row), &IndexSet::full(self.cols))
    }

    /// The matrix with column `col` deleted.
    pub fn delete_col(&self, col: usize) -> Result<Self> {
        if !(1..=self.cols).contains(&col) {
            return Err(Error::Bounds(format!("column {col} outside 1..={}", self.cols)));
        }
        self.submatrix(&IndexSet::full(self.rows), &IndexSet::full(self.cols).without(col))
    }

    /// Dense rows of a fully specified matrix.
    pub fn to_dense(&self) -> Result<Vec<Vec<Rational>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 1..=self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 1..=self.cols {
                match self.get(i, j) {
                    Some(v) => row.push(v.clone()),
                    None => {
                        return Err(Error::Shape(format!("cell ({i}, {j}) is unspecified")))
                    }
                }
            }
            out.push(row);
        }
        Ok(out)
    }

    /// Dense rows of the selected submatrix, which must be fully specified.
    pub(crate) fn dense_submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Option<Vec<Vec<Rational>>> {
        rows.iter()
            .map(|i| cols.iter().map(|j| self.get(i, j).cloned()).collect())
            .collect()
    }

    /// True when every specified entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.cells.iter().flatten().all(|v| v.denom().is_one())
    }

    pub fn has_nonpositive_entry(&self) -> bool {
        self.cells.iter().flatten().any(|v| !v.is_positive())
    }
}

/// Parses the whitespace-separated matrix text format: one row per line,
/// tokens are integers, `p/q` fractions, or `?` for an unspecified cell.
/// Blank lines are ignored; LF and CRLF line endings are accepted.
pub fn parse_partial_matrix(text: &str) -> Result<PartialMatrix> {
    let mut rows: Vec<Vec<Option<Rational>>> = Vec::new();
    let mut width = None;
    for (line_no, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        match width {
            None => width = Some(tokens.len()),
            Some(w) if w != tokens.len() => {
                return Err(Error::parse(
                    line_no,
                    None,
                    format!("row has {} entries, expected {w}", tokens.len()),
                ))
            }
            Some(_) => {}
        }
        let mut row = Vec::with_capacity(tokens.len());
        for (col, token) in tokens.iter().enumerate() {
            if *token == "?" {
                row.push(None);
            } else {
                let value = parse_rational(token).map_err(|m| Error::parse(line_no, Some(col + 1), m))?;
                row.push(Some(value));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::parse(1, None, "matrix text contains no rows"));
    }
    PartialMatrix::from_rows(rows)
}

impl FromStr for PartialMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partial_matrix(s)
    }
}

/// Canonical text form: single spaces between tokens, one line per row,
/// trailing newline.
impl fmt::Display for PartialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                if j > 1 {
                    write!(f, " ")?;
                }
                match self.get(i, j) {
                    Some(v) => write!(f, "{v}")?,
                    None => write!(f, "?")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p.into(), r.into())
    }

    #[test]
    fn parses_mixed_tokens() {
        let m = parse_partial_matrix("1 2\n? 3").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.get(1, 1), Some(&q(1, 1)));
        assert_eq!(m.get(1, 2), Some(&q(2, 1)));
        assert_eq!(m.get(2, 1), None);
        assert_eq!(m.get(2, 2), Some(&q(3, 1)));
    }

    #[test]
    fn parses_fraction() {
        let m = parse_partial_matrix("1/2").unwrap();
        assert_eq!(m.get(1, 1), Some(&q(1, 2)));
        let m = parse_partial_matrix("4/-6 -3/9").unwrap();
        assert_eq!(m.get(1, 1), Some(&q(-2, 3)));
        assert_eq!(m.get(1, 2), Some(&q(-1, 3)));
    }

    #[test]
    fn parses_counterexample_with_crlf() {
        let m = parse_partial_matrix("1 0 1\r\n1 0 0\r\n").unwrap();
        assert_eq!(m, PartialMatrix::from_integers(&[[1, 0, 1], [1, 0, 0]]).unwrap());
        assert!(m.is_fully_specified());
    }

    #[test]
    fn ragged_rows_report_the_row() {
        let err = parse_partial_matrix("1 2\n3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: None, .. }), "{err:?}");
    }

    #[test]
    fn malformed_tokens_report_position() {
        for (text, line, col) in [("1 x", 1, 2), ("1 2\n3 1/", 2, 2), ("1_0", 1, 1), ("1/2/3", 1, 1), ("+", 1, 1)] {
            let err = parse_partial_matrix(text).unwrap_err();
            assert!(
                matches!(err, Error::Parse { line: l, column: Some(c), .. } if l == line && c == col),
                "{text}: {err:?}"
            );
        }
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(parse_partial_matrix("1/0"), Err(Error::Parse { .. })));
    }

    #[test]
    fn empty_text_is_rejected() {
        assert!(parse_partial_matrix("").is_err());
        assert!(parse_partial_matrix("\n  \n").is_err());
    }

    #[test]
    fn formats_canonically() {
        let m = parse_partial_matrix("2/4 -3\n?  6/3").unwrap();
        assert_eq!(m.to_string(), "1/2 -3\n? 2\n");
    }

    #[test]
    fn submatrix_selection() {
        let m = PartialMatrix::from_integers(&[[1, 2], [3, 4]]).unwrap();
        assert_eq!(m.submatrix(&IndexSet::full(2), &IndexSet::full(2)).unwrap(), m);
        let s = m
            .submatrix(&IndexSet::new(vec![2]).unwrap(), &IndexSet::new(vec![1]).unwrap())
            .unwrap();
        assert_eq!(s, PartialMatrix::from_integers(&[[3]]).unwrap());

        let c = PartialMatrix::from_integers(&[[1, 0, 1], [1, 0, 0]]).unwrap();
        let s = c.submatrix(&IndexSet::full(2), &IndexSet::full(2)).unwrap();
        assert_eq!(s, PartialMatrix::from_integers(&[[1, 0], [1, 0]]).unwrap());
    }

    #[test]
    fn submatrix_keeps_holes_and_checks_bounds() {
        let m = parse_partial_matrix("1 ?\n? 1").unwrap();
        let s = m.submatrix(&IndexSet::full(2), &IndexSet::new(vec![2]).unwrap()).unwrap();
        assert_eq!(s.get(1, 1), None);
        assert!(matches!(
            m.submatrix(&IndexSet::new(vec![3]).unwrap(), &IndexSet::full(1)),
            Err(Error::Bounds(_))
        ));
        assert!(matches!(m.delete_row(3), Err(Error::Bounds(_))));
    }

    #[test]
    fn deletions_are_complements() {
        let m = parse_partial_matrix("1 2 3\n4 ? 6").unwrap();
        assert_eq!(m.delete_row(2).unwrap().to_string(), "1 2 3\n");
        assert_eq!(m.delete_col(2).unwrap().to_string(), "1 3\n4 6\n");
    }

    #[test]
    fn index_set_validation() {
        assert!(IndexSet::new(vec![1, 3, 4]).is_ok());
        assert!(IndexSet::new(vec![2, 2]).is_err());
        assert!(IndexSet::new(vec![3, 1]).is_err());
        assert!(IndexSet::new(vec![0, 1]).is_err());
        let parent = IndexSet::new(vec![2, 5, 7]).unwrap();
        assert_eq!(parent.lift(&IndexSet::new(vec![1, 3]).unwrap()).as_slice(), &[2, 7]);
    }
}
