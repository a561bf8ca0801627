//! Bipartite pattern graphs and bicliques.
//!
//! The pattern graph of a partial matrix has one vertex per row (part `U`)
//! and one per column (part `V`), with an edge wherever the cell is
//! specified. Fully specified square submatrices are exactly the balanced
//! bicliques, so a partial matrix has a submatrix-inherited property iff the
//! submatrix of every maximal biclique has it.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IndexSet, PartialMatrix};
use crate::partial::FullChecker;
use crate::report::{CheckReport, Counters};

/// Bipartite graph with parts `U = {1..left}` and `V = {1..right}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    adjacency: Vec<bool>,
}

impl BipartiteGraph {
    pub fn empty(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            adjacency: vec![false; left * right],
        }
    }

    pub fn complete(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            adjacency: vec![true; left * right],
        }
    }

    /// Graph from 1-based `(u, v)` edges. Duplicates and out-of-range
    /// endpoints are rejected.
    pub fn from_edges(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = BipartiteGraph::empty(left, right);
        for (u, v) in edges {
            g.check_bounds(u, v)?;
            if g.has_edge(u, v) {
                return Err(Error::Argument(format!("duplicate edge ({u}, {v})")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    fn check_bounds(&self, u: usize, v: usize) -> Result<()> {
        if !(1..=self.left).contains(&u) || !(1..=self.right).contains(&v) {
            return Err(Error::Bounds(format!(
                "edge ({u}, {v}) outside a {}+{} vertex graph",
                self.left, self.right
            )));
        }
        Ok(())
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[(u - 1) * self.right + (v - 1)]
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        self.adjacency[(u - 1) * self.right + (v - 1)] = present;
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.left)
            .flat_map(|u| (1..=self.right).map(move |v| (u, v)))
            .filter(|&(u, v)| self.has_edge(u, v))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().filter(|&&e| e).count()
    }

    /// True iff every `(u, v)` across the two sets is an edge.
    pub fn is_complete_between(&self, us: &[usize], vs: &[usize]) -> bool {
        us.iter().all(|&u| vs.iter().all(|&v| self.has_edge(u, v)))
    }

    /// Graph whose edge `(u, v)` is present iff bit `(u-1)*right + (v-1)` of
    /// `mask` is set.
    pub fn from_edge_mask(left: usize, right: usize, mask: u64) -> Self {
        let mut g = BipartiteGraph::empty(left, right);
        for idx in 0..left * right {
            g.adjacency[idx] = mask >> idx & 1 == 1;
        }
        g
    }
}

/// Parses the graph text format: a first line `m n`, then one `u v` edge per
/// line (1-based). Blank lines are ignored.
impl FromStr for BipartiteGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::parse(line, None, format!("expected two integers, found {}", toks.len())));
            }
            let num = |col: usize| {
                toks[col]
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, Some(col + 1), format!("bad integer `{}`", toks[col])))
            };
            Ok((num(0)?, num(1)?))
        };
        let (line, header) = lines.next().ok_or_else(|| Error::parse(1, None, "missing `m n` header"))?;
        let (left, right) = pair(line, header)?;
        let mut g = BipartiteGraph::empty(left, right);
        for (line, l) in lines {
            let (u, v) = pair(line, l)?;
            g.check_bounds(u, v).map_err(|e| Error::parse(line, None, e.to_string()))?;
            if g.has_edge(u, v) {
                return Err(Error::parse(line, None, format!("duplicate edge ({u}, {v})")));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.left, self.right)?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// A pair of vertex sets, one per part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Biclique {
    pub u_set: IndexSet,
    pub v_set: IndexSet,
}

impl Biclique {
    pub fn is_balanced(&self) -> bool {
        self.u_set.len() == self.v_set.len()
    }

    pub fn is_biclique_of(&self, g: &BipartiteGraph) -> bool {
        g.is_complete_between(self.u_set.as_slice(), self.v_set.as_slice())
    }

    /// Complete in `g` and no vertex of either part can be added.
    pub fn is_maximal_in(&self, g: &BipartiteGraph) -> bool {
        let all_u: Vec<usize> = (1..=g.left()).collect();
        let all_v: Vec<usize> = (1..=g.right()).collect();
        self.is_biclique_of(g) && is_maximal_within(g, self, &all_u, &all_v)
    }
}

fn is_maximal_within(g: &BipartiteGraph, b: &Biclique, us: &[usize], vs: &[usize]) -> bool {
    let u_ext = us
        .iter()
        .filter(|&&u| !b.u_set.contains(u))
        .any(|&u| b.v_set.iter().all(|v| g.has_edge(u, v)));
    let v_ext = vs
        .iter()
        .filter(|&&v| !b.v_set.contains(v))
        .any(|&v| b.u_set.iter().all(|u| g.has_edge(u, v)));
    !u_ext && !v_ext
}

/// Rows become `U`, columns become `V`, specified cells become edges.
pub fn pattern_graph(matrix: &PartialMatrix) -> BipartiteGraph {
    let mut g = BipartiteGraph::empty(matrix.rows(), matrix.cols());
    for i in 1..=matrix.rows() {
        for j in 1..=matrix.cols() {
            if matrix.is_specified(i, j) {
                g.set_edge(i, j, true);
            }
        }
    }
    g
}

/// Every maximal biclique with both parts nonempty, sorted by `u_set` then
/// `v_set`.
///
/// Splits on a non-edge `(u, v)`: every biclique misses `u` or `v`, so the
/// maximal bicliques of the graph are the maximal members of the union of
/// those of `G − u` and `G − v`. Exponential in the number of non-edges in
/// the worst case; subgraphs are memoized.
pub fn maximal_bicliques(g: &BipartiteGraph) -> Vec<Biclique> {
    let us: Vec<usize> = (1..=g.left()).collect();
    let vs: Vec<usize> = (1..=g.right()).collect();
    let mut memo = HashMap::new();
    split_on_non_edge(g, us, vs, &mut memo).into_iter().collect()
}

type SubgraphKey = (Vec<usize>, Vec<usize>);

fn split_on_non_edge(
    g: &BipartiteGraph,
    us: Vec<usize>,
    vs: Vec<usize>,
    memo: &mut HashMap<SubgraphKey, BTreeSet<Biclique>>,
) -> BTreeSet<Biclique> {
    let key = (us, vs);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (us, vs) = &key;
    let non_edge = us
        .iter()
        .flat_map(|&u| vs.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| !g.has_edge(u, v));
    let result = match non_edge {
        None => {
            let mut single = BTreeSet::new();
            if !us.is_empty() && !vs.is_empty() {
                single.insert(Biclique {
                    u_set: IndexSet::new(us.clone()).expect("sorted"),
                    v_set: IndexSet::new(vs.clone()).expect("sorted"),
                });
            }
            single
        }
        Some((u, v)) => {
            let without_u: Vec<usize> = us.iter().copied().filter(|&x| x != u).collect();
            let without_v: Vec<usize> = vs.iter().copied().filter(|&x| x != v).collect();
            let mut union = split_on_non_edge(g, without_u, vs.clone(), memo);
            union.extend(split_on_non_edge(g, us.clone(), without_v, memo));
            union.retain(|b| is_maximal_within(g, b, us, vs));
            union
        }
    };
    memo.insert(key, result.clone());
    result
}

/// True iff some `k` vertices of `U` and `k` of `V` are pairwise adjacent.
/// Exhaustive search over `U`-subsets, pruned by common neighbourhood size.
pub fn has_balanced_biclique(g: &BipartiteGraph, k: usize) -> bool {
    fn grow(g: &BipartiteGraph, k: usize, start: usize, picked: usize, common: &[usize]) -> bool {
        if picked == k {
            return true;
        }
        (start..=g.left()).any(|u| {
            let narrowed: Vec<usize> = common.iter().copied().filter(|&v| g.has_edge(u, v)).collect();
            narrowed.len() >= k && grow(g, k, u + 1, picked + 1, &narrowed)
        })
    }
    if k == 0 {
        return true;
    }
    let all_v: Vec<usize> = (1..=g.right()).collect();
    all_v.len() >= k && grow(g, k, 1, 0, &all_v)
}

/// Checks every maximal-biclique submatrix with `full_checker`. The witness
/// comes from the first failing biclique in canonical order.
pub fn biclique_partial_check(matrix: &PartialMatrix, full_checker: &FullChecker<'_>) -> Result<CheckReport> {
    let mut counters = Counters::default();
    for b in maximal_bicliques(&pattern_graph(matrix)) {
        let report = check_biclique(matrix, &b, full_checker)?;
        counters += report.counters;
        counters.subproblems += 1;
        counters.subproblems_raw += 1;
        if let Some(w) = report.witness {
            return Ok(CheckReport::fail(w, counters));
        }
    }
    Ok(CheckReport::pass(counters))
}

/// [`biclique_partial_check`] with the per-biclique checks spread over the
/// current rayon pool. Verdict and witness match the sequential version;
/// counters cover every biclique checked.
pub fn biclique_partial_check_parallel(
    matrix: &PartialMatrix,
    full_checker: &FullChecker<'_>,
) -> Result<CheckReport> {
    let bicliques = maximal_bicliques(&pattern_graph(matrix));
    let reports: Vec<CheckReport> = bicliques
        .par_iter()
        .map(|b| check_biclique(matrix, b, full_checker))
        .collect::<Result<_>>()?;
    let mut counters = Counters::default();
    let mut first = None;
    for report in reports {
        counters += report.counters;
        counters.subproblems += 1;
        counters.subproblems_raw += 1;
        if first.is_none() {
            first = report.witness;
        }
    }
    Ok(match first {
        Some(w) => CheckReport::fail(w, counters),
        None => CheckReport::pass(counters),
    })
}

fn check_biclique(matrix: &PartialMatrix, b: &Biclique, full_checker: &FullChecker<'_>) -> Result<CheckReport> {
    let sub = matrix.submatrix(&b.u_set, &b.v_set)?;
    let mut report = full_checker(&sub)?;
    report.witness = report.witness.map(|w| w.lift(&b.u_set, &b.v_set));
    report.counters.subproblems = 0;
    report.counters.subproblems_raw = 0;
    Ok(report)
}
