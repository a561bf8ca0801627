//! Shared fixtures and independent oracles for the integration tests.
//!
//! The oracles here share no code with the library: subsets come from
//! bitmasks and determinants from Laplace expansion along the first row.

#![allow(dead_code)]

pub mod cli;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tpkit::{BipartiteGraph, PartialMatrix, Rational, Sign, Signature};

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Laplace expansion along the first row.
pub fn laplace(rows: &[Vec<Rational>]) -> Rational {
    let k = rows.len();
    if k == 0 {
        return rat(1, 1);
    }
    let mut total = Rational::zero();
    for c in 0..k {
        if rows[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &rows[0][c] * laplace(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// Every specified square submatrix as `(rows, cols)`, 1-based.
pub fn specified_minors(m: &PartialMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for rmask in 1u32..1 << m.rows() {
        let rows = bits(rmask);
        for cmask in 1u32..1 << m.cols() {
            let cols = bits(cmask);
            if rows.len() == cols.len() && rows.iter().all(|&i| cols.iter().all(|&j| m.is_specified(i, j))) {
                out.push((rows.clone(), cols));
            }
        }
    }
    out
}

pub fn minor_value(m: &PartialMatrix, rows: &[usize], cols: &[usize]) -> Rational {
    let dense: Vec<Vec<Rational>> = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| m.get(i, j).expect("specified").clone()).collect())
        .collect();
    laplace(&dense)
}

/// Whether every specified minor of order `k` has `e_k·A > 0` (strict) or
/// `≥ 0` (weak).
pub fn oracle_holds(m: &PartialMatrix, signature: &Signature, strict: bool) -> bool {
    specified_minors(m).into_iter().all(|(r, c)| {
        let v = signature.sign(r.len()).apply(&minor_value(m, &r, &c));
        if strict {
            v.is_positive()
        } else {
            !v.is_negative()
        }
    })
}

/// Whether some `k` left and `k` right vertices are all joined.
pub fn oracle_balanced_biclique(g: &BipartiteGraph, k: usize) -> bool {
    for umask in 1u32..1 << g.left() {
        if umask.count_ones() as usize != k {
            continue;
        }
        let us = bits(umask);
        let common = (1..=g.right()).filter(|&v| us.iter().all(|&u| g.has_edge(u, v))).count();
        if common >= k {
            return true;
        }
    }
    false
}

/// `C(i+j-2, i-1)`: the symmetric Pascal matrix, totally positive.
pub fn pascal(n: usize) -> PartialMatrix {
    let mut rows = vec![vec![BigInt::from(1); n]; n];
    for i in 1..n {
        for j in 1..n {
            rows[i][j] = &rows[i - 1][j] + &rows[i][j - 1];
        }
    }
    PartialMatrix::from_values(rows.into_iter().map(|r| r.into_iter().map(Rational::from_integer).collect()).collect())
        .unwrap()
}

/// A random rational with a small numerator and denominator.
pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-4..=9), rng.gen_range(1..=3))
}

/// A random matrix of the given shape. A third of them are Vandermonde-like
/// with increasing positive nodes, so the pass path is exercised too.
pub fn random_full(rng: &mut ChaCha8Rng, m: usize, n: usize) -> PartialMatrix {
    let rows: Vec<Vec<Rational>> = if rng.gen_ratio(1, 3) {
        let mut x = rat(0, 1);
        let nodes: Vec<Rational> = (0..m)
            .map(|_| {
                x += rat(rng.gen_range(1..=3), rng.gen_range(1..=2));
                x.clone()
            })
            .collect();
        // x_i^j with increasing x_i > 0 is totally positive.
        nodes.iter().map(|x| (1..=n).map(|p| num_traits::pow(x.clone(), p)).collect()).collect()
    } else {
        (0..m).map(|_| (0..n).map(|_| random_rational(rng)).collect()).collect()
    };
    PartialMatrix::from_values(rows).unwrap()
}

/// `base` with `holes` distinct cells removed.
pub fn punch(rng: &mut ChaCha8Rng, base: &PartialMatrix, holes: usize) -> PartialMatrix {
    let (m, n) = (base.rows(), base.cols());
    let mut out = base.clone();
    for cell in rand::seq::index::sample(rng, m * n, holes.min(m * n)) {
        out.set(cell / n + 1, cell % n + 1, None);
    }
    out
}

pub fn random_signature(rng: &mut ChaCha8Rng, len: usize) -> Signature {
    Signature::new((0..len).map(|_| if rng.gen() { Sign::Plus } else { Sign::Minus }).collect())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

pub fn full_matrix(max_m: usize, max_n: usize) -> impl Strategy<Value = PartialMatrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(rational(), n), m)
            .prop_map(|rows| PartialMatrix::from_values(rows).unwrap())
    })
}

pub fn partial_matrix(max_m: usize, max_n: usize) -> impl Strategy<Value = PartialMatrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(prop::option::weighted(0.75, rational()), n), m)
            .prop_map(|rows| PartialMatrix::from_rows(rows).unwrap())
    })
}

pub fn square(max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(rational(), k), k))
}

pub fn signature(len: usize) -> impl Strategy<Value = Signature> {
    prop::collection::vec(any::<bool>(), len)
        .prop_map(|b| Signature::new(b.into_iter().map(|p| if p { Sign::Plus } else { Sign::Minus }).collect()))
}

pub fn graph(max_left: usize, max_right: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max_left, 1..=max_right).prop_flat_map(|(l, r)| {
        (0u64..1 << (l * r)).prop_map(move |mask| BipartiteGraph::from_edge_mask(l, r, mask))
    })
}
