//! Benchmark instances and measurements for comparing checkers.
//!
//! Every instance is a generated totally positive matrix with `x` cells
//! punched out at random, so every check takes the pass path. Hole
//! positions depend only on the seed, the shape, `x` and the trial number.

use std::collections::HashMap;
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::checker::{check, Method};
use crate::error::{Error, Result};
use crate::generator::generate_tp;
use crate::matrix::PartialMatrix;
use crate::oracle::PropertySpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub shapes: Vec<(usize, usize)>,
    pub holes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub methods: Vec<Method>,
    pub parallel: bool,
}

/// One CSV row. `wall_time_ms` is `None` when timing is switched off.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub x: usize,
    pub method: &'static str,
    pub trial: usize,
    pub wall_time_ms: Option<f64>,
    pub minors_evaluated: u64,
    pub subproblems: u64,
}

/// Parses a size list such as `4..12,3x5,7`: a bare number is square, `a..b`
/// is every square size from `a` to `b` inclusive, `MxN` is one shape.
pub fn parse_sizes(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut shapes = Vec::new();
    for item in text.split(',').map(str::trim) {
        let number = |s: &str| -> Result<usize> {
            match s.trim().parse::<usize>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::Argument(format!("bad size `{item}`"))),
            }
        };
        if let Some((a, b)) = item.split_once("..") {
            let (a, b) = (number(a)?, number(b)?);
            if a > b {
                return Err(Error::Argument(format!("empty size range `{item}`")));
            }
            shapes.extend((a..=b).map(|s| (s, s)));
        } else if let Some((m, n)) = item.split_once(['x', 'X']) {
            shapes.push((number(m)?, number(n)?));
        } else {
            let s = number(item)?;
            shapes.push((s, s));
        }
    }
    Ok(shapes)
}

/// Parses a comma-separated hole-count list; ranges `a..b` are allowed.
pub fn parse_holes(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let number = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Argument(format!("bad hole count `{item}`")))
        };
        match item.split_once("..") {
            Some((a, b)) => out.extend(number(a)?..=number(b)?),
            None => out.push(number(item)?),
        }
    }
    Ok(out)
}

/// The matrix for one benchmark cell: `tp` with `x` cells removed.
pub fn punch_holes(tp: &PartialMatrix, x: usize, seed: u64, trial: usize) -> Result<PartialMatrix> {
    let (m, n) = (tp.rows(), tp.cols());
    if x > m * n {
        return Err(Error::Argument(format!("cannot punch {x} holes in a {m}x{n} matrix")));
    }
    let stream = [m as u64, n as u64, x as u64, trial as u64]
        .iter()
        .fold(seed, |h, &v| h.rotate_left(17) ^ v.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut rng = ChaCha8Rng::seed_from_u64(stream);
    let mut out = tp.clone();
    for cell in sample(&mut rng, m * n, x) {
        out.set(cell / n + 1, cell % n + 1, None);
    }
    Ok(out)
}

/// Runs every (shape, holes, method, trial) combination in that nesting
/// order. Dodgson only runs on instances without holes; other
/// combinations are skipped for it.
pub fn run_bench(config: &BenchConfig, timed: bool, mut emit: impl FnMut(BenchRow) -> Result<()>) -> Result<()> {
    let mut cache: HashMap<(usize, usize), PartialMatrix> = HashMap::new();
    for &(m, n) in &config.shapes {
        if !cache.contains_key(&(m, n)) {
            cache.insert((m, n), generate_tp(m, n)?);
        }
        let tp = &cache[&(m, n)];
        let spec = PropertySpec::tp(m.min(n));
        for &x in &config.holes {
            for &method in &config.methods {
                if method == Method::Dodgson && x > 0 {
                    continue;
                }
                for trial in 0..config.trials {
                    let matrix = punch_holes(tp, x, config.seed, trial)?;
                    let start = Instant::now();
                    let report = check(&matrix, &spec, method, config.parallel)?;
                    let elapsed = start.elapsed().as_secs_f64() * 1e3;
                    emit(BenchRow {
                        m,
                        n,
                        x,
                        method: method.resolve(&matrix, &spec)?.name(),
                        trial,
                        wall_time_ms: timed.then_some(elapsed),
                        minors_evaluated: report.counters.minors_evaluated,
                        subproblems: report.counters.subproblems,
                    })?;
                }
            }
        }
    }
    Ok(())
}
