//! Enumeration of support patterns: every set of positions whose
//! (0,1)-matrix satisfies the associativity law.
//!
//! Positions are visited in graded order (`i + j` ascending, then `i`) and
//! a pattern is a bitmask over that list. Each associativity triple becomes
//! a pair of masks `(lhs, rhs)`; a (0,1)-matrix satisfies the triple iff
//! both masks are fully set or neither is. The triple is checked as soon as
//! the last of its positions has been decided.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dgca::{canonical_rep, positions, Position, SupportPattern};

/// Largest dimension for which the exhaustive scan is allowed.
pub const NAIVE_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum EnumerateError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("naive oracle is limited to n <= {NAIVE_LIMIT}, got {n}")]
    OracleTooLarge { n: usize },
    #[error("dimension {n} has more than 64 positions")]
    TooManyPositions { n: usize },
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    CountOnly,
    Stream,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationTask {
    pub dim: usize,
    pub mode: Mode,
    pub parallel_width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerationOutput {
    Count(u64),
    Patterns(Vec<SupportPattern>),
}

impl EnumerationTask {
    pub fn run(&self) -> Result<EnumerationOutput, EnumerateError> {
        let search = Search::new(self.dim)?;
        let width = self.parallel_width.max(1);
        match self.mode {
            Mode::CountOnly => Ok(EnumerationOutput::Count(search.count(width)?)),
            Mode::Stream => Ok(EnumerationOutput::Patterns(search.patterns(width)?)),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Constraint {
    lhs: u64,
    rhs: u64,
}

impl Constraint {
    fn holds(self, mask: u64) -> bool {
        (mask & self.lhs == self.lhs) == (mask & self.rhs == self.rhs)
    }
}

struct Search {
    dim: usize,
    positions: Vec<Position>,
    /// `checks[k]`: constraints whose last position has index `k`.
    checks: Vec<Vec<Constraint>>,
}

impl Search {
    fn new(dim: usize) -> Result<Self, EnumerateError> {
        if dim == 0 {
            return Err(EnumerateError::ZeroDimension);
        }
        let positions = positions(dim);
        if positions.len() > 64 {
            return Err(EnumerateError::TooManyPositions { n: dim });
        }
        let index = |i: usize, j: usize| {
            let p = (i.min(j), i.max(j));
            positions.iter().position(|&q| q == p).expect("position in range")
        };
        let mut seen = BTreeSet::new();
        let mut checks = vec![Vec::new(); positions.len()];
        for i in 1..=dim {
            for j in 1..=dim {
                for k in 1..=dim {
                    if i + j + k > dim {
                        continue;
                    }
                    let l = [index(j, k), index(i, j + k)];
                    let r = [index(i, j), index(i + j, k)];
                    let lhs = (1u64 << l[0]) | (1u64 << l[1]);
                    let rhs = (1u64 << r[0]) | (1u64 << r[1]);
                    if lhs == rhs || !seen.insert((lhs.min(rhs), lhs.max(rhs))) {
                        continue;
                    }
                    let last = l.iter().chain(&r).copied().max().unwrap();
                    checks[last].push(Constraint { lhs, rhs });
                }
            }
        }
        Ok(Search {
            dim,
            positions,
            checks,
        })
    }

    fn consistent_at(&self, k: usize, mask: u64) -> bool {
        self.checks[k].iter().all(|c| c.holds(mask))
    }

    /// Valid partial assignments of the first `depth` positions.
    fn prefixes(&self, depth: usize) -> Vec<u64> {
        let mut frontier = vec![0u64];
        for k in 0..depth {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for &m in &frontier {
                for bit in [0u64, 1] {
                    let m2 = m | (bit << k);
                    if self.consistent_at(k, m2) {
                        next.push(m2);
                    }
                }
            }
            frontier = next;
        }
        frontier
    }

    fn walk(&self, k: usize, mask: u64, visit: &mut impl FnMut(u64)) {
        if k == self.positions.len() {
            visit(mask);
            return;
        }
        for bit in [0u64, 1] {
            let m = mask | (bit << k);
            if self.consistent_at(k, m) {
                self.walk(k + 1, m, visit);
            }
        }
    }

    fn split_depth(&self, width: usize) -> usize {
        let bits = usize::BITS - (width.max(1) - 1).leading_zeros();
        (bits as usize).min(self.positions.len())
    }

    fn in_pool<T: Send>(&self, width: usize, job: impl FnOnce() -> T + Send) -> Result<T, EnumerateError> {
        if width <= 1 {
            return Ok(job());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(width)
            .build()
            .map_err(|e| EnumerateError::Pool(e.to_string()))?;
        Ok(pool.install(job))
    }

    fn count(&self, width: usize) -> Result<u64, EnumerateError> {
        let depth = self.split_depth(width);
        let roots = self.prefixes(depth);
        self.in_pool(width, || {
            roots
                .par_iter()
                .map(|&root| {
                    let mut n = 0u64;
                    self.walk(depth, root, &mut |_| n += 1);
                    n
                })
                .sum()
        })
    }

    fn masks(&self, width: usize) -> Result<Vec<u64>, EnumerateError> {
        let depth = self.split_depth(width);
        let roots = self.prefixes(depth);
        let chunks: Vec<Vec<u64>> = self.in_pool(width, || {
            roots
                .par_iter()
                .map(|&root| {
                    let mut out = Vec::new();
                    self.walk(depth, root, &mut |m| out.push(m));
                    out
                })
                .collect()
        })?;
        Ok(chunks.into_iter().flatten().collect())
    }

    fn decode(&self, mask: u64) -> SupportPattern {
        SupportPattern::new(
            self.dim,
            self.positions
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p),
        )
    }

    fn patterns(&self, width: usize) -> Result<Vec<SupportPattern>, EnumerateError> {
        let mut out: Vec<SupportPattern> = self.masks(width)?.into_iter().map(|m| self.decode(m)).collect();
        out.sort();
        Ok(out)
    }
}

/// Every valid pattern of dimension `n`, sorted lexicographically by
/// position list. The result does not depend on `jobs`.
pub fn enumerate_patterns(n: usize, jobs: usize) -> Result<Vec<SupportPattern>, EnumerateError> {
    Search::new(n)?.patterns(jobs.max(1))
}

/// Number of valid patterns. With `naive` set, scans every subset of
/// positions and validates its (0,1)-matrix directly.
pub fn count_patterns(n: usize, naive: bool) -> Result<u64, EnumerateError> {
    if naive {
        return naive_count(n);
    }
    Search::new(n)?.count(1)
}

pub fn count_patterns_parallel(n: usize, jobs: usize) -> Result<u64, EnumerateError> {
    Search::new(n)?.count(jobs.max(1))
}

fn naive_count(n: usize) -> Result<u64, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::ZeroDimension);
    }
    if n > NAIVE_LIMIT {
        return Err(EnumerateError::OracleTooLarge { n });
    }
    Ok(naive_patterns(n).len() as u64)
}

/// The exhaustive scan behind the naive oracle, sorted like
/// [`enumerate_patterns`].
pub fn naive_patterns(n: usize) -> Vec<SupportPattern> {
    assert!((1..=NAIVE_LIMIT).contains(&n));
    let all = positions(n);
    let mut out: Vec<SupportPattern> = (0u64..1 << all.len())
        .map(|m| SupportPattern::new(n, all.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, &p)| p)))
        .filter(|p| canonical_rep(p).is_ok())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let expected = [1u64, 2, 4, 10, 22, 78, 202];
        for (n, &want) in (1..).zip(&expected) {
            assert_eq!(count_patterns(n, false).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn dimension_three_list() {
        let got = enumerate_patterns(3, 1).unwrap();
        let want = vec![
            SupportPattern::new(3, []),
            SupportPattern::new(3, [(1, 1)]),
            SupportPattern::new(3, [(1, 1), (1, 2)]),
            SupportPattern::new(3, [(1, 2)]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn naive_agrees_up_to_six() {
        for n in 1..=6 {
            assert_eq!(naive_patterns(n), enumerate_patterns(n, 1).unwrap());
        }
        assert_eq!(count_patterns(6, true).unwrap(), 78);
    }

    #[test]
    fn naive_refuses_large_dimensions() {
        assert_eq!(count_patterns(7, true), Err(EnumerateError::OracleTooLarge { n: 7 }));
    }

    #[test]
    fn zero_dimension_is_an_error() {
        assert_eq!(enumerate_patterns(0, 1), Err(EnumerateError::ZeroDimension));
    }

    #[test]
    fn parallel_width_does_not_change_output() {
        let base = enumerate_patterns(7, 1).unwrap();
        for jobs in [2, 3, 8] {
            assert_eq!(enumerate_patterns(7, jobs).unwrap(), base);
        }
        assert_eq!(count_patterns_parallel(7, 4).unwrap(), 202);
    }

    #[test]
    fn task_modes() {
        let t = EnumerationTask {
            dim: 4,
            mode: Mode::CountOnly,
            parallel_width: 2,
        };
        assert_eq!(t.run().unwrap(), EnumerationOutput::Count(10));
        let t = EnumerationTask { mode: Mode::Stream, ..t };
        match t.run().unwrap() {
            EnumerationOutput::Patterns(p) => assert_eq!(p.len(), 10),
            other => panic!("unexpected {other:?}"),
        }
    }
}
