//! Brute-force counts of closed geodesics and prime classes.
//!
//! Independent of the determinant formula: paths are built dart by dart, so
//! agreement with the log-derivative series checks the Euler product.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PartiallyDirectedGraph;

/// Largest horizon accepted by the enumerators.
pub const MAX_HORIZON: usize = 12;

/// An oriented edge or an arrow. Darts are numbered in the order produced by
/// [`darts`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dart {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    pub inverse: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCensus {
    pub horizon: usize,
    /// `closed[m - 1]`: closed geodesics of length `m` with a marked start.
    pub closed: Vec<u64>,
    /// `primes[m - 1]`: prime classes of length `m`.
    pub primes: Vec<u64>,
    /// Gcd of the lengths carrying a prime, or 0 when there are none.
    pub delta: usize,
}

/// Each edge (loops included) gives two mutually inverse darts, each arrow one.
pub fn darts(g: &PartiallyDirectedGraph) -> Vec<Dart> {
    let mut out = Vec::new();
    for (i, j, count) in g.edges() {
        for _ in 0..count {
            let id = out.len();
            out.push(Dart { id, tail: i, head: j, inverse: Some(id + 1) });
            out.push(Dart { id: id + 1, tail: j, head: i, inverse: Some(id) });
        }
    }
    for (i, j, count) in g.arrows() {
        for _ in 0..count {
            let id = out.len();
            out.push(Dart { id, tail: i, head: j, inverse: None });
        }
    }
    out
}

/// `next[d]`: darts that may follow `d` without backtracking.
fn successors(darts: &[Dart]) -> Vec<Vec<usize>> {
    darts
        .iter()
        .map(|d| {
            darts
                .iter()
                .filter(|e| e.tail == d.head && Some(e.id) != d.inverse)
                .map(|e| e.id)
                .collect()
        })
        .collect()
}

fn check_input(g: &PartiallyDirectedGraph, horizon: usize) -> Result<()> {
    if horizon > MAX_HORIZON {
        return Err(Error::HorizonTooLarge { requested: horizon, limit: MAX_HORIZON });
    }
    if !g.is_normalized() {
        return Err(Error::NotNormalized("census needs a normalized graph".into()));
    }
    Ok(())
}

fn overflow(length: usize) -> Error {
    Error::Numerical(format!("closed path count at length {length} overflows 64 bits"))
}

/// `N_m = Tr(B^m)` for the dart transition matrix `B`, `m = 1..=horizon`.
pub fn count_closed_paths(g: &PartiallyDirectedGraph, horizon: usize) -> Result<Vec<u64>> {
    check_input(g, horizon)?;
    let darts = darts(g);
    let next = successors(&darts);
    let n = darts.len();
    // Row `s` of `power` holds the number of walks of the current length from dart `s`.
    let mut power: Vec<Vec<u64>> = (0..n)
        .map(|s| (0..n).map(|t| u64::from(s == t)).collect())
        .collect();
    let mut counts = Vec::with_capacity(horizon);
    for m in 1..=horizon {
        let mut stepped = vec![vec![0u64; n]; n];
        for (row, out) in power.iter().zip(stepped.iter_mut()) {
            for (d, &w) in row.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for &e in &next[d] {
                    out[e] = out[e].checked_add(w).ok_or_else(|| overflow(m))?;
                }
            }
        }
        power = stepped;
        let trace = (0..n).try_fold(0u64, |acc, d| acc.checked_add(power[d][d]));
        counts.push(trace.ok_or_else(|| overflow(m))?);
    }
    Ok(counts)
}

/// Whether `seq` is strictly smaller than each of its proper rotations, which
/// holds exactly for the canonical representative of a primitive class.
fn is_canonical_primitive(seq: &[usize]) -> bool {
    let m = seq.len();
    (1..m).all(|r| {
        let rotated = seq[r..].iter().chain(&seq[..r]);
        seq.iter().lt(rotated)
    })
}

struct Search<'a> {
    darts: &'a [Dart],
    next: &'a [Vec<usize>],
    primes: Vec<u64>,
    path: Vec<usize>,
}

impl Search<'_> {
    /// Extends `path`, whose first dart is its smallest, up to `horizon` darts.
    fn extend(&mut self, horizon: usize) -> Result<()> {
        let first = self.path[0];
        let last = *self.path.last().expect("path is never empty");
        let m = self.path.len();
        let closes = self.darts[last].head == self.darts[first].tail
            && self.darts[last].inverse != Some(first);
        if closes && is_canonical_primitive(&self.path) {
            self.verify_class()?;
            self.primes[m - 1] += 1;
        }
        if m == horizon {
            return Ok(());
        }
        for i in 0..self.next[last].len() {
            let d = self.next[last][i];
            if d >= first {
                self.path.push(d);
                self.extend(horizon)?;
                self.path.pop();
            }
        }
        Ok(())
    }

    /// Every rotation of a prime representative is a distinct closed geodesic.
    fn verify_class(&self) -> Result<()> {
        let m = self.path.len();
        let mut rotations: Vec<Vec<usize>> = (0..m)
            .map(|r| self.path[r..].iter().chain(&self.path[..r]).copied().collect())
            .collect();
        for rot in &rotations {
            let ok = (0..m).all(|k| {
                let (d, e) = (rot[k], rot[(k + 1) % m]);
                self.next[d].contains(&e)
            });
            if !ok {
                return Err(Error::InconsistentCounts {
                    length: m,
                    reason: format!("rotation {rot:?} is not a closed geodesic"),
                });
            }
        }
        rotations.sort();
        rotations.dedup();
        if rotations.len() != m {
            return Err(Error::InconsistentCounts {
                length: m,
                reason: format!("class of {:?} has {} rotations", self.path, rotations.len()),
            });
        }
        Ok(())
    }
}

/// Enumerates primitive closed geodesics up to rotation (reversal is a
/// different prime) and cross-checks `N_m = sum_{d | m} d pi(d)` against the
/// transfer-matrix count.
pub fn enumerate_primes(g: &PartiallyDirectedGraph, horizon: usize) -> Result<PrimeCensus> {
    let closed = count_closed_paths(g, horizon)?;
    let darts = darts(g);
    let next = successors(&darts);
    let mut search = Search {
        darts: &darts,
        next: &next,
        primes: vec![0; horizon],
        path: Vec::with_capacity(horizon),
    };
    if horizon > 0 {
        for d in 0..darts.len() {
            search.path.push(d);
            search.extend(horizon)?;
            search.path.pop();
        }
    }
    let primes = search.primes;

    for m in 1..=horizon {
        let total = (1..=m)
            .filter(|d| m % d == 0)
            .try_fold(0u64, |acc, d| acc.checked_add((d as u64).checked_mul(primes[d - 1])?))
            .ok_or_else(|| overflow(m))?;
        if total != closed[m - 1] {
            return Err(Error::InconsistentCounts {
                length: m,
                reason: format!("prime classes give {total} closed paths, transfer matrix {}", closed[m - 1]),
            });
        }
    }
    let delta = primes
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .fold(0, |acc: usize, (i, _)| acc.gcd(&(i + 1)));
    Ok(PrimeCensus { horizon, closed, primes, delta })
}

/// `(m, pi(m) m R^m / delta)` for each `m` divisible by `delta`.
pub fn pnt_ratios(census: &PrimeCensus, radius: f64) -> Result<Vec<(usize, f64)>> {
    if census.delta == 0 {
        return Err(Error::NoPrimes);
    }
    Ok((1..=census.horizon)
        .filter(|m| m % census.delta == 0)
        .map(|m| {
            let ratio = census.primes[m - 1] as f64 * m as f64 * radius.powi(m as i32)
                / census.delta as f64;
            (m, ratio)
        })
        .collect())
}
