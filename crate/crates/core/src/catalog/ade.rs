//! Affine ADE Dynkin diagrams as undirected graphs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PartiallyDirectedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AdeFamily {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdeSpec {
    pub family: AdeFamily,
    pub index: usize,
    /// Adds two loops at every node.
    pub with_loops: bool,
}

impl AdeSpec {
    pub fn new(family: AdeFamily, index: usize, with_loops: bool) -> Result<Self> {
        let valid = match family {
            AdeFamily::A => true,
            AdeFamily::D => index >= 4,
            AdeFamily::E => (6..=8).contains(&index),
        };
        if !valid {
            return Err(Error::InvalidAde(format!("{family:?}{index}")));
        }
        Ok(AdeSpec { family, index, with_loops })
    }

    /// Number of nodes of the affine diagram.
    pub fn node_count(&self) -> usize {
        match self.family {
            AdeFamily::A => self.index.max(1) + usize::from(self.index > 0),
            AdeFamily::D | AdeFamily::E => self.index + 1,
        }
    }
}

impl fmt::Display for AdeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.index)
    }
}

/// Parses labels such as `A2`, `d5` or `E8`.
impl FromStr for AdeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAde(s.to_string());
        let mut chars = s.trim().chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => AdeFamily::A,
            Some('D') => AdeFamily::D,
            Some('E') => AdeFamily::E,
            _ => return Err(bad()),
        };
        let index = chars.as_str().parse::<usize>().map_err(|_| bad())?;
        AdeSpec::new(family, index, false).map_err(|_| bad())
    }
}

/// Branches of the given lengths hanging off node 0.
fn star(arms: &[usize]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in arms {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    edges
}

/// The affine diagram: `A_n` is a cycle on `n + 1` nodes (one looped node
/// for `n = 0`, a doubled edge for `n = 1`); `D_k` is a path of `k - 3`
/// nodes with two leaves at each end; `E_6`, `E_7`, `E_8` are stars with
/// arms `(2,2,2)`, `(3,3,1)` and `(5,2,1)`.
pub fn ade_graph(spec: AdeSpec) -> Result<PartiallyDirectedGraph> {
    let spec = AdeSpec::new(spec.family, spec.index, spec.with_loops)?;
    let n = spec.node_count();
    let edges: Vec<(usize, usize)> = match (spec.family, spec.index) {
        (AdeFamily::A, 0) => vec![(0, 0)],
        (AdeFamily::A, 1) => vec![(0, 1), (0, 1)],
        (AdeFamily::A, k) => (0..=k).map(|i| (i, (i + 1) % (k + 1))).collect(),
        (AdeFamily::D, k) => {
            let m = k - 3;
            let mut e: Vec<(usize, usize)> = (0..m - 1).map(|i| (i, i + 1)).collect();
            e.extend([(0, m), (0, m + 1), (m - 1, m + 2), (m - 1, m + 3)]);
            e
        }
        (AdeFamily::E, 6) => star(&[2, 2, 2]),
        (AdeFamily::E, 7) => star(&[3, 3, 1]),
        (AdeFamily::E, _) => star(&[5, 2, 1]),
    };
    let mut g = PartiallyDirectedGraph::from_pairs(n, &edges, &[])?;
    if spec.with_loops {
        for i in 0..n {
            g.add_edges(i, i, 2)?;
        }
    }
    Ok(g)
}
