//! Dimer graphs given by valency lists, and their closed-form zeta.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PartiallyDirectedGraph;
use crate::poly::PolyZ;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DimerSpec {
    valencies: Vec<u32>,
}

impl DimerSpec {
    pub fn new(valencies: Vec<u32>) -> Result<Self> {
        if valencies.is_empty() {
            return Err(Error::InvalidValencies("at least one valency is required".into()));
        }
        if valencies.contains(&0) {
            return Err(Error::InvalidValencies("valencies must be positive".into()));
        }
        Ok(DimerSpec { valencies })
    }

    pub fn valencies(&self) -> &[u32] {
        &self.valencies
    }

    pub fn max_valency(&self) -> u32 {
        *self.valencies.iter().max().expect("nonempty")
    }
}

impl TryFrom<Vec<u32>> for DimerSpec {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        DimerSpec::new(v)
    }
}

impl From<DimerSpec> for Vec<u32> {
    fn from(s: DimerSpec) -> Self {
        s.valencies
    }
}

/// Parses comma separated lists such as `3,4` or `3, 3, 4`.
impl FromStr for DimerSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let valencies = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidValencies(format!("{s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DimerSpec::new(valencies)
    }
}

impl fmt::Display for DimerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.valencies.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `2n` nodes; the black node `2i` is joined to the white node `2i + 1` by
/// `r_i` parallel edges.
pub fn dimer_graph(spec: &DimerSpec) -> PartiallyDirectedGraph {
    let n = spec.valencies.len();
    let mut g = PartiallyDirectedGraph::new(2 * n).expect("at least one pair");
    for (i, &r) in spec.valencies.iter().enumerate() {
        g.add_edges(2 * i, 2 * i + 1, r as usize).expect("nodes in range");
    }
    g
}

/// `(1 - z^2)^(sum r - 2n) prod_i ((1 + (r_i - 1) z^2)^2 - r_i^2 z^2)`.
pub fn dimer_zeta_closed(spec: &DimerSpec) -> Result<PolyZ> {
    let mut product = PolyZ::one();
    for &r in &spec.valencies {
        let r = i64::from(r);
        let base = PolyZ::from_i64s(&[1, 0, r - 1]);
        let factor = &(&base * &base) - &PolyZ::from_i64s(&[0, 0, r * r]);
        product = &product * &factor;
    }
    let exponent: i64 = spec.valencies.iter().map(|&r| i64::from(r)).sum::<i64>()
        - 2 * spec.valencies.len() as i64;
    let prefactor = PolyZ::one_minus_z_squared_pow(exponent.unsigned_abs() as u32);
    if exponent >= 0 {
        Ok(&prefactor * &product)
    } else {
        product.exact_div(&prefactor)
    }
}

/// Valency criterion for the strong Riemann Hypothesis: every `r_i` below the
/// maximum satisfies `r_i^2 - 2 r_i + 2 <= r_max`. The boundary case puts a
/// pole exactly on the edge of the open annulus, which is allowed.
pub fn dimer_rh(spec: &DimerSpec) -> bool {
    let r_max = u64::from(spec.max_valency());
    spec.valencies
        .iter()
        .map(|&r| u64::from(r))
        .filter(|&r| r < r_max)
        .all(|r| r * r + 2 <= r_max + 2 * r)
}
