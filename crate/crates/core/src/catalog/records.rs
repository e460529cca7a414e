//! Catalog file parsing.
//!
//! The file is a JSON object `{"version": 1, "rows": [...]}` with one row
//! object per line. Polynomials are coefficient lists, constant term first.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::dimer::DimerSpec;
use crate::error::{Error, Result};
use crate::graph::PartiallyDirectedGraph;
use crate::matrix::IntMatrix;
use crate::poly::PolyZ;

pub const BUNDLED_CATALOG: &str = include_str!("../../data/tilings.json");
/// Environment variable naming a catalog file to use instead of the bundled one.
pub const CATALOG_ENV: &str = "ZETAFORGE_CATALOG";
const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flag {
    S,
    W,
    N,
}

impl Flag {
    pub fn as_char(self) -> char {
        match self {
            Flag::S => 'S',
            Flag::W => 'W',
            Flag::N => 'N',
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogRecord {
    pub id: u32,
    pub quiver: IntMatrix,
    pub valencies: DimerSpec,
    pub dimer_zeta: PolyZ,
    pub quiver_zeta: PolyZ,
    pub dimer_flag: Flag,
    pub quiver_flag: Flag,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    version: u32,
    rows: Vec<RawRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: u32,
    quiver: Vec<Vec<i64>>,
    valencies: Vec<u32>,
    dimer_zeta: Vec<i64>,
    quiver_zeta: Vec<i64>,
    dimer_flag: Flag,
    quiver_flag: Flag,
}

impl RawRecord {
    fn into_record(self) -> Result<CatalogRecord> {
        let row = Some(self.id);
        let err = |msg: String| Error::Catalog { row, msg };
        let quiver = IntMatrix::from_rows(&self.quiver).map_err(|e| err(e.to_string()))?;
        let valencies = DimerSpec::new(self.valencies).map_err(|e| err(e.to_string()))?;
        let poly = |name: &str, c: &[i64]| -> Result<PolyZ> {
            let p = PolyZ::from_i64s(c);
            if p.constant_term() != BigInt::from(1) {
                return Err(err(format!("{name} must have constant term 1")));
            }
            Ok(p)
        };
        Ok(CatalogRecord {
            id: self.id,
            dimer_zeta: poly("dimer_zeta", &self.dimer_zeta)?,
            quiver_zeta: poly("quiver_zeta", &self.quiver_zeta)?,
            quiver,
            valencies,
            dimer_flag: self.dimer_flag,
            quiver_flag: self.quiver_flag,
        })
    }
}

/// Id of the last row that starts before the given position.
fn row_at(text: &str, line: usize, column: usize) -> Option<u32> {
    let offset: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + column;
    let head = &text[..offset.min(text.len())];
    let start = head.rfind("\"id\"")? + 4;
    let digits: String = head[start..]
        .trim_start_matches(|c: char| c == ':' || c.is_whitespace())
        .chars()
        .take_while(char::is_ascii_digit)
        .collect();
    digits.parse().ok()
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRecord>> {
    let raw: RawCatalog = serde_json::from_str(text).map_err(|e| Error::Catalog {
        row: row_at(text, e.line(), e.column()),
        msg: e.to_string(),
    })?;
    if raw.version != FORMAT_VERSION {
        return Err(Error::Catalog {
            row: None,
            msg: format!("unsupported format version {}", raw.version),
        });
    }
    let mut records = Vec::with_capacity(raw.rows.len());
    for r in raw.rows {
        if records.iter().any(|x: &CatalogRecord| x.id == r.id) {
            return Err(Error::Catalog { row: Some(r.id), msg: "duplicate id".into() });
        }
        records.push(r.into_record()?);
    }
    Ok(records)
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogRecord>> {
    parse_catalog(&std::fs::read_to_string(path)?)
}

pub fn bundled_catalog() -> Vec<CatalogRecord> {
    parse_catalog(BUNDLED_CATALOG).expect("bundled catalog is well formed")
}

/// The catalog named by `ZETAFORGE_CATALOG`, or the bundled one.
pub fn default_catalog() -> Result<Vec<CatalogRecord>> {
    match std::env::var_os(CATALOG_ENV) {
        Some(path) if !path.is_empty() => load_catalog(Path::new(&path)),
        _ => Ok(bundled_catalog()),
    }
}

/// Decodes a printed quiver matrix: a diagonal entry `2k` is `k` loops, the
/// symmetric part `min(a_ij, a_ji)` of an off-diagonal pair gives edges and
/// the excess gives arrows.
pub fn quiver_graph(m: &IntMatrix) -> Result<PartiallyDirectedGraph> {
    let n = m.dim();
    let mut g = PartiallyDirectedGraph::new(n)?;
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j) < 0 {
                return Err(Error::InvalidGraph(format!("negative quiver entry at ({i}, {j})")));
            }
        }
        let d = m.get(i, i);
        if d % 2 != 0 {
            return Err(Error::InvalidGraph(format!("odd diagonal entry {d} at node {i}")));
        }
        g.add_edges(i, i, (d / 2) as usize)?;
        for j in i + 1..n {
            let (a, b) = (m.get(i, j) as usize, m.get(j, i) as usize);
            let shared = a.min(b);
            g.add_edges(i, j, shared)?;
            g.add_arrows(i, j, a - shared)?;
            g.add_arrows(j, i, b - shared)?;
        }
    }
    Ok(g)
}
