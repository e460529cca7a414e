//! The reciprocal zeta polynomial of a graph and verdicts derived from its poles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Branching, DegreeProfile, PartiallyDirectedGraph};
use crate::matrix::PolyMatrix;
use crate::poly::PolyZ;
use crate::roots::{roots, ComplexRootSet, RootOptions};

/// Half-width of the margin that keeps annulus tests open.
pub const ANNULUS_EPS: f64 = 1e-9;
/// Eigenvalues this close to the Perron value count as trivial.
pub const TRIVIAL_EIGENVALUE_EPS: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Strong,
    Weak,
    Violated,
    Trivial,
}

impl Classification {
    /// One-letter tag: `S`, `W`, `N` or `T`.
    pub fn flag(self) -> char {
        match self {
            Classification::Strong => 'S',
            Classification::Weak => 'W',
            Classification::Violated => 'N',
            Classification::Trivial => 'T',
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AnalysisOptions {
    pub roots: RootOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaReport {
    pub zeta_inverse: PolyZ,
    pub poles: ComplexRootSet,
    /// Smallest pole modulus; `None` when the reciprocal zeta is constant.
    pub radius: Option<f64>,
    /// Extremes of the total degree.
    pub degrees: DegreeProfile,
    /// `q` used in the weak annulus: the largest number of length-one walks
    /// leaving a node, minus one.
    pub weak_q: i64,
    /// Extremes of the non-backtracking branching, which bound the radius.
    pub branching: Option<Branching>,
    pub classification: Classification,
    /// Present for regular undirected graphs.
    pub ramanujan: Option<bool>,
    pub kotani_sunada_ok: bool,
    /// Present for regular undirected graphs of degree at least two.
    pub xi_functional_ok: Option<bool>,
    pub connected: bool,
}

/// `(1 - z^2)^(edges - nodes) det(I - A z + Q z^2 + P z^3)`, computed exactly.
pub fn zeta_inverse(g: &PartiallyDirectedGraph) -> Result<PolyZ> {
    let m = g.matrices()?;
    let det = PolyMatrix::ihara_pencil(&m.a, &m.q, &m.p).det();
    let k = m.exponent.unsigned_abs() as u32;
    let factor = PolyZ::one_minus_z_squared_pow(k);
    if m.exponent <= 0 {
        Ok(&factor * &det)
    } else {
        det.exact_div(&factor)
    }
}

/// `det(I - z A)`; equal to the reciprocal zeta for graphs without edges.
pub fn directed_shortcut(g: &PartiallyDirectedGraph) -> Result<PolyZ> {
    if !g.is_fully_directed() {
        return Err(Error::HasEdges);
    }
    let m = g.matrices()?;
    Ok(PolyMatrix::linear_pencil(&m.a).det())
}

/// Eigenvalues of the adjacency matrix.
pub fn spectrum(g: &PartiallyDirectedGraph, opts: RootOptions) -> Result<ComplexRootSet> {
    let m = g.matrices()?;
    roots(&m.a.char_poly(), opts)
}

fn regular_undirected_degree(g: &PartiallyDirectedGraph) -> Result<usize> {
    if !g.is_undirected() {
        return Err(Error::NotUndirected);
    }
    let d = g.degree_profile();
    if !d.regular {
        return Err(Error::NotRegular { min: d.min, max: d.max });
    }
    Ok(d.max)
}

/// Whether every adjacency eigenvalue other than `±(q+1)` is at most `2 sqrt(q)`
/// in absolute value. Requires a regular undirected graph.
pub fn ramanujan(g: &PartiallyDirectedGraph, opts: RootOptions) -> Result<bool> {
    let degree = regular_undirected_degree(g)? as f64;
    let q = degree - 1.0;
    let bound = 2.0 * q.max(0.0).sqrt() + TRIVIAL_EIGENVALUE_EPS;
    let spec = spectrum(g, opts)?;
    Ok(spec
        .roots
        .iter()
        .map(|r| r.modulus())
        .filter(|m| (m - degree).abs() > TRIVIAL_EIGENVALUE_EPS)
        .all(|m| m <= bound))
}

/// Checks `xi(z) = xi(1/(q z))` exactly, where
/// `xi(z) = (1+z)^(m-n) (1-z)^m (1-qz)^n zeta(z)` for a `(q+1)`-regular graph
/// with `n` nodes and `m` edges.
pub fn xi_functional_check(g: &PartiallyDirectedGraph) -> Result<bool> {
    let degree = regular_undirected_degree(g)?;
    let q = degree as i64 - 1;
    if q < 1 {
        return Err(Error::DegenerateDegree(q));
    }
    let n = g.node_count() as u32;
    let m = g.edge_count() as u32;
    // m >= n because 2m = n (q+1) >= 2n.
    let numer = &(&PolyZ::from_i64s(&[1, 1]).pow(m - n) * &PolyZ::from_i64s(&[1, -1]).pow(m))
        * &PolyZ::from_i64s(&[1, -q]).pow(n);
    let denom = zeta_inverse(g)?;
    // h(1/(qz)) = (qz)^-k sum_i h_i q^(k-i) z^(k-i); the common factor cancels.
    let k = 2 * m as usize;
    let flip = |h: &PolyZ| -> Option<PolyZ> {
        if h.degree().is_some_and(|d| d > k) {
            return None;
        }
        let q = num_bigint::BigInt::from(q);
        let mut out = vec![num_bigint::BigInt::default(); k + 1];
        for (i, c) in h.coeffs().iter().enumerate() {
            out[k - i] = c * q.pow((k - i) as u32);
        }
        Some(PolyZ::new(out))
    };
    let (Some(numer_flip), Some(denom_flip)) = (flip(&numer), flip(&denom)) else {
        return Ok(false);
    };
    Ok(&numer * &denom_flip == &denom * &numer_flip)
}

/// Pole moduli strictly inside `(lo + eps, hi - eps)`?
fn annulus_occupied(poles: &ComplexRootSet, lo: f64, hi: f64) -> bool {
    poles
        .roots
        .iter()
        .map(|r| r.modulus())
        .any(|m| m > lo + ANNULUS_EPS && m < hi - ANNULUS_EPS)
}

pub fn analyze(g: &PartiallyDirectedGraph, opts: AnalysisOptions) -> Result<ZetaReport> {
    let zinv = zeta_inverse(g)?;
    let poles = roots(&zinv, opts.roots)?;
    let radius = poles.min_modulus();
    let degrees = g.degree_profile();
    let weak_q = g.out_valencies().into_iter().max().unwrap_or(0) as i64 - 1;
    let branching = g.branching();

    let classification = match radius {
        None => Classification::Trivial,
        Some(r) => {
            if !annulus_occupied(&poles, r, r.sqrt()) {
                Classification::Strong
            } else {
                let hi = if weak_q > 0 {
                    1.0 / (weak_q as f64).sqrt()
                } else {
                    f64::INFINITY
                };
                if annulus_occupied(&poles, r, hi) {
                    Classification::Violated
                } else {
                    Classification::Weak
                }
            }
        }
    };

    let kotani_sunada_ok = match (radius, branching) {
        (Some(r), Some(b)) => {
            let lower = if b.max > 0 { 1.0 / b.max as f64 } else { f64::INFINITY };
            let upper = if b.min > 0 { 1.0 / b.min as f64 } else { f64::INFINITY };
            lower - ANNULUS_EPS <= r && r <= upper + ANNULUS_EPS
        }
        _ => true,
    };

    let regular_undirected = g.is_undirected() && degrees.regular;
    let ramanujan = if regular_undirected {
        Some(ramanujan(g, opts.roots)?)
    } else {
        None
    };
    let xi_functional_ok = if regular_undirected && degrees.max >= 2 {
        Some(xi_functional_check(g)?)
    } else {
        None
    };

    Ok(ZetaReport {
        zeta_inverse: zinv,
        poles,
        radius,
        degrees,
        weak_q,
        branching,
        classification,
        ramanujan,
        kotani_sunada_ok,
        xi_functional_ok,
        connected: g.is_connected(),
    })
}
