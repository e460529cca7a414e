//! Ihara zeta functions of finite partially directed multigraphs.
//!
//! The reciprocal zeta function is computed exactly as an integer polynomial
//! from the adjacency, arrow and degree matrices of a graph. On top of that
//! the crate locates poles, classifies graphs against the strong and weak
//! graph Riemann Hypothesis, counts prime geodesics both from the zeta
//! function and by brute force, and ships generators and a reference
//! catalog for affine ADE quivers, brane-tiling quivers and their dimers.

pub mod catalog;
pub mod census;
pub mod cli;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod poly;
pub mod roots;
pub mod series;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{MatrixBundle, PartiallyDirectedGraph};
pub use poly::PolyZ;
pub use roots::{ComplexRootSet, Root, RootOptions};
pub use zeta::{analyze, zeta_inverse, Classification, ZetaReport};

use num_bigint::BigInt;

/// Serializes big integers as decimal strings so that no consumer has to
/// deal with numbers wider than a machine word.
pub(crate) fn serialize_bigints<S: serde::Serializer>(
    values: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}
