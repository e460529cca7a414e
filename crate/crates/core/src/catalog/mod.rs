//! Graph generators and the bundled brane-tiling reference catalog.

mod ade;
mod dimer;
mod records;
mod verify;

pub use ade::{ade_graph, AdeFamily, AdeSpec};
pub use dimer::{dimer_graph, dimer_rh, dimer_zeta_closed, DimerSpec};
pub use records::{
    bundled_catalog, default_catalog, load_catalog, parse_catalog, quiver_graph, CatalogRecord,
    Flag, BUNDLED_CATALOG, CATALOG_ENV,
};
pub use verify::{verify_catalog, CatalogReport, Field, Mismatch, RowResult, KNOWN_ERRATA};
