//! Admissible frequency partitions of the reciprocal cell and the
//! classification of their subband boundaries into singular and regular parts.
//!
//! All geometry is exact: points are rational coordinates with respect to the
//! dual basis of `Λ*`, and grid frequencies are `(u, v)/n` in the same basis.

pub mod admissible;
pub mod classify;
pub mod error;
pub mod geometry;
pub mod partition;
pub mod sector;
pub mod svg;

pub use admissible::{check_admissible, dual_cosets, in_dual_sublattice, AdmissibilityReport, BandCoverage};
pub use classify::{classify_boundaries, regular_triples, BoundaryClassification, RegionBoundary, Triple};
pub use error::{PartitionError, PartitionResult};
pub use geometry::{Point, Segment};
pub use partition::{
    build_dyadic, build_hexagonal, build_hexagonal_frame, Family, FrequencyPartition, FrequencyRegion,
};
pub use sector::Sector;

/// Default frequency grid size per axis.
pub const DEFAULT_GRID_N: i64 = 192;

/// JSON export of the partition polygons (dual and real coordinates) and sublattices.
pub fn partition_json(part: &FrequencyPartition) -> serde_json::Value {
    let regions: Vec<serde_json::Value> = part
        .regions
        .iter()
        .map(|r| {
            serde_json::json!({
                "index": r.index,
                "polygons": r.polygons,
                "polygons_real": r.polygons.iter().map(|p| p.iter().map(|x| part.to_real(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::json!({
        "family": part.family,
        "base": part.base,
        "sublattices": part.sublattices,
        "regions": regions,
    })
}
