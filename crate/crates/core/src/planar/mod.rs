//! Two-dimensional side: vertical duplication, recoloring of zeros,
//! occupancy of aligned squares and the zero-counting bounds.

mod covering;
mod lift;
mod mosaic;
mod occupancy;

pub use covering::{aligned_cover_count, covering_entropy_bound, ln_big, CoveringBound};
pub use lift::{
    collapse, duplicate_extension, lift_count, lifted_alignment_forbidden, lifts,
    vertical_alignment_forbidden, vertical_alignment_forbidden_by, Lifted, Lifts, LIFTED,
};
pub use mosaic::{sample_mosaic, MosaicShape};
pub use occupancy::{
    check_zero_bounds, occupancy, Cell, OccupancyJson, OccupancyReport, ZeroBound, ZeroBounds,
};

use crate::symbolic::SymbolicError;
use crate::tower::TowerError;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum PlanarError {
    #[error("pattern must be a filled n x n square")]
    NotSquare,
    #[error("pattern side {n} is too small, need at least {need}")]
    TooSmall { n: usize, need: usize },
    #[error("occupancy needs a level k >= 1")]
    LevelZero,
    #[error("{0}")]
    Covering(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}
