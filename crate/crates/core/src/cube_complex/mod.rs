//! Cubes, face pairings and the complexes they glue up to.

mod cell;
mod cone;
mod cover;
mod gluing;
mod quotient;
mod symmetry;

pub use cell::{Axis, CubeEdge, CubeVertex, FaceLabel, Sign};
pub use cone::{cone_subdivide, cone_tet_index, is_closed_manifold, TETS_PER_CUBE};
pub use cover::{cyclic_covers, orientation_double_cover, CoverError, DoubleCover};
pub use gluing::{CubeGluing, CubulationSpec, GluingPair, Slot, SlotPair, SpecError};
pub use quotient::{build_quotient, euler_characteristic, QuotientComplex, QuotientError, SquareCell};
pub use symmetry::SquareSymmetry;
