//! Closed 3-manifolds built from a single cube with its faces glued in pairs.

pub mod algebra;
pub mod blocks;
pub mod census;
pub mod cube_complex;
mod dsu;
pub mod enumeration;
pub mod triangulation;

pub use algebra::AbelianInvariants;
pub use cube_complex::{CubeGluing, CubulationSpec, FaceLabel, SquareSymmetry};
pub use triangulation::Triangulation;
