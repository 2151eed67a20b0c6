//! Perfect Hermitian forms over imaginary quadratic fields, the Voronoi
//! complex they cut out, its integral homology, and a small lab for
//! Tits buildings and frame complexes over finite rings.

#![allow(clippy::needless_range_loop)]

pub mod buildings;
pub mod error;
pub mod hermitian;
pub mod homology;
pub mod lattice;
pub mod linalg;
pub mod persist;
pub mod polyhedra;
pub mod quad;
pub mod voronoi;

pub use error::{Error, Result};
pub use hermitian::{HermitianForm, MinimalVectorSet};
pub use homology::{smith_normal_form, ChainComplex, HomologyGroup, IntMatrix};
pub use quad::{QuadField, QuadInt, QuadMat2, QuadVec2};
pub use voronoi::{PerfectFormClass, PolytopeShape, VoronoiComplexData};
