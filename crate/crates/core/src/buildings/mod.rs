//! Posets, order complexes, Tits buildings and frame complexes over small
//! finite rings, and the maps between their homology groups.

pub mod b2;
pub mod delta;
pub mod frames;
pub mod oracle;
pub mod poset;
pub mod ring;
pub mod tits;

pub use b2::{truncated_b2_components, B2Census, EVIDENCE_BANNER};
pub use delta::{delta_map, DeltaSum};
pub use frames::{frame_complex, partial_basis_complex, FrameComplexes};
pub use oracle::{lemma_oracle, single_support_sides, LemmaReport};
pub use poset::{
    order_complex, poset_homology_with_functor, reduced_homology, CoefficientFunctor, Poset, Presentation,
    SimplicialComplex,
};
pub use ring::FiniteRing;
pub use tits::{
    alpha_map_image_rank, alpha_report, apartment_class, tits_building, AlphaReport, Subspace, SteinbergElement,
    TitsBuilding,
};
