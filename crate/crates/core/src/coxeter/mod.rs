//! Coxeter systems: matrices, the word problem, special subgroups and balls.

mod ball;
mod group;
mod matrix;
mod parabolic;
mod spherical;
mod word;

pub use ball::CayleyBall;
pub use group::{CoxeterGroup, Element, Parity};
pub use matrix::{cmp_gen_sets, CoxeterMatrix, Gen, GenSet, Order};
pub use parabolic::FiniteParabolic;
pub use spherical::{
    classify_component, diagram_components, finite_types, is_spherical, longest_length, spherical_order,
    FiniteType, SphericalPoset,
};
pub use word::{alternating, braid_closure, braid_neighbors, Word};

/// Parse `.cox` text into a validated matrix.
pub fn parse_system(text: &str) -> crate::Result<CoxeterMatrix> {
    CoxeterMatrix::parse(text)
}

/// All elements of length at most `radius`, in ShortLex order.
pub fn enumerate_ball(matrix: &CoxeterMatrix, radius: usize) -> CayleyBall {
    CayleyBall::new(matrix, radius)
}
