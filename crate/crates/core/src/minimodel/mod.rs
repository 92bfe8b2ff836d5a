//! Minimal-model decomposition of odd-model structures and morphism checks.

mod coordmap;
mod decompose;
mod homotopy;
mod morphism;
mod splitting;

pub use coordmap::CoordMap;
pub use decompose::{decompose, Decomposition, Stage};
pub use homotopy::{delta_homotopy, delta_operator, harmonic_projection};
pub use morphism::{morphism_check, MorphismReport};
pub use splitting::{linear_part, split_quadratic, Splitting};
