//! Truncated formal graded geometry: polynomial functions on the symplectic models, their
//! brackets, and the dictionary between tensor collections and generating functions.

pub mod assemble;
pub mod bialgebra;
pub mod checks;
pub mod coords;
pub mod fmanifold;
pub mod gendo;
pub mod poly;
pub mod tensors;
pub mod vectors;

pub use coords::{Coordinates, Model};
pub use poly::{Monomial, Poly, PolyRing};
pub use fmanifold::{hm_bracket, ProductTensor};
pub use gendo::{gcompose, grelabel, Evaluator, GMap};
pub use assemble::{assemble, assemble_tf, extract, extract_collection};
pub use bialgebra::{lie1bi_axiom_check, AxiomReport};
pub use checks::{check_hamiltonian, mc_check, relation_check, representation, McReport, RelationReport};
pub use tensors::{OutputSymmetry, TensorCollection};
pub use vectors::{apply, components, from_components, lie_derivative, tf_check, vector_bracket, TfReport};
