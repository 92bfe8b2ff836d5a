//! Σ-bimodule collections, free dioperads on decorated trees, quadratic presentations,
//! quotients, quadratic duals, twists and the reduced-tree functor.

mod dual;
mod endo;
mod free;
mod library;
mod module;
mod presentation;
mod quotient;
mod twist;
mod underline;

pub use dual::{dual_collection, dual_name, pairing_sign, quadratic_dual, quadratic_pairing};
pub use endo::{endo_compose, evaluate_tree, EndoRep, MultiMap};
pub use free::{canonicalize, canonicalize_comb, compose, corolla, free_basis, relabel_element, substitute, substitute_element, tree_degree, DTree, Element};
pub use library::{builtin, builtin_names};
pub use module::{Collection, Deco, SideRep, SigmaModule};
pub use presentation::{Presentation, Relation, RELATION_SLOTS};
pub use quotient::{quotient_slot, QuotientSlot};
pub use twist::{twist_collection, twist_element_by, twist_presentation, twist_sign, Twist};
pub use underline::{underline_free_dim, OperadPair};
