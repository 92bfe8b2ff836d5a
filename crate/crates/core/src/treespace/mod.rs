//! Directed genus-0 trees with labelled legs: canonical forms, enumeration, grafting,
//! the reduced-tree predicate and orientation lines.

mod canon;
mod enumerate;
mod orientation;
mod term;
mod tree;

pub use canon::{apply_canon, canonical_data, canonical_form, canonical_vertex_order, isomorphic_bruteforce, slot_keys, Canon};
pub use enumerate::{arities_up_to, enumerate_trees, trivalent_arities};
pub use orientation::OrientationLine;
pub use term::{format_tree, parse_tree};
pub use tree::{graft, LegKey, Node, Port, Tree};
