//! Cobar dual of a dioperad with zero differential, computed slotwise in an arity window.
//!
//! Basis elements of the tree-degree `-i` part of the `(m,n)` slot are canonical trees with
//! `m+n-3-i` internal edges whose vertices carry dual basis vectors of the slots of `P`, in
//! the contragredient action and negated degree, tensored with the wedge of internal edges
//! in reference order. The differential expands one vertex into two along a new edge, with
//! coefficients read off the compositions of `P`, and places the new edge first in the wedge.

mod complex;
mod report;

pub use complex::{CobarComplex, CobarData, EdgeOrder};
pub use report::{koszulness_report, KoszulReport, SlotReport};
