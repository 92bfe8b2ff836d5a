use crate::exactalg::parity;

/// Orientation line spanned by an ordered wedge of edges.
///
/// Edges are identified by `(source, target)` vertex pairs; a leg uses `usize::MAX` for the
/// missing end and its label in the other slot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientationLine {
    pub edges: Vec<(usize, usize)>,
}

impl OrientationLine {
    pub fn new(edges: Vec<(usize, usize)>) -> Self {
        OrientationLine { edges }
    }

    /// Internal edges of a tree in reference order: sorted by (source, target).
    pub fn reference<D: Clone>(t: &super::Tree<D>) -> Self {
        let mut e: Vec<(usize, usize)> = t.edges().into_iter().map(|(s, _, u, _)| (s, u)).collect();
        e.sort();
        OrientationLine { edges: e }
    }

    /// Sign relating this ordering to the sorted one.
    pub fn sign_to_reference(&self) -> i32 {
        let mut idx: Vec<usize> = (0..self.edges.len()).collect();
        idx.sort_by_key(|&i| self.edges[i]);
        parity(&idx)
    }

    /// Sign of `self` relative to `other`; both must order the same edge set.
    pub fn relative_sign(&self, other: &OrientationLine) -> i32 {
        self.sign_to_reference() * other.sign_to_reference()
    }
}
