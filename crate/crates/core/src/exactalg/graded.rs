use std::collections::HashSet;

use crate::error::{Error, Result};

/// Finite-dimensional graded vector space given by a labelled, graded basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    basis: Vec<(String, i32)>,
}

impl GradedSpace {
    pub fn new(basis: Vec<(String, i32)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (label, _) in &basis {
            if !seen.insert(label.clone()) {
                return Err(Error::invalid(format!("duplicate basis label `{label}`")));
            }
        }
        Ok(GradedSpace { basis })
    }

    /// Basis `e1, e2, ..` with the given degrees.
    pub fn from_degrees(degrees: &[i32]) -> Self {
        GradedSpace {
            basis: degrees.iter().enumerate().map(|(i, d)| (format!("e{}", i + 1), *d)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.basis[i].1
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].0
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.basis.iter().map(|b| b.1).collect()
    }

    pub fn basis(&self) -> &[(String, i32)] {
        &self.basis
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.0 == label)
    }

    /// `V[p]`: every degree decreases by `p`.
    pub fn shift(&self, p: i32) -> Self {
        GradedSpace { basis: self.basis.iter().map(|(l, d)| (l.clone(), d - p)).collect() }
    }

    /// Dual space with the dual basis, degrees negated.
    pub fn dual(&self) -> Self {
        GradedSpace { basis: self.basis.iter().map(|(l, d)| (format!("{l}*"), -d)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_lowers_degrees() {
        let v = GradedSpace::from_degrees(&[0, 1, -1]);
        assert_eq!(v.shift(1).degrees(), vec![-1, 0, -2]);
        assert_eq!(v.dual().degrees(), vec![0, -1, 1]);
        assert_eq!(v.dual().label(0), "e1*");
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(GradedSpace::new(vec![("a".into(), 0), ("a".into(), 1)]).is_err());
    }
}
