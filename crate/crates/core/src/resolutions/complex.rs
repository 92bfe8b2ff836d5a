//! The resolution as a complex in a single slot, graded by vertex count.

use std::collections::HashMap;

use super::Resolution;
use crate::dioperad::{free_basis, quotient_slot, DTree, Element, Presentation};
use crate::error::Result;
use crate::exactalg::SignedMatrix;

/// `layers[k]` holds the basis trees with `k+1` vertices; `maps[k]` sends layer `k` to `k+1`
/// with images in columns.
#[derive(Clone, Debug)]
pub struct ResolutionComplex {
    pub m: usize,
    pub n: usize,
    pub layers: Vec<Vec<DTree>>,
    pub maps: Vec<SignedMatrix>,
}

impl ResolutionComplex {
    pub fn new(r: &Resolution, m: usize, n: usize) -> Result<Self> {
        let top = m + n - 2;
        let all = free_basis(r.collection(), m, n, top)?;
        let mut layers: Vec<Vec<DTree>> = vec![Vec::new(); top];
        for t in all {
            layers[t.nodes.len() - 1].push(t);
        }
        let mut maps = Vec::new();
        for k in 0..top.saturating_sub(1) {
            let index: HashMap<&DTree, usize> = layers[k + 1].iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut mat = SignedMatrix::zeros(layers[k + 1].len(), layers[k].len());
            for (col, t) in layers[k].iter().enumerate() {
                let img = r.differential(&Element::single(t.clone(), crate::exactalg::Rational::one()))?;
                for (it, c) in img.iter() {
                    mat.add_to(index[it], col, c);
                }
            }
            maps.push(mat);
        }
        Ok(ResolutionComplex { m, n, layers, maps })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(|d| d.rank()).collect()
    }

    /// Cohomology dimensions per layer.
    pub fn cohomology(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.layers.len())
            .map(|k| {
                let out = if k < ranks.len() { ranks[k] } else { 0 };
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.layers[k].len() - out - inc
            })
            .collect()
    }

    /// Largest number of nonzero entries of `d∘d` over consecutive layers.
    pub fn d_squared_nnz(&self) -> Result<usize> {
        let mut worst = 0;
        for w in self.maps.windows(2) {
            worst = worst.max(w[1].mul(&w[0])?.nnz());
        }
        Ok(worst)
    }
}

/// Comparison of the top cohomology of a resolution slot with the presented dioperad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub m: usize,
    pub n: usize,
    pub cohomology: Vec<usize>,
    pub quotient_dim: usize,
}

impl PresentationCheck {
    pub fn top(&self) -> usize {
        *self.cohomology.last().unwrap_or(&0)
    }

    /// The top layer reproduces the presentation and every lower layer is acyclic.
    pub fn matches(&self) -> bool {
        let n = self.cohomology.len();
        self.top() == self.quotient_dim && self.cohomology[..n.saturating_sub(1)].iter().all(|&h| h == 0)
    }
}

/// Builds the slot complex and compares its top cohomology with `quotient_slot(p, m, n)`.
pub fn presentation_check(r: &Resolution, p: &Presentation, m: usize, n: usize) -> Result<PresentationCheck> {
    let cx = ResolutionComplex::new(r, m, n)?;
    let quotient_dim = quotient_slot(p, m, n, m + n - 2)?.dim();
    Ok(PresentationCheck { m, n, cohomology: cx.cohomology(), quotient_dim })
}
