//! Free collection on reduced trees whose `(1,k)` vertices carry a left operad and whose
//! `(k,1)` vertices carry the opposite of a right operad.

use super::presentation::Presentation;
use super::quotient::quotient_slot;
use crate::error::{Error, Result};
use crate::treespace::enumerate_trees;

/// Slot dimensions of the two operads: `left[k] = dim L(1,k)`, `right[k] = dim R(k,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadPair {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl OperadPair {
    /// Reads both operads off a quadratic dioperad: its `(1,k)` and `(k,1)` slots only see
    /// the `(1,2)` and `(2,1)` generators respectively.
    pub fn from_presentation(p: &Presentation, max_arity: usize, max_vertices: usize) -> Result<Self> {
        let mut left = vec![0; max_arity + 1];
        let mut right = vec![0; max_arity + 1];
        for k in 2..=max_arity {
            left[k] = quotient_slot(p, 1, k, max_vertices)?.dim();
            right[k] = quotient_slot(p, k, 1, max_vertices)?.dim();
        }
        Ok(OperadPair { left, right })
    }

    fn vertex_dim(&self, arity: (usize, usize)) -> Result<usize> {
        let (table, k) = match arity {
            (1, k) => (&self.left, k),
            (k, 1) => (&self.right, k),
            _ => return Ok(0),
        };
        table
            .get(k)
            .copied()
            .ok_or_else(|| Error::WindowInsufficient(format!("operad slot of arity {k} was not computed")))
    }
}

/// Dimension of the reduced-tree free collection in slot `(m,n)`.
pub fn underline_free_dim(ops: &OperadPair, m: usize, n: usize) -> Result<usize> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("slot needs m, n >= 1"));
    }
    if m + n < 3 {
        return Ok(0);
    }
    let mut arities: Vec<(usize, usize)> = (2..=n).map(|k| (1, k)).collect();
    arities.extend((2..=m).map(|k| (k, 1)));
    let mut total = 0;
    for t in enumerate_trees(m, n, &arities, m + n - 2)? {
        if !t.is_reduced() {
            continue;
        }
        let mut prod = 1;
        for v in &t.nodes {
            prod *= ops.vertex_dim(v.arity())?;
        }
        total += prod;
    }
    Ok(total)
}
