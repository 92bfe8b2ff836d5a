//! The quadratic bracket whose vanishing defines an F-manifold multiplication on the tangent
//! sheaf of a formal manifold concentrated in degree 0.

use std::collections::BTreeMap;

use super::coords::{Coordinates, Model};
use super::poly::Poly;
use super::vectors::{components, from_components, vector_bracket};
use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// A rank-(2,1) tensor field `μ(∂_a, ∂_b) = Σ_c μ^c_{ab}(t) ∂_c` with polynomial coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductTensor {
    comps: BTreeMap<(usize, usize, usize), Poly>,
}

impl ProductTensor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `μ^c_{ab}` (0-based indices).
    pub fn set(&mut self, c: usize, a: usize, b: usize, coeff: Poly) {
        if coeff.is_zero() {
            self.comps.remove(&(c, a, b));
        } else {
            self.comps.insert((c, a, b), coeff);
        }
    }

    /// Constant structure from `(c, a, b, value)` entries.
    pub fn constant(coords: &Coordinates, entries: &[(usize, usize, usize, Rational)]) -> Self {
        let mut out = Self::new();
        for (c, a, b, v) in entries {
            out.set(*c, *a, *b, coords.ring().constant(v.clone()));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// `μ(X, Y)`.
    pub fn apply(&self, c: &Coordinates, x: &Poly, y: &Poly) -> Result<Poly> {
        let (xc, yc) = (components(c, x)?, components(c, y)?);
        let r = c.ring();
        let mut out = vec![Poly::zero(); c.dim()];
        for (&(k, a, b), coeff) in &self.comps {
            if k >= c.dim() || a >= c.dim() || b >= c.dim() {
                return Err(Error::invalid("product tensor index out of range"));
            }
            out[k].add_scaled(&r.product(&[coeff.clone(), xc[a].clone(), yc[b].clone()]), &Rational::one());
        }
        Ok(c.truncate(&from_components(c, &out)))
    }
}

/// The nine-term bracket `[μ,μ](X,Y,Z,W)`:
/// `[μ(X,Y),μ(Z,W)] − μ([μ(X,Y),Z],W) − μ(Z,[μ(X,Y),W]) − μ(X,[Y,μ(Z,W)]) − μ([X,μ(Z,W)],Y)
///  + μ(X,μ(Z,[Y,W])) + μ(X,μ([Y,Z],W)) + μ([X,Z],μ(Y,W)) + μ([X,W],μ(Y,Z))`.
/// The fifth term is read as `μ([X,μ(Z,W)],Y)`; its printed form has an unbalanced bracket.
pub fn hm_bracket(c: &Coordinates, mu: &ProductTensor, x: &Poly, y: &Poly, z: &Poly, w: &Poly) -> Result<Poly> {
    if c.model() != Model::Tf || c.space().degrees().iter().any(|&d| d != 0) {
        return Err(Error::invalid("the F-manifold bracket needs tensor coordinates on a space concentrated in degree 0"));
    }
    let m = |u: &Poly, v: &Poly| mu.apply(c, u, v);
    let br = |u: &Poly, v: &Poly| vector_bracket(c, u, v);
    let (xy, zw) = (m(x, y)?, m(z, w)?);
    let terms: [(Poly, i64); 9] = [
        (br(&xy, &zw)?, 1),
        (m(&br(&xy, z)?, w)?, -1),
        (m(z, &br(&xy, w)?)?, -1),
        (m(x, &br(y, &zw)?)?, -1),
        (m(&br(x, &zw)?, y)?, -1),
        (m(x, &m(z, &br(y, w)?)?)?, 1),
        (m(x, &m(&br(y, z)?, w)?)?, 1),
        (m(&br(x, z)?, &m(y, w)?)?, 1),
        (m(&br(x, w)?, &m(y, z)?)?, 1),
    ];
    let mut out = Poly::zero();
    for (t, s) in &terms {
        out.add_scaled(t, &Rational::int(*s));
    }
    Ok(out)
}
