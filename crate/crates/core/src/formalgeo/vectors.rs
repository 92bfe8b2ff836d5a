//! Vector fields and rank-2 tensors on the formal manifold of `V`, in tensor-model coordinates.
//!
//! A vector field `X = Σ X^b ∂/∂t^b` is the polynomial `Σ X^b p_b`; a rank-2 tensor
//! `Σ φ^{b1 b2} ∂/∂t^{b1} ⊗ ∂/∂t^{b2}` is `Σ φ^{b1 b2} p_{b1} q_{b2}`.

use std::collections::BTreeMap;

use super::coords::{Coordinates, Model};
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactalg::Rational;

fn sign(e: i32) -> Rational {
    Rational::sign(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn require_tf(c: &Coordinates) -> Result<()> {
    if c.model() != Model::Tf {
        return Err(Error::invalid("vector-field calculus needs tensor-model coordinates"));
    }
    Ok(())
}

fn p_var(c: &Coordinates, b: usize) -> usize {
    c.dim() + b
}

fn q_var(c: &Coordinates, b: usize) -> usize {
    2 * c.dim() + b
}

/// Degree of a homogeneous field (zero fields count as degree 0).
pub fn field_degree(c: &Coordinates, x: &Poly) -> Result<i32> {
    Ok(c.ring().degree(x)?.unwrap_or(0))
}

/// Checks that every term is linear in `p` and free of `q`.
fn check_vector(c: &Coordinates, x: &Poly) -> Result<()> {
    for (m, _) in x.terms() {
        let ps: usize = (0..c.dim()).map(|b| m.exponent(p_var(c, b)) as usize).sum();
        let qs: usize = (0..c.dim()).map(|b| m.exponent(q_var(c, b)) as usize).sum();
        if ps != 1 || qs != 0 {
            return Err(Error::invalid("vector field terms must contain exactly one tensor factor"));
        }
    }
    Ok(())
}

/// Components `X^b`.
pub fn components(c: &Coordinates, x: &Poly) -> Result<Vec<Poly>> {
    require_tf(c)?;
    check_vector(c, x)?;
    Ok((0..c.dim()).map(|b| c.ring().right_derivative(x, p_var(c, b))).collect())
}

/// Vector field with the given components.
pub fn from_components(c: &Coordinates, comps: &[Poly]) -> Poly {
    let r = c.ring();
    let mut out = Poly::zero();
    for (b, comp) in comps.iter().enumerate() {
        out.add_scaled(&r.mul(comp, &r.var(p_var(c, b))), &Rational::one());
    }
    out
}

/// `X(f)` for a function `f` of the `t` coordinates.
pub fn apply(c: &Coordinates, x: &Poly, f: &Poly) -> Result<Poly> {
    let comps = components(c, x)?;
    let images: BTreeMap<usize, Poly> = comps.into_iter().enumerate().map(|(b, p)| (c.position(b), p)).collect();
    Ok(c.ring().apply_derivation(&images, field_degree(c, x)?, f))
}

/// `[X,Y]^g = X(Y^g) − (−1)^{|X||Y|} Y(X^g)`.
pub fn vector_bracket(c: &Coordinates, x: &Poly, y: &Poly) -> Result<Poly> {
    let (dx, dy) = (field_degree(c, x)?, field_degree(c, y)?);
    let (xc, yc) = (components(c, x)?, components(c, y)?);
    let mut comps = Vec::with_capacity(c.dim());
    for g in 0..c.dim() {
        let mut v = apply(c, x, &yc[g])?;
        v.add_scaled(&apply(c, y, &xc[g])?, &-sign(dx * dy));
        comps.push(v);
    }
    Ok(c.truncate(&from_components(c, &comps)))
}

/// Lie derivative of a tensor along `X`: the derivation sending `t^a` to `X^a` and each tensor
/// factor `∂_a` to `[X, ∂_a] = −(−1)^{|X||e_a|} Σ_g (∂_a X^g) ∂_g`.
pub fn lie_derivative(c: &Coordinates, x: &Poly, tensor: &Poly) -> Result<Poly> {
    let dx = field_degree(c, x)?;
    let comps = components(c, x)?;
    let r = c.ring();
    let mut images = BTreeMap::new();
    for a in 0..c.dim() {
        images.insert(c.position(a), comps[a].clone());
        let s = -sign(dx * c.space().degree(a));
        let (mut pi, mut qi) = (Poly::zero(), Poly::zero());
        for (g, comp) in comps.iter().enumerate() {
            let da = r.left_derivative(comp, c.position(a));
            pi.add_scaled(&r.mul(&da, &r.var(p_var(c, g))), &s);
            qi.add_scaled(&r.mul(&da, &r.var(q_var(c, g))), &s);
        }
        images.insert(p_var(c, a), pi);
        images.insert(q_var(c, a), qi);
    }
    Ok(c.truncate(&r.apply_derivation(&images, dx, tensor)))
}

/// Residuals of the two tensor-model equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TfReport {
    /// `[ð, ð]`.
    pub field_residual: Poly,
    /// `Lie_ð φ`.
    pub lie_residual: Poly,
}

impl TfReport {
    pub fn passes(&self) -> bool {
        self.field_residual.is_zero() && self.lie_residual.is_zero()
    }
}

/// Checks `[ð,ð] = 0` and `Lie_ð φ = 0` up to the truncation order.
pub fn tf_check(c: &Coordinates, field: &Poly, tensor: &Poly) -> Result<TfReport> {
    require_tf(c)?;
    for (m, _) in tensor.terms() {
        let ps: usize = (0..c.dim()).map(|b| m.exponent(p_var(c, b)) as usize).sum();
        let qs: usize = (0..c.dim()).map(|b| m.exponent(q_var(c, b)) as usize).sum();
        if ps != 1 || qs != 1 {
            return Err(Error::invalid("rank-2 tensor terms must contain one p and one q factor"));
        }
    }
    Ok(TfReport { field_residual: vector_bracket(c, field, field)?, lie_residual: lie_derivative(c, field, tensor)? })
}
