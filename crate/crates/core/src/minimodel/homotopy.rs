//! The differential `δ = {Γ_1 • −}` on adapted coordinates and its contracting homotopy.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::formalgeo::{Coordinates, Model, Poly};

use super::splitting::Splitting;

fn require_adapted(c: &Coordinates, s: &Splitting) -> Result<()> {
    if c.model() != Model::Lie1Bi || c.space().degrees() != s.adapted_space().degrees() {
        return Err(Error::invalid("coordinates are not adapted to the splitting"));
    }
    Ok(())
}

/// `δ f = {Γ_1 • f}`.
pub fn delta_operator(c: &Coordinates, s: &Splitting, f: &Poly) -> Result<Poly> {
    require_adapted(c, s)?;
    c.odd_bracket(&s.contractible_part(c), f)
}

/// Coefficient `e` with `δ(from) = e · to` for generator variables.
fn generator_sign(c: &Coordinates, s: &Splitting, from: usize, to: usize) -> Result<Rational> {
    let r = c.ring();
    let image = delta_operator(c, s, &r.var(from))?;
    let coef = image.coeff(r.var(to).terms().next().expect("variable").0);
    if coef.is_zero() || image.len() != 1 {
        return Err(Error::invalid("adapted coordinates do not carry the contractible differential"));
    }
    Ok(coef)
}

/// Number of `x, y, psi, phi` factors of a monomial.
fn weight(c: &Coordinates, s: &Splitting, m: &crate::formalgeo::Monomial) -> usize {
    let h = s.harmonic_dim();
    (0..c.ring().nvars()).filter(|&v| v % c.dim() >= h).map(|v| m.exponent(v) as usize).sum()
}

/// `h(f) = κ(f)/w` monomialwise, where `κ` is the odd derivation with `δκ + κδ` equal to the
/// weight operator `w` and `h` vanishes on `(z, ξ)` monomials. Satisfies `δh + hδ = id − π`.
pub fn delta_homotopy(c: &Coordinates, s: &Splitting, f: &Poly) -> Result<Poly> {
    require_adapted(c, s)?;
    let r = c.ring();
    let mut images = BTreeMap::new();
    for a in 0..s.boundary_dim() {
        let (x, y) = (c.position(s.x(a)), c.position(s.y(a)));
        let (psi, phi) = (c.momentum(s.x(a)), c.momentum(s.y(a)));
        // δx = e y gives κy = x/e; δφ = e' ψ gives κψ = φ/e'
        let e = generator_sign(c, s, x, y)?;
        let e2 = generator_sign(c, s, phi, psi)?;
        images.insert(y, r.var(x).scaled(&e.recip()?));
        images.insert(psi, r.var(phi).scaled(&e2.recip()?));
    }
    let raw = r.apply_derivation(&images, -1, f);
    let mut out = Poly::zero();
    for (m, coef) in raw.terms() {
        let w = weight(c, s, m);
        out.add_term(m.clone(), coef / &Rational::int(w as i64));
    }
    Ok(out)
}

/// `π f`: the part of `f` depending on `(z, ξ)` only.
pub fn harmonic_projection(c: &Coordinates, s: &Splitting, f: &Poly) -> Poly {
    f.filtered(|m| weight(c, s, m) == 0)
}
