//! Inductive splitting of an odd-model structure into minimal and contractible parts.

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::formalgeo::{mc_check, Coordinates, Poly};

use super::coordmap::CoordMap;
use super::homotopy::{delta_homotopy, delta_operator, harmonic_projection};
use super::splitting::{split_quadratic, Splitting};

/// Term counts recorded at one stage of the induction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub order: usize,
    /// Terms of the order-`order` component before the gauge step.
    pub component_terms: usize,
    /// Terms of that component outside `k[[z, ξ]]`, removed by the step.
    pub removed_terms: usize,
    /// Terms of the gauge function `B`.
    pub gauge_terms: usize,
}

/// Outcome of [`decompose`]: `F*Γ = Γ_1 + Φ` up to the truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub splitting: Splitting,
    /// Adapted coordinates `(z, x, y | ξ, ψ, φ)`.
    pub adapted: Coordinates,
    /// Map from adapted to original coordinates.
    pub map: CoordMap,
    pub contractible: Poly,
    /// Minimal part, a function of `(z, ξ)` only.
    pub minimal: Poly,
    pub stages: Vec<Stage>,
}

impl Decomposition {
    /// `Γ_1 + Φ`.
    pub fn normal_form(&self) -> Poly {
        self.contractible.sum(&self.minimal)
    }

    /// Coordinates on `H(V,d)` alone, with the minimal part restricted to them.
    pub fn reduced(&self) -> Result<(Coordinates, Poly)> {
        let h = self.splitting.harmonic_dim();
        let space = self.splitting.adapted_space();
        let basis = space.basis()[..h].to_vec();
        let reduced_space = crate::exactalg::GradedSpace::new(basis)?;
        let names = (1..=h).map(|i| format!("z{i}")).chain((1..=h).map(|i| format!("xi{i}"))).collect();
        let rc = Coordinates::new(&reduced_space, self.adapted.model(), self.adapted.order()).renamed(names)?;
        let dim = self.adapted.dim();
        let keep: Vec<usize> = (0..h).chain(dim..dim + h).collect();
        let mut out = Poly::zero();
        for (m, c) in self.minimal.terms() {
            if (0..m.0.len()).any(|v| m.0[v] > 0 && !keep.contains(&v)) {
                return Err(Error::invalid("minimal part depends on contractible coordinates"));
            }
            out.add_term(crate::formalgeo::Monomial(keep.iter().map(|&v| m.0[v]).collect()), c.clone());
        }
        Ok((rc, out))
    }
}

/// `exp(ad_B) f = Σ_k ad_B^k f / k!`, stopping when the series vanishes under truncation.
fn exp_ad(c: &Coordinates, b: &Poly, f: &Poly) -> Result<Poly> {
    let mut out = f.clone();
    let mut term = f.clone();
    let mut k = 1i64;
    loop {
        term = c.truncate(&c.odd_bracket(b, &term)?).scaled(&Rational::new(1, k)?);
        if term.is_zero() {
            return Ok(out);
        }
        out.add_scaled(&term, &Rational::one());
        k += 1;
    }
}

/// Finds a symplectomorphism `F` with `F*Γ = Σ y^a ψ_a + Φ(z,ξ)` up to order `c.order()`.
pub fn decompose(c: &Coordinates, gamma: &Poly) -> Result<Decomposition> {
    let report = mc_check(c, gamma)?;
    if !report.is_solution {
        let bad = report.residual.min_order().unwrap_or(0);
        return Err(Error::invalid(format!("input is not a Maurer-Cartan element: residual at order {bad}")));
    }
    let gamma = c.truncate(gamma);
    let splitting = split_quadratic(c, &gamma)?;
    let adapted = splitting.coordinates(c.order());
    let contractible = splitting.contractible_part(&adapted);
    let mut map = splitting.linear_map(c, &adapted)?;
    let mut g = map.pullback(&gamma)?;
    if g.component(2) != contractible {
        return Err(Error::invalid("linear change of coordinates failed to normalize the quadratic part"));
    }
    let mut stages = Vec::new();
    for k in 3..=c.order() {
        let comp = g.component(k);
        if !delta_operator(&adapted, &splitting, &comp)?.is_zero() {
            return Err(Error::invalid(format!("input is not a Maurer-Cartan element: cocycle condition fails at order {k}")));
        }
        let removed = comp.difference(&harmonic_projection(&adapted, &splitting, &comp));
        let b = delta_homotopy(&adapted, &splitting, &removed)?;
        stages.push(Stage { order: k, component_terms: comp.len(), removed_terms: removed.len(), gauge_terms: b.len() });
        if b.is_zero() {
            continue;
        }
        g = exp_ad(&adapted, &b, &g)?;
        map = map.map_images(|img| exp_ad(&adapted, &b, img))?;
    }
    let minimal = g.difference(&contractible);
    if minimal.terms().any(|(m, _)| m.order() < 3) || !harmonic_projection(&adapted, &splitting, &minimal).difference(&minimal).is_zero() {
        return Err(Error::invalid("induction left contractible terms in the minimal part"));
    }
    Ok(Decomposition { splitting, adapted, map, contractible, minimal, stages })
}
