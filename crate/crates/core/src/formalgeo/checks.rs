//! Maurer-Cartan checks in the symplectic models and evaluation of resolution relations.

use std::collections::BTreeMap;

use super::coords::{Coordinates, Model};
use super::gendo::{grelabel, Evaluator, GMap};
use super::poly::Poly;
use super::tensors::TensorCollection;
use crate::error::{Error, Result};
use crate::resolutions::{Resolution, ResolutionKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McReport {
    pub is_solution: bool,
    /// `{Γ • Γ}` truncated at the coordinate order.
    pub residual: Poly,
}

/// Checks the preconditions on a generating function: homogeneous of the model's degree and
/// vanishing on both distinguished Lagrangians.
pub fn check_hamiltonian(c: &Coordinates, gamma: &Poly) -> Result<()> {
    let want = c.model().hamiltonian_degree().ok_or_else(|| Error::invalid("the tensor model has no Maurer-Cartan function"))?;
    for (m, _) in gamma.terms() {
        let d = c.ring().monomial_degree(m);
        if d != want {
            return Err(Error::invalid(format!(
                "term {} has degree {d}; a {} Maurer-Cartan function has degree {want}",
                c.format(&gamma.filtered(|x| x == m)),
                c.model()
            )));
        }
        let (pos, mom) = c.sides(m);
        if pos == 0 || mom == 0 {
            return Err(Error::invalid(format!(
                "term {} does not vanish on {}",
                c.format(&gamma.filtered(|x| x == m)),
                if pos == 0 { "the position Lagrangian" } else { "the momentum Lagrangian" }
            )));
        }
    }
    Ok(())
}

/// `{Γ • Γ} = 0` up to the truncation order.
pub fn mc_check(c: &Coordinates, gamma: &Poly) -> Result<McReport> {
    check_hamiltonian(c, gamma)?;
    let g = c.truncate(gamma);
    let residual = c.truncate(&c.bracket(&g, &g)?);
    Ok(McReport { is_solution: residual.is_zero(), residual })
}

pub fn resolution_kind(model: Model) -> ResolutionKind {
    match model {
        Model::Lie1Bi => ResolutionKind::Lie1Bi,
        Model::Tf => ResolutionKind::Tf,
        Model::LieBi => ResolutionKind::LieBi,
    }
}

/// Outcome of evaluating `d(g)` for every generator under a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    /// Generators with `m+n <= order` whose relation fails, with the number of nonzero
    /// coefficients of the evaluated relation.
    pub failures: Vec<(String, usize)>,
    pub checked: usize,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sign exponent identifying a coefficient array with a map in the graded endomorphism
/// properad: the generating functions read the momenta (or tensor factors) in an order that
/// differs from the composition order of multilinear maps by this Koszul sign.
pub(crate) fn identification_sign(model: Model, deg: &[i32], outs: &[u8], ins: &[u8]) -> i32 {
    let d = |a: u8| deg[a as usize];
    let pairs = |idx: &[u8], diagonal: bool| {
        let mut e = 0;
        for i in 0..idx.len() {
            for j in if diagonal { i } else { i + 1 }..idx.len() {
                e += d(idx[i]) * d(idx[j]);
            }
        }
        e
    };
    match model {
        Model::Lie1Bi => pairs(outs, true),
        Model::LieBi => pairs(outs, false),
        Model::Tf if outs.len() == 1 => pairs(ins, false),
        Model::Tf => pairs(ins, false) + d(outs[0]),
    }
}

/// Images of the generators of the resolution with unary part under a collection.
pub fn representation(tc: &TensorCollection, r: &Resolution) -> BTreeMap<crate::dioperad::Deco, GMap> {
    let deg = tc.acting_degrees();
    let mut images = BTreeMap::new();
    for g in r.generators() {
        let md = r.collection().module(g);
        let raw = tc.gmap(md.m, md.n);
        let mut base = GMap::zero(raw.m, raw.n, raw.degree);
        for ((outs, ins), v) in raw.coeffs() {
            let s = if identification_sign(tc.model(), &deg, outs, ins).rem_euclid(2) == 0 { v.clone() } else { -v.clone() };
            base.add(outs.clone(), ins.clone(), s);
        }
        let img = if g.basis == 1 { grelabel(&deg, &base, &[2, 1], &(1..=md.n).collect::<Vec<_>>()) } else { base };
        images.insert(g, img);
    }
    images
}

/// Evaluates the relations `ρ(d g) = 0` of the resolution (with its unary generator) for all
/// generators within the truncation order: `m+n <= order`, or `n <= order` in the tensor
/// model where the order counts inputs only.
pub fn relation_check(tc: &TensorCollection, order: usize) -> Result<RelationReport> {
    let tf = tc.model() == Model::Tf;
    let within = |m: usize, n: usize| if tf { n <= order } else { m + n <= order };
    let r = Resolution::with_unary(resolution_kind(tc.model()), (if tf { order + 2 } else { order }).max(3))?;
    let deg = tc.acting_degrees();
    let images = representation(tc, &r);
    let ev = Evaluator { coll: r.collection(), degrees: &deg, images: &images };
    let mut failures = Vec::new();
    let mut checked = 0;
    for g in r.generators() {
        let md = r.collection().module(g);
        if !within(md.m, md.n) {
            continue;
        }
        checked += 1;
        if let Some(v) = ev.element(&r.d_generator(g)?)? {
            if !v.is_zero() {
                failures.push((r.collection().deco_name(g), v.coeffs().len()));
            }
        }
    }
    Ok(RelationReport { failures, checked })
}
