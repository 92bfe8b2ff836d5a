//! Quadratic duals.
//!
//! Two-vertex trees over `E` and over `E∨` with the same shape pair by the product of the
//! dual basis pairings times an orientation sign. The sign is that of the permutation
//! sorting the half-edge word `[upper outs, upper ins, lower outs, lower ins]` into
//! `[roots, leaves, edge source, edge target]`, all half-edges counted as odd.

use std::collections::HashMap;

use super::free::{free_basis, DTree, Element};
use super::module::{Collection, Deco};
use super::presentation::{Presentation, Relation, RELATION_SLOTS};
use crate::error::Result;
use crate::exactalg::{annihilator, parity, to_dense, Rational, SignedMatrix};
use crate::treespace::{Port, Tree};

const DUAL_PREFIX: &str = "dual_";

/// Name of the dual generator; dualizing twice restores the original name.
pub fn dual_name(name: &str) -> String {
    match name.strip_prefix(DUAL_PREFIX) {
        Some(s) => s.to_string(),
        None => format!("{DUAL_PREFIX}{name}"),
    }
}

/// `E∨`: every module replaced by `sgn ⊗ E* ⊗ sgn` with negated degree, in the same order.
pub fn dual_collection(c: &Collection) -> Collection {
    Collection::new(c.modules.iter().map(|m| m.koszul_dual(&dual_name(&m.name))).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum HalfEdge {
    Root(usize),
    Leaf(usize),
    EdgeSource,
    EdgeTarget,
}

/// Orientation sign of a two-vertex tree used by the quadratic pairing.
pub fn pairing_sign<D: Clone>(t: &Tree<D>) -> i32 {
    assert_eq!(t.nodes.len(), 2, "pairing sign is defined on two-vertex trees");
    let (src, _, tgt, _) = t.edges()[0];
    let mut word = Vec::new();
    for (v, is_upper) in [(tgt, true), (src, false)] {
        let node = &t.nodes[v];
        for p in &node.outs {
            word.push(match p {
                Port::Leg(k) => HalfEdge::Root(*k),
                Port::Vertex(_) => HalfEdge::EdgeSource,
            });
        }
        for p in &node.ins {
            word.push(match p {
                Port::Leg(k) => HalfEdge::Leaf(*k),
                Port::Vertex(_) => HalfEdge::EdgeTarget,
            });
        }
        debug_assert!(is_upper || node.outs.contains(&Port::Vertex(tgt)));
    }
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    parity(&order)
}

fn two_vertex_basis(c: &Collection, arity: (usize, usize)) -> Result<Vec<DTree>> {
    Ok(free_basis(c, arity.0, arity.1, 2)?.into_iter().filter(|t| t.nodes.len() == 2).collect())
}

/// Pairing matrix `⟨dual basis i, basis j⟩` between two-vertex slots of `Free(E∨)` and
/// `Free(E)`, together with both bases.
pub fn quadratic_pairing(c: &Collection, arity: (usize, usize)) -> Result<(Vec<DTree>, Vec<DTree>, SignedMatrix)> {
    let dual = dual_collection(c);
    let basis = two_vertex_basis(c, arity)?;
    let dual_basis = two_vertex_basis(&dual, arity)?;
    let index: HashMap<&DTree, usize> = dual_basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut pairing = SignedMatrix::zeros(dual_basis.len(), basis.len());
    for (j, t) in basis.iter().enumerate() {
        let partner: DTree = t.map_deco(|d: &Deco| *d);
        let i = index[&partner];
        pairing.set(i, j, Rational::int(pairing_sign(t) as i64));
    }
    Ok((dual_basis, basis, pairing))
}

/// `P! = Free(E∨) / (R⊥)`.
pub fn quadratic_dual(p: &Presentation) -> Result<Presentation> {
    let generators = dual_collection(&p.generators);
    let mut relations = Vec::new();
    for arity in RELATION_SLOTS {
        let (dual_basis, basis, pairing) = quadratic_pairing(&p.generators, arity)?;
        if basis.is_empty() {
            continue;
        }
        let span = p.relation_span(arity, &basis);
        let rows: Vec<Vec<Rational>> = span.basis_rows().iter().map(|r| to_dense(r, basis.len())).collect();
        for (k, f) in annihilator(&rows, basis.len(), &pairing)?.into_iter().enumerate() {
            let mut element = Element::new();
            for (i, c) in f.into_iter().enumerate() {
                if !c.is_zero() {
                    element.add(dual_basis[i].clone(), c);
                }
            }
            relations.push(Relation { name: format!("perp_{}{}_{}", arity.0, arity.1, k + 1), arity, element });
        }
    }
    let name = dual_name(&p.name);
    let out = Presentation { name, generators, relations };
    out.validate()?;
    Ok(out)
}
