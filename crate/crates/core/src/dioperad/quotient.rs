use std::collections::HashMap;

use super::free::{canonicalize, free_basis, substitute, DTree, Element};
use super::module::{Collection, Deco};
use super::presentation::{Presentation, RELATION_SLOTS};
use crate::error::{Error, Result};
use crate::exactalg::{Echelon, Rational, SignedMatrix, SparseVec};
use crate::treespace::{enumerate_trees, Node, Tree};

/// One slot `P(m,n)` of a quadratic dioperad: the trivalent free slot, the ideal inside it,
/// and the lifted quotient basis.
#[derive(Clone, Debug)]
pub struct QuotientSlot {
    pub m: usize,
    pub n: usize,
    pub free: Vec<DTree>,
    index: HashMap<DTree, usize>,
    ideal: Echelon,
    /// Indices into `free` of the trees representing the quotient basis.
    pub basis: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl QuotientSlot {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn free_dim(&self) -> usize {
        self.free.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.rank()
    }

    pub fn basis_tree(&self, k: usize) -> &DTree {
        &self.free[self.basis[k]]
    }

    pub fn free_index(&self, t: &DTree) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of an element of the free slot in the quotient basis.
    pub fn reduce(&self, x: &Element) -> Result<Vec<Rational>> {
        let mut v = SparseVec::new();
        for (t, c) in x.iter() {
            let i = self.index.get(t).ok_or_else(|| Error::invalid("element is not in the trivalent free slot"))?;
            v.insert(*i, c.clone());
        }
        let r = self.ideal.reduce(v);
        let mut out = vec![Rational::zero(); self.basis.len()];
        for (k, c) in r {
            out[self.position[&k]] = c;
        }
        Ok(out)
    }

    /// Echelon basis of the ideal slot as elements of the free dioperad.
    pub fn ideal_elements(&self) -> Vec<Element> {
        self.ideal
            .basis_rows()
            .iter()
            .map(|r| r.iter().map(|(&i, c)| (self.free[i].clone(), c.clone())).collect())
            .collect()
    }

    /// Matrix of a leg relabeling on the quotient basis (columns are images).
    pub fn action_matrix(&self, coll: &Collection, outs: &[usize], ins: &[usize]) -> Result<SignedMatrix> {
        let d = self.dim();
        let mut mat = SignedMatrix::zeros(d, d);
        for k in 0..d {
            let t = self.basis_tree(k).relabel(outs, ins);
            let img = self.reduce(&canonicalize(coll, &t))?;
            for (i, c) in img.into_iter().enumerate() {
                mat.set(i, k, c);
            }
        }
        Ok(mat)
    }

    /// Degree of the slot; the quotient basis is homogeneous for presentations with one
    /// generator degree per arity.
    pub fn degree(&self, coll: &Collection) -> Option<i32> {
        self.basis.first().map(|&i| super::free::tree_degree(coll, &self.free[i]))
    }
}

/// Trees of the slot with one four-valent placeholder vertex and all others trivalent.
fn placeholder_shapes(m: usize, n: usize) -> Result<Vec<Tree>> {
    let mut ar = vec![(1, 2), (2, 1)];
    ar.extend(RELATION_SLOTS);
    let k = m + n - 3;
    Ok(enumerate_trees(m, n, &ar, k)?.into_iter().filter(|t| t.nodes.len() == k).collect())
}

/// `P(m,n) = Free(E)(m,n) / Ideal(R)(m,n)`, computed on trivalent trees.
pub fn quotient_slot(p: &Presentation, m: usize, n: usize, max_vertices: usize) -> Result<QuotientSlot> {
    if m == 0 || n == 0 || m + n < 2 {
        return Err(Error::invalid("slot needs m, n >= 1"));
    }
    let needed = m + n - 2;
    if needed > max_vertices {
        return Err(Error::WindowInsufficient(format!(
            "slot ({m},{n}) needs {needed} vertices but the window allows {max_vertices}"
        )));
    }
    let coll = &p.generators;
    let free = if m + n >= 3 { free_basis(coll, m, n, needed)? } else { Vec::new() };
    let free: Vec<DTree> = free.into_iter().filter(|t| t.nodes.len() == needed).collect();
    let index: HashMap<DTree, usize> = free.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut ideal = Echelon::new(free.len());
    if m + n >= 4 {
        let images: HashMap<(usize, usize), Vec<Element>> = RELATION_SLOTS.iter().map(|&a| (a, p.relation_images(a))).collect();
        for shape in placeholder_shapes(m, n)? {
            let big = shape.nodes.iter().position(|v| v.outs.len() + v.ins.len() == 4).expect("one big vertex");
            let rels = &images[&shape.nodes[big].arity()];
            if rels.is_empty() {
                continue;
            }
            let options: Vec<Vec<Deco>> = shape
                .nodes
                .iter()
                .enumerate()
                .map(|(i, v)| if i == big { vec![Deco { module: 0, basis: 0 }] } else { coll.decorations(v.arity()) })
                .collect();
            if options.iter().any(|o| o.is_empty()) {
                continue;
            }
            let mut idx = vec![0usize; options.len()];
            loop {
                let t: DTree = Tree {
                    m,
                    n,
                    nodes: shape
                        .nodes
                        .iter()
                        .zip(&options)
                        .zip(&idx)
                        .map(|((v, o), &i)| Node { outs: v.outs.clone(), ins: v.ins.clone(), deco: o[i] })
                        .collect(),
                };
                for r in rels {
                    let mut v = SparseVec::new();
                    for (rt, rc) in r.iter() {
                        let s = substitute(&t, big, rt)?;
                        for (ct, cc) in canonicalize(coll, &s).iter() {
                            let e = v.entry(index[ct]).or_insert_with(Rational::zero);
                            *e += rc * cc;
                        }
                    }
                    v.retain(|_, c| !c.is_zero());
                    ideal.insert(v);
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < options[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
    }
    let basis = ideal.complement();
    let position = basis.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    Ok(QuotientSlot { m, n, free, index, ideal, basis, position })
}
