use std::collections::{BTreeMap, HashMap};

use crate::dioperad::{canonicalize, free_basis, substitute, Collection, DTree, Deco, Element, Presentation, QuotientSlot, SigmaModule};
use crate::error::{Error, Result};
use crate::exactalg::{parity, Rational, SignedMatrix};
use crate::treespace::{canonical_data, enumerate_trees, Node, Tree};

/// Reference ordering of internal edges used to normalize the orientation wedge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    /// Sorted by (source, target) canonical vertex indices.
    Ascending,
    /// The reverse of `Ascending`.
    Descending,
}

/// One term of the decomposition of a slot basis vector: a two-vertex shape and the basis
/// vectors placed on its vertices, with the coordinates of their composite.
#[derive(Clone, Debug)]
struct Cocomposition {
    shape: Tree,
    first: Deco,
    second: Deco,
    coords: Vec<Rational>,
}

/// Slots of `P` in a window together with the dual collection and the cocomposition tables.
#[derive(Clone, Debug)]
pub struct CobarData {
    pub cap: usize,
    pub slots: BTreeMap<(usize, usize), QuotientSlot>,
    /// Dual slot modules `P̄(a,b)*`, one per nonzero slot.
    pub duals: Collection,
    splits: HashMap<(usize, usize), Vec<Cocomposition>>,
    pub edge_order: EdgeOrder,
}

fn slot_module(p: &Presentation, s: &QuotientSlot, name: &str) -> Result<SigmaModule> {
    let (m, n) = (s.m, s.n);
    let swap = |len: usize, k: usize| {
        let mut v: Vec<usize> = (1..=len).collect();
        v.swap(k, k + 1);
        v
    };
    let ids = |len: usize| (1..=len).collect::<Vec<_>>();
    let out_gens = (0..m.saturating_sub(1)).map(|k| s.action_matrix(&p.generators, &swap(m, k), &ids(n))).collect::<Result<Vec<_>>>()?;
    let in_gens = (0..n.saturating_sub(1)).map(|k| s.action_matrix(&p.generators, &ids(m), &swap(n, k))).collect::<Result<Vec<_>>>()?;
    let degree = s.degree(&p.generators).unwrap_or(0);
    let module = SigmaModule { name: name.to_string(), m, n, degree, dim: s.dim(), out_gens, in_gens, reps: None };
    Ok(module.contragredient(name, -degree))
}

impl CobarData {
    /// Computes every slot `(a,b)` with `3 <= a+b <= cap` and the compositions between them.
    pub fn new(p: &Presentation, cap: usize) -> Result<Self> {
        Self::with_order(p, cap, EdgeOrder::Ascending)
    }

    pub fn with_order(p: &Presentation, cap: usize, edge_order: EdgeOrder) -> Result<Self> {
        let mut slots = BTreeMap::new();
        for s in 3..=cap {
            for a in 1..s {
                let b = s - a;
                slots.insert((a, b), crate::dioperad::quotient_slot(p, a, b, s - 2)?);
            }
        }
        let mut modules = Vec::new();
        let mut module_of = HashMap::new();
        for (&(a, b), s) in &slots {
            if s.dim() > 0 {
                module_of.insert((a, b), modules.len() as u16);
                modules.push(slot_module(p, s, &format!("p{a}_{b}"))?);
            }
        }
        let duals = Collection::new(modules);
        let mut splits = HashMap::new();
        for (&(a, b), target) in &slots {
            if target.dim() == 0 || a + b < 4 {
                continue;
            }
            let arities: Vec<(usize, usize)> = module_of.keys().copied().filter(|&(x, y)| x + y < a + b).collect();
            let mut terms = Vec::new();
            for shape in enumerate_trees(a, b, &arities, 2)?.into_iter().filter(|t| t.nodes.len() == 2) {
                let (ar0, ar1) = (shape.nodes[0].arity(), shape.nodes[1].arity());
                let (s0, s1) = (&slots[&ar0], &slots[&ar1]);
                for k0 in 0..s0.dim() {
                    for k1 in 0..s1.dim() {
                        let inner: Tree<Option<DTree>> = Tree {
                            m: a,
                            n: b,
                            nodes: vec![
                                Node { outs: shape.nodes[0].outs.clone(), ins: shape.nodes[0].ins.clone(), deco: Some(s0.basis_tree(k0).clone()) },
                                Node { outs: shape.nodes[1].outs.clone(), ins: shape.nodes[1].ins.clone(), deco: Some(s1.basis_tree(k1).clone()) },
                            ],
                        };
                        let composite = compose_shape(&inner)?;
                        let coords = target.reduce(&canonicalize(&p.generators, &composite))?;
                        if coords.iter().all(|c| c.is_zero()) {
                            continue;
                        }
                        terms.push(Cocomposition {
                            shape: shape.clone(),
                            first: Deco { module: module_of[&ar0], basis: k0 as u16 },
                            second: Deco { module: module_of[&ar1], basis: k1 as u16 },
                            coords,
                        });
                    }
                }
            }
            splits.insert((a, b), terms);
        }
        Ok(CobarData { cap, slots, duals, splits, edge_order })
    }

    pub fn slot_dim(&self, a: usize, b: usize) -> usize {
        self.slots.get(&(a, b)).map_or(0, |s| s.dim())
    }

    fn arity_of(&self, d: Deco) -> (usize, usize) {
        self.duals.module(d).arity()
    }

    /// Basis of the tree-degree part with `edges` internal edges.
    pub fn basis(&self, m: usize, n: usize, edges: usize) -> Result<Vec<DTree>> {
        if m + n > self.cap {
            return Err(Error::WindowInsufficient(format!("slot ({m},{n}) exceeds the cobar window {}", self.cap)));
        }
        if self.duals.modules.is_empty() {
            return Ok(Vec::new());
        }
        Ok(free_basis(&self.duals, m, n, edges + 1)?.into_iter().filter(|t| t.nodes.len() == edges + 1).collect())
    }

    fn edge_sign(&self, word: &[(usize, usize)]) -> i32 {
        let mut idx: Vec<usize> = (0..word.len()).collect();
        match self.edge_order {
            EdgeOrder::Ascending => idx.sort_by_key(|&i| word[i]),
            EdgeOrder::Descending => idx.sort_by_key(|&i| std::cmp::Reverse(word[i])),
        }
        parity(&idx)
    }

    /// Canonical form of a decorated tree carrying the given edge word.
    fn normalize(&self, t: &DTree, word: &[(usize, usize)]) -> Element {
        let data = canonical_data(t);
        let mut pos = vec![0; t.nodes.len()];
        for (i, &o) in data.vertex_order.iter().enumerate() {
            pos[o] = i;
        }
        let renamed: Vec<(usize, usize)> = word.iter().map(|&(s, u)| (pos[s], pos[u])).collect();
        let sign = self.edge_sign(&renamed);
        let c = canonicalize(&self.duals, t);
        if sign == 1 {
            c
        } else {
            c.scaled(&Rational::int(-1))
        }
    }

    /// Differential of a canonical basis tree.
    pub fn differential(&self, t: &DTree) -> Result<Element> {
        let mut word: Vec<(usize, usize)> = t.edges().into_iter().map(|(s, _, u, _)| (s, u)).collect();
        match self.edge_order {
            EdgeOrder::Ascending => word.sort(),
            EdgeOrder::Descending => word.sort_by(|a, b| b.cmp(a)),
        }
        let mut out = Element::new();
        for (v, node) in t.nodes.iter().enumerate() {
            let arity = self.arity_of(node.deco);
            let Some(terms) = self.splits.get(&arity) else { continue };
            for term in terms {
                let coef = &term.coords[node.deco.basis as usize];
                if coef.is_zero() {
                    continue;
                }
                let mut piece: DTree = term.shape.map_deco(|_| term.first);
                piece.nodes[1].deco = term.second;
                let s = substitute(t, v, &piece)?;
                let new_word = transport_word(&s, v, &word);
                out.add_scaled(&self.normalize(&s, &new_word), coef);
            }
        }
        Ok(out)
    }

    /// Complex of the slot `(m,n)`: bases indexed by number of internal edges and the matrices
    /// of the differential between them.
    pub fn complex(&self, m: usize, n: usize) -> Result<CobarComplex> {
        if m + n < 3 {
            return Err(Error::invalid("cobar slots need m+n >= 3"));
        }
        let top = m + n - 3;
        let bases: Vec<Vec<DTree>> = (0..=top).map(|e| self.basis(m, n, e)).collect::<Result<_>>()?;
        let mut maps = Vec::new();
        for e in 0..top {
            let index: HashMap<&DTree, usize> = bases[e + 1].iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut mat = SignedMatrix::zeros(bases[e + 1].len(), bases[e].len());
            for (j, t) in bases[e].iter().enumerate() {
                for (img, c) in self.differential(t)?.iter() {
                    let i = index.get(img).ok_or_else(|| Error::invalid("differential left the tree basis"))?;
                    mat.add_to(*i, j, c);
                }
            }
            maps.push(mat);
        }
        Ok(CobarComplex { m, n, bases, maps })
    }
}

/// Renames the edges of `old` after vertex `v` was replaced by a two-vertex piece occupying
/// positions `v` and `v+1`; the new inner edge goes first.
fn transport_word(new: &DTree, v: usize, word: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let new_edges: Vec<(usize, usize)> = new.edges().into_iter().map(|(s, _, u, _)| (s, u)).collect();
    let shift = |u: usize| if u < v { u } else { u + 1 };
    let inner = *new_edges.iter().find(|&&(s, u)| (s == v && u == v + 1) || (s == v + 1 && u == v)).expect("inner edge");
    let mut out = vec![inner];
    for &(s, u) in word {
        let resolve = |x: usize, other: usize, x_is_source: bool| -> usize {
            if x != v {
                return shift(x);
            }
            let o = shift(other);
            for cand in [v, v + 1] {
                let e = if x_is_source { (cand, o) } else { (o, cand) };
                if new_edges.contains(&e) {
                    return cand;
                }
            }
            unreachable!("edge endpoint not found after substitution")
        };
        out.push((resolve(s, u, true), resolve(u, s, false)));
    }
    out
}

/// Substitutes the trees decorating a two-vertex shape into it, giving a tree over the
/// generators of `P`; vertices of the first piece come first.
fn compose_shape(shape: &Tree<Option<DTree>>) -> Result<DTree> {
    let first = shape.nodes[0].deco.clone().expect("decorated");
    let second = shape.nodes[1].deco.clone().expect("decorated");
    let placeholder = Deco { module: u16::MAX, basis: 0 };
    let skeleton: DTree = shape.map_deco(|_| placeholder);
    let step = substitute(&skeleton, 0, &first)?;
    let last = step.nodes.len() - 1;
    substitute(&step, last, &second)
}

/// Differential matrices of one cobar slot; `maps[e]` goes from `e` to `e+1` internal edges.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    pub m: usize,
    pub n: usize,
    pub bases: Vec<Vec<DTree>>,
    pub maps: Vec<SignedMatrix>,
}

impl CobarComplex {
    /// Dimension of the part with `edges` internal edges, in tree degree `edges + 3 - m - n`.
    pub fn dim(&self, edges: usize) -> usize {
        self.bases[edges].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.maps.iter().map(|d| d.rank()).collect()
    }

    /// Cohomology dimensions indexed by number of internal edges.
    pub fn cohomology(&self) -> Vec<usize> {
        let r = self.ranks();
        (0..self.bases.len())
            .map(|e| {
                let out = if e < r.len() { r[e] } else { 0 };
                let inc = if e > 0 { r[e - 1] } else { 0 };
                self.dim(e) - out - inc
            })
            .collect()
    }

    /// Largest entry count of `d∘d` over all consecutive pairs; zero means `d² = 0`.
    pub fn d_squared_nnz(&self) -> Result<usize> {
        let mut worst = 0;
        for w in self.maps.windows(2) {
            worst = worst.max(w[1].mul(&w[0])?.nnz());
        }
        Ok(worst)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.bases.iter().enumerate().map(|(e, b)| if e % 2 == 0 { b.len() as i64 } else { -(b.len() as i64) }).sum()
    }
}
