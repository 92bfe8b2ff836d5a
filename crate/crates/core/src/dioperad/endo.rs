//! Endomorphism dioperad of a finite-dimensional space concentrated in degree 0.

use super::free::{DTree, Element};
use super::module::{Collection, Deco};
use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::treespace::{Port, Tree};

/// Multilinear map `V^{⊗n} → V^{⊗m}` stored as coefficients indexed by output then input
/// basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    pub dim: usize,
    pub m: usize,
    pub n: usize,
    coeffs: Vec<Rational>,
}

fn flat(dim: usize, idx: impl Iterator<Item = usize>) -> usize {
    idx.fold(0, |acc, i| acc * dim + i)
}

fn tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..dim).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

impl MultiMap {
    pub fn zeros(dim: usize, m: usize, n: usize) -> Self {
        MultiMap { dim, m, n, coeffs: vec![Rational::zero(); dim.pow((m + n) as u32)] }
    }

    pub fn from_fn(dim: usize, m: usize, n: usize, mut f: impl FnMut(&[usize], &[usize]) -> Rational) -> Self {
        let mut x = Self::zeros(dim, m, n);
        for o in tuples(dim, m) {
            for i in tuples(dim, n) {
                x.set(&o, &i, f(&o, &i));
            }
        }
        x
    }

    fn index(&self, outs: &[usize], ins: &[usize]) -> usize {
        debug_assert_eq!((outs.len(), ins.len()), (self.m, self.n));
        flat(self.dim, outs.iter().chain(ins).copied())
    }

    pub fn get(&self, outs: &[usize], ins: &[usize]) -> &Rational {
        &self.coeffs[self.index(outs, ins)]
    }

    pub fn set(&mut self, outs: &[usize], ins: &[usize], v: Rational) {
        let k = self.index(outs, ins);
        self.coeffs[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn add_scaled(&mut self, other: &MultiMap, c: &Rational) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * c;
        }
    }
}

/// Composition in the endomorphism dioperad: output `j` of `g` feeds input `i` of `f`.
/// Inputs of the result are `f[..i)`, `g`, `f(i..]`; outputs are `g[..j)`, `f`, `g(j..]`.
pub fn endo_compose(f: &MultiMap, i: usize, g: &MultiMap, j: usize) -> Result<MultiMap> {
    if f.dim != g.dim || i == 0 || i > f.n || j == 0 || j > g.m {
        return Err(Error::invalid("composition indices or dimensions out of range"));
    }
    let (m, n) = (f.m + g.m - 1, f.n + g.n - 1);
    Ok(MultiMap::from_fn(f.dim, m, n, |outs, ins| {
        let g_outs_head = &outs[..j - 1];
        let f_outs = &outs[j - 1..j - 1 + f.m];
        let g_outs_tail = &outs[j - 1 + f.m..];
        let f_ins_head = &ins[..i - 1];
        let g_ins = &ins[i - 1..i - 1 + g.n];
        let f_ins_tail = &ins[i - 1 + g.n..];
        let mut s = Rational::zero();
        for e in 0..f.dim {
            let go: Vec<usize> = g_outs_head.iter().copied().chain([e]).chain(g_outs_tail.iter().copied()).collect();
            let fi: Vec<usize> = f_ins_head.iter().copied().chain([e]).chain(f_ins_tail.iter().copied()).collect();
            s += g.get(&go, g_ins) * f.get(f_outs, &fi);
        }
        s
    }))
}

/// Evaluates a tree whose vertices carry multilinear maps by summing over basis indices on
/// the internal edges.
pub fn evaluate_tree(t: &Tree<MultiMap>) -> Result<MultiMap> {
    let dim = t.nodes.first().map(|v| v.deco.dim).ok_or_else(|| Error::invalid("empty tree"))?;
    for v in &t.nodes {
        if v.deco.dim != dim || v.deco.m != v.outs.len() || v.deco.n != v.ins.len() {
            return Err(Error::invalid("vertex map does not match the vertex"));
        }
    }
    let edges = t.edges();
    let edge_index = |src: usize, tgt: usize| edges.iter().position(|e| e.0 == src && e.2 == tgt).expect("edge");
    Ok(MultiMap::from_fn(dim, t.m, t.n, |outs, ins| {
        let mut s = Rational::zero();
        for labels in tuples(dim, edges.len()) {
            let mut prod = Rational::one();
            for (v, node) in t.nodes.iter().enumerate() {
                let o: Vec<usize> = node
                    .outs
                    .iter()
                    .map(|p| match *p {
                        Port::Leg(k) => outs[k - 1],
                        Port::Vertex(u) => labels[edge_index(v, u)],
                    })
                    .collect();
                let i: Vec<usize> = node
                    .ins
                    .iter()
                    .map(|p| match *p {
                        Port::Leg(k) => ins[k - 1],
                        Port::Vertex(u) => labels[edge_index(u, v)],
                    })
                    .collect();
                prod *= node.deco.get(&o, &i);
                if prod.is_zero() {
                    break;
                }
            }
            s += prod;
        }
        s
    }))
}

/// Assignment of a multilinear map to every basis vector of every generator module.
#[derive(Clone, Debug)]
pub struct EndoRep {
    pub dim: usize,
    pub maps: Vec<Vec<MultiMap>>,
}

impl EndoRep {
    fn map(&self, d: Deco) -> &MultiMap {
        &self.maps[d.module as usize][d.basis as usize]
    }

    /// Checks that the assignment intertwines the module actions with slot permutations.
    pub fn check_equivariant(&self, c: &Collection) -> Result<()> {
        for (mi, md) in c.modules.iter().enumerate() {
            if md.degree != 0 {
                return Err(Error::invalid(format!("generator `{}` is not of degree 0", md.name)));
            }
            for (side, gens) in [(true, &md.out_gens), (false, &md.in_gens)] {
                for (k, tk) in gens.iter().enumerate() {
                    for b in 0..md.dim {
                        let lhs = MultiMap::from_fn(self.dim, md.m, md.n, |o, i| {
                            let (mut o, mut i) = (o.to_vec(), i.to_vec());
                            if side {
                                o.swap(k, k + 1);
                            } else {
                                i.swap(k, k + 1);
                            }
                            self.maps[mi][b].get(&o, &i).clone()
                        });
                        let mut rhs = MultiMap::zeros(self.dim, md.m, md.n);
                        for (&(r, col), v) in tk.entries() {
                            if col == b {
                                rhs.add_scaled(&self.maps[mi][r], v);
                            }
                        }
                        if lhs != rhs {
                            return Err(Error::invalid(format!("assignment for `{}` is not equivariant", md.name)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn evaluate_tree(&self, t: &DTree) -> Result<MultiMap> {
        evaluate_tree(&t.map_deco(|d| self.map(*d).clone()))
    }

    /// Value of an element of the free dioperad; every generator must have degree 0.
    pub fn evaluate(&self, c: &Collection, x: &Element) -> Result<Option<MultiMap>> {
        let mut acc: Option<MultiMap> = None;
        for (t, coef) in x.iter() {
            if t.nodes.iter().any(|v| c.degree(v.deco) != 0) {
                return Err(Error::invalid("evaluation needs degree 0 generators"));
            }
            let val = self.evaluate_tree(t)?;
            match acc.as_mut() {
                Some(a) => a.add_scaled(&val, coef),
                None => {
                    let mut z = MultiMap::zeros(val.dim, val.m, val.n);
                    z.add_scaled(&val, coef);
                    acc = Some(z);
                }
            }
        }
        Ok(acc)
    }
}
