//! The endomorphism dioperad of a graded space and the evaluation of decorated trees in it.
//!
//! A map `V^{⊗n} → V^{⊗m}` of degree `k` is stored by its coefficients
//! `M(e_{a1}⊗..⊗e_{an}) = Σ M[b][a] e_{b1}⊗..⊗e_{bm}`. Tensor products of maps and of
//! vectors follow the Koszul rule.

use std::collections::{BTreeMap, HashMap};

use crate::dioperad::{Collection, DTree, Deco, Element};
use crate::error::{Error, Result};
use crate::exactalg::{reorder_sign, Rational};
use crate::treespace::{graft, LegKey, Node, Port, Tree};

/// Multi-index pair `(outputs, inputs)`.
pub type Slot = (Vec<u8>, Vec<u8>);

/// Homogeneous multilinear map between tensor powers of a graded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    pub m: usize,
    pub n: usize,
    pub degree: i32,
    coeffs: BTreeMap<Slot, Rational>,
}

fn odd(x: i32) -> bool {
    x.rem_euclid(2) == 1
}

impl GMap {
    pub fn zero(m: usize, n: usize, degree: i32) -> Self {
        GMap { m, n, degree, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<Slot, Rational> {
        &self.coeffs
    }

    pub fn get(&self, outs: &[u8], ins: &[u8]) -> Rational {
        self.coeffs.get(&(outs.to_vec(), ins.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&mut self, outs: Vec<u8>, ins: Vec<u8>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (outs, ins);
        let e = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *e += &c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &GMap, c: &Rational) {
        for ((o, i), v) in &other.coeffs {
            self.add(o.clone(), i.clone(), v * c);
        }
    }
}

/// Sum of degrees of a multi-index.
fn weight(degrees: &[i32], idx: &[u8]) -> i32 {
    idx.iter().map(|&a| degrees[a as usize]).sum()
}

/// `upper ∘ lower`: output `j` of `lower` feeds input `i` of `upper`, legs numbered by the
/// interval rule, with `upper` first in the word.
pub fn gcompose(degrees: &[i32], upper: &GMap, i: usize, lower: &GMap, j: usize) -> GMap {
    let mut out = GMap::zero(upper.m + lower.m - 1, upper.n + lower.n - 1, upper.degree + lower.degree);
    let mut by_input: HashMap<u8, Vec<(&Slot, &Rational)>> = HashMap::new();
    for (slot, c) in &upper.coeffs {
        by_input.entry(slot.1[i - 1]).or_default().push((slot, c));
    }
    for ((gamma, y), gc) in &lower.coeffs {
        let Some(list) = by_input.get(&gamma[j - 1]) else { continue };
        let (g_lo, g_hi) = (weight(degrees, &gamma[..j - 1]), weight(degrees, &gamma[j..]));
        for ((delta, x), fc) in list {
            let (x_lo, x_hi) = (weight(degrees, &x[..i - 1]), weight(degrees, &x[i..]));
            let e = lower.degree * x_lo + x_lo * g_lo + x_hi * g_hi + upper.degree * g_lo;
            let ins: Vec<u8> = x[..i - 1].iter().chain(y.iter()).chain(&x[i..]).copied().collect();
            let outs: Vec<u8> = gamma[..j - 1].iter().chain(delta.iter()).chain(&gamma[j..]).copied().collect();
            let c = gc * *fc;
            out.add(outs, ins, if odd(e) { -c } else { c });
        }
    }
    out
}

/// Renames legs: output `k` becomes output `outs[k-1]`, input `k` becomes input `ins[k-1]`,
/// permuting tensor factors with Koszul signs.
pub fn grelabel(degrees: &[i32], f: &GMap, outs: &[usize], ins: &[usize]) -> GMap {
    let mut out = GMap::zero(f.m, f.n, f.degree);
    // new position p holds old factor out_order[p]
    let mut out_order = vec![0; f.m];
    for (k, &p) in outs.iter().enumerate() {
        out_order[p - 1] = k;
    }
    let mut in_order = vec![0; f.n];
    for (k, &p) in ins.iter().enumerate() {
        in_order[p - 1] = k;
    }
    for ((b, a), c) in &f.coeffs {
        let bd: Vec<i32> = b.iter().map(|&x| degrees[x as usize]).collect();
        let ad: Vec<i32> = a.iter().map(|&x| degrees[x as usize]).collect();
        let nb: Vec<u8> = out_order.iter().map(|&k| b[k]).collect();
        let na: Vec<u8> = in_order.iter().map(|&k| a[k]).collect();
        // M'(z) = M(z reordered back) followed by moving outputs into place
        let s = reorder_sign(&out_order, &bd) * reorder_sign(&in_order, &ad);
        out.add(nb, na, Rational::sign(s) * c);
    }
    out
}

/// Evaluates decorated trees given the image of every decoration.
pub struct Evaluator<'a> {
    pub coll: &'a Collection,
    pub degrees: &'a [i32],
    pub images: &'a BTreeMap<Deco, GMap>,
}

impl Evaluator<'_> {
    fn image(&self, d: Deco) -> Result<&GMap> {
        self.images.get(&d).ok_or_else(|| Error::invalid(format!("no image for `{}`", self.coll.deco_name(d))))
    }

    pub fn element(&self, x: &Element) -> Result<Option<GMap>> {
        let mut acc: Option<GMap> = None;
        for (t, c) in x.iter() {
            let v = self.tree(t)?;
            match acc.as_mut() {
                None => acc = Some(v.scaled(c)),
                Some(a) => a.add_scaled(&v, c),
            }
        }
        Ok(acc)
    }

    /// Image of a tree read as the word of its vertices in order.
    pub fn tree(&self, t: &DTree) -> Result<GMap> {
        if t.nodes.len() == 1 {
            let node = &t.nodes[0];
            let legs = |ports: &[Port]| ports.iter().map(|p| if let Port::Leg(l) = p { *l } else { 0 }).collect::<Vec<_>>();
            return Ok(grelabel(self.degrees, self.image(node.deco)?, &legs(&node.outs), &legs(&node.ins)));
        }
        // cut the first internal edge; the side above it is grafted onto the side below
        let (lo, slot_out, hi, slot_in) = t
            .edges()
            .into_iter()
            .next()
            .ok_or_else(|| Error::invalid("disconnected tree"))?;
        let upper_set = component(t, hi, (lo, hi));
        let (upper, up_ids) = subtree(t, &upper_set, Some((hi, slot_in)), None);
        let lower_set: Vec<usize> = (0..t.nodes.len()).filter(|v| !upper_set.contains(v)).collect();
        let (lower, low_ids) = subtree(t, &lower_set, None, Some((lo, slot_out)));
        let g = graft(&upper, 1, &lower, 1)?;
        let ids: Vec<usize> = up_ids.iter().chain(&low_ids).copied().collect();
        // match legs of the grafted tree with the original ones
        let mut outs = vec![0; g.m];
        for (k, o) in outs.iter_mut().enumerate() {
            let (v, s) = g.leg_vertex(LegKey::Root(k + 1)).expect("root");
            let Port::Leg(l) = t.nodes[ids[v]].outs[s] else { unreachable!("root slot") };
            *o = l;
        }
        let mut ins = vec![0; g.n];
        for (k, o) in ins.iter_mut().enumerate() {
            let (v, s) = g.leg_vertex(LegKey::Leaf(k + 1)).expect("leaf");
            let Port::Leg(l) = t.nodes[ids[v]].ins[s] else { unreachable!("leaf slot") };
            *o = l;
        }
        let f = gcompose(self.degrees, &self.tree(&upper)?, 1, &self.tree(&lower)?, 1);
        let degs: Vec<i32> = t.nodes.iter().map(|n| self.coll.degree(n.deco)).collect();
        let sign = reorder_sign(&ids, &degs);
        Ok(grelabel(self.degrees, &f, &outs, &ins).scaled(&Rational::sign(sign)))
    }
}

impl GMap {
    pub fn scaled(&self, c: &Rational) -> GMap {
        let mut out = GMap::zero(self.m, self.n, self.degree);
        out.add_scaled(self, c);
        out
    }
}

/// Vertices reachable from `start` without crossing the edge `cut`.
fn component(t: &DTree, start: usize, cut: (usize, usize)) -> Vec<usize> {
    let mut seen = vec![false; t.nodes.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(v) = stack.pop() {
        for p in t.nodes[v].outs.iter().chain(&t.nodes[v].ins) {
            if let Port::Vertex(u) = *p {
                if (v, u) == cut || (u, v) == cut || seen[u] {
                    continue;
                }
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..t.nodes.len()).filter(|&v| seen[v]).collect()
}

/// Induced tree on `verts` (kept in order). The cut edge becomes leaf 1 at `new_leaf` or
/// root 1 at `new_root`; other legs are numbered after it by their original labels.
fn subtree(t: &DTree, verts: &[usize], new_leaf: Option<(usize, usize)>, new_root: Option<(usize, usize)>) -> (DTree, Vec<usize>) {
    let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut roots: Vec<usize> = Vec::new();
    let mut leaves: Vec<usize> = Vec::new();
    for &v in verts {
        for p in &t.nodes[v].outs {
            if let Port::Leg(l) = p {
                roots.push(*l);
            }
        }
        for p in &t.nodes[v].ins {
            if let Port::Leg(l) = p {
                leaves.push(*l);
            }
        }
    }
    roots.sort_unstable();
    leaves.sort_unstable();
    let root_off = usize::from(new_root.is_some()) + 1;
    let leaf_off = usize::from(new_leaf.is_some()) + 1;
    let rank = |list: &[usize], l: usize| list.iter().position(|&x| x == l).expect("leg");
    let nodes = verts
        .iter()
        .map(|&v| {
            let node = &t.nodes[v];
            let outs = node
                .outs
                .iter()
                .enumerate()
                .map(|(s, p)| match *p {
                    _ if new_root == Some((v, s)) => Port::Leg(1),
                    Port::Leg(l) => Port::Leg(rank(&roots, l) + root_off),
                    Port::Vertex(u) => Port::Vertex(pos[&u]),
                })
                .collect();
            let ins = node
                .ins
                .iter()
                .enumerate()
                .map(|(s, p)| match *p {
                    _ if new_leaf == Some((v, s)) => Port::Leg(1),
                    Port::Leg(l) => Port::Leg(rank(&leaves, l) + leaf_off),
                    Port::Vertex(u) => Port::Vertex(pos[&u]),
                })
                .collect();
            Node { outs, ins, deco: node.deco }
        })
        .collect();
    let tree = Tree { m: roots.len() + root_off - 1, n: leaves.len() + leaf_off - 1, nodes };
    (tree, verts.to_vec())
}
