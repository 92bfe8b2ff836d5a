use super::module::{Collection, Deco};
use crate::error::{Error, Result};
use crate::exactalg::{bubble_sort_by_key, reorder_sign, Comb, Rational};
use crate::treespace::{canonical_data, enumerate_trees, graft, slot_keys, Node, Port, Tree};

/// Tree with vertices decorated by basis vectors of a collection.
pub type DTree = Tree<Deco>;

/// Element of a free dioperad: combination of canonical decorated trees.
pub type Element = Comb<DTree>;

/// Total degree of a decorated tree.
pub fn tree_degree(c: &Collection, t: &DTree) -> i32 {
    t.nodes.iter().map(|v| c.degree(v.deco)).sum()
}

fn act(c: &Collection, vec: &Comb<u16>, module: u16, out_side: bool, k: usize) -> Comb<u16> {
    let m = &c.modules[module as usize];
    let t = if out_side { &m.out_gens[k] } else { &m.in_gens[k] };
    let mut res = Comb::new();
    for (&b, coef) in vec.iter() {
        for (&(i, j), v) in t.entries() {
            if j == b as usize {
                res.add(i as u16, coef * v);
            }
        }
    }
    res
}

/// Canonical form of a decorated tree as a combination.
///
/// Slots are sorted by branch key using the module actions; vertices are then reordered
/// with the Koszul sign of their decoration degrees.
pub fn canonicalize(c: &Collection, t: &DTree) -> Element {
    let data = canonical_data(t);
    let (okeys, ikeys) = slot_keys(t);
    let mut per_vertex: Vec<(Node<()>, u16, Comb<u16>)> = Vec::with_capacity(t.nodes.len());
    for (v, node) in t.nodes.iter().enumerate() {
        let mut vec = Comb::single(node.deco.basis, Rational::one());
        let mut outs: Vec<(crate::treespace::LegKey, Port)> = okeys[v].iter().copied().zip(node.outs.iter().copied()).collect();
        let mut swaps = Vec::new();
        bubble_sort_by_key(&mut outs, |x| x.0, |k| swaps.push(k));
        for k in swaps.drain(..) {
            vec = act(c, &vec, node.deco.module, true, k);
        }
        let mut ins: Vec<(crate::treespace::LegKey, Port)> = ikeys[v].iter().copied().zip(node.ins.iter().copied()).collect();
        bubble_sort_by_key(&mut ins, |x| x.0, |k| swaps.push(k));
        for k in swaps.drain(..) {
            vec = act(c, &vec, node.deco.module, false, k);
        }
        let shape = Node { outs: outs.into_iter().map(|x| x.1).collect(), ins: ins.into_iter().map(|x| x.1).collect(), deco: () };
        per_vertex.push((shape, node.deco.module, vec));
    }
    let degrees: Vec<i32> = t.nodes.iter().map(|v| c.degree(v.deco)).collect();
    let sign = reorder_sign(&data.vertex_order, &degrees);
    let shape_tree: Tree<()> = Tree { m: t.m, n: t.n, nodes: per_vertex.iter().map(|p| p.0.clone()).collect() };
    let reordered = shape_tree.reorder_vertices(&data.vertex_order);
    let mut result = Element::new();
    let mut partial: Vec<(Vec<u16>, Rational)> = vec![(Vec::new(), Rational::int(sign as i64))];
    for &old in &data.vertex_order {
        let mut next = Vec::new();
        for (bases, coef) in &partial {
            for (&b, v) in per_vertex[old].2.iter() {
                let mut nb = bases.clone();
                nb.push(b);
                next.push((nb, coef * v));
            }
        }
        partial = next;
    }
    for (bases, coef) in partial {
        let tree = Tree {
            m: t.m,
            n: t.n,
            nodes: reordered
                .nodes
                .iter()
                .zip(&data.vertex_order)
                .zip(&bases)
                .map(|((node, &old), &b)| Node {
                    outs: node.outs.clone(),
                    ins: node.ins.clone(),
                    deco: Deco { module: per_vertex[old].1, basis: b },
                })
                .collect(),
        };
        result.add(tree, coef);
    }
    result
}

/// Canonicalizes every term of a combination of raw trees.
pub fn canonicalize_comb(c: &Collection, x: &Comb<DTree>) -> Element {
    let mut out = Element::new();
    for (t, coef) in x.iter() {
        out.add_scaled(&canonicalize(c, t), coef);
    }
    out
}

/// Basis of the free dioperad slot `(m,n)` on trees with at most `max_vertices` vertices.
pub fn free_basis(c: &Collection, m: usize, n: usize, max_vertices: usize) -> Result<Vec<DTree>> {
    let arities = c.arities();
    if arities.is_empty() {
        return Ok(Vec::new());
    }
    let shapes = enumerate_trees(m, n, &arities, max_vertices)?;
    let mut out = Vec::new();
    for shape in shapes {
        let options: Vec<Vec<Deco>> = shape.nodes.iter().map(|v| c.decorations(v.arity())).collect();
        let mut idx = vec![0usize; options.len()];
        if options.iter().any(|o| o.is_empty()) {
            continue;
        }
        loop {
            out.push(Tree {
                m,
                n,
                nodes: shape
                    .nodes
                    .iter()
                    .zip(&options)
                    .zip(&idx)
                    .map(|((v, o), &i)| Node { outs: v.outs.clone(), ins: v.ins.clone(), deco: o[i] })
                    .collect(),
            });
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
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
    out.sort();
    Ok(out)
}

/// Relabels legs of every term and canonicalizes: root `k` becomes `outs[k-1]`, leaf `k`
/// becomes `ins[k-1]`.
pub fn relabel_element(c: &Collection, x: &Element, outs: &[usize], ins: &[usize]) -> Element {
    let mut res = Element::new();
    for (t, coef) in x.iter() {
        res.add_scaled(&canonicalize(c, &t.relabel(outs, ins)), coef);
    }
    res
}

/// Replaces vertex `v` of `t` by the tree `x`; root `k` of `x` takes the place of output slot
/// `k` of `v`, leaf `k` of `x` the place of input slot `k`. The vertices of `x` are inserted
/// at position `v` in their own order. No sign is applied.
pub fn substitute<D: Clone>(t: &Tree<D>, v: usize, x: &Tree<D>) -> Result<Tree<D>> {
    let target = &t.nodes[v];
    if (x.m, x.n) != target.arity() {
        return Err(Error::invalid("substitution arity mismatch"));
    }
    let kx = x.nodes.len();
    let map_t = |u: usize| if u < v { u } else { u + kx - 1 };
    let mut nodes: Vec<Node<D>> = Vec::with_capacity(t.nodes.len() + kx - 1);
    for (u, node) in t.nodes.iter().enumerate() {
        if u == v {
            for xn in &x.nodes {
                let outs = xn
                    .outs
                    .iter()
                    .map(|p| match *p {
                        Port::Vertex(w) => Port::Vertex(v + w),
                        Port::Leg(l) => match target.outs[l - 1] {
                            Port::Vertex(w) => Port::Vertex(map_t(w)),
                            leg => leg,
                        },
                    })
                    .collect();
                let ins = xn
                    .ins
                    .iter()
                    .map(|p| match *p {
                        Port::Vertex(w) => Port::Vertex(v + w),
                        Port::Leg(l) => match target.ins[l - 1] {
                            Port::Vertex(w) => Port::Vertex(map_t(w)),
                            leg => leg,
                        },
                    })
                    .collect();
                nodes.push(Node { outs, ins, deco: xn.deco.clone() });
            }
            continue;
        }
        let fix = |p: &Port, out_side: bool| -> Port {
            match *p {
                Port::Vertex(w) if w == v => {
                    // find the slot of v facing u, then the vertex of x holding that leg
                    let slot = if out_side {
                        target.ins.iter().position(|q| *q == Port::Vertex(u)).expect("edge symmetry")
                    } else {
                        target.outs.iter().position(|q| *q == Port::Vertex(u)).expect("edge symmetry")
                    };
                    let key = if out_side { Port::Leg(slot + 1) } else { Port::Leg(slot + 1) };
                    let holder = x
                        .nodes
                        .iter()
                        .position(|xn| if out_side { xn.ins.contains(&key) } else { xn.outs.contains(&key) })
                        .expect("leg present");
                    Port::Vertex(v + holder)
                }
                Port::Vertex(w) => Port::Vertex(map_t(w)),
                leg => leg,
            }
        };
        nodes.push(Node {
            outs: node.outs.iter().map(|p| fix(p, true)).collect(),
            ins: node.ins.iter().map(|p| fix(p, false)).collect(),
            deco: node.deco.clone(),
        });
    }
    Ok(Tree { m: t.m, n: t.n, nodes })
}

/// Substitutes a combination into vertex `v` of `t`, scaling by `coef`, and canonicalizes.
pub fn substitute_element(c: &Collection, t: &DTree, v: usize, x: &Element, coef: &Rational, out: &mut Element) -> Result<()> {
    for (xt, xc) in x.iter() {
        let s = substitute(t, v, xt)?;
        out.add_scaled(&canonicalize(c, &s), &(coef * xc));
    }
    Ok(())
}

/// Dioperadic composition `a ∘ b`: root `j` of `b` grafted into leaf `i` of `a`.
/// The vertices of `a` precede those of `b`.
pub fn compose(c: &Collection, a: &Element, i: usize, b: &Element, j: usize) -> Result<Element> {
    let mut out = Element::new();
    for (ta, ca) in a.iter() {
        for (tb, cb) in b.iter() {
            let g = graft(ta, i, tb, j)?;
            out.add_scaled(&canonicalize(c, &g), &(ca * cb));
        }
    }
    Ok(out)
}

/// Corolla element for a decoration.
pub fn corolla(c: &Collection, d: Deco) -> DTree {
    let m = c.module(d);
    Tree::corolla(m.m, m.n, d)
}
