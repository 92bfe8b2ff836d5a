use super::tree::{LegKey, Port, Tree};

/// Data taking a tree to its canonical form.
///
/// `vertex_order[i]` is the old index of canonical vertex `i`; `out_orders[v]` and
/// `in_orders[v]` list, for old vertex `v`, the old slot positions in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canon {
    pub vertex_order: Vec<usize>,
    pub out_orders: Vec<Vec<usize>>,
    pub in_orders: Vec<Vec<usize>>,
}

impl Canon {
    pub fn is_identity(&self) -> bool {
        self.vertex_order.iter().enumerate().all(|(i, &v)| i == v)
            && self.out_orders.iter().chain(&self.in_orders).all(|o| o.iter().enumerate().all(|(i, &s)| i == s))
    }
}

fn subtree_min<D: Clone>(t: &Tree<D>, v: usize, from: usize) -> LegKey {
    let node = &t.nodes[v];
    let mut best: Option<LegKey> = None;
    let mut take = |k: LegKey| {
        if best.map_or(true, |b| k < b) {
            best = Some(k);
        }
    };
    for p in &node.outs {
        match *p {
            Port::Leg(l) => take(LegKey::Root(l)),
            Port::Vertex(u) if u != from => take(subtree_min(t, u, v)),
            _ => {}
        }
    }
    for p in &node.ins {
        match *p {
            Port::Leg(l) => take(LegKey::Leaf(l)),
            Port::Vertex(u) if u != from => take(subtree_min(t, u, v)),
            _ => {}
        }
    }
    best.expect("every branch carries a leg")
}

/// Branch key of every slot: the smallest leg reachable through it.
pub fn slot_keys<D: Clone>(t: &Tree<D>) -> (Vec<Vec<LegKey>>, Vec<Vec<LegKey>>) {
    let mut outs = Vec::with_capacity(t.nodes.len());
    let mut ins = Vec::with_capacity(t.nodes.len());
    for (v, node) in t.nodes.iter().enumerate() {
        outs.push(
            node.outs
                .iter()
                .map(|p| match *p {
                    Port::Leg(l) => LegKey::Root(l),
                    Port::Vertex(u) => subtree_min(t, u, v),
                })
                .collect(),
        );
        ins.push(
            node.ins
                .iter()
                .map(|p| match *p {
                    Port::Leg(l) => LegKey::Leaf(l),
                    Port::Vertex(u) => subtree_min(t, u, v),
                })
                .collect(),
        );
    }
    (outs, ins)
}

fn sorted_positions(keys: &[LegKey]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by_key(|&i| keys[i]);
    idx
}

/// Canonical ordering data.
///
/// Labelled genus-0 trees have no nontrivial automorphisms, so ordering slots by the smallest
/// leg behind them and numbering vertices depth first from the vertex carrying root 1 is an
/// exact canonical form.
pub fn canonical_data<D: Clone>(t: &Tree<D>) -> Canon {
    let (okeys, ikeys) = slot_keys(t);
    let out_orders: Vec<Vec<usize>> = okeys.iter().map(|k| sorted_positions(k)).collect();
    let in_orders: Vec<Vec<usize>> = ikeys.iter().map(|k| sorted_positions(k)).collect();
    let start = t.leg_vertex(LegKey::Root(1)).map(|(v, _)| v).unwrap_or(0);
    let mut order = Vec::with_capacity(t.nodes.len());
    let mut stack = vec![(start, usize::MAX)];
    while let Some((v, from)) = stack.pop() {
        order.push(v);
        let node = &t.nodes[v];
        let mut children: Vec<(LegKey, usize)> = Vec::new();
        for (s, p) in node.outs.iter().enumerate() {
            if let Port::Vertex(u) = *p {
                if u != from {
                    children.push((okeys[v][s], u));
                }
            }
        }
        for (s, p) in node.ins.iter().enumerate() {
            if let Port::Vertex(u) = *p {
                if u != from {
                    children.push((ikeys[v][s], u));
                }
            }
        }
        children.sort();
        for (_, u) in children.into_iter().rev() {
            stack.push((u, v));
        }
    }
    Canon { vertex_order: order, out_orders, in_orders }
}

/// Applies canonical data, permuting vertices and slots; decorations are carried unchanged.
pub fn apply_canon<D: Clone>(t: &Tree<D>, c: &Canon) -> Tree<D> {
    let mut permuted = t.clone();
    for (v, node) in permuted.nodes.iter_mut().enumerate() {
        node.outs = c.out_orders[v].iter().map(|&s| t.nodes[v].outs[s]).collect();
        node.ins = c.in_orders[v].iter().map(|&s| t.nodes[v].ins[s]).collect();
    }
    permuted.reorder_vertices(&c.vertex_order)
}

/// Canonical form of an undecorated tree together with the relabeling data.
pub fn canonical_form<D: Clone>(t: &Tree<D>) -> (Tree<D>, Canon) {
    let c = canonical_data(t);
    (apply_canon(t, &c), c)
}

/// Canonical form keeping slot order, reordering vertices only.
pub fn canonical_vertex_order<D: Clone>(t: &Tree<D>) -> (Tree<D>, Vec<usize>) {
    let c = canonical_data(t);
    (t.reorder_vertices(&c.vertex_order), c.vertex_order)
}

/// Isomorphism test by exhaustive search over vertex bijections and slot permutations on
/// symmetric slots; used as an oracle.
pub fn isomorphic_bruteforce(a: &Tree, b: &Tree) -> bool {
    if a.m != b.m || a.n != b.n || a.nodes.len() != b.nodes.len() {
        return false;
    }
    let k = a.nodes.len();
    for perm in crate::exactalg::permutations(k) {
        let ok = (0..k).all(|v| {
            let (x, y) = (&a.nodes[v], &b.nodes[perm[v]]);
            let map = |p: &Port| match *p {
                Port::Vertex(u) => Port::Vertex(perm[u]),
                leg => leg,
            };
            let mut xo: Vec<Port> = x.outs.iter().map(map).collect();
            let mut xi: Vec<Port> = x.ins.iter().map(map).collect();
            let mut yo = y.outs.clone();
            let mut yi = y.ins.clone();
            xo.sort();
            xi.sort();
            yo.sort();
            yi.sort();
            xo == yo && xi == yi
        });
        if ok {
            return true;
        }
    }
    false
}
