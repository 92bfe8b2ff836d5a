use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// One end of a vertex slot: an external leg or an internal edge to another vertex.
///
/// In an output slot, `Leg(k)` is root `k` and `Vertex(u)` is an edge into an input of `u`.
/// In an input slot, `Leg(k)` is leaf `k` and `Vertex(u)` is an edge out of an output of `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Port {
    Leg(usize),
    Vertex(usize),
}

/// Leg identity used for ordering branches: roots sort before leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LegKey {
    Root(usize),
    Leaf(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node<D> {
    pub outs: Vec<Port>,
    pub ins: Vec<Port>,
    pub deco: D,
}

impl<D> Node<D> {
    pub fn arity(&self) -> (usize, usize) {
        (self.outs.len(), self.ins.len())
    }
}

/// Directed genus-0 tree with `m` labelled roots and `n` labelled leaves.
/// Flow runs from leaves (bottom) to roots (top).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree<D = ()> {
    pub m: usize,
    pub n: usize,
    pub nodes: Vec<Node<D>>,
}

impl<D: Clone> Tree<D> {
    pub fn corolla(m: usize, n: usize, deco: D) -> Self {
        Tree {
            m,
            n,
            nodes: vec![Node {
                outs: (1..=m).map(Port::Leg).collect(),
                ins: (1..=n).map(Port::Leg).collect(),
                deco,
            }],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.iter().map(|v| v.outs.iter().filter(|p| matches!(p, Port::Vertex(_))).count()).sum()
    }

    /// Internal edges as (source, source output slot, target, target input slot).
    pub fn edges(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for (v, node) in self.nodes.iter().enumerate() {
            for (s, p) in node.outs.iter().enumerate() {
                if let Port::Vertex(u) = *p {
                    let t = self.nodes[u].ins.iter().position(|q| *q == Port::Vertex(v)).expect("edge symmetry");
                    out.push((v, s, u, t));
                }
            }
        }
        out
    }

    /// Undecorated copy.
    pub fn shape(&self) -> Tree<()> {
        self.map_deco(|_| ())
    }

    pub fn map_deco<E>(&self, mut f: impl FnMut(&D) -> E) -> Tree<E> {
        Tree {
            m: self.m,
            n: self.n,
            nodes: self
                .nodes
                .iter()
                .map(|v| Node { outs: v.outs.clone(), ins: v.ins.clone(), deco: f(&v.deco) })
                .collect(),
        }
    }

    /// Checks connectivity, acyclicity, edge symmetry and leg bijections.
    pub fn validate(&self) -> Result<()> {
        let k = self.nodes.len();
        if k == 0 {
            return Err(Error::invalid("tree has no vertices"));
        }
        let mut roots = BTreeSet::new();
        let mut leaves = BTreeSet::new();
        let mut edges = 0;
        for (v, node) in self.nodes.iter().enumerate() {
            if node.outs.is_empty() || node.ins.is_empty() {
                return Err(Error::invalid(format!("vertex {v} lacks an input or an output")));
            }
            for p in &node.outs {
                match *p {
                    Port::Leg(l) => {
                        if l == 0 || l > self.m || !roots.insert(l) {
                            return Err(Error::invalid(format!("bad root label {l}")));
                        }
                    }
                    Port::Vertex(u) => {
                        if u >= k || u == v || self.nodes[u].ins.iter().filter(|q| **q == Port::Vertex(v)).count() != 1 {
                            return Err(Error::invalid(format!("edge {v}->{u} is not symmetric")));
                        }
                        edges += 1;
                    }
                }
            }
            for p in &node.ins {
                match *p {
                    Port::Leg(l) => {
                        if l == 0 || l > self.n || !leaves.insert(l) {
                            return Err(Error::invalid(format!("bad leaf label {l}")));
                        }
                    }
                    Port::Vertex(u) => {
                        if u >= k || u == v || self.nodes[u].outs.iter().filter(|q| **q == Port::Vertex(v)).count() != 1 {
                            return Err(Error::invalid(format!("edge {u}->{v} is not symmetric")));
                        }
                    }
                }
            }
        }
        if roots.len() != self.m || leaves.len() != self.n {
            return Err(Error::invalid("leg labels are not a bijection"));
        }
        if edges != k - 1 {
            return Err(Error::invalid("edge count does not match a tree"));
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for p in self.nodes[v].outs.iter().chain(&self.nodes[v].ins) {
                if let Port::Vertex(u) = *p {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::invalid("tree is disconnected"));
        }
        Ok(())
    }

    /// Vertex carrying the given leg.
    pub fn leg_vertex(&self, leg: LegKey) -> Option<(usize, usize)> {
        for (v, node) in self.nodes.iter().enumerate() {
            match leg {
                LegKey::Root(l) => {
                    if let Some(s) = node.outs.iter().position(|p| *p == Port::Leg(l)) {
                        return Some((v, s));
                    }
                }
                LegKey::Leaf(l) => {
                    if let Some(s) = node.ins.iter().position(|p| *p == Port::Leg(l)) {
                        return Some((v, s));
                    }
                }
            }
        }
        None
    }

    /// Renames legs: root `k` becomes `outs[k-1]`, leaf `k` becomes `ins[k-1]`.
    pub fn relabel(&self, outs: &[usize], ins: &[usize]) -> Self {
        let mut t = self.clone();
        for node in t.nodes.iter_mut() {
            for p in node.outs.iter_mut() {
                if let Port::Leg(l) = p {
                    *l = outs[*l - 1];
                }
            }
            for p in node.ins.iter_mut() {
                if let Port::Leg(l) = p {
                    *l = ins[*l - 1];
                }
            }
        }
        t
    }

    /// Reorders vertices: new vertex `i` is old vertex `order[i]`.
    pub fn reorder_vertices(&self, order: &[usize]) -> Self {
        let mut pos = vec![0; order.len()];
        for (i, &o) in order.iter().enumerate() {
            pos[o] = i;
        }
        let remap = |p: &Port| match *p {
            Port::Vertex(u) => Port::Vertex(pos[u]),
            leg => leg,
        };
        Tree {
            m: self.m,
            n: self.n,
            nodes: order
                .iter()
                .map(|&o| {
                    let v = &self.nodes[o];
                    Node { outs: v.outs.iter().map(remap).collect(), ins: v.ins.iter().map(remap).collect(), deco: v.deco.clone() }
                })
                .collect(),
        }
    }

    /// True iff every vertex carries a root or two outgoing internal edges, and a leaf or two
    /// incoming internal edges.
    pub fn is_reduced(&self) -> bool {
        self.nodes.iter().all(|v| {
            let out_edges = v.outs.iter().filter(|p| matches!(p, Port::Vertex(_))).count();
            let in_edges = v.ins.iter().filter(|p| matches!(p, Port::Vertex(_))).count();
            let has_root = out_edges < v.outs.len();
            let has_leaf = in_edges < v.ins.len();
            (has_root || out_edges >= 2) && (has_leaf || in_edges >= 2)
        })
    }
}

/// Grafts root `j` of `lower` into leaf `i` of `upper`.
///
/// Legs are renumbered by the interval rule: inputs are `upper[..i)`, `lower`, `upper(i..]`;
/// outputs are `lower[..j)`, `upper`, `lower(j..]`. Vertices of `upper` come first.
pub fn graft<D: Clone>(upper: &Tree<D>, i: usize, lower: &Tree<D>, j: usize) -> Result<Tree<D>> {
    if i == 0 || i > upper.n || j == 0 || j > lower.m {
        return Err(Error::invalid(format!("graft indices ({i},{j}) out of range")));
    }
    let (m1, n2) = (upper.m, lower.n);
    let off = upper.nodes.len();
    let (uv, us) = upper.leg_vertex(LegKey::Leaf(i)).expect("leaf present");
    let (lv, ls) = lower.leg_vertex(LegKey::Root(j)).expect("root present");
    let mut nodes = Vec::with_capacity(off + lower.nodes.len());
    for node in &upper.nodes {
        let outs = node.outs.iter().map(|p| match *p {
            Port::Leg(l) => Port::Leg(l + j - 1),
            e => e,
        });
        let ins = node.ins.iter().map(|p| match *p {
            Port::Leg(l) if l < i => Port::Leg(l),
            Port::Leg(l) if l > i => Port::Leg(l + n2 - 1),
            e => e,
        });
        nodes.push(Node { outs: outs.collect(), ins: ins.collect(), deco: node.deco.clone() });
    }
    for node in &lower.nodes {
        let outs = node.outs.iter().map(|p| match *p {
            Port::Leg(l) if l < j => Port::Leg(l),
            Port::Leg(l) if l > j => Port::Leg(l + m1 - 1),
            Port::Vertex(u) => Port::Vertex(u + off),
            e => e,
        });
        let ins = node.ins.iter().map(|p| match *p {
            Port::Leg(l) => Port::Leg(l + i - 1),
            Port::Vertex(u) => Port::Vertex(u + off),
        });
        nodes.push(Node { outs: outs.collect(), ins: ins.collect(), deco: node.deco.clone() });
    }
    nodes[uv].ins[us] = Port::Vertex(lv + off);
    nodes[lv + off].outs[ls] = Port::Vertex(uv);
    Ok(Tree { m: upper.m + lower.m - 1, n: upper.n + lower.n - 1, nodes })
}
