use std::collections::{BTreeSet, HashMap};

use super::canon::canonical_form;
use super::tree::{LegKey, Node, Port, Tree};
use crate::error::{Error, Result};

/// Slot side of the attaching leg of a branch.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Attach {
    /// The branch hangs above a vertex: it attaches through one of its leaves.
    ViaLeaf,
    /// The branch hangs below a vertex: it attaches through one of its roots.
    ViaRoot,
}

/// Generated branch: nodes with local indices, node 0 carrying the attaching leg `Leg(0)`.
type Branch = Vec<Node<()>>;

struct Generator<'a> {
    arities: &'a BTreeSet<(usize, usize)>,
    max_vertices: usize,
    memo: HashMap<(Vec<LegKey>, Attach), Vec<Branch>>,
}

fn set_partitions(items: &[LegKey]) -> Vec<Vec<Vec<LegKey>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<LegKey>> = Vec::new();
    fn rec(items: &[LegKey], k: usize, blocks: &mut Vec<Vec<LegKey>>, out: &mut Vec<Vec<Vec<LegKey>>>) {
        if k == items.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(items[k]);
            rec(items, k + 1, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![items[k]]);
        rec(items, k + 1, blocks, out);
        blocks.pop();
    }
    rec(items, 0, &mut blocks, &mut out);
    out
}

fn shift_ports(nodes: &Branch, offset: usize, parent: usize) -> Branch {
    nodes
        .iter()
        .map(|v| {
            let f = |p: &Port| match *p {
                Port::Leg(0) => Port::Vertex(parent),
                Port::Vertex(u) => Port::Vertex(u + offset),
                leg => leg,
            };
            Node { outs: v.outs.iter().map(f).collect(), ins: v.ins.iter().map(f).collect(), deco: () }
        })
        .collect()
}

impl<'a> Generator<'a> {
    /// All branches on leg set `legs` plus the attaching leg, rooted at the vertex holding it.
    fn branches(&mut self, legs: &[LegKey], attach: Attach) -> Vec<Branch> {
        let key = (legs.to_vec(), attach);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut result = Vec::new();
        for blocks in set_partitions(legs) {
            let multi: Vec<usize> = (0..blocks.len()).filter(|&b| blocks[b].len() > 1).collect();
            for mask in 0u32..(1u32 << multi.len()) {
                let mut out_blocks = Vec::new();
                let mut in_blocks = Vec::new();
                let mut ok = true;
                for (b, block) in blocks.iter().enumerate() {
                    let on_out = if block.len() == 1 {
                        matches!(block[0], LegKey::Root(_))
                    } else {
                        let bit = multi.iter().position(|&x| x == b).unwrap();
                        mask & (1 << bit) != 0
                    };
                    if block.len() > 1 {
                        let has_root = block.iter().any(|k| matches!(k, LegKey::Root(_)));
                        let has_leaf = block.iter().any(|k| matches!(k, LegKey::Leaf(_)));
                        // a branch above needs its own root; a branch below needs its own leaf
                        if (on_out && !has_root) || (!on_out && !has_leaf) {
                            ok = false;
                            break;
                        }
                    }
                    if on_out {
                        out_blocks.push(block.clone());
                    } else {
                        in_blocks.push(block.clone());
                    }
                }
                if !ok {
                    continue;
                }
                let arity = match attach {
                    Attach::ViaLeaf => (out_blocks.len(), in_blocks.len() + 1),
                    Attach::ViaRoot => (out_blocks.len() + 1, in_blocks.len()),
                };
                if !self.arities.contains(&arity) {
                    continue;
                }
                out_blocks.sort();
                in_blocks.sort();
                self.assemble(&out_blocks, &in_blocks, attach, &mut result);
            }
        }
        self.memo.insert(key, result.clone());
        result
    }

    fn assemble(&mut self, out_blocks: &[Vec<LegKey>], in_blocks: &[Vec<LegKey>], attach: Attach, result: &mut Vec<Branch>) {
        // each block is a single leg or a list of alternative branches
        let mut choices: Vec<(bool, Vec<Branch>)> = Vec::new();
        for (on_out, blocks) in [(true, out_blocks), (false, in_blocks)] {
            for block in blocks {
                if block.len() == 1 {
                    continue;
                }
                let sub = self.branches(block, if on_out { Attach::ViaLeaf } else { Attach::ViaRoot });
                if sub.is_empty() {
                    return;
                }
                choices.push((on_out, sub));
            }
        }
        let mut idx = vec![0usize; choices.len()];
        loop {
            let total: usize = 1 + choices.iter().zip(&idx).map(|(c, &i)| c.1[i].len()).sum::<usize>();
            if total <= self.max_vertices {
                let mut nodes: Branch = vec![Node { outs: Vec::new(), ins: Vec::new(), deco: () }];
                let mut ci = 0;
                let mut outs = Vec::new();
                let mut ins = Vec::new();
                if attach == Attach::ViaRoot {
                    outs.push(Port::Leg(0));
                } else {
                    ins.push(Port::Leg(0));
                }
                for (on_out, blocks) in [(true, out_blocks), (false, in_blocks)] {
                    for block in blocks {
                        let port = if block.len() == 1 {
                            match block[0] {
                                LegKey::Root(l) | LegKey::Leaf(l) => Port::Leg(l),
                            }
                        } else {
                            let sub = &choices[ci].1[idx[ci]];
                            ci += 1;
                            let off = nodes.len();
                            nodes.extend(shift_ports(sub, off, 0));
                            Port::Vertex(off)
                        };
                        if on_out {
                            outs.push(port);
                        } else {
                            ins.push(port);
                        }
                    }
                }
                nodes[0].outs = outs;
                nodes[0].ins = ins;
                result.push(nodes);
            }
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return;
                }
                idx[k] += 1;
                if idx[k] < choices[k].1.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

/// One canonical representative of every labelled `(m,n)`-tree whose vertex arities lie in
/// `arities` and which has at most `max_vertices` vertices, sorted.
pub fn enumerate_trees(m: usize, n: usize, arities: &[(usize, usize)], max_vertices: usize) -> Result<Vec<Tree>> {
    if arities.is_empty() {
        return Err(Error::invalid("empty arity set"));
    }
    if m == 0 || n == 0 {
        return Err(Error::invalid("trees need m, n >= 1"));
    }
    let allowed: BTreeSet<(usize, usize)> = arities.iter().copied().collect();
    let mut gen = Generator { arities: &allowed, max_vertices, memo: HashMap::new() };
    let mut legs: Vec<LegKey> = (2..=m).map(LegKey::Root).collect();
    legs.extend((1..=n).map(LegKey::Leaf));
    let mut out = BTreeSet::new();
    for nodes in gen.branches(&legs, Attach::ViaRoot) {
        let nodes = nodes
            .into_iter()
            .map(|v| {
                let outs = v.outs.into_iter().map(|p| if p == Port::Leg(0) { Port::Leg(1) } else { p }).collect();
                Node { outs, ins: v.ins, deco: () }
            })
            .collect();
        let t = Tree { m, n, nodes };
        debug_assert!(t.validate().is_ok());
        out.insert(canonical_form(&t).0);
    }
    Ok(out.into_iter().collect())
}

/// Trees with every vertex of total valence three.
pub fn trivalent_arities() -> Vec<(usize, usize)> {
    vec![(1, 2), (2, 1)]
}

/// All arities `(a,b)` with `a,b >= 1` and `3 <= a+b <= cap`.
pub fn arities_up_to(cap: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for s in 3..=cap {
        for a in 1..s {
            v.push((a, s - a));
        }
    }
    v
}
