//! Opposite, degree-shift and suspension twists of collections and presentations.
//!
//! `⟨p⟩` tensors both sides of an `(m,n)` slot with `sgn^p` and raises degrees by `p(n-m)`.
//! `Λ` tensors both sides with `sgn` and raises degrees by `m+n-2`; `Λ⁻¹` undoes it.
//! A decorated tree picks up the Koszul sign of moving every decoration to the front past
//! the odd half-edges of the vertices before it, with the half-edges then sorted into roots,
//! leaves and `(source, target)` edge pairs.

use super::free::{DTree, Element};
use super::module::Collection;
use super::presentation::{Presentation, Relation};
use crate::error::Result;
use crate::exactalg::reorder_sign;
use crate::treespace::{Node, Port, Tree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    Op,
    Shift(i32),
    Lambda,
    LambdaInverse,
}

/// One elementary sign twist: sign character on both sides and a degree change per slot.
#[derive(Clone, Copy)]
enum Step {
    Up(fn(usize, usize) -> i32),
    Down(fn(usize, usize) -> i32),
}

fn shift_amount(m: usize, n: usize) -> i32 {
    n as i32 - m as i32
}

fn lambda_amount(m: usize, n: usize) -> i32 {
    (m + n) as i32 - 2
}

fn steps(kind: Twist) -> Vec<Step> {
    match kind {
        Twist::Op => Vec::new(),
        Twist::Shift(p) if p >= 0 => vec![Step::Up(shift_amount); p as usize],
        Twist::Shift(p) => vec![Step::Down(shift_amount); p.unsigned_abs() as usize],
        Twist::Lambda => vec![Step::Up(lambda_amount)],
        Twist::LambdaInverse => vec![Step::Down(lambda_amount)],
    }
}

fn step_collection(c: &Collection, step: Step) -> Collection {
    Collection::new(
        c.modules
            .iter()
            .map(|md| {
                let d = match step {
                    Step::Up(f) => f(md.m, md.n),
                    Step::Down(f) => -f(md.m, md.n),
                };
                md.sign_twist(&md.name, 1, d)
            })
            .collect(),
    )
}

fn op_tree<D: Clone>(t: &Tree<D>) -> Tree<D> {
    Tree { m: t.n, n: t.m, nodes: t.nodes.iter().map(|v| Node { outs: v.ins.clone(), ins: v.outs.clone(), deco: v.deco.clone() }).collect() }
}

/// Twisted collection; module names are kept.
pub fn twist_collection(c: &Collection, kind: Twist) -> Collection {
    if kind == Twist::Op {
        return Collection::new(c.modules.iter().map(|m| m.opposite(&m.name)).collect());
    }
    steps(kind).into_iter().fold(c.clone(), |acc, s| step_collection(&acc, s))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Token {
    Deco(usize),
    Root(usize),
    Leaf(usize),
    Edge(usize, usize, bool),
}

/// Sign relating a decorated tree over `c` to the same tree over the once sign-twisted
/// collection.
pub fn twist_sign(c: &Collection, t: &DTree) -> i32 {
    let mut word: Vec<(Token, i32)> = Vec::new();
    for (v, node) in t.nodes.iter().enumerate() {
        word.push((Token::Deco(v), c.degree(node.deco)));
        for p in &node.outs {
            word.push((
                match *p {
                    Port::Leg(k) => Token::Root(k),
                    Port::Vertex(u) => Token::Edge(v, u, false),
                },
                1,
            ));
        }
        for p in &node.ins {
            word.push((
                match *p {
                    Port::Leg(k) => Token::Leaf(k),
                    Port::Vertex(u) => Token::Edge(u, v, true),
                },
                1,
            ));
        }
    }
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i].0);
    let degrees: Vec<i32> = word.iter().map(|w| w.1).collect();
    reorder_sign(&order, &degrees)
}

fn twist_element(source: &Collection, x: &Element) -> Element {
    let mut out = Element::new();
    for (t, c) in x.iter() {
        out.add(t.clone(), c * &crate::exactalg::Rational::int(twist_sign(source, t) as i64));
    }
    out
}

/// Transports an element of `Free(c)` to the twisted free dioperad.
pub fn twist_element_by(c: &Collection, x: &Element, kind: Twist) -> Element {
    if kind == Twist::Op {
        let oc = twist_collection(c, Twist::Op);
        let mut out = Element::new();
        for (t, coef) in x.iter() {
            out.add_scaled(&super::free::canonicalize(&oc, &op_tree(t)), coef);
        }
        return out;
    }
    let mut coll = c.clone();
    let mut cur = x.clone();
    for s in steps(kind) {
        let next = step_collection(&coll, s);
        cur = match s {
            Step::Up(_) => twist_element(&coll, &cur),
            Step::Down(_) => twist_element(&next, &cur),
        };
        coll = next;
    }
    cur
}

fn twisted_name(name: &str, kind: Twist) -> String {
    match kind {
        Twist::Op => match name.strip_suffix("_op") {
            Some(s) => s.to_string(),
            None => format!("{name}_op"),
        },
        Twist::Shift(p) => format!("{name}<{p}>"),
        Twist::Lambda => format!("lambda_{name}"),
        Twist::LambdaInverse => match name.strip_prefix("lambda_") {
            Some(s) => s.to_string(),
            None => format!("lambdainv_{name}"),
        },
    }
}

/// Twisted presentation; relations are transported termwise.
pub fn twist_presentation(p: &Presentation, kind: Twist) -> Result<Presentation> {
    let generators = twist_collection(&p.generators, kind);
    let relations = p
        .relations
        .iter()
        .map(|r| {
            let arity = if kind == Twist::Op { (r.arity.1, r.arity.0) } else { r.arity };
            Relation { name: r.name.clone(), arity, element: twist_element_by(&p.generators, &r.element, kind) }
        })
        .collect();
    let out = Presentation { name: twisted_name(&p.name, kind), generators, relations };
    out.validate()?;
    Ok(out)
}
