//! Explicit minimal resolutions as free dioperads on one family of corolla generators, with
//! closed-form differentials on generators extended as derivations.
//!
//! Three families are available:
//! * `lie1bi`: one generator per `(m,n)` with `m+n >= 3`, skew outputs, symmetric inputs,
//!   degree `2-m`;
//! * `tf`: a regular pair of `(2,n)` generators in degree 0 for `n >= 1` and one `(1,n)`
//!   generator in degree 1 for `n >= 2`, inputs symmetric;
//! * `liebi`: the once-twisted Lie bialgebra family, one symmetric generator per `(m,n)` with
//!   `m+n >= 3` in degree `3-2m`.
//!
//! A two-vertex term of a generator differential is stored with the lower vertex first; the
//! lower vertex lists its outgoing legs in the order drawn, with the new edge in the drawn
//! position, and the upper vertex takes the new edge as its first input.

mod complex;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::dioperad::{canonicalize, relabel_element, substitute_element, Collection, DTree, Deco, Element, SideRep, SigmaModule};
use crate::error::{Error, Result};
use crate::exactalg::{parity, subsets, Rational};
use crate::treespace::{format_tree, parse_tree, Node, Port, Tree};

pub use complex::{presentation_check, PresentationCheck, ResolutionComplex};

/// Which closed-form resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResolutionKind {
    Lie1Bi,
    Tf,
    LieBi,
}

impl ResolutionKind {
    pub const ALL: [ResolutionKind; 3] = [ResolutionKind::Lie1Bi, ResolutionKind::Tf, ResolutionKind::LieBi];

    pub fn name(self) -> &'static str {
        match self {
            ResolutionKind::Lie1Bi => "lie1bi",
            ResolutionKind::Tf => "tf",
            ResolutionKind::LieBi => "liebi",
        }
    }

    /// Generator degree and side characters at arity `(m,n)`, if there is a generator there.
    fn generator(self, m: usize, n: usize, unary: bool) -> Option<(i32, SideRep)> {
        if m == 0 || n == 0 || m + n < if unary { 2 } else { 3 } {
            return None;
        }
        match self {
            ResolutionKind::Lie1Bi => Some((2 - m as i32, SideRep::Sign)),
            ResolutionKind::LieBi => Some((3 - 2 * m as i32, SideRep::Trivial)),
            ResolutionKind::Tf => match m {
                1 => Some((1, SideRep::Trivial)),
                2 => Some((0, SideRep::Regular)),
                _ => None,
            },
        }
    }
}

impl fmt::Display for ResolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ResolutionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ResolutionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown resolution `{s}` (expected lie1bi, tf or liebi)")))
    }
}

/// Free dioperad on the generators of one resolution with `m+n <= cap`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub kind: ResolutionKind,
    pub cap: usize,
    /// Whether the `(1,1)` generator of degree one (the linear differential) is included.
    pub unary: bool,
    coll: Collection,
    ids: BTreeMap<(usize, usize), u16>,
}

/// One two-vertex splitting: outgoing legs of the lower vertex (new edge included), its
/// incoming legs, outgoing legs of the upper vertex, its remaining incoming legs, and the
/// coefficient.
struct Split {
    lower_outs: Vec<Port>,
    lower_ins: Vec<usize>,
    upper_outs: Vec<usize>,
    upper_ins: Vec<usize>,
    coef: i64,
}

impl Resolution {
    pub fn new(kind: ResolutionKind, cap: usize) -> Result<Self> {
        Self::build(kind, cap, false)
    }

    /// The resolution together with a `(1,1)` generator of degree one. Its differential is
    /// given by the same closed form; representations of it are dg structures whose linear
    /// part is arbitrary.
    pub fn with_unary(kind: ResolutionKind, cap: usize) -> Result<Self> {
        Self::build(kind, cap, true)
    }

    fn build(kind: ResolutionKind, cap: usize, unary: bool) -> Result<Self> {
        if cap < 3 {
            return Err(Error::invalid("resolution window needs m+n cap >= 3"));
        }
        let mut modules = Vec::new();
        let mut ids = BTreeMap::new();
        for s in 2..=cap {
            for m in 1..s {
                let n = s - m;
                if let Some((deg, out)) = kind.generator(m, n, unary) {
                    ids.insert((m, n), modules.len() as u16);
                    modules.push(SigmaModule::from_reps(&format!("g{m}_{n}"), m, n, deg, out, SideRep::Trivial));
                }
            }
        }
        Ok(Resolution { kind, cap, unary, coll: Collection::new(modules), ids })
    }

    pub fn collection(&self) -> &Collection {
        &self.coll
    }

    /// All generator decorations, in arity order.
    pub fn generators(&self) -> Vec<Deco> {
        self.ids.keys().flat_map(|&a| self.coll.decorations(a)).collect()
    }

    /// Decoration of the generator at `(m,n)`; `basis` picks the output ordering of a regular pair.
    pub fn generator(&self, m: usize, n: usize, basis: u16) -> Result<Deco> {
        if m + n > self.cap {
            return Err(Error::WindowInsufficient(format!("arity ({m},{n}) exceeds the window {}", self.cap)));
        }
        let module = *self.ids.get(&(m, n)).ok_or_else(|| Error::invalid(format!("no {} generator at ({m},{n})", self.kind)))?;
        if basis as usize >= self.coll.modules[module as usize].dim {
            return Err(Error::invalid("generator basis index out of range"));
        }
        Ok(Deco { module, basis })
    }

    pub fn corolla(&self, d: Deco) -> DTree {
        let md = self.coll.module(d);
        Tree::corolla(md.m, md.n, d)
    }

    fn lookup(&self, m: usize, n: usize) -> Option<u16> {
        self.ids.get(&(m, n)).copied()
    }

    /// Candidate splittings; those whose vertices carry no generator are dropped by the caller.
    fn splits(&self, m: usize, n: usize) -> Vec<Split> {
        let mut out = Vec::new();
        let legs = |set: &[usize]| set.iter().map(|&i| i + 1).collect::<Vec<usize>>();
        let complement = |set: &[usize], size: usize| (0..size).filter(|i| !set.contains(i)).collect::<Vec<usize>>();
        for j1 in subsets(n) {
            let j2 = complement(&j1, n);
            match (self.kind, m) {
                (ResolutionKind::Tf, 1) => {
                    out.push(Split { lower_outs: vec![Port::Vertex(1)], lower_ins: legs(&j1), upper_outs: vec![1], upper_ins: legs(&j2), coef: 1 });
                }
                (ResolutionKind::Tf, _) => {
                    out.push(Split { lower_outs: vec![Port::Vertex(1)], lower_ins: legs(&j1), upper_outs: vec![1, 2], upper_ins: legs(&j2), coef: 1 });
                    out.push(Split { lower_outs: vec![Port::Leg(1), Port::Vertex(1)], lower_ins: legs(&j1), upper_outs: vec![2], upper_ins: legs(&j2), coef: -1 });
                    out.push(Split { lower_outs: vec![Port::Vertex(1), Port::Leg(2)], lower_ins: legs(&j1), upper_outs: vec![1], upper_ins: legs(&j2), coef: -1 });
                }
                _ => {
                    if j1.is_empty() {
                        continue;
                    }
                    for i2 in subsets(m) {
                        if i2.is_empty() {
                            continue;
                        }
                        let i1 = complement(&i2, m);
                        let coef = if self.kind == ResolutionKind::Lie1Bi {
                            let shuffle: Vec<usize> = i1.iter().chain(&i2).copied().collect();
                            let s = parity(&shuffle) as i64;
                            if (i1.len() * i2.len()) % 2 == 1 {
                                -s
                            } else {
                                s
                            }
                        } else {
                            1
                        };
                        let lower_outs = i1.iter().map(|&i| Port::Leg(i + 1)).chain([Port::Vertex(1)]).collect();
                        out.push(Split { lower_outs, lower_ins: legs(&j1), upper_outs: legs(&i2), upper_ins: legs(&j2), coef });
                    }
                }
            }
        }
        out
    }

    /// Differential of the corolla decorated by a generator.
    pub fn d_generator(&self, g: Deco) -> Result<Element> {
        let md = self.coll.module(g);
        let (m, n) = (md.m, md.n);
        if g.basis != 0 {
            // the second member of a regular pair is the first with its two outputs swapped
            let first = self.d_generator(Deco { module: g.module, basis: 0 })?;
            return Ok(relabel_element(&self.coll, &first, &[2, 1], &(1..=n).collect::<Vec<_>>()));
        }
        let mut out = Element::new();
        for s in self.splits(m, n) {
            let lower = (s.lower_outs.len(), s.lower_ins.len());
            let upper = (s.upper_outs.len(), s.upper_ins.len() + 1);
            let (Some(lm), Some(um)) = (self.lookup(lower.0, lower.1), self.lookup(upper.0, upper.1)) else {
                continue;
            };
            let tree = Tree {
                m,
                n,
                nodes: vec![
                    Node { outs: s.lower_outs.clone(), ins: s.lower_ins.iter().map(|&j| Port::Leg(j)).collect(), deco: Deco { module: lm, basis: 0 } },
                    Node {
                        outs: s.upper_outs.iter().map(|&i| Port::Leg(i)).collect(),
                        ins: std::iter::once(Port::Vertex(0)).chain(s.upper_ins.iter().map(|&j| Port::Leg(j))).collect(),
                        deco: Deco { module: um, basis: 0 },
                    },
                ],
            };
            out.add_scaled(&canonicalize(&self.coll, &tree), &Rational::int(s.coef));
        }
        Ok(out)
    }

    /// Differential of the generator at `(m,n)`.
    pub fn d_corolla(&self, m: usize, n: usize, basis: u16) -> Result<Element> {
        self.d_generator(self.generator(m, n, basis)?)
    }

    /// Extends the generator differential as a degree one derivation; vertices are read in
    /// tree order and the differential passes each decoration with its Koszul sign.
    pub fn differential(&self, x: &Element) -> Result<Element> {
        let mut cache: BTreeMap<Deco, Element> = BTreeMap::new();
        let mut out = Element::new();
        for (t, coef) in x.iter() {
            let mut passed = 0i32;
            for (v, node) in t.nodes.iter().enumerate() {
                if !cache.contains_key(&node.deco) {
                    cache.insert(node.deco, self.d_generator(node.deco)?);
                }
                let sign = if passed % 2 == 0 { coef.clone() } else { -coef.clone() };
                substitute_element(&self.coll, t, v, &cache[&node.deco], &sign, &mut out)?;
                passed += self.coll.degree(node.deco);
            }
        }
        Ok(out)
    }

    /// Element rendered one `coefficient tree` term per line, in canonical order.
    pub fn format_element(&self, x: &Element) -> String {
        let mut s = String::new();
        for (t, c) in x.iter() {
            s.push_str(&format!("  {} {}\n", c, format_tree(t, |d| self.coll.deco_name(*d))));
        }
        s
    }

    /// Parses a tree in the text syntax over the generator names and canonicalizes it.
    pub fn parse_term(&self, text: &str) -> Result<Element> {
        let raw = parse_tree(text)?;
        let mut nodes = Vec::with_capacity(raw.nodes.len());
        for v in raw.nodes {
            let deco = self.coll.parse_deco(&v.deco)?;
            if self.coll.module(deco).arity() != (v.outs.len(), v.ins.len()) {
                return Err(Error::invalid(format!("generator `{}` used with the wrong arity", v.deco)));
            }
            nodes.push(Node { outs: v.outs, ins: v.ins, deco });
        }
        Ok(canonicalize(&self.coll, &Tree { m: raw.m, n: raw.n, nodes }))
    }

    /// Differentials of all generators, one block per generator.
    pub fn differential_table(&self) -> Result<String> {
        let mut s = format!("resolution {} window {}\n", self.kind, self.cap);
        for g in self.generators() {
            s.push_str(&format!("d {} =\n", self.coll.deco_name(g)));
            s.push_str(&self.format_element(&self.d_generator(g)?));
        }
        Ok(s)
    }

    /// `d(d(g))` for a generator.
    pub fn d_squared(&self, g: Deco) -> Result<Element> {
        self.differential(&self.d_generator(g)?)
    }
}

/// Differential of the `(m,n)` generator of the Lie 1-bialgebra resolution.
pub fn d_lie1bi(m: usize, n: usize) -> Result<(Resolution, Element)> {
    d_in(ResolutionKind::Lie1Bi, m, n, 0)
}

/// Differential of a generator of the twisted-Frobenius resolution; `basis` selects the output
/// order of a `(2,n)` generator.
pub fn d_tf(m: usize, n: usize, basis: u16) -> Result<(Resolution, Element)> {
    if n < 2 && m == 1 || !(1..=2).contains(&m) {
        return Err(Error::invalid(format!("no tf generator at ({m},{n})")));
    }
    d_in(ResolutionKind::Tf, m, n, basis)
}

/// Differential of the `(m,n)` generator of the twisted Lie bialgebra resolution.
pub fn d_liebi(m: usize, n: usize) -> Result<(Resolution, Element)> {
    d_in(ResolutionKind::LieBi, m, n, 0)
}

fn d_in(kind: ResolutionKind, m: usize, n: usize, basis: u16) -> Result<(Resolution, Element)> {
    if m == 0 || n == 0 || m + n < 3 {
        return Err(Error::invalid(format!("generator arity ({m},{n}) needs m, n >= 1 and m+n >= 3")));
    }
    let r = Resolution::new(kind, m + n)?;
    let d = r.d_corolla(m, n, basis)?;
    Ok((r, d))
}
