//! Quadratic presentations and their text format.
//!
//! ```text
//! presentation lie1bi
//! generator delta 2,1 degree 0 out sign in trivial
//! generator bracket 1,2 degree 1 out trivial in trivial
//! relation jacobi 1,3
//!   1 bracket@a(out:[1], in:[b, leaf(3)]) ; bracket@b(out:[a], in:[leaf(1), leaf(2)])
//!   ...
//! end
//! ```
//! Blank lines and `#` comments are ignored. Coefficients are rationals `p` or `p/q`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::free::{canonicalize, relabel_element, tree_degree, DTree, Element};
use super::module::{Collection, Deco, SideRep, SigmaModule};
use crate::error::{Error, Result};
use crate::exactalg::{permutations, Echelon, Rational};
use crate::treespace::{format_tree, parse_tree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub arity: (usize, usize),
    pub element: Element,
}

/// Generators on `(1,2)` and `(2,1)` with quadratic relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub generators: Collection,
    pub relations: Vec<Relation>,
}

/// Quadratic relation slots.
pub const RELATION_SLOTS: [(usize, usize); 3] = [(1, 3), (2, 2), (3, 1)];

impl Presentation {
    pub fn validate(&self) -> Result<()> {
        for m in &self.generators.modules {
            if !matches!(m.arity(), (1, 2) | (2, 1)) {
                return Err(Error::invalid(format!("generator `{}` must have arity (1,2) or (2,1)", m.name)));
            }
            m.check_action()?;
        }
        for r in &self.relations {
            if !RELATION_SLOTS.contains(&r.arity) {
                return Err(Error::invalid(format!("relation `{}` is not in a quadratic slot", r.name)));
            }
            let mut degrees = BTreeSet::new();
            for t in r.element.keys() {
                if (t.m, t.n) != r.arity || t.nodes.len() != 2 {
                    return Err(Error::invalid(format!("relation `{}` has a term of the wrong shape", r.name)));
                }
                degrees.insert(tree_degree(&self.generators, t));
            }
            if degrees.len() > 1 {
                return Err(Error::invalid(format!("relation `{}` is not homogeneous", r.name)));
            }
        }
        Ok(())
    }

    /// Span of all leg relabelings of the relations in one slot, as an echelon basis over
    /// the given tree basis.
    pub fn relation_span(&self, arity: (usize, usize), basis: &[DTree]) -> Echelon {
        let index: std::collections::HashMap<&DTree, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut e = Echelon::new(basis.len());
        for img in self.relation_images(arity) {
            let v = img.iter().map(|(t, c)| (index[t], c.clone())).collect();
            e.insert(v);
        }
        e
    }

    /// All `Σ_a × Σ_b` images of the relations of the given arity.
    pub fn relation_images(&self, arity: (usize, usize)) -> Vec<Element> {
        let mut out = Vec::new();
        for r in self.relations.iter().filter(|r| r.arity == arity) {
            for po in permutations(arity.0) {
                for pi in permutations(arity.1) {
                    let po1: Vec<usize> = po.iter().map(|x| x + 1).collect();
                    let pi1: Vec<usize> = pi.iter().map(|x| x + 1).collect();
                    let img = relabel_element(&self.generators, &r.element, &po1, &pi1);
                    if !img.is_zero() && !out.contains(&img) {
                        out.push(img);
                    }
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "presentation {}", self.name);
        for m in &self.generators.modules {
            let (o, i) = m.reps.unwrap_or((SideRep::Regular, SideRep::Regular));
            let _ = writeln!(s, "generator {} {},{} degree {} out {} in {}", m.name, m.m, m.n, m.degree, o.keyword(), i.keyword());
        }
        for r in &self.relations {
            let _ = writeln!(s, "relation {} {},{}", r.name, r.arity.0, r.arity.1);
            for (t, c) in r.element.iter() {
                let _ = writeln!(s, "  {} {}", c, format_tree(t, |d| self.generators.deco_name(*d)));
            }
            let _ = writeln!(s, "end");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut modules = Vec::new();
        let mut relations = Vec::new();
        let mut current: Option<(String, (usize, usize), Element)> = None;
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            if let Some((rname, arity, mut elem)) = current.take() {
                if line == "end" {
                    relations.push(Relation { name: rname, arity, element: elem });
                    continue;
                }
                let (coef, tree) = line.split_once(char::is_whitespace).ok_or_else(|| Error::parse(line_no, "expected `coefficient tree`"))?;
                let coef: Rational = coef.parse().map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
                let coll = Collection::new(modules.clone());
                let t = parse_tree(tree).map_err(|e| Error::parse(line_no, e.to_string()))?;
                let mut decos = Vec::new();
                for v in &t.nodes {
                    let d: Deco = coll.parse_deco(&v.deco).map_err(|e| Error::parse(line_no, e.to_string()))?;
                    if coll.module(d).arity() != v.arity() {
                        return Err(Error::parse(line_no, format!("generator `{}` used with the wrong arity", v.deco)));
                    }
                    decos.push(d);
                }
                let mut k = 0;
                let dt = t.map_deco(|_| {
                    k += 1;
                    decos[k - 1]
                });
                if (dt.m, dt.n) != arity {
                    return Err(Error::parse(line_no, "term arity differs from the relation arity"));
                }
                elem.add_scaled(&canonicalize(&coll, &dt), &coef);
                current = Some((rname, arity, elem));
                continue;
            }
            match words[0] {
                "presentation" if words.len() == 2 => name = Some(words[1].to_string()),
                "generator" if words.len() == 9 && words[3] == "degree" && words[5] == "out" && words[7] == "in" => {
                    let (m, n) = parse_arity(words[2]).ok_or_else(|| Error::parse(line_no, "bad arity"))?;
                    let degree: i32 = words[4].parse().map_err(|_| Error::parse(line_no, "bad degree"))?;
                    let o = SideRep::parse(words[6]).map_err(|e| Error::parse(line_no, e.to_string()))?;
                    let i = SideRep::parse(words[8]).map_err(|e| Error::parse(line_no, e.to_string()))?;
                    if modules.iter().any(|x: &SigmaModule| x.name == words[1]) {
                        return Err(Error::parse(line_no, "duplicate generator name"));
                    }
                    modules.push(SigmaModule::from_reps(words[1], m, n, degree, o, i));
                }
                "relation" if words.len() == 3 => {
                    let arity = parse_arity(words[2]).ok_or_else(|| Error::parse(line_no, "bad arity"))?;
                    current = Some((words[1].to_string(), arity, Element::new()));
                }
                _ => return Err(Error::parse(line_no, format!("unrecognized line `{line}`"))),
            }
        }
        if current.is_some() {
            return Err(Error::parse(text.lines().count(), "unterminated relation block"));
        }
        let p = Presentation {
            name: name.ok_or_else(|| Error::parse(1, "missing `presentation` header"))?,
            generators: Collection::new(modules),
            relations,
        };
        p.validate()?;
        Ok(p)
    }
}

fn parse_arity(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}
