//! Text form of trees: `name@v1(out:[1, v2], in:[leaf(1), leaf(2)]) ; name@v2(...)`.
//!
//! Output slots hold a root label `k` (or `root(k)`) or a vertex name; input slots hold
//! `leaf(k)` (or a bare `k`) or a vertex name. Vertex names are arbitrary identifiers.

use std::collections::HashMap;

use super::tree::{Node, Port, Tree};
use crate::error::{Error, Result};

/// Formats a tree, naming vertices `v1, v2, ..` in storage order.
pub fn format_tree<D>(t: &Tree<D>, name: impl Fn(&D) -> String) -> String {
    let mut parts = Vec::new();
    for (i, v) in t.nodes.iter().enumerate() {
        let outs: Vec<String> = v
            .outs
            .iter()
            .map(|p| match *p {
                Port::Leg(l) => l.to_string(),
                Port::Vertex(u) => format!("v{}", u + 1),
            })
            .collect();
        let ins: Vec<String> = v
            .ins
            .iter()
            .map(|p| match *p {
                Port::Leg(l) => format!("leaf({l})"),
                Port::Vertex(u) => format!("v{}", u + 1),
            })
            .collect();
        parts.push(format!("{}@v{}(out:[{}], in:[{}])", name(&v.deco), i + 1, outs.join(", "), ins.join(", ")));
    }
    parts.join(" ; ")
}

enum RawPort {
    Leg(usize),
    Name(String),
}

fn parse_port(tok: &str, leaf_side: bool) -> Result<RawPort> {
    let tok = tok.trim();
    let inner = |prefix: &str| tok.strip_prefix(prefix).and_then(|r| r.strip_suffix(')'));
    if let Some(x) = inner("leaf(") {
        if !leaf_side {
            return Err(Error::invalid(format!("leaf `{tok}` in an output slot")));
        }
        return x.trim().parse().map(RawPort::Leg).map_err(|_| Error::invalid(format!("bad leg `{tok}`")));
    }
    if let Some(x) = inner("root(") {
        if leaf_side {
            return Err(Error::invalid(format!("root `{tok}` in an input slot")));
        }
        return x.trim().parse().map(RawPort::Leg).map_err(|_| Error::invalid(format!("bad leg `{tok}`")));
    }
    if let Ok(l) = tok.parse::<usize>() {
        return Ok(RawPort::Leg(l));
    }
    if tok.is_empty() || !tok.chars().all(|c| c.is_alphanumeric() || c == '_') {
        return Err(Error::invalid(format!("bad slot `{tok}`")));
    }
    Ok(RawPort::Name(tok.to_string()))
}

fn split_list(body: &str) -> Vec<&str> {
    if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',').collect()
    }
}

/// Parses the text form into a tree decorated by the generator names; validates the result.
pub fn parse_tree(s: &str) -> Result<Tree<String>> {
    let mut raw: Vec<(String, String, Vec<RawPort>, Vec<RawPort>)> = Vec::new();
    for chunk in s.split(';') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let bad = || Error::invalid(format!("malformed vertex `{chunk}`"));
        let (gen, rest) = chunk.split_once('@').ok_or_else(bad)?;
        let (vname, rest) = rest.split_once('(').ok_or_else(bad)?;
        let rest = rest.trim().strip_suffix(')').ok_or_else(bad)?;
        let rest = rest.trim().strip_prefix("out:").ok_or_else(bad)?.trim();
        let rest = rest.strip_prefix('[').ok_or_else(bad)?;
        let (outs, rest) = rest.split_once(']').ok_or_else(bad)?;
        let rest = rest.trim().strip_prefix(',').ok_or_else(bad)?.trim();
        let rest = rest.strip_prefix("in:").ok_or_else(bad)?.trim();
        let rest = rest.strip_prefix('[').ok_or_else(bad)?;
        let ins = rest.strip_suffix(']').ok_or_else(bad)?;
        let outs = split_list(outs).into_iter().map(|t| parse_port(t, false)).collect::<Result<Vec<_>>>()?;
        let ins = split_list(ins).into_iter().map(|t| parse_port(t, true)).collect::<Result<Vec<_>>>()?;
        raw.push((gen.trim().to_string(), vname.trim().to_string(), outs, ins));
    }
    if raw.is_empty() {
        return Err(Error::invalid("empty tree term"));
    }
    let mut index = HashMap::new();
    for (i, r) in raw.iter().enumerate() {
        if index.insert(r.1.clone(), i).is_some() {
            return Err(Error::invalid(format!("duplicate vertex name `{}`", r.1)));
        }
    }
    let resolve = |p: &RawPort| -> Result<Port> {
        match p {
            RawPort::Leg(l) => Ok(Port::Leg(*l)),
            RawPort::Name(n) => index.get(n).map(|&u| Port::Vertex(u)).ok_or_else(|| Error::invalid(format!("unknown vertex `{n}`"))),
        }
    };
    let mut nodes = Vec::new();
    let (mut m, mut n) = (0, 0);
    for (gen, _, outs, ins) in &raw {
        let outs = outs.iter().map(resolve).collect::<Result<Vec<_>>>()?;
        let ins = ins.iter().map(resolve).collect::<Result<Vec<_>>>()?;
        m += outs.iter().filter(|p| matches!(p, Port::Leg(_))).count();
        n += ins.iter().filter(|p| matches!(p, Port::Leg(_))).count();
        nodes.push(Node { outs, ins, deco: gen.clone() });
    }
    let t = Tree { m, n, nodes };
    t.validate()?;
    Ok(t)
}
