//! Families of structure maps given by coefficient arrays, and their text format.
//!
//! `mu[m,n][b1 .. bm|a1 .. an] = p/q` is the coefficient of `e_{b1}⊗..⊗e_{bm}` in the image
//! of `e_{a1}⊗..⊗e_{an}`; arrays are full tensors, so a graded-skew output contributes through
//! every ordering of its indices. Indices are 1-based positions or basis labels.
//!
//! Per model:
//! * `lie1bi`: maps `⊙^n V → ∧^m V` of degree `2-m`, `m,n >= 1`;
//! * `liebi`: maps `⊙^n W → ⊙^m W` of degree `3-2m` on `W = V[1]`, `m,n >= 1`;
//! * `tf`: `mu[1,n]` of degree 1 (the vector field) and `phi[2,n]` of degree 0 with ordered
//!   outputs (the rank-2 tensor), `n >= 1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::coords::Model;
use super::gendo::{GMap, Slot};
use crate::error::{Error, Result};
use crate::exactalg::{reorder_sign, GradedSpace, Rational};

/// Symmetry type of the outputs of an arity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputSymmetry {
    Symmetric,
    Skew,
    Ordered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorCollection {
    model: Model,
    space: GradedSpace,
    arrays: BTreeMap<(usize, usize), BTreeMap<Slot, Rational>>,
}

fn sort_with_sign(idx: &[u8], degrees: &[i32]) -> (Vec<u8>, i32) {
    let mut order: Vec<usize> = (0..idx.len()).collect();
    order.sort_by_key(|&k| (idx[k], k));
    let d: Vec<i32> = idx.iter().map(|&a| degrees[a as usize]).collect();
    let sorted = order.iter().map(|&k| idx[k]).collect();
    (sorted, reorder_sign(&order, &d))
}

fn permutation_parity(idx: &[u8]) -> i32 {
    let mut inv = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn has_repeat(sorted: &[u8], degrees: &[i32], parity: i32) -> bool {
    sorted.windows(2).any(|w| w[0] == w[1] && degrees[w[0] as usize].rem_euclid(2) == parity)
}

impl TensorCollection {
    pub fn new(model: Model, space: GradedSpace) -> Self {
        TensorCollection { model, space, arrays: BTreeMap::new() }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Degrees of the space the maps act on.
    pub fn acting_degrees(&self) -> Vec<i32> {
        match self.model {
            Model::LieBi => self.space.degrees().iter().map(|d| d - 1).collect(),
            _ => self.space.degrees(),
        }
    }

    pub fn allows(&self, m: usize, n: usize) -> bool {
        m >= 1 && n >= 1 && (self.model != Model::Tf || m <= 2)
    }

    /// Degree of the maps of arity `(m,n)`.
    pub fn map_degree(&self, m: usize) -> i32 {
        match self.model {
            Model::Lie1Bi => 2 - m as i32,
            Model::LieBi => 3 - 2 * m as i32,
            Model::Tf => i32::from(m == 1),
        }
    }

    pub fn output_symmetry(&self, m: usize) -> OutputSymmetry {
        match (self.model, m) {
            (Model::Lie1Bi, _) => OutputSymmetry::Skew,
            (Model::Tf, 2) => OutputSymmetry::Ordered,
            _ => OutputSymmetry::Symmetric,
        }
    }

    /// Canonical key of an index pair and the sign relating the two coefficients; `None`
    /// when the symmetries force the coefficient to vanish.
    pub fn canonical(&self, m: usize, outs: &[u8], ins: &[u8]) -> Option<(Slot, i32)> {
        let deg = self.acting_degrees();
        let (si, s_in) = sort_with_sign(ins, &deg);
        if has_repeat(&si, &deg, 1) {
            return None;
        }
        let (so, s_out) = match self.output_symmetry(m) {
            OutputSymmetry::Ordered => (outs.to_vec(), 1),
            OutputSymmetry::Symmetric => {
                let (so, s) = sort_with_sign(outs, &deg);
                if has_repeat(&so, &deg, 1) {
                    return None;
                }
                (so, s)
            }
            OutputSymmetry::Skew => {
                let (so, s) = sort_with_sign(outs, &deg);
                if has_repeat(&so, &deg, 0) {
                    return None;
                }
                (so, s * permutation_parity(outs))
            }
        };
        Some(((so, si), s_in * s_out))
    }

    fn check_arity(&self, m: usize, n: usize, outs: &[u8], ins: &[u8]) -> Result<()> {
        if !self.allows(m, n) {
            return Err(Error::invalid(format!("no {} structure map of arity ({m},{n})", self.model)));
        }
        if outs.len() != m || ins.len() != n {
            return Err(Error::invalid(format!("arity ({m},{n}) needs {m} output and {n} input indices")));
        }
        if outs.iter().chain(ins).any(|&a| a as usize >= self.dim()) {
            return Err(Error::invalid("index outside the basis"));
        }
        Ok(())
    }

    /// Coefficient for arbitrary index order.
    pub fn get(&self, m: usize, n: usize, outs: &[u8], ins: &[u8]) -> Rational {
        match self.canonical(m, outs, ins) {
            None => Rational::zero(),
            Some((key, s)) => match self.arrays.get(&(m, n)).and_then(|a| a.get(&key)) {
                Some(v) => Rational::sign(s) * v,
                None => Rational::zero(),
            },
        }
    }

    /// Sets a coefficient (and all its symmetric images), checking symmetry and degree.
    /// A second entry for the same canonical key must agree with the first.
    pub fn set(&mut self, m: usize, n: usize, outs: &[u8], ins: &[u8], value: Rational) -> Result<()> {
        self.check_arity(m, n, outs, ins)?;
        if value.is_zero() {
            return Ok(());
        }
        let deg = self.acting_degrees();
        let w = |idx: &[u8]| idx.iter().map(|&a| deg[a as usize]).sum::<i32>();
        if w(outs) - w(ins) != self.map_degree(m) {
            return Err(Error::invalid(format!(
                "coefficient at ({m},{n}) breaks the degree balance: outputs minus inputs must be {}",
                self.map_degree(m)
            )));
        }
        let Some((key, s)) = self.canonical(m, outs, ins) else {
            return Err(Error::invalid(format!("symmetry violation: coefficient at ({m},{n}) is forced to vanish")));
        };
        let v = Rational::sign(s) * value;
        let arr = self.arrays.entry((m, n)).or_default();
        if let Some(old) = arr.get(&key) {
            if *old != v {
                return Err(Error::invalid(format!("symmetry violation: conflicting coefficients at ({m},{n})")));
            }
        }
        arr.insert(key, v);
        Ok(())
    }

    /// Replaces a canonical coefficient without consistency checks beyond the key shape.
    pub fn set_canonical(&mut self, m: usize, n: usize, key: Slot, value: Rational) -> Result<()> {
        self.check_arity(m, n, &key.0, &key.1)?;
        match self.canonical(m, &key.0, &key.1) {
            Some((k, 1)) if k == key => {}
            _ => return Err(Error::invalid("not a canonical key")),
        }
        if value.is_zero() {
            if let Some(arr) = self.arrays.get_mut(&(m, n)) {
                arr.remove(&key);
                if arr.is_empty() {
                    self.arrays.remove(&(m, n));
                }
            }
        } else {
            self.arrays.entry((m, n)).or_default().insert(key, value);
        }
        Ok(())
    }

    /// Arities carrying a nonzero coefficient.
    pub fn arities(&self) -> Vec<(usize, usize)> {
        self.arrays.iter().filter(|(_, a)| !a.is_empty()).map(|(k, _)| *k).collect()
    }

    /// Canonical coefficients of one arity.
    pub fn entries(&self, m: usize, n: usize) -> BTreeMap<Slot, Rational> {
        self.arrays.get(&(m, n)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.arrays.values().all(|a| a.is_empty())
    }

    /// Canonical keys allowed by symmetry and degree at an arity.
    pub fn canonical_keys(&self, m: usize, n: usize) -> Vec<Slot> {
        let deg = self.acting_degrees();
        let w = |idx: &[u8]| idx.iter().map(|&a| deg[a as usize]).sum::<i32>();
        let mut out = Vec::new();
        for outs in tuples(self.dim(), m) {
            for ins in tuples(self.dim(), n) {
                if w(&outs) - w(&ins) != self.map_degree(m) {
                    continue;
                }
                if let Some((key, 1)) = self.canonical(m, &outs, &ins) {
                    if key == (outs.clone(), ins.clone()) {
                        out.push(key);
                    }
                }
            }
        }
        out
    }

    /// Collection restricted to arities with `m+n <= order`.
    pub fn truncated(&self, order: usize) -> Self {
        let mut t = self.clone();
        t.arrays.retain(|(m, n), _| m + n <= order);
        t
    }

    /// Full coefficient array as a map `V^{⊗n} → V^{⊗m}` on the acting space.
    pub fn gmap(&self, m: usize, n: usize) -> GMap {
        let mut g = GMap::zero(m, n, self.map_degree(m));
        if self.entries(m, n).is_empty() {
            return g;
        }
        for outs in tuples(self.dim(), m) {
            for ins in tuples(self.dim(), n) {
                let v = self.get(m, n, &outs, &ins);
                g.add(outs.clone(), ins, v);
            }
        }
        g
    }

    /// Text form: model and basis lines, then canonical entries.
    pub fn to_text(&self) -> String {
        let mut s = format!("model {}\nbasis", self.model);
        for (l, d) in self.space.basis() {
            let _ = write!(s, " {l}:{d}");
        }
        s.push('\n');
        for (&(m, n), arr) in &self.arrays {
            let name = if self.model == Model::Tf && m == 2 { "phi" } else { "mu" };
            for ((outs, ins), v) in arr {
                let f = |idx: &[u8]| idx.iter().map(|a| (a + 1).to_string()).collect::<Vec<_>>().join(" ");
                let _ = writeln!(s, "{name}[{m},{n}][{}|{}] = {v}", f(outs), f(ins));
            }
        }
        s
    }

    /// Parses the text form. `model` and `basis` lines precede the entries.
    pub fn parse(text: &str) -> Result<Self> {
        let mut model = None;
        let mut tc: Option<TensorCollection> = None;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("model ") {
                model = Some(rest.trim().parse::<Model>().map_err(|e| Error::parse(line_no, e.to_string()))?);
                continue;
            }
            if let Some(rest) = line.strip_prefix("basis") {
                let Some(md) = model else {
                    return Err(Error::parse(line_no, "basis declared before the model"));
                };
                let mut basis = Vec::new();
                for tok in rest.split_whitespace() {
                    let (l, d) = tok.split_once(':').ok_or_else(|| Error::parse(line_no, format!("basis entry `{tok}` needs label:degree")))?;
                    let d: i32 = d.parse().map_err(|_| Error::parse(line_no, format!("bad degree in `{tok}`")))?;
                    basis.push((l.to_string(), d));
                }
                let space = GradedSpace::new(basis).map_err(|e| Error::parse(line_no, e.to_string()))?;
                tc = Some(TensorCollection::new(md, space));
                continue;
            }
            let Some(t) = tc.as_mut() else {
                return Err(Error::parse(line_no, "coefficient before the basis declaration"));
            };
            t.parse_entry(line).map_err(|e| match e {
                Error::InvalidInput(msg) => Error::parse(line_no, msg),
                other => other,
            })?;
        }
        tc.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing model or basis declaration"))
    }

    fn parse_entry(&mut self, line: &str) -> Result<()> {
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| Error::invalid("expected `name[m,n][outs|ins] = value`"))?;
        let value: Rational = rhs.trim().parse().map_err(|_| Error::invalid(format!("bad coefficient `{}`", rhs.trim())))?;
        let lhs = lhs.trim();
        let (name, rest) = lhs.split_once('[').ok_or_else(|| Error::invalid("missing arity"))?;
        let (arity, rest) = rest.split_once(']').ok_or_else(|| Error::invalid("unclosed arity"))?;
        let (m, n) = arity.split_once(',').ok_or_else(|| Error::invalid("arity needs `m,n`"))?;
        let m: usize = m.trim().parse().map_err(|_| Error::invalid("bad arity"))?;
        let n: usize = n.trim().parse().map_err(|_| Error::invalid("bad arity"))?;
        match (name.trim(), self.model, m) {
            ("mu", _, _) | ("phi", Model::Tf, 2) => {}
            (other, _, _) => return Err(Error::invalid(format!("unknown structure map `{other}` at ({m},{n})"))),
        }
        let idx = rest.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| Error::invalid("indices need `[outs|ins]`"))?;
        let (o, i) = idx.split_once('|').ok_or_else(|| Error::invalid("indices need `|`"))?;
        let outs = self.parse_indices(o)?;
        let ins = self.parse_indices(i)?;
        self.set(m, n, &outs, &ins, value)
    }

    fn parse_indices(&self, s: &str) -> Result<Vec<u8>> {
        s.split_whitespace()
            .map(|tok| match tok.parse::<usize>() {
                Ok(k) if (1..=self.dim()).contains(&k) => Ok((k - 1) as u8),
                Ok(_) => Err(Error::invalid(format!("index `{tok}` outside the basis"))),
                Err(_) => self.space.index_of(tok).map(|k| k as u8).ok_or_else(|| Error::invalid(format!("unknown basis label `{tok}`"))),
            })
            .collect()
    }
}

/// All index tuples of a length.
pub fn tuples(dim: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * dim);
        for t in &out {
            for a in 0..dim as u8 {
                let mut u: Vec<u8> = t.clone();
                u.push(a);
                next.push(u);
            }
        }
        out = next;
    }
    out
}
