//! Truncated polynomials in graded commuting variables.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Exponent vector in the fixed variable order; odd variables have exponent at most 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Monomial(e)
    }

    /// Polynomial order: total number of variable factors.
    pub fn order(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponent(&self, v: usize) -> u8 {
        self.0[v]
    }
}

/// Finite sum of monomials with rational coefficients, normal ordered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<Monomial, Rational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.0.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.0.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        for (m, v) in &other.0 {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Poly {
        let mut p = Poly::zero();
        p.add_scaled(self, c);
        p
    }

    pub fn sum(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &Rational::one());
        p
    }

    pub fn difference(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &Rational::int(-1));
        p
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly(self.0.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect())
    }

    /// Homogeneous component of the given polynomial order.
    pub fn component(&self, order: usize) -> Poly {
        self.filtered(|m| m.order() == order)
    }

    pub fn min_order(&self) -> Option<usize> {
        self.0.keys().map(|m| m.order()).min()
    }

    pub fn max_order(&self) -> Option<usize> {
        self.0.keys().map(|m| m.order()).max()
    }
}

/// Variables with degrees and display names, plus the truncation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    degrees: Vec<i32>,
    names: Vec<String>,
    order: usize,
}

fn odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

impl PolyRing {
    pub fn new(vars: Vec<(String, i32)>, order: usize) -> Self {
        let (names, degrees) = vars.into_iter().unzip();
        PolyRing { degrees, names, order }
    }

    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Same variables with another truncation order.
    pub fn with_order(&self, order: usize) -> Self {
        PolyRing { order, ..self.clone() }
    }

    pub fn var_degree(&self, v: usize) -> i32 {
        self.degrees[v]
    }

    pub fn var_name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn var(&self, v: usize) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(self.nvars(), v), Rational::one());
        p
    }

    pub fn constant(&self, c: Rational) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(self.nvars()), c);
        p
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i32 {
        m.0.iter().zip(&self.degrees).map(|(&e, &d)| e as i32 * d).sum()
    }

    /// Degree of a homogeneous polynomial; `None` for zero, error when inhomogeneous.
    pub fn degree(&self, p: &Poly) -> Result<Option<i32>> {
        let mut deg = None;
        for m in p.0.keys() {
            let d = self.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::invalid("polynomial is not homogeneous")),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_odd_var(&self, v: usize) -> bool {
        odd(self.degrees[v])
    }

    /// Drops terms above the truncation order.
    pub fn truncate(&self, p: &Poly) -> Poly {
        p.filtered(|m| m.order() <= self.order)
    }

    /// Product `a·b` of normal-ordered monomials, with the Koszul sign of restoring order;
    /// `None` when an odd variable repeats.
    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, i32)> {
        let mut swaps = 0usize;
        let mut odd_above = 0usize;
        // walk variables from the top so `odd_above` counts odd factors of `a` above `v`
        for v in (0..self.nvars()).rev() {
            if self.is_odd_var(v) {
                if b.0[v] == 1 {
                    swaps += odd_above;
                }
                if a.0[v] == 1 {
                    odd_above += 1;
                }
                if a.0[v] + b.0[v] > 1 {
                    return None;
                }
            }
        }
        let e = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        Some((Monomial(e), if swaps % 2 == 0 { 1 } else { -1 }))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &a.0 {
            for (mb, cb) in &b.0 {
                if ma.order() + mb.order() > self.order {
                    continue;
                }
                if let Some((m, s)) = self.mono_mul(ma, mb) {
                    out.add_term(m, Rational::sign(s) * ca * cb);
                }
            }
        }
        out
    }

    /// Product of a sequence of factors in the given order.
    pub fn product(&self, factors: &[Poly]) -> Poly {
        let mut acc = self.constant(Rational::one());
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    fn parity_below(&self, m: &Monomial, v: usize) -> usize {
        (0..v).filter(|&u| self.is_odd_var(u) && m.0[u] == 1).count()
    }

    fn parity_above(&self, m: &Monomial, v: usize) -> usize {
        (v + 1..self.nvars()).filter(|&u| self.is_odd_var(u) && m.0[u] == 1).count()
    }

    /// Derivative acting from the left.
    pub fn left_derivative(&self, p: &Poly, v: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.0 {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut r = m.clone();
            r.0[v] -= 1;
            let flip = self.is_odd_var(v) && self.parity_below(m, v) % 2 == 1;
            let k = Rational::int(e as i64) * c;
            out.add_term(r, if flip { -k } else { k });
        }
        out
    }

    /// Derivative acting from the right.
    pub fn right_derivative(&self, p: &Poly, v: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.0 {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut r = m.clone();
            r.0[v] -= 1;
            let flip = self.is_odd_var(v) && self.parity_above(m, v) % 2 == 1;
            let k = Rational::int(e as i64) * c;
            out.add_term(r, if flip { -k } else { k });
        }
        out
    }

    /// Applies the derivation of degree `degree` determined by its values on the variables.
    /// Variables missing from `images` are sent to zero.
    pub fn apply_derivation(&self, images: &BTreeMap<usize, Poly>, degree: i32, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.0 {
            for (&v, img) in images {
                let e = m.0[v];
                if e == 0 || img.is_zero() {
                    continue;
                }
                let mut prefix = Monomial::one(self.nvars());
                let mut suffix = Monomial::one(self.nvars());
                for u in 0..self.nvars() {
                    if u < v {
                        prefix.0[u] = m.0[u];
                    } else if u > v {
                        suffix.0[u] = m.0[u];
                    }
                }
                prefix.0[v] = e - 1;
                let flip = odd(degree) && self.parity_below(m, v) % 2 == 1;
                let k = Rational::int(e as i64) * c;
                let coef = if flip { -k } else { k };
                let mut pre = Poly::zero();
                pre.add_term(prefix, coef);
                let mut suf = Poly::zero();
                suf.add_term(suffix, Rational::one());
                out.add_scaled(&self.mul(&self.mul(&pre, img), &suf), &Rational::one());
            }
        }
        out
    }

    /// Substitutes `images[v]` for every variable `v` of `p` (an algebra map preserving
    /// degrees). The images live in this ring; `p` may come from a ring with `images.len()`
    /// variables.
    pub fn substitute(&self, images: &[Poly], p: &Poly) -> Result<Poly> {
        if p.0.keys().any(|m| m.0.len() != images.len()) {
            return Err(Error::invalid("substitution needs one image per variable"));
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|img| vec![self.constant(Rational::one()), img.clone()]).collect();
        let mut out = Poly::zero();
        for (m, c) in &p.0 {
            let mut acc = self.constant(c.clone());
            for v in 0..images.len() {
                let e = m.0[v] as usize;
                while powers[v].len() <= e {
                    let next = self.mul(powers[v].last().expect("nonempty"), &images[v]);
                    powers[v].push(next);
                }
                if e > 0 {
                    acc = self.mul(&acc, &powers[v][e]);
                }
            }
            out.add_scaled(&acc, &Rational::one());
        }
        Ok(out)
    }

    /// Same variables under new names.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.nvars() {
            return Err(Error::invalid("renaming needs one name per variable"));
        }
        Ok(PolyRing { names, ..self.clone() })
    }

    /// Parses the output of [`PolyRing::format`]: signed terms, each a `*`-product of rational
    /// numbers and variables with optional `^exponent`. Factors multiply in the written order.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::invalid("empty polynomial"));
        }
        let mut out = Poly::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            let mut acc = self.constant(Rational::sign(if neg { -1 } else { 1 }));
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| Error::invalid(format!("bad exponent in `{factor}`")))?),
                    None => (factor, 1),
                };
                let f = if let Some(v) = self.names.iter().position(|n| n == base) {
                    self.var(v)
                } else {
                    let c: Rational = base.parse().map_err(|_| Error::invalid(format!("unknown factor `{base}`")))?;
                    self.constant(c)
                };
                for _ in 0..exp {
                    acc = self.mul(&acc, &f);
                }
            }
            out.add_scaled(&acc, &Rational::one());
        }
        Ok(out)
    }

    /// Human-readable sum, terms in increasing order then monomial order.
    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<(&Monomial, &Rational)> = p.0.iter().collect();
        terms.sort_by(|a, b| a.0.order().cmp(&b.0.order()).then_with(|| b.0.cmp(a.0)));
        let mut s = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                s.push('-');
            }
            let _ = write!(s, "{}", c.abs());
            for v in 0..self.nvars() {
                match m.0[v] {
                    0 => {}
                    1 => {
                        let _ = write!(s, "*{}", self.names[v]);
                    }
                    e => {
                        let _ = write!(s, "*{}^{}", self.names[v], e);
                    }
                }
            }
        }
        s
    }
}
