//! Direct check of the three Lie 1-bialgebra identities on a cobracket and a degree one bracket.
//!
//! The cobracket `δ: V → ∧²V` is read from the `(2,1)` array and the bracket from the `(1,2)`
//! array through the same identification with multilinear maps used for relation evaluation;
//! the bracket symbol is `[a•b] = (−1)^{|a|} b(a⊗b)` for the symmetric map `b`.

use super::checks::identification_sign;
use super::coords::Model;
use super::tensors::TensorCollection;
use crate::error::{Error, Result};
use crate::exactalg::Rational;

/// Basis labels (1-based) at which an identity fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub co_jacobi: Vec<Vec<usize>>,
    pub jacobi: Vec<Vec<usize>>,
    pub leibniz: Vec<Vec<usize>>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.co_jacobi.is_empty() && self.jacobi.is_empty() && self.leibniz.is_empty()
    }
}

fn parity(e: i32) -> Rational {
    Rational::sign(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Dense tensors over a basis, indexed by tuples flattened in base `dim`.
struct Ops<'a> {
    tc: &'a TensorCollection,
    deg: Vec<i32>,
    dim: usize,
}

impl Ops<'_> {
    fn cobracket(&self, a: usize) -> Vec<Rational> {
        let dim = self.dim;
        let mut out = vec![Rational::zero(); dim * dim];
        for b1 in 0..dim {
            for b2 in 0..dim {
                let outs = [b1 as u8, b2 as u8];
                let v = self.tc.get(2, 1, &outs, &[a as u8]);
                if !v.is_zero() {
                    out[b1 * dim + b2] = v * parity(identification_sign(Model::Lie1Bi, &self.deg, &outs, &[a as u8]));
                }
            }
        }
        out
    }

    /// `[e_x • e_y]`.
    fn bracket_basis(&self, x: usize, y: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (b, slot) in out.iter_mut().enumerate() {
            let ins = [x as u8, y as u8];
            let v = self.tc.get(1, 2, &[b as u8], &ins);
            if !v.is_zero() {
                *slot = v * parity(identification_sign(Model::Lie1Bi, &self.deg, &[b as u8], &ins) + self.deg[x]);
            }
        }
        out
    }

    fn bracket(&self, u: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (x, ux) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (y, wy) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = ux * wy;
                for (o, v) in out.iter_mut().zip(self.bracket_basis(x, y)) {
                    *o += &c * &v;
                }
            }
        }
        out
    }

    fn basis(&self, a: usize) -> Vec<Rational> {
        (0..self.dim).map(|i| if i == a { Rational::one() } else { Rational::zero() }).collect()
    }

    /// Degree of a homogeneous vector (0 for zero).
    fn degree(&self, u: &[Rational]) -> i32 {
        u.iter().position(|c| !c.is_zero()).map_or(0, |i| self.deg[i])
    }

    /// `u ∧ w = u⊗w − (−1)^{|u||w|} w⊗u` for homogeneous `u`, `w`.
    fn wedge(&self, u: &[Rational], w: &[Rational]) -> Vec<Rational> {
        let dim = self.dim;
        let s = -parity(self.degree(u) * self.degree(w));
        let mut out = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                out[i * dim + j] = &u[i] * &w[j] + &s * &(&w[i] * &u[j]);
            }
        }
        out
    }
}

fn add_into(acc: &mut [Rational], v: &[Rational], c: &Rational) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += c * x;
    }
}

/// Evaluates co-Jacobi, Jacobi and the Leibniz-type compatibility on all basis vectors.
/// Only the `(2,1)` and `(1,2)` arrays of the collection enter.
pub fn lie1bi_axiom_check(tc: &TensorCollection) -> Result<AxiomReport> {
    if tc.model() != Model::Lie1Bi {
        return Err(Error::invalid("the Lie 1-bialgebra identities need a lie1bi collection"));
    }
    let ops = Ops { tc, deg: tc.acting_degrees(), dim: tc.dim() };
    let (dim, deg) = (ops.dim, &ops.deg);
    let mut report = AxiomReport::default();
    let half = Rational::new(1, 2)?;

    for a in 0..dim {
        let t = ops.cobracket(a);
        // (δ⊗Id)δa in V⊗V⊗V
        let mut x = vec![Rational::zero(); dim * dim * dim];
        for b1 in 0..dim {
            for b2 in 0..dim {
                let c = &t[b1 * dim + b2];
                if c.is_zero() {
                    continue;
                }
                let inner = ops.cobracket(b1);
                for (k, v) in inner.iter().enumerate() {
                    x[k * dim + b2] += c * v;
                }
            }
        }
        // x + τx + τ²x with τ(u⊗v⊗w) = (−1)^{|w|(|u|+|v|)} w⊗u⊗v
        let mut sum = x.clone();
        let mut cur = x;
        for _ in 0..2 {
            let mut next = vec![Rational::zero(); dim * dim * dim];
            for (k, c) in cur.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (u, v, w) = (k / (dim * dim), k / dim % dim, k % dim);
                next[(w * dim + u) * dim + v] += c * &parity(deg[w] * (deg[u] + deg[v]));
            }
            add_into(&mut sum, &next, &Rational::one());
            cur = next;
        }
        if sum.iter().any(|c| !c.is_zero()) {
            report.co_jacobi.push(vec![a + 1]);
        }
    }

    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let (ea, eb, ec) = (ops.basis(a), ops.basis(b), ops.basis(c));
                let mut r = ops.bracket(&ops.bracket(&ea, &eb), &ec);
                add_into(&mut r, &ops.bracket(&ea, &ops.bracket(&eb, &ec)), &-Rational::one());
                let s = parity(deg[a] * deg[b] + deg[a] + deg[b]);
                add_into(&mut r, &ops.bracket(&eb, &ops.bracket(&ea, &ec)), &-s);
                if r.iter().any(|x| !x.is_zero()) {
                    report.jacobi.push(vec![a + 1, b + 1, c + 1]);
                }
            }
        }
    }

    for a in 0..dim {
        for b in 0..dim {
            let (ea, eb) = (ops.basis(a), ops.basis(b));
            let ab = ops.bracket(&ea, &eb);
            let mut r = vec![Rational::zero(); dim * dim];
            for (k, c) in ab.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                add_into(&mut r, &ops.cobracket(k), c);
            }
            // Sweedler components: δa = Σ a1 ∧ a2 with a1 ⊗ a2 running over ½ δa
            let (ta, tb) = (ops.cobracket(a), ops.cobracket(b));
            for b1 in 0..dim {
                for b2 in 0..dim {
                    let (e1, e2) = (ops.basis(b1), ops.basis(b2));
                    let k = -parity(deg[b1] * deg[b2]);
                    let ca = &ta[b1 * dim + b2] * &half;
                    if !ca.is_zero() {
                        add_into(&mut r, &ops.wedge(&e1, &ops.bracket(&e2, &eb)), &-ca.clone());
                        add_into(&mut r, &ops.wedge(&e2, &ops.bracket(&e1, &eb)), &-(&ca * &k));
                    }
                    let cb = &tb[b1 * dim + b2] * &half;
                    if !cb.is_zero() {
                        add_into(&mut r, &ops.wedge(&ops.bracket(&ea, &e1), &e2), &-cb.clone());
                        add_into(&mut r, &ops.wedge(&ops.bracket(&ea, &e2), &e1), &-(&cb * &k));
                    }
                }
            }
            if r.iter().any(|x| !x.is_zero()) {
                report.leibniz.push(vec![a + 1, b + 1]);
            }
        }
    }
    Ok(report)
}
