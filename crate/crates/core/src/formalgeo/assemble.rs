//! Generating functions of tensor collections and the inverse extraction.
//!
//! Odd model: `Γ = Σ 1/(m!n!) (−1)^ε t^{a1}..t^{an} μ[b][a] psi_{b1}..psi_{bm}` with
//! `ε = Σ_k |e_{ak}|(2-m+Σ_{i<=k}|e_{ai}|) + Σ_{k<i<=m}(|e_{bk}|+1)|e_{bi}|`.
//!
//! Even model: the same sum in `z, psi` with no extra sign.
//!
//! Tensor model: `ð = Σ 1/n! (−1)^ε t^{a1}..t^{an} μ[b][a] p_b` with
//! `ε = Σ_k |e_{ak}|(1+Σ_{i<=k}|e_{ai}|)`, and
//! `φ = Σ 1/n! (−1)^ε t^{a1}..t^{an} φ[b1 b2][a] p_{b1} q_{b2}` with
//! `ε = |e_{b2}|(|e_{b1}|+1) + Σ_k Σ_{i<=k}|e_{ak}||e_{ai}|`. The second of these is read with
//! two distinct output indices and φ-coefficients.

use std::collections::BTreeMap;

use super::coords::{Coordinates, Model};
use super::gendo::Slot;
use super::poly::{Monomial, Poly};
use super::tensors::{tuples, TensorCollection};
use crate::error::{Error, Result};
use crate::exactalg::Rational;

fn parity_sign(e: i32) -> Rational {
    Rational::sign(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Sign exponent of one term.
fn epsilon(model: Model, deg: &[i32], m: usize, outs: &[u8], ins: &[u8]) -> i32 {
    let d = |a: u8| deg[a as usize];
    match (model, m) {
        (Model::Lie1Bi, _) => {
            let mut e = 0;
            let mut run = 0;
            for &a in ins {
                run += d(a);
                e += d(a) * (2 - m as i32 + run);
            }
            for k in 0..outs.len() {
                for i in k + 1..outs.len() {
                    e += (d(outs[k]) + 1) * d(outs[i]);
                }
            }
            e
        }
        (Model::LieBi, _) => 0,
        (Model::Tf, 1) => {
            let mut e = 0;
            let mut run = 0;
            for &a in ins {
                run += d(a);
                e += d(a) * (1 + run);
            }
            e
        }
        (Model::Tf, _) => {
            let mut e = d(outs[1]) * (d(outs[0]) + 1);
            let mut run = 0;
            for &a in ins {
                run += d(a);
                e += d(a) * run;
            }
            e
        }
    }
}

/// Sum over all index tuples of one arity, with coefficients from `value`.
fn assemble_arity(c: &Coordinates, m: usize, n: usize, value: impl Fn(&[u8], &[u8]) -> Rational) -> Poly {
    let r = c.ring();
    let deg = c.space().degrees();
    let norm = (Rational::factorial(m) * Rational::factorial(n)).recip().expect("nonzero factorial");
    let norm = if c.model() == Model::Tf { Rational::factorial(n).recip().expect("nonzero factorial") } else { norm };
    let mut out = Poly::zero();
    for ins in tuples(c.dim(), n) {
        for outs in tuples(c.dim(), m) {
            let v = value(&outs, &ins);
            if v.is_zero() {
                continue;
            }
            let mut factors: Vec<Poly> = ins.iter().map(|&a| r.var(c.position(a as usize))).collect();
            match (c.model(), m) {
                (Model::Tf, 2) => {
                    factors.push(r.var(c.dim() + outs[0] as usize));
                    factors.push(r.var(2 * c.dim() + outs[1] as usize));
                }
                (Model::Tf, _) => factors.push(r.var(c.dim() + outs[0] as usize)),
                _ => factors.extend(outs.iter().map(|&b| r.var(c.momentum(b as usize)))),
            }
            let coef = v * &norm * parity_sign(epsilon(c.model(), &deg, m, &outs, &ins));
            out.add_scaled(&r.product(&factors), &coef);
        }
    }
    out
}

fn check_model(tc: &TensorCollection, c: &Coordinates) -> Result<()> {
    if tc.model() != c.model() || tc.space() != c.space() {
        return Err(Error::invalid("tensor collection and coordinates disagree on model or space"));
    }
    Ok(())
}

/// Generating function of a collection of the odd or even model, truncated at `order`.
pub fn assemble(tc: &TensorCollection, c: &Coordinates) -> Result<Poly> {
    check_model(tc, c)?;
    if c.model() == Model::Tf {
        return Err(Error::invalid("the tensor model assembles into a pair; use assemble_tf"));
    }
    let mut out = Poly::zero();
    for (m, n) in tc.arities() {
        if m + n <= c.order() {
            out.add_scaled(&assemble_arity(c, m, n, |o, i| tc.get(m, n, o, i)), &Rational::one());
        }
    }
    Ok(out)
}

/// The vector field and the rank-2 tensor of a tensor-model collection.
pub fn assemble_tf(tc: &TensorCollection, c: &Coordinates) -> Result<(Poly, Poly)> {
    check_model(tc, c)?;
    if c.model() != Model::Tf {
        return Err(Error::invalid("assemble_tf needs tensor-model coordinates"));
    }
    let (mut field, mut tensor) = (Poly::zero(), Poly::zero());
    for (m, n) in tc.arities() {
        // polynomial order counts the position factors; tensor factors are bookkeeping
        if n > c.order() {
            continue;
        }
        let part = assemble_arity(c, m, n, |o, i| tc.get(m, n, o, i));
        if m == 1 {
            field.add_scaled(&part, &Rational::one());
        } else {
            tensor.add_scaled(&part, &Rational::one());
        }
    }
    Ok((field, tensor))
}

/// Monomial and coefficient produced by a unit coefficient at a canonical key.
fn unit_term(tc: &TensorCollection, c: &Coordinates, m: usize, n: usize, key: &Slot) -> Option<(Monomial, Rational)> {
    let p = assemble_arity(c, m, n, |o, i| match tc.canonical(m, o, i) {
        Some((k, s)) if &k == key => Rational::sign(s),
        _ => Rational::zero(),
    });
    let mut terms = p.terms();
    let (mono, coef) = terms.next()?;
    debug_assert!(terms.next().is_none(), "a canonical key assembles to one monomial");
    Some((mono.clone(), coef.clone()))
}

/// Canonical coefficients of arity `(m,n)` read off a generating function. For the tensor
/// model pass the vector field for `m = 1` and the rank-2 tensor for `m = 2`.
pub fn extract(field: &Poly, c: &Coordinates, m: usize, n: usize) -> Result<BTreeMap<Slot, Rational>> {
    let probe = TensorCollection::new(c.model(), c.space().clone());
    if !probe.allows(m, n) {
        return Err(Error::invalid(format!("no {} structure map of arity ({m},{n})", c.model())));
    }
    let mut out = BTreeMap::new();
    for key in probe.canonical_keys(m, n) {
        if let Some((mono, unit)) = unit_term(&probe, c, m, n, &key) {
            let v = field.coeff(&mono) / unit;
            if !v.is_zero() {
                out.insert(key, v);
            }
        }
    }
    Ok(out)
}

/// Every arity of a generating function within the truncation order.
pub fn extract_collection(fields: &[&Poly], c: &Coordinates) -> Result<TensorCollection> {
    let mut tc = TensorCollection::new(c.model(), c.space().clone());
    for s in 2..=c.order() + if c.model() == Model::Tf { 2 } else { 0 } {
        for m in 1..s {
            let n = s - m;
            if !tc.allows(m, n) || (c.model() == Model::Tf && n > c.order()) {
                continue;
            }
            let field = match (c.model(), m) {
                (Model::Tf, 2) => fields.get(1),
                _ => fields.first(),
            }
            .ok_or_else(|| Error::invalid("missing field"))?;
            for (key, v) in extract(field, c, m, n)? {
                tc.set_canonical(m, n, key, v)?;
            }
        }
    }
    Ok(tc)
}
