//! Checks that a coordinate map is a morphism of odd-model structures, and a quasi-isomorphism.

use crate::error::{Error, Result};
use crate::exactalg::{dense_rank, to_sparse, Echelon, Rational};
use crate::formalgeo::Poly;

use super::coordmap::CoordMap;
use super::splitting::linear_part;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    /// Brackets of pulled-back coordinates equal the constant ones below the truncation order.
    pub symplectic: bool,
    /// Positions pull back into the ideal of source positions.
    pub preserves_lagrangian: bool,
    /// Momenta pull back into the ideal of source momenta.
    pub preserves_dual_lagrangian: bool,
    pub pulls_back: bool,
    /// Both induced linear maps are chain maps inducing isomorphisms in cohomology.
    pub quasi_isomorphism: bool,
    pub source_cohomology: usize,
    pub target_cohomology: usize,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.symplectic && self.preserves_lagrangian && self.preserves_dual_lagrangian && self.pulls_back
    }

    pub fn passes(&self) -> bool {
        self.is_morphism() && self.quasi_isomorphism
    }
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>], inner: usize) -> Vec<Vec<Rational>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect()).collect()
}

fn transpose(m: &[Vec<Rational>], rows: usize, cols: usize) -> Vec<Vec<Rational>> {
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

/// Cohomology dimension of a square-zero matrix acting on `k^n`.
fn cohomology(d: &[Vec<Rational>], n: usize) -> usize {
    n - 2 * dense_rank(d.to_vec())
}

/// Whether a chain map `f: (k^n, d) → (k^n', d')` induces an isomorphism in cohomology.
fn induces_iso(f: &[Vec<Rational>], d: &[Vec<Rational>], d2: &[Vec<Rational>], n: usize, n2: usize) -> bool {
    if mat_mul(d2, f, n2) != mat_mul(f, d, n) {
        return false;
    }
    let (h, h2) = (cohomology(d, n), cohomology(d2, n2));
    if h != h2 {
        return false;
    }
    let mut rows = Echelon::new(n);
    for row in d {
        rows.insert(to_sparse(row));
    }
    let mut span = Echelon::new(n2);
    for j in 0..n {
        span.insert(to_sparse(&(0..n2).map(|i| d2[i][j].clone()).collect::<Vec<_>>()));
    }
    let base = span.rank();
    for k in rows.kernel_basis() {
        let image: Vec<Rational> = f.iter().map(|r| r.iter().zip(&k).map(|(a, b)| a * b).sum()).collect();
        span.insert(to_sparse(&image));
    }
    span.rank() - base == h
}

/// Checks `F*ω' = ω`, `F(L) ⊂ L'`, `F(ΠL) ⊂ ΠL'`, `F*Γ' = Γ` and the quasi-isomorphism
/// property. Errors when the linear part of `F` is not injective.
pub fn morphism_check(map: &CoordMap, gamma: &Poly, gamma_target: &Poly) -> Result<MorphismReport> {
    let (s, t) = (map.source(), map.target());
    if s.model() != t.model() || s.model() != crate::formalgeo::Model::Lie1Bi {
        return Err(Error::invalid("morphisms are checked between odd-model coordinates"));
    }
    let (n, n2) = (s.dim(), t.dim());
    let lin = map.linear_part();
    if dense_rank(transpose(&lin, 2 * n2, 2 * n)) != 2 * n {
        return Err(Error::invalid("linear part of the map is not injective"));
    }
    let images = map.images();
    let top = s.order().saturating_sub(1);
    let mut symplectic = true;
    'outer: for u in 0..2 * n2 {
        for v in 0..2 * n2 {
            let expected = t.bracket(&t.ring().var(u), &t.ring().var(v))?;
            let got = s.bracket(&images[u], &images[v])?.filtered(|m| m.order() <= top);
            let want: Vec<Rational> = expected.terms().map(|(_, c)| c.clone()).collect();
            let ok = match want.as_slice() {
                [] => got.is_zero(),
                [c] => got == s.ring().constant(c.clone()),
                _ => false,
            };
            if !ok {
                symplectic = false;
                break 'outer;
            }
        }
    }
    let has_position = |m: &crate::formalgeo::Monomial| (0..n).any(|v| m.exponent(v) > 0);
    let has_momentum = |m: &crate::formalgeo::Monomial| (n..2 * n).any(|v| m.exponent(v) > 0);
    let preserves_lagrangian = images[..n2].iter().all(|img| img.terms().all(|(m, _)| has_position(m)));
    let preserves_dual_lagrangian = images[n2..].iter().all(|img| img.terms().all(|(m, _)| has_momentum(m)));
    let pulls_back = map.pullback(gamma_target)? == s.truncate(gamma);

    let d = linear_part(s, gamma)?;
    let d2 = linear_part(t, gamma_target)?;
    let pos: Vec<Vec<Rational>> = lin[..n2].iter().map(|r| r[..n].to_vec()).collect();
    let mom: Vec<Vec<Rational>> = lin[n2..].iter().map(|r| r[n..].to_vec()).collect();
    let square_zero = |m: &[Vec<Rational>], k: usize| mat_mul(m, m, k).iter().flatten().all(Rational::is_zero);
    let quasi_isomorphism = square_zero(&d, n)
        && square_zero(&d2, n2)
        && induces_iso(&pos, &d, &d2, n, n2)
        && induces_iso(&mom, &transpose(&d, n, n), &transpose(&d2, n2, n2), n, n2);
    Ok(MorphismReport {
        symplectic,
        preserves_lagrangian,
        preserves_dual_lagrangian,
        pulls_back,
        quasi_isomorphism,
        source_cohomology: if square_zero(&d, n) { cohomology(&d, n) } else { 0 },
        target_cohomology: if square_zero(&d2, n2) { cohomology(&d2, n2) } else { 0 },
    })
}
