//! Cohomological splitting `V = H ⊕ B[-1] ⊕ B` of the linear part of a structure and the
//! adapted Darboux coordinates `(z, x, y | ξ, ψ, φ)`.

use crate::error::{Error, Result};
use crate::exactalg::{dense_inverse, to_sparse, Echelon, GradedSpace, Rational};
use crate::formalgeo::{extract, Coordinates, Model, Poly};

use super::coordmap::CoordMap;

/// Homogeneous bases of the three summands, as vectors in the original basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    space: GradedSpace,
    /// Differential `d e_a = Σ_b differential[b][a] e_b`.
    differential: Vec<Vec<Rational>>,
    harmonic: Vec<Vec<Rational>>,
    targets: Vec<Vec<Rational>>,
    sources: Vec<Vec<Rational>>,
}

fn degree_of(space: &GradedSpace, v: &[Rational]) -> i32 {
    v.iter().position(|c| !c.is_zero()).map_or(0, |i| space.degree(i))
}

fn unit(dim: usize, a: usize) -> Vec<Rational> {
    (0..dim).map(|i| if i == a { Rational::one() } else { Rational::zero() }).collect()
}

/// Matrix of the linear part `μ_{1,1}` of a generating function.
pub fn linear_part(c: &Coordinates, gamma: &Poly) -> Result<Vec<Vec<Rational>>> {
    let dim = c.dim();
    let mut d = vec![vec![Rational::zero(); dim]; dim];
    if dim == 0 {
        return Ok(d);
    }
    for ((outs, ins), v) in extract(gamma, c, 1, 1)? {
        d[outs[0] as usize][ins[0] as usize] = v;
    }
    Ok(d)
}

fn apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl Splitting {
    /// Splits a square-zero differential of degree one. Sources are the basis vectors whose
    /// images raise the rank, scanned in index order; harmonic vectors are the kernel basis
    /// vectors (reduced echelon order) independent of the image.
    pub fn from_differential(space: &GradedSpace, differential: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = space.dim();
        if differential.len() != dim || differential.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("differential must be a square matrix on the space"));
        }
        for b in 0..dim {
            for a in 0..dim {
                if !differential[b][a].is_zero() && space.degree(b) != space.degree(a) + 1 {
                    return Err(Error::invalid("the linear part must raise degree by one"));
                }
            }
        }
        for a in 0..dim {
            let col = apply(&differential, &unit(dim, a));
            if apply(&differential, &col).iter().any(|x| !x.is_zero()) {
                return Err(Error::invalid("the linear part does not square to zero (Maurer-Cartan fails at order 2)"));
            }
        }
        let mut image = Echelon::new(dim);
        let (mut sources, mut targets) = (Vec::new(), Vec::new());
        for a in 0..dim {
            let col = apply(&differential, &unit(dim, a));
            if image.insert(to_sparse(&col)) {
                sources.push(unit(dim, a));
                targets.push(col);
            }
        }
        let mut rows = Echelon::new(dim);
        for row in &differential {
            rows.insert(to_sparse(row));
        }
        let mut span = image;
        let harmonic = rows.kernel_basis().into_iter().filter(|k| span.insert(to_sparse(k))).collect();
        Ok(Splitting { space: space.clone(), differential, harmonic, targets, sources })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn differential(&self) -> &[Vec<Rational>] {
        &self.differential
    }

    /// Dimension of `H(V,d)`.
    pub fn harmonic_dim(&self) -> usize {
        self.harmonic.len()
    }

    /// Dimension of `B` (equal to that of `B[-1]`).
    pub fn boundary_dim(&self) -> usize {
        self.sources.len()
    }

    pub fn harmonic(&self) -> &[Vec<Rational>] {
        &self.harmonic
    }

    pub fn sources(&self) -> &[Vec<Rational>] {
        &self.sources
    }

    pub fn targets(&self) -> &[Vec<Rational>] {
        &self.targets
    }

    /// New basis in the order `z`, `x`, `y`.
    fn new_basis(&self) -> Vec<&Vec<Rational>> {
        self.harmonic.iter().chain(&self.targets).chain(&self.sources).collect()
    }

    /// Adapted space with basis `z1.., x1.., y1..`.
    pub fn adapted_space(&self) -> GradedSpace {
        let mut basis = Vec::new();
        for (prefix, vs) in [("z", &self.harmonic), ("x", &self.targets), ("y", &self.sources)] {
            for (i, v) in vs.iter().enumerate() {
                basis.push((format!("{prefix}{}", i + 1), degree_of(&self.space, v)));
            }
        }
        GradedSpace::new(basis).expect("distinct labels")
    }

    /// Position index of `z^α`.
    pub fn z(&self, alpha: usize) -> usize {
        alpha
    }

    /// Position index of `x^a`.
    pub fn x(&self, a: usize) -> usize {
        self.harmonic.len() + a
    }

    /// Position index of `y^a`.
    pub fn y(&self, a: usize) -> usize {
        self.harmonic.len() + self.sources.len() + a
    }

    /// Odd-model coordinates on the adapted space, named `z x y` and `xi psi phi`; `psi_a` is
    /// dual to `x^a` and `phi_a` to `y^a`.
    pub fn coordinates(&self, order: usize) -> Coordinates {
        let adapted = self.adapted_space();
        let c = Coordinates::new(&adapted, Model::Lie1Bi, order);
        let mut names: Vec<String> = adapted.basis().iter().map(|(l, _)| l.clone()).collect();
        for (prefix, k) in [("xi", self.harmonic.len()), ("psi", self.sources.len()), ("phi", self.sources.len())] {
            names.extend((1..=k).map(|i| format!("{prefix}{i}")));
        }
        c.renamed(names).expect("one name per variable")
    }

    /// `Γ_1 = Σ_a y^a psi_a` in adapted coordinates.
    pub fn contractible_part(&self, adapted: &Coordinates) -> Poly {
        let r = adapted.ring();
        let mut out = Poly::zero();
        for a in 0..self.sources.len() {
            out.add_scaled(&r.mul(&r.var(adapted.position(self.y(a))), &r.var(adapted.momentum(self.x(a)))), &Rational::one());
        }
        out
    }

    /// The linear symplectomorphism from adapted to original coordinates: positions pull back
    /// along the change of basis and momenta along its inverse transpose.
    pub fn linear_map(&self, original: &Coordinates, adapted: &Coordinates) -> Result<CoordMap> {
        let dim = self.space.dim();
        let basis = self.new_basis();
        let p: Vec<Vec<Rational>> = (0..dim).map(|row| basis.iter().map(|v| v[row].clone()).collect()).collect();
        let inv = dense_inverse(&p).ok_or_else(|| Error::invalid("splitting basis is not a basis"))?;
        let r = adapted.ring();
        let mut images = Vec::with_capacity(2 * dim);
        for row in &p {
            let mut img = Poly::zero();
            for (j, coef) in row.iter().enumerate() {
                img.add_scaled(&r.var(adapted.position(j)), coef);
            }
            images.push(img);
        }
        for a in 0..dim {
            let mut img = Poly::zero();
            for (j, inv_row) in inv.iter().enumerate() {
                img.add_scaled(&r.var(adapted.momentum(j)), &inv_row[a]);
            }
            images.push(img);
        }
        CoordMap::new(adapted.clone(), original.clone(), images)
    }
}

/// Reads the linear part of `Γ` and splits it.
pub fn split_quadratic(c: &Coordinates, gamma: &Poly) -> Result<Splitting> {
    if c.model() != Model::Lie1Bi {
        return Err(Error::invalid("the splitting is defined for the odd model"));
    }
    Splitting::from_differential(c.space(), linear_part(c, gamma)?)
}
