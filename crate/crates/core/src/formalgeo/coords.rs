//! Coordinate systems on the graded manifolds attached to a graded space `V`.

use std::fmt;
use std::str::FromStr;

use super::poly::{Monomial, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::exactalg::{GradedSpace, Rational};

/// Which geometric model a structure lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    /// `V ⊕ V*[1]` with the degree −1 bracket.
    Lie1Bi,
    /// Vector fields and rank-2 tensors on the formal manifold of `V`.
    Tf,
    /// `V[1] ⊕ V*[1]` with the degree −2 bracket.
    LieBi,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Lie1Bi, Model::Tf, Model::LieBi];

    pub fn name(self) -> &'static str {
        match self {
            Model::Lie1Bi => "lie1bi",
            Model::Tf => "tf",
            Model::LieBi => "liebi",
        }
    }

    /// Degree of the bracket, for the symplectic models.
    pub fn bracket_degree(self) -> Option<i32> {
        match self {
            Model::Lie1Bi => Some(-1),
            Model::LieBi => Some(-2),
            Model::Tf => None,
        }
    }

    /// Degree of a Maurer-Cartan element.
    pub fn hamiltonian_degree(self) -> Option<i32> {
        match self {
            Model::Lie1Bi => Some(2),
            Model::LieBi => Some(3),
            Model::Tf => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown model `{s}` (expected lie1bi, tf or liebi)")))
    }
}

/// Polynomial coordinates for a model over `V`.
///
/// Symplectic models: variables `0..dim` are positions (`t^a` or `z^a`) and `dim..2dim` the
/// momenta `psi_a`. Position degrees are `-|e_a|` (odd model) or `1-|e_a|` (even model);
/// momenta have degree `|e_a|+1`.
///
/// Tensor model: variables are `t^a` of degree `-|e_a|`, then `p_a` and `q_a` of degree
/// `|e_a|`, standing for the first and second tensor factor `∂/∂t^a`. The truncation order
/// counts `t` factors only; the ring keeps two more for the tensor factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    model: Model,
    space: GradedSpace,
    order: usize,
    ring: PolyRing,
}

impl Coordinates {
    pub fn new(space: &GradedSpace, model: Model, order: usize) -> Self {
        let dim = space.dim();
        let mut vars = Vec::new();
        let pos = match model {
            Model::LieBi => "z",
            _ => "t",
        };
        for a in 0..dim {
            let d = space.degree(a);
            vars.push((format!("{pos}{}", a + 1), if model == Model::LieBi { 1 - d } else { -d }));
        }
        match model {
            Model::Tf => {
                for a in 0..dim {
                    vars.push((format!("p{}", a + 1), space.degree(a)));
                }
                for a in 0..dim {
                    vars.push((format!("q{}", a + 1), space.degree(a)));
                }
            }
            _ => {
                for a in 0..dim {
                    vars.push((format!("psi{}", a + 1), space.degree(a) + 1));
                }
            }
        }
        let ring_order = if model == Model::Tf { order + 2 } else { order };
        Coordinates { model, space: space.clone(), order, ring: PolyRing::new(vars, ring_order) }
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn with_order(&self, order: usize) -> Self {
        let ring_order = if self.model == Model::Tf { order + 2 } else { order };
        Coordinates { order, ring: self.ring.with_order(ring_order), ..self.clone() }
    }

    /// Same coordinates with new variable names (positions first, then the other side).
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        Ok(Coordinates { ring: self.ring.renamed(names)?, ..self.clone() })
    }

    /// Parses a polynomial written in these coordinates.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        Ok(self.truncate(&self.ring.parse(text)?))
    }

    /// Drops terms beyond the truncation order.
    pub fn truncate(&self, p: &Poly) -> Poly {
        match self.model {
            Model::Tf => p.filtered(|m| (0..self.dim()).map(|v| m.exponent(v) as usize).sum::<usize>() <= self.order),
            _ => self.ring.truncate(p),
        }
    }

    pub fn position(&self, a: usize) -> usize {
        a
    }

    pub fn momentum(&self, a: usize) -> usize {
        self.dim() + a
    }

    /// Number of position and momentum factors of a monomial.
    pub fn sides(&self, m: &Monomial) -> (usize, usize) {
        let d = self.dim();
        let pos = (0..d).map(|v| m.exponent(v) as usize).sum();
        let mom = (d..self.ring.nvars()).map(|v| m.exponent(v) as usize).sum();
        (pos, mom)
    }

    fn require_symplectic(&self, model: Model) -> Result<()> {
        if self.model != model {
            return Err(Error::invalid(format!("{} bracket requested on {} coordinates", model.name(), self.model)));
        }
        Ok(())
    }

    /// Degree −1 bracket of the odd model.
    pub fn odd_bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.require_symplectic(Model::Lie1Bi)?;
        Ok(self.raw_bracket(f, g))
    }

    /// Degree −2 bracket of the even model.
    pub fn even_bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.require_symplectic(Model::LieBi)?;
        Ok(self.raw_bracket(f, g))
    }

    /// The bracket of whichever symplectic model these coordinates carry.
    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        match self.model {
            Model::Tf => Err(Error::invalid("tensor coordinates carry no bracket")),
            _ => Ok(self.raw_bracket(f, g)),
        }
    }

    /// `Σ_a f ∂←/∂psi_a ∂→/∂x^a g − (−1)^{|x^a||psi_a|} f ∂←/∂x^a ∂→/∂psi_a g`, truncated.
    fn raw_bracket(&self, f: &Poly, g: &Poly) -> Poly {
        let r = &self.ring;
        let mut out = Poly::zero();
        for a in 0..self.dim() {
            let (x, psi) = (self.position(a), self.momentum(a));
            let fp = r.right_derivative(f, psi);
            if !fp.is_zero() {
                let gx = r.left_derivative(g, x);
                out.add_scaled(&r.mul(&fp, &gx), &Rational::one());
            }
            let fx = r.right_derivative(f, x);
            if !fx.is_zero() {
                let gp = r.left_derivative(g, psi);
                let both_odd = r.is_odd_var(x) && r.is_odd_var(psi);
                let sign = if both_odd { Rational::one() } else { Rational::int(-1) };
                out.add_scaled(&r.mul(&fx, &gp), &sign);
            }
        }
        out
    }

    pub fn format(&self, p: &Poly) -> String {
        self.ring.format(p)
    }
}
