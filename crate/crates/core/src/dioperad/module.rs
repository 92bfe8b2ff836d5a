use crate::error::{Error, Result};
use crate::exactalg::{permutations, Rational, SignedMatrix};

/// One-sided symmetric group representation used to build generator modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SideRep {
    Trivial,
    Sign,
    Regular,
    /// Regular representation tensored with the sign character.
    SignRegular,
}

impl SideRep {
    pub fn keyword(self) -> &'static str {
        match self {
            SideRep::Trivial => "trivial",
            SideRep::Sign => "sign",
            SideRep::Regular => "regular",
            SideRep::SignRegular => "sign-regular",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "trivial" | "symmetric" => Ok(SideRep::Trivial),
            "sign" | "skew" => Ok(SideRep::Sign),
            "regular" => Ok(SideRep::Regular),
            "sign-regular" => Ok(SideRep::SignRegular),
            _ => Err(Error::invalid(format!("unknown symmetry `{s}`"))),
        }
    }

    /// Tensoring with the sign character.
    pub fn sign_twisted(self) -> Self {
        match self {
            SideRep::Trivial => SideRep::Sign,
            SideRep::Sign => SideRep::Trivial,
            SideRep::Regular => SideRep::SignRegular,
            SideRep::SignRegular => SideRep::Regular,
        }
    }

    fn dim(self, k: usize) -> usize {
        match self {
            SideRep::Trivial | SideRep::Sign => 1,
            SideRep::Regular | SideRep::SignRegular => (1..=k).product(),
        }
    }

    /// Matrices of the adjacent transpositions `(i, i+1)`, `i = 0..k-1`.
    fn generators(self, k: usize) -> Vec<SignedMatrix> {
        let n = self.dim(k);
        (0..k.saturating_sub(1))
            .map(|i| match self {
                SideRep::Trivial => SignedMatrix::identity(1),
                SideRep::Sign => SignedMatrix::identity(1).scale(&Rational::int(-1)),
                SideRep::Regular | SideRep::SignRegular => {
                    let perms = permutations(k);
                    let mut mat = SignedMatrix::zeros(n, n);
                    let s = if self == SideRep::Regular { 1 } else { -1 };
                    for (j, g) in perms.iter().enumerate() {
                        let h: Vec<usize> = g
                            .iter()
                            .map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x })
                            .collect();
                        let r = perms.iter().position(|p| *p == h).expect("permutation present");
                        mat.set(r, j, Rational::int(s));
                    }
                    mat
                }
            })
            .collect()
    }
}

/// Finite-dimensional `(Σ_m, Σ_n)`-bimodule concentrated in one degree, given by the matrices
/// of adjacent transpositions acting on columns.
///
/// A decorated vertex `(x; s_1..s_m)` equals `(T_k x; s_1..s_{k+1}, s_k..s_m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaModule {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub degree: i32,
    pub dim: usize,
    pub out_gens: Vec<SignedMatrix>,
    pub in_gens: Vec<SignedMatrix>,
    /// Characters the module was built from, when it is a product of standard ones.
    pub reps: Option<(SideRep, SideRep)>,
}

impl SigmaModule {
    pub fn from_reps(name: &str, m: usize, n: usize, degree: i32, out: SideRep, inp: SideRep) -> Self {
        let (da, db) = (out.dim(m), inp.dim(n));
        let kron_left = |a: &SignedMatrix| {
            let mut r = SignedMatrix::zeros(da * db, da * db);
            for (&(i, j), v) in a.entries() {
                for k in 0..db {
                    r.set(i * db + k, j * db + k, v.clone());
                }
            }
            r
        };
        let kron_right = |b: &SignedMatrix| {
            let mut r = SignedMatrix::zeros(da * db, da * db);
            for (&(i, j), v) in b.entries() {
                for k in 0..da {
                    r.set(k * db + i, k * db + j, v.clone());
                }
            }
            r
        };
        SigmaModule {
            name: name.to_string(),
            m,
            n,
            degree,
            dim: da * db,
            out_gens: out.generators(m).iter().map(kron_left).collect(),
            in_gens: inp.generators(n).iter().map(kron_right).collect(),
            reps: Some((out, inp)),
        }
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    /// Checks that the generators are involutions satisfying the braid relations and that the
    /// two sides commute.
    pub fn check_action(&self) -> Result<()> {
        let id = SignedMatrix::identity(self.dim);
        for gens in [&self.out_gens, &self.in_gens] {
            for (k, t) in gens.iter().enumerate() {
                if t.mul(t)? != id {
                    return Err(Error::invalid(format!("{}: generator {k} is not an involution", self.name)));
                }
                if k + 1 < gens.len() {
                    let u = &gens[k + 1];
                    if t.mul(u)?.mul(t)? != u.mul(t)?.mul(u)? {
                        return Err(Error::invalid(format!("{}: braid relation fails at {k}", self.name)));
                    }
                }
                for (l, u) in gens.iter().enumerate() {
                    if l > k + 1 && t.mul(u)? != u.mul(t)? {
                        return Err(Error::invalid(format!("{}: distant generators do not commute", self.name)));
                    }
                }
            }
        }
        for a in &self.out_gens {
            for b in &self.in_gens {
                if a.mul(b)? != b.mul(a)? {
                    return Err(Error::invalid(format!("{}: left and right actions do not commute", self.name)));
                }
            }
        }
        Ok(())
    }

    /// Contragredient module with the given degree; bases are dual.
    pub fn contragredient(&self, name: &str, degree: i32) -> Self {
        SigmaModule {
            name: name.to_string(),
            m: self.m,
            n: self.n,
            degree,
            dim: self.dim,
            out_gens: self.out_gens.iter().map(|t| t.transpose()).collect(),
            in_gens: self.in_gens.iter().map(|t| t.transpose()).collect(),
            reps: None,
        }
    }

    /// Tensors both sides with `sign^p` and adds `shift` to the degree.
    pub fn sign_twist(&self, name: &str, p: usize, shift: i32) -> Self {
        let s = Rational::int(if p % 2 == 0 { 1 } else { -1 });
        SigmaModule {
            name: name.to_string(),
            m: self.m,
            n: self.n,
            degree: self.degree + shift,
            dim: self.dim,
            out_gens: self.out_gens.iter().map(|t| t.scale(&s)).collect(),
            in_gens: self.in_gens.iter().map(|t| t.scale(&s)).collect(),
            reps: self.reps.map(|(a, b)| if p % 2 == 0 { (a, b) } else { (a.sign_twisted(), b.sign_twisted()) }),
        }
    }

    /// `sign ⊗ E* ⊗ sign` with negated degree.
    pub fn koszul_dual(&self, name: &str) -> Self {
        let mut d = self.contragredient(name, -self.degree).sign_twist(name, 1, 0);
        d.reps = self.reps.map(|(a, b)| (a.sign_twisted(), b.sign_twisted()));
        // The dual of the regular basis is again a permutation basis, so the standard
        // characters dualize to themselves before the sign twist.
        d
    }

    /// Opposite module: outputs and inputs exchanged.
    pub fn opposite(&self, name: &str) -> Self {
        SigmaModule {
            name: name.to_string(),
            m: self.n,
            n: self.m,
            degree: self.degree,
            dim: self.dim,
            out_gens: self.in_gens.clone(),
            in_gens: self.out_gens.clone(),
            reps: self.reps.map(|(a, b)| (b, a)),
        }
    }
}

/// Vertex decoration: basis vector `basis` of module `module` in a [`Collection`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Deco {
    pub module: u16,
    pub basis: u16,
}

/// Ordered list of bimodules indexed by position.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Collection {
    pub modules: Vec<SigmaModule>,
}

impl Collection {
    pub fn new(modules: Vec<SigmaModule>) -> Self {
        Collection { modules }
    }

    pub fn module(&self, d: Deco) -> &SigmaModule {
        &self.modules[d.module as usize]
    }

    pub fn degree(&self, d: Deco) -> i32 {
        self.modules[d.module as usize].degree
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.modules.iter().position(|m| m.name == name)
    }

    pub fn arities(&self) -> Vec<(usize, usize)> {
        let mut a: Vec<(usize, usize)> = self.modules.iter().filter(|m| m.dim > 0).map(|m| m.arity()).collect();
        a.sort();
        a.dedup();
        a
    }

    /// All decorations of a vertex with the given arity.
    pub fn decorations(&self, arity: (usize, usize)) -> Vec<Deco> {
        let mut out = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            if m.arity() == arity {
                for b in 0..m.dim {
                    out.push(Deco { module: i as u16, basis: b as u16 });
                }
            }
        }
        out
    }

    /// Human-readable decoration name: the module name, with `.k` for basis vectors beyond 0.
    pub fn deco_name(&self, d: Deco) -> String {
        let m = self.module(d);
        if m.dim == 1 {
            m.name.clone()
        } else {
            format!("{}.{}", m.name, d.basis)
        }
    }

    pub fn parse_deco(&self, s: &str) -> Result<Deco> {
        let (name, idx) = match s.rsplit_once('.') {
            Some((a, b)) if b.chars().all(|c| c.is_ascii_digit()) && !b.is_empty() => (a, b.parse::<usize>().unwrap()),
            _ => (s, 0),
        };
        let module = self.find(name).ok_or_else(|| Error::invalid(format!("unknown generator `{name}`")))?;
        if idx >= self.modules[module].dim {
            return Err(Error::invalid(format!("basis index {idx} out of range for `{name}`")));
        }
        Ok(Deco { module: module as u16, basis: idx as u16 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_modules_are_actions() {
        for out in [SideRep::Trivial, SideRep::Sign, SideRep::Regular, SideRep::SignRegular] {
            for inp in [SideRep::Trivial, SideRep::Sign, SideRep::Regular] {
                let m = SigmaModule::from_reps("x", 3, 2, 0, out, inp);
                m.check_action().unwrap();
                m.koszul_dual("y").check_action().unwrap();
            }
        }
    }

    #[test]
    fn regular_two_swaps_basis() {
        let m = SigmaModule::from_reps("delta", 2, 1, 0, SideRep::Regular, SideRep::Trivial);
        assert_eq!(m.dim, 2);
        assert_eq!(m.out_gens[0].get(1, 0), Rational::one());
        assert_eq!(m.out_gens[0].get(0, 1), Rational::one());
    }

    #[test]
    fn dual_characters() {
        let m = SigmaModule::from_reps("b", 1, 2, 1, SideRep::Trivial, SideRep::Trivial);
        let d = m.koszul_dual("b*");
        assert_eq!(d.degree, -1);
        assert_eq!(d.in_gens[0].get(0, 0), Rational::int(-1));
        assert_eq!(d.reps, Some((SideRep::Sign, SideRep::Sign)));
    }
}
