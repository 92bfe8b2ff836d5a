#![allow(dead_code)]

use diocalc::exactalg::Rational;
use diocalc::formalgeo::{Monomial, Poly, PolyRing};
use rand::Rng;

/// Every normal-ordered monomial of polynomial order `lo..=hi`.
pub fn monomials(ring: &PolyRing, lo: usize, hi: usize) -> Vec<Monomial> {
    fn rec(ring: &PolyRing, v: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if v == ring.nvars() {
            out.push(Monomial(cur.clone()));
            return;
        }
        let cap = if ring.is_odd_var(v) { left.min(1) } else { left };
        for e in 0..=cap {
            cur.push(e as u8);
            rec(ring, v + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(ring, 0, hi, &mut Vec::new(), &mut all);
    all.retain(|m| (lo..=hi).contains(&m.order()));
    all
}

/// Random homogeneous polynomial of the given degree with at most `terms` terms.
pub fn random_poly(ring: &PolyRing, degree: i32, lo: usize, hi: usize, terms: usize, rng: &mut impl Rng) -> Poly {
    let pool: Vec<Monomial> = monomials(ring, lo, hi).into_iter().filter(|m| ring.monomial_degree(m) == degree).collect();
    let mut p = Poly::zero();
    if pool.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())].clone();
        let c = rng.gen_range(-3i64..=3);
        p.add_term(m, Rational::int(c));
    }
    p
}

use std::collections::BTreeMap;

use diocalc::dioperad::{Collection, Deco, SideRep};
use diocalc::exactalg::{parity, permutations};
use diocalc::formalgeo::{grelabel, GMap};

fn tuples(dim: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|t| (0..dim as u8).map(move |a| { let mut u = t.clone(); u.push(a); u })).collect();
    }
    out
}

/// Random homogeneous map of the given arity and degree with about `terms` nonzero coefficients.
pub fn random_gmap(degrees: &[i32], m: usize, n: usize, degree: i32, terms: usize, rng: &mut impl Rng) -> GMap {
    let w = |t: &[u8]| t.iter().map(|&a| degrees[a as usize]).sum::<i32>();
    let mut pool = Vec::new();
    for b in tuples(degrees.len(), m) {
        for a in tuples(degrees.len(), n) {
            if w(&b) - w(&a) == degree {
                pool.push((b.clone(), a));
            }
        }
    }
    let mut g = GMap::zero(m, n, degree);
    if pool.is_empty() {
        return g;
    }
    for _ in 0..terms {
        let (b, a) = pool[rng.gen_range(0..pool.len())].clone();
        g.add(b, a, Rational::int(rng.gen_range(-2i64..=2)));
    }
    g
}

fn one_based(p: &[usize]) -> Vec<usize> {
    p.iter().map(|x| x + 1).collect()
}

/// Averages a map over input permutations, and over output permutations with the sign
/// character when `skew`.
pub fn equivariant(degrees: &[i32], r: &GMap, sym_out: Option<bool>) -> GMap {
    let mut acc = GMap::zero(r.m, r.n, r.degree);
    let out_perms = if sym_out.is_some() { permutations(r.m) } else { vec![(0..r.m).collect()] };
    for sigma in &out_perms {
        let chi = match sym_out {
            Some(true) => parity(sigma),
            _ => 1,
        };
        for tau in permutations(r.n) {
            acc.add_scaled(&grelabel(degrees, r, &one_based(sigma), &one_based(&tau)), &Rational::int(chi as i64));
        }
    }
    acc
}

/// Random images of every decoration compatible with the module actions.
pub fn random_images(coll: &Collection, degrees: &[i32], terms: usize, rng: &mut impl Rng) -> BTreeMap<Deco, GMap> {
    let mut images = BTreeMap::new();
    for (mi, md) in coll.modules.iter().enumerate() {
        let r = random_gmap(degrees, md.m, md.n, md.degree, terms, rng);
        let module = mi as u16;
        match md.reps.expect("standard characters").0 {
            SideRep::Regular => {
                let g0 = equivariant(degrees, &r, None);
                let g1 = grelabel(degrees, &g0, &[2, 1], &(1..=md.n).collect::<Vec<_>>());
                images.insert(Deco { module, basis: 0 }, g0);
                images.insert(Deco { module, basis: 1 }, g1);
            }
            rep => {
                let g = equivariant(degrees, &r, Some(rep == SideRep::Sign));
                images.insert(Deco { module, basis: 0 }, g);
            }
        }
    }
    images
}

use diocalc::exactalg::GradedSpace;
use diocalc::formalgeo::{Coordinates, Model, TensorCollection};

/// `exp(ad_B) Γ` truncated; `B` must have polynomial order at least 3.
pub fn gauge(c: &Coordinates, gamma: &Poly, b: &Poly) -> Poly {
    let mut out = gamma.clone();
    let mut term = gamma.clone();
    let mut k = 1i64;
    loop {
        term = c.truncate(&c.bracket(b, &term).unwrap()).scaled(&Rational::int(k).recip().unwrap());
        if term.is_zero() {
            return out;
        }
        out.add_scaled(&term, &Rational::one());
        k += 1;
    }
}

/// Random function of the given degree vanishing on both Lagrangians, orders `lo..=hi`.
pub fn random_pointed(c: &Coordinates, degree: i32, lo: usize, hi: usize, terms: usize, rng: &mut impl Rng) -> Poly {
    let r = c.ring();
    let pool: Vec<Monomial> = monomials(r, lo, hi)
        .into_iter()
        .filter(|m| r.monomial_degree(m) == degree && { let (p, q) = c.sides(m); p > 0 && q > 0 })
        .collect();
    let mut p = Poly::zero();
    if pool.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())].clone();
        p.add_term(m, Rational::int(rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    p
}

pub fn random_degrees(rng: &mut impl Rng, dim: usize) -> GradedSpace {
    let d: Vec<i32> = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
    GradedSpace::from_degrees(&d)
}

/// Square-zero degree-one differential pairing some basis vectors `a -> b` with
/// `|b| = |a|+1` on the acting degrees, plus a bracket or cobracket seed where degrees allow.
pub fn seed_collection(model: Model, space: &GradedSpace, rng: &mut impl Rng) -> TensorCollection {
    let mut tc = TensorCollection::new(model, space.clone());
    let deg = tc.acting_degrees();
    let dim = space.dim();
    let mut used = vec![false; dim];
    for a in 0..dim {
        for b in 0..dim {
            if !used[a] && !used[b] && a != b && deg[b] == deg[a] + 1 && rng.gen_bool(0.7) {
                tc.set(1, 1, &[b as u8], &[a as u8], Rational::int(rng.gen_range(1i64..=2))).unwrap();
                used[a] = true;
                used[b] = true;
            }
        }
    }
    tc
}

/// `exp(L_Y)` applied to a vector field and a tensor, `Y` of degree 0 and order at least 2.
pub fn flow_tf(c: &Coordinates, y: &Poly, field: &Poly, tensor: &Poly) -> (Poly, Poly) {
    use diocalc::formalgeo::{lie_derivative, vector_bracket};
    let series = |start: &Poly, step: &dyn Fn(&Poly) -> Poly| {
        let (mut out, mut term, mut k) = (start.clone(), start.clone(), 1i64);
        loop {
            term = step(&term).scaled(&Rational::int(k).recip().unwrap());
            if term.is_zero() {
                return out;
            }
            out.add_scaled(&term, &Rational::one());
            k += 1;
        }
    };
    let f = series(field, &|x| vector_bracket(c, y, x).unwrap());
    let t = series(tensor, &|x| lie_derivative(c, y, x).unwrap());
    (f, t)
}

/// Random tensor-model collection arity: vector-field part (`m = 1`) or tensor part.
pub fn random_tf_part(c: &Coordinates, m: usize, degree: i32, lo: usize, hi: usize, terms: usize, rng: &mut impl Rng) -> Poly {
    let r = c.ring();
    let dim = c.dim();
    let pool: Vec<Monomial> = monomials(r, lo + m, hi + m)
        .into_iter()
        .filter(|mono| {
            let ts: usize = (0..dim).map(|v| mono.exponent(v) as usize).sum();
            let ps: usize = (dim..2 * dim).map(|v| mono.exponent(v) as usize).sum();
            let qs: usize = (2 * dim..3 * dim).map(|v| mono.exponent(v) as usize).sum();
            r.monomial_degree(mono) == degree && ts >= lo && ts <= hi && ps == 1 && qs == m - 1
        })
        .collect();
    let mut p = Poly::zero();
    if pool.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let mono = pool[rng.gen_range(0..pool.len())].clone();
        p.add_term(mono, Rational::int(rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    p
}

/// Random function whose positions lie in `a_side` and momenta outside it, so it brackets to
/// zero with itself.
pub fn random_split(c: &Coordinates, degree: i32, lo: usize, hi: usize, terms: usize, rng: &mut impl Rng) -> Poly {
    let dim = c.dim();
    let a_side: Vec<bool> = (0..dim).map(|_| rng.gen_bool(0.5)).collect();
    let r = c.ring();
    let pool: Vec<Monomial> = monomials(r, lo, hi)
        .into_iter()
        .filter(|m| {
            let (p, q) = c.sides(m);
            r.monomial_degree(m) == degree
                && p > 0
                && q > 0
                && (0..dim).all(|a| (m.exponent(a) == 0 || a_side[a]) && (m.exponent(dim + a) == 0 || !a_side[a]))
        })
        .collect();
    let mut p = Poly::zero();
    if pool.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())].clone();
        p.add_term(m, Rational::int(rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    p
}

/// A random structure in `model` truncated at `order`, with the Maurer-Cartan verdict from the
/// geometric side. Solutions come from split-support or linear seeds moved by a random gauge
/// transformation; roughly a third are perturbed into non-solutions.
pub fn random_case(model: Model, order: usize, rng: &mut impl Rng) -> (Coordinates, TensorCollection, bool) {
    use diocalc::formalgeo::{assemble, assemble_tf, extract_collection, lie_derivative, mc_check, tf_check};
    loop {
        let dim = rng.gen_range(2..=3);
        let v = random_degrees(rng, dim);
        let c = Coordinates::new(&v, model, order);
        let seed = seed_collection(model, &v, rng);
        let perturb = rng.gen_bool(0.5);
        let (tc, verdict) = if model == Model::Tf {
            let (f0, _) = assemble_tf(&seed, &c).unwrap();
            let chi = random_tf_part(&c, 2, -1, 1, order, 3, rng);
            let t0 = lie_derivative(&c, &f0, &chi).unwrap();
            let y = random_tf_part(&c, 1, 0, 2, order, 2, rng);
            let (mut f, mut t) = flow_tf(&c, &y, &f0, &t0);
            if perturb {
                if rng.gen_bool(0.5) {
                    t.add_scaled(&random_tf_part(&c, 2, 0, 1, order, 1, rng), &Rational::one());
                } else {
                    f.add_scaled(&random_tf_part(&c, 1, 1, 2, order, 1, rng), &Rational::one());
                }
            }
            if f.is_zero() && t.is_zero() {
                continue;
            }
            let tc = extract_collection(&[&f, &t], &c).unwrap();
            (tc, tf_check(&c, &f, &t).unwrap().passes())
        } else {
            let h = model.hamiltonian_degree().unwrap();
            let mut g = assemble(&seed, &c).unwrap();
            g.add_scaled(&random_split(&c, h, 3, order, 3, rng), &Rational::one());
            let b = random_pointed(&c, h - 1, 3, order, 2, rng);
            let mut g = gauge(&c, &g, &b);
            if perturb {
                g.add_scaled(&random_pointed(&c, h, 2, order, 2, rng), &Rational::one());
            }
            if g.is_zero() {
                continue;
            }
            let tc = extract_collection(&[&g], &c).unwrap();
            (tc, mc_check(&c, &g).unwrap().is_solution)
        };
        return (c, tc, verdict);
    }
}

/// Random odd-model solution with nonzero linear part and nonzero minimal part: a contractible
/// pair plus a split-support function of the harmonic coordinates, moved by a random
/// degree-preserving linear symplectomorphism and a random gauge of orders `3..=order`.
pub fn random_minimal_times_contractible(rng: &mut impl Rng, order: usize) -> (Coordinates, Poly) {
    use diocalc::exactalg::dense_inverse;
    use diocalc::formalgeo::{assemble, mc_check};
    loop {
        let h = rng.gen_range(1..=2);
        let b = rng.gen_range(1..=2);
        let mut degrees: Vec<i32> = (0..h).map(|_| rng.gen_range(-1..=1)).collect();
        let src: Vec<i32> = (0..b).map(|_| rng.gen_range(-1..=0)).collect();
        degrees.extend(src.iter().map(|d| d + 1));
        degrees.extend(&src);
        let dim = degrees.len();
        let v = GradedSpace::from_degrees(&degrees);
        let c = Coordinates::new(&v, Model::Lie1Bi, order);
        let mut tc = TensorCollection::new(Model::Lie1Bi, v.clone());
        for a in 0..b {
            tc.set(1, 1, &[(h + a) as u8], &[(h + b + a) as u8], Rational::int(rng.gen_range(1i64..=2))).unwrap();
        }
        let mut g = assemble(&tc, &c).unwrap();
        // minimal part on the first `h` positions and momenta
        let zc = Coordinates::new(&GradedSpace::from_degrees(&degrees[..h]), Model::Lie1Bi, order);
        let phi = random_pointed(&zc, 2, 3, order, 3, rng);
        if phi.is_zero() || !mc_check(&zc, &phi).unwrap().is_solution {
            continue;
        }
        let embed: Vec<Poly> = (0..h).map(|k| c.ring().var(k)).chain((0..h).map(|k| c.ring().var(dim + k))).collect();
        g.add_scaled(&c.ring().substitute(&embed, &phi).unwrap(), &Rational::one());
        // random invertible change of basis within each degree
        let mut p: Vec<Vec<Rational>> = (0..dim).map(|i| (0..dim).map(|j| Rational::int((i == j) as i64)).collect()).collect();
        for i in 0..dim {
            for j in 0..dim {
                if i != j && degrees[i] == degrees[j] && rng.gen_bool(0.5) {
                    p[i][j] = Rational::int(rng.gen_range(-2i64..=2));
                }
            }
        }
        let Some(inv) = dense_inverse(&p) else { continue };
        let r = c.ring();
        let mut images = Vec::new();
        for row in &p {
            let mut img = Poly::zero();
            for (j, x) in row.iter().enumerate() {
                img.add_scaled(&r.var(j), x);
            }
            images.push(img);
        }
        for a in 0..dim {
            let mut img = Poly::zero();
            for (j, row) in inv.iter().enumerate() {
                img.add_scaled(&r.var(dim + j), &row[a]);
            }
            images.push(img);
        }
        let g = c.truncate(&r.substitute(&images, &g).unwrap());
        let bgauge = random_pointed(&c, 1, 3, order, 3, rng);
        let g = gauge(&c, &g, &bgauge);
        assert!(mc_check(&c, &g).unwrap().is_solution);
        return (c, g);
    }
}
