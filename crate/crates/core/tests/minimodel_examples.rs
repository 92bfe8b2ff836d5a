mod common;

use diocalc::exactalg::{dense_rank, GradedSpace, Rational};
use diocalc::formalgeo::{assemble, mc_check, Coordinates, Model, Poly, TensorCollection};
use diocalc::minimodel::{
    decompose, delta_homotopy, delta_operator, harmonic_projection, morphism_check, split_quadratic, CoordMap, Splitting,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(v: i64) -> Rational {
    Rational::int(v)
}

/// Odd-model function whose linear part is the given matrix `d[b][a]`.
fn linear_gamma(space: &GradedSpace, d: &[Vec<i64>], order: usize) -> (Coordinates, Poly) {
    let c = Coordinates::new(space, Model::Lie1Bi, order);
    let mut tc = TensorCollection::new(Model::Lie1Bi, space.clone());
    for (b, row) in d.iter().enumerate() {
        for (a, &v) in row.iter().enumerate() {
            if v != 0 {
                tc.set(1, 1, &[b as u8], &[a as u8], q(v)).unwrap();
            }
        }
    }
    let g = assemble(&tc, &c).unwrap();
    (c, g)
}

fn apply(d: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    d.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn check_splitting_invariants(s: &Splitting) {
    let d = s.differential();
    let dim = s.space().dim();
    for v in s.harmonic().iter().chain(s.targets()) {
        assert!(apply(d, v).iter().all(Rational::is_zero));
    }
    for (src, tgt) in s.sources().iter().zip(s.targets()) {
        assert_eq!(&apply(d, src), tgt);
    }
    let all: Vec<Vec<Rational>> = s.harmonic().iter().chain(s.targets()).chain(s.sources()).cloned().collect();
    assert_eq!(all.len(), dim);
    assert_eq!(dense_rank(all), dim);
    // rank oracle: dim H = dim V - 2 rank d
    assert_eq!(s.harmonic_dim(), dim - 2 * dense_rank(d.to_vec()));
}

#[test]
fn split_examples() {
    let v = GradedSpace::from_degrees(&[0, 1, -1]);
    let c = Coordinates::new(&v, Model::Lie1Bi, 3);
    let s = split_quadratic(&c, &Poly::zero()).unwrap();
    assert_eq!((s.harmonic_dim(), s.boundary_dim()), (3, 0));

    let v = GradedSpace::new(vec![("a".into(), 0), ("b".into(), 1)]).unwrap();
    let (c, g) = linear_gamma(&v, &[vec![0, 0], vec![1, 0]], 3);
    let s = split_quadratic(&c, &g).unwrap();
    assert_eq!((s.harmonic_dim(), s.boundary_dim()), (0, 1));
    check_splitting_invariants(&s);

    let v = GradedSpace::from_degrees(&[0, 0, 1, 1]);
    let (c, g) = linear_gamma(&v, &[vec![0; 4], vec![0; 4], vec![2, 1, 0, 0], vec![1, 1, 0, 0]], 3);
    let s = split_quadratic(&c, &g).unwrap();
    assert_eq!((s.harmonic_dim(), s.boundary_dim()), (0, 2));
    check_splitting_invariants(&s);
}

#[test]
fn split_rejects_non_square_zero() {
    let v = GradedSpace::from_degrees(&[0, 1, 2]);
    let (c, g) = linear_gamma(&v, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]], 3);
    let err = split_quadratic(&c, &g).unwrap_err();
    assert!(err.to_string().contains("square to zero"), "{err}");
}

fn random_square_zero(rng: &mut impl Rng, degrees: &[i32]) -> Vec<Vec<i64>> {
    let dim = degrees.len();
    let mut d = vec![vec![0i64; dim]; dim];
    let mut used = vec![false; dim];
    // d = sum of rank-one pieces e_b ⊗ e_a^* on disjoint pairs, then conjugated within degrees
    for a in 0..dim {
        for b in 0..dim {
            if !used[a] && !used[b] && degrees[b] == degrees[a] + 1 && rng.gen_bool(0.6) {
                d[b][a] = rng.gen_range(1..=2);
                used[a] = true;
                used[b] = true;
            }
        }
    }
    // elementary change of basis e_i += k e_j with equal degrees keeps d square-zero
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        if i != j && degrees[i] == degrees[j] {
            let k = rng.gen_range(-1..=1);
            // conjugate: d' = E d E^{-1} with E = 1 + k E_{ij}
            let mut e = d.clone();
            for col in 0..dim {
                e[i][col] += k * d[j][col];
            }
            let mut out = e.clone();
            for row in 0..dim {
                out[row][j] -= k * e[row][i];
            }
            d = out;
        }
    }
    d
}

#[test]
fn random_splittings_satisfy_the_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let dim = rng.gen_range(2..=5);
        let degrees: Vec<i32> = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
        let d = random_square_zero(&mut rng, &degrees);
        let (c, g) = linear_gamma(&GradedSpace::from_degrees(&degrees), &d, 3);
        check_splitting_invariants(&split_quadratic(&c, &g).unwrap());
    }
}

/// `z1 z2 x1 y1` with `|y1| = 0`, `|x1| = 1`, `|z1| = 0`, `|z2| = -1`.
fn small_split(order: usize) -> (Splitting, Coordinates) {
    let v = GradedSpace::from_degrees(&[0, -1, 0, 1]);
    let (c, g) = linear_gamma(&v, &[vec![0; 4], vec![0; 4], vec![0; 4], vec![0, 0, 3, 0]], order);
    let s = split_quadratic(&c, &g).unwrap();
    let a = s.coordinates(order);
    (s, a)
}

#[test]
fn delta_examples() {
    let (s, c) = small_split(4);
    let r = c.ring();
    assert_eq!(r.var_name(c.position(s.x(0))), "x1");
    let v = |name: &str| c.parse(name).unwrap();
    let dx = delta_operator(&c, &s, &v("x1")).unwrap();
    assert!(dx == v("y1") || dx == v("-y1"), "{}", c.format(&dx));
    let dphi = delta_operator(&c, &s, &v("phi1")).unwrap();
    assert!(dphi == v("psi1") || dphi == v("-psi1"), "{}", c.format(&dphi));
    for name in ["z1", "z2", "xi1", "xi2", "y1", "psi1"] {
        assert!(delta_operator(&c, &s, &v(name)).unwrap().is_zero(), "{name}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let deg = rng.gen_range(-2..=3);
        let f = common::random_poly(r, deg, 1, 4, 6, &mut rng);
        let d1 = delta_operator(&c, &s, &f).unwrap();
        assert!(delta_operator(&c, &s, &d1).unwrap().is_zero());
        let zf = harmonic_projection(&c, &s, &f);
        assert!(delta_operator(&c, &s, &zf).unwrap().is_zero());
    }
}

#[test]
fn homotopy_examples() {
    let (s, c) = small_split(4);
    let v = |name: &str| c.parse(name).unwrap();
    assert!(delta_homotopy(&c, &s, &v("z1*z2*xi1")).unwrap().is_zero());
    let h = delta_homotopy(&c, &s, &v("y1*z2*xi2")).unwrap();
    assert!(h == v("x1*z2*xi2") || h == v("-x1*z2*xi2"), "{}", c.format(&h));
}

#[test]
fn homotopy_identity_holds_on_every_monomial() {
    let (s, c) = small_split(5);
    let r = c.ring();
    let all = common::monomials(r, 0, 5);
    assert!(all.len() > 500);
    for m in &all {
        let mut f = Poly::zero();
        f.add_term(m.clone(), q(1));
        let lhs = delta_operator(&c, &s, &delta_homotopy(&c, &s, &f).unwrap())
            .unwrap()
            .sum(&delta_homotopy(&c, &s, &delta_operator(&c, &s, &f).unwrap()).unwrap());
        assert_eq!(lhs, f.difference(&harmonic_projection(&c, &s, &f)), "monomial {}", c.format(&f));
    }
}

#[test]
fn decompose_trivial_cases() {
    // already minimal
    let v = GradedSpace::from_degrees(&[0, 0]);
    let c = Coordinates::new(&v, Model::Lie1Bi, 4);
    let g = c.parse("t1*t2*psi1*psi2").unwrap();
    let dec = decompose(&c, &g).unwrap();
    let id: Vec<Poly> = (0..4).map(|k| dec.adapted.ring().var(k)).collect();
    assert_eq!(dec.map.images(), id.as_slice());
    assert_eq!(dec.minimal, dec.adapted.ring().parse("z1*z2*xi1*xi2").unwrap());

    // purely contractible
    let v = GradedSpace::new(vec![("a".into(), 0), ("b".into(), 1)]).unwrap();
    let (c, g) = linear_gamma(&v, &[vec![0, 0], vec![1, 0]], 4);
    let dec = decompose(&c, &g).unwrap();
    assert!(dec.minimal.is_zero());
    assert_eq!(dec.normal_form(), dec.adapted.parse("y1*psi1").unwrap());

    // zero input
    let dec = decompose(&c, &Poly::zero()).unwrap();
    assert!(dec.minimal.is_zero() && dec.contractible.is_zero());
}

#[test]
fn decompose_reports_the_failing_order() {
    let v = GradedSpace::from_degrees(&[0, 0, 0]);
    let c = Coordinates::new(&v, Model::Lie1Bi, 4);
    let g = c.parse("t3*psi1*psi2 + t2*psi2*psi3").unwrap();
    let rep = mc_check(&c, &g).unwrap();
    assert!(!rep.is_solution);
    let err = decompose(&c, &g).unwrap_err().to_string();
    assert!(err.contains(&format!("order {}", rep.residual.min_order().unwrap())), "{err}");
}

/// Random Maurer-Cartan elements with nonzero linear part.
pub fn random_solution(rng: &mut impl Rng, order: usize) -> (Coordinates, Poly) {
    loop {
        let (c, tc, ok) = common::random_case(Model::Lie1Bi, order, rng);
        let g = assemble(&tc, &c).unwrap();
        if ok && !g.component(2).is_zero() && g.max_order() > Some(2) {
            return (c, g);
        }
    }
}

#[test]
fn decompose_random_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut nontrivial_minimal = 0;
    for k in 0..30 {
        let (c, g) = if k % 2 == 0 { random_solution(&mut rng, 4) } else { common::random_minimal_times_contractible(&mut rng, 4) };
        let dec = decompose(&c, &g).unwrap();
        let rep = morphism_check(&dec.map, &dec.normal_form(), &g).unwrap();
        assert!(rep.passes(), "{rep:?}\n{}", c.format(&g));
        assert_eq!(rep.source_cohomology, dec.splitting.harmonic_dim());
        let (rc, phi) = dec.reduced().unwrap();
        assert!(mc_check(&rc, &phi).unwrap().is_solution);
        if !phi.is_zero() {
            nontrivial_minimal += 1;
        }
        // induced map on cohomology is the identity in the splitting basis
        let lin = dec.map.linear_part();
        for (alpha, hv) in dec.splitting.harmonic().iter().enumerate() {
            let col: Vec<Rational> = (0..c.dim()).map(|row| lin[row][alpha].clone()).collect();
            assert_eq!(&col, hv);
        }
        assert_eq!(dec.stages.len(), 2);
    }
    assert!(nontrivial_minimal >= 10, "{nontrivial_minimal}");
}

#[test]
fn morphism_check_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (c, g) = random_solution(&mut rng, 4);
    let id = CoordMap::identity(&c);
    let rep = morphism_check(&id, &g, &g).unwrap();
    assert!(rep.passes(), "{rep:?}");

    // t -> 2t, psi -> psi is invertible but not symplectic
    let r = c.ring();
    let images: Vec<Poly> = (0..r.nvars()).map(|v| r.var(v).scaled(&q(if v < c.dim() { 2 } else { 1 }))).collect();
    let scaled = CoordMap::new(c.clone(), c.clone(), images).unwrap();
    assert!(!morphism_check(&scaled, &g, &g).unwrap().symplectic);

    // a non-injective linear part is diagnosed
    let images: Vec<Poly> = (0..r.nvars()).map(|v| if v == 0 { Poly::zero() } else { r.var(v) }).collect();
    let degenerate = CoordMap::new(c.clone(), c.clone(), images).unwrap();
    assert!(morphism_check(&degenerate, &g, &g).is_err());

    // a symplectic map that does not pull back Γ
    let dec = decompose(&c, &g).unwrap();
    let rep = morphism_check(&dec.map, &dec.contractible, &g).unwrap();
    assert!(rep.symplectic && rep.preserves_lagrangian && rep.preserves_dual_lagrangian);
    assert_eq!(rep.pulls_back, dec.minimal.is_zero());
}

#[test]
fn coordinate_maps_validate_and_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (c, g) = random_solution(&mut rng, 4);
    let dec = decompose(&c, &g).unwrap();
    let text = dec.map.to_text();
    assert_eq!(CoordMap::parse(&text).unwrap(), dec.map);
    let bad = text.replacen("order 4", "order x", 1);
    assert!(matches!(CoordMap::parse(&bad), Err(diocalc::Error::Parse { line: 3, .. })));
    // images must respect degrees and vanish at the origin
    let r = c.ring();
    let mut images: Vec<Poly> = (0..r.nvars()).map(|v| r.var(v)).collect();
    images[0] = r.constant(q(1));
    assert!(CoordMap::new(c.clone(), c.clone(), images.clone()).is_err());
    images[0] = r.var(r.nvars() - 1);
    if r.var_degree(0) != r.var_degree(r.nvars() - 1) {
        assert!(CoordMap::new(c.clone(), c.clone(), images).is_err());
    }
    // composition with the identity is neutral
    let id = CoordMap::identity(&dec.adapted);
    assert_eq!(id.compose(&dec.map).unwrap(), dec.map);
}
