mod common;

use common::*;
use diocalc::error::Error;
use diocalc::exactalg::{GradedSpace, Rational};
use diocalc::formalgeo::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(v: i64) -> Rational {
    Rational::int(v)
}

fn mono(c: &Coordinates, vars: &[usize]) -> Poly {
    let r = c.ring();
    r.product(&vars.iter().map(|&v| r.var(v)).collect::<Vec<_>>())
}

#[test]
fn zero_collection_assembles_to_zero() {
    let v = GradedSpace::from_degrees(&[-1, 0, 1]);
    for model in Model::ALL {
        let c = Coordinates::new(&v, model, 4);
        let tc = TensorCollection::new(model, v.clone());
        if model == Model::Tf {
            let (f, t) = assemble_tf(&tc, &c).unwrap();
            assert!(f.is_zero() && t.is_zero());
        } else {
            assert!(assemble(&tc, &c).unwrap().is_zero());
            assert!(mc_check(&c, &Poly::zero()).unwrap().is_solution);
        }
    }
}

#[test]
fn plane_example_assembles_and_round_trips() {
    // all degrees zero: every sign exponent vanishes, and the four orderings of the indices
    // each contribute t1 t2 psi1 psi2 with weight 1/4
    let v = GradedSpace::from_degrees(&[0, 0]);
    let c = Coordinates::new(&v, Model::Lie1Bi, 4);
    let mut tc = TensorCollection::new(Model::Lie1Bi, v.clone());
    tc.set(2, 2, &[0, 1], &[0, 1], q(1)).unwrap();
    let g = assemble(&tc, &c).unwrap();
    assert_eq!(g, mono(&c, &[0, 1, 2, 3]));
    assert_eq!(extract_collection(&[&g], &c).unwrap(), tc);
    let rep = mc_check(&c, &g).unwrap();
    assert!(rep.is_solution && rep.residual.is_zero());
}

fn random_collection(model: Model, v: &GradedSpace, order: usize, rng: &mut impl Rng) -> TensorCollection {
    let mut tc = TensorCollection::new(model, v.clone());
    for s in 2..=order + if model == Model::Tf { 2 } else { 0 } {
        for m in 1..s {
            let n = s - m;
            if !tc.allows(m, n) || (model == Model::Tf && n > order) {
                continue;
            }
            let keys = tc.canonical_keys(m, n);
            for _ in 0..2 {
                if keys.is_empty() {
                    break;
                }
                let (outs, ins) = keys[rng.gen_range(0..keys.len())].clone();
                let _ = tc.set_canonical(m, n, (outs, ins), Rational::int(rng.gen_range(-3i64..=3)));
            }
        }
    }
    tc
}

#[test]
fn assembled_functions_are_homogeneous_pointed_and_invertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let dim = rng.gen_range(1..=3);
        let v = random_degrees(&mut rng, dim);
        for model in Model::ALL {
            let c = Coordinates::new(&v, model, 4);
            let tc = random_collection(model, &v, 4, &mut rng);
            if model == Model::Tf {
                let (f, t) = assemble_tf(&tc, &c).unwrap();
                for (p, want) in [(&f, 1), (&t, 0)] {
                    assert!(c.ring().degree(p).unwrap().map_or(true, |d| d == want));
                }
                assert!(tf_check(&c, &f, &t).is_ok());
                assert_eq!(extract_collection(&[&f, &t], &c).unwrap(), tc);
            } else {
                let g = assemble(&tc, &c).unwrap();
                let want = model.hamiltonian_degree().unwrap();
                assert!(c.ring().degree(&g).unwrap().map_or(true, |d| d == want));
                for (m, _) in g.terms() {
                    let (p, s) = c.sides(m);
                    assert!(p >= 1 && s >= 1 && p + s >= 2);
                }
                assert!(check_hamiltonian(&c, &g).is_ok());
                assert_eq!(extract_collection(&[&g], &c).unwrap(), tc.truncated(4));
            }
        }
    }
}

#[test]
fn linear_part_is_a_solution_iff_the_matrix_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut seen = [0usize; 2];
    for _ in 0..80 {
        let v = GradedSpace::from_degrees(&[-1, 0, 0, 1]);
        for model in [Model::Lie1Bi, Model::LieBi] {
            let c = Coordinates::new(&v, model, 3);
            let mut tc = TensorCollection::new(model, v.clone());
            let deg = tc.acting_degrees();
            // matrix of the differential: column a, row b
            let mut mat = vec![vec![q(0); 4]; 4];
            for a in 0..4 {
                for b in 0..4 {
                    if deg[b] == deg[a] + 1 && rng.gen_bool(0.6) {
                        mat[b][a] = q(rng.gen_range(-2i64..=2));
                        tc.set(1, 1, &[b as u8], &[a as u8], mat[b][a].clone()).unwrap();
                    }
                }
            }
            let square_zero = (0..4).all(|i| (0..4).all(|k| (0..4).map(|j| &mat[i][j] * &mat[j][k]).sum::<Rational>().is_zero()));
            let rep = mc_check(&c, &assemble(&tc, &c).unwrap()).unwrap();
            assert_eq!(rep.is_solution, square_zero);
            assert_eq!(rep.residual.is_zero(), square_zero);
            seen[square_zero as usize] += 1;
        }
    }
    assert!(seen[0] > 10 && seen[1] > 10, "{seen:?}");
}

#[test]
fn generic_functions_fail() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let v = GradedSpace::from_degrees(&[0, 0, 0]);
    let c = Coordinates::new(&v, Model::Lie1Bi, 4);
    let mut failures = 0;
    for _ in 0..20 {
        let g = random_pointed(&c, 2, 2, 4, 40, &mut rng);
        let rep = mc_check(&c, &g).unwrap();
        assert_eq!(rep.is_solution, rep.residual.is_zero());
        failures += usize::from(!rep.is_solution);
    }
    assert!(failures >= 15, "{failures}");
}

#[test]
fn preconditions_are_diagnosed() {
    let v = GradedSpace::from_degrees(&[0, 0]);
    let c = Coordinates::new(&v, Model::Lie1Bi, 4);
    let good = mono(&c, &[0, 1, 2, 3]);
    let mut wrong_degree = good.clone();
    wrong_degree.add_scaled(&mono(&c, &[0, 2]), &q(1));
    match mc_check(&c, &wrong_degree) {
        Err(Error::InvalidInput(msg)) => assert!(msg.contains("degree") && msg.contains("t1*psi1"), "{msg}"),
        other => panic!("expected a degree diagnostic, got {other:?}"),
    }
    let mut not_pointed = good;
    not_pointed.add_scaled(&mono(&c, &[2, 3]), &q(1));
    match mc_check(&c, &not_pointed) {
        Err(Error::InvalidInput(msg)) => assert!(msg.contains("does not vanish"), "{msg}"),
        other => panic!("expected a vanishing diagnostic, got {other:?}"),
    }
    let tf = Coordinates::new(&v, Model::Tf, 4);
    assert!(mc_check(&tf, &Poly::zero()).is_err());
    let even = Coordinates::new(&v, Model::LieBi, 4);
    assert!(c.bracket(&Poly::zero(), &Poly::zero()).is_ok());
    assert!(even.odd_bracket(&Poly::zero(), &Poly::zero()).is_err());
}

#[test]
fn tensor_model_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    // zero field: any tensor passes
    let v = GradedSpace::from_degrees(&[-1, 0, 1]);
    let c = Coordinates::new(&v, Model::Tf, 3);
    for _ in 0..10 {
        let t = random_tf_part(&c, 2, 0, 1, 3, 4, &mut rng);
        assert!(tf_check(&c, &Poly::zero(), &t).unwrap().passes());
    }
    // a line in degree 0 carries no degree one field, and every tensor passes
    let line = GradedSpace::from_degrees(&[0]);
    let mut tc = TensorCollection::new(Model::Tf, line.clone());
    assert!(tc.set(1, 2, &[0], &[0, 0], q(1)).is_err());
    assert!(tc.canonical_keys(1, 2).is_empty() && tc.canonical_keys(1, 3).is_empty());
    tc.set(2, 2, &[0, 0], &[0, 0], q(3)).unwrap();
    tc.set(2, 1, &[0, 0], &[0], q(-1)).unwrap();
    let lc = Coordinates::new(&line, Model::Tf, 3);
    let (f, t) = assemble_tf(&tc, &lc).unwrap();
    assert!(f.is_zero() && !t.is_zero());
    assert!(tf_check(&lc, &f, &t).unwrap().passes());
    // e1 in degree -1, e2 in degree 0, d e1 = e2: the field is t1 p2 and the tensor t2 p2 q2
    // moves to t1 p2 q2 (the derivation sends t2 to t1 and kills p2, q2)
    let v = GradedSpace::from_degrees(&[-1, 0]);
    let c = Coordinates::new(&v, Model::Tf, 3);
    let mut tc = TensorCollection::new(Model::Tf, v.clone());
    tc.set(1, 1, &[1], &[0], q(1)).unwrap();
    let (field, _) = assemble_tf(&tc, &c).unwrap();
    assert_eq!(field, mono(&c, &[0, 3]));
    let rep = tf_check(&c, &field, &mono(&c, &[1, 3, 5])).unwrap();
    assert!(rep.field_residual.is_zero());
    assert_eq!(rep.lie_residual, mono(&c, &[0, 3, 5]));
    assert!(!rep.passes());
}

/// Jacobi identity of ungraded structure constants `c[k][i][j]`.
fn jacobi_holds(c: &[[[i64; 3]; 3]; 3]) -> bool {
    let br = |u: [i64; 3], w: [i64; 3]| {
        let mut o = [0i64; 3];
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    o[k] += c[k][i][j] * u[i] * w[j];
                }
            }
        }
        o
    };
    let e = |i: usize| {
        let mut u = [0i64; 3];
        u[i] = 1;
        u
    };
    (0..3).all(|a| {
        (0..3).all(|b| {
            (0..3).all(|x| {
                let s1 = br(e(a), br(e(b), e(x)));
                let s2 = br(e(b), br(e(x), e(a)));
                let s3 = br(e(x), br(e(a), e(b)));
                (0..3).all(|k| s1[k] + s2[k] + s3[k] == 0)
            })
        })
    })
}

fn random_constants(rng: &mut impl Rng) -> [[[i64; 3]; 3]; 3] {
    let mut c = [[[0i64; 3]; 3]; 3];
    if rng.gen_bool(0.4) {
        // so(3)
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[k][i][j] = 1;
            c[k][j][i] = -1;
        }
        return c;
    }
    for _ in 0..rng.gen_range(2..=5) {
        let (i, j, k) = (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3));
        if i != j {
            let v = rng.gen_range(-1i64..=1);
            c[k][i][j] = v;
            c[k][j][i] = -v;
        }
    }
    c
}

#[test]
fn lie_brackets_pass_iff_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let v = GradedSpace::from_degrees(&[-1, -1, -1]);
    let mut seen = [0usize; 2];
    for _ in 0..60 {
        let consts = random_constants(&mut rng);
        let mut tc = TensorCollection::new(Model::Lie1Bi, v.clone());
        for k in 0..3 {
            for i in 0..3 {
                for j in i + 1..3 {
                    tc.set(1, 2, &[k as u8], &[i as u8, j as u8], q(consts[k][i][j])).unwrap();
                }
            }
        }
        let rep = lie1bi_axiom_check(&tc).unwrap();
        let want = jacobi_holds(&consts);
        assert_eq!(rep.passes(), want);
        assert!(rep.co_jacobi.is_empty() && rep.leibniz.is_empty());
        seen[want as usize] += 1;
    }
    assert!(seen[0] > 5 && seen[1] > 5, "{seen:?}");
}

#[test]
fn colie_cobrackets_pass_iff_co_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let v = GradedSpace::from_degrees(&[0, 0, 0]);
    let mut seen = [0usize; 2];
    for _ in 0..60 {
        let consts = random_constants(&mut rng);
        let mut tc = TensorCollection::new(Model::Lie1Bi, v.clone());
        for k in 0..3 {
            for i in 0..3 {
                for j in i + 1..3 {
                    tc.set(2, 1, &[i as u8, j as u8], &[k as u8], q(consts[k][i][j])).unwrap();
                }
            }
        }
        let rep = lie1bi_axiom_check(&tc).unwrap();
        let want = jacobi_holds(&consts);
        assert_eq!(rep.passes(), want);
        assert!(rep.jacobi.is_empty() && rep.leibniz.is_empty());
        seen[want as usize] += 1;
    }
    assert!(seen[0] > 5 && seen[1] > 5, "{seen:?}");
}

#[test]
fn axiom_check_agrees_with_mc_on_cubic_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut seen, mut total) = ([0usize; 2], 0);
    while total < 60 {
        let v = random_degrees(&mut rng, 3);
        let c = Coordinates::new(&v, Model::Lie1Bi, 4);
        let mut g = random_split(&c, 2, 3, 3, 3, &mut rng);
        if rng.gen_bool(0.6) {
            g.add_scaled(&random_pointed(&c, 2, 3, 3, 3, &mut rng), &q(1));
        }
        if g.is_zero() {
            continue;
        }
        total += 1;
        let tc = extract_collection(&[&g], &c).unwrap();
        let mc = mc_check(&c, &g).unwrap().is_solution;
        assert_eq!(lie1bi_axiom_check(&tc).unwrap().passes(), mc, "{}", tc.to_text());
        seen[mc as usize] += 1;
    }
    assert!(seen[0] >= 15 && seen[1] >= 15, "{seen:?}");
}

#[test]
fn relation_evaluation_agrees_with_geometry() {
    for model in Model::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut seen = [0usize; 2];
        for _ in 0..40 {
            let (_, tc, verdict) = random_case(model, 4, &mut rng);
            assert_eq!(relation_check(&tc, 4).unwrap().holds(), verdict, "{model}\n{}", tc.to_text());
            seen[verdict as usize] += 1;
        }
        assert!(seen[0] >= 5 && seen[1] >= 5, "{model} {seen:?}");
    }
}

#[test]
fn truncation_is_coherent() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..30 {
        let v = random_degrees(&mut rng, 3);
        for model in [Model::Lie1Bi, Model::LieBi] {
            let big = Coordinates::new(&v, model, 5);
            let small = big.with_order(3);
            let h = model.hamiltonian_degree().unwrap();
            let f = random_pointed(&big, h, 2, 5, 4, &mut rng);
            let g = random_pointed(&big, h, 2, 5, 4, &mut rng);
            let direct = small.bracket(&small.truncate(&f), &small.truncate(&g)).unwrap();
            assert_eq!(small.truncate(&big.bracket(&f, &g).unwrap()), small.truncate(&direct));
            let r_big = mc_check(&big, &f).unwrap().residual;
            assert_eq!(small.truncate(&r_big), mc_check(&small, &f).unwrap().residual);
            let tc = extract_collection(&[&f], &big).unwrap();
            assert_eq!(small.truncate(&assemble(&tc, &big).unwrap()), assemble(&tc, &small).unwrap());
        }
        let big = Coordinates::new(&v, Model::Tf, 4);
        let small = big.with_order(2);
        let x = random_tf_part(&big, 1, 1, 1, 4, 3, &mut rng);
        let t = random_tf_part(&big, 2, 0, 1, 4, 3, &mut rng);
        let direct = tf_check(&small, &small.truncate(&x), &small.truncate(&t)).unwrap();
        let full = tf_check(&big, &x, &t).unwrap();
        assert_eq!(small.truncate(&full.field_residual), direct.field_residual);
        assert_eq!(small.truncate(&full.lie_residual), direct.lie_residual);
    }
}

#[test]
fn text_format_round_trips_and_reports_lines() {
    let text = "model lie1bi\nbasis a:-1 b:0 c:1\n# differential\nmu[1,1][b|a] = 2\nmu[2,1][a c|b] = 1/3\n";
    let tc = TensorCollection::parse(text).unwrap();
    assert_eq!(tc.get(1, 1, &[1], &[0]), q(2));
    // graded skew outputs of odd degree commute
    assert_eq!(tc.get(2, 1, &[2, 0], &[1]), Rational::new(1, 3).unwrap());
    assert_eq!(TensorCollection::parse(&tc.to_text()).unwrap(), tc);
    let tf = "model tf\nbasis x:0 y:-1\nmu[1,1][1|2] = 1\nphi[2,2][2 1|1 2] = -1\n";
    let parsed = TensorCollection::parse(tf).unwrap();
    assert_eq!(TensorCollection::parse(&parsed.to_text()).unwrap(), parsed);
    for (bad, line) in [
        ("model lie1bi\nbasis a:0\n\nmu[1,2][a|a a] = 1\n", 4),
        ("model lie1bi\nbasis a:0 b:0\nmu[2,2][a b|a b] = 1\nmu[2,2][b a|a b] = 1\n", 4),
        ("model liebi\nbasis a:0\nmu[1,1][a|z] = 1\n", 3),
        ("model tf\nbasis a:0\nmu[1,1][a|a] = x\n", 3),
        ("model nope\n", 1),
    ] {
        match TensorCollection::parse(bad) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{bad}"),
            other => panic!("expected a parse error for {bad:?}, got {other:?}"),
        }
    }
}

/// Constant product of the truncated polynomial algebra `R[x]/(x^3)` in the basis `1, x, x^2`.
fn truncated_algebra(c: &Coordinates) -> ProductTensor {
    let mut entries = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            if a + b < 3 {
                entries.push((a + b, a, b, q(1)));
            }
        }
    }
    ProductTensor::constant(c, &entries)
}

#[test]
fn f_manifold_bracket_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let v = GradedSpace::from_degrees(&[0, 0, 0]);
    // high enough order that no intermediate result is truncated
    let c = Coordinates::new(&v, Model::Tf, 12);
    let field = |rng: &mut ChaCha8Rng| random_tf_part(&c, 1, 0, 0, 2, 3, rng);
    let product = truncated_algebra(&c);
    let mut generic = ProductTensor::new();
    for k in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                let p = random_poly(c.ring(), 0, 0, 2, 3, &mut rng).filtered(|m| (3..9).all(|x| m.exponent(x) == 0));
                generic.set(k, a, b, p);
            }
        }
    }
    let mut nonzero = 0;
    for _ in 0..15 {
        let (x, y, z, w) = (field(&mut rng), field(&mut rng), field(&mut rng), field(&mut rng));
        assert!(hm_bracket(&c, &ProductTensor::new(), &x, &y, &z, &w).unwrap().is_zero());
        // constant associative commutative products satisfy the condition on all fields
        assert!(hm_bracket(&c, &product, &x, &y, &z, &w).unwrap().is_zero());
        nonzero += usize::from(!hm_bracket(&c, &generic, &x, &y, &z, &w).unwrap().is_zero());
    }
    assert!(nonzero >= 10, "{nonzero}");
    let graded = Coordinates::new(&GradedSpace::from_degrees(&[0, 1]), Model::Tf, 4);
    assert!(hm_bracket(&graded, &ProductTensor::new(), &Poly::zero(), &Poly::zero(), &Poly::zero(), &Poly::zero()).is_err());
}

#[test]
fn f_manifold_bracket_matches_the_lie_derivative_form() {
    // for a commutative product the display equals
    // Lie_{X∘Y}(∘)(Z,W) − X∘Lie_Y(∘)(Z,W) − Y∘Lie_X(∘)(Z,W)
    // up to the two associators ([X,Z]∘(Y∘W) − Y∘([X,Z]∘W)) and ([X,W]∘(Y∘Z) − Y∘(Z∘[X,W]))
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let v = GradedSpace::from_degrees(&[0, 0]);
    let c = Coordinates::new(&v, Model::Tf, 12);
    let field = |rng: &mut ChaCha8Rng| random_tf_part(&c, 1, 0, 0, 2, 2, rng);
    for _ in 0..10 {
        let mut mu = ProductTensor::new();
        for k in 0..2 {
            for a in 0..2 {
                for b in a..2 {
                    let p = random_poly(c.ring(), 0, 0, 1, 2, &mut rng).filtered(|m| (2..6).all(|x| m.exponent(x) == 0));
                    mu.set(k, a, b, p.clone());
                    mu.set(k, b, a, p);
                }
            }
        }
        let (x, y, z, w) = (field(&mut rng), field(&mut rng), field(&mut rng), field(&mut rng));
        let m = |u: &Poly, s: &Poly| mu.apply(&c, u, s).unwrap();
        let br = |u: &Poly, s: &Poly| vector_bracket(&c, u, s).unwrap();
        let lie = |u: &Poly| {
            let mut o = br(u, &m(&z, &w));
            o.add_scaled(&m(&br(u, &z), &w), &q(-1));
            o.add_scaled(&m(&z, &br(u, &w)), &q(-1));
            o
        };
        let mut want = lie(&m(&x, &y));
        want.add_scaled(&m(&x, &lie(&y)), &q(-1));
        want.add_scaled(&m(&y, &lie(&x)), &q(-1));
        want.add_scaled(&m(&br(&x, &z), &m(&y, &w)), &q(1));
        want.add_scaled(&m(&y, &m(&br(&x, &z), &w)), &q(-1));
        want.add_scaled(&m(&br(&x, &w), &m(&y, &z)), &q(1));
        want.add_scaled(&m(&y, &m(&z, &br(&x, &w))), &q(-1));
        assert_eq!(hm_bracket(&c, &mu, &x, &y, &z, &w).unwrap(), c.truncate(&want));
    }
}
