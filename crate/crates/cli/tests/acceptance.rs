//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::Command as Process;
use std::time::{Duration, Instant};

use diocalc::cobar::koszulness_report;
use diocalc::dioperad::{builtin, quotient_slot, underline_free_dim, OperadPair};
use diocalc::exactalg::{GradedSpace, Rational};
use diocalc::formalgeo::{assemble, check_hamiltonian, mc_check, relation_check, Coordinates, Model, Poly, TensorCollection};
use diocalc::minimodel::{decompose, delta_homotopy, delta_operator, harmonic_projection, split_quadratic};
use diocalc::resolutions::{Resolution, ResolutionKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest arity `m+n` for the exhaustive `d² = 0` check.
const D2_WINDOW: usize = 6;
const D2_BUDGET: Duration = Duration::from_secs(120);
/// Largest slot `m+n` for the Koszulness comparison.
const KOSZUL_WINDOW: usize = 5;
const KOSZUL_BUDGET: Duration = Duration::from_secs(300);
/// Random collections per model for the relation-evaluation equivalence.
const EQUIVALENCE_CASES: usize = 50;
const EQUIVALENCE_ORDER: usize = 4;
/// Random pairs or triples per bracket.
const BRACKET_CASES: usize = 200;
const BRACKET_ORDER: usize = 5;
/// Random solutions fed to the decomposition.
const PIPELINE_CASES: usize = 20;
const PIPELINE_ORDER: usize = 4;
const PIPELINE_BUDGET: Duration = Duration::from_secs(300);
/// Homotopy identity: every monomial up to this order on a four-dimensional split space.
const HOMOTOPY_ORDER: usize = 5;

type Outcome = Result<String, String>;

fn sign(e: i32) -> Rational {
    Rational::sign(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn within(budget: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    if took > budget {
        return Err(format!("{detail}; took {took:.1?}, budget {budget:?}"));
    }
    Ok(format!("{detail}; {took:.1?}"))
}

fn d_squared() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for kind in ResolutionKind::ALL {
        let r = Resolution::new(kind, D2_WINDOW).map_err(|e| e.to_string())?;
        for g in r.generators() {
            let dd = r.d_squared(g).map_err(|e| e.to_string())?;
            if !dd.is_zero() {
                return Err(format!("{}: d² of {} has {} terms", kind.name(), r.collection().deco_name(g), dd.len()));
            }
            checked += 1;
        }
    }
    within(D2_BUDGET, start, format!("{checked} generators with m+n <= {D2_WINDOW}, all exact zero"))
}

fn koszulness() -> Outcome {
    let start = Instant::now();
    let mut slots = 0;
    for name in ["lie1bi", "tf", "liebi"] {
        let p = builtin(name).map_err(|e| e.to_string())?;
        let rep = koszulness_report(&p, KOSZUL_WINDOW).map_err(|e| e.to_string())?;
        for s in &rep.slots {
            if !s.d_squared_zero || !s.negative_vanishes() || s.h0() != s.dual_dim {
                return Err(format!("{name} slot ({},{}): cohomology {:?}, dual dim {}", s.m, s.n, s.cohomology, s.dual_dim));
            }
            slots += 1;
        }
    }
    within(KOSZUL_BUDGET, start, format!("{slots} slots with m+n <= {KOSZUL_WINDOW}: negative cohomology zero, H0 = dual"))
}

fn underline_identity() -> Outcome {
    let mut pairs = Vec::new();
    for name in ["lie1bi", "tf"] {
        let p = builtin(name).map_err(|e| e.to_string())?;
        let ops = OperadPair::from_presentation(&p, 3, 2).map_err(|e| e.to_string())?;
        for (i, j) in [(1, 3), (2, 2), (3, 1)] {
            let quotient = quotient_slot(&p, i, j, i + j - 2).map_err(|e| e.to_string())?.dim();
            let underline = underline_free_dim(&ops, i, j).map_err(|e| e.to_string())?;
            if quotient != underline {
                return Err(format!("{name} ({i},{j}): {quotient} != {underline}"));
            }
            pairs.push(format!("{name}({i},{j})={quotient}"));
        }
    }
    Ok(pairs.join(" "))
}

fn equivalence() -> Outcome {
    let mut parts = Vec::new();
    for model in Model::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut seen = [0usize; 2];
        for _ in 0..EQUIVALENCE_CASES {
            let (_, tc, verdict) = common::random_case(model, EQUIVALENCE_ORDER, &mut rng);
            let rel = relation_check(&tc, EQUIVALENCE_ORDER).map_err(|e| e.to_string())?;
            if rel.holds() != verdict {
                return Err(format!("{model}: geometry says {verdict}, relations say {}\n{}", rel.holds(), tc.to_text()));
            }
            seen[verdict as usize] += 1;
        }
        if seen[0] == 0 || seen[1] == 0 {
            return Err(format!("{model}: only one verdict seen {seen:?}"));
        }
        parts.push(format!("{model} {} solutions / {} non-solutions", seen[1], seen[0]));
    }
    Ok(parts.join(", "))
}

fn bracket_identities() -> Outcome {
    for (model, seed) in [(Model::Lie1Bi, 5u64), (Model::LieBi, 6)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift = |d: i32| d - model.bracket_degree().expect("symplectic");
        for case in 0..BRACKET_CASES {
            let dim = rng.gen_range(1..=3);
            let degrees: Vec<i32> = (0..dim).map(|_| rng.gen_range(-1..=1)).collect();
            let c = Coordinates::new(&GradedSpace::from_degrees(&degrees), model, BRACKET_ORDER);
            let r = c.ring();
            let degs: Vec<i32> = (0..3).map(|_| rng.gen_range(-1..=3)).collect();
            let f = common::random_poly(r, degs[0], 1, 3, 4, &mut rng);
            let g = common::random_poly(r, degs[1], 1, 3, 4, &mut rng);
            let h = common::random_poly(r, degs[2], 1, 3, 4, &mut rng);
            let br = |a: &Poly, b: &Poly| c.bracket(a, b).expect("symplectic coordinates");
            let (sf, sg) = (shift(degs[0]), shift(degs[1]));
            let fg = br(&f, &g);
            if fg != br(&g, &f).scaled(&-sign(sf * sg)) {
                return Err(format!("{model} case {case}: symmetry"));
            }
            let mut rhs = br(&fg, &h);
            rhs.add_scaled(&br(&g, &br(&f, &h)), &sign(sf * sg));
            if br(&f, &br(&g, &h)) != rhs {
                return Err(format!("{model} case {case}: Jacobi"));
            }
            // low orders so that the product g h stays below the truncation
            let g = common::random_poly(r, degs[1], 1, 2, 3, &mut rng);
            let h = common::random_poly(r, degs[2], 1, 2, 3, &mut rng);
            let mut rhs = r.mul(&br(&f, &g), &h);
            rhs.add_scaled(&r.mul(&g, &br(&f, &h)), &sign(sf * degs[1]));
            if br(&f, &r.mul(&g, &h)) != rhs {
                return Err(format!("{model} case {case}: Leibniz"));
            }
        }
    }
    Ok(format!("{BRACKET_CASES} cases per bracket at N = {BRACKET_ORDER}: symmetry, Jacobi, Leibniz exact"))
}

/// Random solution with nonzero quadratic part: half from the generic generator, half built as
/// minimal times contractible and scrambled.
fn pipeline_case(k: usize, rng: &mut impl Rng) -> (Coordinates, Poly) {
    if k % 2 == 1 {
        return common::random_minimal_times_contractible(rng, PIPELINE_ORDER);
    }
    loop {
        let (c, tc, ok) = common::random_case(Model::Lie1Bi, PIPELINE_ORDER, rng);
        let g = assemble(&tc, &c).expect("assembles");
        if ok && !g.component(2).is_zero() {
            return (c, g);
        }
    }
}

fn pipeline() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut nonzero_phi = 0;
    for k in 0..PIPELINE_CASES {
        let (c, g) = pipeline_case(k, &mut rng);
        let fail = |what: &str| Err(format!("case {k}: {what}\n{}", c.format(&g)));
        let dec = decompose(&c, &g).map_err(|e| format!("case {k}: {e}"))?;
        let (a, images) = (&dec.adapted, dec.map.images());
        let (n, n2) = (a.dim(), c.dim());
        // F*ω = ω: brackets of pulled-back coordinates are the constant ones below order N
        for u in 0..2 * n2 {
            for v in 0..2 * n2 {
                let want = c.bracket(&c.ring().var(u), &c.ring().var(v)).expect("odd");
                let got = a.bracket(&images[u], &images[v]).expect("odd").filtered(|m| m.order() < PIPELINE_ORDER);
                let want_const: Poly = want.terms().fold(Poly::zero(), |acc, (_, x)| acc.sum(&a.ring().constant(x.clone())));
                if got != want_const {
                    return fail("pullback of the symplectic form differs");
                }
            }
        }
        let has = |m: &diocalc::formalgeo::Monomial, range: std::ops::Range<usize>| range.clone().any(|v| m.exponent(v) > 0);
        if !images[..n2].iter().all(|p| p.terms().all(|(m, _)| has(m, 0..n))) {
            return fail("F(L) not inside L");
        }
        if !images[n2..].iter().all(|p| p.terms().all(|(m, _)| has(m, n..2 * n))) {
            return fail("F(ΠL) not inside ΠL");
        }
        let pulled = a.truncate(&a.ring().substitute(images, &g).expect("substitution"));
        let mut normal = Poly::zero();
        for b in 0..dec.splitting.boundary_dim() {
            let (y, psi) = (a.position(dec.splitting.y(b)), a.momentum(dec.splitting.x(b)));
            normal.add_scaled(&a.ring().mul(&a.ring().var(y), &a.ring().var(psi)), &Rational::one());
        }
        normal.add_scaled(&dec.minimal, &Rational::one());
        if !pulled.difference(&normal).is_zero() {
            return fail("F*Γ differs from the normal form");
        }
        let h = dec.splitting.harmonic_dim();
        let zxi = |v: usize| v % n < h;
        if dec.minimal.terms().any(|(m, _)| m.order() < 3 || (0..2 * n).any(|v| m.exponent(v) > 0 && !zxi(v))) {
            return fail("minimal part is not a (z,ξ) function of order >= 3");
        }
        let (rc, phi) = dec.reduced().map_err(|e| e.to_string())?;
        if !mc_check(&rc, &phi).map_err(|e| e.to_string())?.is_solution {
            return fail("minimal part is not a solution");
        }
        nonzero_phi += usize::from(!phi.is_zero());
    }
    within(PIPELINE_BUDGET, start, format!("{PIPELINE_CASES} solutions at N = {PIPELINE_ORDER}, {nonzero_phi} with nonzero minimal part"))
}

fn homotopy() -> Outcome {
    let v = GradedSpace::from_degrees(&[0, -1, 0, 1]);
    let c = Coordinates::new(&v, Model::Lie1Bi, HOMOTOPY_ORDER);
    let mut tc = TensorCollection::new(Model::Lie1Bi, v);
    tc.set(1, 1, &[3], &[2], Rational::int(3)).map_err(|e| e.to_string())?;
    let s = split_quadratic(&c, &assemble(&tc, &c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if (s.harmonic_dim(), s.boundary_dim()) != (2, 1) {
        return Err("unexpected splitting".into());
    }
    let a = s.coordinates(HOMOTOPY_ORDER);
    let all = common::monomials(a.ring(), 0, HOMOTOPY_ORDER);
    for m in &all {
        let mut f = Poly::zero();
        f.add_term(m.clone(), Rational::one());
        let d = |p: &Poly| delta_operator(&a, &s, p).expect("adapted");
        let h = |p: &Poly| delta_homotopy(&a, &s, p).expect("adapted");
        if d(&h(&f)).sum(&h(&d(&f))) != f.difference(&harmonic_projection(&a, &s, &f)) {
            return Err(format!("fails on {}", a.format(&f)));
        }
    }
    Ok(format!("{} monomials of order <= {HOMOTOPY_ORDER} on z1 z2 x1 y1", all.len()))
}

fn poisson() -> Outcome {
    let c = Coordinates::new(&GradedSpace::from_degrees(&[0, 0]), Model::Lie1Bi, 4);
    let g = c.parse("t1*t2*psi1*psi2").map_err(|e| e.to_string())?;
    if !mc_check(&c, &g).map_err(|e| e.to_string())?.is_solution {
        return Err("t1 t2 psi1 psi2 is not a solution".into());
    }
    let bad = g.sum(&c.parse("t1*psi1").map_err(|e| e.to_string())?);
    match check_hamiltonian(&c, &bad) {
        Err(e) if e.to_string().contains("degree") => match mc_check(&c, &bad) {
            Err(_) => Ok(format!("germ accepted; perturbation rejected: {e}")),
            Ok(_) => Err("mc_check accepted the perturbed function".into()),
        },
        Err(e) => Err(format!("rejected for the wrong reason: {e}")),
        Ok(()) => Err("perturbed function passed the precondition".into()),
    }
}

fn determinism() -> Outcome {
    let run = || {
        Process::new(env!("CARGO_BIN_EXE_diocalc"))
            .args(["koszul", "lie1bi.pres", "--window", "5"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if !a.status.success() || !b.status.success() {
        return Err("koszul run failed".into());
    }
    if a.stdout != b.stdout {
        return Err("reports differ".into());
    }
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("d² = 0 on all generators", d_squared),
        ("Koszulness in window", koszulness),
        ("reduced-tree dimension identity", underline_identity),
        ("relation evaluation agrees with geometry", equivalence),
        ("bracket identities", bracket_identities),
        ("minimal x contractible pipeline", pipeline),
        ("homotopy identity, exhaustive", homotopy),
        ("Poisson sanity", poisson),
        ("deterministic reports", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
