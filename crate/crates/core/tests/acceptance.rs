//! Acceptance suite. Runs every criterion, prints one line per criterion
//! and exits non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bihom_poisson::algebra::{
    check_bihom_poisson, check_bihom_poisson_with, is_morphism, BiHomPoissonAlgebra, IdentityEvaluator, IdentityId,
};
use bihom_poisson::cohomology::{cochain_space, delta1, delta2, delta2_with, Cochain1, Delta2Form};
use bihom_poisson::constructions::{
    build_example_e1, centralizer, direct_sum, is_ideal, nonrigidity_witness, polarize_minus, quotient,
    sl2_twisting_pair, upper_triangular_algebra, yau_twist, IdealSide, TwistingPair,
};
use bihom_poisson::derivations::{op_commutator, satisfies, solve_space, OperatorSpaceKind};
use bihom_poisson::linalg::{int, RatMatrix, SubspaceBasis, Vector};
use bihom_poisson::modules::{
    check_left_module, check_right_module, left_module_via_morphism, regular_module, regular_right_module,
    semidirect_product, shift_module, split_null_maps, twist_module, LeftModuleRep, RightModuleRep,
};
use common::oracle;
use common::{basis_index, e1_23, random_vector, rng, sl2, small_rational, twisted_sl2, upper_triangular_poisson};
use num::Zero;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn failing_identities(a: &BiHomPoissonAlgebra) -> Vec<&'static str> {
    check_bihom_poisson(a)
        .failed_identities()
        .into_iter()
        .map(IdentityId::label)
        .collect()
}

fn ac01_fixture_validity() -> Outcome {
    let e = e1_23();
    ensure!(check_bihom_poisson(&e).passed, "e1(2,3) fails {:?}", failing_identities(&e));
    let mut slowest = Duration::ZERO;
    for deg in 1..=3 {
        let a = sl2(deg);
        let start = Instant::now();
        let r = check_bihom_poisson(&a);
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure!(r.passed, "sl2 deg {deg} fails {:?}", failing_identities(&a));
        ensure!(r.violations.is_empty(), "sl2 deg {deg} reports residuals");
        if deg == 3 {
            ensure!(a.dim == 20, "sl2 deg 3 has dim {}", a.dim);
            ensure!(took < Duration::from_secs(5), "dim-20 check took {took:?}");
        }
    }
    Ok(format!("e1(2,3) and sl2 deg 1..3 pass; dim-20 check {slowest:?}"))
}

fn ac02_nonrigidity() -> Outcome {
    let p = sl2(3);
    let (e, h) = (basis_index(&p, "e"), basis_index(&p, "h"));
    let eh2 = basis_index(&p, "e*h^2");
    let (ve, vh) = (p.basis_vector(e), p.basis_vector(h));
    let tp = sl2_twisting_pair(&int(2), &int(5), 3).map_err(|x| x.to_string())?;
    let rep = nonrigidity_witness(&p, &tp).map_err(|x| x.to_string())?;
    let got = rep.associator_at(&ve, &vh, &vh);
    let mut expected = vec![num::BigRational::zero(); p.dim];
    expected[eh2] = int(2 * 2 - 2);
    ensure!(got == expected, "associator at (e,h,h) is {got:?}");
    ensure!(rep.witness_found(), "no witness reported");
    let tp1 = sl2_twisting_pair(&int(1), &int(5), 3).map_err(|x| x.to_string())?;
    let rep1 = nonrigidity_witness(&p, &tp1).map_err(|x| x.to_string())?;
    ensure!(rep1.associator_at(&ve, &vh, &vh).iter().all(Zero::is_zero), "lambda = 1 gives a nonzero associator");
    Ok("as(e,h,h) = 2 e*h^2 at lambda 2, zero at lambda 1".into())
}

fn ac03_twist_closure() -> Outcome {
    let p = sl2(3);
    let tp = sl2_twisting_pair(&int(2), &int(5), 3).map_err(|x| x.to_string())?;
    let t = yau_twist(&p, &tp).map_err(|x| x.to_string())?;
    ensure!(check_bihom_poisson(&t).passed, "twisted sl2 fails {:?}", failing_identities(&t));
    let e = e1_23();
    for k in 0..=2 {
        for l in 0..=2 {
            let tp = TwistingPair::new(e.alpha.pow(k), e.beta.pow(l));
            let t = yau_twist(&e, &tp).map_err(|x| x.to_string())?;
            ensure!(check_bihom_poisson(&t).passed, "e1 twisted by (alpha^{k}, beta^{l}) fails {:?}", failing_identities(&t));
        }
    }
    Ok("sl2 deg 3 twist and 9 twists of e1(2,3) pass".into())
}

fn ac04_polarization() -> Outcome {
    let e = e1_23();
    let plain = BiHomPoissonAlgebra::new(
        e.basis_names.clone(),
        e.product.clone(),
        bihom_poisson::linalg::RatTensor3::zeros(2, 2, 2),
        e.alpha.clone(),
        e.beta.clone(),
    )
    .map_err(|x| x.to_string())?;
    let pol = polarize_minus(&plain).map_err(|x| x.to_string())?;
    ensure!(pol.bracket.is_zero(), "polarized bracket of e1 is nonzero");
    let u = upper_triangular_algebra();
    let up = polarize_minus(&u).map_err(|x| x.to_string())?;
    let n = u.dim;
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (oracle::unit(n, i), oracle::unit(n, j));
            let comm = oracle::sub(&oracle::bil(&u.product, &x, &y), &oracle::bil(&u.product, &y, &x));
            ensure!(up.bracket.fiber(i, j) == comm.as_slice(), "bracket differs from commutator at ({i},{j})");
        }
    }
    let r = check_bihom_poisson_with(&up, true);
    ensure!(r.passed, "upper triangular A- fails {:?}", r.failed_identities());
    Ok("e1 bracket is zero; upper triangular gives the commutator and passes".into())
}

fn ac05_delta_squared() -> Outcome {
    let mut count = 0;
    for (name, a) in [("e1(2,3)", e1_23()), ("sl2 deg 1", sl2(1))] {
        let c1 = cochain_space(&a, 1, false).map_err(|x| x.to_string())?;
        for g in c1.vectors() {
            let f = Cochain1::new(&a, RatMatrix::from_flat(a.dim, a.dim, g)).map_err(|x| x.to_string())?;
            let d = delta1(&a, &f).map_err(|x| x.to_string())?;
            ensure!(d.tensor == oracle::delta1(&a.bracket, &a.alpha, &a.beta, &f.map), "delta1 differs from oracle on {name}");
            let dd = delta2(&a, &d).map_err(|x| x.to_string())?;
            ensure!(dd.is_zero(), "delta2(delta1 f) nonzero on {name}");
            count += 1;
        }
    }
    let a = sl2(1);
    let c1 = cochain_space(&a, 1, false).map_err(|x| x.to_string())?;
    let broken = c1.vectors().iter().filter(|g| {
        let d = delta1(&a, &Cochain1 { map: RatMatrix::from_flat(4, 4, g) }).unwrap();
        !delta2_with(&a, &d, Delta2Form::RepeatedSecondTerm).unwrap().is_zero()
    });
    let nbroken = broken.count();
    ensure!(nbroken > 0, "the repeated-second-term reading of delta2 also kills every coboundary");
    Ok(format!("{count} basis cochains give zero; repeated-second-term reading fails on {nbroken} of {}", c1.dim()))
}

const EXPONENTS: [(u32, u32); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn ac06_derivations() -> Outcome {
    use OperatorSpaceKind::*;
    let mut checks = 0usize;
    let mut centre_free = Vec::new();
    for (name, a) in [("e1(2,3)", e1_23()), ("sl2 deg 1", sl2(1))] {
        let sat = |kind, k, l, d: &RatMatrix| satisfies(&a, kind, k, l, d).unwrap();
        let space = |kind, k, l| solve_space(&a, kind, k, l).matrices();
        for (k, l) in EXPONENTS {
            let dims: Vec<usize> = [ZDer, Der, QDer, GDer].iter().map(|&s| solve_space(&a, s, k, l).dim()).collect();
            ensure!(dims.windows(2).all(|w| w[0] <= w[1]), "{name} ({k},{l}): chain {dims:?} not increasing");
            for d in space(Centroid, k, l) {
                ensure!(sat(QDer, k, l, &d), "{name}: C not in QDer at ({k},{l})");
                checks += 1;
            }
            for d in space(QDer, k, l).into_iter().chain(space(QCentroid, k, l)) {
                ensure!(sat(GDer, k, l, &d), "{name}: QDer + QC not in GDer at ({k},{l})");
                checks += 1;
            }
        }
        for (k, l) in EXPONENTS {
            for (k2, l2) in EXPONENTS {
                let (ks, ls) = (k + k2, l + l2);
                let der1 = space(Der, k, l);
                let der2 = space(Der, k2, l2);
                let c2 = space(Centroid, k2, l2);
                let c1 = space(Centroid, k, l);
                let qd1 = space(QDer, k, l);
                let qc1 = space(QCentroid, k, l);
                let qc2 = space(QCentroid, k2, l2);
                for d1 in &der1 {
                    for d2 in &der2 {
                        ensure!(sat(Der, ks, ls, &op_commutator(d1, d2).unwrap()), "{name}: [Der,Der] at ({k},{l}),({k2},{l2})");
                        checks += 1;
                    }
                    for c in &c2 {
                        ensure!(sat(Centroid, ks, ls, &op_commutator(d1, c).unwrap()), "{name}: [Der,C] at ({k},{l}),({k2},{l2})");
                        checks += 1;
                    }
                }
                for d1 in &qd1 {
                    for q in &qc2 {
                        ensure!(sat(QCentroid, ks, ls, &op_commutator(d1, q).unwrap()), "{name}: [QDer,QC] at ({k},{l}),({k2},{l2})");
                        checks += 1;
                    }
                }
                for q1 in &qc1 {
                    for q2 in &qc2 {
                        ensure!(sat(QDer, ks, ls, &op_commutator(q1, q2).unwrap()), "{name}: [QC,QC] at ({k},{l}),({k2},{l2})");
                        checks += 1;
                    }
                }
                for c in &c1 {
                    for d in &der2 {
                        ensure!(sat(Der, ks, ls, &(c * d)), "{name}: C o Der at ({k},{l}),({k2},{l2})");
                        checks += 1;
                    }
                }
            }
        }
        let hyp = centralizer(&a).dim() == 0 && a.alpha.rank() == a.dim && a.beta.rank() == a.dim;
        if hyp {
            centre_free.push(name);
            for (k, l) in EXPONENTS {
                for (k2, l2) in EXPONENTS {
                    for c in space(Centroid, k, l) {
                        for q in space(QCentroid, k2, l2) {
                            ensure!(op_commutator(&c, &q).unwrap().is_zero(), "{name}: [C,QC] nonzero");
                            checks += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checks} residual checks; [C,QC] = 0 exercised on {centre_free:?}"))
}

fn ac07_modules() -> Outcome {
    let mut count = 0;
    let fixtures = [("e1(2,3)", e1_23()), ("sl2 deg 1", sl2(1)), ("sl2 deg 2 twisted", twisted_sl2(2, 2, 5))];
    for (name, a) in &fixtures {
        let m = regular_module(a).map_err(|x| x.to_string())?;
        let pass = |alg: &BiHomPoissonAlgebra, m: &LeftModuleRep| check_left_module(alg, m).map(|r| r.passed).unwrap_or(false);
        ensure!(pass(a, &m), "{name}: regular module fails");
        for n in 0..=2 {
            for k in 0..=2 {
                let s = shift_module(a, &m, n, k).map_err(|x| x.to_string())?;
                ensure!(pass(a, &s), "{name}: shift ({n},{k}) fails");
                count += 1;
            }
        }
        let sum = direct_sum(a, a);
        let inc = RatMatrix::from_fn(2 * a.dim, a.dim, |r, c| if r == c { int(1) } else { int(0) });
        let via = left_module_via_morphism(&inc, a, &sum).map_err(|x| x.to_string())?;
        ensure!(pass(a, &via), "{name}: module via inclusion fails");
        count += 2;
    }
    for deg in 1..=2 {
        let p = sl2(deg);
        let tp = sl2_twisting_pair(&int(2), &int(5), deg).map_err(|x| x.to_string())?;
        let m = regular_module(&p).map_err(|x| x.to_string())?;
        let (alg, tm) = twist_module(&p, &m, &tp, &tp.alpha_prime, &tp.beta_prime).map_err(|x| x.to_string())?;
        let r = check_left_module(&alg, &tm).map_err(|x| x.to_string())?;
        ensure!(r.passed, "sl2 deg {deg}: twisted module fails {:?}", r.failed_identities());
        count += 1;
    }
    Ok(format!("{count} constructed modules pass"))
}

fn ac08_semidirect() -> Outcome {
    let a = e1_23();
    let m = regular_module(&a).map_err(|x| x.to_string())?;
    let s = semidirect_product(&a, &m).map_err(|x| x.to_string())?;
    ensure!(check_bihom_poisson(&s).passed, "semidirect product fails {:?}", failing_identities(&s));
    let maps = split_null_maps(a.dim, m.vdim);
    let iv: Vec<Vector> = (0..m.vdim).map(|c| maps.inclusion.column(c)).collect();
    ensure!(is_ideal(&s, &iv, IdealSide::TwoSided).map_err(|x| x.to_string())?, "i(V) is not a two-sided ideal");
    ensure!(is_morphism(&maps.projection, &s, &a).map_err(|x| x.to_string())?, "pi is not a morphism");
    ensure!(is_morphism(&maps.section, &a, &s).map_err(|x| x.to_string())?, "sigma is not a morphism");
    ensure!(oracle::mat_mul(&maps.projection, &maps.section).is_identity(), "pi o sigma is not the identity");
    let q = quotient(&s, &iv).map_err(|x| x.to_string())?;
    let qa = &q.algebra;
    ensure!(
        qa.product == a.product && qa.bracket == a.bracket && qa.alpha == a.alpha && qa.beta == a.beta,
        "quotient differs from A"
    );
    Ok("A (+) A passes; i(V) ideal; pi, sigma morphisms; quotient equals A".into())
}

fn ac09_oracle_equivalence() -> Outcome {
    let mut r = rng(9);
    for trial in 0..200 {
        let rows = r.gen_range(1..=12);
        let cols = r.gen_range(1..=12);
        let density: f64 = r.gen_range(0.2..0.9);
        let m: Vec<Vec<_>> = (0..rows)
            .map(|_| {
                (0..cols)
                    .map(|_| if r.gen_bool(density) { small_rational(&mut r) } else { int(0) })
                    .collect()
            })
            .collect();
        let mat = RatMatrix::from_rows(m.clone()).map_err(|x| x.to_string())?;
        ensure!(mat.rank() == oracle::rank(&m, cols), "trial {trial}: rank differs");
        let ker = mat.nullspace();
        ensure!(ker.vectors() == oracle::nullspace(&m, cols).as_slice(), "trial {trial}: kernel basis differs");
        let row_space = SubspaceBasis::from_spanning(cols, m.clone());
        ensure!(row_space.vectors() == oracle::rref(m, cols).0.as_slice(), "trial {trial}: row space basis differs");
    }
    Ok("200 random systems agree on rank, kernel and row space".into())
}

/// Returns the exhaustive verdict when the random one agrees with it.
fn random_agrees(ev: &IdentityEvaluator, id: IdentityId, n: usize, seed: u64) -> Result<Option<bool>, String> {
    let arity = id.algebra_arity().unwrap();
    let exhaustive = ev.check(id).map_err(|x| x.to_string())?.passed;
    let mut r = rng(seed);
    let mut random_pass = true;
    for _ in 0..100 {
        let args: Vec<Vector> = (0..arity).map(|_| random_vector(&mut r, n)).collect();
        let res = ev.evaluate(id, &args).map_err(|x| x.to_string())?;
        random_pass &= res.iter().all(Zero::is_zero);
    }
    Ok((random_pass == exhaustive).then_some(exhaustive))
}

fn perturbed_e1() -> BiHomPoissonAlgebra {
    let mut a = build_example_e1(&int(2), &int(3)).unwrap();
    let v = a.product.get(1, 1, 1) + int(1);
    a.product.set(1, 1, 1, v);
    a
}

const ALGEBRA_IDENTITIES: [IdentityId; 14] = [
    IdentityId::TwistsCommute,
    IdentityId::AlphaProductMorphism,
    IdentityId::BetaProductMorphism,
    IdentityId::AlphaBracketMorphism,
    IdentityId::BetaBracketMorphism,
    IdentityId::BihomCommutativity,
    IdentityId::BihomAssociativity,
    IdentityId::SkewSymmetry,
    IdentityId::BihomJacobi,
    IdentityId::BihomLeibniz,
    IdentityId::Flexibility,
    IdentityId::PolarizedFlexibility,
    IdentityId::Admissibility,
    IdentityId::CyclicAssociatorSum,
];

fn ac10_multilinearity() -> Outcome {
    let fixtures = [
        ("e1(2,3)", e1_23()),
        ("sl2 deg 1", sl2(1)),
        ("sl2 deg 2 twisted", twisted_sl2(2, 2, 5)),
        ("upper triangular", upper_triangular_poisson()),
        ("perturbed e1", perturbed_e1()),
    ];
    let mut checks = 0;
    let mut failing = 0;
    for (fi, (name, a)) in fixtures.iter().enumerate() {
        let ev = IdentityEvaluator::new(a);
        for (ii, id) in ALGEBRA_IDENTITIES.iter().enumerate() {
            let verdict = random_agrees(&ev, *id, a.dim, (fi * 100 + ii) as u64)?;
            ensure!(verdict.is_some(), "{name}: {id} verdicts differ");
            failing += usize::from(verdict == Some(false));
            checks += 1;
        }
    }
    let a = e1_23();
    let good = regular_module(&a).map_err(|x| x.to_string())?;
    let mut bad = good.clone();
    bad.rho_t = bad.lambda_t.clone();
    let right = regular_right_module(&a).map_err(|x| x.to_string())?;
    let mut bad_right = right.clone();
    bad_right.delta_t = bad_right.wedge_t.clone();
    let mut r = rng(1010);
    for m in [&good, &bad] {
        let report = check_left_module(&a, m).map_err(|x| x.to_string())?;
        for id in bihom_poisson::modules::LEFT_MODULE_IDENTITIES {
            let arity = module_arity(id);
            let random_pass = (0..100).all(|_| {
                let mut args: Vec<Vector> = (0..arity - 1).map(|_| random_vector(&mut r, a.dim)).collect();
                args.push(random_vector(&mut r, m.vdim));
                m.evaluate(&a, id, &args).unwrap().iter().all(Zero::is_zero)
            });
            ensure!(random_pass == !report.failed(id), "left module {id}: verdicts differ");
            checks += 1;
        }
    }
    for m in [&right, &bad_right] {
        checks += right_module_agreement(&a, m, &mut r)?;
    }
    Ok(format!("{checks} identity/fixture pairs agree, {failing} algebra-level failures among them"))
}

fn module_arity(id: IdentityId) -> usize {
    match id {
        IdentityId::ModuleTwistsCommute => 1,
        IdentityId::ModuleMorphismPhi | IdentityId::ModuleMorphismPsi => 2,
        _ => 3,
    }
}

fn right_module_agreement(a: &BiHomPoissonAlgebra, m: &RightModuleRep, r: &mut rand::rngs::StdRng) -> Result<usize, String> {
    let report = check_right_module(a, m).map_err(|x| x.to_string())?;
    let mut checks = 0;
    for id in bihom_poisson::modules::RIGHT_MODULE_IDENTITIES {
        let arity = module_arity(id);
        let random_pass = (0..100).all(|_| {
            let mut args = vec![random_vector(r, m.vdim)];
            args.extend((0..arity - 1).map(|_| random_vector(r, a.dim)));
            m.evaluate(a, id, &args).unwrap().iter().all(Zero::is_zero)
        });
        if random_pass == report.failed(id) {
            return Err(format!("right module {id}: verdicts differ"));
        }
        checks += 1;
    }
    Ok(checks)
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC-01 fixture validity", ac01_fixture_validity),
        ("AC-02 non-rigidity number", ac02_nonrigidity),
        ("AC-03 twist closure", ac03_twist_closure),
        ("AC-04 polarization", ac04_polarization),
        ("AC-05 delta2 o delta1 = 0", ac05_delta_squared),
        ("AC-06 derivation-space suite", ac06_derivations),
        ("AC-07 module suite", ac07_modules),
        ("AC-08 semidirect product and split null extension", ac08_semidirect),
        ("AC-09 oracle equivalence", ac09_oracle_equivalence),
        ("AC-10 multilinearity spot-check", ac10_multilinearity),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
