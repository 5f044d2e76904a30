//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line. Exact statements use zero tolerance; float statements
//! use the library's pinned 1e-9 relative cushion.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qgeom::gf::FieldSpec;
use qgeom::incidence::{
    construct_few_incidence, construct_kakeya_2d, construct_many_incidence, incidence_bound_check,
    projection_via_incidence, refute_claimed_bound, PlaneFamily,
};
use qgeom::projections::{
    check_main_theorem, check_uniform_lower_bound, exceptional_from_sizes, projection_sizes,
};
use qgeom::report::{all_hold, failures, Check};
use qgeom::setfile::{generate_set, GenKind};
use qgeom::spectral::{coset_sums, fourier_exact, FunctionTable, PointSet};
use qgeom::vecspace::{enumerate_grassmannian, gaussian_binomial};

fn field(p: u64, e: u32) -> FieldSpec {
    FieldSpec::new(p, e).unwrap()
}

fn by_q(q: u64) -> FieldSpec {
    match q {
        4 => field(2, 2),
        8 => field(2, 3),
        9 => field(3, 2),
        16 => field(2, 4),
        p => field(p, 1),
    }
}

fn random_set(f: &FieldSpec, n: u32, size: u64, seed: u64) -> PointSet {
    generate_set(f, n, &GenKind::Random(size), seed).unwrap()
}

fn random_function(f: &FieldSpec, n: u32, seed: u64) -> FunctionTable {
    let qn = (f.q() as u64).pow(n) as usize;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    FunctionTable { n, values: (0..qn).map(|_| rng.random_range(-3..=3)).collect() }
}

fn random_family(f: &FieldSpec, k: u32, n: u32, size: usize, seed: u64) -> PlaneFamily {
    let mut planes: Vec<_> = qgeom::vecspace::enumerate_affine(f, k, n).unwrap().collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    planes.shuffle(&mut rng);
    PlaneFamily::from_planes(k, n, planes.into_iter().take(size.max(1)))
}

fn verdict(criterion: u32, what: &str, pass: bool, start: Instant) -> bool {
    println!(
        "ACCEPTANCE {criterion}: {} — {what} ({:.2?})",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed()
    );
    pass
}

#[test]
fn acceptance_01_character_sum_lemma_nonprime() {
    let start = Instant::now();
    let mut pass = true;
    for q in [4u64, 8, 9] {
        let f = by_q(q);
        for n in [2u32, 3] {
            if (q as u64).pow(n) > 10_000 {
                continue;
            }
            let ctx = qgeom::suites::SuiteCtx { field: &f, n, k: 1, seed: 0, set: None };
            let checks = qgeom::suites::run("character", &ctx).unwrap();
            if !all_hold(&checks) {
                eprintln!("q={q} n={n}: {:?}", failures(&checks));
                pass = false;
            }
        }
    }
    assert!(verdict(1, "character-sum lemma exact over non-prime fields", pass, start));
}

#[test]
fn acceptance_02_subspace_plancherel() {
    let start = Instant::now();
    let mut pass = true;
    for (q, n) in [(2u64, 4u32), (3, 3), (4, 2), (5, 2), (9, 2)] {
        let f = by_q(q);
        let qn = (q as u64).pow(n);
        let subspaces: Vec<_> = (0..=n)
            .flat_map(|m| enumerate_grassmannian(&f, m, n).unwrap())
            .collect();
        for i in 0..100u64 {
            let func = if i < 50 {
                random_function(&f, n, 9000 + i)
            } else {
                random_set(&f, n, (i - 49) * qn / 52 + 1, 9100 + i).indicator(&f)
            };
            let exact = fourier_exact(&f, &func);
            let norms: Vec<_> = exact.entries.iter().map(|z| z.norm_sq()).collect();
            for u in &subspaces {
                let perp = u.orth_complement(&f);
                let mut acc = qgeom::cyclotomic::CyclotomicInt::zero(f.p());
                for &m in &perp.points(&f) {
                    acc.add_assign(&norms[m as usize]);
                }
                let lhs: BigInt = acc
                    .as_integer()
                    .expect("a full spectral sum over a subspace is a rational integer");
                let codim = n as usize - u.dim();
                let mut rhs = BigInt::zero();
                for (_, s) in coset_sums(&f, &func, u) {
                    rhs += BigInt::from(s) * BigInt::from(s);
                }
                rhs *= BigInt::from(q).pow(codim as u32);
                if lhs != rhs {
                    eprintln!("q={q} n={n} i={i} dimU={}: {lhs} != {rhs}", u.dim());
                    pass = false;
                }
            }
        }
    }
    assert!(verdict(2, "Plancherel for subspaces, exact, all U", pass, start));
}

#[test]
fn acceptance_03_gaussian_binomial_suite() {
    let start = Instant::now();
    let mut pass = true;
    // enumeration equals the formula
    for q in [2u64, 3, 4, 5] {
        let f = by_q(q);
        for n in 0..=4u32 {
            for k in 0..=n {
                let counted = enumerate_grassmannian(&f, k, n).unwrap().count();
                if BigUint::from(counted) != gaussian_binomial(n, k, q) {
                    pass = false;
                }
            }
        }
    }
    // Pascal, symmetry, sandwich
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=8u32 {
            for k in 0..=n {
                let g = gaussian_binomial(n, k, q);
                if g != gaussian_binomial(n, n - k, q) {
                    pass = false;
                }
                if k >= 1 {
                    let pascal = BigUint::from(q).pow(k) * gaussian_binomial(n - 1, k, q)
                        + gaussian_binomial(n - 1, k - 1, q);
                    if g != pascal {
                        pass = false;
                    }
                }
                if k <= n {
                    let base = BigUint::from(q).pow(k * (n - k));
                    if g < base || g > BigUint::from(4u32) * &base {
                        pass = false;
                    }
                }
            }
        }
    }
    assert!(verdict(3, "Gaussian binomial enumeration and identities", pass, start));
}

#[test]
fn acceptance_04_moment_identities() {
    let start = Instant::now();
    let grid = [(2u64, 4u32), (3, 3), (4, 2), (4, 3), (5, 2), (7, 2), (8, 2), (9, 2)];
    let mut pass = true;
    for i in 0..100u64 {
        let (q, n) = grid[(i % grid.len() as u64) as usize];
        let f = by_q(q);
        let qn = (q as u64).pow(n);
        let k = (i % (n as u64 + 1)) as u32;
        let size = i * 7 % qn + 1;
        let e = random_set(&f, n, size, 4000 + i);
        let checks = qgeom::incidence::moment_checks(&f, &e, k).unwrap();
        if !all_hold(&checks) {
            eprintln!("q={q} n={n} k={k} i={i}: {:?}", failures(&checks));
            pass = false;
        }
    }
    assert!(verdict(4, "moment identities exact for 100 seeded sets", pass, start));
}

#[test]
fn acceptance_05_incidence_theorem() {
    let start = Instant::now();
    let grid = [
        (2u64, 3u32, 1u32),
        (2, 3, 2),
        (3, 2, 1),
        (3, 3, 1),
        (3, 3, 2),
        (4, 2, 1),
        (5, 2, 1),
        (9, 2, 1),
    ];
    let mut pass = true;
    for &(q, n, k) in &grid {
        let f = by_q(q);
        let qn = (q as u64).pow(n);
        let fam_total = qgeom::incidence::PlaneFamily::all(&f, k, n).unwrap().len();
        for i in 0..200u64 {
            let e = random_set(&f, n, i * 11 % qn + 1, 5000 + i);
            let fam = random_family(&f, k, n, (i as usize * 13) % fam_total + 1, 5500 + i);
            let r = incidence_bound_check(&f, &e, &fam);
            if !r.holds {
                eprintln!("q={q} n={n} k={k} i={i}: deviation^2 > bound^2");
                pass = false;
            }
        }
    }
    // the three deterministic constructions
    let constructions: Vec<Vec<Check>> = vec![
        construct_few_incidence(&by_q(3), 2, 1).unwrap().checks,
        construct_kakeya_2d(&by_q(5)).unwrap().checks,
        construct_many_incidence(&by_q(3), &random_set(&by_q(3), 3, 5, 57), 1)
            .unwrap()
            .checks,
    ];
    for checks in &constructions {
        if !all_hold(checks) {
            eprintln!("construction failure: {:?}", failures(checks));
            pass = false;
        }
    }
    assert!(verdict(5, "incidence bound exact for 1600 seeded pairs + constructions", pass, start));
}

#[test]
fn acceptance_06_refutation() {
    let start = Instant::now();
    let r = refute_claimed_bound(&by_q(3));
    let pass = r.count == BigUint::from(1210u32) && r.claimed_bound < 1210.0 && all_hold(&r.checks);
    assert!(verdict(6, "refutation at q=3: I=1210 beats the claimed bound", pass, start));
}

const PROJ_GRID: &[(u64, u32, u32)] = &[
    (2, 4, 1),
    (2, 4, 2),
    (2, 5, 2),
    (3, 3, 1),
    (3, 3, 2),
    (3, 4, 2),
    (4, 2, 1),
    (5, 2, 1),
    (9, 2, 1),
];

fn proj_sets(f: &FieldSpec, n: u32, base_seed: u64) -> Vec<PointSet> {
    let qn = (f.q() as u64).pow(n);
    (0..50u64)
        .map(|i| random_set(f, n, i * 17 % (qn - 1) + 1, base_seed + i))
        .collect()
}

#[test]
fn acceptance_07_exceptional_set_theorem() {
    let start = Instant::now();
    let mut pass = true;
    for &(q, n, k) in PROJ_GRID {
        let f = by_q(q);
        for e in proj_sets(&f, n, 7000) {
            let sizes = projection_sizes(&f, &e, k);
            for p in [2.0f64, 3.0, 4.0] {
                let u_max = ((q as f64).powf(2.0 * k as f64 / p) / 4.0).floor() as u64;
                for u in 1..=u_max {
                    let r = check_main_theorem(&f, &e, k, u, p, 0.5, Some(&sizes)).unwrap();
                    assert!(r.admissible);
                    if !r.check.holds {
                        eprintln!("q={q} n={n} k={k} |E|={} u={u} p={p}: {:?}", e.len(), r.check);
                        pass = false;
                    }
                }
            }
        }
    }
    assert!(verdict(7, "exceptional-set bound with measured constant, full admissible sweep", pass, start));
}

#[test]
fn acceptance_08_uniform_lower_bound() {
    let start = Instant::now();
    let mut pass = true;
    for &(q, n, k) in PROJ_GRID {
        let f = by_q(q);
        for e in proj_sets(&f, n, 7000) {
            let sizes = projection_sizes(&f, &e, k);
            for p in [2.0f64, 4.0, 8.0] {
                let r = check_uniform_lower_bound(&f, &e, k, p, 0.5, Some(&sizes)).unwrap();
                if !r.check.holds {
                    eprintln!("q={q} n={n} k={k} |E|={} p={p}: {:?}", e.len(), r.check);
                    pass = false;
                }
            }
        }
    }
    assert!(verdict(8, "uniform lower bound holds for every direction", pass, start));
}

#[test]
fn acceptance_09_incidence_projection_route() {
    let start = Instant::now();
    let mut pass = true;
    for &(q, n, k) in PROJ_GRID {
        let f = by_q(q);
        for e in proj_sets(&f, n, 7000) {
            let sizes = projection_sizes(&f, &e, k);
            for u in 1..=(q.pow(k) / 2) {
                let direct =
                    exceptional_from_sizes(&f, &e, k, u, sizes.clone()).theta_count();
                let r = projection_via_incidence(&f, &e, k, u).unwrap();
                if r.theta_count != direct || !all_hold(&r.checks) {
                    eprintln!("q={q} n={n} k={k} u={u}: {:?}", failures(&r.checks));
                    pass = false;
                }
            }
        }
    }
    assert!(verdict(9, "incidence route matches direct Theta and the 4G bound", pass, start));
}

#[test]
fn acceptance_10_sharpness_constructions() {
    let start = Instant::now();
    let mut pass = true;
    for q in [3u64, 5, 7] {
        let f = by_q(q);
        let few = construct_few_incidence(&f, 2, 1).unwrap();
        let kak = construct_kakeya_2d(&f).unwrap();
        let e = random_set(&f, 2, (q / 2).max(1), 100 + q);
        let many = construct_many_incidence(&f, &e, 1).unwrap();
        for (tag, checks) in [("few", &few.checks), ("kakeya", &kak.checks), ("many", &many.checks)] {
            if !all_hold(checks) {
                eprintln!("q={q} {tag}: {:?}", failures(checks));
                pass = false;
            }
        }
    }
    assert!(verdict(10, "few/kakeya/many constructions at q in {3,5,7}", pass, start));
}
