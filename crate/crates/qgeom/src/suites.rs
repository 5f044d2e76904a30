//! Named verification suites driven by the CLI. Each suite returns the
//! individual checks it ran; a suite passes iff every check holds.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::cyclotomic::CyclotomicInt;
use crate::gf::{FieldElement, FieldSpec};
use crate::incidence::{
    construct_few_incidence, cor1_check, cor2_classify, incidence_bound_check, moment_checks,
    projection_via_incidence, IncError, PlaneFamily,
};
use crate::projections::{
    check_main_theorem, check_mattila_branch, check_uniform_lower_bound, projection_sizes,
};
use crate::report::Check;
use crate::setfile::{generate_set, GenKind};
use crate::spectral::{
    character_invariance_check, character_sum_complement, plancherel_check,
    subspace_plancherel_check, FunctionTable, PointSet,
};
use crate::vecspace::{dot, enumerate_grassmannian, verify_gbc_identities, Vector};

#[derive(Debug, Error, PartialEq)]
pub enum SuiteError {
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("bad suite parameters: {0}")]
    BadParams(String),
}

pub const SUITE_NAMES: &[&str] = &[
    "gf",
    "gbc",
    "character",
    "plancherel",
    "subspace-plancherel",
    "moments",
    "incidence",
    "projection",
    "all",
];

/// Shared suite configuration.
pub struct SuiteCtx<'a> {
    pub field: &'a FieldSpec,
    pub n: u32,
    pub k: u32,
    pub seed: u64,
    /// Externally supplied set; suites fall back to seeded generation.
    pub set: Option<&'a PointSet>,
}

impl SuiteCtx<'_> {
    fn base_set(&self, size_hint: u64) -> PointSet {
        match self.set {
            Some(e) => e.clone(),
            None => {
                let qn = (self.field.q() as u64).pow(self.n);
                let size = size_hint.clamp(1, qn);
                generate_set(self.field, self.n, &GenKind::Random(size), self.seed).unwrap()
            }
        }
    }
}

pub fn run(name: &str, ctx: &SuiteCtx) -> Result<Vec<Check>, SuiteError> {
    match name {
        "gf" => Ok(gf_suite(ctx)),
        "gbc" => Ok(gbc_suite(ctx)),
        "character" => Ok(character_suite(ctx)),
        "plancherel" => Ok(plancherel_suite(ctx)),
        "subspace-plancherel" => Ok(subspace_plancherel_suite(ctx)),
        "moments" => moments_suite(ctx),
        "incidence" => incidence_suite(ctx),
        "projection" => projection_suite(ctx),
        "all" => {
            let mut out = Vec::new();
            for s in SUITE_NAMES.iter().filter(|&&s| s != "all") {
                out.extend(run(s, ctx)?);
            }
            Ok(out)
        }
        other => Err(SuiteError::UnknownSuite(other.to_string())),
    }
}

/// Field axioms, inverses, trace balance, and character orthogonality.
/// Exhaustive for small q, seeded-sampled triples above that.
fn gf_suite(ctx: &SuiteCtx) -> Vec<Check> {
    let field = ctx.field;
    let q = field.q();
    let tag = format!("q={}^{}", field.p(), field.e());
    let mut violations = 0u64;
    let mut tested = 0u64;
    let mut check_triple = |a: FieldElement, b: FieldElement, c: FieldElement| {
        tested += 1;
        let assoc_add = field.add(field.add(a, b), c) == field.add(a, field.add(b, c));
        let assoc_mul = field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c));
        let comm = field.add(a, b) == field.add(b, a) && field.mul(a, b) == field.mul(b, a);
        let distrib = field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c));
        if !(assoc_add && assoc_mul && comm && distrib) {
            violations += 1;
        }
    };
    if q <= 16 {
        for a in field.elements() {
            for b in field.elements() {
                for c in field.elements() {
                    check_triple(a, b, c);
                }
            }
        }
    } else {
        let mut rng = ChaCha12Rng::seed_from_u64(ctx.seed);
        for _ in 0..4096 {
            let a = FieldElement(rng.random_range(0..q));
            let b = FieldElement(rng.random_range(0..q));
            let c = FieldElement(rng.random_range(0..q));
            check_triple(a, b, c);
        }
    }
    let mut checks = vec![Check::bound(
        format!("gf/axioms {tag}"),
        "associativity, commutativity, distributivity",
        violations == 0,
        format!("{violations} violations"),
        format!("0 of {tested} triples"),
        None,
    )];

    let inv_ok = field
        .elements()
        .skip(1)
        .all(|a| field.mul(a, field.inv(a).unwrap()) == FieldElement::ONE);
    checks.push(Check::bound(
        format!("gf/inverses {tag}"),
        "a * a^{-1} = 1 for all a != 0",
        inv_ok,
        if inv_ok { "all pass" } else { "violation" }.into(),
        "all pass".into(),
        None,
    ));

    // trace is onto F_p with balanced fibers
    let p = field.p();
    let mut fibers = vec![0u64; p as usize];
    for a in field.elements() {
        fibers[field.trace(a) as usize] += 1;
    }
    checks.push(Check::exact(
        format!("gf/trace-balance {tag}"),
        "each trace fiber has q/p elements",
        &format!("{fibers:?}"),
        &format!("{:?}", vec![(q / p) as u64; p as usize]),
    ));

    // sum of chi over the whole field vanishes exactly
    let mut acc = CyclotomicInt::zero(p);
    for a in field.elements() {
        acc.add_assign(&CyclotomicInt::root(p, field.char_exponent(a)));
    }
    checks.push(Check::exact(
        format!("gf/character-orthogonality {tag}"),
        "sum_a chi(a) = 0",
        &format!("{:?}", acc.as_integer()),
        &format!("{:?}", Some(BigInt::from(0))),
    ));
    checks
}

fn gbc_suite(ctx: &SuiteCtx) -> Vec<Check> {
    verify_gbc_identities(ctx.field, ctx.n.max(4))
}

/// The character-sum lemma, swept exhaustively: for every subspace U of
/// every dimension and every point x, sum_{y in U_perp} chi(-x.y) is
/// q^{dim U_perp} on U and 0 off U.
fn character_suite(ctx: &SuiteCtx) -> Vec<Check> {
    let field = ctx.field;
    let n = ctx.n;
    let q = field.q() as u64;
    let qn = q.pow(n);
    let p = field.p();
    let mut checks = Vec::new();
    for m in 0..=n {
        let mut violations = 0u64;
        let mut tested = 0u64;
        for u in enumerate_grassmannian(field, m, n).unwrap() {
            let perp = u.orth_complement(field);
            let perp_points: Vec<Vector> = perp
                .points(field)
                .into_iter()
                .map(|i| Vector::from_index(field, i, n as usize))
                .collect();
            for xi in 0..qn {
                let x = Vector::from_index(field, xi, n as usize);
                let mut buckets = vec![0i64; p as usize];
                for y in &perp_points {
                    let xy = dot(field, &x, y).unwrap();
                    buckets[field.char_exponent(field.neg(xy)) as usize] += 1;
                }
                let mut acc = CyclotomicInt::zero(p);
                for (c, &b) in buckets.iter().enumerate() {
                    if b != 0 {
                        acc.add_assign(&CyclotomicInt::root(p, c as u32).scale(b));
                    }
                }
                let expected = if u.contains(field, &x) {
                    CyclotomicInt::from_int(p, BigInt::from(perp_points.len()))
                } else {
                    CyclotomicInt::zero(p)
                };
                tested += 1;
                if acc != expected {
                    violations += 1;
                }
            }
        }
        checks.push(Check::bound(
            format!("character/lemma q={q} n={n} dimU={m}"),
            "sum over U_perp of chi(-x.y): q^{dim U_perp} on U, 0 off U",
            violations == 0,
            format!("{violations} violations"),
            format!("0 of {tested} (U, x) pairs"),
            None,
        ));
    }
    // tie the sweep to the public operation on a few sampled inputs
    let mut rng = ChaCha12Rng::seed_from_u64(ctx.seed);
    let mut agree = true;
    for _ in 0..8 {
        let m = rng.random_range(0..=n);
        let u = enumerate_grassmannian(field, m, n)
            .unwrap()
            .nth(rng.random_range(0..4))
            .or_else(|| enumerate_grassmannian(field, m, n).unwrap().next())
            .unwrap();
        let x = Vector::from_index(field, rng.random_range(0..qn), n as usize);
        let s = character_sum_complement(field, &u, &x);
        let expected = if u.contains(field, &x) {
            CyclotomicInt::from_int(p, BigInt::from(q.pow(n - m)))
        } else {
            CyclotomicInt::zero(p)
        };
        agree &= s == expected;
    }
    checks.push(Check::bound(
        format!("character/op-agreement q={q} n={n}"),
        "character_sum_complement matches the lemma on sampled inputs",
        agree,
        if agree { "all agree" } else { "mismatch" }.into(),
        "all agree".into(),
        None,
    ));
    checks
}

fn seeded_function(field: &FieldSpec, n: u32, seed: u64) -> FunctionTable {
    let qn = (field.q() as u64).pow(n) as usize;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    FunctionTable { n, values: (0..qn).map(|_| rng.random_range(-3..=3)).collect() }
}

fn plancherel_suite(ctx: &SuiteCtx) -> Vec<Check> {
    let field = ctx.field;
    let mut checks = Vec::new();
    for i in 0..5u64 {
        let f = seeded_function(field, ctx.n, ctx.seed.wrapping_add(i));
        checks.extend(plancherel_check(field, &f).unwrap());
        let e = ctx.base_set((field.q() as u64).pow(ctx.n) / 2 + i);
        checks.extend(plancherel_check(field, &e.indicator(field)).unwrap());
    }
    checks.push(character_invariance_check(field, &ctx.base_set(5)));
    checks
}

fn subspace_plancherel_suite(ctx: &SuiteCtx) -> Vec<Check> {
    let field = ctx.field;
    let n = ctx.n;
    let mut checks = Vec::new();
    let funcs = [
        seeded_function(field, n, ctx.seed),
        ctx.base_set((field.q() as u64).pow(n) / 3 + 1).indicator(field),
    ];
    for f in &funcs {
        for m in 0..=n {
            for u in enumerate_grassmannian(field, m, n).unwrap() {
                checks.extend(subspace_plancherel_check(field, f, &u).unwrap());
            }
        }
    }
    // compress: report only failures plus a summary line
    let total = checks.len();
    let failures: Vec<Check> = checks.into_iter().filter(|c| !c.holds).collect();
    let mut out = vec![Check::bound(
        format!("subspace-plancherel/sweep q={} n={n}", field.q()),
        "Plancherel for subspaces over every U, exact and float",
        failures.is_empty(),
        format!("{} failures", failures.len()),
        format!("0 of {total} checks"),
        None,
    )];
    out.extend(failures);
    out
}

fn moments_suite(ctx: &SuiteCtx) -> Result<Vec<Check>, SuiteError> {
    let field = ctx.field;
    let (n, k) = (ctx.n, ctx.k);
    if k > n {
        return Err(SuiteError::BadParams(format!("k={k} > n={n}")));
    }
    let qn = (field.q() as u64).pow(n);
    let mut checks = Vec::new();
    for (i, size) in [1, qn / 3 + 1, qn / 2 + 1].into_iter().enumerate() {
        let e = match ctx.set {
            Some(e) if i == 0 => e.clone(),
            _ => generate_set(field, n, &GenKind::Random(size.min(qn)), ctx.seed + i as u64).unwrap(),
        };
        checks.extend(moment_checks(field, &e, k).map_err(|e| SuiteError::BadParams(e.to_string()))?);
    }
    Ok(checks)
}

fn seeded_family(field: &FieldSpec, k: u32, n: u32, size: usize, seed: u64) -> PlaneFamily {
    use rand::seq::SliceRandom;
    let mut planes: Vec<_> = crate::vecspace::enumerate_affine(field, k, n).unwrap().collect();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    planes.shuffle(&mut rng);
    PlaneFamily::from_planes(k, n, planes.into_iter().take(size))
}

fn incidence_suite(ctx: &SuiteCtx) -> Result<Vec<Check>, SuiteError> {
    let field = ctx.field;
    let (n, k) = (ctx.n, ctx.k);
    if n < 1 || k >= n {
        return Err(SuiteError::BadParams(format!("need 0 <= k < n, got k={k} n={n}")));
    }
    let q = field.q() as u64;
    let qn = q.pow(n);
    let fam_max = (q.pow(n - k) * q.pow(k * (n - k))) as usize;
    let mut checks = Vec::new();
    for i in 0..5u64 {
        let e = match ctx.set {
            Some(e) if i == 0 => e.clone(),
            _ => generate_set(field, n, &GenKind::Random(qn / 2 + 1), ctx.seed + i).unwrap(),
        };
        let fam = seeded_family(field, k, n, fam_max / 2 + 1, ctx.seed + 100 + i);
        let r = incidence_bound_check(field, &e, &fam);
        checks.push(r.check(format!("incidence/bound q={q} n={n} k={k} i={i}")));
        match cor1_check(field, &e, &fam) {
            Ok(c) => checks.push(c),
            Err(IncError::HypothesisNotMet) => {}
            Err(e) => return Err(SuiteError::BadParams(e.to_string())),
        }
        if k >= 1 {
            let (_, cs) = cor2_classify(field, &e, &fam)
                .map_err(|e| SuiteError::BadParams(e.to_string()))?;
            checks.extend(cs);
        }
    }
    let few = construct_few_incidence(field, n, k)
        .map_err(|e| SuiteError::BadParams(e.to_string()))?;
    checks.extend(few.checks);
    Ok(checks)
}

fn projection_suite(ctx: &SuiteCtx) -> Result<Vec<Check>, SuiteError> {
    let field = ctx.field;
    let (n, k) = (ctx.n, ctx.k);
    if k == 0 || k >= n {
        return Err(SuiteError::BadParams(format!("need 0 < k < n, got k={k} n={n}")));
    }
    let q = field.q() as u64;
    let qn = q.pow(n);
    let e = ctx.base_set(qn / 2 + 1);
    let sizes = projection_sizes(field, &e, k);
    let mut checks = Vec::new();
    for p in [2.0, 3.0, 4.0] {
        let u_max = ((q as f64).powf(2.0 * k as f64 / p) / 4.0).floor() as u64;
        for u in 1..=u_max.min(q.pow(k)) {
            let r = check_main_theorem(field, &e, k, u, p, 0.5, Some(&sizes))
                .map_err(|e| SuiteError::BadParams(e.to_string()))?;
            checks.push(r.check);
        }
    }
    for p in [2.0, 4.0, 8.0] {
        let r = check_uniform_lower_bound(field, &e, k, p, 0.5, Some(&sizes))
            .map_err(|e| SuiteError::BadParams(e.to_string()))?;
        checks.push(r.check);
    }
    checks.push(
        check_mattila_branch(field, &e, k, 1, Some(&sizes))
            .map_err(|e| SuiteError::BadParams(e.to_string()))?,
    );
    for u in 1..=q.pow(k) / 2 {
        let r = projection_via_incidence(field, &e, k, u)
            .map_err(|e| SuiteError::BadParams(e.to_string()))?;
        checks.extend(r.checks);
    }
    Ok(checks)
}
