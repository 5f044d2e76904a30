//! The Fourier transform on F_q^n in exact cyclotomic and floating-point
//! modes, with Plancherel, Plancherel for subspaces, subspace character
//! sums, p-norms, and Salem-set profiling.
//!
//! Exact spectra are kept unnormalized: the stored entry at frequency m is
//! F(m) = sum_x f(x) chi(-m.x) = q^n * fhat(m), which lives in Z[zeta_p].
//! Normalization factors are reattached as explicit powers of q inside
//! each identity check.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_complex::Complex64;
use thiserror::Error;

use crate::cyclotomic::CyclotomicInt;
use crate::gf::{FieldElement, FieldSpec};
use crate::report::Check;
use crate::vecspace::{dot, Subspace, Vector};

pub const FLOAT_IDENTITY_TOL: f64 = 1e-9;
pub const MULTISET_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("exactness violation: {0}")]
    ExactnessViolation(String),
    #[error("p-norm exponent {0} < 1")]
    BadExponent(f64),
    #[error("empty point set")]
    EmptySet,
    #[error("singleton set: Salem condition is s-independent")]
    SingletonSet,
}

/// A finite subset of F_q^n, stored as dense point indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    pub n: u32,
    pub points: BTreeSet<u64>,
}

impl PointSet {
    pub fn new(n: u32) -> PointSet {
        PointSet { n, points: BTreeSet::new() }
    }

    pub fn from_indices(n: u32, idx: impl IntoIterator<Item = u64>) -> PointSet {
        PointSet { n, points: idx.into_iter().collect() }
    }

    pub fn singleton_origin(n: u32) -> PointSet {
        PointSet::from_indices(n, [0])
    }

    pub fn full(field: &FieldSpec, n: u32) -> PointSet {
        PointSet::from_indices(n, 0..(field.q() as u64).pow(n))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.points.contains(&idx)
    }

    pub fn vectors<'a>(&'a self, field: &'a FieldSpec) -> impl Iterator<Item = Vector> + 'a {
        self.points.iter().map(move |&i| Vector::from_index(field, i, self.n as usize))
    }

    pub fn complement(&self, field: &FieldSpec) -> PointSet {
        let qn = (field.q() as u64).pow(self.n);
        PointSet::from_indices(self.n, (0..qn).filter(|i| !self.points.contains(i)))
    }

    pub fn translate(&self, field: &FieldSpec, t: &Vector) -> PointSet {
        let idx = self.vectors(field).map(|v| crate::vecspace::vec_add(field, &v, t).index(field));
        PointSet::from_indices(self.n, idx.collect::<Vec<_>>())
    }

    pub fn indicator(&self, field: &FieldSpec) -> FunctionTable {
        let qn = (field.q() as u64).pow(self.n);
        let mut values = vec![0i64; qn as usize];
        for &i in &self.points {
            values[i as usize] = 1;
        }
        FunctionTable { n: self.n, values }
    }
}

/// An integer-valued function on F_q^n, dense over the whole space.
/// Indicator functions of point sets are the 0/1 special case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    pub n: u32,
    pub values: Vec<i64>,
}

impl FunctionTable {
    pub fn constant(field: &FieldSpec, n: u32, v: i64) -> FunctionTable {
        FunctionTable { n, values: vec![v; (field.q() as u64).pow(n) as usize] }
    }

    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }

    pub fn l2_mass(&self) -> i64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// Unnormalized exact spectrum: entry m holds F(m) = q^n * fhat(m).
#[derive(Debug, Clone)]
pub struct ExactSpectrum {
    pub n: u32,
    pub entries: Vec<CyclotomicInt>,
}

/// Normalized float spectrum: entry m holds fhat(m).
#[derive(Debug, Clone)]
pub struct FloatSpectrum {
    pub n: u32,
    pub entries: Vec<Complex64>,
}

#[derive(Debug, Clone)]
pub enum Spectrum {
    Exact(ExactSpectrum),
    Float(FloatSpectrum),
}

/// Character-class histogram of f against frequency m: bucket c collects
/// sum of f(x) over x with char_exponent(-m.x) = c. Shared by both modes.
fn exponent_buckets(field: &FieldSpec, f: &FunctionTable, m: &Vector, twist: FieldElement) -> Vec<i64> {
    let p = field.p() as usize;
    let n = f.n as usize;
    let mut buckets = vec![0i64; p];
    for (i, &v) in f.values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let x = Vector::from_index(field, i as u64, n);
        let mx = dot(field, m, &x).expect("dimensions fixed by construction");
        let arg = field.mul(twist, field.neg(mx));
        buckets[field.char_exponent(arg) as usize] += v;
    }
    buckets
}

fn all_frequencies(field: &FieldSpec, n: u32) -> impl Iterator<Item = u64> {
    0..(field.q() as u64).pow(n)
}

pub fn fourier_exact(field: &FieldSpec, f: &FunctionTable) -> ExactSpectrum {
    let p = field.p();
    let n = f.n;
    let entries = all_frequencies(field, n)
        .map(|mi| {
            let m = Vector::from_index(field, mi, n as usize);
            let buckets = exponent_buckets(field, f, &m, FieldElement::ONE);
            let mut acc = CyclotomicInt::zero(p);
            for (c, &b) in buckets.iter().enumerate() {
                if b != 0 {
                    acc.add_assign(&CyclotomicInt::root(p, c as u32).scale(b));
                }
            }
            acc
        })
        .collect();
    ExactSpectrum { n, entries }
}

/// Float transform under the twisted character chi_a(x) = chi(a x);
/// `twist = 1` is the canonical character.
pub fn fourier_float_twisted(field: &FieldSpec, f: &FunctionTable, twist: FieldElement) -> FloatSpectrum {
    let p = field.p() as usize;
    let n = f.n;
    let qn = (field.q() as f64).powi(n as i32);
    let roots: Vec<Complex64> = (0..p)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / p as f64;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect();
    let entries = all_frequencies(field, n)
        .map(|mi| {
            let m = Vector::from_index(field, mi, n as usize);
            let buckets = exponent_buckets(field, f, &m, twist);
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, &b) in buckets.iter().enumerate() {
                if b != 0 {
                    acc += roots[c] * b as f64;
                }
            }
            acc / qn
        })
        .collect();
    FloatSpectrum { n, entries }
}

pub fn fourier_float(field: &FieldSpec, f: &FunctionTable) -> FloatSpectrum {
    fourier_float_twisted(field, f, FieldElement::ONE)
}

pub fn fourier(field: &FieldSpec, f: &FunctionTable, mode: Mode) -> Spectrum {
    match mode {
        Mode::Exact => Spectrum::Exact(fourier_exact(field, f)),
        Mode::Float => Spectrum::Float(fourier_float(field, f)),
    }
}

/// Plancherel: sum_m |fhat(m)|^2 = q^{-n} sum_x |f(x)|^2. Verified with
/// zero tolerance in Z[zeta_p] (scaled by q^{2n}) and at 1e-9 relative in
/// float mode.
pub fn plancherel_check(field: &FieldSpec, f: &FunctionTable) -> Result<Vec<Check>, SpectralError> {
    let qn = BigInt::from(field.q()).pow(f.n);
    let exact = fourier_exact(field, f);
    let mut lhs = CyclotomicInt::zero(field.p());
    for e in &exact.entries {
        lhs.add_assign(&e.norm_sq());
    }
    let lhs_int = lhs.as_integer().ok_or_else(|| {
        SpectralError::ExactnessViolation("sum of |F(m)|^2 not a rational integer".into())
    })?;
    let rhs_int = &qn * BigInt::from(f.l2_mass());
    let mut checks = vec![Check::exact(
        "plancherel/exact".into(),
        "Plancherel identity, q^{2n}-scaled",
        &lhs_int,
        &rhs_int,
    )];

    let float = fourier_float(field, f);
    let lhs_f: f64 = float.entries.iter().map(|z| z.norm_sqr()).sum();
    let qnf = (field.q() as f64).powi(f.n as i32);
    let rhs_f = f.l2_mass() as f64 / qnf;
    let rel = if rhs_f == 0.0 { lhs_f.abs() } else { (lhs_f - rhs_f).abs() / rhs_f };
    checks.push(Check::bound(
        "plancherel/float".into(),
        "Plancherel identity, float mode",
        rel < FLOAT_IDENTITY_TOL,
        format!("{lhs_f}"),
        format!("{rhs_f}"),
        Some(rel),
    ));
    Ok(checks)
}

/// sum_{y in U_perp} chi(-x.y), exactly. Zero when x is outside U, and
/// q^{dim U_perp} when x lies in U.
pub fn character_sum_complement(field: &FieldSpec, u: &Subspace, x: &Vector) -> CyclotomicInt {
    let perp = u.orth_complement(field);
    let p = field.p() as usize;
    let mut buckets = vec![0i64; p];
    for yi in perp.points(field) {
        let y = Vector::from_index(field, yi, u.n());
        let xy = dot(field, x, &y).expect("same ambient dimension");
        buckets[field.char_exponent(field.neg(xy)) as usize] += 1;
    }
    let mut acc = CyclotomicInt::zero(field.p());
    for (c, &b) in buckets.iter().enumerate() {
        if b != 0 {
            acc.add_assign(&CyclotomicInt::root(field.p(), c as u32).scale(b));
        }
    }
    acc
}

/// Per-coset sums S_f(U + t) keyed by canonical representative index.
pub fn coset_sums(field: &FieldSpec, f: &FunctionTable, u: &Subspace) -> BTreeMap<u64, i64> {
    let n = f.n as usize;
    let mut sums: BTreeMap<u64, i64> = BTreeMap::new();
    for (i, &v) in f.values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        let x = Vector::from_index(field, i as u64, n);
        let rep = u.reduce(field, &x).index(field);
        *sums.entry(rep).or_insert(0) += v;
    }
    sums
}

/// Plancherel for subspaces: with U of codimension k,
/// sum_{m in U_perp} |fhat(m)|^2 = q^{-2n+k} sum_j |S_f(U+t_j)|^2.
/// Both sides are compared exactly after scaling by q^{2n}.
pub fn subspace_plancherel_check(
    field: &FieldSpec,
    f: &FunctionTable,
    u: &Subspace,
) -> Result<Vec<Check>, SpectralError> {
    let n = f.n;
    let codim = n as usize - u.dim();
    let exact = fourier_exact(field, f);
    let perp = u.orth_complement(field);
    let mut lhs = CyclotomicInt::zero(field.p());
    for mi in perp.points(field) {
        lhs.add_assign(&exact.entries[mi as usize].norm_sq());
    }
    let lhs_int = lhs.as_integer().ok_or_else(|| {
        SpectralError::ExactnessViolation("subspace Plancherel LHS not a rational integer".into())
    })?;
    let mut rhs_int = BigInt::from(0);
    for (_, s) in coset_sums(field, f, u) {
        rhs_int += BigInt::from(s) * BigInt::from(s);
    }
    rhs_int *= BigInt::from(field.q()).pow(codim as u32);
    let mut checks = vec![Check::exact(
        format!("subspace-plancherel/exact dimU={}", u.dim()),
        "Plancherel for subspaces, q^{2n}-scaled",
        &lhs_int,
        &rhs_int,
    )];

    let float = fourier_float(field, f);
    let lhs_f: f64 = perp
        .points(field)
        .iter()
        .map(|&mi| float.entries[mi as usize].norm_sqr())
        .sum();
    let qf = field.q() as f64;
    let rhs_f: f64 = coset_sums(field, f, u)
        .values()
        .map(|&s| (s as f64) * (s as f64))
        .sum::<f64>()
        * qf.powi(codim as i32 - 2 * n as i32);
    let rel = if rhs_f == 0.0 { lhs_f.abs() } else { (lhs_f - rhs_f).abs() / rhs_f };
    checks.push(Check::bound(
        format!("subspace-plancherel/float dimU={}", u.dim()),
        "Plancherel for subspaces, float mode",
        rel < FLOAT_IDENTITY_TOL,
        format!("{lhs_f}"),
        format!("{rhs_f}"),
        Some(rel),
    ));
    Ok(checks)
}

/// ( q^{-n} sum_{m != 0} |fhat(m)|^p )^{1/p}, the zero frequency excluded.
pub fn p_norm(field: &FieldSpec, e: &PointSet, p: f64) -> Result<f64, SpectralError> {
    if p < 1.0 {
        return Err(SpectralError::BadExponent(p));
    }
    let spec = fourier_float(field, &e.indicator(field));
    let qn = (field.q() as f64).powi(e.n as i32);
    let sum: f64 = spec.entries.iter().skip(1).map(|z| z.norm().powf(p)).sum();
    Ok((sum / qn).powf(1.0 / p))
}

#[derive(Debug, Clone, Copy)]
pub struct SalemParams {
    pub p: f64,
    pub s: f64,
    pub c: f64,
}

impl SalemParams {
    pub fn new(p: f64, s: f64, c: f64) -> SalemParams {
        assert!(p >= 1.0 && (0.0..=1.0).contains(&s) && c > 0.0);
        SalemParams { p, s, c }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SalemOutcome {
    pub passes: bool,
    pub norm: f64,
    pub rhs: f64,
    /// Smallest constant making the inequality hold for this set.
    pub minimal_c: f64,
}

/// Does ||Ehat||_p <= C q^{-n} |E|^{1-s} hold?
pub fn salem_check(
    field: &FieldSpec,
    e: &PointSet,
    params: SalemParams,
) -> Result<SalemOutcome, SpectralError> {
    if e.is_empty() {
        return Err(SpectralError::EmptySet);
    }
    let norm = p_norm(field, e, params.p)?;
    let qn = (field.q() as f64).powi(e.n as i32);
    let envelope = (e.len() as f64).powf(1.0 - params.s) / qn;
    let rhs = params.c * envelope;
    Ok(SalemOutcome {
        passes: norm <= rhs * (1.0 + 1e-12),
        norm,
        rhs,
        minimal_c: norm / envelope,
    })
}

/// Minimal Salem constant at the given (p, s).
pub fn minimal_salem_constant(
    field: &FieldSpec,
    e: &PointSet,
    p: f64,
    s: f64,
) -> Result<f64, SpectralError> {
    if e.is_empty() {
        return Err(SpectralError::EmptySet);
    }
    let norm = p_norm(field, e, p)?;
    let qn = (field.q() as f64).powi(e.n as i32);
    Ok(norm * qn / (e.len() as f64).powf(1.0 - s))
}

/// Largest s in [0,1] at which the (p,s) Salem inequality holds with
/// constant C. Monotone: the check passes at every s below the result.
pub fn best_salem_exponent(
    field: &FieldSpec,
    e: &PointSet,
    p: f64,
    c: f64,
) -> Result<f64, SpectralError> {
    if e.is_empty() {
        return Err(SpectralError::EmptySet);
    }
    if e.len() == 1 {
        return Err(SpectralError::SingletonSet);
    }
    let norm = p_norm(field, e, p)?;
    let qn = (field.q() as f64).powi(e.n as i32);
    let s_star = 1.0 - (qn * norm / c).ln() / (e.len() as f64).ln();
    Ok(s_star.clamp(0.0, 1.0))
}

/// The spectrum's modulus multiset is invariant under replacing chi by
/// any nontrivial chi_a; frequencies only permute (m -> a m).
pub fn character_invariance_check(field: &FieldSpec, e: &PointSet) -> Check {
    let f = e.indicator(field);
    let base = fourier_float(field, &f);
    let mut base_moduli: Vec<f64> = base.entries.iter().map(|z| z.norm()).collect();
    base_moduli.sort_by(|a, b| a.total_cmp(b));
    let mut worst: f64 = 0.0;
    for a in field.elements().skip(1) {
        let alt = fourier_float_twisted(field, &f, a);
        let mut moduli: Vec<f64> = alt.entries.iter().map(|z| z.norm()).collect();
        moduli.sort_by(|x, y| x.total_cmp(y));
        for (x, y) in base_moduli.iter().zip(&moduli) {
            worst = worst.max((x - y).abs());
        }
    }
    Check::bound(
        "character-invariance".into(),
        "spectrum moduli multiset is character-choice independent",
        worst < MULTISET_TOL,
        format!("{worst}"),
        format!("{MULTISET_TOL}"),
        Some(worst / MULTISET_TOL),
    )
}
