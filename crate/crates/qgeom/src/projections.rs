//! Projections of point sets onto subspaces, exceptional-set enumeration,
//! and the two projection theorems with explicit measured constants.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf::FieldSpec;
use crate::report::Check;
use crate::spectral::{minimal_salem_constant, PointSet, SpectralError};
use crate::threads;
use crate::vecspace::{enumerate_grassmannian, Subspace, Vector};

#[derive(Debug, Error, PartialEq)]
pub enum ProjError {
    #[error("empty point set")]
    EmptySet,
    #[error("threshold u={0} outside the theorem's admissible range")]
    URangeViolation(f64),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// The projection of E onto V: the set of cosets of V_perp meeting E,
/// identified by canonical representative index.
#[derive(Debug, Clone)]
pub struct ProjectionImage {
    pub v: Subspace,
    /// Direction shared by all planes of the image.
    pub v_perp: Subspace,
    pub plane_reps: BTreeSet<u64>,
}

impl ProjectionImage {
    pub fn size(&self) -> usize {
        self.plane_reps.len()
    }
}

pub fn project(field: &FieldSpec, e: &PointSet, v: &Subspace) -> ProjectionImage {
    let v_perp = v.orth_complement(field);
    let n = v.n();
    let plane_reps = e
        .points
        .iter()
        .map(|&i| {
            let x = Vector::from_index(field, i, n);
            v_perp.reduce(field, &x).index(field)
        })
        .collect();
    ProjectionImage { v: v.clone(), v_perp, plane_reps }
}

/// |pi_V(E)| for every V in G(k,n), in enumeration order. This is the
/// shared input to every exceptional-set question, so it is computed once
/// and in parallel.
pub fn projection_sizes(field: &FieldSpec, e: &PointSet, k: u32) -> Vec<(Subspace, usize)> {
    let subspaces: Vec<Subspace> = enumerate_grassmannian(field, k, e.n)
        .expect("k <= n checked by caller")
        .collect();
    threads::install(|| {
        subspaces
            .into_par_iter()
            .map(|v| {
                let size = project(field, e, &v).size();
                (v, size)
            })
            .collect()
    })
}

/// The exceptional set Theta = {V in G(k,n): |pi_V(E)| <= u}, enumerated
/// exhaustively, together with every projection size for reuse.
#[derive(Debug, Clone)]
pub struct ExceptionalReport {
    pub q: u32,
    pub n: u32,
    pub k: u32,
    pub set_size: usize,
    pub u: u64,
    pub theta: Vec<Subspace>,
    pub sizes: Vec<(Subspace, usize)>,
}

impl ExceptionalReport {
    pub fn theta_count(&self) -> u64 {
        self.theta.len() as u64
    }
}

pub fn exceptional_set(
    field: &FieldSpec,
    e: &PointSet,
    k: u32,
    u: u64,
) -> Result<ExceptionalReport, ProjError> {
    if e.is_empty() {
        return Err(ProjError::EmptySet);
    }
    let sizes = projection_sizes(field, e, k);
    Ok(exceptional_from_sizes(field, e, k, u, sizes))
}

/// Same as [`exceptional_set`] but reusing precomputed projection sizes.
pub fn exceptional_from_sizes(
    field: &FieldSpec,
    e: &PointSet,
    k: u32,
    u: u64,
    sizes: Vec<(Subspace, usize)>,
) -> ExceptionalReport {
    let theta = sizes
        .iter()
        .filter(|(_, s)| *s as u64 <= u)
        .map(|(v, _)| v.clone())
        .collect();
    ExceptionalReport {
        q: field.q(),
        n: e.n,
        k,
        set_size: e.len(),
        u,
        theta,
        sizes,
    }
}

/// Exceptional-set bound with the explicit constant: with C the measured
/// minimal (p,s)-Salem constant and 0 < u <= q^{2k/p}/4,
/// |Theta| <= (4C)^p u^{p/2} q^{k(n-k)} |E|^{-ps}.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub check: Check,
    pub theta_count: u64,
    pub bound: f64,
    pub measured_c: f64,
    /// False when u exceeds the admissible range; the bound is then
    /// reported but not asserted.
    pub admissible: bool,
}

pub fn check_main_theorem(
    field: &FieldSpec,
    e: &PointSet,
    k: u32,
    u: u64,
    p: f64,
    s: f64,
    precomputed: Option<&[(Subspace, usize)]>,
) -> Result<BoundReport, ProjError> {
    assert!(p >= 2.0 && (0.0..=1.0).contains(&s));
    if e.is_empty() {
        return Err(ProjError::EmptySet);
    }
    let q = field.q() as f64;
    let n = e.n;
    let admissible = u as f64 <= q.powf(2.0 * k as f64 / p) / 4.0;
    let c = minimal_salem_constant(field, e, p, s)?;
    let theta_count = match precomputed {
        Some(sizes) => sizes.iter().filter(|(_, sz)| *sz as u64 <= u).count() as u64,
        None => exceptional_set(field, e, k, u)?.theta_count(),
    };
    let bound = (4.0 * c).powf(p)
        * (u as f64).powf(p / 2.0)
        * q.powi((k * (n - k)) as i32)
        * (e.len() as f64).powf(-p * s);
    let holds = !admissible || (theta_count as f64) <= bound * (1.0 + 1e-9);
    let check = Check::bound(
        format!("projection/main-theorem k={k} u={u} p={p} s={s}"),
        "|Theta| <= (4C)^p u^{p/2} q^{k(n-k)} |E|^{-ps}",
        holds,
        theta_count.to_string(),
        format!("{bound}"),
        if bound > 0.0 { Some(theta_count as f64 / bound) } else { None },
    );
    Ok(BoundReport { check, theta_count, bound, measured_c: c, admissible })
}

/// Monitored ratio |Theta| / (u q^{k(n-k)-k}); no explicit constant is
/// available for this branch, so nothing is asserted.
pub fn check_mattila_branch(
    field: &FieldSpec,
    e: &PointSet,
    k: u32,
    u: u64,
    precomputed: Option<&[(Subspace, usize)]>,
) -> Result<Check, ProjError> {
    if e.is_empty() {
        return Err(ProjError::EmptySet);
    }
    let theta_count = match precomputed {
        Some(sizes) => sizes.iter().filter(|(_, sz)| *sz as u64 <= u).count() as u64,
        None => exceptional_set(field, e, k, u)?.theta_count(),
    };
    let q = field.q() as f64;
    let n = e.n;
    let denom = u as f64 * q.powi((k * (n - k)) as i32 - k as i32);
    Ok(Check::report(
        format!("projection/mattila-ratio k={k} u={u}"),
        "|Theta| / (u q^{k(n-k)-k}), monitored only",
        theta_count.to_string(),
        format!("{denom}"),
        Some(theta_count as f64 / denom),
    ))
}

/// Uniform lower bound: for every V in G(k,n),
/// |pi_V(E)|^{1/2} >= 1 / (C q^{(n-k)/p} |E|^{-s} + q^{-k/2}),
/// with C the measured minimal Salem constant.
#[derive(Debug, Clone)]
pub struct UniformLowerBoundReport {
    pub check: Check,
    pub min_projection: usize,
    pub bound: f64,
    pub measured_c: f64,
}

pub fn check_uniform_lower_bound(
    field: &FieldSpec,
    e: &PointSet,
    k: u32,
    p: f64,
    s: f64,
    precomputed: Option<&[(Subspace, usize)]>,
) -> Result<UniformLowerBoundReport, ProjError> {
    assert!(p >= 2.0 && (0.0..=1.0).contains(&s));
    if e.is_empty() {
        return Err(ProjError::EmptySet);
    }
    let q = field.q() as f64;
    let n = e.n;
    let c = minimal_salem_constant(field, e, p, s)?;
    let denom = c * q.powf((n - k) as f64 / p) * (e.len() as f64).powf(-s)
        + q.powf(-(k as f64) / 2.0);
    let bound = (1.0 / denom).powi(2);
    let min_projection = match precomputed {
        Some(sizes) => sizes.iter().map(|(_, sz)| *sz).min().unwrap_or(0),
        None => projection_sizes(field, e, k).iter().map(|(_, sz)| *sz).min().unwrap_or(0),
    };
    let holds = min_projection as f64 >= bound / (1.0 + 1e-9);
    let check = Check::bound(
        format!("projection/uniform-lower k={k} p={p} s={s}"),
        "|pi_V(E)| >= (C q^{(n-k)/p} |E|^{-s} + q^{-k/2})^{-2} for all V",
        holds,
        min_projection.to_string(),
        format!("{bound}"),
        Some(bound / (min_projection.max(1) as f64)),
    );
    Ok(UniformLowerBoundReport { check, min_projection, bound, measured_c: c })
}
