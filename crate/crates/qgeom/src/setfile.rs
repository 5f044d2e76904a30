//! Line-oriented point-set files and seeded set generators.
//!
//! Format: a header line `q=<p>^<e> n=<n> count=<c>`, then one point per
//! line as n space-separated integers in [0, q) under the base-p element
//! encoding. Trivially diffable and exact.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::gf::FieldSpec;
use crate::incidence::construct_kakeya_2d;
use crate::spectral::PointSet;
use crate::vecspace::{AffinePlane, Subspace, Vector};

#[derive(Debug, Error, PartialEq)]
pub enum SetFileError {
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("line {line}: expected {expected} coordinates")]
    BadPoint { line: usize, expected: u32 },
    #[error("line {line}: entry {value} outside [0, {q})")]
    EntryOutOfRange { line: usize, value: u64, q: u32 },
    #[error("line {line}: duplicate point")]
    DuplicatePoint { line: usize },
    #[error("header promises {expected} points, found {actual}")]
    CountMismatch { expected: usize, actual: usize },
    #[error("field in file (q={file_q}) does not match configuration (q={cfg_q})")]
    FieldMismatch { file_q: u64, cfg_q: u64 },
}

/// Renders E in the set-file format, points in ascending index order.
pub fn write_set(field: &FieldSpec, e: &PointSet) -> String {
    let mut out = format!(
        "q={}^{} n={} count={}\n",
        field.p(),
        field.e(),
        e.n,
        e.len()
    );
    for v in e.vectors(field) {
        let coords: Vec<String> = v.0.iter().map(|c| c.rep().to_string()).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

/// Parsed header: (p, e, n, count).
pub fn parse_header(line: &str) -> Result<(u64, u32, u32, usize), SetFileError> {
    let bad = || SetFileError::BadHeader(line.to_string());
    let mut q_part = None;
    let mut n_part = None;
    let mut count_part = None;
    for tok in line.split_whitespace() {
        let (key, val) = tok.split_once('=').ok_or_else(bad)?;
        match key {
            "q" => q_part = Some(val.to_string()),
            "n" => n_part = Some(val.parse::<u32>().map_err(|_| bad())?),
            "count" => count_part = Some(val.parse::<usize>().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
    }
    let q = q_part.ok_or_else(bad)?;
    let (p, e) = match q.split_once('^') {
        Some((p, e)) => (
            p.parse::<u64>().map_err(|_| bad())?,
            e.parse::<u32>().map_err(|_| bad())?,
        ),
        None => (q.parse::<u64>().map_err(|_| bad())?, 1),
    };
    if e == 0 {
        return Err(bad());
    }
    Ok((p, e, n_part.ok_or_else(bad)?, count_part.ok_or_else(bad)?))
}

/// Parses a set file against an already-constructed field.
pub fn read_set(text: &str, field: &FieldSpec) -> Result<PointSet, SetFileError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| SetFileError::BadHeader("empty file".into()))?;
    let (p, e, n, count) = parse_header(header)?;
    let file_q = p.pow(e);
    if file_q != field.q() as u64 {
        return Err(SetFileError::FieldMismatch { file_q, cfg_q: field.q() as u64 });
    }
    let q = field.q();
    let mut set = PointSet::new(n);
    let mut actual = 0usize;
    for (i, line) in lines {
        let line_no = i + 1;
        let entries: Vec<u64> = line
            .split_whitespace()
            .map(|t| t.parse::<u64>().map_err(|_| SetFileError::BadPoint { line: line_no, expected: n }))
            .collect::<Result<_, _>>()?;
        if entries.len() != n as usize {
            return Err(SetFileError::BadPoint { line: line_no, expected: n });
        }
        if let Some(&value) = entries.iter().find(|&&v| v >= q as u64) {
            return Err(SetFileError::EntryOutOfRange { line: line_no, value, q });
        }
        let idx = entries.iter().rev().fold(0u64, |acc, &c| acc * q as u64 + c);
        if !set.points.insert(idx) {
            return Err(SetFileError::DuplicatePoint { line: line_no });
        }
        actual += 1;
    }
    if actual != count {
        return Err(SetFileError::CountMismatch { expected: count, actual });
    }
    Ok(set)
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("requested size {size} exceeds q^n = {max}")]
    SizeTooLarge { size: u64, max: u64 },
    #[error("bad generator spec: {0}")]
    BadSpec(String),
    #[error("generator inapplicable: {0}")]
    Inapplicable(String),
}

/// Seeded point-set generators. All are deterministic in (kind, seed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    Random(u64),
    Subspace(u32),
    ComplementOfKakeya,
    Singleton,
    Coset(u32),
}

impl GenKind {
    /// Spec syntax: `random:<size>`, `subspace:<k>`, `coset:<k>`,
    /// `complement-of-kakeya`, `singleton`.
    pub fn parse(spec: &str) -> Result<GenKind, GenError> {
        let (kind, arg) = match spec.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (spec, None),
        };
        let num = |a: Option<&str>| {
            a.ok_or_else(|| GenError::BadSpec(spec.to_string()))?
                .parse::<u64>()
                .map_err(|_| GenError::BadSpec(spec.to_string()))
        };
        match kind {
            "random" => Ok(GenKind::Random(num(arg)?)),
            "subspace" => Ok(GenKind::Subspace(num(arg)? as u32)),
            "coset" => Ok(GenKind::Coset(num(arg)? as u32)),
            "complement-of-kakeya" if arg.is_none() => Ok(GenKind::ComplementOfKakeya),
            "singleton" if arg.is_none() => Ok(GenKind::Singleton),
            _ => Err(GenError::BadSpec(spec.to_string())),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GenKind::Random(s) => format!("random:{s}"),
            GenKind::Subspace(k) => format!("subspace:{k}"),
            GenKind::ComplementOfKakeya => "complement-of-kakeya".into(),
            GenKind::Singleton => "singleton".into(),
            GenKind::Coset(k) => format!("coset:{k}"),
        }
    }
}

fn random_subspace(field: &FieldSpec, n: u32, k: u32, rng: &mut ChaCha12Rng) -> Subspace {
    let qn = (field.q() as u64).pow(n);
    loop {
        let vecs: Vec<Vector> = (0..k)
            .map(|_| Vector::from_index(field, rng.random_range(0..qn), n as usize))
            .collect();
        let s = Subspace::span(field, &vecs, n as usize);
        if s.dim() == k as usize {
            return s;
        }
    }
}

pub fn generate_set(field: &FieldSpec, n: u32, kind: &GenKind, seed: u64) -> Result<PointSet, GenError> {
    let qn = (field.q() as u64).pow(n);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    match kind {
        GenKind::Random(size) => {
            if *size > qn {
                return Err(GenError::SizeTooLarge { size: *size, max: qn });
            }
            let mut idx: Vec<u64> = (0..qn).collect();
            idx.shuffle(&mut rng);
            Ok(PointSet::from_indices(n, idx.into_iter().take(*size as usize)))
        }
        GenKind::Subspace(k) => {
            if *k > n {
                return Err(GenError::Inapplicable(format!("subspace dimension {k} > n={n}")));
            }
            let s = random_subspace(field, n, *k, &mut rng);
            Ok(PointSet::from_indices(n, s.points(field)))
        }
        GenKind::ComplementOfKakeya => {
            if n != 2 {
                return Err(GenError::Inapplicable("kakeya construction is 2-dimensional".into()));
            }
            let c = construct_kakeya_2d(field)
                .map_err(|e| GenError::Inapplicable(e.to_string()))?;
            Ok(c.e.complement(field))
        }
        GenKind::Singleton => Ok(PointSet::singleton_origin(n)),
        GenKind::Coset(k) => {
            if *k > n {
                return Err(GenError::Inapplicable(format!("coset dimension {k} > n={n}")));
            }
            let s = random_subspace(field, n, *k, &mut rng);
            let t = Vector::from_index(field, rng.random_range(0..qn), n as usize);
            let plane = AffinePlane::through(field, &s, &t);
            Ok(PointSet::from_indices(n, plane.points(field)))
        }
    }
}
