//! Experiment driver: verification suites, exceptional-set scans, Salem
//! profiles, and the sharpness constructions, reported as JSON or CSV.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qgeom::gf::FieldSpec;
use qgeom::incidence::{
    construct_few_incidence, construct_kakeya_2d, construct_many_incidence, refute_claimed_bound,
    Construction,
};
use qgeom::projections::{check_main_theorem, projection_sizes};
use qgeom::report::{all_hold, Check};
use qgeom::setfile::{generate_set, read_set, write_set, GenKind};
use qgeom::spectral::{best_salem_exponent, minimal_salem_constant, p_norm, salem_check, PointSet, SalemParams, SpectralError};
use qgeom::suites::{self, SuiteCtx};
use qgeom::threads;

const SCHEMA_VERSION: u32 = 1;
const HARD_CAP: u64 = 1_000_000;

#[derive(Parser)]
#[command(name = "qgeom", version, about = "Finite-field projection and incidence laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a named verification suite.
    Verify {
        /// gf | gbc | character | plancherel | subspace-plancherel |
        /// moments | incidence | projection | all
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep the exceptional-set theorem over u and p; CSV output.
    ScanExceptional {
        #[command(flatten)]
        common: Common,
    },
    /// Profile the Salem behaviour of a set across p.
    Salem {
        #[command(flatten)]
        common: Common,
    },
    /// Run a sharpness construction: few | kakeya | many | refute.
    Sharpness {
        #[arg(long)]
        example: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Field size, a prime power (or the prime when --e is given).
    #[arg(long)]
    q: u64,
    /// Extension degree; optional when --q is already the full prime power.
    #[arg(long)]
    e: Option<u32>,
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    mode: ModeArg,
    /// Point-set file; header must match --q/--n.
    #[arg(long)]
    set: Option<PathBuf>,
    /// Generator spec, e.g. random:9, subspace:1, coset:1,
    /// complement-of-kakeya, singleton.
    #[arg(long)]
    gen: Option<String>,
    /// Comma-separated thresholds for scans.
    #[arg(long, default_value = "1,2,4")]
    u_list: String,
    /// Comma-separated p exponents for scans/profiles.
    #[arg(long, default_value = "2,3")]
    p_list: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Omit the timestamp so identical runs are byte-identical.
    #[arg(long)]
    no_timestamp: bool,
    /// Override the q^n <= 10^6 safety cap.
    #[arg(long)]
    force: bool,
}

#[derive(Serialize)]
struct ConfigOut {
    q: u64,
    p: u64,
    e: u32,
    n: u32,
    k: u32,
    seed: u64,
    mode: String,
    rng: String,
    generator: Option<String>,
    set_path: Option<String>,
    u_list: Vec<u64>,
    p_list: Vec<f64>,
    threads: usize,
}

#[derive(Serialize)]
struct SalemRow {
    p: f64,
    p_norm: f64,
    minimal_c_at_s_half: f64,
    minimal_c_at_s_inv_p: f64,
    /// None for singleton sets, where every s in [0,1] works trivially.
    best_s_at_c1: Option<f64>,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    command: String,
    config: ConfigOut,
    checks: Vec<Check>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    profile: Option<Vec<SalemRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    set_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    planes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
}

struct ConfigError(String);

macro_rules! config_error_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for ConfigError {
            fn from(e: $ty) -> ConfigError {
                ConfigError(e.to_string())
            }
        }
    )*};
}

config_error_from!(
    std::io::Error,
    qgeom::gf::GfError,
    qgeom::setfile::SetFileError,
    qgeom::setfile::GenError,
    qgeom::suites::SuiteError,
    qgeom::incidence::IncError
);

fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, ConfigError> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| ConfigError(format!("bad list entry: {t}"))))
        .collect()
}

fn resolve_field(common: &Common) -> Result<FieldSpec, ConfigError> {
    let (p, e) = match common.e {
        Some(e) => (common.q, e),
        None => factor_prime_power(common.q)
            .ok_or_else(|| ConfigError(format!("q={} is not a prime power", common.q)))?,
    };
    Ok(FieldSpec::new(p, e)?)
}

fn check_cap(field: &FieldSpec, n: u32, force: bool) -> Result<(), ConfigError> {
    let qn = (field.q() as u64).checked_pow(n).unwrap_or(u64::MAX);
    if qn > HARD_CAP && !force {
        return Err(ConfigError(format!(
            "q^n = {qn} exceeds the cap of {HARD_CAP}; pass --force to override"
        )));
    }
    Ok(())
}

fn load_set(common: &Common, field: &FieldSpec) -> Result<Option<PointSet>, ConfigError> {
    if let Some(path) = &common.set {
        let text = std::fs::read_to_string(path)?;
        let set = read_set(&text, field)?;
        if set.n != common.n {
            return Err(ConfigError(format!(
                "set file has n={}, configuration has n={}",
                set.n, common.n
            )));
        }
        return Ok(Some(set));
    }
    if let Some(spec) = &common.gen {
        let kind = GenKind::parse(spec)?;
        return Ok(Some(generate_set(field, common.n, &kind, common.seed)?));
    }
    Ok(None)
}

fn config_out(common: &Common, field: &FieldSpec) -> Result<ConfigOut, ConfigError> {
    Ok(ConfigOut {
        q: field.q() as u64,
        p: field.p() as u64,
        e: field.e(),
        n: common.n,
        k: common.k,
        seed: common.seed,
        mode: format!("{:?}", common.mode).to_lowercase(),
        rng: "chacha12".into(),
        generator: common.gen.clone(),
        set_path: common.set.as_ref().map(|p| p.display().to_string()),
        u_list: parse_list(&common.u_list)?,
        p_list: parse_list(&common.p_list)?,
        threads: threads::effective_threads(),
    })
}

fn timestamp(common: &Common) -> Option<u64> {
    (!common.no_timestamp).then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn checks_csv(checks: &[Check]) -> String {
    let mut out = format!("# schema_version={SCHEMA_VERSION}\nname,statement,holds,lhs,rhs,ratio\n");
    for c in checks {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&c.name),
            csv_field(&c.paper_ref),
            c.holds,
            csv_field(&c.lhs),
            csv_field(&c.rhs),
            c.ratio.map(|r| r.to_string()).unwrap_or_default(),
        ));
    }
    out
}

fn emit(common: &Common, text: &str) -> Result<(), ConfigError> {
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render(common: &Common, report: &Report) -> Result<(), ConfigError> {
    let text = match common.format {
        FormatArg::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        FormatArg::Csv => checks_csv(&report.checks),
    };
    emit(common, &text)
}

fn plane_strings(fam: &qgeom::incidence::PlaneFamily) -> Vec<String> {
    fam.iter()
        .map(|a| {
            let rep: Vec<String> = a.rep.0.iter().map(|c| c.rep().to_string()).collect();
            let rows: Vec<String> = a
                .direction
                .basis()
                .map(|r| {
                    r.0.iter().map(|c| c.rep().to_string()).collect::<Vec<_>>().join(",")
                })
                .collect();
            format!("rep=({}) dir=[{}]", rep.join(","), rows.join(";"))
        })
        .collect()
}

fn cmd_verify(suite: &str, common: &Common) -> Result<Report, ConfigError> {
    let field = resolve_field(common)?;
    check_cap(&field, common.n, common.force)?;
    let set = load_set(common, &field)?;
    let ctx = SuiteCtx {
        field: &field,
        n: common.n,
        k: common.k,
        seed: common.seed,
        set: set.as_ref(),
    };
    let checks = suites::run(suite, &ctx)?;
    let passed = all_hold(&checks);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: format!("verify --suite {suite}"),
        config: config_out(common, &field)?,
        checks,
        passed,
        profile: None,
        set_file: None,
        planes: None,
        timestamp: timestamp(common),
    })
}

fn scan_csv(common: &Common) -> Result<(String, bool), ConfigError> {
    let field = resolve_field(common)?;
    check_cap(&field, common.n, common.force)?;
    let qn = (field.q() as u64).pow(common.n);
    let e = load_set(common, &field)?
        .unwrap_or_else(|| generate_set(&field, common.n, &GenKind::Random(qn / 2 + 1), common.seed).unwrap());
    if e.is_empty() {
        return Err(ConfigError("point set is empty".into()));
    }
    if common.k == 0 || common.k >= common.n {
        return Err(ConfigError(format!("need 0 < k < n, got k={} n={}", common.k, common.n)));
    }
    let u_list: Vec<u64> = parse_list(&common.u_list)?;
    let p_list: Vec<f64> = parse_list(&common.p_list)?;
    let sizes = projection_sizes(&field, &e, common.k);
    let mut out = format!(
        "# schema_version={SCHEMA_VERSION} s=0.5 rng=chacha12 seed={} |E|={}\nu,p,c,theta,bound,ratio,holds\n",
        common.seed,
        e.len()
    );
    let mut ok = true;
    for &u in &u_list {
        for &p in &p_list {
            let r = check_main_theorem(&field, &e, common.k, u, p, 0.5, Some(&sizes))
                .map_err(|err| ConfigError(err.to_string()))?;
            ok &= r.check.holds;
            out.push_str(&format!(
                "{u},{p},{},{},{},{},{}\n",
                r.measured_c,
                r.theta_count,
                r.bound,
                r.check.ratio.map(|x| x.to_string()).unwrap_or_default(),
                r.check.holds,
            ));
        }
    }
    Ok((out, ok))
}

fn cmd_salem(common: &Common) -> Result<Report, ConfigError> {
    let field = resolve_field(common)?;
    check_cap(&field, common.n, common.force)?;
    let qn = (field.q() as u64).pow(common.n);
    let e = load_set(common, &field)?
        .unwrap_or_else(|| generate_set(&field, common.n, &GenKind::Random(qn / 2 + 1), common.seed).unwrap());
    if e.is_empty() {
        return Err(ConfigError("point set is empty".into()));
    }
    let p_list: Vec<f64> = parse_list(&common.p_list)?;
    let mut profile = Vec::new();
    let mut checks = Vec::new();
    for &p in &p_list {
        let norm = p_norm(&field, &e, p).map_err(|err| ConfigError(err.to_string()))?;
        let c_half = minimal_salem_constant(&field, &e, p, 0.5).unwrap();
        let c_invp = minimal_salem_constant(&field, &e, p, 1.0 / p).unwrap();
        let best = match best_salem_exponent(&field, &e, p, 1.0) {
            Ok(s) => Some(s),
            Err(SpectralError::SingletonSet) => None,
            Err(err) => return Err(ConfigError(err.to_string())),
        };
        let self_consistent = salem_check(&field, &e, SalemParams::new(p, 0.5, c_half * (1.0 + 1e-9)))
            .unwrap()
            .passes;
        checks.push(Check::bound(
            format!("salem/self-consistent p={p}"),
            "the measured minimal constant satisfies its own inequality",
            self_consistent,
            format!("{norm}"),
            format!("{}", c_half),
            None,
        ));
        profile.push(SalemRow {
            p,
            p_norm: norm,
            minimal_c_at_s_half: c_half,
            minimal_c_at_s_inv_p: c_invp,
            best_s_at_c1: best,
        });
    }
    // universality: every nonempty set is (2, 1/2)-Salem with C = 1
    let universal = salem_check(&field, &e, SalemParams::new(2.0, 0.5, 1.0)).unwrap();
    checks.push(Check::bound(
        "salem/universal-2-half".into(),
        "every set is (2, 1/2)-Salem with constant 1",
        universal.passes,
        format!("{}", universal.norm),
        format!("{}", universal.rhs),
        Some(universal.norm / universal.rhs),
    ));
    let passed = all_hold(&checks);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: "salem".into(),
        config: config_out(common, &field)?,
        checks,
        passed,
        profile: Some(profile),
        set_file: Some(write_set(&field, &e)),
        planes: None,
        timestamp: timestamp(common),
    })
}

fn cmd_sharpness(example: &str, common: &Common) -> Result<Report, ConfigError> {
    let field = resolve_field(common)?;
    let (construction, checks): (Option<Construction>, Vec<Check>) = match example {
        "few" => {
            check_cap(&field, common.n, common.force)?;
            let c = construct_few_incidence(&field, common.n, common.k)?;
            let checks = c.checks.clone();
            (Some(c), checks)
        }
        "kakeya" => {
            check_cap(&field, 2, common.force)?;
            let c = construct_kakeya_2d(&field)?;
            let checks = c.checks.clone();
            (Some(c), checks)
        }
        "many" => {
            check_cap(&field, common.n, common.force)?;
            let max = (field.q() as u64).pow(common.n - common.k);
            let e = load_set(common, &field)?.unwrap_or_else(|| {
                generate_set(&field, common.n, &GenKind::Random((max / 2).max(1)), common.seed).unwrap()
            });
            let c = construct_many_incidence(&field, &e, common.k)?;
            let checks = c.checks.clone();
            (Some(c), checks)
        }
        "refute" => {
            check_cap(&field, 5, common.force)?;
            let r = refute_claimed_bound(&field);
            (None, r.checks)
        }
        other => return Err(ConfigError(format!("unknown sharpness example: {other}"))),
    };
    let passed = all_hold(&checks);
    let (set_file, planes) = match &construction {
        Some(c) => (
            Some(write_set(&field, &c.e)),
            Some(plane_strings(&c.family)),
        ),
        None => (None, None),
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: format!("sharpness --example {example}"),
        config: config_out(common, &field)?,
        checks,
        passed,
        profile: None,
        set_file,
        planes,
        timestamp: timestamp(common),
    })
}

fn run() -> Result<bool, ConfigError> {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Verify { suite, common } => {
            let report = cmd_verify(suite, common)?;
            render(common, &report)?;
            Ok(report.passed)
        }
        Cmd::ScanExceptional { common } => {
            let (csv, ok) = scan_csv(common)?;
            emit(common, &csv)?;
            Ok(ok)
        }
        Cmd::Salem { common } => {
            let report = cmd_salem(common)?;
            render(common, &report)?;
            Ok(report.passed)
        }
        Cmd::Sharpness { example, common } => {
            let report = cmd_sharpness(example, common)?;
            render(common, &report)?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(ConfigError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
