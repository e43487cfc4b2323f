//! Job runners behind the `monodromy` binary. Each runner returns a process
//! exit code (0 success, 1 I/O or parse error, 2 rejected input) and reports
//! failures as one `kind: reason` line on stderr.

use std::fmt::Write as _;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use log::{debug, info};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::json::{
    BatchFailureJson, BatchReportJson, BatchSummaryJson, CertificateJson, ConeJson, Decimal,
    PolytopeJson, PolytopeRecordJson, PolytopeReportJson, Rational,
};
use crate::linalg::IntMatrix;
use crate::polytope::{cone_of, euler_char_of_class, thickness, ConeMembership};
use crate::random::{instance_rng, pick_genus, random_gl};
use crate::torus::{certify_with, verify_certificate, Certificate, CertifyInput, CertifyOptions};

/// Upper bound on `--count` for batch jobs.
pub const MAX_BATCH_COUNT: usize = 100_000;
/// Upper bound on the genus of generated batch instances.
pub const MAX_BATCH_GENUS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    IoOrParse = 1,
    Rejected = 2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Certify,
    Polytope,
    Batch,
    Verify,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub mode: Mode,
    pub input: Option<PathBuf>,
    /// `None` writes to stdout.
    pub output: Option<PathBuf>,
    pub force: bool,
    pub torsion: bool,
    pub seed: u64,
    pub count: usize,
    pub genus: RangeInclusive<usize>,
    /// Also print a human-readable report on stderr.
    pub verbose: bool,
}

impl JobSpec {
    pub fn new(mode: Mode) -> Self {
        JobSpec {
            mode,
            input: None,
            output: None,
            force: false,
            torsion: true,
            seed: 0,
            count: 0,
            genus: 3..=3,
            verbose: false,
        }
    }
}

/// A failed job: the exit code plus a one-line reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub code: ExitCode,
    pub kind: &'static str,
    pub reason: String,
}

impl Failure {
    fn io(reason: impl Into<String>) -> Self {
        Failure {
            code: ExitCode::IoOrParse,
            kind: "io",
            reason: reason.into(),
        }
    }

    fn parse(reason: impl Into<String>) -> Self {
        Failure {
            code: ExitCode::IoOrParse,
            kind: "parse",
            reason: reason.into(),
        }
    }

    fn rejected(reason: impl Into<String>) -> Self {
        Failure {
            code: ExitCode::Rejected,
            kind: "rejected-input",
            reason: reason.into(),
        }
    }

    /// The diagnostic line, with newlines flattened so it stays one line.
    pub fn line(&self) -> String {
        format!("{}: {}", self.kind, self.reason.replace('\n', " "))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::parse(e.to_string()),
            Error::CriterionFailed(_) => Failure {
                code: ExitCode::IoOrParse,
                kind: "internal",
                reason: e.to_string(),
            },
            _ => Failure::rejected(e.to_string()),
        }
    }
}

/// Parses `"3"` or `"2-6"`.
pub fn parse_genus_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid genus {text:?}"))
    };
    let (lo, hi) = match text.split_once('-') {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let g = parse(text)?;
            (g, g)
        }
    };
    if lo == 0 || lo > hi || hi > MAX_BATCH_GENUS {
        return Err(format!(
            "genus range must satisfy 1 <= lo <= hi <= {MAX_BATCH_GENUS}, got {text:?}"
        ));
    }
    Ok(lo..=hi)
}

pub fn run(spec: &JobSpec) -> i32 {
    let result = match spec.mode {
        Mode::Certify => certify_job(spec),
        Mode::Polytope => polytope_job(spec),
        Mode::Batch => batch_job(spec),
        Mode::Verify => verify_job(spec),
    };
    match result {
        Ok(()) => ExitCode::Success as i32,
        Err(f) => {
            eprintln!("{}", f.line());
            f.code as i32
        }
    }
}

pub fn run_certify(spec: &JobSpec) -> i32 {
    run(&JobSpec {
        mode: Mode::Certify,
        ..spec.clone()
    })
}

pub fn run_polytope(spec: &JobSpec) -> i32 {
    run(&JobSpec {
        mode: Mode::Polytope,
        ..spec.clone()
    })
}

pub fn run_batch(spec: &JobSpec) -> i32 {
    run(&JobSpec {
        mode: Mode::Batch,
        ..spec.clone()
    })
}

pub fn run_verify(spec: &JobSpec) -> i32 {
    run(&JobSpec {
        mode: Mode::Verify,
        ..spec.clone()
    })
}

fn read_input(spec: &JobSpec) -> Result<String, Failure> {
    let path = spec
        .input
        .as_ref()
        .ok_or_else(|| Failure::io("--input is required"))?;
    std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::parse(e.to_string()))
}

/// Refuses to clobber an existing output unless `--force` is given.
fn check_output(spec: &JobSpec) -> Result<(), Failure> {
    match &spec.output {
        Some(path) if path.exists() && !spec.force => Err(Failure::io(format!(
            "{} already exists (use --force to overwrite)",
            path.display()
        ))),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(spec: &JobSpec, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::io(e.to_string()))?;
    text.push('\n');
    match &spec.output {
        Some(path) => write_atomic(path, text.as_bytes(), spec.force),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::io(format!("stdout: {e}"))),
    }
}

/// Writes to a temporary sibling and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8], overwrite: bool) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| {
        Failure::io(format!(
            "cannot create temporary file in {}: {e}",
            dir.display()
        ))
    })?;
    tmp.write_all(bytes)
        .and_then(|_| tmp.as_file().sync_all())
        .map_err(|e| Failure::io(e.to_string()))?;
    let persisted = if overwrite {
        tmp.persist(path).map(|_| ())
    } else {
        tmp.persist_noclobber(path).map(|_| ())
    };
    persisted.map_err(|e| Failure::io(format!("cannot write {}: {}", path.display(), e.error)))
}

fn certify_job(spec: &JobSpec) -> Result<(), Failure> {
    check_output(spec)?;
    let text = read_input(spec)?;
    let input = crate::json::parse_input(&text)?;
    let cert = certify_with(
        &input,
        CertifyOptions {
            torsion: spec.torsion,
        },
    )?;
    info!(
        "certified genus {} input: k = {}",
        cert.genus(),
        cert.block_form.k
    );
    if spec.verbose {
        eprint!("{}", render_certificate(&cert));
    }
    emit(spec, &CertificateJson::from_certificate(&cert))
}

fn polytope_job(spec: &JobSpec) -> Result<(), Failure> {
    check_output(spec)?;
    let raw: PolytopeJson = parse_json(&read_input(spec)?)?;
    let p = raw.polytope()?;
    let mut records = Vec::new();
    for w in raw.covectors() {
        let t = thickness(&p, &w)?;
        let cone = cone_of(&p, &w)?;
        let fiber = match (&cone, w.is_primitive_integral() && t.is_integer()) {
            (ConeMembership::Open(_), true) => Some(euler_char_of_class(&p, &w)?),
            _ => None,
        };
        debug!("covector {:?}: T = {t}", w.0);
        records.push(PolytopeRecordJson {
            covector: crate::json::point_to_json(&w.0),
            t: Rational(t),
            cone: ConeJson::from(&cone),
            chi: fiber.as_ref().map(|f| Decimal(f.chi.clone())),
            degenerate_point_polytope: fiber.is_some_and(|f| f.degenerate_point_polytope),
        });
    }
    info!(
        "{} covector(s) evaluated on a polytope with {} vertices",
        records.len(),
        p.vertices().len()
    );
    let full = PolytopeJson::from_polytope(&p, &[]);
    emit(
        spec,
        &PolytopeReportJson {
            dim: full.dim,
            vertices: full.vertices,
            records,
        },
    )
}

/// Generates instance `index` of a batch.
pub fn batch_instance(seed: u64, index: usize, genus: &RangeInclusive<usize>) -> IntMatrix {
    let mut rng = instance_rng(seed, index as u64);
    let g = pick_genus(genus, &mut rng);
    random_gl(g, &mut rng)
}

/// Certifies `count` seeded instances in parallel; results are ordered by
/// instance index, so the report depends only on the job spec.
pub fn batch_report(spec: &JobSpec) -> BatchReportJson {
    let options = CertifyOptions {
        torsion: spec.torsion,
    };
    let results: Vec<(usize, Result<Certificate, Error>)> = (0..spec.count)
        .into_par_iter()
        .map(|i| {
            let m = batch_instance(spec.seed, i, &spec.genus);
            (i, certify_with(&CertifyInput::Matrix(m), options))
        })
        .collect();

    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    let mut histogram = std::collections::BTreeMap::<usize, usize>::new();
    for (index, result) in results {
        match result {
            Ok(cert) => {
                *histogram.entry(cert.homology.dim_h1_m).or_default() += 1;
                certificates.push(CertificateJson::from_certificate(&cert));
            }
            Err(e) => failures.push(BatchFailureJson {
                index,
                reason: e.to_string(),
            }),
        }
    }
    BatchReportJson {
        seed: Decimal(spec.seed.into()),
        count: spec.count.into(),
        genus: format!("{}-{}", spec.genus.start(), spec.genus.end()),
        summary: BatchSummaryJson {
            successes: certificates.len().into(),
            failures: failures.len().into(),
            dimension_histogram: histogram
                .into_iter()
                .map(|(d, n)| (d.to_string(), n.into()))
                .collect(),
        },
        certificates,
        failures,
    }
}

fn batch_job(spec: &JobSpec) -> Result<(), Failure> {
    check_output(spec)?;
    if spec.count > MAX_BATCH_COUNT {
        return Err(Failure::rejected(format!(
            "count {} exceeds {MAX_BATCH_COUNT}",
            spec.count
        )));
    }
    if spec.genus.is_empty() || *spec.genus.start() == 0 {
        return Err(Failure::rejected(
            "genus range must be nonempty and positive",
        ));
    }
    let report = batch_report(spec);
    info!(
        "batch: {} successes, {} failures",
        report.summary.successes.0, report.summary.failures.0
    );
    if spec.verbose {
        eprint!("{}", render_batch_summary(&report));
    }
    emit(spec, &report)
}

/// Checks a certificate JSON value; returns its violated checks.
pub fn verify_certificate_json(c: &CertificateJson) -> Vec<String> {
    match c.to_certificate() {
        Ok(cert) => verify_certificate(&cert),
        Err(e) => vec![format!("malformed certificate: {e}")],
    }
}

fn verify_job(spec: &JobSpec) -> Result<(), Failure> {
    let text = read_input(spec)?;
    let value: serde_json::Value = parse_json(&text)?;
    let certificates: Vec<CertificateJson> = if value.get("certificates").is_some() {
        let batch: BatchReportJson =
            serde_json::from_value(value).map_err(|e| Failure::parse(e.to_string()))?;
        if batch.summary.successes.0 != batch.certificates.len().into() {
            return Err(Failure::rejected(
                "batch summary disagrees with its certificate list",
            ));
        }
        batch.certificates
    } else {
        vec![serde_json::from_value(value).map_err(|e| Failure::parse(e.to_string()))?]
    };
    for (i, c) in certificates.iter().enumerate() {
        let failed = verify_certificate_json(c);
        if !failed.is_empty() {
            return Err(Failure::rejected(format!(
                "certificate {i} failed verification: {}",
                failed.join("; ")
            )));
        }
    }
    println!("ok: {} certificate(s) verified", certificates.len());
    Ok(())
}

/// Human-readable summary of a certificate.
pub fn render_certificate(c: &Certificate) -> String {
    let bf = &c.block_form;
    let mut out = String::new();
    let _ = writeln!(out, "genus            {}", c.genus());
    let _ = writeln!(out, "fixed rank k     {}", bf.k);
    let _ = writeln!(out, "f_*\n{}", indent(&c.f_star));
    let _ = writeln!(out, "conjugator P\n{}", indent(&bf.conjugator));
    let _ = writeln!(out, "P^-1 f_* P\n{}", indent(&bf.conjugated));
    let _ = writeln!(out, "A\n{}", indent(c.handlebody.a()));
    let _ = writeln!(out, "B\n{}", indent(c.handlebody.b()));
    let _ = writeln!(out, "twist word       {}", c.twist_word);
    let _ = writeln!(out, "criterion        {}", c.criterion);
    let _ = writeln!(
        out,
        "dim H1(M), H1(W) {}, {}",
        c.homology.dim_h1_m, c.homology.dim_h1_w
    );
    if let Some(t) = &c.homology.torsion_m {
        let t: Vec<String> = t.iter().map(|d| format!("Z/{d}")).collect();
        let _ = writeln!(
            out,
            "torsion H1(M)    {}",
            if t.is_empty() {
                "none".into()
            } else {
                t.join(" + ")
            }
        );
    }
    let _ = writeln!(
        out,
        "N = T            {} = {}",
        c.norms.n_value, c.norms.t_value
    );
    out
}

fn indent(m: &IntMatrix) -> String {
    m.to_string()
        .lines()
        .map(|l| format!("    {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn render_batch_summary(r: &BatchReportJson) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "seed {}  count {}  genus {}",
        r.seed.0, r.count.0, r.genus
    );
    let _ = writeln!(
        out,
        "successes {}  failures {}",
        r.summary.successes.0, r.summary.failures.0
    );
    let _ = writeln!(out, "dim H1(M)  count");
    for (d, n) in &r.summary.dimension_histogram {
        let _ = writeln!(out, "{d:>9}  {}", n.0);
    }
    out
}
