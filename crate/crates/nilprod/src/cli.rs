//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use nilprod_core::nilfactor::{census_formula_only, census_orbit_union, union_min_s};
use nilprod_core::text::parse_matrix;
use nilprod_core::{
    CensusMethod, CensusReport, DecomposeError, Decomposer, MatError, NilError, ParseError, Ring,
    RingError, RingSpec, Suite, Verifier, DEFAULT_CAP,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::files::{write_bitset, write_packed_binary, write_packed_text};
use crate::memo::AtlasMemo;
use crate::parallel::census_set_product_threaded;
use crate::report::{
    table_csv, table_text, AtlasJson, CensusJson, FactorizationJson, RefusalJson, RingInfoJson,
    TableRow, VerifyJson,
};
use crate::DEFAULT_SEED;

pub mod exit {
    pub const OK: i32 = 0;
    pub const INVALID_INPUT: i32 = 1;
    pub const CAP_EXCEEDED: i32 = 2;
    pub const TRACE_OBSTRUCTION: i32 = 3;
    pub const NOT_IN_ORBIT_UNION: i32 = 4;
    pub const NOT_NILPOTENT: i32 = 5;
    /// Census mismatch or a verification suite with violations.
    pub const CHECK_FAILED: i32 = 6;
}

#[derive(Parser, Debug)]
#[command(
    name = "nilprod",
    version,
    about = "Products of nilpotent 2x2 matrices and quaternions over finite chain rings"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Upper bound on q^{4n} for anything that enumerates M2(R).
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,

    /// Worker threads for set-product censuses.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Output format; `table` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Omit timing fields so identical inputs give identical bytes.
    #[arg(long, global = true)]
    stable_output: bool,

    /// Seed for sampled suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Sample count for sampled suites.
    #[arg(long, global = true, default_value_t = 100_000)]
    samples: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    SetProduct,
    OrbitUnion,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetKind {
    Nilpotents,
    Invertibles,
    Union,
    Products,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Encoding {
    Text,
    Binary,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count products of s nilpotents and compare with the closed form.
    Census {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = Method::SetProduct)]
        method: Method,
    },
    /// Factor a matrix into exactly s nilpotents.
    Decompose {
        #[arg(long)]
        ring: String,
        /// `[[a,b],[c,d]]`, entries as integers or digit tuples.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        s: u32,
        /// For s = 2, search all nilpotent pairs when no orbit certificate exists.
        #[arg(long)]
        pair_search: bool,
    },
    /// Run invariant suites.
    Verify {
        #[arg(long)]
        ring: String,
        /// One of axioms, iso, lemma33, lemma34, lemma35, lemma36, lemma37, lemma311, thm38,
        /// cor310, example39, thm312, or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Census rows for several rings and factor counts.
    Table {
        /// Comma-separated ring specs.
        #[arg(long, value_delimiter = ',', required = true)]
        rings: Vec<String>,
        /// A single value or an inclusive range such as `1-4`.
        #[arg(long, default_value = "1-4")]
        s: String,
        #[arg(long, value_enum, default_value_t = Method::SetProduct)]
        method: Method,
    },
    /// Ring parameters, modulus and the sum-of-squares pair.
    Info {
        #[arg(long)]
        ring: String,
    },
    /// Write the orbit union as a bitset file and print a summary.
    ExportUnion {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        bitset: PathBuf,
    },
    /// List packed matrix indices of a set.
    Enumerate {
        #[arg(long)]
        ring: String,
        #[arg(long, value_enum)]
        set: SetKind,
        /// Factor count for `--set products`.
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, value_enum, default_value_t = Encoding::Text)]
        encoding: Encoding,
    },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
    /// Report to emit alongside the error, as with decompose refusals.
    payload: Option<Vec<u8>>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
            payload: None,
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        Failure::new(exit::INVALID_INPUT, e.to_string())
    }
}

impl From<MatError> for Failure {
    fn from(e: MatError) -> Self {
        let code = match e {
            MatError::CapExceeded { .. } => exit::CAP_EXCEEDED,
            _ => exit::INVALID_INPUT,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<NilError> for Failure {
    fn from(e: NilError) -> Self {
        match e {
            NilError::Mat(m) => m.into(),
            other => Failure::new(exit::INVALID_INPUT, other.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::new(exit::INVALID_INPUT, e.to_string())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::new(exit::INVALID_INPUT, format!("{e:#}"))
    }
}

struct Output {
    bytes: Vec<u8>,
    code: i32,
}

impl Output {
    fn ok(bytes: impl Into<Vec<u8>>) -> Self {
        Output {
            bytes: bytes.into(),
            code: exit::OK,
        }
    }
}

fn parse_ring(s: &str) -> Result<Ring, Failure> {
    let spec: RingSpec = s.parse()?;
    Ok(Ring::new(spec)?)
}

fn json_line<T: serde::Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_string(v).expect("report serializes");
    s.push('\n');
    s.into_bytes()
}

fn parse_s_range(s: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::new(exit::INVALID_INPUT, format!("bad --s range {s:?}: expected N or A-B"));
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn census_report(cli: &Cli, ring: &Ring, s: u32, method: Method) -> Result<CensusReport, Failure> {
    Ok(match method {
        Method::SetProduct => {
            let set = census_set_product_threaded(ring, s, cli.cap, cli.threads)?;
            CensusReport::new(ring, s, Some(set.count()), CensusMethod::SetProduct)
        }
        Method::OrbitUnion => {
            let min = union_min_s(ring.n());
            if s < min {
                return Err(NilError::MethodInapplicable { s, min }.into());
            }
            let atlas = AtlasMemo::global().get_or_build(ring, cli.cap)?;
            census_orbit_union(ring, &atlas, s)?
        }
        Method::Formula => census_formula_only(ring, s)?,
    })
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::SetProduct => CensusMethod::SetProduct.as_str(),
        Method::OrbitUnion => CensusMethod::OrbitUnion.as_str(),
        Method::Formula => CensusMethod::FormulaOnly.as_str(),
    }
}

fn cmd_census(cli: &Cli, ring: &str, s: u32, method: Method) -> Result<Output, Failure> {
    let ring = parse_ring(ring)?;
    let start = Instant::now();
    let report = census_report(cli, &ring, s, method)?;
    let elapsed = (!cli.stable_output).then(|| start.elapsed().as_millis() as u64);
    let json = CensusJson::new(&report, elapsed);
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&json),
        Format::Text => json.text().into_bytes(),
        Format::Csv => table_csv(&[TableRow::ok(&report)])
            .context("writing csv")?
            .into_bytes(),
    };
    let code = if report.matches() == Some(false) {
        exit::CHECK_FAILED
    } else {
        exit::OK
    };
    Ok(Output { bytes, code })
}

fn cmd_decompose(cli: &Cli, ring: &str, matrix: &str, s: u32, pair_search: bool) -> Result<Output, Failure> {
    let ring = parse_ring(ring)?;
    let target = parse_matrix(&ring, matrix)?;
    if s == 0 {
        return Err(Failure::new(exit::INVALID_INPUT, "s must be at least 1"));
    }
    let atlas = AtlasMemo::global().get_or_build(&ring, cli.cap)?;
    let nilpotents;
    let mut dec = Decomposer::new(&ring, &atlas);
    if pair_search && s == 2 {
        nilpotents = ring.enumerate_nilpotents(cli.cap)?;
        dec = dec.with_pair_search(&nilpotents);
    }
    let format = cli.format.unwrap_or(Format::Json);
    match dec.decompose(&target, s) {
        Ok(f) => {
            let json = FactorizationJson::new(&ring, &f);
            let bytes = match format {
                Format::Text => json.text().into_bytes(),
                _ => json_line(&json),
            };
            Ok(Output::ok(bytes))
        }
        Err(e) => {
            let (code, tag) = match e {
                DecomposeError::TraceObstruction => (exit::TRACE_OBSTRUCTION, "trace-obstruction"),
                DecomposeError::NotInOrbitUnion => (exit::NOT_IN_ORBIT_UNION, "not-in-orbit-union"),
                DecomposeError::NotNilpotent => (exit::NOT_NILPOTENT, "not-nilpotent"),
                DecomposeError::ZeroFactors => (exit::INVALID_INPUT, "zero-factors"),
            };
            let refusal = RefusalJson::new(&ring, &target, s, tag, e.to_string());
            let payload = match format {
                Format::Text => refusal.text().into_bytes(),
                _ => json_line(&refusal),
            };
            Err(Failure {
                code,
                message: e.to_string(),
                payload: Some(payload),
            })
        }
    }
}

fn needs_atlas(s: Suite) -> bool {
    !matches!(
        s,
        Suite::Axioms | Suite::Iso | Suite::Lemma35 | Suite::Lemma37 | Suite::Lemma311
    )
}

fn cmd_verify(cli: &Cli, ring: &str, suite: &str) -> Result<Output, Failure> {
    let ring = parse_ring(ring)?;
    let suites = Suite::parse_list(suite).ok_or_else(|| {
        Failure::new(exit::INVALID_INPUT, format!("unknown suite {suite:?}"))
    })?;
    let atlas = if suites.iter().any(|&s| needs_atlas(s)) {
        Some(AtlasMemo::global().get_or_build(&ring, cli.cap)?)
    } else {
        None
    };
    let mut verifier = Verifier::new(&ring, cli.cap, cli.samples);
    if let Some(a) = &atlas {
        verifier = verifier.with_atlas(a);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut reports = Vec::with_capacity(suites.len());
    for s in suites {
        reports.push(verifier.run(s, &mut rng)?);
    }
    let json = VerifyJson::new(&ring, &reports);
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&json),
        Format::Text => json.text().into_bytes(),
        Format::Csv => json.csv().context("writing csv")?.into_bytes(),
    };
    let code = if json.passed { exit::OK } else { exit::CHECK_FAILED };
    Ok(Output { bytes, code })
}

fn cmd_table(cli: &Cli, rings: &[String], s: &str, method: Method) -> Result<Output, Failure> {
    let values = parse_s_range(s)?;
    let name = method_name(method);
    let mut rows = Vec::new();
    let mut mismatch = false;
    for spec in rings {
        let ring = match parse_ring(spec) {
            Ok(r) => r,
            Err(f) => {
                rows.extend(
                    values
                        .iter()
                        .map(|&s| TableRow::failed(spec, None, s, name, f.message.clone())),
                );
                continue;
            }
        };
        for &s in &values {
            match census_report(cli, &ring, s, method) {
                Ok(rep) => {
                    mismatch |= rep.matches() == Some(false);
                    rows.push(TableRow::ok(&rep));
                }
                Err(f) => rows.push(TableRow::failed(spec, Some(&ring), s, name, f.message)),
            }
        }
    }
    let bytes = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => table_csv(&rows).context("writing csv")?.into_bytes(),
        Format::Json => json_line(&rows),
        Format::Text => table_text(&rows).into_bytes(),
    };
    let code = if mismatch { exit::CHECK_FAILED } else { exit::OK };
    Ok(Output { bytes, code })
}

fn cmd_info(cli: &Cli, ring: &str) -> Result<Output, Failure> {
    let ring = parse_ring(ring)?;
    let info = RingInfoJson::new(&ring);
    Ok(Output::ok(match cli.format.unwrap_or(Format::Json) {
        Format::Text => info.text().into_bytes(),
        _ => json_line(&info),
    }))
}

fn cmd_export_union(cli: &Cli, ring: &str, bitset: &PathBuf) -> Result<Output, Failure> {
    let ring = parse_ring(ring)?;
    let atlas = AtlasMemo::global().get_or_build(&ring, cli.cap)?;
    let spec = ring.spec().to_string();
    let file = File::create(bitset).with_context(|| format!("creating {}", bitset.display()))?;
    let mut w = BufWriter::new(file);
    write_bitset(&mut w, &spec, atlas.union()).context("writing bitset")?;
    w.flush().context("writing bitset")?;
    let summary = AtlasJson {
        ring: spec,
        union_size: atlas.size(),
        orbit_count: atlas.orbit_count(),
    };
    Ok(Output::ok(match cli.format.unwrap_or(Format::Json) {
        Format::Text => format!(
            "{}: union of {} elements in {} orbits\n",
            summary.ring, summary.union_size, summary.orbit_count
        )
        .into_bytes(),
        _ => json_line(&summary),
    }))
}

fn cmd_enumerate(cli: &Cli, ring: &str, set: SetKind, s: Option<u32>, encoding: Encoding) -> Result<Output, Failure> {
    let ring = parse_ring(ring)?;
    let indices: Vec<u64> = match set {
        SetKind::Nilpotents => ring
            .enumerate_nilpotents(cli.cap)?
            .iter()
            .map(|m| ring.pack(m))
            .collect(),
        SetKind::Invertibles => ring
            .enumerate_invertibles(cli.cap)?
            .iter()
            .map(|m| ring.pack(m))
            .collect(),
        SetKind::Union => AtlasMemo::global()
            .get_or_build(&ring, cli.cap)?
            .union()
            .iter()
            .collect(),
        SetKind::Products => {
            let s = s.ok_or_else(|| Failure::new(exit::INVALID_INPUT, "--set products needs --s"))?;
            census_set_product_threaded(&ring, s, cli.cap, cli.threads)?
                .iter()
                .collect()
        }
    };
    let mut bytes = Vec::new();
    match encoding {
        Encoding::Text => write_packed_text(&mut bytes, indices),
        Encoding::Binary => write_packed_binary(&mut bytes, indices),
    }
    .context("encoding indices")?;
    Ok(Output::ok(bytes))
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    if cli.threads == 0 {
        return Err(Failure::new(exit::INVALID_INPUT, "--threads must be at least 1"));
    }
    match &cli.command {
        Command::Census { ring, s, method } => cmd_census(cli, ring, *s, *method),
        Command::Decompose {
            ring,
            matrix,
            s,
            pair_search,
        } => cmd_decompose(cli, ring, matrix, *s, *pair_search),
        Command::Verify { ring, suite } => cmd_verify(cli, ring, suite),
        Command::Table { rings, s, method } => cmd_table(cli, rings, s, *method),
        Command::Info { ring } => cmd_info(cli, ring),
        Command::ExportUnion { ring, bitset } => cmd_export_union(cli, ring, bitset),
        Command::Enumerate {
            ring,
            set,
            s,
            encoding,
        } => cmd_enumerate(cli, ring, *set, *s, *encoding),
    }
}

fn emit(cli: &Cli, bytes: &[u8], stdout: &mut dyn Write) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => stdout.write_all(bytes).context("writing stdout"),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INVALID_INPUT } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (bytes, code) = match dispatch(&cli) {
        Ok(out) => (Some(out.bytes), out.code),
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            (f.payload, f.code)
        }
    };
    if let Some(bytes) = bytes {
        if let Err(e) = emit(&cli, &bytes, stdout) {
            let _ = writeln!(stderr, "error: {e:#}");
            return exit::INVALID_INPUT;
        }
    }
    code
}
