//! `quatseq` command-line interface.
//!
//! Exit codes: 0 success, 1 a verification found an imperfect sequence or a
//! failing catalog entry, 2 usage error, 3 I/O or parse error, 4 naive budget
//! exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use quatseq_core::catalog::{self, parse_entry, serialize_array, CatalogEntry, Payload};
use quatseq_core::correlation::{float_autocorr, float_is_perfect, DEFAULT_NAIVE_BUDGET};
use quatseq_core::quat::FLOAT_TOLERANCE;
use quatseq_core::search::{
    aop::{default_sizes, parse_size},
    AopSearchOptions, AopVariant, ExhaustiveOptions, Hit, RunConfig, SearchReport, SymmetrySet,
};
use quatseq_core::{
    construct_2d, construct_4d_iii, construct_4d_iv, construct_aop_array, construct_seq_2n, coprime_product,
    fft_autocorr_all, full_spectrum, is_perfect, template_sequence, ConstructionName, CorrelationSpectrum,
    FloatQuatSequence, Periodic, ProductOrder, QuatSequence, Side, SpectrumOptions, TemplateSpec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_PERFECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] quatseq_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use quatseq_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Read { .. } | CliError::Io(_) | CliError::Json(_) => EXIT_IO,
            CliError::Core(e) => match e {
                E::BudgetExceeded { .. } => EXIT_BUDGET,
                E::InvalidParameter(_) | E::NotCoprime(..) | E::ShiftArity { .. } => EXIT_USAGE,
                _ => EXIT_IO,
            },
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "quatseq", version, about = "Perfect sequences and arrays over the unit quaternions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a sequence or array from a known construction.
    Generate {
        #[command(flatten)]
        build: BuildArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check perfection; exits 1 if any requested side is not perfect.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        corr: CorrArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print the autocorrelation at every shift.
    Spectrum {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        corr: CorrArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Search for perfect sequences; hits are printed as they are found.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Inspect the bundled catalog or a directory of entries.
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// seq2n, aop8x8, arr2d, arr4d-iii, arr4d-iv, template or product.
    #[arg(long, short = 'c', value_parser = parse_construction)]
    pub construction: Option<ConstructionName>,
    /// Size parameter for seq2n, arr2d, arr4d-iii and arr4d-iv.
    #[arg(long, short = 'n')]
    pub n: Option<u32>,
    /// Template sign vector, e.g. `-1,-1,-1,+1,+1,-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// First factor of a product (token list).
    #[arg(long, allow_hyphen_values = true)]
    pub first: Option<String>,
    /// Second factor of a product (token list).
    #[arg(long, allow_hyphen_values = true)]
    pub second: Option<String>,
    /// Which factor stands on the left in each product term.
    #[arg(long, value_enum, default_value_t = OrderArg::FirstLeft)]
    pub order: OrderArg,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Input file, or `-` for stdin: a token list, an array with a `dims:`
    /// header, or a catalog entry.
    #[arg(conflicts_with = "construction")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub build: BuildArgs,
}

#[derive(Debug, Args)]
pub struct CorrArgs {
    #[arg(long, value_enum, default_value_t = SideArg::Both)]
    pub side: SideArg,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Largest element count for the naive path.
    #[arg(long, default_value_t = DEFAULT_NAIVE_BUDGET)]
    pub budget: usize,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Stop after this many hits.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Save progress to this file after every batch of ranges.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from a checkpoint written by an identical search.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Ranges per batch between checkpoints.
    #[arg(long)]
    pub batch: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Branch-and-bound over all sequences in ±i, ±j, ±k.
    Exhaustive {
        #[arg(long, short = 'l')]
        length: usize,
        /// Refuse lengths above this bound.
        #[arg(long, default_value_t = quatseq_core::search::exhaustive::DEFAULT_MAX_LEN)]
        max_len: usize,
        /// Report every hit instead of one per symmetry orbit.
        #[arg(long)]
        no_symmetry: bool,
        /// Disable partial-sum pruning (reference enumeration).
        #[arg(long)]
        no_prune: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Enumerate sign vectors of the `[-i, s, k, reverse(s)]` template.
    Template {
        #[arg(long, short = 'l')]
        length: usize,
        /// Split the space into this many ranges (a power of two).
        #[arg(long)]
        ranges: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Random polynomial index arrays checked for AOP and perfection.
    Aop {
        /// Comma-separated `ROWSxCOLS` list; defaults to every size with
        /// 2 <= rows, cols <= 32 and more than 16 cells.
        #[arg(long)]
        sizes: Option<String>,
        /// Specs drawn per size.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 13)]
        coeff_bound: u32,
        #[arg(long, default_value_t = 12)]
        max_denominator: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::Plain)]
        variant: VariantArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCommand {
    /// List entry ids.
    List {
        /// Read `.qseq` / `.qarr` files from this directory instead.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    /// Recompute every stated property; exits 1 on any failure.
    Verify {
        #[arg(long)]
        dir: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Print one entry in canonical form.
    Show {
        id: String,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Left => vec![Side::Left],
            SideArg::Right => vec![Side::Right],
            SideArg::Both => Side::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Naive within the budget, FFT beyond it.
    Auto,
    Naive,
    Fft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    FirstLeft,
    SecondLeft,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Plain,
    Cyclic,
}

fn parse_construction(s: &str) -> Result<ConstructionName, String> {
    s.parse().map_err(|e: quatseq_core::Error| e.to_string())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut io::stdin().lock(), &mut lock) {
        Ok(code) => code,
        // reader went away (`| head`); nothing left to report
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Generate { build, out } => {
            let payload = build_payload(&build)?
                .ok_or_else(|| CliError::Usage("generate needs --construction".into()))?;
            with_output(&out, stdout, |w| write_payload(w, &build, &payload, out.format))?;
            Ok(EXIT_OK)
        }
        Command::Verify { source, corr, out } => {
            let payload = load_source(&source, stdin)?;
            with_output(&out, stdout, |w| verify(w, &payload, &corr, out.format))
        }
        Command::Spectrum { source, corr, out } => {
            let payload = load_source(&source, stdin)?;
            with_output(&out, stdout, |w| spectrum(w, &payload, &corr, out.format))?;
            Ok(EXIT_OK)
        }
        Command::Search(cmd) => search(cmd, stdout),
        Command::Catalog(cmd) => catalog_cmd(cmd, stdout),
    }
}

fn with_output<T>(
    out: &OutputArgs,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> CliResult<T>,
) -> CliResult<T> {
    match &out.output {
        Some(path) => {
            let mut w = BufWriter::new(fs::File::create(path)?);
            let r = body(&mut w)?;
            w.flush()?;
            Ok(r)
        }
        None => {
            let r = body(stdout)?;
            stdout.flush()?;
            Ok(r)
        }
    }
}

fn parse_token_list(flag: &str, text: Option<&str>) -> CliResult<QuatSequence> {
    let text = text.ok_or_else(|| CliError::Usage(format!("product needs --{flag}")))?;
    Ok(text.parse()?)
}

fn build_payload(b: &BuildArgs) -> CliResult<Option<Payload>> {
    let Some(name) = b.construction else {
        return Ok(None);
    };
    let need_n = || b.n.ok_or_else(|| CliError::Usage(format!("{name} needs --n")));
    let payload = match name {
        ConstructionName::Seq2n => Payload::Sequence(construct_seq_2n(need_n()?)?),
        ConstructionName::Aop8x8 => Payload::Array(construct_aop_array()),
        ConstructionName::Arr2d => Payload::Array(construct_2d(need_n()?)?),
        ConstructionName::Arr4dIii => Payload::Array(construct_4d_iii(need_n()?)?),
        ConstructionName::Arr4dIv => Payload::Array(construct_4d_iv(need_n()?)?),
        ConstructionName::Template => {
            let alpha = b
                .alpha
                .as_deref()
                .ok_or_else(|| CliError::Usage("template needs --alpha".into()))?;
            Payload::Sequence(template_sequence(&alpha.parse::<TemplateSpec>()?))
        }
        ConstructionName::Product => {
            let s1 = parse_token_list("first", b.first.as_deref())?;
            let s2 = parse_token_list("second", b.second.as_deref())?;
            let order = match b.order {
                OrderArg::FirstLeft => ProductOrder::FirstLeft,
                OrderArg::SecondLeft => ProductOrder::SecondLeft,
            };
            Payload::Sequence(coprime_product(&s1, &s2, order)?)
        }
    };
    Ok(Some(payload))
}

/// Reads a token list, `dims:`-headed array or full catalog entry.
pub fn parse_input(text: &str) -> CliResult<Payload> {
    let has_id = text.lines().any(|l| l.trim_start().starts_with("id:"));
    let entry = if has_id {
        parse_entry(text)?
    } else {
        parse_entry(&format!("id: input\n{text}"))?
    };
    Ok(entry.payload)
}

fn load_source(source: &SourceArgs, stdin: &mut dyn Read) -> CliResult<Payload> {
    if let Some(p) = build_payload(&source.build)? {
        return Ok(p);
    }
    let path = source
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("give an INPUT file, `-` for stdin, or --construction".into()))?;
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.clone(),
            source,
        })?
    };
    parse_input(&text)
}

fn write_payload(w: &mut dyn Write, b: &BuildArgs, payload: &Payload, format: Format) -> CliResult<()> {
    match format {
        Format::Text => match payload {
            Payload::Sequence(s) => writeln!(w, "{s}")?,
            Payload::Array(a) => write!(w, "{}", serialize_array(a))?,
            Payload::Float(_) => unreachable!("constructions are unit-valued"),
        },
        Format::Json => {
            let elems: Vec<&str> = match payload {
                Payload::Sequence(s) => s.as_slice().iter().map(|u| u.token()).collect(),
                Payload::Array(a) => a.elems().iter().map(|u| u.token()).collect(),
                Payload::Float(_) => unreachable!("constructions are unit-valued"),
            };
            let v = json!({
                "construction": b.construction.map(|c| c.name()),
                "n": b.n,
                "dims": payload.dims(),
                "elements": elems,
            });
            writeln!(w, "{v}")?;
        }
    }
    Ok(())
}

fn compute_spectrum<P: Periodic + Sync + ?Sized>(x: &P, side: Side, corr: &CorrArgs) -> CliResult<CorrelationSpectrum> {
    let opts = SpectrumOptions {
        naive_budget: corr.budget,
    };
    let sp = match corr.method {
        Method::Naive => full_spectrum(x, side, &opts)?,
        Method::Fft => fft_autocorr_all(x, side)?,
        Method::Auto if x.len() <= corr.budget => full_spectrum(x, side, &opts)?,
        Method::Auto => fft_autocorr_all(x, side)?,
    };
    Ok(sp)
}

fn perfect_on<P: Periodic + Sync + ?Sized>(x: &P, side: Side, corr: &CorrArgs) -> CliResult<bool> {
    match corr.method {
        Method::Naive if x.len() > corr.budget => Err(quatseq_core::Error::BudgetExceeded {
            elements: x.len(),
            budget: corr.budget,
        }
        .into()),
        Method::Naive => Ok(is_perfect(x, side)),
        Method::Auto if x.len() <= corr.budget => Ok(is_perfect(x, side)),
        _ => Ok(fft_autocorr_all(x, side)?.perfect),
    }
}

fn verify(w: &mut dyn Write, payload: &Payload, corr: &CorrArgs, format: Format) -> CliResult<i32> {
    let sides = corr.side.sides();
    let mut results = Vec::new();
    for &side in &sides {
        let ok = match payload {
            Payload::Sequence(s) => perfect_on(s, side, corr)?,
            Payload::Array(a) => perfect_on(a, side, corr)?,
            Payload::Float(f) => float_is_perfect(f, side, FLOAT_TOLERANCE),
        };
        results.push((side, ok));
    }
    let all = results.iter().all(|(_, ok)| *ok);
    match format {
        Format::Text => {
            for (side, ok) in &results {
                writeln!(w, "{side}: {}", if *ok { "perfect" } else { "not perfect" })?;
            }
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("dims".into(), json!(payload.dims()));
            for (side, ok) in &results {
                obj.insert(side.name().into(), json!(ok));
            }
            obj.insert("perfect".into(), json!(all));
            writeln!(w, "{}", serde_json::Value::Object(obj))?;
        }
    }
    Ok(if all { EXIT_OK } else { EXIT_NOT_PERFECT })
}

fn spectrum(w: &mut dyn Write, payload: &Payload, corr: &CorrArgs, format: Format) -> CliResult<()> {
    for side in corr.side.sides() {
        let sp = match payload {
            Payload::Sequence(s) => compute_spectrum(s, side, corr)?,
            Payload::Array(a) => compute_spectrum(a, side, corr)?,
            Payload::Float(f) => {
                write_float_spectrum(w, f, side, format)?;
                continue;
            }
        };
        match format {
            Format::Text => sp.write_text(w)?,
            Format::Json => sp.write_json_lines(w)?,
        }
    }
    Ok(())
}

fn write_float_spectrum(w: &mut dyn Write, f: &FloatQuatSequence, side: Side, format: Format) -> CliResult<()> {
    let perfect = float_is_perfect(f, side, FLOAT_TOLERANCE);
    match format {
        Format::Text => writeln!(w, "# dims: {}; side: {side}; perfect: {perfect}", f.len())?,
        Format::Json => writeln!(w, "{}", json!({"dims": [f.len()], "side": side, "perfect": perfect}))?,
    }
    for t in 0..f.len() {
        let v = float_autocorr(f, t as i64, side);
        match format {
            Format::Text => writeln!(w, "{t} : {v}")?,
            Format::Json => writeln!(w, "{}", json!({"shift": [t], "components": v.components()}))?,
        }
    }
    Ok(())
}

fn run_config(run: &RunArgs, ranges: Option<usize>) -> RunConfig {
    RunConfig {
        jobs: run.jobs,
        ranges,
        batch: run.batch,
        checkpoint: run.checkpoint.clone(),
        resume: run.resume.clone(),
        limit: run.limit,
    }
}

fn search(cmd: SearchCommand, stdout: &mut dyn Write) -> CliResult<i32> {
    let run_args = match &cmd {
        SearchCommand::Exhaustive { run, .. } | SearchCommand::Template { run, .. } | SearchCommand::Aop { run, .. } => run,
    };
    let format = run_args.out.format;
    with_output(&run_args.out, stdout, |w| {
        let mut write_err: Option<io::Error> = None;
        let mut on_hit = |hit: &Hit| {
            if write_err.is_some() {
                return;
            }
            let r = match format {
                Format::Text => writeln!(w, "{hit}"),
                Format::Json => serde_json::to_string(hit)
                    .map_err(io::Error::other)
                    .and_then(|s| writeln!(w, "{s}")),
            }
            .and_then(|_| w.flush());
            if let Err(e) = r {
                write_err = Some(e);
            }
        };
        let report = match &cmd {
            SearchCommand::Exhaustive {
                length,
                max_len,
                no_symmetry,
                no_prune,
                run,
            } => {
                let opts = ExhaustiveOptions {
                    max_len: *max_len,
                    symmetries: if *no_symmetry { SymmetrySet::none() } else { SymmetrySet::all() },
                    prune: !no_prune,
                };
                quatseq_core::search::exhaustive_search_with(*length, &opts, &run_config(run, None), &mut on_hit)?
            }
            SearchCommand::Template { length, ranges, run } => {
                quatseq_core::search::template_search_with(*length, &run_config(run, *ranges), &mut on_hit)?
            }
            SearchCommand::Aop {
                sizes,
                samples,
                coeff_bound,
                max_denominator,
                variant,
                seed,
                run,
            } => {
                let sizes = match sizes.as_deref() {
                    None | Some("default") => default_sizes(),
                    Some(list) => list.split(',').map(parse_size).collect::<Result<Vec<_>, _>>()?,
                };
                let opts = AopSearchOptions {
                    sizes,
                    samples: *samples,
                    coeff_bound: *coeff_bound,
                    max_denominator: *max_denominator,
                    seed: *seed,
                    variant: match variant {
                        VariantArg::Plain => AopVariant::Plain,
                        VariantArg::Cyclic => AopVariant::Cyclic,
                    },
                };
                quatseq_core::search::aop_random_search(&opts, &run_config(run, None), &mut on_hit)?
            }
        };
        if let Some(e) = write_err {
            return Err(e.into());
        }
        write_summary(w, &report, format)?;
        Ok(EXIT_OK)
    })
}

fn write_summary(w: &mut dyn Write, r: &SearchReport, format: Format) -> CliResult<()> {
    match format {
        Format::Text => {
            let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(
                w,
                "# {} search ({}){}: {} examined, {} hits, ranges {}/{}, verified {}, {:.3} s",
                r.kind,
                params.join(" "),
                r.seed.map_or(String::new(), |s| format!(" seed {s}")),
                r.examined,
                r.hits.len(),
                r.ranges_done,
                r.ranges_total,
                r.verified,
                r.elapsed.as_secs_f64()
            )?;
        }
        Format::Json => {
            let params: serde_json::Map<String, serde_json::Value> =
                r.parameters.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            let v = json!({
                "summary": {
                    "kind": r.kind,
                    "parameters": params,
                    "seed": r.seed,
                    "examined": r.examined,
                    "hits": r.hits.len(),
                    "ranges_done": r.ranges_done,
                    "ranges_total": r.ranges_total,
                    "verified": r.verified,
                    "elapsed_secs": r.elapsed.as_secs_f64(),
                }
            });
            writeln!(w, "{v}")?;
        }
    }
    Ok(())
}

fn load_catalog(dir: Option<&Path>) -> CliResult<Vec<CatalogEntry>> {
    Ok(match dir {
        Some(d) => catalog::load_dir(d)?,
        None => catalog::builtin_catalog()?,
    })
}

fn catalog_cmd(cmd: CatalogCommand, stdout: &mut dyn Write) -> CliResult<i32> {
    match cmd {
        CatalogCommand::List { dir } => {
            for e in load_catalog(dir.as_deref())? {
                let dims: Vec<String> = e.payload.dims().iter().map(usize::to_string).collect();
                writeln!(stdout, "{}\t{}\t{}\t{}", e.id, e.payload.kind(), dims.join("x"), e.source)?;
            }
            Ok(EXIT_OK)
        }
        CatalogCommand::Verify { dir, out } => {
            let entries = load_catalog(dir.as_deref())?;
            let report = catalog::verify_catalog(&entries);
            with_output(&out, stdout, |w| {
                match out.format {
                    Format::Text => {
                        for e in &report.entries {
                            if e.pass {
                                writeln!(w, "PASS {}", e.id)?;
                            } else {
                                let failed: Vec<String> = e
                                    .checks
                                    .iter()
                                    .filter(|c| !c.pass)
                                    .map(|c| format!("{} expected {} got {}", c.name, c.expected, c.actual))
                                    .collect();
                                writeln!(w, "FAIL {}: {}", e.id, failed.join("; "))?;
                            }
                        }
                    }
                    Format::Json => writeln!(w, "{}", serde_json::to_string(&report)?)?,
                }
                Ok(())
            })?;
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_NOT_PERFECT })
        }
        CatalogCommand::Show { id, dir } => {
            let entries = load_catalog(dir.as_deref())?;
            let entry = entries
                .iter()
                .find(|e| e.id == id)
                .ok_or_else(|| CliError::Usage(format!("no catalog entry `{id}`")))?;
            write!(stdout, "{}", entry.to_text())?;
            Ok(EXIT_OK)
        }
    }
}
