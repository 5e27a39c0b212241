//! The `carc` command line.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::cliques::{clique_matrix, clique_segments, ones_property, Axis, Mode};
use crate::generators::{named_graph, named_model, random_model, Constraint, Family};
use crate::graph::Graph;
use crate::io::{parse_graph, parse_model, write_graph, write_model};
use crate::model::{intersection_graph, CircularArcModel};
use crate::nhca::{authenticate_nhca, recognize_nhca, Authentication};
use crate::oracle::{classify, enumerate_models, ModelFilter, UnitWitness};
use crate::orientation::{orient_from_model, verify_enumeration, Enumeration, EnumerationKind, Flavor};
use crate::phca::{phca_from_nhca, phca_from_pca};
use crate::uhca::{uhca_from_phca, uhca_from_uca, UhcaOutcome};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Default seed for `generate random` when `CARC_SEED` is unset.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "carc", version, about = "Circular-arc model recognition with certificates")]
pub struct Cli {
    /// Dump each pipeline stage to stderr.
    #[arg(long, global = true)]
    pub trace: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a named family or a random model.
    Generate(GenerateArgs),
    /// Report the classes a model belongs to.
    Check(Input),
    /// Recognize a class, printing a model or a certificate.
    Recognize(RecognizeArgs),
    /// Clique matrix and its circular-ones properties.
    Cliques {
        /// A `.cam` model or a `.g` graph.
        file: PathBuf,
    },
    /// Orientation and enumeration induced by a model.
    Orient {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::OutRound)]
        flavor: FlavorArg,
    },
    /// List every model of a small graph passing a class filter.
    Enumerate {
        /// A `.g` graph.
        file: PathBuf,
        #[arg(long, default_value = "any")]
        filter: ModelFilter,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// A `.cam` model.
    pub file: Option<PathBuf>,
    /// Process every `.cam` file in a directory.
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Input {
    #[command(flatten)]
    pub source: Source,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// ci, hole, path, wheel, rising-sun, sun3, umbrella, tent, k13, complete or random.
    pub family: String,
    pub params: Vec<usize>,
    #[arg(long = "as", value_enum, default_value_t = OutputAs::Model)]
    pub output: OutputAs,
    /// Random models only: make them proper, or with arcs shorter than half the circle.
    #[arg(long, value_enum, default_value_t = RandomKind::Any)]
    pub random: RandomKind,
    /// Write to a file instead of stdout.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RecognizeArgs {
    #[arg(long, value_enum)]
    pub class: Class,
    /// PHCA route; defaults to `nhca` for NHCA inputs and `pca` otherwise.
    #[arg(long, value_enum)]
    pub from: Option<Route>,
    /// Write a positive model to this file.
    #[arg(long)]
    pub emit_model: Option<PathBuf>,
    /// Equal-length witness JSON; switches UHCA recognition to the UCA route.
    #[arg(long)]
    pub unit_witness: Option<PathBuf>,
    #[command(flatten)]
    pub source: Source,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputAs {
    Model,
    Graph,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    Any,
    Proper,
    Short,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Nhca,
    Phca,
    Uhca,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Nhca,
    Pca,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlavorArg {
    OutRound,
    Round,
}

/// Text to print and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub status: i32,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, status: EXIT_POSITIVE }
    }

    fn verdict(text: String, positive: bool) -> Self {
        Report { text, status: if positive { EXIT_POSITIVE } else { EXIT_NEGATIVE } }
    }
}

/// A failure that maps to the usage exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<Report, UsageError>;

struct Tracer {
    on: bool,
    lines: String,
}

impl Tracer {
    fn stage(&mut self, name: &str, value: impl std::fmt::Display) {
        if self.on {
            let _ = writeln!(self.lines, "trace {name}={value}");
        }
    }
}

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<CircularArcModel, UsageError> {
    parse_model(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, UsageError> {
    parse_graph(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn family(name: &str, params: &[usize]) -> Result<Family, UsageError> {
    let want = |k: usize| -> Result<(), UsageError> {
        if params.len() == k {
            Ok(())
        } else {
            Err(UsageError(format!("`{name}` takes {k} parameter(s), got {}", params.len())))
        }
    };
    let f = match name {
        "ci" => {
            want(2)?;
            Family::Ci { n: params[0], k: params[1] }
        }
        "sun3" | "s3" => {
            want(0)?;
            Family::Sun3
        }
        "umbrella" => {
            want(0)?;
            Family::Umbrella
        }
        "tent" => {
            want(0)?;
            Family::Tent
        }
        "k13" | "claw" => {
            want(0)?;
            Family::K13
        }
        _ => {
            want(1)?;
            let k = params[0];
            match name {
                "hole" => Family::Hole(k),
                "path" => Family::Path(k),
                "wheel" => Family::Wheel(k),
                "rising-sun" => Family::RisingSun(k),
                "complete" => Family::Complete(k),
                other => return Err(UsageError(format!("unknown family `{other}`"))),
            }
        }
    };
    f.validate()?;
    Ok(f)
}

fn seed() -> Result<u64, UsageError> {
    match std::env::var("CARC_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| UsageError(format!("CARC_SEED must be an integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn generate(args: &GenerateArgs) -> Outcome {
    let model = if args.family == "random" {
        let [n] = args.params[..] else {
            return Err(UsageError("`random` takes 1 parameter".into()));
        };
        let constraint = match args.random {
            RandomKind::Any => Constraint::Any,
            RandomKind::Proper => Constraint::Proper,
            RandomKind::Short => Constraint::Short,
        };
        Some(random_model(n, seed()?, constraint))
    } else {
        let f = family(&args.family, &args.params)?;
        match args.output {
            OutputAs::Model => Some(named_model(f)?),
            OutputAs::Graph => None,
        }
    };
    let text = match (args.output, &model) {
        (OutputAs::Model, Some(m)) => write_model(m),
        (OutputAs::Graph, Some(m)) => write_graph(&intersection_graph(m)),
        (_, None) => write_graph(&named_graph(family(&args.family, &args.params)?)?),
    };
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Ok(Report::ok(format!("written={}\n", path.display())))
        }
        None => Ok(Report::ok(text)),
    }
}

fn check(model: &CircularArcModel) -> Report {
    let r = classify(model);
    let pair = r.two_cover.map_or("none".into(), |(a, b)| format!("{a},{b}"));
    let triple = r.three_cover.map_or("none".into(), |(a, b, c)| format!("{a},{b},{c}"));
    Report::ok(format!(
        "n={}\nproper={}\nnormal={}\nhelly={}\ninterval_point={}\nnhca={}\nphca={}\ntwo_cover={pair}\nthree_cover={triple}\n",
        model.n(),
        r.proper,
        r.normal,
        r.helly,
        r.interval_point,
        r.nhca(),
        r.phca()
    ))
}

fn phca(model: &CircularArcModel, route: Option<Route>, trace: &mut Tracer) -> Result<Certificate, UsageError> {
    let route = route.unwrap_or(if authenticate_nhca(model) == Authentication::Ok { Route::Nhca } else { Route::Pca });
    trace.stage("route", format!("{route:?}").to_lowercase());
    Ok(match route {
        Route::Nhca => phca_from_nhca(model)?,
        Route::Pca => phca_from_pca(model)?,
    })
}

fn certificate_report(cert: &Certificate, args: &RecognizeArgs) -> Outcome {
    if let (Some(path), Some(m)) = (&args.emit_model, cert.model()) {
        fs::write(path, write_model(m)).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    }
    Ok(Report::verdict(format!("{cert}\n"), cert.is_positive()))
}

fn recognize(model: &CircularArcModel, args: &RecognizeArgs, trace: &mut Tracer) -> Outcome {
    trace.stage("input", model);
    match args.class {
        Class::Nhca => certificate_report(&recognize_nhca(model), args),
        Class::Phca => certificate_report(&phca(model, args.from, trace)?, args),
        Class::Uhca => {
            let outcome = match &args.unit_witness {
                Some(path) => {
                    let w: UnitWitness = serde_json::from_str(&read(path)?)?;
                    uhca_from_uca(model, &w)?
                }
                None => {
                    let mut current = model.clone();
                    if !classify(model).phca() {
                        match phca(model, args.from, trace)? {
                            Certificate::Positive(m) => current = m,
                            cert => return certificate_report(&cert, args),
                        }
                    }
                    trace.stage("phca", &current);
                    uhca_from_phca(&current)?
                }
            };
            match outcome {
                UhcaOutcome::Positive { model, witness } => {
                    let cert = Certificate::Positive(model);
                    let mut report = certificate_report(&cert, args)?;
                    report.text.push_str(&format!("witness={witness}\n"));
                    Ok(report)
                }
                UhcaOutcome::Negative(cert) => certificate_report(&cert, args),
            }
        }
    }
}

fn bits(matrix_rows: &[Vec<usize>], columns: usize) -> String {
    matrix_rows
        .iter()
        .map(|r| (0..columns).map(|c| if r.contains(&c) { '1' } else { '0' }).collect::<String>())
        .collect::<Vec<_>>()
        .join(",")
}

fn cliques(path: &Path) -> Outcome {
    let is_graph = path.extension().is_some_and(|e| e == "g");
    let g = if is_graph { load_graph(path)? } else { intersection_graph(&load_model(path)?) };
    let mut text = String::new();
    if !is_graph {
        if let Ok(segments) = clique_segments(&load_model(path)?) {
            for (seg, arcs) in segments {
                let ids: Vec<String> = arcs.iter().map(usize::to_string).collect();
                let _ = writeln!(text, "segment={seg} arcs={}", ids.join(","));
            }
        }
    }
    let q = clique_matrix(&g);
    let rows = ones_property(&q, Axis::Rows, Mode::Circular);
    let cols = ones_property(&q, Axis::Columns, Mode::Circular);
    let _ = writeln!(text, "rows={}\ncolumns={}\nmatrix={}", q.row_count(), q.column_count(), bits(q.rows(), q.column_count()));
    let order = |o: &Option<Vec<usize>>| {
        o.as_ref().map_or("none".to_string(), |v| v.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    };
    let _ = writeln!(text, "circular_rows={}\ncircular_columns={}", order(&rows), order(&cols));
    let phca = rows.is_some() && cols.is_some();
    let _ = writeln!(text, "phca={phca}");
    Ok(Report::ok(text))
}

fn orient(path: &Path, flavor: FlavorArg) -> Outcome {
    let model = load_model(path)?;
    let flavor = match flavor {
        FlavorArg::OutRound => Flavor::OutRound,
        FlavorArg::Round => Flavor::Round,
    };
    let (d, e) = match orient_from_model(&model, flavor) {
        Ok(x) => x,
        Err(err) => return Ok(Report::verdict(format!("verdict=negative\nerror={err}\n"), false)),
    };
    let order: Vec<String> = e.order.iter().map(usize::to_string).collect();
    let mut text = format!("order={}\narcs={d}\nkind={}\n", order.join(","), e.kind);
    let mut all = true;
    for kind in [
        EnumerationKind::OutStraight,
        EnumerationKind::OutRound,
        EnumerationKind::Straight,
        EnumerationKind::Round,
        EnumerationKind::LocallyOutStraight,
        EnumerationKind::LocallyStraight,
    ] {
        let ok = verify_enumeration(&d, &Enumeration { order: e.order.clone(), kind });
        if kind == e.kind {
            all = ok;
        }
        let _ = writeln!(text, "{}={ok}", kind.to_string().replace('-', "_"));
    }
    Ok(Report::verdict(text, all))
}

fn enumerate(path: &Path, filter: ModelFilter) -> Outcome {
    let g = load_graph(path)?;
    let models = enumerate_models(&g, filter)?;
    let mut text = format!("count={}\n", models.len());
    for m in &models {
        let _ = writeln!(text, "model={m}");
    }
    Ok(Report::ok(text))
}

/// Runs `per_file` on the single input or on every `.cam` file of the batch
/// directory, in name order.
fn over_source(source: &Source, per_file: impl Fn(&Path) -> Outcome + Sync) -> Outcome {
    if let Some(file) = &source.file {
        return per_file(file);
    }
    let dir = source.batch.as_ref().expect("clap requires one source");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| UsageError(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "cam"))
        .collect();
    files.sort();
    let reports: Vec<(PathBuf, Outcome)> = files.into_par_iter().map(|f| (f.clone(), per_file(&f))).collect();
    let mut text = String::new();
    let mut status = EXIT_POSITIVE;
    for (file, outcome) in reports {
        let _ = writeln!(text, "file={}", file.display());
        match outcome {
            Ok(r) => {
                text.push_str(&r.text);
                status = status.max(r.status);
            }
            Err(UsageError(msg)) => {
                let _ = writeln!(text, "error={msg}");
                status = EXIT_USAGE;
            }
        }
    }
    Ok(Report { text, status })
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Generate(args) => generate(args),
        Command::Check(input) => over_source(&input.source, |p| Ok(check(&load_model(p)?))),
        Command::Recognize(args) => over_source(&args.source, |p| {
            let mut tracer = Tracer { on: cli.trace, lines: String::new() };
            let mut report = recognize(&load_model(p)?, args, &mut tracer)?;
            report.text.insert_str(0, &tracer.lines);
            Ok(report)
        }),
        Command::Cliques { file } => cliques(file),
        Command::Orient { file, flavor } => orient(file, *flavor),
        Command::Enumerate { file, filter } => enumerate(file, *filter),
    }
}

/// Parses `args`, runs the command and writes its report; returns the exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_POSITIVE };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return status;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            // Trace lines go to stderr, the report to stdout.
            let (trace, body): (Vec<&str>, Vec<&str>) = report.text.lines().partition(|l| l.starts_with("trace "));
            trace.iter().for_each(|l| {
                let _ = writeln!(err, "{l}");
            });
            body.iter().for_each(|l| {
                let _ = writeln!(out, "{l}");
            });
            report.status
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
