//! The `msq` command line.

pub mod reference;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use msq_core::enumerate::{Budget, Checkpoint};
use msq_core::io::{self as mio, TallyEntry};
use msq_core::parity::{reconcile, Reconciliation};
use msq_core::stats::{self, connected_regions, DataMatrix, ProjectionSet, RegionReport};
use msq_core::{
    enumerate_with, to_parity, BentRule, BlockRule, EnumerateOptions, Family, FamilySpec, FranklinRules, ParityMatrix,
    PatternTally, Square, TallyMode,
};

use render::{render_svg, RenderData, RenderKind, RenderSpec};

pub const CACHE_ENV: &str = "MSQ_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] msq_core::Error),
    #[error(transparent)]
    Render(#[from] render::RenderError),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(msq_core::Error::UnsupportedFamily { .. } | msq_core::Error::UnsupportedOrder { .. }) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "msq", version, about = "Magic square enumeration and parity-pattern analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate one square per D4 orbit of a family.
    Enumerate(EnumerateArgs),
    /// Tally parity patterns.
    Patterns(PatternArgs),
    /// Principal component projection of the parity patterns.
    Pca(ProjectArgs),
    /// Discriminant projection with the D4 pattern classes as labels.
    Lda(ProjectArgs),
    /// Draw a pattern, tiling, scatter plot, heatmap or histogram.
    Render(RenderArgs),
    /// Validate and canonicalize an external square list.
    Ingest(IngestArgs),
    /// Pattern classes, raw patterns and counts for every corpus as JSON.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Blocks {
    Aligned,
    Overlapping,
    Wrapped,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Bent {
    Wrapped,
    Unwrapped,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Raw,
    Class,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum)]
    franklin_diagonals: Option<OnOff>,
    #[arg(long, value_enum)]
    franklin_blocks: Option<Blocks>,
    #[arg(long, value_enum)]
    franklin_bent: Option<Bent>,
    /// Worker threads for enumeration (0 = one per core).
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

impl FamilyArgs {
    fn rules(&self) -> FranklinRules {
        let mut rules = FranklinRules::default();
        if let Some(d) = self.franklin_diagonals {
            rules.main_diagonals = matches!(d, OnOff::On);
        }
        if let Some(b) = self.franklin_blocks {
            rules.blocks = match b {
                Blocks::Aligned => BlockRule::Aligned,
                Blocks::Overlapping => BlockRule::Overlapping,
                Blocks::Wrapped => BlockRule::Wrapped,
            };
        }
        if let Some(b) = self.franklin_bent {
            rules.bent = match b {
                Bent::Wrapped => BentRule::Wrapped,
                Bent::Unwrapped => BentRule::Unwrapped,
            };
        }
        rules
    }

    fn spec(&self) -> CliResult<Option<FamilySpec>> {
        match (self.family, self.order) {
            (Some(f), Some(n)) => Ok(Some(FamilySpec::with_rules(f, n, self.rules())?)),
            (None, None) => Ok(None),
            _ => Err(CliError::Usage("--family and --order go together".into())),
        }
    }

    fn options(&self) -> EnumerateOptions {
        EnumerateOptions { workers: self.workers, ..EnumerateOptions::default() }
    }
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Square file to write; defaults to the cache directory, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Stop after this many seconds and save a checkpoint.
    #[arg(long)]
    max_seconds: Option<u64>,
    /// Where to save the checkpoint of an interrupted run.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Continue from a saved checkpoint.
    #[arg(long)]
    resume: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Square files (all of one order).
    #[arg(long = "in")]
    inputs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct PatternArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long, value_enum, default_value = "class")]
    mode: Mode,
    /// `.csv` for pattern,count rows; anything else gets JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ProjectArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Projection CSV (pattern,label,axis1,axis2); stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scatter plot of the projection.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Model dump as JSON.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    components: usize,
}

#[derive(Debug, Args)]
struct RenderArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: RenderKind,
    /// Pattern string for pattern and tiling renders.
    #[arg(long)]
    pattern: Option<String>,
    /// Projection CSV for scatter, heatmap and histogram renders.
    #[arg(long = "in")]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Tiling repeats as ROWSxCOLS.
    #[arg(long, value_parser = parse_repeat)]
    repeat: Option<(usize, usize)>,
    #[arg(long, default_value_t = 10)]
    cell: u32,
    #[arg(long)]
    one_color: Option<String>,
    #[arg(long)]
    zero_color: Option<String>,
    /// Projection axis for histograms.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    axis: u8,
    #[arg(long, default_value_t = 40)]
    bins: usize,
    /// Overlay the fitted normal density on a histogram.
    #[arg(long)]
    normal: bool,
}

#[derive(Debug, Args)]
struct IngestArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long = "in", required = true)]
    inputs: Vec<PathBuf>,
    /// Square file for the distinct canonical squares.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<RenderKind, String> {
    s.parse().map_err(|e: render::RenderError| e.to_string())
}

fn parse_repeat(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected ROWSxCOLS, got {s:?}"))?;
    let r = r.parse().map_err(|_| format!("bad row count {r:?}"))?;
    let c = c.parse().map_err(|_| format!("bad column count {c:?}"))?;
    Ok((r, c))
}

/// Runs the command line and returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("msq: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> CliResult<()> {
    match command {
        Command::Enumerate(a) => enumerate(a),
        Command::Patterns(a) => patterns(a),
        Command::Pca(a) => project(a, false),
        Command::Lda(a) => project(a, true),
        Command::Render(a) => render(a),
        Command::Ingest(a) => ingest(a),
        Command::Report(a) => report(a),
    }
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, text)?;
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn enumerate(a: EnumerateArgs) -> CliResult<()> {
    let spec = a.family.spec()?.ok_or_else(|| CliError::Usage("enumerate needs --family and --order".into()))?;
    let mut opts = a.family.options();
    opts.budget = Budget { max_nodes: None, max_time: a.max_seconds.map(Duration::from_secs) };
    if let Some(path) = &a.resume {
        opts.resume = Some(mio::read_json::<Checkpoint>(path)?);
    }
    if a.out.is_none() && opts.resume.is_none() && opts.budget.max_time.is_none() {
        if let Some(dir) = cache_dir() {
            let squares = mio::load_or_enumerate(&dir, &spec, &opts)?;
            eprintln!("{}: {} squares (cache {})", spec.fingerprint(), squares.len(), dir.display());
            return Ok(());
        }
    }
    let run = match enumerate_with(&spec, &opts) {
        Ok(run) => run,
        Err(msq_core::Error::PartialResult { count, checkpoint }) => {
            let path = a
                .checkpoint
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("{}.checkpoint.json", mio::cache_stem(&spec))));
            mio::write_json(&path, &*checkpoint)?;
            return Err(CliError::Core(msq_core::Error::Integrity {
                path,
                msg: format!("stopped early after {count} squares; rerun with --resume on this checkpoint"),
            }));
        }
        Err(e) => return Err(e.into()),
    };
    match &a.out {
        Some(path) => {
            mio::write_squares(path, spec.family.name(), &run.squares)?;
            mio::write_report(with_suffix(path, ".json"), &run.report)?;
        }
        None => emit(None, &mio::format_squares(spec.family.name(), &run.squares)?)?,
    }
    eprintln!(
        "{}: {} squares in {} ms ({} tasks, {} nodes)",
        run.report.fingerprint, run.report.total_count, run.report.elapsed_ms, run.report.tasks, run.report.nodes
    );
    Ok(())
}

struct Corpus {
    family: String,
    order: usize,
    squares: Vec<Square>,
}

fn load(args: &CorpusArgs) -> CliResult<Corpus> {
    if !args.inputs.is_empty() {
        let mut corpus: Option<Corpus> = None;
        for path in &args.inputs {
            let file = mio::read_squares(path)?;
            match &mut corpus {
                None => {
                    corpus =
                        Some(Corpus { family: file.header.family, order: file.header.order, squares: file.squares })
                }
                Some(c) => {
                    if c.order != file.header.order {
                        return Err(msq_core::Error::MixedOrder { expected: c.order, found: file.header.order }.into());
                    }
                    if c.family != file.header.family {
                        c.family = "mixed".into();
                    }
                    c.squares.extend(file.squares);
                }
            }
        }
        return Ok(corpus.expect("at least one input"));
    }
    let spec = args.family.spec()?.ok_or_else(|| CliError::Usage("give --in files or --family with --order".into()))?;
    let squares = obtain(&spec, &args.family.options())?;
    Ok(Corpus { family: spec.family.name().to_string(), order: spec.order, squares })
}

fn obtain(spec: &FamilySpec, opts: &EnumerateOptions) -> CliResult<Vec<Square>> {
    Ok(match cache_dir() {
        Some(dir) => mio::load_or_enumerate(dir, spec, opts)?,
        None => enumerate_with(spec, opts)?.squares,
    })
}

fn patterns(a: PatternArgs) -> CliResult<()> {
    let corpus = load(&a.corpus)?;
    let mode = match a.mode {
        Mode::Raw => TallyMode::Raw,
        Mode::Class => TallyMode::Canonical,
    };
    let tally = msq_core::tally_patterns(corpus.squares.iter(), mode)?.with_family(corpus.family);
    let csv = a.out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "csv"));
    let text = if csv { mio::format_tally_csv(&tally) } else { mio::to_json(&mio::TallyDocument::from(&tally))? };
    emit(a.out.as_deref(), &text)?;
    eprintln!("{} patterns over {} squares", tally.len(), tally.total);
    Ok(())
}

fn project(a: ProjectArgs, lda: bool) -> CliResult<()> {
    let corpus = load(&a.corpus)?;
    let patterns: Vec<ParityMatrix> = corpus.squares.iter().map(to_parity).collect();
    let x = DataMatrix::from_patterns(&patterns)?;
    let (set, model_json) = if lda {
        let (ids, names) = x.class_ids();
        let (model, set) = stats::lda_fit(&x, &ids, a.components)?;
        eprintln!("lda: {} classes, eigenvalues {:?}, null {:?}", names.len(), model.eigenvalues, model.null);
        (set, mio::to_json(&LdaDump { classes: names, model })?)
    } else {
        let (model, set) = stats::pca_fit(&x, a.components)?;
        eprintln!("pca: top eigenvalues {:?}", &model.eigenvalues[..a.components]);
        (set, mio::to_json(&model)?)
    };
    let regions = connected_regions(&set.coordinates(), None);
    eprintln!(
        "{} rows, {} patterns at {} distinct points, {} regions at eps {:.4}",
        set.len(),
        set.distinct_patterns(),
        regions.distinct_points,
        regions.regions,
        regions.eps
    );
    if let Some(path) = &a.model {
        emit(Some(path), &model_json)?;
    }
    if let Some(path) = &a.svg {
        let svg = render_svg(&RenderSpec::new(RenderKind::Scatter), &RenderData::Projection(&set))?;
        emit(Some(path), &svg)?;
    }
    emit(a.out.as_deref(), &mio::format_projection_csv(&set))
}

#[derive(Serialize)]
struct LdaDump {
    classes: Vec<String>,
    #[serde(flatten)]
    model: stats::LdaModel,
}

fn render(a: RenderArgs) -> CliResult<()> {
    let mut spec = RenderSpec::new(a.kind);
    spec.cell = a.cell;
    if let Some(r) = a.repeat {
        spec.repeat = r;
    }
    if let Some(c) = a.one_color {
        spec.one_color = c;
    }
    if let Some(c) = a.zero_color {
        spec.zero_color = c;
    }
    let out = a.svg.or(a.out);
    let svg = match a.kind {
        RenderKind::Pattern | RenderKind::Tiling => {
            let s = a.pattern.ok_or_else(|| CliError::Usage("pattern renders need --pattern".into()))?;
            let n = (s.len() as f64).sqrt().round() as usize;
            let pm = msq_core::parse_pattern(&s, n)?;
            render_svg(&spec, &RenderData::Pattern(&pm))?
        }
        RenderKind::Scatter | RenderKind::Heatmap | RenderKind::Histogram => {
            let set = read_projections(&a.inputs)?;
            if a.kind == RenderKind::Histogram {
                let values = if a.axis == 1 { set.axis1() } else { set.axis2() };
                let h = stats::histogram(&values, a.bins)?;
                let overlay = if a.normal { Some(stats::normal_overlay(&values)?) } else { None };
                render_svg(&spec, &RenderData::Histogram(&h, overlay.as_ref()))?
            } else {
                render_svg(&spec, &RenderData::Projection(&set))?
            }
        }
    };
    emit(out.as_deref(), &svg)
}

fn read_projections(inputs: &[PathBuf]) -> CliResult<ProjectionSet> {
    if inputs.is_empty() {
        return Err(CliError::Usage("this render needs --in with a projection CSV".into()));
    }
    let mut set = ProjectionSet::default();
    for path in inputs {
        set.points.extend(mio::read_projection_csv(path)?.points);
    }
    Ok(set)
}

fn ingest(a: IngestArgs) -> CliResult<()> {
    let spec = a.family.spec()?.ok_or_else(|| CliError::Usage("ingest needs --family and --order".into()))?;
    let mut all = std::collections::BTreeSet::new();
    let mut reports = Vec::new();
    for path in &a.inputs {
        let (squares, report) = mio::ingest_external(path, &spec)?;
        all.extend(squares);
        reports.push(report);
    }
    let squares: Vec<Square> = all.into_iter().collect();
    if let Some(path) = &a.out {
        mio::write_squares(path, spec.family.name(), &squares)?;
    }
    emit(None, &mio::to_json(&reports)?)?;
    eprintln!("{} distinct canonical squares", squares.len());
    Ok(())
}

#[derive(Serialize)]
struct Report {
    canonical_form: &'static str,
    summary: Vec<CountLine>,
    corpora: Vec<CorpusReport>,
}

#[derive(Serialize)]
struct CountLine {
    family: String,
    order: usize,
    squares: usize,
    classes: usize,
    raw_patterns: usize,
}

#[derive(Serialize)]
struct CorpusReport {
    family: String,
    order: usize,
    squares: usize,
    classes: TallySummary,
    raw: TallySummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    listed_classes: Option<ListedCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    listed_raw: Option<ListedCheck>,
    pca_regions: RegionReport,
}

#[derive(Serialize)]
struct TallySummary {
    distinct: usize,
    count_multiset: Vec<u64>,
    entries: Vec<TallyEntry>,
}

#[derive(Serialize)]
struct ListedCheck {
    listed: usize,
    listed_total: u64,
    listed_count_multiset: Vec<u64>,
    count_multiset_matches: bool,
    reconciliation: Reconciliation,
}

fn summarize(t: &PatternTally) -> TallySummary {
    TallySummary { distinct: t.len(), count_multiset: t.count_multiset(), entries: mio::TallyDocument::from(t).entries }
}

fn check(tally: &PatternTally, patterns: &[&str], counts: &[u64], listed_total: u64) -> ListedCheck {
    let pairs: Vec<(&str, u64)> = if patterns.len() == counts.len() {
        patterns.iter().copied().zip(counts.iter().copied()).collect()
    } else {
        patterns.iter().map(|&p| (p, 0)).collect()
    };
    let mut listed_counts = counts.to_vec();
    listed_counts.sort_unstable_by(|a, b| b.cmp(a));
    ListedCheck {
        listed: patterns.len(),
        listed_total,
        count_multiset_matches: listed_counts == tally.count_multiset(),
        listed_count_multiset: listed_counts,
        reconciliation: reconcile(tally, &pairs),
    }
}

fn corpus_report(corpus: &Corpus) -> CliResult<CorpusReport> {
    let classes = msq_core::tally_patterns(corpus.squares.iter(), TallyMode::Canonical)?;
    let raw = msq_core::tally_patterns(corpus.squares.iter(), TallyMode::Raw)?;
    let listed_classes = reference::CLASSES
        .iter()
        .find(|l| l.family == corpus.family && l.order == corpus.order)
        .map(|l| check(&classes, l.patterns, l.counts, l.corpus));
    let listed_raw = match (corpus.family.as_str(), corpus.order) {
        ("general", 4) => Some(reference::RAW_GENERAL_4),
        ("associative", 5) => Some(reference::RAW_ASSOCIATIVE_5),
        ("franklin", 8) => Some(reference::RAW_FRANKLIN_8),
        _ => None,
    }
    .map(|listing| {
        let (p, c): (Vec<&str>, Vec<u64>) = listing.iter().copied().unzip();
        let total = c.iter().sum();
        check(&raw, &p, &c, total)
    });
    let patterns: Vec<ParityMatrix> = corpus.squares.iter().map(to_parity).collect();
    let coords = if corpus.squares.len() >= 2 {
        let x = DataMatrix::from_patterns(&patterns)?;
        stats::pca_fit(&x, 2)?.1.coordinates()
    } else {
        vec![[0.0, 0.0]; corpus.squares.len()]
    };
    let pca_regions = connected_regions(&coords, None);
    Ok(CorpusReport {
        family: corpus.family.clone(),
        order: corpus.order,
        squares: corpus.squares.len(),
        classes: summarize(&classes),
        raw: summarize(&raw),
        listed_classes,
        listed_raw,
        pca_regions,
    })
}

fn report(a: ReportArgs) -> CliResult<()> {
    let corpora: Vec<Corpus> = if !a.corpus.inputs.is_empty() {
        a.corpus
            .inputs
            .iter()
            .map(|p| {
                let f = mio::read_squares(p)?;
                Ok(Corpus { family: f.header.family, order: f.header.order, squares: f.squares })
            })
            .collect::<CliResult<_>>()?
    } else if let Some(spec) = a.corpus.family.spec()? {
        vec![Corpus {
            family: spec.family.name().into(),
            order: spec.order,
            squares: obtain(&spec, &a.corpus.family.options())?,
        }]
    } else {
        let rules = a.corpus.family.rules();
        FamilySpec::SUPPORTED
            .iter()
            .map(|&(f, n)| {
                let spec = FamilySpec::with_rules(f, n, rules)?;
                Ok(Corpus { family: f.name().into(), order: n, squares: obtain(&spec, &a.corpus.family.options())? })
            })
            .collect::<CliResult<_>>()?
    };
    let corpora: Vec<CorpusReport> = corpora.iter().map(corpus_report).collect::<CliResult<_>>()?;
    let summary = corpora
        .iter()
        .map(|c| CountLine {
            family: c.family.clone(),
            order: c.order,
            squares: c.squares,
            classes: c.classes.distinct,
            raw_patterns: c.raw.distinct,
        })
        .collect();
    let report = Report { canonical_form: msq_core::enumerate::CANONICAL_FORM, summary, corpora };
    emit(a.out.as_deref(), &mio::to_json(&report)?)
}
