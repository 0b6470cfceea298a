//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on an internal failure, 2 on a usage or
//! input error. Report commands write JSON to `--out` and a TSV table next
//! to it (same path, `.tsv` extension); without `--out` the TSV goes to
//! standard output.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::sentistrength::{
    DecisionScale, SentiStrengthConfig, SentiStrengthEngine, SentiStrengthThresholds,
};
use crate::engine::socal::{SocalConfig, SocalEngine, SocalThresholds};
use crate::eval::{
    agreement_partition, load_corpus, load_predictions, macro_f1, render_predictions, CorpusRecord,
    EvaluationReport, LabelPolicy, Prediction, ScoreDetail,
};
use crate::lexicon::{
    clean_lexicon, lexicon_stats, parse_lexicon_file, parse_marker_set, parse_modifiers,
    render_stats_tsv, vote_combine, CleaningReport, Lexicon, MarkerLists,
};
use crate::text::{parse_annotated, tokenize_fallback, Document};
use crate::tuning::{
    tune_sentistrength, tune_socal, GridRange, SentiStrengthGrid, SocalGrid, TuningResult,
};
use crate::SentimentLabel;

#[derive(Debug, Parser)]
#[command(
    name = "lexsent",
    version,
    about = "Lexicon-based sentiment analysis for Russian texts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Clean, combine or describe sentiment lexicons.
    #[command(subcommand)]
    Lexicon(LexiconCommand),
    /// Label every corpus document with fixed thresholds.
    Classify(ClassifyArgs),
    /// Fit decision thresholds on a labeled corpus, one run per lexicon.
    Tune(TuneArgs),
    /// Macro F1 of prediction files against gold labels.
    Eval(EvalArgs),
    /// Agreement analysis of three prediction files.
    Compare(CompareArgs),
}

#[derive(Debug, Subcommand)]
enum LexiconCommand {
    /// Write a cleaned copy and a cleaning report for each lexicon.
    Clean(LexiconDirArgs),
    /// Write the voting combinations Lex1..LexM and their statistics.
    Combine(LexiconDirArgs),
    /// Print size and polarity statistics.
    Stats(LexiconStatsArgs),
}

#[derive(Debug, Args)]
struct LexiconDirArgs {
    /// Lexicon file (KEY<TAB>WEIGHT[<TAB>POS]); repeatable.
    #[arg(long = "lexicon", required = true)]
    lexicons: Vec<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct LexiconStatsArgs {
    #[arg(long = "lexicon", required = true)]
    lexicons: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum EngineKind {
    Socal,
    Sentistrength,
}

impl EngineKind {
    fn name(self) -> &'static str {
        match self {
            EngineKind::Socal => "socal",
            EngineKind::Sentistrength => "sentistrength",
        }
    }
}

#[derive(Debug, Args)]
struct EngineArgs {
    #[arg(long, value_enum)]
    engine: EngineKind,
    /// Modifier list (LEMMA<TAB>DELTA).
    #[arg(long)]
    modifiers: Option<PathBuf>,
    /// Negation list, one lemma per line.
    #[arg(long)]
    negations: Option<PathBuf>,
    /// Irrealis marker list, one lemma per line.
    #[arg(long)]
    irrealis: Option<PathBuf>,
    /// SO-CAL negation shift.
    #[arg(long, default_value_t = crate::engine::socal::DEFAULT_NEGATION_SHIFT)]
    shift: f64,
    /// Negation lookback window in non-modifier tokens.
    #[arg(long, default_value_t = crate::engine::DEFAULT_LOOKBACK)]
    lookback: usize,
    /// Compare raw SentiStrength scores instead of offset ones.
    #[arg(long)]
    raw_scale: bool,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// JSON-lines corpus.
    #[arg(long)]
    corpus: PathBuf,
    /// Annotated-token file covering the corpus documents.
    #[arg(long)]
    annotations: Option<PathBuf>,
    /// Tokenize records that have no annotation from their raw text.
    #[arg(long)]
    fallback_tokenize: bool,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    corpus: CorpusArgs,
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    t_pos: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_neg: Option<f64>,
    #[arg(long)]
    k_neut: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    /// Tuning report whose best thresholds are used.
    #[arg(long)]
    thresholds: Option<PathBuf>,
    /// Predictions file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include system name and score detail in every line.
    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Args)]
struct TuneArgs {
    #[command(flatten)]
    engine: EngineArgs,
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Candidate lexicon; repeatable.
    #[arg(long = "lexicon")]
    lexicons: Vec<PathBuf>,
    /// JSON grid file with any of t_pos, t_neg, k_neut, k as
    /// {"start", "end", "step"} objects.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// START:END:STEP
    #[arg(long, allow_hyphen_values = true)]
    t_pos_grid: Option<GridRange>,
    #[arg(long, allow_hyphen_values = true)]
    t_neg_grid: Option<GridRange>,
    #[arg(long, allow_hyphen_values = true)]
    k_neut_grid: Option<GridRange>,
    #[arg(long, allow_hyphen_values = true)]
    k_grid: Option<GridRange>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// Predictions file; repeatable.
    #[arg(long = "predictions", required = true)]
    predictions: Vec<PathBuf>,
    /// Comma-separated system names, defaulting to the file stems.
    #[arg(long, value_delimiter = ',')]
    systems: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// Exactly three prediction files, in A, B, C order.
    #[arg(long = "predictions", required = true)]
    predictions: Vec<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    systems: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable files or malformed input (exit code 2).
    Input(String),
    /// Anything else (exit code 1).
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Internal(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn input_err(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn in_file(path: &Path, err: impl fmt::Display) -> CliError {
    CliError::Input(format!("{}: {err}", path.display()))
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| in_file(path, e))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| in_file(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| in_file(path, e))
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Internal(format!("cannot serialize report: {e}")))
}

/// JSON at `out`, TSV next to it; TSV alone on stdout without `out`.
fn emit_report<T: Serialize>(out: Option<&Path>, json: &T, tsv: &str) -> CliResult<()> {
    match out {
        Some(path) => {
            write(path, &to_json(json)?)?;
            write(&path.with_extension("tsv"), tsv)
        }
        None => print(tsv),
    }
}

fn print(text: &str) -> CliResult<()> {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|e| CliError::Internal(format!("cannot write to standard output: {e}")))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_lexicon(path: &Path) -> CliResult<(Lexicon, CleaningReport)> {
    let raw = parse_lexicon_file(&read(path)?).map_err(|e| in_file(path, e))?;
    Ok(clean_lexicon(&raw, &file_stem(path)))
}

fn load_lexicons(paths: &[PathBuf]) -> CliResult<Vec<(Lexicon, CleaningReport)>> {
    let loaded = paths
        .iter()
        .map(|p| load_lexicon(p))
        .collect::<CliResult<Vec<_>>>()?;
    for (i, (lex, _)) in loaded.iter().enumerate() {
        if loaded[..i].iter().any(|(l, _)| l.name() == lex.name()) {
            return Err(input_err(format!(
                "two lexicon files share the name {:?}; lexicons are named after their file stem",
                lex.name()
            )));
        }
    }
    Ok(loaded)
}

fn cmd_lexicon(cmd: LexiconCommand) -> CliResult<()> {
    match cmd {
        LexiconCommand::Clean(args) => {
            fs::create_dir_all(&args.out).map_err(|e| in_file(&args.out, e))?;
            for (lex, report) in load_lexicons(&args.lexicons)? {
                write(&args.out.join(format!("{}.tsv", lex.name())), &lex.to_tsv())?;
                write(
                    &args.out.join(format!("{}.report.tsv", lex.name())),
                    &report.to_string(),
                )?;
            }
            Ok(())
        }
        LexiconCommand::Combine(args) => {
            fs::create_dir_all(&args.out).map_err(|e| in_file(&args.out, e))?;
            let sources: Vec<Lexicon> = load_lexicons(&args.lexicons)?
                .into_iter()
                .map(|(l, _)| l)
                .collect();
            let mut stats = Vec::with_capacity(sources.len());
            for n in 1..=sources.len() {
                let combined =
                    vote_combine(&sources, n).map_err(|e| CliError::Internal(e.to_string()))?;
                write(
                    &args.out.join(format!("{}.tsv", combined.name())),
                    &combined.to_tsv(),
                )?;
                stats.push(lexicon_stats(&combined));
            }
            let out = args.out.join("stats.json");
            emit_report(Some(&out), &stats, &render_stats_tsv(&stats))
        }
        LexiconCommand::Stats(args) => {
            let stats: Vec<_> = load_lexicons(&args.lexicons)?
                .iter()
                .map(|(l, _)| lexicon_stats(l))
                .collect();
            emit_report(args.out.as_deref(), &stats, &render_stats_tsv(&stats))
        }
    }
}

fn load_markers(args: &EngineArgs) -> CliResult<MarkerLists> {
    let text = |p: &Option<PathBuf>| {
        p.as_deref()
            .map(read)
            .transpose()
            .map(Option::unwrap_or_default)
    };
    let modifiers = parse_modifiers(&text(&args.modifiers)?).map_err(|e| {
        in_file(
            args.modifiers.as_deref().unwrap_or(Path::new("modifiers")),
            e,
        )
    })?;
    let negations = parse_marker_set(&text(&args.negations)?, "negation").map_err(|e| {
        in_file(
            args.negations.as_deref().unwrap_or(Path::new("negations")),
            e,
        )
    })?;
    let irrealis = parse_marker_set(&text(&args.irrealis)?, "irrealis")
        .map_err(|e| in_file(args.irrealis.as_deref().unwrap_or(Path::new("irrealis")), e))?;
    MarkerLists::new(modifiers, negations, irrealis).map_err(|e| input_err(e.to_string()))
}

fn check_engine_args(args: &EngineArgs) -> CliResult<()> {
    if !(args.shift.is_finite() && args.shift >= 0.0) {
        return Err(input_err(format!(
            "--shift must be a non-negative number, got {}",
            args.shift
        )));
    }
    Ok(())
}

fn scale(args: &EngineArgs) -> DecisionScale {
    if args.raw_scale {
        DecisionScale::Raw
    } else {
        DecisionScale::Offset
    }
}

fn socal_engine<'a>(
    lex: &'a Lexicon,
    markers: &'a MarkerLists,
    args: &EngineArgs,
) -> SocalEngine<'a> {
    SocalEngine::new(lex, markers).with_config(SocalConfig {
        negation_shift: args.shift,
        lookback: args.lookback,
    })
}

fn sentistrength_engine<'a>(
    lex: &'a Lexicon,
    markers: &'a MarkerLists,
    args: &EngineArgs,
) -> SentiStrengthEngine<'a> {
    SentiStrengthEngine::new(lex, markers).with_config(SentiStrengthConfig {
        lookback: args.lookback,
    })
}

/// Resolves each corpus record to a document: the annotated file named by
/// `--annotations` or the record's `annotated` field first, raw-text
/// tokenization when allowed.
fn load_documents(records: &[CorpusRecord], args: &CorpusArgs) -> CliResult<Vec<Document>> {
    let base = args.corpus.parent().unwrap_or(Path::new("")).to_path_buf();
    let own: Vec<Option<PathBuf>> = records
        .iter()
        .map(|r| r.annotated.as_ref().map(|p| base.join(p)))
        .collect();
    let mut files: HashMap<PathBuf, HashMap<String, Document>> = HashMap::new();
    for path in args.annotations.iter().chain(own.iter().flatten()) {
        if !files.contains_key(path) {
            let docs = parse_annotated(&read(path)?).map_err(|e| in_file(path, e))?;
            files.insert(
                path.clone(),
                docs.into_iter().map(|d| (d.id().to_string(), d)).collect(),
            );
        }
    }

    let mut out = Vec::with_capacity(records.len());
    for (r, own) in records.iter().zip(&own) {
        let found = own
            .iter()
            .chain(args.annotations.iter())
            .find_map(|p| files.get(p).and_then(|docs| docs.get(&r.id)));
        let doc = match found {
            Some(d) if r.text.is_empty() => d.clone(),
            Some(d) => d.clone().with_raw_text(r.text.clone()),
            None if args.fallback_tokenize => tokenize_fallback(&r.text, &r.id),
            None => {
                return Err(input_err(format!(
                "record {:?} has no annotated document; pass --annotations or --fallback-tokenize",
                r.id
            )))
            }
        };
        out.push(doc);
    }
    Ok(out)
}

fn read_corpus(
    args: &CorpusArgs,
    policy: LabelPolicy,
) -> CliResult<(Vec<CorpusRecord>, Vec<Document>)> {
    let records =
        load_corpus(&read(&args.corpus)?, policy).map_err(|e| in_file(&args.corpus, e))?;
    let docs = load_documents(&records, args)?;
    Ok((records, docs))
}

#[derive(Debug, Serialize, Deserialize)]
struct BestLexicon<T> {
    lexicon: String,
    thresholds: T,
    macro_f1: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct LexiconTuning<T> {
    lexicon: String,
    entries: usize,
    result: TuningResult<T>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TuneReport<T> {
    engine: EngineKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    decision_scale: Option<DecisionScale>,
    corpus_size: usize,
    best: BestLexicon<T>,
    lexicons: Vec<LexiconTuning<T>>,
}

/// Reads the best thresholds from a tuning report or a bare tuning result.
fn thresholds_from_file<T: for<'de> Deserialize<'de>>(
    path: &Path,
    engine: EngineKind,
    scale: Option<DecisionScale>,
) -> CliResult<T> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| in_file(path, e))?;
    if let Some(e) = v.get("engine") {
        let fitted: EngineKind = serde_json::from_value(e.clone()).map_err(|e| in_file(path, e))?;
        if fitted != engine {
            return Err(in_file(
                path,
                format!(
                    "thresholds were fitted for engine {}, not {}",
                    fitted.name(),
                    engine.name()
                ),
            ));
        }
    }
    if let (Some(s), Some(want)) = (v.get("decision_scale"), scale) {
        let fitted: DecisionScale =
            serde_json::from_value(s.clone()).map_err(|e| in_file(path, e))?;
        if fitted != want {
            return Err(in_file(
                path,
                "thresholds were fitted on a different decision scale; toggle --raw-scale to match",
            ));
        }
    }
    let best = v
        .get("best")
        .ok_or_else(|| in_file(path, "no \"best\" thresholds in report"))?;
    let th = best.get("thresholds").unwrap_or(best);
    serde_json::from_value(th.clone()).map_err(|e| in_file(path, e))
}

fn missing_thresholds(engine: EngineKind, flags: &str) -> CliError {
    input_err(format!(
        "no thresholds for engine {}: pass {flags}, or run `lexsent tune` and pass its report with --thresholds",
        engine.name()
    ))
}

fn classify_documents<S, F, C>(
    docs: &[Document],
    system: &str,
    score: F,
    classify: C,
) -> Vec<Prediction>
where
    S: Send,
    F: Fn(&Document) -> S + Sync,
    C: Fn(&S) -> (SentimentLabel, ScoreDetail) + Sync,
{
    docs.par_iter()
        .map(|d| {
            let (label, detail) = classify(&score(d));
            Prediction {
                doc_id: d.id().to_string(),
                label,
                detail: Some(detail),
                system: system.to_string(),
            }
        })
        .collect()
}

fn cmd_classify(args: ClassifyArgs) -> CliResult<()> {
    let e = &args.engine;
    check_engine_args(e)?;
    let preds = match e.engine {
        EngineKind::Socal => {
            let th = match (args.t_pos, args.t_neg, &args.thresholds) {
                (Some(p), Some(n), _) => {
                    SocalThresholds::new(p, n).map_err(|err| input_err(err.to_string()))?
                }
                (None, None, Some(path)) => {
                    let th: SocalThresholds = thresholds_from_file(path, e.engine, None)?;
                    SocalThresholds::new(th.t_pos, th.t_neg).map_err(|err| in_file(path, err))?
                }
                _ => return Err(missing_thresholds(e.engine, "both --t-pos and --t-neg")),
            };
            let (lex, _) = load_lexicon(&args.lexicon)?;
            let markers = load_markers(e)?;
            let (_, docs) = read_corpus(&args.corpus, LabelPolicy::Optional)?;
            let engine = socal_engine(&lex, &markers, e);
            classify_documents(
                &docs,
                e.engine.name(),
                |d| engine.score(d),
                |s| (th.classify(s.value), ScoreDetail::Socal(s.clone())),
            )
        }
        EngineKind::Sentistrength => {
            let scale = scale(e);
            let th = match (args.k_neut, args.k, &args.thresholds) {
                (Some(a), Some(b), _) => {
                    SentiStrengthThresholds::new(a, b).map_err(|err| input_err(err.to_string()))?
                }
                (None, None, Some(path)) => {
                    let th: SentiStrengthThresholds =
                        thresholds_from_file(path, e.engine, Some(scale))?;
                    SentiStrengthThresholds::new(th.k_neut, th.k)
                        .map_err(|err| in_file(path, err))?
                }
                _ => return Err(missing_thresholds(e.engine, "both --k-neut and --k")),
            };
            let (lex, _) = load_lexicon(&args.lexicon)?;
            let markers = load_markers(e)?;
            let (_, docs) = read_corpus(&args.corpus, LabelPolicy::Optional)?;
            let engine = sentistrength_engine(&lex, &markers, e);
            classify_documents(
                &docs,
                e.engine.name(),
                |d| engine.score(d),
                |s| (th.classify(*s, scale), ScoreDetail::Dual(*s)),
            )
        }
    };
    let text = render_predictions(&preds, args.verbose);
    match &args.out {
        Some(path) => write(path, &text),
        None => print(&text),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridFile {
    t_pos: Option<GridRange>,
    t_neg: Option<GridRange>,
    k_neut: Option<GridRange>,
    k: Option<GridRange>,
}

/// Flags override the grid file, which overrides the defaults.
fn grid_file(args: &TuneArgs) -> CliResult<GridFile> {
    match &args.grid {
        Some(path) => serde_json::from_str(&read(path)?).map_err(|e| in_file(path, e)),
        None => Ok(GridFile::default()),
    }
}

fn pick_best<T: Copy>(runs: &[LexiconTuning<T>]) -> BestLexicon<T> {
    // strict comparison keeps the earliest lexicon on ties
    let mut best = &runs[0];
    for r in &runs[1..] {
        if r.result.best_macro_f1 > best.result.best_macro_f1 {
            best = r;
        }
    }
    BestLexicon {
        lexicon: best.lexicon.clone(),
        thresholds: best.result.best,
        macro_f1: best.result.best_macro_f1,
    }
}

fn tune_tsv<T>(
    runs: &[LexiconTuning<T>],
    names: [&str; 2],
    params: impl Fn(&T) -> [f64; 2],
) -> String {
    let mut out = format!("lexicon\tentries\t{}\t{}\tmacro_F1\n", names[0], names[1]);
    for r in runs {
        let [a, b] = params(&r.result.best);
        out.push_str(&format!(
            "{}\t{}\t{a}\t{b}\t{}\n",
            r.lexicon,
            r.entries,
            crate::eval::fmt_score(r.result.best_macro_f1)
        ));
    }
    out
}

fn cmd_tune(args: TuneArgs) -> CliResult<()> {
    let e = &args.engine;
    check_engine_args(e)?;
    if args.lexicons.is_empty() {
        return Err(input_err("tune needs at least one --lexicon"));
    }
    let file = grid_file(&args)?;
    let lexicons = load_lexicons(&args.lexicons)?;
    let markers = load_markers(e)?;
    let (records, docs) = read_corpus(&args.corpus, LabelPolicy::Required)
        .map_err(|err| input_err(format!("{err} (tune needs a labeled corpus)")))?;
    if records.is_empty() {
        return Err(in_file(&args.corpus.corpus, "corpus is empty"));
    }
    let gold: Vec<SentimentLabel> = records
        .iter()
        .map(|r| r.label.expect("labels required"))
        .collect();
    let tuning_err = |err: crate::tuning::TuningError| input_err(err.to_string());

    match e.engine {
        EngineKind::Socal => {
            let default = SocalGrid::default();
            let grid = SocalGrid {
                t_pos: args.t_pos_grid.or(file.t_pos).unwrap_or(default.t_pos),
                t_neg: args.t_neg_grid.or(file.t_neg).unwrap_or(default.t_neg),
            };
            let runs = lexicons
                .iter()
                .map(|(lex, _)| {
                    let result = tune_socal(&docs, &gold, &socal_engine(lex, &markers, e), &grid)
                        .map_err(tuning_err)?;
                    Ok(LexiconTuning {
                        lexicon: lex.name().to_string(),
                        entries: lex.len(),
                        result,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let tsv = tune_tsv(&runs, ["t_pos", "t_neg"], |t| [t.t_pos, t.t_neg]);
            let report = TuneReport {
                engine: e.engine,
                decision_scale: None,
                corpus_size: docs.len(),
                best: pick_best(&runs),
                lexicons: runs,
            };
            emit_report(args.out.as_deref(), &report, &tsv)
        }
        EngineKind::Sentistrength => {
            let default = SentiStrengthGrid::default();
            let grid = SentiStrengthGrid {
                k_neut: args.k_neut_grid.or(file.k_neut).unwrap_or(default.k_neut),
                k: args.k_grid.or(file.k).unwrap_or(default.k),
            };
            let scale = scale(e);
            let runs = lexicons
                .iter()
                .map(|(lex, _)| {
                    let engine = sentistrength_engine(lex, &markers, e);
                    let result = tune_sentistrength(&docs, &gold, &engine, &grid, scale)
                        .map_err(tuning_err)?;
                    Ok(LexiconTuning {
                        lexicon: lex.name().to_string(),
                        entries: lex.len(),
                        result,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            let tsv = tune_tsv(&runs, ["k_neut", "k"], |t| [t.k_neut, t.k]);
            let report = TuneReport {
                engine: e.engine,
                decision_scale: Some(scale),
                corpus_size: docs.len(),
                best: pick_best(&runs),
                lexicons: runs,
            };
            emit_report(args.out.as_deref(), &report, &tsv)
        }
    }
}

fn system_names(paths: &[PathBuf], given: &[String]) -> CliResult<Vec<String>> {
    if given.is_empty() {
        return Ok(paths.iter().map(|p| file_stem(p)).collect());
    }
    if given.len() != paths.len() {
        return Err(input_err(format!(
            "{} system names for {} prediction files",
            given.len(),
            paths.len()
        )));
    }
    Ok(given.to_vec())
}

fn read_predictions(
    paths: &[PathBuf],
    names: &[String],
    corpus: &[CorpusRecord],
) -> CliResult<Vec<Vec<Prediction>>> {
    let ids: Vec<String> = corpus.iter().map(|r| r.id.clone()).collect();
    paths
        .iter()
        .zip(names)
        .map(|(p, name)| load_predictions(&read(p)?, name, &ids).map_err(|e| in_file(p, e)))
        .collect()
}

fn cmd_eval(args: EvalArgs) -> CliResult<()> {
    let corpus = load_corpus(&read(&args.corpus)?, LabelPolicy::Required)
        .map_err(|e| in_file(&args.corpus, e))?;
    let names = system_names(&args.predictions, &args.systems)?;
    let all = read_predictions(&args.predictions, &names, &corpus)?;
    let gold: Vec<SentimentLabel> = corpus
        .iter()
        .map(|r| r.label.expect("labels required"))
        .collect();
    let mut reports: Vec<EvaluationReport> = Vec::with_capacity(all.len());
    for (preds, name) in all.iter().zip(&names) {
        let labels: Vec<SentimentLabel> = preds.iter().map(|p| p.label).collect();
        let mut r = macro_f1(&gold, &labels).map_err(|e| in_file(&args.corpus, e))?;
        r.system = name.clone();
        reports.push(r);
    }
    let mut tsv = String::new();
    for (i, r) in reports.iter().enumerate() {
        let table = r.to_tsv();
        let body = if i == 0 {
            &table[..]
        } else {
            table.split_once('\n').map_or("", |(_, b)| b)
        };
        tsv.push_str(body);
    }
    emit_report(args.out.as_deref(), &reports, &tsv)
}

fn cmd_compare(args: CompareArgs) -> CliResult<()> {
    if args.predictions.len() != 3 {
        return Err(input_err(format!(
            "compare needs exactly three --predictions files, got {}",
            args.predictions.len()
        )));
    }
    let corpus = load_corpus(&read(&args.corpus)?, LabelPolicy::Optional)
        .map_err(|e| in_file(&args.corpus, e))?;
    let names = system_names(&args.predictions, &args.systems)?;
    let all = read_predictions(&args.predictions, &names, &corpus)?;
    let systems = [names[0].clone(), names[1].clone(), names[2].clone()];
    let report = agreement_partition(&corpus, [&all[0], &all[1], &all[2]], systems)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    emit_report(args.out.as_deref(), &report, &report.to_tsv())
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Lexicon(c) => cmd_lexicon(c),
        Command::Classify(a) => cmd_classify(a),
        Command::Tune(a) => cmd_tune(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("lexsent: {e}");
            e.exit_code()
        }
    }
}
