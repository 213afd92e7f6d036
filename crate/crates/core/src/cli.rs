//! The `peek2` command line: split, diff, fuzz, encode, train and bench.
//!
//! Exit status is 0 on success, 1 when a conformance run finds mismatches and
//! 2 on usage or input errors.
//!
//! Segment text is written one per line with `\` `\r` `\n` `\t` escaped as
//! `\\` `\r` `\n` `\t`, which [`unescape_segment`] reverses.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bench::{run_bench, Backend, BenchOptions, BenchTask, TaskKind};
use crate::bpe::{train_bpe_with, BpeModel};
use crate::differential::corpus::{model_fixture, multilingual_fixture, split_documents};
use crate::differential::{diff_corpus_with, fuzz_with, DiffReport, FuzzConfig};
use crate::oracle::Oracle;
use crate::split::Peek2;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "peek2",
    version,
    about = "Regex-free cl100k pretokenizer tools"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Segment text, one escaped segment per line.
    Split(SplitArgs),
    /// Compare peek2 with the regex oracle on every line of a corpus.
    Diff(DiffArgs),
    /// Compare peek2 with the regex oracle on generated inputs.
    Fuzz(FuzzArgs),
    /// Encode text with a BPE model, one token id per line.
    Encode(EncodeArgs),
    /// Train a BPE model on a corpus (one document per line).
    Train(TrainArgs),
    /// Time tasks with both backends and print a throughput table.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// Input file, or `-` for standard input.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Output file, or `-` for standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct SplitArgs {
    #[arg(long = "impl", value_enum, default_value_t = Backend::Peek2)]
    pub backend: Backend,
    #[command(flatten)]
    pub io: IoArgs,
    /// Prefix each segment with its byte range as `start<TAB>end<TAB>`.
    #[arg(long)]
    pub offsets: bool,
}

#[derive(Debug, Args)]
pub struct DiffArgs {
    /// Corpus file (one document per line), or `-`.
    #[arg(long, visible_alias = "input", default_value = "-")]
    pub corpus: String,
    /// Where to write the JSON-lines report.
    #[arg(long, default_value = "-")]
    pub output: String,
    /// Treat the whole file as one document.
    #[arg(long)]
    pub whole: bool,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000)]
    pub cases: usize,
    /// Maximum scalars per case.
    #[arg(long, default_value_t = 64)]
    pub max_len: usize,
    /// Where to write the JSON-lines report.
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Vocabulary JSON; defaults to the bundled model.
    #[arg(long)]
    pub vocab: Option<PathBuf>,
    /// Merges file; defaults to the bundled model.
    #[arg(long)]
    pub merges: Option<PathBuf>,
}

impl ModelArgs {
    fn load(&self) -> Result<BpeModel, String> {
        let (default_vocab, default_merges) = model_fixture();
        let vocab = self.vocab.clone().unwrap_or(default_vocab);
        let merges = self.merges.clone().unwrap_or(default_merges);
        BpeModel::load_files(vocab, merges).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long = "impl", value_enum, default_value_t = Backend::Peek2)]
    pub backend: Backend,
    #[command(flatten)]
    pub io: IoArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Write `id<TAB>start<TAB>end` instead of bare ids.
    #[arg(long)]
    pub offsets: bool,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long = "impl", value_enum, default_value_t = Backend::Peek2)]
    pub backend: Backend,
    /// Corpus file (one document per line), or `-`.
    #[arg(long, default_value = "-")]
    pub input: String,
    #[arg(long, default_value_t = 1024)]
    pub vocab_size: usize,
    #[arg(long, default_value_t = 2)]
    pub min_frequency: u64,
    /// Where to write the vocabulary JSON.
    #[arg(long)]
    pub vocab: PathBuf,
    /// Where to write the merges.
    #[arg(long)]
    pub merges: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Corpus file; defaults to the bundled multilingual corpus.
    #[arg(long, visible_alias = "input")]
    pub corpus: Option<PathBuf>,
    /// Tasks to run; all of them by default.
    #[arg(long = "task", value_enum)]
    pub tasks: Vec<TaskKind>,
    /// Run only this backend (no ratios).
    #[arg(long = "impl", value_enum)]
    pub backend: Option<Backend>,
    #[arg(long, default_value_t = 5)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 1)]
    pub warmup: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Vocabulary size for the train task.
    #[arg(long, default_value_t = 1024)]
    pub vocab_size: usize,
    /// Where to write the table.
    #[arg(long, default_value = "-")]
    pub output: String,
    /// Also write JSON-lines records here.
    #[arg(long)]
    pub records: Option<PathBuf>,
}

/// Streams the command runs against, so tests can capture them.
pub struct Streams<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I, streams: &mut Streams<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, streams),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let out: &mut dyn Write = if e.use_stderr() {
                streams.stderr
            } else {
                streams.stdout
            };
            let _ = write!(out, "{}", e.render());
            code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let (mut stdin, mut stdout, mut stderr) =
        (io::stdin().lock(), io::stdout().lock(), io::stderr().lock());
    run_from(
        std::env::args_os(),
        &mut Streams {
            stdin: &mut stdin,
            stdout: &mut stdout,
            stderr: &mut stderr,
        },
    )
}

pub fn run(cli: &Cli, streams: &mut Streams<'_>) -> i32 {
    let result = match &cli.command {
        Command::Split(a) => split(a, streams),
        Command::Diff(a) => diff(a, streams),
        Command::Fuzz(a) => fuzz(a, streams),
        Command::Encode(a) => encode(a, streams),
        Command::Train(a) => train(a, streams),
        Command::Bench(a) => bench(a, streams),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(streams.stderr, "error: {message}");
            EXIT_USAGE
        }
    }
}

/// Escapes a segment so it fits on one line.
pub fn escape_segment(segment: &str) -> String {
    let mut out = String::with_capacity(segment.len());
    for c in segment.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\r' => out.push_str("\\r"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            _ => out.push(c),
        }
    }
    out
}

/// Inverse of [`escape_segment`]; `None` on a dangling or unknown escape.
pub fn unescape_segment(line: &str) -> Option<String> {
    let mut out = String::with_capacity(line.len());
    let mut chars = line.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match chars.next()? {
            '\\' => '\\',
            'r' => '\r',
            'n' => '\n',
            't' => '\t',
            _ => return None,
        });
    }
    Some(out)
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<Vec<u8>, String> {
    if path == "-" {
        let mut buf = Vec::new();
        stdin
            .read_to_end(&mut buf)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn read_text(path: &str, stdin: &mut dyn Read) -> Result<String, String> {
    String::from_utf8(read_input(path, stdin)?).map_err(|e| {
        format!(
            "{path}: not valid UTF-8 (first bad byte at offset {})",
            e.utf8_error().valid_up_to()
        )
    })
}

fn write_output(path: &str, stdout: &mut dyn Write, bytes: &[u8]) -> Result<(), String> {
    if path == "-" {
        stdout.write_all(bytes).map_err(|e| format!("stdout: {e}"))
    } else {
        std::fs::write(path, bytes).map_err(|e| format!("{path}: {e}"))
    }
}

fn split(args: &SplitArgs, s: &mut Streams<'_>) -> Result<i32, String> {
    let text = read_text(&args.io.input, s.stdin)?;
    let segments = args
        .backend
        .splitter()
        .split(&text)
        .map_err(|e| e.to_string())?;
    let mut out = String::with_capacity(text.len() * 2);
    for seg in &segments {
        if args.offsets {
            out.push_str(&format!("{}\t{}\t", seg.start, seg.end));
        }
        out.push_str(&escape_segment(seg.text(&text)));
        out.push('\n');
    }
    write_output(&args.io.output, s.stdout, out.as_bytes())?;
    Ok(EXIT_OK)
}

fn report_diff(report: &DiffReport, output: &str, s: &mut Streams<'_>) -> Result<i32, String> {
    let mut jsonl = Vec::new();
    report.write_jsonl(&mut jsonl).map_err(|e| e.to_string())?;
    write_output(output, s.stdout, &jsonl)?;
    let _ = writeln!(
        s.stderr,
        "{} inputs, {} scalars, {} mismatches, {} invalid documents",
        report.inputs_tested,
        report.scalars_tested,
        report.mismatches.len(),
        report.invalid_documents.len()
    );
    Ok(diff_exit_code(report))
}

/// Exit status for a conformance report.
pub fn diff_exit_code(report: &DiffReport) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn diff(args: &DiffArgs, s: &mut Streams<'_>) -> Result<i32, String> {
    let raw = read_input(&args.corpus, s.stdin)?;
    let docs = if args.whole {
        vec![raw.as_slice()]
    } else {
        split_documents(&raw)
    };
    let report =
        diff_corpus_with(&docs, &Peek2::new(), Oracle::global()).map_err(|e| e.to_string())?;
    report_diff(&report, &args.output, s)
}

fn fuzz(args: &FuzzArgs, s: &mut Streams<'_>) -> Result<i32, String> {
    let config = FuzzConfig {
        seed: args.seed,
        case_count: args.cases,
        max_len: args.max_len,
        ..FuzzConfig::default()
    };
    let report = fuzz_with(&config, &Peek2::new(), Oracle::global()).map_err(|e| e.to_string())?;
    report_diff(&report, &args.output, s)
}

fn encode(args: &EncodeArgs, s: &mut Streams<'_>) -> Result<i32, String> {
    let model = args.model.load()?;
    let text = read_text(&args.io.input, s.stdin)?;
    let encoding = model
        .encode_with(args.backend.splitter(), &text)
        .map_err(|e| e.to_string())?;
    let mut out = String::new();
    for (id, (start, end)) in encoding.ids.iter().zip(&encoding.offsets) {
        if args.offsets {
            out.push_str(&format!("{id}\t{start}\t{end}\n"));
        } else {
            out.push_str(&format!("{id}\n"));
        }
    }
    write_output(&args.io.output, s.stdout, out.as_bytes())?;
    Ok(EXIT_OK)
}

fn train(args: &TrainArgs, s: &mut Streams<'_>) -> Result<i32, String> {
    let text = read_text(&args.input, s.stdin)?;
    let docs: Vec<&str> = text.lines().collect();
    if docs.is_empty() {
        return Err("training corpus is empty".into());
    }
    let model = train_bpe_with(
        args.backend.splitter(),
        &docs,
        args.vocab_size,
        args.min_frequency,
    )
    .map_err(|e| e.to_string())?;
    model
        .save_files(&args.vocab, &args.merges)
        .map_err(|e| e.to_string())?;
    let _ = writeln!(
        s.stderr,
        "{} documents, {} tokens, {} merges",
        docs.len(),
        model.vocab_size(),
        model.merges().len()
    );
    Ok(EXIT_OK)
}

fn bench(args: &BenchArgs, s: &mut Streams<'_>) -> Result<i32, String> {
    let corpus = args.corpus.clone().unwrap_or_else(multilingual_fixture);
    let kinds = if args.tasks.is_empty() {
        TaskKind::ALL.to_vec()
    } else {
        args.tasks.clone()
    };
    let mut tasks = BenchTask::pairs(&kinds, &corpus, args.repetitions);
    if let Some(only) = args.backend {
        tasks.retain(|t| t.backend == only);
    }
    let needs_model = kinds.iter().any(|k| {
        matches!(
            k,
            TaskKind::Encode | TaskKind::EncodeOffsets | TaskKind::EncodeBatch
        )
    });
    let options = BenchOptions {
        warmup: args.warmup,
        model: if needs_model {
            Some(args.model.load()?)
        } else {
            None
        },
        train_vocab_size: args.vocab_size,
        ..BenchOptions::default()
    };
    let report = run_bench(&tasks, &options).map_err(|e| e.to_string())?;
    write_output(&args.output, s.stdout, report.to_table().as_bytes())?;
    if let Some(path) = &args.records {
        let mut jsonl = Vec::new();
        report.write_jsonl(&mut jsonl).map_err(|e| e.to_string())?;
        std::fs::write(path, jsonl).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn escapes_round_trip() {
        for s in ["plain", "a\\b", "\r\n", "\t x \\n", ""] {
            let e = escape_segment(s);
            assert!(!e.contains(['\n', '\r', '\t']));
            assert_eq!(unescape_segment(&e).as_deref(), Some(s));
        }
        assert_eq!(unescape_segment("bad\\"), None);
        assert_eq!(unescape_segment("\\x"), None);
    }

    #[test]
    fn cli_definition_is_valid() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
