//! Throughput harness: the same task run over the same corpus with the
//! table-driven splitter and with the regex oracle.

use std::fmt::{self, Write as _};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bpe::{train_bpe_with, BpeError, BpeModel};
use crate::differential::corpus::split_documents;
use crate::oracle::Oracle;
use crate::split::{Peek2, SplitError, Splitter};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("missing fixture: {0}")]
    MissingFixture(String),
    #[error("clock went backwards during {task}")]
    ClockError { task: String },
    #[error("invalid benchmark configuration: {0}")]
    Config(String),
    #[error("corpus {path} line {line} is not valid UTF-8")]
    CorpusEncoding { path: String, line: usize },
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Bpe(#[from] BpeError),
}

#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    /// Segment every document; no BPE.
    PretokenizeOnly,
    /// Token ids of every document, one after another.
    Encode,
    /// Token ids plus byte offsets, one document after another.
    EncodeOffsets,
    /// Token ids and offsets, documents in parallel.
    EncodeBatch,
    /// Train a vocabulary on the corpus.
    Train,
}

impl TaskKind {
    pub const ALL: [TaskKind; 5] = [
        TaskKind::PretokenizeOnly,
        TaskKind::Encode,
        TaskKind::EncodeOffsets,
        TaskKind::EncodeBatch,
        TaskKind::Train,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::PretokenizeOnly => "pretokenize-only",
            TaskKind::Encode => "encode",
            TaskKind::EncodeOffsets => "encode-offsets",
            TaskKind::EncodeBatch => "encode-batch",
            TaskKind::Train => "train",
        }
    }

    /// peek2/regex throughput ratio from a reference run of the same task
    /// shape on other hardware, where one exists.
    pub fn reference_ratio(self) -> Option<f64> {
        match self {
            TaskKind::PretokenizeOnly => None,
            TaskKind::Encode => Some(7.005605 / 6.207111),
            TaskKind::EncodeOffsets => Some(39.679901 / 37.159669),
            TaskKind::EncodeBatch => Some(46.037036 / 41.411058),
            TaskKind::Train => Some(13.769592 / 13.315943),
        }
    }

    fn needs_model(self) -> bool {
        matches!(
            self,
            TaskKind::Encode | TaskKind::EncodeOffsets | TaskKind::EncodeBatch
        )
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Peek2,
    Oracle,
}

impl Backend {
    pub fn splitter(self) -> &'static dyn Splitter {
        static PEEK2: Peek2 = Peek2::new();
        match self {
            Backend::Peek2 => &PEEK2,
            Backend::Oracle => Oracle::global(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::Peek2 => "peek2",
            Backend::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchTask {
    pub kind: TaskKind,
    pub backend: Backend,
    pub corpus: PathBuf,
    pub repetitions: usize,
}

impl BenchTask {
    /// Both backends of each kind, in `kinds` order, peek2 first.
    pub fn pairs(
        kinds: &[TaskKind],
        corpus: impl AsRef<Path>,
        repetitions: usize,
    ) -> Vec<BenchTask> {
        kinds
            .iter()
            .flat_map(|&kind| {
                [Backend::Peek2, Backend::Oracle].map(|backend| BenchTask {
                    kind,
                    backend,
                    corpus: corpus.as_ref().to_path_buf(),
                    repetitions,
                })
            })
            .collect()
    }
}

/// Inputs shared by all tasks of a run.
#[derive(Debug, Clone)]
pub struct BenchOptions {
    /// Untimed runs before the timed ones.
    pub warmup: usize,
    /// Model for the encode tasks.
    pub model: Option<BpeModel>,
    pub train_vocab_size: usize,
    pub train_min_frequency: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            warmup: 1,
            model: None,
            train_vocab_size: 1024,
            train_min_frequency: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub task: TaskKind,
    pub backend: Backend,
    pub corpus: String,
    pub input_bytes: usize,
    pub samples_ms: Vec<f64>,
    pub mean_ms: f64,
    pub std_error_ms: f64,
    /// Megabytes (10^6 bytes) of input per second at the mean time.
    pub throughput_mb_s: f64,
    /// Output size of one run (segments, tokens or vocab entries); equal
    /// across backends when they agree.
    pub output_units: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRatio {
    pub task: TaskKind,
    /// peek2 throughput / oracle throughput.
    pub ratio: f64,
    pub reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub threads: usize,
    pub measurements: Vec<Measurement>,
    pub ratios: Vec<TaskRatio>,
}

/// Sample mean and standard error of the mean (sample standard deviation
/// over the square root of the count).
pub fn mean_and_std_error(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    if samples.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = samples.iter().sum::<f64>() / n;
    if samples.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt() / n.sqrt())
}

/// Runs `tasks` one after another and collects the report.
pub fn run_bench(tasks: &[BenchTask], options: &BenchOptions) -> Result<BenchReport, BenchError> {
    let mut measurements = Vec::with_capacity(tasks.len());
    let mut corpus_cache: Option<(PathBuf, Corpus)> = None;
    for task in tasks {
        if task.repetitions < 3 {
            return Err(BenchError::Config(format!(
                "{} needs at least 3 repetitions, got {}",
                task.kind, task.repetitions
            )));
        }
        if task.kind.needs_model() && options.model.is_none() {
            return Err(BenchError::MissingFixture(format!(
                "{} needs a BPE model",
                task.kind
            )));
        }
        if corpus_cache.as_ref().is_none_or(|(p, _)| *p != task.corpus) {
            corpus_cache = Some((task.corpus.clone(), Corpus::load(&task.corpus)?));
        }
        let corpus = &corpus_cache.as_ref().expect("just loaded").1;
        measurements.push(measure(task, corpus, options)?);
    }

    let mut ratios = Vec::new();
    for kind in TaskKind::ALL {
        let total = |backend| {
            measurements
                .iter()
                .filter(|m| m.task == kind && m.backend == backend)
                .map(|m| {
                    (
                        m.input_bytes as f64 * m.samples_ms.len() as f64,
                        m.samples_ms.iter().sum::<f64>(),
                    )
                })
                .fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1))
        };
        let (peek_bytes, peek_ms) = total(Backend::Peek2);
        let (oracle_bytes, oracle_ms) = total(Backend::Oracle);
        if peek_ms > 0.0 && oracle_ms > 0.0 {
            ratios.push(TaskRatio {
                task: kind,
                ratio: (peek_bytes / peek_ms) / (oracle_bytes / oracle_ms),
                reference: kind.reference_ratio(),
            });
        }
    }

    Ok(BenchReport {
        threads: rayon::current_num_threads(),
        measurements,
        ratios,
    })
}

struct Corpus {
    name: String,
    documents: Vec<String>,
    bytes: usize,
}

impl Corpus {
    fn load(path: &Path) -> Result<Self, BenchError> {
        let raw = std::fs::read(path)
            .map_err(|e| BenchError::MissingFixture(format!("{}: {e}", path.display())))?;
        let documents = split_documents(&raw)
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                String::from_utf8(d.to_vec()).map_err(|_| BenchError::CorpusEncoding {
                    path: path.display().to_string(),
                    line: i + 1,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let bytes = documents.iter().map(String::len).sum();
        if bytes == 0 {
            return Err(BenchError::MissingFixture(format!(
                "{} is empty",
                path.display()
            )));
        }
        Ok(Corpus {
            name: path.display().to_string(),
            documents,
            bytes,
        })
    }
}

fn measure(
    task: &BenchTask,
    corpus: &Corpus,
    options: &BenchOptions,
) -> Result<Measurement, BenchError> {
    let splitter = task.backend.splitter();
    let run = || -> Result<usize, BenchError> {
        let docs = &corpus.documents;
        Ok(match task.kind {
            TaskKind::PretokenizeOnly => {
                let mut n = 0;
                for d in docs {
                    n += splitter.split(d)?.len();
                }
                n
            }
            TaskKind::Encode => {
                let model = options.model.as_ref().expect("checked");
                let mut n = 0;
                for d in docs {
                    n += model.encode_ids_with(splitter, d)?.len();
                }
                n
            }
            TaskKind::EncodeOffsets => {
                let model = options.model.as_ref().expect("checked");
                let mut n = 0;
                for d in docs {
                    n += model.encode_with(splitter, d)?.offsets.len();
                }
                n
            }
            TaskKind::EncodeBatch => {
                let model = options.model.as_ref().expect("checked");
                model
                    .encode_batch_with(splitter, docs)?
                    .iter()
                    .map(|e| e.len())
                    .sum()
            }
            TaskKind::Train => train_bpe_with(
                splitter,
                docs,
                options.train_vocab_size,
                options.train_min_frequency,
            )?
            .vocab_size(),
        })
    };

    let mut output_units = 0;
    for _ in 0..options.warmup {
        output_units = std::hint::black_box(run()?);
    }
    let mut samples_ms = Vec::with_capacity(task.repetitions);
    for _ in 0..task.repetitions {
        let start = Instant::now();
        output_units = std::hint::black_box(run()?);
        let end = Instant::now();
        let elapsed = end
            .checked_duration_since(start)
            .ok_or_else(|| BenchError::ClockError {
                task: format!("{}/{}", task.kind, task.backend),
            })?;
        samples_ms.push(as_ms(elapsed));
    }
    let (mean_ms, std_error_ms) = mean_and_std_error(&samples_ms);
    Ok(Measurement {
        task: task.kind,
        backend: task.backend,
        corpus: corpus.name.clone(),
        input_bytes: corpus.bytes,
        throughput_mb_s: corpus.bytes as f64 / 1e6 / (mean_ms / 1e3),
        samples_ms,
        mean_ms,
        std_error_ms,
        output_units,
    })
}

fn as_ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl BenchReport {
    pub fn ratio(&self, task: TaskKind) -> Option<f64> {
        self.ratios.iter().find(|r| r.task == task).map(|r| r.ratio)
    }

    pub fn measurement(&self, task: TaskKind, backend: Backend) -> Option<&Measurement> {
        self.measurements
            .iter()
            .find(|m| m.task == task && m.backend == backend)
    }

    /// Fixed-column table: throughput, time and standard error per backend,
    /// then the ratio and the reference ratio.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<18} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10} {:>8} {:>9}",
            "", "MB/s", "MB/s", "time ms", "time ms", "se ms", "se ms", "ratio", "reference"
        );
        let _ = writeln!(
            out,
            "{:<18} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10} {:>8} {:>9}",
            "task", "oracle", "peek2", "oracle", "peek2", "oracle", "peek2", "", ""
        );
        let cell = |m: Option<&Measurement>, f: fn(&Measurement) -> f64, prec: usize| {
            m.map_or_else(|| "-".to_string(), |m| format!("{:.*}", prec, f(m)))
        };
        for kind in TaskKind::ALL {
            let o = self.measurement(kind, Backend::Oracle);
            let p = self.measurement(kind, Backend::Peek2);
            if o.is_none() && p.is_none() {
                continue;
            }
            let _ = writeln!(
                out,
                "{:<18} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10} {:>8} {:>9}",
                kind.name(),
                cell(o, |m| m.throughput_mb_s, 3),
                cell(p, |m| m.throughput_mb_s, 3),
                cell(o, |m| m.mean_ms, 3),
                cell(p, |m| m.mean_ms, 3),
                cell(o, |m| m.std_error_ms, 3),
                cell(p, |m| m.std_error_ms, 3),
                self.ratio(kind).map_or("-".into(), |r| format!("{r:.3}")),
                kind.reference_ratio()
                    .map_or("-".into(), |r| format!("{r:.3}")),
            );
        }
        let _ = writeln!(out, "threads: {}", self.threads);
        out
    }

    /// One JSON object per measurement, then one per ratio.
    pub fn write_jsonl(&self, mut out: impl Write) -> io::Result<()> {
        for m in &self.measurements {
            serde_json::to_writer(
                &mut out,
                &serde_json::json!({ "measurement": m, "threads": self.threads }),
            )?;
            out.write_all(b"\n")?;
        }
        for r in &self.ratios {
            serde_json::to_writer(&mut out, &serde_json::json!({ "ratio": r }))?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp_corpus(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("peek2-bench-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        path
    }

    #[test]
    fn std_error_formula() {
        let (mean, se) = mean_and_std_error(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(mean, 2.5);
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((se - sd / 2.0).abs() < 1e-12);
    }

    #[test]
    fn empty_corpus_is_missing_fixture() {
        let path = tmp_corpus("empty.txt", "");
        let tasks = BenchTask::pairs(&[TaskKind::PretokenizeOnly], &path, 3);
        let err = run_bench(&tasks, &BenchOptions::default()).unwrap_err();
        assert!(matches!(err, BenchError::MissingFixture(_)), "{err}");
        let err = run_bench(
            &BenchTask::pairs(&[TaskKind::PretokenizeOnly], path.with_file_name("nope"), 3),
            &BenchOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, BenchError::MissingFixture(_)));
    }

    #[test]
    fn too_few_repetitions() {
        let path = tmp_corpus("one.txt", "hello\n");
        let err = run_bench(
            &BenchTask::pairs(&[TaskKind::PretokenizeOnly], &path, 2),
            &BenchOptions::default(),
        );
        assert!(matches!(err, Err(BenchError::Config(_))));
    }

    #[test]
    fn encode_without_model_is_missing_fixture() {
        let path = tmp_corpus("two.txt", "hello\n");
        let err = run_bench(
            &BenchTask::pairs(&[TaskKind::Encode], &path, 3),
            &BenchOptions::default(),
        );
        assert!(matches!(err, Err(BenchError::MissingFixture(_))));
    }

    #[test]
    fn report_is_consistent() {
        let body = "The quick brown fox's 12345 jumps\n  over\tthe lazy dog!!\n".repeat(50);
        let path = tmp_corpus("small.txt", &body);
        let options = BenchOptions {
            warmup: 0,
            model: Some(BpeModel::bytes_only()),
            train_vocab_size: 300,
            train_min_frequency: 2,
        };
        let report = run_bench(&BenchTask::pairs(&TaskKind::ALL, &path, 3), &options).unwrap();
        assert_eq!(report.measurements.len(), 10);
        assert_eq!(report.ratios.len(), 5);
        for m in &report.measurements {
            assert_eq!(m.samples_ms.len(), 3);
            let expect = m.input_bytes as f64 / 1e6 / (m.mean_ms / 1e3);
            assert!((m.throughput_mb_s - expect).abs() <= 1e-9 * expect);
        }
        for kind in TaskKind::ALL {
            let p = report.measurement(kind, Backend::Peek2).unwrap();
            let o = report.measurement(kind, Backend::Oracle).unwrap();
            assert_eq!(p.output_units, o.output_units, "{kind}");
        }
        let table = report.to_table();
        assert!(
            table.contains("encode-batch") && table.contains("1.112"),
            "{table}"
        );
        let mut jsonl = Vec::new();
        report.write_jsonl(&mut jsonl).unwrap();
        assert_eq!(String::from_utf8(jsonl).unwrap().lines().count(), 15);
    }
}
