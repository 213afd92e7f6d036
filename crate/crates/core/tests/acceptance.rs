//! Acceptance checks, one `PASS`/`FAIL` line per criterion. Exits non-zero
//! if any criterion fails.

use std::hint::black_box;
use std::time::Instant;

use peek2::bench::{run_bench, BenchOptions, BenchTask, TaskKind};
use peek2::bpe::{train_bpe, BpeModel};
use peek2::differential::corpus::{
    model_fixture, multilingual_fixture, read_documents, training_fixture, worked_examples_fixture,
    WORKED_EXAMPLES,
};
use peek2::differential::{diff_corpus, diff_corpus_with, fuzz, fuzz_with, FuzzConfig};
use peek2::oracle::Oracle;
use peek2::{Branch, Category, DecisionTable, Peek2, Splitter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

type Check = Result<Outcome, Box<dyn std::error::Error>>;

fn outcome(passed: bool, detail: String) -> Check {
    Ok(Outcome { passed, detail })
}

// Criterion 1: zero boundary mismatches on the corpus, the worked examples
// and a million seeded fuzz cases.

fn worked_examples_agree(splitter: &dyn Splitter) -> Result<usize, Box<dyn std::error::Error>> {
    let mut bad = 0;
    for (text, expected) in WORKED_EXAMPLES {
        let ours: Vec<&str> = splitter.split(text)?.iter().map(|s| s.text(text)).collect();
        let theirs: Vec<&str> = Oracle::global()
            .split(text)?
            .iter()
            .map(|s| s.text(text))
            .collect();
        if ours != *expected || theirs != *expected {
            bad += 1;
        }
    }
    Ok(bad)
}

fn exact_conformance() -> Check {
    let docs = read_documents(multilingual_fixture())?;
    let bytes: usize = docs.iter().map(Vec::len).sum::<usize>() + docs.len();
    let per_line = diff_corpus(&docs)?;
    let whole = diff_corpus(&[std::fs::read(multilingual_fixture())?])?;
    let worked_bad = worked_examples_agree(&Peek2::new())?;
    let worked_file = diff_corpus(&read_documents(worked_examples_fixture())?)?;

    let started = Instant::now();
    let fuzzed = fuzz(&FuzzConfig {
        seed: 0,
        case_count: 1_000_000,
        max_len: 64,
        ..FuzzConfig::default()
    })?;
    let fuzz_secs = started.elapsed().as_secs_f64();

    let corpus_mismatches = per_line.mismatches.len() + whole.mismatches.len();
    let passed = corpus_mismatches == 0
        && per_line.invalid_documents.is_empty()
        && worked_bad == 0
        && worked_file.passed()
        && fuzzed.passed()
        && fuzzed.inputs_tested == 1_000_000;
    outcome(
        passed,
        format!(
            "corpus {bytes} bytes / {} documents: {} mismatches per line, {} as one document; \
             worked examples {}/{} exact; fuzz seed 0: {} cases, {} scalars, {} mismatches ({fuzz_secs:.1}s)",
            per_line.inputs_tested,
            per_line.mismatches.len(),
            whole.mismatches.len(),
            WORKED_EXAMPLES.len() - worked_bad,
            WORKED_EXAMPLES.len(),
            fuzzed.inputs_tested,
            fuzzed.scalars_tested,
            fuzzed.mismatches.len()
        ),
    )
}

// Criterion 2: every cell of the table agrees with the oracle's first
// matching alternative.

fn representatives(cat: Category) -> &'static [&'static str] {
    match cat {
        Category::Other => &["!", ".", "\u{2019}", "\u{1F600}", "\u{0301}"],
        Category::Space => &[" "],
        Category::Quote => &["'"],
        Category::LineFeed => &["\n", "\r"],
        Category::Letter => &["a", "s", "L", "\u{4E2D}", "\u{017F}"],
        Category::Whitespace => &["\t", "\u{00A0}", "\u{3000}", "\u{2028}"],
        Category::Number => &["7", "\u{0663}", "\u{00BD}", "\u{2167}"],
        Category::Eos => &[""],
    }
}

/// Third scalars appended after a pair, so single-member categories still get
/// several probes per cell.
const SUFFIXES: &[&str] = &["", "a", " ", "7", "!", "\n"];

struct CellProbe {
    first: Category,
    second: Category,
    probe: String,
    oracle_branch: Branch,
    oracle_first: usize,
}

fn cell_probes() -> Result<Vec<CellProbe>, Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    for first in Category::SCALAR {
        for second in Category::COLUMNS {
            for a in representatives(first) {
                for b in representatives(second) {
                    let suffixes: &[&str] = if second == Category::Eos {
                        &[""]
                    } else {
                        SUFFIXES
                    };
                    for suffix in suffixes {
                        let probe = format!("{a}{b}{suffix}");
                        let (branch, seg) = Oracle::global()
                            .first_branch(&probe)?
                            .ok_or("oracle found no first match")?;
                        out.push(CellProbe {
                            first,
                            second,
                            probe,
                            oracle_branch: branch,
                            oracle_first: seg.end,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Probes that disagree with `table`.
fn table_disagreements<'a>(table: &DecisionTable, probes: &'a [CellProbe]) -> Vec<&'a CellProbe> {
    let splitter = Peek2::with_table(*table);
    probes
        .iter()
        .filter(|p| {
            let ours = table.decide(p.first, p.second);
            let first_seg = splitter.segments(&p.probe).next().map_or(0, |s| s.end);
            let same_segment = first_seg == p.oracle_first;
            let fallback_cell = p.first == Category::Quote && p.second == Category::Letter;
            let branch_ok = ours == p.oracle_branch
                || (fallback_cell
                    && ours == Branch::Contraction
                    && p.oracle_branch == Branch::Word);
            !(branch_ok && same_segment)
        })
        .collect()
}

fn decision_table_derivation(probes: &[CellProbe]) -> Check {
    let mut per_cell = [[0usize; 8]; 7];
    for p in probes {
        per_cell[p.first.index()][p.second.index()] += 1;
    }
    let min_pairs = (0..7)
        .flat_map(|r| (0..7).map(move |c| (r, c)))
        .map(|(r, c)| per_cell[r][c])
        .min()
        .unwrap_or(0);
    let eos_min = (0..7).map(|r| per_cell[r][7]).min().unwrap_or(0);
    let bad = table_disagreements(&DecisionTable::CL100K, probes);
    for p in bad.iter().take(5) {
        println!(
            "    disagreement {:?}: table {}, oracle {}",
            p.probe,
            DecisionTable::CL100K.decide(p.first, p.second),
            p.oracle_branch
        );
    }
    outcome(
        bad.is_empty() && min_pairs >= 3 && eos_min >= 1,
        format!(
            "{} probes over 49 + 7 cells (at least {min_pairs} per scalar cell, {eos_min} per end-of-input cell): {} disagreements",
            probes.len(),
            bad.len()
        ),
    )
}

// Criterion 3: time grows linearly on adversarial inputs.

fn family(name: &str, bytes: usize) -> String {
    let unit = match name {
        "all-quotes" => "'",
        "all-digits" => "7",
        "space-letter" => " a",
        "newline-clusters" => "\r\n\n \n\t\r\n  x",
        _ => unreachable!(),
    };
    unit.repeat(bytes.div_ceil(unit.len()))
}

fn min_time(text: &str, reps: usize) -> f64 {
    let splitter = Peek2::new();
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            black_box(splitter.segments(black_box(text)).count());
            t.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn linear_complexity() -> Check {
    let mut details = Vec::new();
    let mut passed = true;
    for name in [
        "all-quotes",
        "all-digits",
        "space-letter",
        "newline-clusters",
    ] {
        let small = family(name, 100_000);
        let large = family(name, 1_000_000);
        min_time(&large, 2);
        let mut ratio = 0.0;
        let mut attempts = 0;
        // Re-measure a noisy ratio up to twice more before judging it.
        while attempts < 3 {
            attempts += 1;
            ratio = min_time(&large, 9) / min_time(&small, 45);
            if (7.0..=13.0).contains(&ratio) {
                break;
            }
        }
        passed &= (7.0..=13.0).contains(&ratio);
        details.push(format!("{name} {ratio:.2}"));
    }
    outcome(
        passed,
        format!("time(1 MB)/time(100 KB): {}", details.join(", ")),
    )
}

// Criterion 4: peek2 outpaces the regex backend.

fn relative_performance() -> Check {
    let corpus = multilingual_fixture();
    let tokenize = run_bench(
        &BenchTask::pairs(&[TaskKind::PretokenizeOnly], &corpus, 5),
        &BenchOptions::default(),
    )?;
    let (vocab, merges) = model_fixture();
    let batch = run_bench(
        &BenchTask::pairs(&[TaskKind::EncodeBatch], &corpus, 3),
        &BenchOptions {
            model: Some(BpeModel::load_files(vocab, merges)?),
            ..BenchOptions::default()
        },
    )?;
    let ratio = tokenize
        .ratio(TaskKind::PretokenizeOnly)
        .ok_or("no ratio")?;
    let batch_ratio = batch.ratio(TaskKind::EncodeBatch).ok_or("no ratio")?;
    outcome(
        ratio > 1.0,
        format!(
            "pretokenize-only peek2/oracle throughput {ratio:.2}x; encode-batch {batch_ratio:.2}x \
             (reference {:.2}x, informational, {} thread(s))",
            TaskKind::EncodeBatch.reference_ratio().unwrap_or(f64::NAN),
            batch.threads
        ),
    )
}

// Criterion 5: BPE round trip, batch equivalence, deterministic training.

fn bpe_properties() -> Check {
    let (vocab, merges) = model_fixture();
    let model = BpeModel::load_files(vocab, merges)?;
    let mut round_trip_docs = 0;
    let mut round_trip_ok = true;
    for path in [
        multilingual_fixture(),
        training_fixture(),
        worked_examples_fixture(),
    ] {
        let whole = std::fs::read(&path)?;
        round_trip_ok &= model.decode(&model.encode_bytes(&whole)?.ids) == whole;
        for doc in read_documents(&path)? {
            round_trip_ok &= model.decode(&model.encode_bytes(&doc)?.ids) == doc;
            round_trip_docs += 1;
        }
    }

    let train_docs: Vec<String> = std::fs::read_to_string(training_fixture())?
        .lines()
        .map(str::to_string)
        .collect();
    let batch = model.encode_batch(&train_docs)?;
    let sequential: Vec<_> = train_docs.iter().map(|d| model.encode(d)).collect();
    let batch_ok = train_docs.len() == 1000 && batch == sequential;

    let train_in = |threads: usize| -> Result<BpeModel, Box<dyn std::error::Error>> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()?;
        Ok(pool.install(|| train_bpe(&train_docs, 1024, 2))?)
    };
    let runs = [train_in(1)?, train_in(1)?, train_in(2)?, train_in(4)?];
    let deterministic = runs.iter().all(|m| {
        m.to_vocab_json() == runs[0].to_vocab_json()
            && m.to_merges_text() == runs[0].to_merges_text()
    });

    outcome(
        round_trip_ok && batch_ok && deterministic,
        format!(
            "round trip on {round_trip_docs} fixture documents + 3 whole files: {}; \
             encode_batch vs sequential on {} documents: {}; training on 1/1/2/4 threads: {} ({} merges)",
            if round_trip_ok { "exact" } else { "BROKEN" },
            train_docs.len(),
            if batch_ok { "equal" } else { "DIFFERENT" },
            if deterministic { "identical" } else { "DIFFERENT" },
            runs[0].merges().len()
        ),
    )
}

// Criterion 6: a single flipped cell is caught by criterion 1 or 2.

fn mutant_fails_conformance(table: DecisionTable) -> Result<bool, Box<dyn std::error::Error>> {
    let mutant = Peek2::with_table(table);
    if worked_examples_agree(&mutant)? > 0 {
        return Ok(true);
    }
    let docs = read_documents(multilingual_fixture())?;
    if !diff_corpus_with(&docs[..500], &mutant, Oracle::global())?.passed() {
        return Ok(true);
    }
    let cfg = FuzzConfig {
        seed: 0,
        case_count: 20_000,
        ..FuzzConfig::default()
    };
    Ok(!fuzz_with(&cfg, &mutant, Oracle::global())?.passed())
}

fn mutation_sanity(probes: &[CellProbe]) -> Check {
    let cells: Vec<(Category, Category)> = Category::SCALAR
        .iter()
        .flat_map(|&r| Category::COLUMNS.iter().map(move |&c| (r, c)))
        .collect();

    // Every possible single-cell flip against criterion 2.
    let mut flips = 0;
    let mut missed = Vec::new();
    for &(r, c) in &cells {
        for b in Branch::ALL {
            if b == DecisionTable::CL100K.decide(r, c) {
                continue;
            }
            flips += 1;
            let mutant = DecisionTable::CL100K.with_cell(r, c, b);
            if table_disagreements(&mutant, probes).is_empty() {
                missed.push(format!("({},{})->{b}", r.index(), c.index()));
            }
        }
    }

    // Seeded random flips also run against criterion 1.
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut spot = Vec::new();
    let mut spot_ok = true;
    for _ in 0..8 {
        let (r, c) = cells[rng.random_range(0..cells.len())];
        let current = DecisionTable::CL100K.decide(r, c);
        let others: Vec<Branch> = Branch::ALL.into_iter().filter(|&b| b != current).collect();
        let b = others[rng.random_range(0..others.len())];
        let mutant = DecisionTable::CL100K.with_cell(r, c, b);
        let by2 = !table_disagreements(&mutant, probes).is_empty();
        let by1 = mutant_fails_conformance(mutant)?;
        spot_ok &= by1 || by2;
        let tag = match (by1, by2) {
            (true, true) => "1+2",
            (true, false) => "1",
            (false, true) => "2",
            (false, false) => "MISSED",
        };
        spot.push(format!("({},{})->{}:{tag}", r.index(), c.index(), b.id()));
    }
    for m in missed.iter().take(5) {
        println!("    undetected flip {m}");
    }
    outcome(
        missed.is_empty() && spot_ok,
        format!(
            "all {flips} single-cell flips caught by criterion 2 ({} missed); random spot checks [{}]",
            missed.len(),
            spot.join(" ")
        ),
    )
}

fn main() {
    let mut all_passed = true;
    let mut report = |n: usize, name: &str, result: Check| {
        let (passed, detail) = match result {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all_passed &= passed;
        println!(
            "criterion {n} {name}: {} ({detail})",
            if passed { "PASS" } else { "FAIL" }
        );
    };

    report(1, "exact conformance", exact_conformance());
    match cell_probes() {
        Ok(probes) => {
            report(
                2,
                "decision table derivation",
                decision_table_derivation(&probes),
            );
            report(3, "linear complexity", linear_complexity());
            report(4, "relative performance", relative_performance());
            report(5, "bpe properties", bpe_properties());
            report(6, "mutation sanity", mutation_sanity(&probes));
        }
        Err(e) => {
            report(2, "decision table derivation", Err(e));
            report(3, "linear complexity", linear_complexity());
            report(4, "relative performance", relative_performance());
            report(5, "bpe properties", bpe_properties());
            report(6, "mutation sanity", outcome(false, "no probes".into()));
        }
    }

    if !all_passed {
        std::process::exit(1);
    }
}
