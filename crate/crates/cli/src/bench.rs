//! Benchmark harness: run a manifest of cases under one or more engines and
//! collect records plus per-engine timeout counts.

use std::path::{Path, PathBuf};
use std::rc::Rc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use safa_core::algebra::interval::IntervalAlgebra;
use safa_core::gen::random_safa;
use safa_core::safa::Safa;

use crate::commands::{equiv_record, run_empty, run_ltlf_sat, run_regex, run_regex_check,
    RunOpts, DEFAULT_TIMEOUT_MS, LTLF_TIMEOUT_MS};
use crate::query::{parse_corpus, Check, RegexQuery, Term};
use crate::record::{Engine, RunRecord, StatsRecord};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct BenchOpts {
    pub engines: Vec<Engine>,
    /// Overrides every case's timeout when set; otherwise 20 s per case and
    /// 5 s for formula-satisfiability cases.
    pub timeout_ms: Option<u64>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EngineSummary {
    pub engine: String,
    pub cases: u64,
    pub equivalent: u64,
    pub inequivalent: u64,
    pub timeouts: u64,
    pub errors: u64,
    pub total_wall_ms: u64,
    pub total_pairs_explored: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub cases: Vec<RunRecord>,
    pub summary: Vec<EngineSummary>,
}

enum Case {
    Equiv(PathBuf, PathBuf),
    Empty(PathBuf),
    LtlfSat(PathBuf),
    Regex(PathBuf),
    /// Every `r_i ∩ r_j = r_i ∩ r_j ∩ r_j-copy` check over a corpus, i ≤ j.
    RegexForced(PathBuf),
    /// `count` seeded random automaton pairs over a 4-character alphabet.
    RandomEquiv(u32, u32),
}

fn parse_manifest(text: &str, dir: &Path) -> Result<Vec<Case>, CliError> {
    let mut cases = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::Usage(format!("manifest line {}: {msg}", i + 1));
        let mut tok = line.split_whitespace();
        let cmd = tok.next().unwrap();
        let path_arg = |tok: &mut dyn Iterator<Item = &str>| {
            tok.next()
                .map(|p| dir.join(p))
                .ok_or_else(|| bad(format!("`{cmd}` needs a file argument")))
        };
        let case = match cmd {
            "equiv" => Case::Equiv(path_arg(&mut tok)?, path_arg(&mut tok)?),
            "empty" => Case::Empty(path_arg(&mut tok)?),
            "ltlf-sat" => Case::LtlfSat(path_arg(&mut tok)?),
            "regex" => Case::Regex(path_arg(&mut tok)?),
            "regex-forced" => Case::RegexForced(path_arg(&mut tok)?),
            "random-equiv" => {
                let num = |t: Option<&str>| {
                    t.and_then(|s| s.parse::<u32>().ok())
                        .ok_or_else(|| bad("`random-equiv` needs <count> <max-states>".into()))
                };
                Case::RandomEquiv(num(tok.next())?, num(tok.next())?)
            }
            other => return Err(bad(format!("unknown directive `{other}`"))),
        };
        if tok.next().is_some() {
            return Err(bad("trailing arguments".into()));
        }
        cases.push(case);
    }
    Ok(cases)
}

fn error_record(command: &str, engine: Engine, inputs: Vec<String>, err: &CliError) -> RunRecord {
    RunRecord {
        command: command.to_string(),
        engine: engine.name().to_string(),
        inputs,
        verdict: "error".to_string(),
        counterexample: None,
        stats: StatsRecord::default(),
        wall_time_ms: 0,
        timed_out: false,
        error: Some(err.to_string()),
    }
}

/// Run the manifest; per-case failures become `error` records and the run
/// continues. Deterministic for a fixed seed.
pub fn run_bench(manifest: &Path, opts: &BenchOpts) -> Result<BenchReport, CliError> {
    let text = std::fs::read_to_string(manifest)
        .map_err(|e| CliError::Usage(format!("{}: {e}", manifest.display())))?;
    let dir = manifest.parent().unwrap_or(Path::new("."));
    let cases = parse_manifest(&text, dir)?;
    let mut records = Vec::new();
    for case in &cases {
        for &engine in &opts.engines {
            run_case(case, engine, opts, &mut records);
        }
    }
    let summary = summarize(&opts.engines, &records);
    Ok(BenchReport {
        seed: opts.seed,
        cases: records,
        summary,
    })
}

fn run_case(case: &Case, engine: Engine, opts: &BenchOpts, records: &mut Vec<RunRecord>) {
    let timeout = |default: u64| RunOpts {
        engine,
        timeout_ms: opts.timeout_ms.unwrap_or(default),
    };
    let ro = timeout(DEFAULT_TIMEOUT_MS);
    let push = |records: &mut Vec<RunRecord>,
                command: &str,
                inputs: Vec<String>,
                r: Result<RunRecord, CliError>| match r {
        Ok(rec) => records.push(rec),
        Err(e) => records.push(error_record(command, engine, inputs, &e)),
    };
    match case {
        Case::Equiv(a, b) => {
            let inputs = vec![a.display().to_string(), b.display().to_string()];
            let r = crate::commands::run_equiv(a, Some(b), None, None, ro);
            push(records, "equiv", inputs, r);
        }
        Case::Empty(f) => {
            let inputs = vec![f.display().to_string()];
            push(records, "empty", inputs, run_empty(f, ro));
        }
        Case::LtlfSat(f) => {
            let inputs = vec![f.display().to_string()];
            push(records, "ltlf-sat", inputs, run_ltlf_sat(f, timeout(LTLF_TIMEOUT_MS)));
        }
        Case::Regex(f) => {
            let inputs = vec![f.display().to_string()];
            match run_regex(f, ro) {
                Ok(rs) => records.extend(rs),
                Err(e) => records.push(error_record("regex", engine, inputs, &e)),
            }
        }
        Case::RegexForced(f) => run_forced(f, engine, ro, records),
        Case::RandomEquiv(count, max_states) => {
            run_random_equiv(*count, *max_states, engine, opts.seed, ro, records)
        }
    }
}

fn run_forced(corpus: &Path, engine: Engine, ro: RunOpts, records: &mut Vec<RunRecord>) {
    let name = corpus.display().to_string();
    let text = match std::fs::read_to_string(corpus) {
        Ok(t) => t,
        Err(e) => {
            let err = CliError::Usage(format!("{name}: {e}"));
            records.push(error_record("regex-forced", engine, vec![name], &err));
            return;
        }
    };
    let patterns = parse_corpus(&text);
    let q = RegexQuery {
        patterns: patterns.clone(),
        checks: Vec::new(),
    };
    for i in 1..=patterns.len() {
        for j in i..=patterns.len() {
            let check = Check {
                lhs: vec![Term { index: i, copy: false }, Term { index: j, copy: false }],
                rhs: vec![
                    Term { index: i, copy: false },
                    Term { index: j, copy: false },
                    Term { index: j, copy: true },
                ],
                text: format!("{i}&{j} = {i}&{j}&{j}'"),
            };
            let inputs = vec![name.clone(), check.text.clone()];
            match run_regex_check(&q, &check, &name, ro) {
                Ok(mut rec) => {
                    rec.command = "regex-forced".to_string();
                    records.push(rec);
                }
                Err(e) => records.push(error_record("regex-forced", engine, inputs, &e)),
            }
        }
    }
}

fn run_random_equiv(
    count: u32,
    max_states: u32,
    engine: Engine,
    seed: u64,
    ro: RunOpts,
    records: &mut Vec<RunRecord>,
) {
    // the generator stream depends only on the seed, not the engine list,
    // so every engine sees the same cases
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..count {
        let alg = Rc::new(IntervalAlgebra::new(3));
        let gen = |rng: &mut ChaCha8Rng| -> Result<Safa<IntervalAlgebra>, CliError> {
            random_safa(rng, alg.clone(), max_states).map_err(CliError::from)
        };
        let inputs = vec![format!("random-equiv seed={seed} case={i}")];
        let r = gen(&mut rng).and_then(|m1| {
            let m2 = gen(&mut rng)?;
            equiv_record("random-equiv", &m1, &m2, ro, inputs.clone())
        });
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => records.push(error_record("random-equiv", engine, inputs, &e)),
        }
    }
}

fn summarize(engines: &[Engine], records: &[RunRecord]) -> Vec<EngineSummary> {
    engines
        .iter()
        .map(|e| {
            let mine: Vec<&RunRecord> =
                records.iter().filter(|r| r.engine == e.name()).collect();
            let count_verdict =
                |v: &str| mine.iter().filter(|r| r.verdict == v).count() as u64;
            EngineSummary {
                engine: e.name().to_string(),
                cases: mine.len() as u64,
                equivalent: count_verdict("equivalent"),
                inequivalent: count_verdict("inequivalent"),
                timeouts: mine.iter().filter(|r| r.timed_out).count() as u64,
                errors: count_verdict("error"),
                total_wall_ms: mine.iter().map(|r| r.wall_time_ms).sum(),
                total_pairs_explored: mine.iter().map(|r| r.stats.pairs_explored).sum(),
            }
        })
        .collect()
}
