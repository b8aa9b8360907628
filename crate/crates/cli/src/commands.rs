//! Command implementations shared between the binary and the test suites.

use std::fs;
use std::path::Path;
use std::rc::Rc;
use std::time::{Duration, Instant};

use safa_core::algebra::bdd::BvAlgebra;
use safa_core::algebra::interval::IntervalAlgebra;
use safa_core::baseline::{determinize, hk_equiv, reverse_check_config, reverse_check_equiv,
    sfa_check_equiv, sfa_intersect, Sfa};
use safa_core::equivalence::{check_config_equiv, check_equiv};
use safa_core::frontends::{parse_ltlf, parse_regex, reference_match, regex_to_sfa, Ltlf, RegexAst};
use safa_core::pbf::PbfId;
use safa_core::safa::{Safa, SafaBuilder};
use safa_core::{parse_automaton, parse_automaton_sharing, parse_pbf, Algebra, AnyAutomaton,
    EngineStats, Verdict};

use crate::query::{parse_query, Check, RegexQuery, Term};
use crate::record::{Engine, RunRecord, StatsRecord};
use crate::CliError;

/// Options shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct RunOpts {
    pub engine: Engine,
    pub timeout_ms: u64,
}

/// Default per-case timeout; regex-experiment scale.
pub const DEFAULT_TIMEOUT_MS: u64 = 20_000;
/// Default timeout for formula-satisfiability cases, which are batched at a
/// much smaller per-case budget.
pub const LTLF_TIMEOUT_MS: u64 = 5_000;

/// Render a counterexample word for diagnostics and JSON output.
pub trait WordRender: Algebra {
    fn render_word(&self, w: &[Self::Char]) -> String;
}

impl WordRender for IntervalAlgebra {
    fn render_word(&self, w: &[u32]) -> String {
        let codes: Vec<String> = w.iter().map(|c| c.to_string()).collect();
        let text: Option<String> = w
            .iter()
            .map(|&c| char::from_u32(c).filter(|ch| !ch.is_control()))
            .collect();
        match text {
            Some(s) => format!("\"{}\" [{}]", s.escape_default(), codes.join(" ")),
            None => format!("[{}]", codes.join(" ")),
        }
    }
}

impl WordRender for BvAlgebra {
    fn render_word(&self, w: &[u64]) -> String {
        if w.is_empty() {
            return "(empty trace)".to_string();
        }
        w.iter()
            .map(|&c| format!("{{{}}}", self.decode_char(c).join(" ")))
            .collect::<Vec<_>>()
            .join(" ; ")
    }
}

fn deadline_for(start: Instant, timeout_ms: u64) -> Option<Instant> {
    Some(start + Duration::from_millis(timeout_ms))
}

/// Language equivalence of two automata under the selected engine.
pub fn equiv_verdict<A: Algebra>(
    engine: Engine,
    m1: &Safa<A>,
    m2: &Safa<A>,
    deadline: Option<Instant>,
) -> safa_core::Result<(Verdict<A::Char>, EngineStats)> {
    match engine {
        Engine::Bisim => {
            let r = check_equiv(m1, m2, deadline)?;
            Ok((r.verdict, r.stats))
        }
        Engine::ReverseSfa => reverse_check_equiv(m1, m2, deadline),
        Engine::SfaEq => sfa_check_equiv(m1, m2, deadline),
    }
}

/// Equivalence of two configurations of one automaton under the selected
/// engine.
pub fn config_verdict<A: Algebra>(
    engine: Engine,
    m: &Safa<A>,
    p: PbfId,
    q: PbfId,
    deadline: Option<Instant>,
) -> safa_core::Result<(Verdict<A::Char>, EngineStats)> {
    match engine {
        Engine::Bisim => {
            let r = check_config_equiv(m, p, q, deadline)?;
            Ok((r.verdict, r.stats))
        }
        Engine::ReverseSfa => reverse_check_config(m, p, q, deadline),
        Engine::SfaEq => {
            let ma = m.with_initial(p)?;
            let mb = m.with_initial(q)?;
            sfa_check_equiv(&ma, &mb, deadline)
        }
    }
}

struct Outcome {
    verdict: String,
    counterexample: Option<String>,
    stats: StatsRecord,
    timed_out: bool,
}

fn outcome<A: WordRender>(
    alg: &A,
    verdict: &Verdict<A::Char>,
    stats: &EngineStats,
    yes: &str,
    no: &str,
) -> Outcome {
    match verdict {
        Verdict::Equivalent => Outcome {
            verdict: yes.to_string(),
            counterexample: None,
            stats: stats.into(),
            timed_out: false,
        },
        Verdict::NotEquivalent { counterexample } => Outcome {
            verdict: no.to_string(),
            counterexample: Some(alg.render_word(counterexample)),
            stats: stats.into(),
            timed_out: false,
        },
        Verdict::Timeout => Outcome {
            verdict: "timeout".to_string(),
            counterexample: None,
            stats: stats.into(),
            timed_out: true,
        },
    }
}

fn record(
    command: &str,
    opts: RunOpts,
    inputs: Vec<String>,
    out: Outcome,
    start: Instant,
) -> RunRecord {
    let elapsed = start.elapsed().as_millis() as u64;
    RunRecord {
        command: command.to_string(),
        engine: opts.engine.name().to_string(),
        inputs,
        verdict: out.verdict,
        counterexample: out.counterexample,
        stats: out.stats,
        // cooperative polling can overshoot slightly; clamp when flagged
        wall_time_ms: if out.timed_out {
            elapsed.min(opts.timeout_ms)
        } else {
            elapsed
        },
        timed_out: out.timed_out,
        error: None,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_file(path: &Path) -> Result<AnyAutomaton, CliError> {
    parse_automaton(&read(path)?).map_err(|e| CliError::InFile {
        path: path.display().to_string(),
        source: e,
    })
}

/// `equiv A B` or `equiv A --left P --right Q`.
pub fn run_equiv(
    file_a: &Path,
    file_b: Option<&Path>,
    left: Option<&str>,
    right: Option<&str>,
    opts: RunOpts,
) -> Result<RunRecord, CliError> {
    let a = parse_file(file_a)?;
    let start = Instant::now();
    let deadline = deadline_for(start, opts.timeout_ms);
    match (file_b, left, right) {
        (Some(fb), None, None) => {
            let b = parse_automaton_sharing(&read(fb)?, &a).map_err(|e| CliError::InFile {
                path: fb.display().to_string(),
                source: e,
            })?;
            let inputs = vec![file_a.display().to_string(), fb.display().to_string()];
            match (a, b) {
                (AnyAutomaton::Interval(m1), AnyAutomaton::Interval(m2)) => {
                    equiv_record("equiv", &m1, &m2, opts, inputs)
                }
                (AnyAutomaton::Bv(m1), AnyAutomaton::Bv(m2)) => {
                    equiv_record("equiv", &m1, &m2, opts, inputs)
                }
                _ => Err(CliError::Usage(
                    "the two files use different algebras".into(),
                )),
            }
        }
        (None, Some(l), Some(r)) => {
            let inputs = vec![
                file_a.display().to_string(),
                format!("left={l}"),
                format!("right={r}"),
            ];
            match &a {
                AnyAutomaton::Interval(m) => {
                    finish_config(m, l, r, opts, inputs, start, deadline)
                }
                AnyAutomaton::Bv(m) => finish_config(m, l, r, opts, inputs, start, deadline),
            }
        }
        _ => Err(CliError::Usage(
            "provide either a second automaton file, or --left and --right \
             configuration formulas over the first file"
                .into(),
        )),
    }
}

/// Language equivalence of two in-memory automata, with counterexample
/// re-verification; the bench harness also calls this for generated cases.
pub fn equiv_record<A: WordRender>(
    command: &str,
    m1: &Safa<A>,
    m2: &Safa<A>,
    opts: RunOpts,
    inputs: Vec<String>,
) -> Result<RunRecord, CliError> {
    let start = Instant::now();
    let deadline = deadline_for(start, opts.timeout_ms);
    let (verdict, stats) = equiv_verdict(opts.engine, m1, m2, deadline)?;
    if let Some(w) = verdict.counterexample() {
        if m1.accepts(w)? == m2.accepts(w)? {
            return Err(CliError::BadCounterexample);
        }
    }
    let out = outcome(m1.algebra(), &verdict, &stats, "equivalent", "inequivalent");
    Ok(record(command, opts, inputs, out, start))
}

fn finish_config<A: WordRender>(
    m: &Safa<A>,
    left: &str,
    right: &str,
    opts: RunOpts,
    inputs: Vec<String>,
    start: Instant,
    deadline: Option<Instant>,
) -> Result<RunRecord, CliError> {
    let p = parse_pbf(m.pool(), left, 0)?;
    let q = parse_pbf(m.pool(), right, 0)?;
    let (verdict, stats) = config_verdict(opts.engine, m, p, q, deadline)?;
    if let Some(w) = verdict.counterexample() {
        if m.accepts_from(p, w)? == m.accepts_from(q, w)? {
            return Err(CliError::BadCounterexample);
        }
    }
    let out = outcome(m.algebra(), &verdict, &stats, "equivalent", "inequivalent");
    Ok(record("equiv", opts, inputs, out, start))
}

/// `empty FILE`: is the automaton's language empty?
pub fn run_empty(file: &Path, opts: RunOpts) -> Result<RunRecord, CliError> {
    let a = parse_file(file)?;
    let start = Instant::now();
    let deadline = deadline_for(start, opts.timeout_ms);
    let inputs = vec![file.display().to_string()];
    match &a {
        AnyAutomaton::Interval(m) => finish_empty(m, opts, inputs, start, deadline),
        AnyAutomaton::Bv(m) => finish_empty(m, opts, inputs, start, deadline),
    }
}

fn finish_empty<A: WordRender>(
    m: &Safa<A>,
    opts: RunOpts,
    inputs: Vec<String>,
    start: Instant,
    deadline: Option<Instant>,
) -> Result<RunRecord, CliError> {
    let bot = m.pool().mk_false();
    let (verdict, stats) = config_verdict(opts.engine, m, m.initial(), bot, deadline)?;
    if let Some(w) = verdict.counterexample() {
        if !m.accepts(w)? {
            return Err(CliError::BadCounterexample);
        }
    }
    let out = outcome(m.algebra(), &verdict, &stats, "empty", "nonempty");
    Ok(record("empty", opts, inputs, out, start))
}

/// `ltlf-sat FILE`: satisfiability of the formula in the file (comments
/// stripped, remaining lines joined).
pub fn run_ltlf_sat(file: &Path, opts: RunOpts) -> Result<RunRecord, CliError> {
    let text: String = read(file)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let f = parse_ltlf(&text)?;
    let inputs = vec![file.display().to_string(), f.format()];
    ltlf_sat_record(&f, opts, inputs)
}

/// Satisfiability of an already-parsed formula; used by the bench harness.
pub fn ltlf_sat_record(
    f: &Ltlf,
    opts: RunOpts,
    inputs: Vec<String>,
) -> Result<RunRecord, CliError> {
    let m = f.to_safa()?;
    let start = Instant::now();
    let deadline = deadline_for(start, opts.timeout_ms);
    let bot = m.pool().mk_false();
    let (verdict, stats) = config_verdict(opts.engine, &m, m.initial(), bot, deadline)?;
    if let Some(w) = verdict.counterexample() {
        let ok = if w.is_empty() { f.empty_val() } else { f.eval_trace(w) };
        if !ok || !m.accepts(w)? {
            return Err(CliError::BadCounterexample);
        }
    }
    // emptiness inverted: a counterexample to emptiness is a satisfying trace
    let out = outcome(m.algebra(), &verdict, &stats, "unsat", "sat");
    Ok(record("ltlf-sat", opts, inputs, out, start))
}

/// One automaton per pattern instance, glued into a single state space so
/// intersections become conjunctions of initial configurations.
struct CombinedRegexes {
    machine: Safa<IntervalAlgebra>,
    /// Initial configuration per component, aligned with the instance list
    /// passed to [`combine`].
    configs: Vec<PbfId>,
}

fn combine(
    alg: Rc<IntervalAlgebra>,
    parts: &[Sfa<IntervalAlgebra>],
) -> safa_core::Result<CombinedRegexes> {
    let total: u32 = parts.iter().map(|s| s.state_count()).sum();
    let mut b = SafaBuilder::new(alg, total);
    let mut configs = Vec::new();
    let mut offset = 0u32;
    for sfa in parts {
        let init = sfa.initial().iter().fold(b.pool().mk_false(), |acc, &s| {
            let leaf = b.pool().mk_state(offset + s);
            b.pool().mk_or(acc, leaf)
        });
        configs.push(init);
        for s in 0..sfa.state_count() {
            if sfa.is_final(s) {
                b.add_final(offset + s);
            }
            for (g, t) in sfa.transitions_from(s) {
                let leaf = b.pool().mk_state(offset + t);
                b.add_transition(offset + s, g.clone(), leaf);
            }
        }
        offset += sfa.state_count();
    }
    let placeholder = configs.first().copied().unwrap_or(b.pool().mk_false());
    b.initial(placeholder);
    Ok(CombinedRegexes {
        machine: b.build()?,
        configs,
    })
}

/// `regex QUERYFILE`: run every `check:` equation in the file.
pub fn run_regex(file: &Path, opts: RunOpts) -> Result<Vec<RunRecord>, CliError> {
    let q = parse_query(&read(file)?)?;
    let name = file.display().to_string();
    q.checks
        .iter()
        .map(|c| run_regex_check(&q, c, &name, opts))
        .collect()
}

/// One forced-equivalence-style check over a parsed query.
pub fn run_regex_check(
    q: &RegexQuery,
    check: &Check,
    source: &str,
    opts: RunOpts,
) -> Result<RunRecord, CliError> {
    let asts: Vec<RegexAst> = q
        .patterns
        .iter()
        .map(|p| parse_regex(p))
        .collect::<safa_core::Result<_>>()?;
    let alg = Rc::new(IntervalAlgebra::new(0x10FFFF));
    let inputs = vec![source.to_string(), check.text.clone()];
    let start = Instant::now();
    let deadline = deadline_for(start, opts.timeout_ms);

    // compile one automaton per distinct instance: shared per index for
    // plain terms, fresh per occurrence for primed (copy) terms
    let mut parts: Vec<Sfa<IntervalAlgebra>> = Vec::new();
    let mut shared: Vec<Option<usize>> = vec![None; q.patterns.len()];
    let mut sides: Vec<Vec<usize>> = Vec::new();
    for terms in [&check.lhs, &check.rhs] {
        let mut side = Vec::new();
        for t in terms {
            let slot = if t.copy {
                parts.push(regex_to_sfa(&asts[t.index - 1], alg.clone())?);
                parts.len() - 1
            } else {
                match shared[t.index - 1] {
                    Some(i) => i,
                    None => {
                        parts.push(regex_to_sfa(&asts[t.index - 1], alg.clone())?);
                        shared[t.index - 1] = Some(parts.len() - 1);
                        parts.len() - 1
                    }
                }
            };
            side.push(slot);
        }
        sides.push(side);
    }

    let (verdict, stats) = match opts.engine {
        Engine::SfaEq => {
            // classical baseline: intersect products, determinize, union-find
            let d1 = product_dfa(&parts, &sides[0])?;
            let d2 = product_dfa(&parts, &sides[1])?;
            hk_equiv(&d1, &d2, deadline)?
        }
        _ => {
            let combined = combine(alg.clone(), &parts)?;
            let conj = |idxs: &[usize]| {
                idxs.iter().fold(combined.machine.pool().mk_true(), |acc, &i| {
                    combined.machine.pool().mk_and(acc, combined.configs[i])
                })
            };
            let (lhs, rhs) = (conj(&sides[0]), conj(&sides[1]));
            config_verdict(opts.engine, &combined.machine, lhs, rhs, deadline)?
        }
    };

    if let Some(w) = verdict.counterexample() {
        let matches_side = |terms: &[Term]| {
            terms
                .iter()
                .all(|t| reference_match(&asts[t.index - 1], w))
        };
        if matches_side(&check.lhs) == matches_side(&check.rhs) {
            return Err(CliError::BadCounterexample);
        }
    }
    let out = outcome(&*alg, &verdict, &stats, "equivalent", "inequivalent");
    Ok(record("regex", opts, inputs, out, start))
}

fn product_dfa(
    parts: &[Sfa<IntervalAlgebra>],
    idxs: &[usize],
) -> safa_core::Result<safa_core::Dfa<IntervalAlgebra>> {
    match idxs {
        [] => unreachable!("check sides are nonempty by construction"),
        [single] => determinize(&parts[*single]),
        [a, b, rest @ ..] => {
            let mut acc = sfa_intersect(&parts[*a], &parts[*b])?;
            for &i in rest {
                acc = sfa_intersect(&acc, &parts[i])?;
            }
            determinize(&acc)
        }
    }
}
