//! Acceptance suite: one criterion per test, each printing a single
//! PASS/FAIL line (visible with `--nocapture`). Oracles are independent of
//! the engines they check: truth tables, explicit trace and language
//! enumeration, model counting, and a reference regex matcher.

use std::path::{Path, PathBuf};
use std::rc::Rc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use safa_core::algebra::interval::IntervalAlgebra;
use safa_core::baseline::{reverse_check_config, reverse_check_empty, reverse_check_equiv,
    sfa_check_equiv, to_sfa};
use safa_core::congruence::{sat_to_congruence, CongruenceContext};
use safa_core::equivalence::{check_config_equiv, check_empty, check_equiv};
use safa_core::frontends::parse_ltlf;
use safa_core::gen::{random_cnf, random_ltlf, random_safa, random_word};
use safa_core::pbf::{Model, PbfId, PbfPool};
use safa_core::safa::SafaBuilder;
use safa_core::Algebra;

use safa_cli::{run_bench, BenchOpts, Engine};

fn report(n: u32, desc: &str, ok: bool) {
    println!("criterion {n}: {} — {desc}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {desc}");
}

fn asset(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("assets").join(name)
}

// ---------------------------------------------------------------- 1

#[test]
fn criterion_1_worked_example_replication() {
    // five states x=0 y=1 z=2 w=3 v=4 over guards {0}, [1,bound], {1}, ≠1
    let alg = Rc::new(IntervalAlgebra::new(9));
    let le0 = alg.from_ranges(&[(0, 0)]);
    let gt0 = alg.from_ranges(&[(1, 9)]);
    let eq1 = alg.singleton(1);
    let ne1 = alg.from_ranges(&[(0, 0), (2, 9)]);
    let top = alg.top();
    let mut b = SafaBuilder::new(alg, 5);
    let (x, y, z, w, v) = (
        b.pool().mk_state(0),
        b.pool().mk_state(1),
        b.pool().mk_state(2),
        b.pool().mk_state(3),
        b.pool().mk_state(4),
    );
    let x_or_y = b.pool().mk_or(x, y);
    let z_and_w = b.pool().mk_and(z, w);
    let yx_and_v = b.pool().mk_and(b.pool().mk_or(y, x), v);
    for s in 0..5 {
        b.add_final(s);
    }
    b.add_transition(4, le0.clone(), x_or_y);
    b.add_transition(4, gt0.clone(), z_and_w);
    b.add_transition(3, le0, z);
    b.add_transition(3, gt0, yx_and_v);
    b.add_transition(0, eq1, v);
    b.add_transition(1, ne1, w);
    b.add_transition(2, top, v);
    b.initial(v);
    let m = b.build().unwrap();

    let start = Instant::now();
    let r = check_config_equiv(&m, v, w, None).unwrap();
    let elapsed = start.elapsed();

    let pool = r.machine.pool();
    let (x, y, z, w, v) = (
        pool.mk_state(0),
        pool.mk_state(1),
        pool.mk_state(2),
        pool.mk_state(3),
        pool.mk_state(4),
    );
    let expected_relation = vec![(v, w), (pool.mk_or(x, y), z)];

    // replay the discovered relation and re-run the three closure checks
    let mut ctx = CongruenceContext::new();
    for &(p, q) in &r.relation {
        ctx.assert_pair(pool, p, q);
    }
    let closure_checks = ctx.in_closure(pool, pool.mk_and(z, w), pool.mk_and(pool.mk_or(y, x), v))
        && ctx.in_closure(pool, pool.mk_or(v, pool.mk_false()), v)
        && ctx.in_closure(pool, pool.mk_or(pool.mk_false(), w), v);

    let ok = r.verdict.is_equivalent()
        && r.relation == expected_relation
        && r.stats.pairs_explored == 2
        && r.stats.representatives == 2 * r.stats.pairs_explored
        && closure_checks
        && elapsed < Duration::from_millis(100);
    report(
        1,
        "five-state worked example replicated exactly (relation, class counts, closure checks, < 100 ms)",
        ok,
    );
}

// ---------------------------------------------------------------- 2

#[test]
fn criterion_2_cross_engine_exactness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20_24);
    let mut disagreements = 0u32;
    // one shared algebra instance so pairs can be disjoint-unioned
    let alg = Rc::new(IntervalAlgebra::new(3));
    let mut automata = Vec::new();
    for _ in 0..500 {
        automata.push(random_safa(&mut rng, alg.clone(), 5).unwrap());
    }
    for m in &automata {
        let bisim = check_empty(m, None).unwrap().verdict.is_equivalent();
        let (rev, _) = reverse_check_empty(m, None).unwrap();
        if bisim != rev.is_equivalent() {
            disagreements += 1;
        }
    }
    for pair in automata.chunks(2) {
        let [m1, m2] = pair else { continue };
        let bisim = check_equiv(m1, m2, None).unwrap().verdict.is_equivalent();
        let (rev, _) = reverse_check_equiv(m1, m2, None).unwrap();
        if bisim != rev.is_equivalent() {
            disagreements += 1;
        }
        if to_sfa(m1).is_ok() && to_sfa(m2).is_ok() {
            let (sfa, _) = sfa_check_equiv(m1, m2, None).unwrap();
            if bisim != sfa.is_equivalent() {
                disagreements += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        2,
        "bisimulation, reverse, and s-FA engines agree on 500 random automata (< 60 s)",
        disagreements == 0 && elapsed < Duration::from_secs(60),
    );
}

// ---------------------------------------------------------------- 3

#[test]
fn criterion_3_boolean_operation_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut failures = 0u32;
    for _ in 0..1000 {
        let alg = Rc::new(IntervalAlgebra::new(3));
        let m1 = random_safa(&mut rng, alg.clone(), 5).unwrap();
        let m2 = random_safa(&mut rng, alg.clone(), 5).unwrap();
        let union = m1.union(&m2).unwrap();
        let inter = m1.intersection(&m2).unwrap();
        let comp = m1.complement().unwrap();
        let de_morgan = union.complement().unwrap();
        let de_morgan_rhs = comp.intersection(&m2.complement().unwrap()).unwrap();
        let norm = m1.normalize().unwrap();
        let pruned = m1.prune();
        let w = random_word(&mut rng, 4, 8);
        let (a1, a2) = (m1.accepts(&w).unwrap(), m2.accepts(&w).unwrap());
        let ok = union.accepts(&w).unwrap() == (a1 || a2)
            && inter.accepts(&w).unwrap() == (a1 && a2)
            && comp.accepts(&w).unwrap() == !a1
            && de_morgan.accepts(&w).unwrap() == de_morgan_rhs.accepts(&w).unwrap()
            && norm.accepts(&w).unwrap() == a1
            && pruned.accepts(&w).unwrap() == a1;
        if !ok {
            failures += 1;
        }
    }
    report(
        3,
        "union/intersection/complement/De-Morgan membership laws and normalize/prune preservation on 1000 trials",
        failures == 0,
    );
}

// ---------------------------------------------------------------- 4

#[test]
fn criterion_4_normal_form_partitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0u32;
    for _ in 0..200 {
        let alg = Rc::new(IntervalAlgebra::new(3));
        let m = random_safa(&mut rng, alg.clone(), 6).unwrap().normalize().unwrap();
        for s in 0..m.state_count() {
            let row = m.transitions_from(s);
            let mut cover = alg.bot();
            for (i, (g, _)) in row.iter().enumerate() {
                cover = alg.or(&cover, g).unwrap();
                for (g2, _) in &row[i + 1..] {
                    if alg.is_sat(&alg.and(g, g2).unwrap()) {
                        failures += 1;
                    }
                }
            }
            if cover != alg.top() {
                failures += 1;
            }
        }
    }
    report(
        4,
        "normalized guards are pairwise-unsat and jointly cover the domain on 200 random automata",
        failures == 0,
    );
}

// ---------------------------------------------------------------- 5

/// The 20 monotone Boolean functions of three variables, as 8-bit truth
/// masks (bit `g` is the value under assignment `g`).
fn monotone_masks() -> Vec<u16> {
    (0u16..256)
        .filter(|&mask| {
            (0u16..8).all(|a| {
                (0u16..8).all(|b| {
                    // a ⊆ b pointwise implies mask[a] ≤ mask[b]
                    (a & b) != a || (mask >> a) & 1 <= (mask >> b) & 1
                })
            })
        })
        .collect()
}

/// Build the formula for a monotone mask as a disjunction of its minimal
/// satisfying assignments' conjunctions.
fn formula_for_mask(pool: &PbfPool, mask: u16) -> PbfId {
    if mask == 0 {
        return pool.mk_false();
    }
    if mask >> 0 & 1 == 1 {
        return pool.mk_true(); // true under the empty assignment ⇒ everywhere
    }
    let mut f = pool.mk_false();
    for a in 1u16..8 {
        if (mask >> a) & 1 == 0 {
            continue;
        }
        // minimal: no strictly smaller satisfying assignment
        let minimal = (0u16..8).all(|b| b == a || (a & b) != b || (mask >> b) & 1 == 0);
        if minimal {
            let mut term = pool.mk_true();
            for s in 0..3u32 {
                if (a >> s) & 1 == 1 {
                    term = pool.mk_and(term, pool.mk_state(s));
                }
            }
            f = pool.mk_or(f, term);
        }
    }
    f
}

#[test]
fn criterion_5_congruence_closure_is_logical_closure() {
    let start = Instant::now();
    let masks = monotone_masks();
    assert_eq!(masks.len(), 20, "free distributive lattice on 3 generators");
    let pool = PbfPool::new();
    let formulas: Vec<PbfId> = masks.iter().map(|&m| formula_for_mask(&pool, m)).collect();
    // cross-check the mask <-> formula correspondence by evaluation
    for (f, &mask) in formulas.iter().zip(&masks) {
        for g in 0u16..8 {
            let mut model = Model::empty(3);
            for s in 0..3u32 {
                model.set(s, (g >> s) & 1 == 1);
            }
            assert_eq!(pool.eval(&model, *f), (mask >> g) & 1 == 1);
        }
    }

    let n = formulas.len();
    let candidate_pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    // all relations with at most two pairs drawn from the pool
    let mut relations: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    relations.extend(candidate_pairs.iter().map(|&p| vec![p]));
    for (a, &p1) in candidate_pairs.iter().enumerate() {
        for &p2 in &candidate_pairs[a + 1..] {
            relations.push(vec![p1, p2]);
        }
    }

    let mut disagreements = 0u64;
    for rel in &relations {
        // oracle: models of the biconditional conjunction decide membership
        let mut admissible: u16 = 0;
        for g in 0u16..8 {
            let holds = rel.iter().all(|&(i, j)| {
                ((masks[i] >> g) & 1) == ((masks[j] >> g) & 1)
            });
            if holds {
                admissible |= 1 << g;
            }
        }
        let mut ctx = CongruenceContext::new();
        for &(i, j) in rel {
            ctx.assert_pair(&pool, formulas[i], formulas[j]);
        }
        for &(i, j) in &candidate_pairs {
            let oracle = (masks[i] ^ masks[j]) & admissible == 0;
            if ctx.in_closure(&pool, formulas[i], formulas[j]) != oracle {
                disagreements += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        5,
        "SAT-backed closure matches the model-counting oracle on every ≤2-pair relation over the 20-formula pool (< 30 s)",
        disagreements == 0 && elapsed < Duration::from_secs(30),
    );
}

// ---------------------------------------------------------------- 6

#[test]
fn criterion_6_sat_reduction_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut failures = 0u32;
    for _ in 0..200 {
        let n = rng.gen_range(1..=6u32);
        let clauses = rng.gen_range(1..=12);
        let cnf = random_cnf(&mut rng, n, clauses);
        let brute = (0..1u32 << n).any(|assn| {
            cnf.iter().all(|cl| {
                cl.iter().any(|&(v, pos)| (assn >> v & 1 == 1) == pos)
            })
        });
        if sat_to_congruence(n, &cnf).decide_sat() != brute {
            failures += 1;
        }
    }
    report(
        6,
        "formula-to-congruence reduction matches truth-table satisfiability on 200 random 3-CNFs",
        failures == 0,
    );
}

// ---------------------------------------------------------------- 7

#[test]
fn criterion_7_ltlf_trace_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut disagreements = 0u32;
    let mut checked = 0u32;
    while checked < 300 {
        let f = random_ltlf(&mut rng, 3, 8);
        if f.x_nesting() > 5 || f.subformula_count() > 8 {
            continue;
        }
        checked += 1;
        // oracle: exhaustive trace enumeration up to length 6; the strong
        // next-operator nesting bound guarantees a witness this short
        let alphabet = 1u64 << f.atoms().len();
        let mut oracle_sat = f.empty_val();
        'outer: for len in 1..=6usize {
            let mut trace = vec![0u64; len];
            loop {
                if f.eval_trace(&trace) {
                    oracle_sat = true;
                    break 'outer;
                }
                // odometer increment over the alphabet
                let mut pos = 0;
                loop {
                    if pos == len {
                        break;
                    }
                    trace[pos] += 1;
                    if trace[pos] < alphabet {
                        break;
                    }
                    trace[pos] = 0;
                    pos += 1;
                }
                if pos == len {
                    break;
                }
            }
        }
        let m = f.to_safa().unwrap();
        let engine_sat = !check_empty(&m, None).unwrap().verdict.is_equivalent();
        if engine_sat != oracle_sat {
            disagreements += 1;
        }
    }

    // fixed cases
    let sat_of = |text: &str| {
        let f = parse_ltlf(text).unwrap();
        !check_empty(&f.to_safa().unwrap(), None)
            .unwrap()
            .verdict
            .is_equivalent()
    };
    let fixed_ok = !sat_of("false") && sat_of("G p") && !sat_of("(F p) & (G !p)");
    // a length-1 trace distinguishes `X true` (strong next: needs a
    // successor position, shortest model has length 2) from `true`
    let strong = parse_ltlf("X true").unwrap().to_safa().unwrap();
    let trivial = parse_ltlf("true").unwrap().to_safa().unwrap();
    let distinguishes = !strong.accepts(&[0]).unwrap()
        && !strong.accepts(&[]).unwrap()
        && strong.accepts(&[0, 0]).unwrap()
        && trivial.accepts(&[0]).unwrap()
        && trivial.accepts(&[]).unwrap();

    report(
        7,
        "temporal satisfiability matches trace enumeration on 300 random formulas plus the fixed cases",
        disagreements == 0 && fixed_ok && distinguishes,
    );
}

// ---------------------------------------------------------------- 8

#[test]
fn criterion_8_regex_forced_equivalence() {
    let report_data = run_bench(
        &asset("forced-manifest.txt"),
        &BenchOpts {
            engines: vec![Engine::Bisim, Engine::ReverseSfa],
            timeout_ms: Some(20_000),
            seed: 0,
        },
    )
    .unwrap();
    let n_pairs = 50 * 51 / 2;
    let all_equivalent = report_data
        .cases
        .iter()
        .all(|r| r.verdict == "equivalent" && !r.timed_out);
    // explored-states metric present and consistent per engine
    let metric_ok = report_data.summary.iter().all(|s| {
        s.cases == n_pairs && s.timeouts == 0 && s.total_pairs_explored > 0
    }) && report_data
        .cases
        .iter()
        .all(|r| r.stats.pairs_explored > 0 || r.stats.representatives > 0);
    report(
        8,
        "all 1275 forced-equivalence checks over the 50-regex corpus return equivalent within the per-case timeout, with explored-state metrics",
        report_data.cases.len() as u64 == 2 * n_pairs && all_equivalent && metric_ok,
    );
}

// ---------------------------------------------------------------- 9

#[test]
fn criterion_9_counterexample_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut invalid = 0u32;
    let mut found = 0u32;
    for _ in 0..200 {
        let alg = Rc::new(IntervalAlgebra::new(3));
        let m1 = random_safa(&mut rng, alg.clone(), 6).unwrap();
        let m2 = random_safa(&mut rng, alg.clone(), 6).unwrap();
        let bisim = check_equiv(&m1, &m2, None).unwrap().verdict;
        if let Some(w) = bisim.counterexample() {
            found += 1;
            if m1.accepts(w).unwrap() == m2.accepts(w).unwrap() {
                invalid += 1;
            }
        }
        let (rev, _) = reverse_check_equiv(&m1, &m2, None).unwrap();
        if let Some(w) = rev.counterexample() {
            found += 1;
            if m1.accepts(w).unwrap() == m2.accepts(w).unwrap() {
                invalid += 1;
            }
        }
        // configuration-level counterexamples on a single machine
        let (m, p0, q0) = m1.disjoint_union(&m2).unwrap();
        let r = check_config_equiv(&m, p0, q0, None).unwrap();
        if let Some(w) = r.verdict.counterexample() {
            found += 1;
            if m.accepts_from(p0, w).unwrap() == m.accepts_from(q0, w).unwrap() {
                invalid += 1;
            }
        }
        let (rev, _) = reverse_check_config(&m, p0, q0, None).unwrap();
        if let Some(w) = rev.counterexample() {
            found += 1;
            if m.accepts_from(p0, w).unwrap() == m.accepts_from(q0, w).unwrap() {
                invalid += 1;
            }
        }
    }
    report(
        9,
        "every inequivalence verdict ships a word that re-verifies by membership",
        invalid == 0 && found > 100,
    );
}
