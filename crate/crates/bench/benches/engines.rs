//! Head-to-head benchmarks of the equivalence engines on seeded random
//! automata and on regex forced-equivalence checks. Run with
//! `cargo bench -p safa-bench`.

use std::rc::Rc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use safa_core::baseline::{reverse_check_config, reverse_check_equiv};
use safa_core::equivalence::{check_config_equiv, check_equiv};
use safa_core::frontends::{parse_regex, regex_to_sfa};
use safa_core::gen::random_safa;
use safa_core::safa::Safa;
use safa_core::{IntervalAlgebra, PbfId, SafaBuilder};

const SEED: u64 = 0xBE7C;

fn random_pairs(
    count: usize,
    max_states: u32,
) -> Vec<(Safa<IntervalAlgebra>, Safa<IntervalAlgebra>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let alg = Rc::new(IntervalAlgebra::new(3));
    (0..count)
        .map(|_| {
            (
                random_safa(&mut rng, alg.clone(), max_states).unwrap(),
                random_safa(&mut rng, alg.clone(), max_states).unwrap(),
            )
        })
        .collect()
}

fn bench_random_equivalence(c: &mut Criterion) {
    let mut group = c.benchmark_group("random-equiv");
    for max_states in [5u32, 10, 15] {
        let pairs = random_pairs(20, max_states);
        group.bench_with_input(
            BenchmarkId::new("bisim", max_states),
            &pairs,
            |b, pairs| {
                b.iter(|| {
                    for (m1, m2) in pairs {
                        check_equiv(m1, m2, None).unwrap();
                    }
                })
            },
        );
        group.bench_with_input(
            BenchmarkId::new("reverse-sfa", max_states),
            &pairs,
            |b, pairs| {
                b.iter(|| {
                    for (m1, m2) in pairs {
                        reverse_check_equiv(m1, m2, None).unwrap();
                    }
                })
            },
        );
    }
    group.finish();
}

/// The forced-equivalence shape `r1∩r2 = r1∩r2∩r2'`: always equivalent, and
/// the right side carries a structurally distinct copy of `r2`, so the
/// engines cannot shortcut on syntactic identity.
fn forced_instance(r1: &str, r2: &str) -> (Safa<IntervalAlgebra>, PbfId, PbfId) {
    let alg = Rc::new(IntervalAlgebra::new(0x10FFFF));
    let asts = [parse_regex(r1).unwrap(), parse_regex(r2).unwrap()];
    let parts: Vec<_> = [&asts[0], &asts[1], &asts[1]]
        .iter()
        .map(|a| regex_to_sfa(a, alg.clone()).unwrap())
        .collect();
    let total = parts.iter().map(|p| p.state_count()).sum();
    let mut b = SafaBuilder::new(alg, total);
    let mut offset = 0u32;
    let mut inits = Vec::new();
    for sfa in &parts {
        let init = sfa.initial().iter().fold(b.pool().mk_false(), |acc, &s| {
            let leaf = b.pool().mk_state(offset + s);
            b.pool().mk_or(acc, leaf)
        });
        inits.push(init);
        for s in 0..sfa.state_count() {
            for (g, t) in sfa.transitions_from(s) {
                let target = b.pool().mk_state(offset + *t);
                b.add_transition(offset + s, g.clone(), target);
            }
            if sfa.is_final(s) {
                b.add_final(offset + s);
            }
        }
        offset += sfa.state_count();
    }
    let lhs = b.pool().mk_and(inits[0], inits[1]);
    let rhs = b.pool().mk_and(lhs, inits[2]);
    b.initial(lhs);
    (b.build().unwrap(), lhs, rhs)
}

fn bench_regex_forced(c: &mut Criterion) {
    let cases = [
        ("literal-contains", ".*free.*money.*", ".*money.*"),
        (
            "address-shape",
            r"[a-z]+@[a-z]+\.[a-z][a-z][a-z]",
            r"\w+@\w+\.\w\w\w",
        ),
        ("alternation", r".*\.(jpg|png|gif)", r".*\.(zip|rar)"),
    ];
    let mut group = c.benchmark_group("regex-forced");
    for (name, r1, r2) in cases {
        let (m, lhs, rhs) = forced_instance(r1, r2);
        group.bench_with_input(BenchmarkId::new("bisim", name), &(), |b, _| {
            b.iter(|| check_config_equiv(&m, lhs, rhs, None).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("reverse-sfa", name), &(), |b, _| {
            b.iter(|| reverse_check_config(&m, lhs, rhs, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_random_equivalence, bench_regex_forced);
criterion_main!(benches);
