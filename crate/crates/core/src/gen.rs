//! Seeded random generators for automata, formulas, and words. Every suite
//! that samples uses these with a fixed seed so failures replay.

use std::rc::Rc;

use rand::Rng;

use crate::algebra::interval::{IntervalAlgebra, IntervalPredicate};
use crate::error::Result;
use crate::frontends::ltlf::{Ltlf, LtlfBuilder, LtlfId};
use crate::pbf::{PbfId, PbfPool};
use crate::safa::{Safa, SafaBuilder};

/// A random positive Boolean formula over `states` state indices, roughly
/// `size` operators deep.
pub fn random_pbf(rng: &mut impl Rng, pool: &PbfPool, states: u32, size: u32) -> PbfId {
    if size == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => pool.mk_true(),
            1 => pool.mk_false(),
            _ => pool.mk_state(rng.gen_range(0..states)),
        };
    }
    let a = random_pbf(rng, pool, states, size / 2);
    let b = random_pbf(rng, pool, states, size / 2);
    if rng.gen_bool(0.5) {
        pool.mk_and(a, b)
    } else {
        pool.mk_or(a, b)
    }
}

/// A random predicate over the algebra's domain: a union of up to two
/// random intervals (possibly empty or full).
pub fn random_interval_pred(rng: &mut impl Rng, alg: &IntervalAlgebra) -> IntervalPredicate {
    let max = alg.domain_max();
    let mut ranges = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let lo = rng.gen_range(0..=max);
        let hi = rng.gen_range(lo..=max);
        ranges.push((lo, hi));
    }
    alg.from_ranges(&ranges)
}

/// A random alternating automaton over a small interval alphabet. State
/// count in `1..=max_states`; 1-3 transitions per state; final set random
/// but nonempty with high probability.
pub fn random_safa(
    rng: &mut impl Rng,
    alg: Rc<IntervalAlgebra>,
    max_states: u32,
) -> Result<Safa<IntervalAlgebra>> {
    let n = rng.gen_range(1..=max_states);
    let mut b = SafaBuilder::new(alg.clone(), n);
    let init = random_pbf(rng, b.pool(), n, 4);
    b.initial(init);
    for s in 0..n {
        if rng.gen_bool(0.5) {
            b.add_final(s);
        }
        for _ in 0..rng.gen_range(1..=3) {
            let guard = random_interval_pred(rng, &alg);
            let target = random_pbf(rng, b.pool(), n, 4);
            b.add_transition(s, guard, target);
        }
    }
    b.build()
}

/// A random word over `0..alphabet` of length `0..=max_len`.
pub fn random_word(rng: &mut impl Rng, alphabet: u32, max_len: usize) -> Vec<u32> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..alphabet)).collect()
}

/// A random NNF LTL-f formula with at most `max_atoms` atoms and roughly
/// `size` nodes. Strong-next nesting is not bounded here; callers filter
/// with [`Ltlf::x_nesting`] when they need short witnesses.
pub fn random_ltlf(rng: &mut impl Rng, max_atoms: u32, size: u32) -> Ltlf {
    let mut b = LtlfBuilder::new();
    for i in 0..max_atoms {
        b.atom_id(&format!("p{i}"));
    }
    let root = random_ltlf_node(rng, &mut b, max_atoms, size);
    b.finish(root)
}

fn random_ltlf_node(
    rng: &mut impl Rng,
    b: &mut LtlfBuilder,
    atoms: u32,
    size: u32,
) -> LtlfId {
    if size <= 1 {
        let a = rng.gen_range(0..atoms);
        return match rng.gen_range(0..6) {
            0 => b.mk_true(),
            1 => b.mk_false(),
            2 | 3 => b.mk_atom(a),
            _ => b.mk_not_atom(a),
        };
    }
    match rng.gen_range(0..8) {
        0 => {
            let p = random_ltlf_node(rng, b, atoms, size - 1);
            b.mk_next(p)
        }
        1 => {
            let p = random_ltlf_node(rng, b, atoms, size - 1);
            b.mk_weak_next(p)
        }
        2 => {
            let p = random_ltlf_node(rng, b, atoms, (size - 1) / 2);
            let q = random_ltlf_node(rng, b, atoms, (size - 1) / 2);
            b.mk_until(p, q)
        }
        3 => {
            let p = random_ltlf_node(rng, b, atoms, (size - 1) / 2);
            let q = random_ltlf_node(rng, b, atoms, (size - 1) / 2);
            b.mk_release(p, q)
        }
        4 | 5 => {
            let p = random_ltlf_node(rng, b, atoms, (size - 1) / 2);
            let q = random_ltlf_node(rng, b, atoms, (size - 1) / 2);
            b.mk_and(p, q)
        }
        _ => {
            let p = random_ltlf_node(rng, b, atoms, (size - 1) / 2);
            let q = random_ltlf_node(rng, b, atoms, (size - 1) / 2);
            b.mk_or(p, q)
        }
    }
}

/// A random 3-CNF over `num_vars` variables: `num_clauses` clauses of 1-3
/// literals each, as (variable, positive) pairs.
pub fn random_cnf(
    rng: &mut impl Rng,
    num_vars: u32,
    num_clauses: usize,
) -> Vec<Vec<(u32, bool)>> {
    (0..num_clauses)
        .map(|_| {
            (0..rng.gen_range(1..=3))
                .map(|_| (rng.gen_range(0..num_vars), rng.gen_bool(0.5)))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn deterministic_under_seed() {
        let build = || {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let alg = Rc::new(IntervalAlgebra::new(3));
            let m = random_safa(&mut rng, alg, 10).unwrap();
            let f = random_ltlf(&mut rng, 3, 8);
            let w = random_word(&mut rng, 4, 8);
            (crate::format::print_automaton(&crate::format::AnyAutomaton::Interval(m)),
             f.format(), w)
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn generated_automata_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let alg = Rc::new(IntervalAlgebra::new(3));
            let m = random_safa(&mut rng, alg, 10).unwrap();
            assert!(m.state_count() >= 1 && m.state_count() <= 10);
            // acceptance runs without errors on random words
            for _ in 0..5 {
                let w = random_word(&mut rng, 4, 6);
                let _ = m.accepts(&w).unwrap();
            }
        }
    }
}
