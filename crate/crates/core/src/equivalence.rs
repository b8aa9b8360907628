//! Configuration equivalence by bisimulation up to congruence: a worklist of
//! configuration pairs, one representative character per guard class, and a
//! growing relation whose logical closure absorbs already-justified pairs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::{Duration, Instant};

use crate::algebra::{for_each_minterm, Algebra};
use crate::congruence::CongruenceContext;
use crate::error::Result;
use crate::pbf::PbfId;
use crate::safa::Safa;

/// Counters reported by every engine (the baselines fill in what applies).
#[derive(Clone, Copy, Debug, Default)]
pub struct EngineStats {
    /// Pairs (or states) actually expanded, not skipped by the closure.
    pub pairs_explored: u64,
    /// Satisfiability queries issued to the congruence context.
    pub sat_queries: u64,
    /// Representative characters examined across all expansions.
    pub representatives: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<C> {
    Equivalent,
    NotEquivalent { counterexample: Vec<C> },
    Timeout,
}

impl<C> Verdict<C> {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent)
    }

    pub fn counterexample(&self) -> Option<&[C]> {
        match self {
            Verdict::NotEquivalent { counterexample } => Some(counterexample),
            _ => None,
        }
    }
}

/// Outcome of a bisimulation run. `relation` holds the discovered pairs;
/// their ids live in `machine`'s pool (the pruned working copy).
pub struct EquivReport<A: Algebra> {
    pub verdict: Verdict<A::Char>,
    pub stats: EngineStats,
    pub relation: Vec<(PbfId, PbfId)>,
    pub machine: Safa<A>,
}

struct Entry<C> {
    p: PbfId,
    q: PbfId,
    parent: Option<(usize, C)>,
}

fn word_to<C: Copy>(arena: &[Entry<C>], mut i: usize) -> Vec<C> {
    let mut word = Vec::new();
    while let Some((parent, a)) = arena[i].parent {
        word.push(a);
        i = parent;
    }
    word.reverse();
    word
}

/// Are the configurations `p0` and `q0` language-equivalent in `m`?
///
/// The automaton is pruned first (dead states become false), then pairs are
/// processed smallest-first by combined DAG size. A pair already in the
/// logical closure of the discovered relation is skipped; otherwise one
/// successor pair is pushed per equivalence class of characters under the
/// guards of the pair's states, and the pair itself joins the relation.
pub fn check_config_equiv<A: Algebra>(
    m: &Safa<A>,
    p0: PbfId,
    q0: PbfId,
    deadline: Option<Instant>,
) -> Result<EquivReport<A>> {
    let start = Instant::now();
    let (m, roots) = m.prune_for(&[p0, q0]);
    let (p0, q0) = (roots[0], roots[1]);

    let mut ctx = CongruenceContext::new();
    let mut relation: Vec<(PbfId, PbfId)> = Vec::new();
    let mut stats = EngineStats::default();

    let mut arena: Vec<Entry<A::Char>> = Vec::new();
    // min-heap on (|p| + |q|, insertion order)
    let mut heap: BinaryHeap<(Reverse<(usize, u64)>, usize)> = BinaryHeap::new();
    let mut seq = 0u64;
    let mut push = |arena: &mut Vec<Entry<A::Char>>,
                    heap: &mut BinaryHeap<(Reverse<(usize, u64)>, usize)>,
                    m: &Safa<A>,
                    entry: Entry<A::Char>| {
        let prio = m.pool().size(entry.p) + m.pool().size(entry.q);
        arena.push(entry);
        heap.push((Reverse((prio, seq)), arena.len() - 1));
        seq += 1;
    };
    push(
        &mut arena,
        &mut heap,
        &m,
        Entry {
            p: p0,
            q: q0,
            parent: None,
        },
    );

    let finish = |verdict, mut stats: EngineStats, ctx: &CongruenceContext, relation, machine| {
        stats.sat_queries = ctx.query_count();
        stats.elapsed = start.elapsed();
        Ok(EquivReport {
            verdict,
            stats,
            relation,
            machine,
        })
    };

    while let Some((_, idx)) = heap.pop() {
        if let Some(d) = deadline {
            if Instant::now() >= d {
                return finish(Verdict::Timeout, stats, &ctx, relation, m);
            }
        }
        let (p, q) = (arena[idx].p, arena[idx].q);
        if ctx.in_closure(m.pool(), p, q) {
            continue;
        }
        if m.pool().eval(m.finals(), p) != m.pool().eval(m.finals(), q) {
            let counterexample = word_to(&arena, idx);
            return finish(
                Verdict::NotEquivalent { counterexample },
                stats,
                &ctx,
                relation,
                m,
            );
        }
        stats.pairs_explored += 1;

        // one representative per class of the guards sourced in the pair
        let mut states = m.pool().states(p);
        states.extend(m.pool().states(q));
        states.sort_unstable();
        states.dedup();
        let guards: Vec<A::Pred> = states
            .iter()
            .flat_map(|&s| m.transitions_from(s).iter().map(|(g, _)| g.clone()))
            .collect();
        let mut successors: Vec<(PbfId, PbfId, A::Char)> = Vec::new();
        for_each_minterm(m.algebra(), &guards, |mt| {
            stats.representatives += 1;
            let a = mt.witness;
            successors.push((m.step(p, a)?, m.step(q, a)?, a));
            Ok(())
        })?;
        for (p2, q2, a) in successors {
            push(
                &mut arena,
                &mut heap,
                &m,
                Entry {
                    p: p2,
                    q: q2,
                    parent: Some((idx, a)),
                },
            );
        }

        ctx.assert_pair(m.pool(), p, q);
        relation.push((p, q));
    }
    finish(Verdict::Equivalent, stats, &ctx, relation, m)
}

/// Language equivalence of two automata over the same algebra instance:
/// disjoint-union the state spaces, then compare the remapped initials.
pub fn check_equiv<A: Algebra>(
    m1: &Safa<A>,
    m2: &Safa<A>,
    deadline: Option<Instant>,
) -> Result<EquivReport<A>> {
    let (m, p0, q0) = m1.disjoint_union(m2)?;
    check_config_equiv(&m, p0, q0, deadline)
}

/// Language emptiness: equivalence against the empty configuration.
pub fn check_empty<A: Algebra>(
    m: &Safa<A>,
    deadline: Option<Instant>,
) -> Result<EquivReport<A>> {
    check_config_equiv(m, m.initial(), m.pool().mk_false(), deadline)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::interval::IntervalAlgebra;
    use crate::safa::SafaBuilder;
    use std::rc::Rc;

    // The five-state worked example: states x=0 y=1 z=2 w=3 v=4, all final,
    // over a small numeric domain where "c <= 0" means {0}.
    #[test]
    fn five_state_example_trace() {
        let alg = Rc::new(IntervalAlgebra::new(9));
        let le0 = alg.from_ranges(&[(0, 0)]);
        let gt0 = alg.from_ranges(&[(1, 9)]);
        let eq1 = alg.singleton(1);
        let ne1 = alg.from_ranges(&[(0, 0), (2, 9)]);
        let top = alg.top();
        let mut b = SafaBuilder::new(alg, 5);
        let x = b.pool().mk_state(0);
        let y = b.pool().mk_state(1);
        let z = b.pool().mk_state(2);
        let w = b.pool().mk_state(3);
        let v = b.pool().mk_state(4);
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

        let r = check_config_equiv(&m, v, w, None).unwrap();
        assert!(r.verdict.is_equivalent());
        assert_eq!(r.stats.pairs_explored, 2);
        assert_eq!(r.stats.representatives, 4);
        // discovered relation: (v, w) then (x | y, z), expressed in the
        // pruned machine's pool (pruning preserves all five states here)
        assert_eq!(r.machine.state_count(), 5);
        let pool = r.machine.pool();
        let expected = vec![
            (pool.mk_state(4), pool.mk_state(3)),
            (pool.mk_or(pool.mk_state(0), pool.mk_state(1)), pool.mk_state(2)),
        ];
        assert_eq!(r.relation, expected);
    }

    #[test]
    fn epsilon_counterexample_when_finals_disagree() {
        // one-state accept-everything vs one-state accept-nothing
        let alg = Rc::new(IntervalAlgebra::new(3));
        let top = alg.top();
        let mut b = SafaBuilder::new(alg, 2);
        let s0 = b.pool().mk_state(0);
        let s1 = b.pool().mk_state(1);
        b.add_final(0);
        b.add_transition(0, top.clone(), s0);
        b.add_transition(1, top, s1);
        b.initial(s0);
        let m = b.build().unwrap();
        let r = check_config_equiv(&m, s0, s1, None).unwrap();
        assert_eq!(r.verdict.counterexample(), Some(&[][..]));
    }

    #[test]
    fn counterexample_word_is_reconstructed() {
        // state 0: loops on everything, accepts; state 1: only char 0 keeps
        // it alive. They disagree on any word containing a non-zero char.
        let alg = Rc::new(IntervalAlgebra::new(3));
        let top = alg.top();
        let zero = alg.singleton(0);
        let mut b = SafaBuilder::new(alg, 2);
        let s0 = b.pool().mk_state(0);
        let s1 = b.pool().mk_state(1);
        b.add_final(0);
        b.add_final(1);
        b.add_transition(0, top, s0);
        b.add_transition(1, zero, s1);
        b.initial(s0);
        let m = b.build().unwrap();
        let r = check_config_equiv(&m, s0, s1, None).unwrap();
        let cex = r.verdict.counterexample().expect("inequivalent").to_vec();
        assert!(!cex.is_empty());
        assert_ne!(
            m.accepts_from(s0, &cex).unwrap(),
            m.accepts_from(s1, &cex).unwrap()
        );
    }

    #[test]
    fn emptiness_of_unsat_intersection() {
        // L1 = words of chars {0}, L2 = words of chars {1}; both contain the
        // empty word, so the intersection is exactly {epsilon}: not empty.
        let alg = Rc::new(IntervalAlgebra::new(3));
        let mk = |c: u32, non_empty_final: bool| {
            let g = alg.singleton(c);
            let mut b = SafaBuilder::new(alg.clone(), 1);
            let s = b.pool().mk_state(0);
            if non_empty_final {
                b.add_final(0);
            }
            b.add_transition(0, g, s);
            b.initial(s);
            b.build().unwrap()
        };
        let m1 = mk(0, true);
        let m2 = mk(1, true);
        let inter = m1.intersection(&m2).unwrap();
        let r = check_empty(&inter, None).unwrap();
        assert_eq!(r.verdict.counterexample(), Some(&[][..]));

        // drop the empty word from one side: now truly empty
        let m3 = mk(1, false);
        let inter2 = m1.intersection(&m3).unwrap();
        let r2 = check_empty(&inter2, None).unwrap();
        assert!(r2.verdict.is_equivalent());
    }

    #[test]
    fn timeout_reports_cleanly() {
        let alg = Rc::new(IntervalAlgebra::new(3));
        let top = alg.top();
        let mut b = SafaBuilder::new(alg, 1);
        let s0 = b.pool().mk_state(0);
        b.add_final(0);
        b.add_transition(0, top, s0);
        b.initial(s0);
        let m = b.build().unwrap();
        let past = Instant::now() - Duration::from_millis(1);
        let r = check_config_equiv(&m, s0, s0, Some(past)).unwrap();
        assert_eq!(r.verdict, Verdict::Timeout);
    }

    #[test]
    fn equivalence_matches_enumeration_on_fixed_machines() {
        // complement round-trip: M and not(not(M)) accept the same words
        let alg = Rc::new(IntervalAlgebra::new(2));
        let a = alg.singleton(0);
        let bch = alg.singleton(1);
        let mut b = SafaBuilder::new(alg, 2);
        let s0 = b.pool().mk_state(0);
        let s1 = b.pool().mk_state(1);
        b.add_final(1);
        b.add_transition(0, a, s1);
        b.add_transition(1, bch, s0);
        b.initial(s0);
        let m = b.build().unwrap();
        let mm = m.complement().unwrap().complement().unwrap();
        let r = check_equiv(&m, &mm, None).unwrap();
        assert!(r.verdict.is_equivalent(), "verdict: {:?}", r.verdict);
        // and the complement itself is not equivalent to the original
        let r2 = check_equiv(&m, &m.complement().unwrap(), None).unwrap();
        let cex = r2.verdict.counterexample().unwrap().to_vec();
        let c = m.complement().unwrap();
        assert_ne!(m.accepts(&cex).unwrap(), c.accepts(&cex).unwrap());
    }
}
