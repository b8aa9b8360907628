//! Symbolic alternating finite automata: the tuple (algebra, states, initial
//! formula, final set, guarded transitions) and its language operations.
//!
//! An automaton is immutable after construction; operations produce new
//! automata. Boolean operations (union, intersection, De Morgan
//! complementation of a normal automaton) are linear in the inputs.

use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use crate::algebra::{for_each_minterm, Algebra};
use crate::error::{Error, Result};
use crate::pbf::{Model, PbfId, PbfPool};

pub struct Safa<A: Algebra> {
    algebra: Rc<A>,
    state_count: u32,
    pool: Rc<PbfPool>,
    initial: PbfId,
    finals: Model,
    // outgoing transitions, indexed by source state
    transitions: Vec<Vec<(A::Pred, PbfId)>>,
    normal: bool,
}

impl<A: Algebra> Clone for Safa<A> {
    fn clone(&self) -> Self {
        Safa {
            algebra: self.algebra.clone(),
            state_count: self.state_count,
            pool: self.pool.clone(),
            initial: self.initial,
            finals: self.finals.clone(),
            transitions: self.transitions.clone(),
            normal: self.normal,
        }
    }
}

/// Assembles a `Safa`, validating state indices, dropping transitions with
/// unsatisfiable guards, and merging duplicate (source, target) pairs by
/// disjoining their guards.
pub struct SafaBuilder<A: Algebra> {
    algebra: Rc<A>,
    pool: Rc<PbfPool>,
    state_count: u32,
    initial: PbfId,
    finals: Vec<u32>,
    transitions: Vec<(u32, A::Pred, PbfId)>,
}

impl<A: Algebra> SafaBuilder<A> {
    pub fn new(algebra: Rc<A>, state_count: u32) -> Self {
        let pool = Rc::new(PbfPool::new());
        let initial = pool.mk_false();
        SafaBuilder {
            algebra,
            pool,
            state_count,
            initial,
            finals: Vec::new(),
            transitions: Vec::new(),
        }
    }

    pub fn pool(&self) -> &PbfPool {
        &self.pool
    }

    pub fn initial(&mut self, p: PbfId) -> &mut Self {
        self.initial = p;
        self
    }

    pub fn add_final(&mut self, s: u32) -> &mut Self {
        self.finals.push(s);
        self
    }

    pub fn add_transition(&mut self, source: u32, guard: A::Pred, target: PbfId) -> &mut Self {
        self.transitions.push((source, guard, target));
        self
    }

    pub fn build(self) -> Result<Safa<A>> {
        let n = self.state_count;
        let check = |s: u32| {
            if s >= n {
                Err(Error::StateIndex(s, n))
            } else {
                Ok(())
            }
        };
        for &s in self.pool.states(self.initial).iter() {
            check(s)?;
        }
        for &s in &self.finals {
            check(s)?;
        }
        let mut transitions: Vec<Vec<(A::Pred, PbfId)>> = vec![Vec::new(); n as usize];
        for (src, guard, target) in self.transitions {
            check(src)?;
            for &s in self.pool.states(target).iter() {
                check(s)?;
            }
            if !self.algebra.is_sat(&guard) {
                continue;
            }
            let row = &mut transitions[src as usize];
            if let Some(entry) = row.iter_mut().find(|(_, t)| *t == target) {
                entry.0 = self.algebra.or(&entry.0, &guard)?;
            } else {
                row.push((guard, target));
            }
        }
        Ok(Safa {
            algebra: self.algebra,
            state_count: n,
            pool: self.pool,
            initial: self.initial,
            finals: Model::from_states(n, self.finals),
            transitions,
            normal: false,
        })
    }
}

impl<A: Algebra> Safa<A> {
    pub fn algebra(&self) -> &A {
        &self.algebra
    }

    pub fn algebra_rc(&self) -> Rc<A> {
        self.algebra.clone()
    }

    pub fn pool(&self) -> &PbfPool {
        &self.pool
    }

    pub fn state_count(&self) -> u32 {
        self.state_count
    }

    pub fn initial(&self) -> PbfId {
        self.initial
    }

    /// The final-state set, doubling as the model deciding empty-word
    /// acceptance.
    pub fn finals(&self) -> &Model {
        &self.finals
    }

    pub fn is_final(&self, s: u32) -> bool {
        self.finals.get(s)
    }

    pub fn transitions_from(&self, s: u32) -> &[(A::Pred, PbfId)] {
        &self.transitions[s as usize]
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn same_algebra(&self, other: &Safa<A>) -> bool {
        Rc::ptr_eq(&self.algebra, &other.algebra)
    }

    fn check_config(&self, p: PbfId) -> Result<()> {
        for &s in self.pool.states(p).iter() {
            if s >= self.state_count {
                return Err(Error::StateIndex(s, self.state_count));
            }
        }
        Ok(())
    }

    /// The per-character transition map on the states of `S`, plus the
    /// predicate for the equivalence class of `a` under the guards sourced in
    /// `S` (pairwise disjoint across the enumeration, jointly covering the
    /// domain).
    pub fn delta_on_char(
        &self,
        a: A::Char,
        s_set: &[u32],
    ) -> Result<(HashMap<u32, PbfId>, A::Pred)> {
        let mut class = self.algebra.top();
        let mut map: HashMap<u32, PbfId> = HashMap::new();
        for &s in s_set {
            let mut target = self.pool.mk_false();
            for (guard, q) in self.transitions_from(s) {
                if self.algebra.member(a, guard)? {
                    class = self.algebra.and(&class, guard)?;
                    target = self.pool.mk_or(target, *q);
                } else {
                    class = self.algebra.and(&class, &self.algebra.not(guard)?)?;
                }
            }
            map.insert(s, target);
        }
        Ok((map, class))
    }

    /// Apply the transition homomorphism for one character to a
    /// configuration.
    pub fn step(&self, p: PbfId, a: A::Char) -> Result<PbfId> {
        let states = self.pool.states(p);
        let (map, _) = self.delta_on_char(a, &states)?;
        Ok(self
            .pool
            .substitute(|s| *map.get(&s).unwrap_or(&self.pool.mk_false()), p))
    }

    /// Word membership from a configuration: fold the per-character
    /// homomorphism, then evaluate under the final-state model.
    pub fn accepts_from(&self, p: PbfId, word: &[A::Char]) -> Result<bool> {
        self.check_config(p)?;
        let mut cur = p;
        for &a in word {
            cur = self.step(cur, a)?;
        }
        Ok(self.pool.eval(&self.finals, cur))
    }

    pub fn accepts(&self, word: &[A::Char]) -> Result<bool> {
        self.accepts_from(self.initial, word)
    }

    /// Disjoint union of state spaces: `other`'s indices are shifted.
    /// Returns the combined automaton (initial = false placeholder) plus the
    /// two remapped initial formulas.
    pub fn disjoint_union(&self, other: &Safa<A>) -> Result<(Safa<A>, PbfId, PbfId)> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let pool = Rc::new(PbfPool::new());
        let offset = self.state_count;
        let n = self.state_count + other.state_count;
        let mut transitions: Vec<Vec<(A::Pred, PbfId)>> = Vec::with_capacity(n as usize);
        for s in 0..self.state_count {
            transitions.push(
                self.transitions_from(s)
                    .iter()
                    .map(|(g, q)| (g.clone(), self.pool.copy_into(&pool, 0, *q)))
                    .collect(),
            );
        }
        for s in 0..other.state_count {
            transitions.push(
                other
                    .transitions_from(s)
                    .iter()
                    .map(|(g, q)| (g.clone(), other.pool.copy_into(&pool, offset, *q)))
                    .collect(),
            );
        }
        let finals = Model::from_states(
            n,
            self.finals
                .iter_set()
                .chain(other.finals.iter_set().map(|s| s + offset)),
        );
        let p0 = self.pool.copy_into(&pool, 0, self.initial);
        let q0 = other.pool.copy_into(&pool, offset, other.initial);
        let combined = Safa {
            algebra: self.algebra.clone(),
            state_count: n,
            pool: pool.clone(),
            initial: pool.mk_false(),
            finals,
            transitions,
            normal: self.normal && other.normal,
        };
        Ok((combined, p0, q0))
    }

    pub fn union(&self, other: &Safa<A>) -> Result<Safa<A>> {
        let (mut m, p0, q0) = self.disjoint_union(other)?;
        m.initial = m.pool.mk_or(p0, q0);
        Ok(m)
    }

    pub fn intersection(&self, other: &Safa<A>) -> Result<Safa<A>> {
        let (mut m, p0, q0) = self.disjoint_union(other)?;
        m.initial = m.pool.mk_and(p0, q0);
        Ok(m)
    }

    /// Replace a configuration (e.g. for the config-equivalence surface).
    pub fn with_initial(&self, p: PbfId) -> Result<Safa<A>> {
        self.check_config(p)?;
        let mut m = self.clone();
        m.initial = p;
        Ok(m)
    }

    /// Rewrite each state's outgoing transitions so the guards partition the
    /// character domain (the class with no matching transition maps to
    /// false). Language-preserving.
    pub fn normalize(&self) -> Result<Safa<A>> {
        let mut transitions: Vec<Vec<(A::Pred, PbfId)>> =
            Vec::with_capacity(self.state_count as usize);
        for s in 0..self.state_count {
            let row = self.transitions_from(s);
            let preds: Vec<A::Pred> = row.iter().map(|(g, _)| g.clone()).collect();
            let mut new_row: Vec<(A::Pred, PbfId)> = Vec::new();
            for_each_minterm(self.algebra.as_ref(), &preds, |mt| {
                let mut target = self.pool.mk_false();
                for (i, hit) in mt.mask.iter().enumerate() {
                    if *hit {
                        target = self.pool.mk_or(target, row[i].1);
                    }
                }
                new_row.push((mt.class, target));
                Ok(())
            })?;
            transitions.push(new_row);
        }
        Ok(Safa {
            algebra: self.algebra.clone(),
            state_count: self.state_count,
            pool: self.pool.clone(),
            initial: self.initial,
            finals: self.finals.clone(),
            transitions,
            normal: true,
        })
    }

    /// Complement by De Morganization: normalize, then swap and/or in every
    /// formula and flip the final set.
    pub fn complement(&self) -> Result<Safa<A>> {
        let m = if self.normal {
            self.clone()
        } else {
            self.normalize()?
        };
        let pool = m.pool.clone();
        let transitions = (0..m.state_count)
            .map(|s| {
                m.transitions_from(s)
                    .iter()
                    .map(|(g, q)| (g.clone(), pool.dualize(*q)))
                    .collect()
            })
            .collect();
        let finals = Model::from_states(
            m.state_count,
            (0..m.state_count).filter(|&s| !m.finals.get(s)),
        );
        Ok(Safa {
            algebra: m.algebra.clone(),
            state_count: m.state_count,
            pool: pool.clone(),
            initial: pool.dualize(m.initial),
            finals,
            transitions,
            normal: true,
        })
    }

    /// Remove states that are trivially unreachable from the root formulas
    /// or cannot reach a final state, replacing them with false everywhere.
    /// Returns the pruned automaton and the remapped root formulas (the
    /// first root becomes the new initial formula).
    pub fn prune_for(&self, roots: &[PbfId]) -> (Safa<A>, Vec<PbfId>) {
        let n = self.state_count as usize;
        // G_M: edge s -> s' when s' appears in some target of s
        let mut fwd_adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut bwd_adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for s in 0..self.state_count {
            for (_, q) in self.transitions_from(s) {
                for t in self.pool.states(*q) {
                    fwd_adj[s as usize].push(t);
                    bwd_adj[t as usize].push(s);
                }
            }
        }
        let bfs = |starts: Vec<u32>, adj: &Vec<Vec<u32>>| {
            let mut seen = vec![false; n];
            let mut queue: VecDeque<u32> = VecDeque::new();
            for s in starts {
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    queue.push_back(s);
                }
            }
            while let Some(s) = queue.pop_front() {
                for &t in &adj[s as usize] {
                    if !seen[t as usize] {
                        seen[t as usize] = true;
                        queue.push_back(t);
                    }
                }
            }
            seen
        };
        let root_states: Vec<u32> = roots
            .iter()
            .flat_map(|&r| self.pool.states(r))
            .collect();
        let reach_fwd = bfs(root_states, &fwd_adj);
        // a transition whose target formula is `true` accepts regardless of
        // the final set, so its source is as live as a final state
        let bwd_seeds: Vec<u32> = self
            .finals
            .iter_set()
            .chain((0..self.state_count).filter(|&s| {
                self.transitions[s as usize]
                    .iter()
                    .any(|(_, q)| *q == self.pool.mk_true())
            }))
            .collect();
        let reach_bwd = bfs(bwd_seeds, &bwd_adj);

        let mut remap: Vec<Option<u32>> = vec![None; n];
        let mut next = 0u32;
        for s in 0..n {
            if reach_fwd[s] && reach_bwd[s] {
                remap[s] = Some(next);
                next += 1;
            }
        }
        let pool = Rc::new(PbfPool::new());
        let map_state = |s: u32| match remap[s as usize] {
            Some(t) => pool.mk_state(t),
            None => pool.mk_false(),
        };
        let mut transitions: Vec<Vec<(A::Pred, PbfId)>> = vec![Vec::new(); next as usize];
        for s in 0..n {
            if let Some(new_s) = remap[s] {
                transitions[new_s as usize] = self.transitions[s]
                    .iter()
                    .map(|(g, q)| (g.clone(), self.pool.copy_with(&pool, map_state, *q)))
                    .collect();
            }
        }
        let finals = Model::from_states(
            next,
            self.finals.iter_set().filter_map(|s| remap[s as usize]),
        );
        let new_roots: Vec<PbfId> = roots
            .iter()
            .map(|&r| self.pool.copy_with(&pool, map_state, r))
            .collect();
        let initial = new_roots
            .first()
            .copied()
            .unwrap_or_else(|| self.pool.copy_with(&pool, map_state, self.initial));
        let pruned = Safa {
            algebra: self.algebra.clone(),
            state_count: next,
            pool,
            initial,
            finals,
            transitions,
            normal: self.normal,
        };
        (pruned, new_roots)
    }

    pub fn prune(&self) -> Safa<A> {
        let (m, _) = self.prune_for(&[self.initial]);
        m
    }

    /// Enumerate accepted words up to `max_len` over an explicit alphabet
    /// slice. Test and oracle plumbing; exponential, keep the alphabet small.
    pub fn enumerate_language(
        &self,
        alphabet: &[A::Char],
        max_len: usize,
    ) -> Result<Vec<Vec<A::Char>>> {
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<A::Char>> = vec![Vec::new()];
        for len in 0..=max_len {
            for w in &frontier {
                if self.accepts(w)? {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            frontier = frontier
                .into_iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |&a| {
                        let mut w2 = w.clone();
                        w2.push(a);
                        w2
                    })
                })
                .collect();
        }
        Ok(out)
    }
}
