//! Positive Boolean formulas over automaton states: the free bounded
//! distributive lattice on the state set, hash-consed into a per-workspace
//! pool so that structural equality is identity.
//!
//! Construction applies only local simplification (unit, annihilator,
//! idempotence); logical canonicity beyond that is the congruence engine's
//! job.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

/// Handle to an interned formula in one `PbfPool`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PbfId(u32);

impl PbfId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PbfNode {
    True,
    False,
    State(u32),
    And(PbfId, PbfId),
    Or(PbfId, PbfId),
}

#[derive(Default)]
struct PoolInner {
    nodes: Vec<PbfNode>,
    intern: HashMap<PbfNode, PbfId>,
}

/// Intern table for positive Boolean formulas. Single-owner per automaton
/// workspace; formulas are immutable once created.
pub struct PbfPool {
    inner: RefCell<PoolInner>,
}

impl Default for PbfPool {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for PbfPool {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PbfPool")
            .field("nodes", &self.inner.borrow().nodes.len())
            .finish()
    }
}

impl PbfPool {
    pub fn new() -> Self {
        let pool = PbfPool {
            inner: RefCell::new(PoolInner::default()),
        };
        // True and False always occupy slots 0 and 1
        pool.intern(PbfNode::True);
        pool.intern(PbfNode::False);
        pool
    }

    fn intern(&self, node: PbfNode) -> PbfId {
        let mut inner = self.inner.borrow_mut();
        if let Some(&id) = inner.intern.get(&node) {
            return id;
        }
        let id = PbfId(inner.nodes.len() as u32);
        inner.nodes.push(node);
        inner.intern.insert(node, id);
        id
    }

    pub fn node(&self, id: PbfId) -> PbfNode {
        self.inner.borrow().nodes[id.index()]
    }

    pub fn len(&self) -> usize {
        self.inner.borrow().nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // True/False are always present
    }

    pub fn mk_true(&self) -> PbfId {
        PbfId(0)
    }

    pub fn mk_false(&self) -> PbfId {
        PbfId(1)
    }

    pub fn mk_state(&self, state: u32) -> PbfId {
        self.intern(PbfNode::State(state))
    }

    pub fn mk_and(&self, a: PbfId, b: PbfId) -> PbfId {
        let (t, f) = (self.mk_true(), self.mk_false());
        if a == f || b == f {
            return f;
        }
        if a == t {
            return b;
        }
        if b == t || a == b {
            return a;
        }
        self.intern(PbfNode::And(a, b))
    }

    pub fn mk_or(&self, a: PbfId, b: PbfId) -> PbfId {
        let (t, f) = (self.mk_true(), self.mk_false());
        if a == t || b == t {
            return t;
        }
        if a == f {
            return b;
        }
        if b == f || a == b {
            return a;
        }
        self.intern(PbfNode::Or(a, b))
    }

    /// Evaluate under a model, the homomorphic extension into 2.
    pub fn eval(&self, m: &Model, p: PbfId) -> bool {
        let mut memo: HashMap<PbfId, bool> = HashMap::new();
        self.eval_rec(m, p, &mut memo)
    }

    fn eval_rec(&self, m: &Model, p: PbfId, memo: &mut HashMap<PbfId, bool>) -> bool {
        if let Some(&v) = memo.get(&p) {
            return v;
        }
        let v = match self.node(p) {
            PbfNode::True => true,
            PbfNode::False => false,
            PbfNode::State(s) => m.get(s),
            PbfNode::And(a, b) => self.eval_rec(m, a, memo) && self.eval_rec(m, b, memo),
            PbfNode::Or(a, b) => self.eval_rec(m, a, memo) || self.eval_rec(m, b, memo),
        };
        memo.insert(p, v);
        v
    }

    /// Homomorphic substitution of states; memoized over shared subterms so
    /// the cost is linear in the DAG size.
    pub fn substitute(&self, sigma: impl Fn(u32) -> PbfId, p: PbfId) -> PbfId {
        let mut memo: HashMap<PbfId, PbfId> = HashMap::new();
        self.subst_rec(&sigma, p, &mut memo)
    }

    fn subst_rec(
        &self,
        sigma: &impl Fn(u32) -> PbfId,
        p: PbfId,
        memo: &mut HashMap<PbfId, PbfId>,
    ) -> PbfId {
        if let Some(&v) = memo.get(&p) {
            return v;
        }
        let v = match self.node(p) {
            PbfNode::True | PbfNode::False => p,
            PbfNode::State(s) => sigma(s),
            PbfNode::And(a, b) => {
                let a = self.subst_rec(sigma, a, memo);
                let b = self.subst_rec(sigma, b, memo);
                self.mk_and(a, b)
            }
            PbfNode::Or(a, b) => {
                let a = self.subst_rec(sigma, a, memo);
                let b = self.subst_rec(sigma, b, memo);
                self.mk_or(a, b)
            }
        };
        memo.insert(p, v);
        v
    }

    /// Swap every And with Or (and true with false): the De Morgan dual used
    /// by complementation.
    pub fn dualize(&self, p: PbfId) -> PbfId {
        let mut memo: HashMap<PbfId, PbfId> = HashMap::new();
        self.dual_rec(p, &mut memo)
    }

    fn dual_rec(&self, p: PbfId, memo: &mut HashMap<PbfId, PbfId>) -> PbfId {
        if let Some(&v) = memo.get(&p) {
            return v;
        }
        let v = match self.node(p) {
            PbfNode::True => self.mk_false(),
            PbfNode::False => self.mk_true(),
            PbfNode::State(_) => p,
            PbfNode::And(a, b) => {
                let a = self.dual_rec(a, memo);
                let b = self.dual_rec(b, memo);
                self.mk_or(a, b)
            }
            PbfNode::Or(a, b) => {
                let a = self.dual_rec(a, memo);
                let b = self.dual_rec(b, memo);
                self.mk_and(a, b)
            }
        };
        memo.insert(p, v);
        v
    }

    /// The set of state indices appearing in `p`, sorted.
    pub fn states(&self, p: PbfId) -> Vec<u32> {
        let mut seen: HashSet<PbfId> = HashSet::new();
        let mut out: Vec<u32> = Vec::new();
        let mut stack = vec![p];
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            match self.node(n) {
                PbfNode::State(s) => out.push(s),
                PbfNode::And(a, b) | PbfNode::Or(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                _ => {}
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of distinct DAG nodes reachable from `p`; the size used by the
    /// worklist priority heuristic.
    pub fn size(&self, p: PbfId) -> usize {
        let mut seen: HashSet<PbfId> = HashSet::new();
        let mut stack = vec![p];
        while let Some(n) = stack.pop() {
            if !seen.insert(n) {
                continue;
            }
            if let PbfNode::And(a, b) | PbfNode::Or(a, b) = self.node(n) {
                stack.push(a);
                stack.push(b);
            }
        }
        seen.len()
    }

    /// Re-intern `p` (living in `self`) into `dst`, shifting state indices by
    /// `offset`. Used by the disjoint-union constructions.
    pub fn copy_into(&self, dst: &PbfPool, offset: u32, p: PbfId) -> PbfId {
        self.copy_with(dst, |s| dst.mk_state(s + offset), p)
    }

    /// Re-intern `p` into `dst`, mapping each state leaf through `map` (which
    /// must produce formulas interned in `dst`).
    pub fn copy_with(&self, dst: &PbfPool, map: impl Fn(u32) -> PbfId, p: PbfId) -> PbfId {
        let mut memo: HashMap<PbfId, PbfId> = HashMap::new();
        self.copy_rec(dst, &map, p, &mut memo)
    }

    fn copy_rec(
        &self,
        dst: &PbfPool,
        map: &impl Fn(u32) -> PbfId,
        p: PbfId,
        memo: &mut HashMap<PbfId, PbfId>,
    ) -> PbfId {
        if let Some(&v) = memo.get(&p) {
            return v;
        }
        let v = match self.node(p) {
            PbfNode::True => dst.mk_true(),
            PbfNode::False => dst.mk_false(),
            PbfNode::State(s) => map(s),
            PbfNode::And(a, b) => {
                let a = self.copy_rec(dst, map, a, memo);
                let b = self.copy_rec(dst, map, b, memo);
                dst.mk_and(a, b)
            }
            PbfNode::Or(a, b) => {
                let a = self.copy_rec(dst, map, a, memo);
                let b = self.copy_rec(dst, map, b, memo);
                dst.mk_or(a, b)
            }
        };
        memo.insert(p, v);
        v
    }

    pub fn format(&self, p: PbfId) -> String {
        match self.node(p) {
            PbfNode::True => "true".to_string(),
            PbfNode::False => "false".to_string(),
            PbfNode::State(s) => s.to_string(),
            PbfNode::And(a, b) => {
                format!("{} & {}", self.format_tight(a, true), self.format_tight(b, true))
            }
            PbfNode::Or(a, b) => {
                format!("{} | {}", self.format_tight(a, false), self.format_tight(b, false))
            }
        }
    }

    fn format_tight(&self, p: PbfId, in_and: bool) -> String {
        match self.node(p) {
            PbfNode::And(..) if !in_and => format!("({})", self.format(p)),
            PbfNode::Or(..) if in_and => format!("({})", self.format(p)),
            PbfNode::And(..) | PbfNode::Or(..) => self.format(p),
            _ => self.format(p),
        }
    }
}

/// A model m : Q -> 2, as a bitset whose width is the automaton's state
/// count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Model {
    width: u32,
    words: Vec<u64>,
}

impl Model {
    pub fn empty(width: u32) -> Self {
        Model {
            width,
            words: vec![0; (width as usize + 63) / 64],
        }
    }

    pub fn from_states(width: u32, states: impl IntoIterator<Item = u32>) -> Self {
        let mut m = Model::empty(width);
        for s in states {
            m.set(s, true);
        }
        m
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn get(&self, s: u32) -> bool {
        debug_assert!(s < self.width);
        self.words[s as usize / 64] >> (s % 64) & 1 == 1
    }

    pub fn set(&mut self, s: u32, v: bool) {
        debug_assert!(s < self.width);
        let (w, b) = (s as usize / 64, s % 64);
        if v {
            self.words[w] |= 1 << b;
        } else {
            self.words[w] &= !(1 << b);
        }
    }

    pub fn iter_set(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.width).filter(move |&s| self.get(s))
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}
