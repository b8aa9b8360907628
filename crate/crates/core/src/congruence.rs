//! Congruence closure of a relation on positive Boolean formulas,
//! represented logically: the context formula is the conjunction of
//! biconditionals over the asserted pairs, and membership in the closure is
//! an unsatisfiability query. Asserted pairs are never retracted.

use std::collections::HashMap;

use crate::pbf::{PbfId, PbfNode, PbfPool};
use crate::sat::{Lit, Solver};

/// Incremental satisfiability context over one formula pool. One context per
/// equivalence run; state variables are shared across all asserted pairs and
/// queries, and Tseitin variables are cached per DAG node so overlapping
/// formulas reuse their encodings.
pub struct CongruenceContext {
    solver: Solver,
    state_vars: HashMap<u32, u32>,
    node_lits: HashMap<PbfId, Lit>,
    diff_lits: HashMap<(PbfId, PbfId), Lit>,
    const_true: Option<Lit>,
    pairs: usize,
    queries: u64,
}

impl Default for CongruenceContext {
    fn default() -> Self {
        Self::new()
    }
}

impl CongruenceContext {
    pub fn new() -> Self {
        CongruenceContext {
            solver: Solver::new(),
            state_vars: HashMap::new(),
            node_lits: HashMap::new(),
            diff_lits: HashMap::new(),
            const_true: None,
            pairs: 0,
            queries: 0,
        }
    }

    /// Number of pairs asserted so far.
    pub fn pair_count(&self) -> usize {
        self.pairs
    }

    /// Number of satisfiability queries issued (fast-path identical pairs
    /// are not counted).
    pub fn query_count(&self) -> u64 {
        self.queries
    }

    fn true_lit(&mut self) -> Lit {
        match self.const_true {
            Some(l) => l,
            None => {
                let v = self.solver.new_var();
                let l = Lit::new(v, true);
                self.solver.add_clause(&[l]);
                self.const_true = Some(l);
                l
            }
        }
    }

    fn state_lit(&mut self, s: u32) -> Lit {
        if let Some(&v) = self.state_vars.get(&s) {
            return Lit::new(v, true);
        }
        let v = self.solver.new_var();
        self.state_vars.insert(s, v);
        Lit::new(v, true)
    }

    /// Structure-preserving encoding of a formula over the shared DAG: one
    /// auxiliary variable per internal node, equisatisfiable by
    /// biconditional definition clauses.
    fn encode(&mut self, pool: &PbfPool, p: PbfId) -> Lit {
        if let Some(&l) = self.node_lits.get(&p) {
            return l;
        }
        let lit = match pool.node(p) {
            PbfNode::True => self.true_lit(),
            PbfNode::False => self.true_lit().negate(),
            PbfNode::State(s) => self.state_lit(s),
            PbfNode::And(a, b) => {
                let la = self.encode(pool, a);
                let lb = self.encode(pool, b);
                let v = Lit::new(self.solver.new_var(), true);
                self.solver.add_clause(&[v.negate(), la]);
                self.solver.add_clause(&[v.negate(), lb]);
                self.solver.add_clause(&[v, la.negate(), lb.negate()]);
                v
            }
            PbfNode::Or(a, b) => {
                let la = self.encode(pool, a);
                let lb = self.encode(pool, b);
                let v = Lit::new(self.solver.new_var(), true);
                self.solver.add_clause(&[v.negate(), la, lb]);
                self.solver.add_clause(&[v, la.negate()]);
                self.solver.add_clause(&[v, lb.negate()]);
                v
            }
        };
        self.node_lits.insert(p, lit);
        lit
    }

    /// Conjoin `p <-> q` to the context formula.
    pub fn assert_pair(&mut self, pool: &PbfPool, p: PbfId, q: PbfId) {
        let lp = self.encode(pool, p);
        let lq = self.encode(pool, q);
        self.solver.add_clause(&[lp.negate(), lq]);
        self.solver.add_clause(&[lp, lq.negate()]);
        self.pairs += 1;
    }

    /// Is `p` congruent to `q` under the asserted relation? True iff the
    /// context conjoined with `p xor q` is unsatisfiable. The disequality is
    /// issued as an assumption, never asserted permanently.
    pub fn in_closure(&mut self, pool: &PbfPool, p: PbfId, q: PbfId) -> bool {
        if p == q {
            return true; // hash-consing fast path
        }
        self.queries += 1;
        let key = (p.min(q), p.max(q));
        let d = match self.diff_lits.get(&key) {
            Some(&d) => d,
            None => {
                let lp = self.encode(pool, key.0);
                let lq = self.encode(pool, key.1);
                let d = Lit::new(self.solver.new_var(), true);
                // d -> (p xor q); the reverse direction is not needed since
                // d is only ever assumed true
                self.solver.add_clause(&[d.negate(), lp, lq]);
                self.solver.add_clause(&[d.negate(), lp.negate(), lq.negate()]);
                self.diff_lits.insert(key, d);
                d
            }
        };
        !self.solver.solve(&[d])
    }
}

/// The SAT-to-CONGRUENCE reduction: barred copies of the variables
/// axiomatize negation, so an arbitrary CNF becomes a positive formula that
/// is congruent to false exactly when the CNF is unsatisfiable.
pub struct SatReduction {
    pub pool: PbfPool,
    pub relation: Vec<(PbfId, PbfId)>,
    pub phi_hat: PbfId,
}

/// Literals are (variable index, positive?) pairs; clauses are disjunctions.
pub fn sat_to_congruence(num_vars: u32, cnf: &[Vec<(u32, bool)>]) -> SatReduction {
    let pool = PbfPool::new();
    let mut relation = Vec::with_capacity(2 * num_vars as usize);
    for v in 0..num_vars {
        let p = pool.mk_state(v);
        let barred = pool.mk_state(num_vars + v);
        relation.push((pool.mk_and(p, barred), pool.mk_false()));
        relation.push((pool.mk_or(p, barred), pool.mk_true()));
    }
    let mut phi_hat = pool.mk_true();
    for clause in cnf {
        let mut c = pool.mk_false();
        for &(v, positive) in clause {
            let s = if positive {
                pool.mk_state(v)
            } else {
                pool.mk_state(num_vars + v)
            };
            c = pool.mk_or(c, s);
        }
        phi_hat = pool.mk_and(phi_hat, c);
    }
    SatReduction {
        pool,
        relation,
        phi_hat,
    }
}

impl SatReduction {
    /// Run the reduction: satisfiable iff phi_hat is not congruent to false.
    pub fn decide_sat(&self) -> bool {
        let mut ctx = CongruenceContext::new();
        for &(p, q) in &self.relation {
            ctx.assert_pair(&self.pool, p, q);
        }
        !ctx.in_closure(&self.pool, self.phi_hat, self.pool.mk_false())
    }
}
