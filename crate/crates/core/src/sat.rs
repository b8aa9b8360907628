//! A compact propositional satisfiability engine: conflict-driven clause
//! learning (first-UIP), two-watched-literal unit propagation, activity-based
//! decisions with phase saving, restarts, incremental clause addition, and
//! assumption-based queries. This is the two-call contract the congruence
//! layer needs (assert a conjunct, check with extra assumptions); no clause
//! retraction. Learned clauses persist across queries, so repeated closure
//! checks against the same relation get cheaper over time.

/// A literal: variable index plus sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: u32, positive: bool) -> Lit {
        Lit(var << 1 | (!positive) as u32)
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn code(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Val {
    Undef,
    True,
    False,
}

const ACTIVITY_DECAY: f64 = 1.0 / 0.95;
const ACTIVITY_LIMIT: f64 = 1e100;

#[derive(Default)]
pub struct Solver {
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    // clause indices watching each literal code
    watches: Vec<Vec<u32>>,
    root_units: Vec<Lit>,
    unsat: bool,

    assign: Vec<Val>,
    // per variable: decision level and the clause that forced it
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    activity: Vec<f64>,
    phase: Vec<bool>,
    var_inc: f64,
    seen: Vec<bool>,

    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
}

impl Solver {
    pub fn new() -> Solver {
        Solver {
            var_inc: 1.0,
            ..Solver::default()
        }
    }

    pub fn new_var(&mut self) -> u32 {
        let v = self.num_vars;
        self.num_vars += 1;
        self.assign.push(Val::Undef);
        self.level.push(0);
        self.reason.push(None);
        self.activity.push(0.0);
        self.phase.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        v
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// Permanently conjoin a clause to the context.
    pub fn add_clause(&mut self, lits: &[Lit]) {
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_by_key(|l| l.0);
        c.dedup();
        if c.windows(2).any(|w| w[0].var() == w[1].var()) {
            return; // tautology
        }
        match c.len() {
            0 => self.unsat = true,
            1 => self.root_units.push(c[0]),
            _ => {
                self.attach(c);
            }
        }
    }

    fn attach(&mut self, c: Vec<Lit>) -> u32 {
        let idx = self.clauses.len() as u32;
        self.watches[c[0].code()].push(idx);
        self.watches[c[1].code()].push(idx);
        self.clauses.push(c);
        idx
    }

    fn value(&self, l: Lit) -> Val {
        match self.assign[l.var() as usize] {
            Val::Undef => Val::Undef,
            v => {
                if (v == Val::True) == l.is_positive() {
                    Val::True
                } else {
                    Val::False
                }
            }
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) -> bool {
        match self.value(l) {
            Val::True => true,
            Val::False => false,
            Val::Undef => {
                let v = l.var() as usize;
                self.assign[v] = if l.is_positive() { Val::True } else { Val::False };
                self.level[v] = self.decision_level() as u32;
                self.reason[v] = reason;
                self.trail.push(l);
                true
            }
        }
    }

    /// Unit propagation; on conflict, returns the falsified clause.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let lit = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = lit.negate();
            let mut ws = std::mem::take(&mut self.watches[falsified.code()]);
            let mut keep = 0;
            let mut conflict = None;
            let mut i = 0;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let assign = &self.assign;
                let val = |l: Lit| match assign[l.var() as usize] {
                    Val::Undef => Val::Undef,
                    v => {
                        if (v == Val::True) == l.is_positive() {
                            Val::True
                        } else {
                            Val::False
                        }
                    }
                };
                let clause = &mut self.clauses[ci as usize];
                // ensure the falsified watch sits at position 1
                if clause[0] == falsified {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if val(first) == Val::True {
                    ws[keep] = ci;
                    keep += 1;
                    continue;
                }
                // look for a replacement watch
                let mut new_watch = None;
                for k in 2..clause.len() {
                    if val(clause[k]) != Val::False {
                        clause.swap(1, k);
                        new_watch = Some(clause[1]);
                        break;
                    }
                }
                if let Some(nw) = new_watch {
                    self.watches[nw.code()].push(ci);
                    continue;
                }
                // clause is unit (or conflicting) on `first`
                ws[keep] = ci;
                keep += 1;
                if !self.enqueue(first, Some(ci)) {
                    conflict = Some(ci);
                    // keep remaining watches intact
                    while i < ws.len() {
                        ws[keep] = ws[i];
                        keep += 1;
                        i += 1;
                    }
                    break;
                }
            }
            ws.truncate(keep);
            let mut existing = std::mem::take(&mut self.watches[falsified.code()]);
            ws.append(&mut existing);
            self.watches[falsified.code()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: u32) {
        self.activity[v as usize] += self.var_inc;
        if self.activity[v as usize] > ACTIVITY_LIMIT {
            for a in &mut self.activity {
                *a *= 1.0 / ACTIVITY_LIMIT;
            }
            self.var_inc *= 1.0 / ACTIVITY_LIMIT;
        }
    }

    /// First-UIP conflict analysis: a learned clause (asserting literal
    /// first) and the level to backjump to.
    fn analyze(&mut self, confl: u32) -> (Vec<Lit>, usize) {
        let current = self.decision_level() as u32;
        let mut learnt: Vec<Lit> = vec![Lit(0)]; // slot for the asserting literal
        let mut counter = 0usize;
        let mut confl = confl as usize;
        let mut idx = self.trail.len();
        let mut first = true;
        loop {
            let start = usize::from(!first);
            for k in start..self.clauses[confl].len() {
                let q = self.clauses[confl][k];
                let v = q.var();
                if !self.seen[v as usize] && self.level[v as usize] > 0 {
                    self.seen[v as usize] = true;
                    self.bump(v);
                    if self.level[v as usize] == current {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            // walk the trail back to the next marked literal
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var() as usize] {
                    break;
                }
            }
            let p = self.trail[idx];
            self.seen[p.var() as usize] = false;
            counter -= 1;
            if counter == 0 {
                learnt[0] = p.negate();
                break;
            }
            confl = self.reason[p.var() as usize].expect("non-decision has a reason") as usize;
            first = false;
        }
        for l in &learnt[1..] {
            self.seen[l.var() as usize] = false;
        }
        // backjump to the second-highest level in the clause, and put a
        // literal of that level in the other watch slot
        let mut bt = 0usize;
        for k in 1..learnt.len() {
            let lv = self.level[learnt[k].var() as usize] as usize;
            if lv > bt {
                bt = lv;
                learnt.swap(1, k);
            }
        }
        self.var_inc *= ACTIVITY_DECAY;
        (learnt, bt)
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let target = self.trail_lim[level];
        while self.trail.len() > target {
            let l = self.trail.pop().unwrap();
            let v = l.var() as usize;
            self.phase[v] = l.is_positive();
            self.assign[v] = Val::Undef;
            self.reason[v] = None;
        }
        self.trail_lim.truncate(level);
        self.qhead = target;
    }

    fn pick_var(&self) -> Option<u32> {
        let mut best: Option<u32> = None;
        for v in 0..self.num_vars {
            if self.assign[v as usize] == Val::Undef
                && best.map_or(true, |b| {
                    self.activity[v as usize] > self.activity[b as usize]
                })
            {
                best = Some(v);
            }
        }
        best
    }

    fn finish(&mut self, result: bool) -> bool {
        self.cancel_until(0);
        // clear the root level too; the next call re-propagates
        while let Some(l) = self.trail.pop() {
            let v = l.var() as usize;
            self.assign[v] = Val::Undef;
            self.reason[v] = None;
        }
        self.qhead = 0;
        result
    }

    /// Decide satisfiability of the context conjoined with the assumptions.
    /// All assignments are undone before returning; learned clauses are kept.
    pub fn solve(&mut self, assumptions: &[Lit]) -> bool {
        if self.unsat {
            return false;
        }
        debug_assert!(self.trail.is_empty() && self.trail_lim.is_empty());
        self.qhead = 0;
        for &u in &self.root_units.clone() {
            if !self.enqueue(u, None) {
                self.unsat = true;
                return self.finish(false);
            }
        }
        if self.propagate().is_some() {
            self.unsat = true;
            return self.finish(false);
        }
        let mut restart_budget = 100u64;
        let mut conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                if self.decision_level() == 0 {
                    self.unsat = true;
                    return self.finish(false);
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.root_units.push(learnt[0]);
                    let ok = self.enqueue(learnt[0], None);
                    debug_assert!(ok);
                } else {
                    let asserting = learnt[0];
                    let ci = self.attach(learnt);
                    let ok = self.enqueue(asserting, Some(ci));
                    debug_assert!(ok);
                }
                conflicts += 1;
                if conflicts >= restart_budget {
                    restart_budget = restart_budget.saturating_mul(2);
                    conflicts = 0;
                    self.cancel_until(0);
                }
            } else if self.decision_level() < assumptions.len() {
                // assumptions occupy the lowest decision levels and are
                // re-asserted after every restart or deep backjump
                let a = assumptions[self.decision_level()];
                match self.value(a) {
                    Val::False => return self.finish(false),
                    Val::True => self.trail_lim.push(self.trail.len()),
                    Val::Undef => {
                        self.trail_lim.push(self.trail.len());
                        let ok = self.enqueue(a, None);
                        debug_assert!(ok);
                    }
                }
            } else if let Some(v) = self.pick_var() {
                self.trail_lim.push(self.trail.len());
                let lit = Lit::new(v, self.phase[v as usize]);
                let ok = self.enqueue(lit, None);
                debug_assert!(ok);
            } else {
                return self.finish(true);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(v: u32, pos: bool) -> Lit {
        Lit::new(v, pos)
    }

    #[test]
    fn trivial_sat_unsat() {
        let mut s = Solver::new();
        let a = s.new_var();
        assert!(s.solve(&[]));
        s.add_clause(&[lit(a, true)]);
        assert!(s.solve(&[]));
        assert!(!s.solve(&[lit(a, false)]));
        s.add_clause(&[lit(a, false)]);
        assert!(!s.solve(&[]));
    }

    #[test]
    fn three_sat_instance() {
        let mut s = Solver::new();
        let vars: Vec<u32> = (0..4).map(|_| s.new_var()).collect();
        // (x0 | x1) & (!x0 | x2) & (!x1 | !x2) & (x2 | x3)
        s.add_clause(&[lit(vars[0], true), lit(vars[1], true)]);
        s.add_clause(&[lit(vars[0], false), lit(vars[2], true)]);
        s.add_clause(&[lit(vars[1], false), lit(vars[2], false)]);
        s.add_clause(&[lit(vars[2], true), lit(vars[3], true)]);
        assert!(s.solve(&[]));
        // force a contradiction through assumptions
        assert!(!s.solve(&[lit(vars[0], true), lit(vars[2], false)]));
        // assumptions are not persistent
        assert!(s.solve(&[]));
    }

    #[test]
    fn pigeonhole_2_into_1_unsat() {
        // two pigeons, one hole
        let mut s = Solver::new();
        let p = s.new_var();
        let q = s.new_var();
        s.add_clause(&[lit(p, true)]);
        s.add_clause(&[lit(q, true)]);
        s.add_clause(&[lit(p, false), lit(q, false)]);
        assert!(!s.solve(&[]));
    }

    #[test]
    fn pigeonhole_5_into_4_unsat() {
        // a classically hard family for resolution; exercises learning
        let (pigeons, holes) = (5u32, 4u32);
        let mut s = Solver::new();
        let var = |p: u32, h: u32| p * holes + h;
        for _ in 0..pigeons * holes {
            s.new_var();
        }
        for p in 0..pigeons {
            let cl: Vec<Lit> = (0..holes).map(|h| lit(var(p, h), true)).collect();
            s.add_clause(&cl);
        }
        for h in 0..holes {
            for p1 in 0..pigeons {
                for p2 in p1 + 1..pigeons {
                    s.add_clause(&[lit(var(p1, h), false), lit(var(p2, h), false)]);
                }
            }
        }
        assert!(!s.solve(&[]));
    }

    #[test]
    fn agreement_with_truth_table() {
        // random small CNFs cross-checked against exhaustive enumeration,
        // both standalone and under random assumptions
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=5u32);
            let m = rng.gen_range(0..=8usize);
            let cnf: Vec<Vec<(u32, bool)>> = (0..m)
                .map(|_| {
                    (0..rng.gen_range(1..=3))
                        .map(|_| (rng.gen_range(0..n), rng.gen_bool(0.5)))
                        .collect()
                })
                .collect();
            let assumption = (rng.gen_range(0..n), rng.gen_bool(0.5));
            let brute = |extra: Option<(u32, bool)>| {
                (0..1u32 << n).any(|assn| {
                    let ok_extra =
                        extra.map_or(true, |(v, pos)| (assn >> v & 1 == 1) == pos);
                    ok_extra
                        && cnf.iter().all(|cl| {
                            cl.iter().any(|&(v, pos)| (assn >> v & 1 == 1) == pos)
                        })
                })
            };
            let mut s = Solver::new();
            for _ in 0..n {
                s.new_var();
            }
            for cl in &cnf {
                let lits: Vec<Lit> = cl.iter().map(|&(v, pos)| lit(v, pos)).collect();
                s.add_clause(&lits);
            }
            assert_eq!(s.solve(&[]), brute(None), "cnf = {cnf:?}");
            assert_eq!(
                s.solve(&[lit(assumption.0, assumption.1)]),
                brute(Some(assumption)),
                "cnf = {cnf:?} assuming {assumption:?}"
            );
            assert_eq!(s.solve(&[]), brute(None), "cnf = {cnf:?} (replay)");
        }
    }
}
