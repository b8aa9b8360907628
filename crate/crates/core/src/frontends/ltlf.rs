//! LTL over finite traces: parsing into negation normal form and the
//! translation to alternating automata over the bitvector algebra.
//!
//! Characters are bitvectors with one bit per atomic proposition, so a trace
//! is a word of atom sets. Strong next (`X`) requires a successor position;
//! weak next (`N`) is satisfied at the last position. `F`/`G`/`->`/`!` are
//! desugared before NNF, so the stored AST has negation only on atoms.

use std::collections::HashMap;
use std::rc::Rc;

use crate::algebra::bdd::{BvAlgebra, BvPredicate};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::pbf::PbfId;
use crate::safa::{Safa, SafaBuilder};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LtlfId(u32);

/// NNF node. Atom payloads are indices into the formula's atom table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LtlfNode {
    True,
    False,
    Atom(u32),
    NotAtom(u32),
    And(LtlfId, LtlfId),
    Or(LtlfId, LtlfId),
    /// X: strong next
    Next(LtlfId),
    /// N: weak next
    WeakNext(LtlfId),
    Until(LtlfId, LtlfId),
    Release(LtlfId, LtlfId),
}

/// Arena for NNF formulas; subformulas are hash-consed so repeated subterms
/// share states in the translation.
#[derive(Default)]
pub struct LtlfBuilder {
    nodes: Vec<LtlfNode>,
    intern: HashMap<LtlfNode, LtlfId>,
    atoms: Vec<String>,
    atom_index: HashMap<String, u32>,
}

impl LtlfBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn atom_id(&mut self, name: &str) -> u32 {
        if let Some(&i) = self.atom_index.get(name) {
            return i;
        }
        let i = self.atoms.len() as u32;
        self.atoms.push(name.to_string());
        self.atom_index.insert(name.to_string(), i);
        i
    }

    fn mk(&mut self, node: LtlfNode) -> LtlfId {
        if let Some(&id) = self.intern.get(&node) {
            return id;
        }
        let id = LtlfId(self.nodes.len() as u32);
        self.nodes.push(node);
        self.intern.insert(node, id);
        id
    }

    pub fn mk_true(&mut self) -> LtlfId {
        self.mk(LtlfNode::True)
    }

    pub fn mk_false(&mut self) -> LtlfId {
        self.mk(LtlfNode::False)
    }

    pub fn mk_atom(&mut self, i: u32) -> LtlfId {
        self.mk(LtlfNode::Atom(i))
    }

    pub fn mk_not_atom(&mut self, i: u32) -> LtlfId {
        self.mk(LtlfNode::NotAtom(i))
    }

    pub fn mk_and(&mut self, a: LtlfId, b: LtlfId) -> LtlfId {
        self.mk(LtlfNode::And(a, b))
    }

    pub fn mk_or(&mut self, a: LtlfId, b: LtlfId) -> LtlfId {
        self.mk(LtlfNode::Or(a, b))
    }

    pub fn mk_next(&mut self, a: LtlfId) -> LtlfId {
        self.mk(LtlfNode::Next(a))
    }

    pub fn mk_weak_next(&mut self, a: LtlfId) -> LtlfId {
        self.mk(LtlfNode::WeakNext(a))
    }

    pub fn mk_until(&mut self, a: LtlfId, b: LtlfId) -> LtlfId {
        self.mk(LtlfNode::Until(a, b))
    }

    pub fn mk_release(&mut self, a: LtlfId, b: LtlfId) -> LtlfId {
        self.mk(LtlfNode::Release(a, b))
    }

    pub fn mk_eventually(&mut self, a: LtlfId) -> LtlfId {
        let t = self.mk_true();
        self.mk_until(t, a)
    }

    pub fn mk_always(&mut self, a: LtlfId) -> LtlfId {
        let f = self.mk_false();
        self.mk_release(f, a)
    }

    pub fn finish(self, root: LtlfId) -> Ltlf {
        Ltlf {
            nodes: self.nodes,
            atoms: self.atoms,
            root,
        }
    }
}

/// A closed NNF formula together with its subformula arena and atom table.
pub struct Ltlf {
    nodes: Vec<LtlfNode>,
    atoms: Vec<String>,
    root: LtlfId,
}

impl Ltlf {
    pub fn root(&self) -> LtlfId {
        self.root
    }

    pub fn node(&self, id: LtlfId) -> LtlfNode {
        self.nodes[id.0 as usize]
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn subformula_count(&self) -> usize {
        self.nodes.len()
    }

    /// Finite-trace satisfaction on a nonempty trace; characters are atom
    /// bitmasks. This is the reference evaluator the automaton translation
    /// is validated against.
    pub fn eval_trace(&self, trace: &[u64]) -> bool {
        assert!(!trace.is_empty(), "trace semantics is defined on nonempty traces");
        self.eval_at(self.root, trace, 0)
    }

    fn eval_at(&self, f: LtlfId, trace: &[u64], i: usize) -> bool {
        match self.node(f) {
            LtlfNode::True => true,
            LtlfNode::False => false,
            LtlfNode::Atom(a) => trace[i] >> a & 1 == 1,
            LtlfNode::NotAtom(a) => trace[i] >> a & 1 == 0,
            LtlfNode::And(p, q) => self.eval_at(p, trace, i) && self.eval_at(q, trace, i),
            LtlfNode::Or(p, q) => self.eval_at(p, trace, i) || self.eval_at(q, trace, i),
            LtlfNode::Next(p) => i + 1 < trace.len() && self.eval_at(p, trace, i + 1),
            LtlfNode::WeakNext(p) => i + 1 >= trace.len() || self.eval_at(p, trace, i + 1),
            LtlfNode::Until(p, q) => {
                self.eval_at(q, trace, i)
                    || (self.eval_at(p, trace, i)
                        && i + 1 < trace.len()
                        && self.eval_at(LtlfId(f.0), trace, i + 1))
            }
            LtlfNode::Release(p, q) => {
                self.eval_at(q, trace, i)
                    && (self.eval_at(p, trace, i)
                        || i + 1 >= trace.len()
                        || self.eval_at(LtlfId(f.0), trace, i + 1))
            }
        }
    }

    /// The formula's verdict on the empty trace: 1 for weak operators and
    /// true, 0 for atoms and strong operators, min/max through ∧/∨.
    pub fn empty_val(&self) -> bool {
        self.empty_val_of(self.root)
    }

    fn empty_val_of(&self, f: LtlfId) -> bool {
        match self.node(f) {
            LtlfNode::True | LtlfNode::WeakNext(_) | LtlfNode::Release(..) => true,
            LtlfNode::False
            | LtlfNode::Atom(_)
            | LtlfNode::NotAtom(_)
            | LtlfNode::Next(_)
            | LtlfNode::Until(..) => false,
            LtlfNode::And(p, q) => self.empty_val_of(p) && self.empty_val_of(q),
            LtlfNode::Or(p, q) => self.empty_val_of(p) || self.empty_val_of(q),
        }
    }

    /// Maximum nesting depth of strong-next operators; bounds the minimum
    /// satisfying trace length (nesting d ⇒ witness length ≤ d + 1).
    pub fn x_nesting(&self) -> usize {
        self.x_nesting_of(self.root)
    }

    fn x_nesting_of(&self, f: LtlfId) -> usize {
        match self.node(f) {
            LtlfNode::True | LtlfNode::False | LtlfNode::Atom(_) | LtlfNode::NotAtom(_) => 0,
            LtlfNode::Next(p) => 1 + self.x_nesting_of(p),
            LtlfNode::WeakNext(p) => self.x_nesting_of(p),
            LtlfNode::And(p, q)
            | LtlfNode::Or(p, q)
            | LtlfNode::Until(p, q)
            | LtlfNode::Release(p, q) => self.x_nesting_of(p).max(self.x_nesting_of(q)),
        }
    }

    pub fn format(&self) -> String {
        self.format_node(self.root)
    }

    fn format_node(&self, f: LtlfId) -> String {
        match self.node(f) {
            LtlfNode::True => "true".into(),
            LtlfNode::False => "false".into(),
            LtlfNode::Atom(a) => self.atoms[a as usize].clone(),
            LtlfNode::NotAtom(a) => format!("!{}", self.atoms[a as usize]),
            LtlfNode::And(p, q) => {
                format!("({} & {})", self.format_node(p), self.format_node(q))
            }
            LtlfNode::Or(p, q) => {
                format!("({} | {})", self.format_node(p), self.format_node(q))
            }
            LtlfNode::Next(p) => format!("X {}", self.format_node(p)),
            LtlfNode::WeakNext(p) => format!("N {}", self.format_node(p)),
            LtlfNode::Until(p, q) => {
                format!("({} U {})", self.format_node(p), self.format_node(q))
            }
            LtlfNode::Release(p, q) => {
                format!("({} R {})", self.format_node(p), self.format_node(q))
            }
        }
    }

    /// Translate into an alternating automaton over the bitvector algebra:
    /// one state per subformula plus the two auxiliary states E ("more
    /// input") and end-marker; language = satisfying traces (the empty trace
    /// is accepted iff `empty_val`).
    pub fn to_safa(&self) -> Result<Safa<BvAlgebra>> {
        let alg = Rc::new(BvAlgebra::new(self.atoms.to_vec()));
        let n = self.nodes.len() as u32;
        let state_e = n; // "more input": some successor position exists
        let state_end = n + 1; // final, no outgoing acceptance
        let mut b = SafaBuilder::new(alg.clone(), n + 2);
        b.initial(b.pool().mk_state(self.root.0));
        for (i, _) in self.nodes.iter().enumerate() {
            if self.empty_val_of(LtlfId(i as u32)) {
                b.add_final(i as u32);
            }
        }
        b.add_final(state_end);
        b.add_transition(state_e, alg.top(), b.pool().mk_true());
        b.add_transition(state_end, alg.top(), b.pool().mk_false());

        // delta of each subformula as a symbolic (guard, successor) list
        let mut memo: HashMap<LtlfId, Vec<(BvPredicate, PbfId)>> = HashMap::new();
        for i in 0..self.nodes.len() {
            let row = self.delta(LtlfId(i as u32), &alg, &b, state_e, state_end, &mut memo)?;
            for (g, t) in row {
                b.add_transition(i as u32, g, t);
            }
        }
        b.build()
    }

    fn delta(
        &self,
        f: LtlfId,
        alg: &Rc<BvAlgebra>,
        b: &SafaBuilder<BvAlgebra>,
        state_e: u32,
        state_end: u32,
        memo: &mut HashMap<LtlfId, Vec<(BvPredicate, PbfId)>>,
    ) -> Result<Vec<(BvPredicate, PbfId)>> {
        if let Some(row) = memo.get(&f) {
            return Ok(row.clone());
        }
        let pool = b.pool();
        let row = match self.node(f) {
            LtlfNode::True => vec![(alg.top(), pool.mk_true())],
            LtlfNode::False => vec![(alg.top(), pool.mk_false())],
            LtlfNode::Atom(a) => {
                let bit = alg.atom(a);
                vec![
                    (bit.clone(), pool.mk_true()),
                    (alg.not(&bit)?, pool.mk_false()),
                ]
            }
            LtlfNode::NotAtom(a) => {
                let bit = alg.atom(a);
                vec![
                    (alg.not(&bit)?, pool.mk_true()),
                    (bit, pool.mk_false()),
                ]
            }
            LtlfNode::Next(p) => {
                let t = pool.mk_and(pool.mk_state(p.0), pool.mk_state(state_e));
                vec![(alg.top(), t)]
            }
            LtlfNode::WeakNext(p) => {
                let t = pool.mk_or(pool.mk_state(p.0), pool.mk_state(state_end));
                vec![(alg.top(), t)]
            }
            LtlfNode::And(p, q) => {
                let dp = self.delta(p, alg, b, state_e, state_end, memo)?;
                let dq = self.delta(q, alg, b, state_e, state_end, memo)?;
                combine(alg, &dp, &dq, |x, y| pool.mk_and(x, y))?
            }
            LtlfNode::Or(p, q) => {
                let dp = self.delta(p, alg, b, state_e, state_end, memo)?;
                let dq = self.delta(q, alg, b, state_e, state_end, memo)?;
                combine(alg, &dp, &dq, |x, y| pool.mk_or(x, y))?
            }
            LtlfNode::Until(p, q) => {
                // delta(q) | (delta(p) & self-loop)
                let dq = self.delta(q, alg, b, state_e, state_end, memo)?;
                let dp = self.delta(p, alg, b, state_e, state_end, memo)?;
                let looped: Vec<_> = dp
                    .into_iter()
                    .map(|(g, t)| (g, pool.mk_and(t, pool.mk_state(f.0))))
                    .collect();
                combine(alg, &dq, &looped, |x, y| pool.mk_or(x, y))?
            }
            LtlfNode::Release(p, q) => {
                // delta(q) & (delta(p) | self-loop)
                let dq = self.delta(q, alg, b, state_e, state_end, memo)?;
                let dp = self.delta(p, alg, b, state_e, state_end, memo)?;
                let looped: Vec<_> = dp
                    .into_iter()
                    .map(|(g, t)| (g, pool.mk_or(t, pool.mk_state(f.0))))
                    .collect();
                combine(alg, &dq, &looped, |x, y| pool.mk_and(x, y))?
            }
        };
        memo.insert(f, row.clone());
        Ok(row)
    }
}

/// Pairwise guard meets of two symbolic rows; unsatisfiable meets pruned.
fn combine(
    alg: &BvAlgebra,
    left: &[(BvPredicate, PbfId)],
    right: &[(BvPredicate, PbfId)],
    op: impl Fn(PbfId, PbfId) -> PbfId,
) -> Result<Vec<(BvPredicate, PbfId)>> {
    let mut out = Vec::new();
    for (g1, t1) in left {
        for (g2, t2) in right {
            let g = alg.and(g1, g2)?;
            if alg.is_sat(&g) {
                out.push((g, op(*t1, *t2)));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// parsing

/// Surface AST before NNF.
enum Ast {
    True,
    False,
    Atom(String),
    Not(Box<Ast>),
    And(Box<Ast>, Box<Ast>),
    Or(Box<Ast>, Box<Ast>),
    Imp(Box<Ast>, Box<Ast>),
    Next(Box<Ast>),
    WeakNext(Box<Ast>),
    Until(Box<Ast>, Box<Ast>),
    Release(Box<Ast>, Box<Ast>),
    Eventually(Box<Ast>),
    Always(Box<Ast>),
}

struct Lexer {
    toks: Vec<Tok>,
    pos: usize,
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Word(String),
    Punct(char),
}

fn lex(text: &str) -> Result<Lexer> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push(Tok::Word(chars[start..i].iter().collect()));
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            toks.push(Tok::Punct('>'));
            i += 2;
        } else if matches!(c, '!' | '&' | '|' | '(' | ')') {
            toks.push(Tok::Punct(c));
            i += 1;
        } else {
            return Err(Error::parse(1, format!("unexpected character `{c}`")));
        }
    }
    Ok(Lexer { toks, pos: 0 })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(s)) if s == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

// precedence, loosest first: ->  |  &  U/R  unary
fn p_imp(lx: &mut Lexer) -> Result<Ast> {
    let lhs = p_or(lx)?;
    if lx.eat_punct('>') {
        let rhs = p_imp(lx)?;
        return Ok(Ast::Imp(Box::new(lhs), Box::new(rhs)));
    }
    Ok(lhs)
}

fn p_or(lx: &mut Lexer) -> Result<Ast> {
    let mut lhs = p_and(lx)?;
    while lx.eat_punct('|') {
        let rhs = p_and(lx)?;
        lhs = Ast::Or(Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn p_and(lx: &mut Lexer) -> Result<Ast> {
    let mut lhs = p_temporal(lx)?;
    while lx.eat_punct('&') {
        let rhs = p_temporal(lx)?;
        lhs = Ast::And(Box::new(lhs), Box::new(rhs));
    }
    Ok(lhs)
}

fn p_temporal(lx: &mut Lexer) -> Result<Ast> {
    let lhs = p_unary(lx)?;
    if lx.eat_word("U") {
        let rhs = p_temporal(lx)?;
        return Ok(Ast::Until(Box::new(lhs), Box::new(rhs)));
    }
    if lx.eat_word("R") {
        let rhs = p_temporal(lx)?;
        return Ok(Ast::Release(Box::new(lhs), Box::new(rhs)));
    }
    Ok(lhs)
}

fn p_unary(lx: &mut Lexer) -> Result<Ast> {
    if lx.eat_punct('!') {
        return Ok(Ast::Not(Box::new(p_unary(lx)?)));
    }
    if lx.eat_word("X") {
        return Ok(Ast::Next(Box::new(p_unary(lx)?)));
    }
    if lx.eat_word("N") {
        return Ok(Ast::WeakNext(Box::new(p_unary(lx)?)));
    }
    if lx.eat_word("F") {
        return Ok(Ast::Eventually(Box::new(p_unary(lx)?)));
    }
    if lx.eat_word("G") {
        return Ok(Ast::Always(Box::new(p_unary(lx)?)));
    }
    if lx.eat_punct('(') {
        let inner = p_imp(lx)?;
        if !lx.eat_punct(')') {
            return Err(Error::parse(1, "expected `)`".to_string()));
        }
        return Ok(inner);
    }
    match lx.bump() {
        Some(Tok::Word(w)) if w == "true" => Ok(Ast::True),
        Some(Tok::Word(w)) if w == "false" => Ok(Ast::False),
        Some(Tok::Word(w)) => Ok(Ast::Atom(w)),
        other => Err(Error::parse(
            1,
            format!("expected a formula, found {other:?}"),
        )),
    }
}

fn nnf(ast: &Ast, neg: bool, b: &mut LtlfBuilder) -> LtlfId {
    match ast {
        Ast::True => {
            if neg {
                b.mk_false()
            } else {
                b.mk_true()
            }
        }
        Ast::False => {
            if neg {
                b.mk_true()
            } else {
                b.mk_false()
            }
        }
        Ast::Atom(name) => {
            let i = b.atom_id(name);
            if neg {
                b.mk_not_atom(i)
            } else {
                b.mk_atom(i)
            }
        }
        Ast::Not(p) => nnf(p, !neg, b),
        Ast::And(p, q) => {
            let (p, q) = (nnf(p, neg, b), nnf(q, neg, b));
            if neg {
                b.mk_or(p, q)
            } else {
                b.mk_and(p, q)
            }
        }
        Ast::Or(p, q) => {
            let (p, q) = (nnf(p, neg, b), nnf(q, neg, b));
            if neg {
                b.mk_and(p, q)
            } else {
                b.mk_or(p, q)
            }
        }
        Ast::Imp(p, q) => {
            // p -> q == !p | q
            let (p, q) = (nnf(p, !neg, b), nnf(q, neg, b));
            if neg {
                b.mk_and(p, q)
            } else {
                b.mk_or(p, q)
            }
        }
        Ast::Next(p) => {
            let p = nnf(p, neg, b);
            if neg {
                b.mk_weak_next(p)
            } else {
                b.mk_next(p)
            }
        }
        Ast::WeakNext(p) => {
            let p = nnf(p, neg, b);
            if neg {
                b.mk_next(p)
            } else {
                b.mk_weak_next(p)
            }
        }
        Ast::Until(p, q) => {
            let (p, q) = (nnf(p, neg, b), nnf(q, neg, b));
            if neg {
                b.mk_release(p, q)
            } else {
                b.mk_until(p, q)
            }
        }
        Ast::Release(p, q) => {
            let (p, q) = (nnf(p, neg, b), nnf(q, neg, b));
            if neg {
                b.mk_until(p, q)
            } else {
                b.mk_release(p, q)
            }
        }
        Ast::Eventually(p) => {
            let p = nnf(p, neg, b);
            if neg {
                // !(F p) == G !p
                let f = b.mk_false();
                b.mk_release(f, p)
            } else {
                let t = b.mk_true();
                b.mk_until(t, p)
            }
        }
        Ast::Always(p) => {
            let p = nnf(p, neg, b);
            if neg {
                let t = b.mk_true();
                b.mk_until(t, p)
            } else {
                let f = b.mk_false();
                b.mk_release(f, p)
            }
        }
    }
}

/// Parse a formula in the surface grammar (`! & | -> X N U R F G`, atoms,
/// `true`, `false`, parentheses) into NNF.
pub fn parse_ltlf(text: &str) -> Result<Ltlf> {
    let mut lx = lex(text)?;
    let ast = p_imp(&mut lx)?;
    if lx.peek().is_some() {
        return Err(Error::parse(
            1,
            format!("trailing input after formula: {:?}", lx.peek().unwrap()),
        ));
    }
    let mut b = LtlfBuilder::new();
    let root = nnf(&ast, false, &mut b);
    Ok(b.finish(root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::check_empty;

    fn traces(num_atoms: u32, max_len: usize) -> Vec<Vec<u64>> {
        let sigma = 1u64 << num_atoms;
        let mut out: Vec<Vec<u64>> = Vec::new();
        let mut layer: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|t| {
                    (0..sigma).map(move |c| {
                        let mut t2 = t.clone();
                        t2.push(c);
                        t2
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    fn agrees_with_oracle(text: &str, max_len: usize) {
        let f = parse_ltlf(text).unwrap();
        let m = f.to_safa().unwrap();
        assert_eq!(m.accepts(&[]).unwrap(), f.empty_val(), "empty trace: {text}");
        for t in traces(f.atoms().len().max(1) as u32, max_len) {
            assert_eq!(
                m.accepts(&t).unwrap(),
                f.eval_trace(&t),
                "formula {text}, trace {t:?}"
            );
        }
    }

    #[test]
    fn desugaring() {
        let f = parse_ltlf("G p").unwrap();
        // false R p
        match f.node(f.root()) {
            LtlfNode::Release(l, r) => {
                assert_eq!(f.node(l), LtlfNode::False);
                assert_eq!(f.node(r), LtlfNode::Atom(0));
            }
            n => panic!("expected Release, got {n:?}"),
        }
        let g = parse_ltlf("!(p U q)").unwrap();
        match g.node(g.root()) {
            LtlfNode::Release(l, r) => {
                assert_eq!(g.node(l), LtlfNode::NotAtom(0));
                assert_eq!(g.node(r), LtlfNode::NotAtom(1));
            }
            n => panic!("expected Release, got {n:?}"),
        }
        assert_eq!(
            parse_ltlf("F p & G !p").unwrap().format(),
            "((true U p) & (false R !p))"
        );
        // implication desugars before NNF
        assert_eq!(parse_ltlf("p -> q").unwrap().format(), "(!p | q)");
    }

    #[test]
    fn translation_matches_trace_oracle() {
        for text in [
            "p",
            "!p",
            "X p",
            "N p",
            "p U q",
            "p R q",
            "G p",
            "F p",
            "F p & G !p",
            "G (p -> X q)",
            "(X p) | (N !p)",
            "p U (q U p)",
            "G F p",
        ] {
            agrees_with_oracle(text, 4);
        }
    }

    #[test]
    fn fixed_satisfiability_cases() {
        let sat = |text: &str| {
            let m = parse_ltlf(text).unwrap().to_safa().unwrap();
            !check_empty(&m, None).unwrap().verdict.is_equivalent()
        };
        assert!(!sat("false"));
        assert!(sat("G p"));
        assert!(!sat("F p & G !p"));
        assert!(sat("F p"));
        assert!(!sat("p & !p"));
    }

    #[test]
    fn strong_and_weak_next_differ_on_short_traces() {
        let xt = parse_ltlf("X true").unwrap().to_safa().unwrap();
        let nf = parse_ltlf("N false").unwrap().to_safa().unwrap();
        // X true: traces of length >= 2; N false: traces of length <= 1.
        // atom-free formulas still get a 1-character alphabet slot
        assert!(!xt.accepts(&[]).unwrap());
        assert!(!xt.accepts(&[0]).unwrap());
        assert!(xt.accepts(&[0, 0]).unwrap());
        assert!(xt.accepts(&[0, 0, 0]).unwrap());
        assert!(nf.accepts(&[]).unwrap());
        assert!(nf.accepts(&[0]).unwrap());
        assert!(!nf.accepts(&[0, 0]).unwrap());
    }

    #[test]
    fn state_count_is_linear() {
        let f = parse_ltlf("G (p -> X q) & F p").unwrap();
        let m = f.to_safa().unwrap();
        assert!(m.state_count() as usize <= f.subformula_count() + 2);
    }

    #[test]
    fn x_nesting_depth() {
        assert_eq!(parse_ltlf("p").unwrap().x_nesting(), 0);
        assert_eq!(parse_ltlf("X X p").unwrap().x_nesting(), 2);
        // weak next does not force trace length
        assert_eq!(parse_ltlf("N X p").unwrap().x_nesting(), 1);
        assert_eq!(parse_ltlf("(X p) U q").unwrap().x_nesting(), 1);
    }
}
