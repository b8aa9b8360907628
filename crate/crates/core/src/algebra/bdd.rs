//! Bitvector predicates over k atomic propositions, represented as reduced
//! ordered BDDs with a per-instance unique table. Characters are k-bit
//! vectors; bit i of a character is the value of atom i.

use std::cell::RefCell;
use std::collections::HashMap;

use super::{fresh_instance_tag, Algebra};
use crate::error::{Error, Result};

/// A BDD node index inside one `BvAlgebra` instance.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BvPredicate {
    tag: u32,
    node: u32,
}

const BOT: u32 = 0;
const TOP: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Node {
    var: u32,
    lo: u32,
    hi: u32,
}

struct Manager {
    nodes: Vec<Node>,
    unique: HashMap<Node, u32>,
    and_cache: HashMap<(u32, u32), u32>,
    or_cache: HashMap<(u32, u32), u32>,
    not_cache: HashMap<u32, u32>,
}

impl Manager {
    fn new(k: u32) -> Self {
        // terminals sit at indices 0 and 1 with a sentinel variable
        let term = |_| Node {
            var: k,
            lo: 0,
            hi: 0,
        };
        Manager {
            nodes: vec![term(0), term(1)],
            unique: HashMap::new(),
            and_cache: HashMap::new(),
            or_cache: HashMap::new(),
            not_cache: HashMap::new(),
        }
    }

    fn mk(&mut self, var: u32, lo: u32, hi: u32) -> u32 {
        if lo == hi {
            return lo;
        }
        let node = Node { var, lo, hi };
        if let Some(&idx) = self.unique.get(&node) {
            return idx;
        }
        let idx = self.nodes.len() as u32;
        self.nodes.push(node);
        self.unique.insert(node, idx);
        idx
    }

    fn and(&mut self, a: u32, b: u32) -> u32 {
        if a == b || b == TOP {
            return a;
        }
        if a == TOP {
            return b;
        }
        if a == BOT || b == BOT {
            return BOT;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&r) = self.and_cache.get(&key) {
            return r;
        }
        let (na, nb) = (self.nodes[a as usize], self.nodes[b as usize]);
        let var = na.var.min(nb.var);
        let (alo, ahi) = if na.var == var { (na.lo, na.hi) } else { (a, a) };
        let (blo, bhi) = if nb.var == var { (nb.lo, nb.hi) } else { (b, b) };
        let lo = self.and(alo, blo);
        let hi = self.and(ahi, bhi);
        let r = self.mk(var, lo, hi);
        self.and_cache.insert(key, r);
        r
    }

    fn or(&mut self, a: u32, b: u32) -> u32 {
        if a == b || b == BOT {
            return a;
        }
        if a == BOT {
            return b;
        }
        if a == TOP || b == TOP {
            return TOP;
        }
        let key = (a.min(b), a.max(b));
        if let Some(&r) = self.or_cache.get(&key) {
            return r;
        }
        let (na, nb) = (self.nodes[a as usize], self.nodes[b as usize]);
        let var = na.var.min(nb.var);
        let (alo, ahi) = if na.var == var { (na.lo, na.hi) } else { (a, a) };
        let (blo, bhi) = if nb.var == var { (nb.lo, nb.hi) } else { (b, b) };
        let lo = self.or(alo, blo);
        let hi = self.or(ahi, bhi);
        let r = self.mk(var, lo, hi);
        self.or_cache.insert(key, r);
        r
    }

    fn not(&mut self, a: u32) -> u32 {
        match a {
            BOT => TOP,
            TOP => BOT,
            _ => {
                if let Some(&r) = self.not_cache.get(&a) {
                    return r;
                }
                let n = self.nodes[a as usize];
                let lo = self.not(n.lo);
                let hi = self.not(n.hi);
                let r = self.mk(n.var, lo, hi);
                self.not_cache.insert(a, r);
                r
            }
        }
    }

    /// Minimum integer (bit i of the value = atom i) satisfying the node.
    /// Unconstrained variables are taken as 0, which is always minimal.
    fn min_sat(&self, a: u32, memo: &mut HashMap<u32, Option<u64>>) -> Option<u64> {
        match a {
            BOT => None,
            TOP => Some(0),
            _ => {
                if let Some(&r) = memo.get(&a) {
                    return r;
                }
                let n = self.nodes[a as usize];
                let lo = self.min_sat(n.lo, memo);
                let hi = self
                    .min_sat(n.hi, memo)
                    .map(|v| v | (1u64 << n.var));
                let r = match (lo, hi) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, None) => x,
                    (None, y) => y,
                };
                memo.insert(a, r);
                r
            }
        }
    }

    fn eval(&self, mut a: u32, c: u64) -> bool {
        while a > TOP {
            let n = self.nodes[a as usize];
            a = if c >> n.var & 1 == 1 { n.hi } else { n.lo };
        }
        a == TOP
    }
}

/// The k-bit bitvector algebra. Atom i corresponds to BDD variable i, in
/// declaration order; no dynamic reordering.
pub struct BvAlgebra {
    tag: u32,
    atoms: Vec<String>,
    mgr: RefCell<Manager>,
}

impl std::fmt::Debug for BvAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BvAlgebra")
            .field("tag", &self.tag)
            .field("atoms", &self.atoms)
            .finish()
    }
}

impl BvAlgebra {
    pub fn new(atoms: Vec<String>) -> Self {
        assert!(atoms.len() <= 32, "at most 32 atoms supported");
        let k = atoms.len() as u32;
        BvAlgebra {
            tag: fresh_instance_tag(),
            atoms,
            mgr: RefCell::new(Manager::new(k)),
        }
    }

    /// Anonymous atoms b0..b{k-1}.
    pub fn with_width(k: u32) -> Self {
        Self::new((0..k).map(|i| format!("b{i}")).collect())
    }

    pub fn width(&self) -> u32 {
        self.atoms.len() as u32
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_index(&self, name: &str) -> Option<u32> {
        self.atoms.iter().position(|a| a == name).map(|i| i as u32)
    }

    /// The predicate "atom i holds".
    pub fn atom(&self, i: u32) -> BvPredicate {
        assert!(i < self.width());
        let node = self.mgr.borrow_mut().mk(i, BOT, TOP);
        BvPredicate {
            tag: self.tag,
            node,
        }
    }

    fn check(&self, p: &BvPredicate) -> Result<()> {
        if p.tag != self.tag {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn wrap(&self, node: u32) -> BvPredicate {
        BvPredicate {
            tag: self.tag,
            node,
        }
    }

    /// Atoms set in `c`, by name; used when printing trace characters.
    pub fn decode_char(&self, c: u64) -> Vec<&str> {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| c >> i & 1 == 1)
            .map(|(_, a)| a.as_str())
            .collect()
    }
}

impl Algebra for BvAlgebra {
    type Pred = BvPredicate;
    type Char = u64;

    fn top(&self) -> BvPredicate {
        self.wrap(TOP)
    }

    fn bot(&self) -> BvPredicate {
        self.wrap(BOT)
    }

    fn and(&self, a: &BvPredicate, b: &BvPredicate) -> Result<BvPredicate> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mgr.borrow_mut().and(a.node, b.node)))
    }

    fn or(&self, a: &BvPredicate, b: &BvPredicate) -> Result<BvPredicate> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mgr.borrow_mut().or(a.node, b.node)))
    }

    fn not(&self, a: &BvPredicate) -> Result<BvPredicate> {
        self.check(a)?;
        Ok(self.wrap(self.mgr.borrow_mut().not(a.node)))
    }

    fn is_sat(&self, a: &BvPredicate) -> bool {
        a.node != BOT
    }

    fn witness(&self, a: &BvPredicate) -> Result<u64> {
        self.check(a)?;
        let mgr = self.mgr.borrow();
        mgr.min_sat(a.node, &mut HashMap::new())
            .ok_or(Error::UnsatWitness)
    }

    fn member(&self, c: u64, a: &BvPredicate) -> Result<bool> {
        self.check(a)?;
        if self.width() < 64 && c >> self.width() != 0 {
            return Err(Error::OutOfDomain(c));
        }
        Ok(self.mgr.borrow().eval(a.node, c))
    }

    fn format_pred(&self, a: &BvPredicate) -> String {
        match a.node {
            BOT => "false".to_string(),
            TOP => "true".to_string(),
            _ => {
                // sum-of-products over the BDD paths to 1
                let mgr = self.mgr.borrow();
                let mut terms = Vec::new();
                let mut lits: Vec<String> = Vec::new();
                self.paths(&mgr, a.node, &mut lits, &mut terms);
                terms.join(" | ")
            }
        }
    }

    fn format_char(&self, c: u64) -> String {
        let set = self.decode_char(c);
        format!("{{{}}}", set.join(","))
    }
}

impl BvAlgebra {
    fn paths(&self, mgr: &Manager, a: u32, lits: &mut Vec<String>, out: &mut Vec<String>) {
        if a == BOT {
            return;
        }
        if a == TOP {
            if lits.is_empty() {
                out.push("true".to_string());
            } else {
                out.push(lits.join(" & "));
            }
            return;
        }
        let n = mgr.nodes[a as usize];
        let name = &self.atoms[n.var as usize];
        lits.push(format!("!{name}"));
        self.paths(mgr, n.lo, lits, out);
        lits.pop();
        lits.push(name.clone());
        self.paths(mgr, n.hi, lits, out);
        lits.pop();
    }
}
