//! Effective Boolean algebras: the character-set interface and two concrete
//! instances (unions of intervals over codepoints, BDD-backed bitvector
//! predicates).
//!
//! An algebra instance owns its predicates: predicates carry an instance tag
//! and combining predicates from different instances is rejected.

pub mod bdd;
pub mod interval;

pub use bdd::{BvAlgebra, BvPredicate};
pub use interval::{IntervalAlgebra, IntervalPredicate};

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::Result;

static NEXT_INSTANCE: AtomicU32 = AtomicU32::new(0);

pub(crate) fn fresh_instance_tag() -> u32 {
    NEXT_INSTANCE.fetch_add(1, Ordering::Relaxed)
}

/// An effective Boolean algebra over a character domain.
///
/// Predicates denote sets of characters; the connectives obey the usual
/// set-algebra laws and satisfiability / membership are decidable.
pub trait Algebra {
    type Pred: Clone + Eq + Hash + Debug;
    type Char: Copy + Eq + Ord + Hash + Debug;

    /// Predicate denoting the full domain.
    fn top(&self) -> Self::Pred;
    /// Predicate denoting the empty set.
    fn bot(&self) -> Self::Pred;
    fn and(&self, a: &Self::Pred, b: &Self::Pred) -> Result<Self::Pred>;
    fn or(&self, a: &Self::Pred, b: &Self::Pred) -> Result<Self::Pred>;
    fn not(&self, a: &Self::Pred) -> Result<Self::Pred>;
    fn is_sat(&self, a: &Self::Pred) -> bool;
    /// The minimum domain element of the denotation. Errors if unsatisfiable.
    fn witness(&self, a: &Self::Pred) -> Result<Self::Char>;
    fn member(&self, c: Self::Char, a: &Self::Pred) -> Result<bool>;

    /// Render a predicate in the automaton file syntax.
    fn format_pred(&self, a: &Self::Pred) -> String;
    /// Render a character for diagnostics and counterexample output.
    fn format_char(&self, c: Self::Char) -> String;
}

/// One satisfiable minterm of a list of predicates: a witness character, the
/// class predicate (conjunction of the predicates containing the witness and
/// the negations of the rest), and the membership mask.
pub struct Minterm<A: Algebra> {
    pub witness: A::Char,
    pub class: A::Pred,
    pub mask: Vec<bool>,
}

/// Enumerate one representative per minterm class of `preds`, in witness
/// order, using satisfiability queries with blocking clauses. The visited
/// class predicates are pairwise disjoint and jointly cover the domain.
pub fn for_each_minterm<A: Algebra>(
    alg: &A,
    preds: &[A::Pred],
    mut f: impl FnMut(Minterm<A>) -> Result<()>,
) -> Result<()> {
    let mut chars = alg.top();
    while alg.is_sat(&chars) {
        let a = alg.witness(&chars)?;
        let mut class = alg.top();
        let mut mask = Vec::with_capacity(preds.len());
        for p in preds {
            if alg.member(a, p)? {
                class = alg.and(&class, p)?;
                mask.push(true);
            } else {
                class = alg.and(&class, &alg.not(p)?)?;
                mask.push(false);
            }
        }
        chars = alg.and(&chars, &alg.not(&class)?)?;
        f(Minterm {
            witness: a,
            class,
            mask,
        })?;
    }
    Ok(())
}
