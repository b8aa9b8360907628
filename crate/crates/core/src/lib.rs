//! Symbolic alternating finite automata over effective Boolean algebras:
//! construction, Boolean language operations, and decision procedures
//! (equivalence by bisimulation up to congruence, plus classical baselines).

pub mod algebra;
pub mod baseline;
pub mod congruence;
pub mod equivalence;
pub mod error;
pub mod format;
pub mod frontends;
pub mod gen;
pub mod pbf;
pub mod safa;
pub mod sat;

pub use algebra::bdd::{BvAlgebra, BvPredicate};
pub use algebra::interval::{IntervalAlgebra, IntervalPredicate};
pub use algebra::Algebra;
pub use baseline::{
    determinize, hk_equiv, reverse_check_config, reverse_check_empty, reverse_check_equiv,
    sfa_check_equiv, sfa_intersect, to_sfa, Dfa, Sfa,
};
pub use equivalence::{check_config_equiv, check_empty, check_equiv, EngineStats, Verdict};
pub use error::{Error, Result};
pub use format::{
    parse_automaton, parse_automaton_sharing, parse_pbf, print_automaton, AnyAutomaton,
};
pub use pbf::{Model, PbfId, PbfNode, PbfPool};
pub use safa::{Safa, SafaBuilder};
