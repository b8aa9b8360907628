//! Input-language frontends: LTL-f formulas (bitvector algebra) and a
//! practical regex subset (interval algebra).

pub mod ltlf;
pub mod regex;

pub use ltlf::{parse_ltlf, Ltlf, LtlfBuilder, LtlfId, LtlfNode};
pub use regex::{parse_regex, reference_match, regex_to_sfa, RegexAst};
