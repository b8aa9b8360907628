//! Union-of-intervals predicates over unsigned codepoints.

use super::{fresh_instance_tag, Algebra};
use crate::error::{Error, Result};

/// A set of characters represented as sorted, disjoint, non-adjacent
/// inclusive intervals. Canonical: equal denotations have equal
/// representations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalPredicate {
    tag: u32,
    ivs: Vec<(u32, u32)>,
}

impl IntervalPredicate {
    pub fn intervals(&self) -> &[(u32, u32)] {
        &self.ivs
    }
}

/// Interval algebra over the domain `0..=max`. The default bound is the
/// Unicode codepoint range.
#[derive(Debug)]
pub struct IntervalAlgebra {
    tag: u32,
    max: u32,
}

pub const UNICODE_MAX: u32 = 0x10FFFF;

impl Default for IntervalAlgebra {
    fn default() -> Self {
        Self::new(UNICODE_MAX)
    }
}

impl IntervalAlgebra {
    pub fn new(max: u32) -> Self {
        IntervalAlgebra {
            tag: fresh_instance_tag(),
            max,
        }
    }

    pub fn domain_max(&self) -> u32 {
        self.max
    }

    /// Build a predicate from arbitrary inclusive ranges; the result is
    /// clipped to the domain and normalized to canonical form.
    pub fn from_ranges(&self, ranges: &[(u32, u32)]) -> IntervalPredicate {
        let mut ivs: Vec<(u32, u32)> = ranges
            .iter()
            .filter(|&&(lo, hi)| lo <= hi && lo <= self.max)
            .map(|&(lo, hi)| (lo, hi.min(self.max)))
            .collect();
        ivs.sort_unstable();
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(ivs.len());
        for (lo, hi) in ivs {
            match out.last_mut() {
                // merge overlapping or adjacent runs
                Some(&mut (_, ref mut phi)) if lo <= phi.saturating_add(1) => {
                    *phi = (*phi).max(hi);
                }
                _ => out.push((lo, hi)),
            }
        }
        IntervalPredicate {
            tag: self.tag,
            ivs: out,
        }
    }

    pub fn singleton(&self, c: u32) -> IntervalPredicate {
        self.from_ranges(&[(c, c)])
    }

    fn check(&self, p: &IntervalPredicate) -> Result<()> {
        if p.tag != self.tag {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }
}

impl Algebra for IntervalAlgebra {
    type Pred = IntervalPredicate;
    type Char = u32;

    fn top(&self) -> IntervalPredicate {
        IntervalPredicate {
            tag: self.tag,
            ivs: vec![(0, self.max)],
        }
    }

    fn bot(&self) -> IntervalPredicate {
        IntervalPredicate {
            tag: self.tag,
            ivs: Vec::new(),
        }
    }

    fn and(&self, a: &IntervalPredicate, b: &IntervalPredicate) -> Result<IntervalPredicate> {
        self.check(a)?;
        self.check(b)?;
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.ivs.len() && j < b.ivs.len() {
            let (alo, ahi) = a.ivs[i];
            let (blo, bhi) = b.ivs[j];
            let lo = alo.max(blo);
            let hi = ahi.min(bhi);
            if lo <= hi {
                out.push((lo, hi));
            }
            if ahi <= bhi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(IntervalPredicate {
            tag: self.tag,
            ivs: out,
        })
    }

    fn or(&self, a: &IntervalPredicate, b: &IntervalPredicate) -> Result<IntervalPredicate> {
        self.check(a)?;
        self.check(b)?;
        let mut all: Vec<(u32, u32)> = a.ivs.iter().chain(b.ivs.iter()).copied().collect();
        all.sort_unstable();
        Ok(self.from_ranges(&all))
    }

    fn not(&self, a: &IntervalPredicate) -> Result<IntervalPredicate> {
        self.check(a)?;
        let mut out = Vec::with_capacity(a.ivs.len() + 1);
        let mut next = 0u32;
        for &(lo, hi) in &a.ivs {
            if lo > next {
                out.push((next, lo - 1));
            }
            if hi >= self.max {
                return Ok(IntervalPredicate {
                    tag: self.tag,
                    ivs: out,
                });
            }
            next = hi + 1;
        }
        out.push((next, self.max));
        Ok(IntervalPredicate {
            tag: self.tag,
            ivs: out,
        })
    }

    fn is_sat(&self, a: &IntervalPredicate) -> bool {
        !a.ivs.is_empty()
    }

    fn witness(&self, a: &IntervalPredicate) -> Result<u32> {
        self.check(a)?;
        a.ivs.first().map(|&(lo, _)| lo).ok_or(Error::UnsatWitness)
    }

    fn member(&self, c: u32, a: &IntervalPredicate) -> Result<bool> {
        self.check(a)?;
        if c > self.max {
            return Err(Error::OutOfDomain(c as u64));
        }
        Ok(a.ivs
            .binary_search_by(|&(lo, hi)| {
                if c < lo {
                    std::cmp::Ordering::Greater
                } else if c > hi {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Equal
                }
            })
            .is_ok())
    }

    fn format_pred(&self, a: &IntervalPredicate) -> String {
        if a.ivs.is_empty() {
            return "false".to_string();
        }
        if a.ivs == [(0, self.max)] {
            return "true".to_string();
        }
        let mut s = String::from("[");
        for (k, &(lo, hi)) in a.ivs.iter().enumerate() {
            if k > 0 {
                s.push(' ');
            }
            if lo == hi {
                s.push_str(&lo.to_string());
            } else {
                s.push_str(&format!("{lo}-{hi}"));
            }
        }
        s.push(']');
        s
    }

    fn format_char(&self, c: u32) -> String {
        match char::from_u32(c) {
            Some(ch) if !ch.is_control() => format!("{c} ({ch:?})"),
            _ => c.to_string(),
        }
    }
}
