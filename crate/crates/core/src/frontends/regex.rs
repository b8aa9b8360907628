//! A practical regex subset compiled to symbolic finite automata over the
//! interval algebra, full-match semantics.
//!
//! Supported: literals, `.`, classes `[a-z0-9]` / `[^...]`, escapes
//! (`\d \w \s \.` and escaped punctuation), grouping, `|`, `*`, `+`, `?`,
//! `{m}`, `{m,n}`, `{m,}`. Rejected with an error: anchors, backreferences,
//! lookaround, flags.

use std::collections::BTreeSet;
use std::rc::Rc;

use crate::algebra::interval::IntervalAlgebra;
use crate::algebra::Algebra;
use crate::baseline::Sfa;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexAst {
    /// Matches only the empty string.
    Empty,
    /// A set of codepoint ranges; `negated` complements against the domain.
    Class {
        ranges: Vec<(u32, u32)>,
        negated: bool,
    },
    /// `.` — any character.
    Dot,
    Concat(Vec<RegexAst>),
    Alt(Vec<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
    Question(Box<RegexAst>),
    /// `{m,n}`; `n = None` means unbounded (`{m,}`).
    Repeat(Box<RegexAst>, u32, Option<u32>),
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(1, format!("regex error at offset {}: {msg}", self.pos))
    }

    fn alt(&mut self) -> Result<RegexAst> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.bump();
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            RegexAst::Alt(branches)
        })
    }

    fn concat(&mut self) -> Result<RegexAst> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        Ok(match parts.len() {
            0 => RegexAst::Empty,
            1 => parts.pop().unwrap(),
            _ => RegexAst::Concat(parts),
        })
    }

    fn postfix(&mut self) -> Result<RegexAst> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    r = RegexAst::Star(Box::new(r));
                }
                Some('+') => {
                    self.bump();
                    r = RegexAst::Plus(Box::new(r));
                }
                Some('?') => {
                    self.bump();
                    r = RegexAst::Question(Box::new(r));
                }
                Some('{') => {
                    self.bump();
                    let m = self.number()?;
                    let n = if self.peek() == Some(',') {
                        self.bump();
                        if self.peek() == Some('}') {
                            None
                        } else {
                            Some(self.number()?)
                        }
                    } else {
                        Some(m)
                    };
                    if self.bump() != Some('}') {
                        return Err(self.err("expected `}`"));
                    }
                    if let Some(n) = n {
                        if m > n {
                            return Err(self.err("bad repeat bounds {m,n} with m > n"));
                        }
                    }
                    r = RegexAst::Repeat(Box::new(r), m, n);
                }
                _ => return Ok(r),
            }
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("expected a number"))
    }

    fn atom(&mut self) -> Result<RegexAst> {
        match self.bump() {
            None => Err(self.err("unexpected end of pattern")),
            Some('(') => {
                if self.peek() == Some('?') {
                    return Err(Error::UnsupportedRegex(
                        "group modifiers / lookaround `(?...)`".into(),
                    ));
                }
                let inner = self.alt()?;
                if self.bump() != Some(')') {
                    return Err(self.err("unclosed group"));
                }
                Ok(inner)
            }
            Some('[') => self.class(),
            Some('.') => Ok(RegexAst::Dot),
            Some('^') | Some('$') => Err(Error::UnsupportedRegex("anchors `^`/`$`".into())),
            Some('\\') => self.escape(false),
            Some(c) if "*+?{".contains(c) => Err(self.err(&format!("dangling `{c}`"))),
            Some(c) => Ok(RegexAst::Class {
                ranges: vec![(c as u32, c as u32)],
                negated: false,
            }),
        }
    }

    fn escape(&mut self, in_class: bool) -> Result<RegexAst> {
        let c = self
            .bump()
            .ok_or_else(|| self.err("dangling backslash"))?;
        let class = |ranges: Vec<(u32, u32)>| RegexAst::Class {
            ranges,
            negated: false,
        };
        match c {
            'd' => Ok(class(vec![('0' as u32, '9' as u32)])),
            'w' => Ok(class(vec![
                ('0' as u32, '9' as u32),
                ('A' as u32, 'Z' as u32),
                ('_' as u32, '_' as u32),
                ('a' as u32, 'z' as u32),
            ])),
            's' => Ok(class(vec![
                (9, 10),
                (13, 13),
                (32, 32),
            ])),
            'n' => Ok(class(vec![(10, 10)])),
            't' => Ok(class(vec![(9, 9)])),
            'r' => Ok(class(vec![(13, 13)])),
            c if c.is_ascii_digit() => {
                Err(Error::UnsupportedRegex(format!("backreference `\\{c}`")))
            }
            c if c.is_ascii_alphanumeric() && !in_class => Err(Error::UnsupportedRegex(
                format!("escape `\\{c}`"),
            )),
            c => Ok(class(vec![(c as u32, c as u32)])),
        }
    }

    fn class(&mut self) -> Result<RegexAst> {
        let negated = if self.peek() == Some('^') {
            self.bump();
            true
        } else {
            false
        };
        let mut ranges: Vec<(u32, u32)> = Vec::new();
        let mut first = true;
        loop {
            let c = self
                .bump()
                .ok_or_else(|| self.err("unclosed character class"))?;
            if c == ']' && !first {
                break;
            }
            first = false;
            let lo = if c == '\\' {
                match self.escape(true)? {
                    RegexAst::Class {
                        ranges: sub,
                        negated: false,
                    } => {
                        if sub.len() == 1 && sub[0].0 == sub[0].1 {
                            sub[0].0
                        } else {
                            ranges.extend(sub);
                            continue;
                        }
                    }
                    _ => return Err(self.err("bad escape in class")),
                }
            } else {
                c as u32
            };
            if self.peek() == Some('-')
                && self.chars.get(self.pos + 1).is_some_and(|&c| c != ']')
            {
                self.bump();
                let hc = self
                    .bump()
                    .ok_or_else(|| self.err("unclosed character class"))?;
                let hi = if hc == '\\' {
                    match self.escape(true)? {
                        RegexAst::Class { ranges: sub, .. }
                            if sub.len() == 1 && sub[0].0 == sub[0].1 =>
                        {
                            sub[0].0
                        }
                        _ => return Err(self.err("bad range end in class")),
                    }
                } else {
                    hc as u32
                };
                if lo > hi {
                    return Err(self.err("reversed range in class"));
                }
                ranges.push((lo, hi));
            } else {
                ranges.push((lo, lo));
            }
        }
        Ok(RegexAst::Class { ranges, negated })
    }
}

/// Parse a regex in the supported subset.
pub fn parse_regex(text: &str) -> Result<RegexAst> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let r = p.alt()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input (unbalanced `)`?)"));
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// compilation: Thompson construction, then epsilon elimination

struct Nfa {
    state_count: u32,
    eps: Vec<(u32, u32)>,
    trans: Vec<(u32, crate::algebra::interval::IntervalPredicate, u32)>,
}

impl Nfa {
    fn fresh(&mut self) -> u32 {
        self.state_count += 1;
        self.state_count - 1
    }
}

fn class_pred(
    alg: &IntervalAlgebra,
    ranges: &[(u32, u32)],
    negated: bool,
) -> Result<crate::algebra::interval::IntervalPredicate> {
    let p = alg.from_ranges(ranges);
    if negated {
        alg.not(&p)
    } else {
        Ok(p)
    }
}

/// Build the fragment for `r` between fresh entry/exit states.
fn build(
    r: &RegexAst,
    alg: &IntervalAlgebra,
    nfa: &mut Nfa,
    entry: u32,
    exit: u32,
) -> Result<()> {
    match r {
        RegexAst::Empty => nfa.eps.push((entry, exit)),
        RegexAst::Dot => nfa.trans.push((entry, alg.top(), exit)),
        RegexAst::Class { ranges, negated } => {
            nfa.trans.push((entry, class_pred(alg, ranges, *negated)?, exit));
        }
        RegexAst::Concat(parts) => {
            let mut cur = entry;
            for (i, part) in parts.iter().enumerate() {
                let next = if i + 1 == parts.len() {
                    exit
                } else {
                    nfa.fresh()
                };
                build(part, alg, nfa, cur, next)?;
                cur = next;
            }
        }
        RegexAst::Alt(branches) => {
            for b in branches {
                build(b, alg, nfa, entry, exit)?;
            }
        }
        RegexAst::Star(inner) => {
            let hub = nfa.fresh();
            nfa.eps.push((entry, hub));
            nfa.eps.push((hub, exit));
            build(inner, alg, nfa, hub, hub)?;
        }
        RegexAst::Plus(inner) => {
            let hub = nfa.fresh();
            build(inner, alg, nfa, entry, hub)?;
            nfa.eps.push((hub, exit));
            build(inner, alg, nfa, hub, hub)?;
        }
        RegexAst::Question(inner) => {
            nfa.eps.push((entry, exit));
            build(inner, alg, nfa, entry, exit)?;
        }
        RegexAst::Repeat(inner, m, n) => {
            // r{m,n} = r^m followed by n-m optional copies (or a star)
            let mut cur = entry;
            for _ in 0..*m {
                let next = nfa.fresh();
                build(inner, alg, nfa, cur, next)?;
                cur = next;
            }
            match n {
                None => {
                    nfa.eps.push((cur, exit));
                    build(inner, alg, nfa, cur, cur)?;
                }
                Some(n) => {
                    for _ in *m..*n {
                        let next = nfa.fresh();
                        nfa.eps.push((cur, exit));
                        build(inner, alg, nfa, cur, next)?;
                        cur = next;
                    }
                    nfa.eps.push((cur, exit));
                }
            }
        }
    }
    Ok(())
}

/// Compile to an s-FA with full-match semantics; epsilon transitions are
/// eliminated before returning.
pub fn regex_to_sfa(r: &RegexAst, alg: Rc<IntervalAlgebra>) -> Result<Sfa<IntervalAlgebra>> {
    let mut nfa = Nfa {
        state_count: 0,
        eps: Vec::new(),
        trans: Vec::new(),
    };
    let start = nfa.fresh();
    let accept = nfa.fresh();
    build(r, &alg, &mut nfa, start, accept)?;

    // epsilon closures
    let n = nfa.state_count as usize;
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(a, b) in &nfa.eps {
        adj[a as usize].push(b);
    }
    let closure = |s: u32| {
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s as usize] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };

    let mut transitions: BTreeSet<(u32, u32)> = BTreeSet::new(); // (src, trans idx)
    for s in 0..nfa.state_count {
        let cl = closure(s);
        for (i, (src, _, _)) in nfa.trans.iter().enumerate() {
            if cl[*src as usize] {
                transitions.insert((s, i as u32));
            }
        }
    }
    let finals: Vec<u32> = (0..nfa.state_count)
        .filter(|&s| closure(s)[accept as usize])
        .collect();
    Sfa::new(
        alg,
        nfa.state_count,
        vec![start],
        finals,
        transitions
            .into_iter()
            .map(|(s, i)| {
                let (_, g, dst) = &nfa.trans[i as usize];
                (s, g.clone(), *dst)
            })
            .collect(),
    )
}

/// Reference full-match matcher (position-set simulation of the AST); the
/// oracle used to validate the compiled automata.
pub fn reference_match(r: &RegexAst, s: &[u32]) -> bool {
    match_ends(r, s, 0).contains(&s.len())
}

fn match_ends(r: &RegexAst, s: &[u32], start: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    match r {
        RegexAst::Empty => {
            out.insert(start);
        }
        RegexAst::Dot => {
            if start < s.len() {
                out.insert(start + 1);
            }
        }
        RegexAst::Class { ranges, negated } => {
            if start < s.len() {
                let c = s[start];
                let inside = ranges.iter().any(|&(lo, hi)| lo <= c && c <= hi);
                if inside != *negated {
                    out.insert(start + 1);
                }
            }
        }
        RegexAst::Concat(parts) => {
            let mut ends = BTreeSet::from([start]);
            for part in parts {
                let mut next = BTreeSet::new();
                for &e in &ends {
                    next.extend(match_ends(part, s, e));
                }
                ends = next;
            }
            out = ends;
        }
        RegexAst::Alt(branches) => {
            for b in branches {
                out.extend(match_ends(b, s, start));
            }
        }
        RegexAst::Star(inner) => {
            out.insert(start);
            let mut frontier = BTreeSet::from([start]);
            loop {
                let mut next = BTreeSet::new();
                for &e in &frontier {
                    for e2 in match_ends(inner, s, e) {
                        if !out.contains(&e2) {
                            next.insert(e2);
                        }
                    }
                }
                if next.is_empty() {
                    break;
                }
                out.extend(next.iter().copied());
                frontier = next;
            }
        }
        RegexAst::Plus(inner) => {
            let star = RegexAst::Star(inner.clone());
            for e in match_ends(inner, s, start) {
                out.extend(match_ends(&star, s, e));
            }
        }
        RegexAst::Question(inner) => {
            out.insert(start);
            out.extend(match_ends(inner, s, start));
        }
        RegexAst::Repeat(inner, m, n) => {
            let mut ends = BTreeSet::from([start]);
            for _ in 0..*m {
                let mut next = BTreeSet::new();
                for &e in &ends {
                    next.extend(match_ends(inner, s, e));
                }
                ends = next;
            }
            match n {
                None => {
                    let star = RegexAst::Star(inner.clone());
                    for &e in &ends {
                        out.extend(match_ends(&star, s, e));
                    }
                }
                Some(n) => {
                    out.extend(ends.iter().copied());
                    for _ in *m..*n {
                        let mut next = BTreeSet::new();
                        for &e in &ends {
                            next.extend(match_ends(inner, s, e));
                        }
                        out.extend(next.iter().copied());
                        ends = next;
                    }
                }
            }
        }
    }
    out
}
