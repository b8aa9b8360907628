//! Text format for automata files and the formula / predicate syntaxes used
//! inside them.
//!
//! ```text
//! safa algebra=interval domain=255     # or: algebra=bv atoms=p,q,r
//! states 5
//! initial 0 & 1
//! final 1 2
//! 0 --[97-122]--> 1 | (2 & 3)
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Interval guards are
//! `[97-122 200]`, `true`, `false`; bitvector guards are propositional terms
//! over the declared atom names with `&`, `|`, `!` and parentheses.

use std::rc::Rc;

use crate::algebra::bdd::{BvAlgebra, BvPredicate};
use crate::algebra::interval::{IntervalAlgebra, IntervalPredicate};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::pbf::{PbfId, PbfPool};
use crate::safa::{Safa, SafaBuilder};

/// A parsed automaton over one of the bundled algebras.
pub enum AnyAutomaton {
    Interval(Safa<IntervalAlgebra>),
    Bv(Safa<BvAlgebra>),
}

impl std::fmt::Debug for AnyAutomaton {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_automaton(self))
    }
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.line, format!("{msg} in `{}`", self.text.trim()))
    }
}

/// Parse a positive Boolean formula: `0 & (1 | 2)`, `true`, `false`.
/// `&` binds tighter than `|`.
pub fn parse_pbf(pool: &PbfPool, text: &str, line: usize) -> Result<PbfId> {
    let mut cur = Cursor::new(text, line);
    let p = pbf_or(pool, &mut cur)?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(p)
}

fn pbf_or(pool: &PbfPool, cur: &mut Cursor) -> Result<PbfId> {
    let mut p = pbf_and(pool, cur)?;
    while cur.eat('|') {
        let q = pbf_and(pool, cur)?;
        p = pool.mk_or(p, q);
    }
    Ok(p)
}

fn pbf_and(pool: &PbfPool, cur: &mut Cursor) -> Result<PbfId> {
    let mut p = pbf_atom(pool, cur)?;
    while cur.eat('&') {
        let q = pbf_atom(pool, cur)?;
        p = pool.mk_and(p, q);
    }
    Ok(p)
}

fn pbf_atom(pool: &PbfPool, cur: &mut Cursor) -> Result<PbfId> {
    if cur.eat('(') {
        let p = pbf_or(pool, cur)?;
        cur.expect(')')?;
        return Ok(p);
    }
    match cur.peek() {
        Some(c) if c.is_ascii_digit() => Ok(pool.mk_state(cur.number()?)),
        _ => match cur.word().as_deref() {
            Some("true") => Ok(pool.mk_true()),
            Some("false") => Ok(pool.mk_false()),
            _ => Err(cur.err("expected state index, true, false, or '('")),
        },
    }
}

/// Parse an interval predicate: `[97-122 200]`, `true`, `false`.
pub fn parse_interval_pred(
    alg: &IntervalAlgebra,
    text: &str,
    line: usize,
) -> Result<IntervalPredicate> {
    let mut cur = Cursor::new(text, line);
    let p = interval_pred(alg, &mut cur)?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(p)
}

fn interval_pred(
    alg: &IntervalAlgebra,
    cur: &mut Cursor,
) -> Result<IntervalPredicate> {
    if cur.eat('[') {
        let mut ranges: Vec<(u32, u32)> = Vec::new();
        while !cur.eat(']') {
            let lo = cur.number()?;
            let hi = if cur.eat('-') { cur.number()? } else { lo };
            if lo > hi || hi > alg.domain_max() {
                return Err(cur.err(&format!(
                    "interval {lo}-{hi} outside domain 0-{}",
                    alg.domain_max()
                )));
            }
            ranges.push((lo, hi));
        }
        return Ok(alg.from_ranges(&ranges));
    }
    match cur.word().as_deref() {
        Some("true") => Ok(alg.top()),
        Some("false") => Ok(alg.bot()),
        _ => Err(cur.err("expected '[', true, or false")),
    }
}

/// Parse a bitvector predicate: a propositional term over the algebra's atom
/// names, e.g. `p & (!q | r)`.
pub fn parse_bv_pred(alg: &BvAlgebra, text: &str, line: usize) -> Result<BvPredicate> {
    let mut cur = Cursor::new(text, line);
    let p = bv_or(alg, &mut cur)?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(p)
}

fn bv_or(alg: &BvAlgebra, cur: &mut Cursor) -> Result<BvPredicate> {
    let mut p = bv_and(alg, cur)?;
    while cur.eat('|') {
        let q = bv_and(alg, cur)?;
        p = alg.or(&p, &q)?;
    }
    Ok(p)
}

fn bv_and(alg: &BvAlgebra, cur: &mut Cursor) -> Result<BvPredicate> {
    let mut p = bv_unary(alg, cur)?;
    while cur.eat('&') {
        let q = bv_unary(alg, cur)?;
        p = alg.and(&p, &q)?;
    }
    Ok(p)
}

fn bv_unary(alg: &BvAlgebra, cur: &mut Cursor) -> Result<BvPredicate> {
    if cur.eat('!') {
        let p = bv_unary(alg, cur)?;
        return alg.not(&p);
    }
    if cur.eat('(') {
        let p = bv_or(alg, cur)?;
        cur.expect(')')?;
        return Ok(p);
    }
    match cur.word() {
        Some(w) if w == "true" => Ok(alg.top()),
        Some(w) if w == "false" => Ok(alg.bot()),
        Some(w) => match alg.atom_index(&w) {
            Some(i) => Ok(alg.atom(i)),
            None => Err(cur.err(&format!("unknown atom `{w}`"))),
        },
        None => Err(cur.err("expected atom, '!', '(', true, or false")),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

struct Header {
    algebra: String,
    domain: Option<u32>,
    atoms: Vec<String>,
}

fn parse_header(line: &str, lineno: usize) -> Result<Header> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some("safa") {
        return Err(Error::parse(lineno, "expected `safa` header"));
    }
    let mut h = Header {
        algebra: String::new(),
        domain: None,
        atoms: Vec::new(),
    };
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, format!("expected key=value, got `{kv}`")))?;
        match k {
            "algebra" => h.algebra = v.to_string(),
            "domain" => {
                h.domain = Some(v.parse().map_err(|_| {
                    Error::parse(lineno, format!("bad domain bound `{v}`"))
                })?)
            }
            "atoms" => h.atoms = v.split(',').map(|s| s.trim().to_string()).collect(),
            _ => return Err(Error::parse(lineno, format!("unknown header key `{k}`"))),
        }
    }
    Ok(h)
}

fn parse_body<A: Algebra>(
    alg: Rc<A>,
    lines: &[(usize, &str)],
    parse_guard: impl Fn(&A, &str, usize) -> Result<A::Pred>,
) -> Result<Safa<A>> {
    let (first, rest) = lines
        .split_first()
        .ok_or_else(|| Error::parse(0, "missing `states` line"))?;
    let state_count: u32 = first
        .1
        .strip_prefix("states")
        .map(str::trim)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(first.0, "expected `states <count>`"))?;
    let mut b = SafaBuilder::new(alg.clone(), state_count);
    for &(lineno, line) in rest {
        if let Some(body) = line.strip_prefix("initial") {
            let p = parse_pbf(b.pool(), body, lineno)?;
            b.initial(p);
        } else if let Some(body) = line.strip_prefix("final") {
            for tok in body.split_whitespace() {
                let s: u32 = tok.parse().map_err(|_| {
                    Error::parse(lineno, format!("bad final state `{tok}`"))
                })?;
                b.add_final(s);
            }
        } else if let Some((left, target)) = line.split_once("-->") {
            let (src_str, guard_str) = left.split_once("--").ok_or_else(|| {
                Error::parse(lineno, "expected `src --guard--> target`")
            })?;
            let src: u32 = src_str.trim().parse().map_err(|_| {
                Error::parse(lineno, format!("bad source state `{}`", src_str.trim()))
            })?;
            let guard = parse_guard(&alg, guard_str, lineno)?;
            let p = parse_pbf(b.pool(), target, lineno)?;
            b.add_transition(src, guard, p);
        } else {
            return Err(Error::parse(lineno, format!("unrecognized line `{line}`")));
        }
    }
    b.build()
}

/// Parse one automaton from the text format.
pub fn parse_automaton(text: &str) -> Result<AnyAutomaton> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let (&(hline, header_text), body) = lines
        .split_first()
        .ok_or_else(|| Error::parse(0, "empty automaton file"))?;
    let header = parse_header(header_text, hline)?;
    match header.algebra.as_str() {
        "interval" => {
            let alg = Rc::new(IntervalAlgebra::new(
                header.domain.unwrap_or(0x10FFFF),
            ));
            let m = parse_body(alg, body, |a, s, l| parse_interval_pred(a, s, l))?;
            Ok(AnyAutomaton::Interval(m))
        }
        "bv" => {
            if header.atoms.is_empty() {
                return Err(Error::parse(
                    hline,
                    "bv algebra requires atoms=...",
                ));
            }
            let alg = Rc::new(BvAlgebra::new(header.atoms));
            let m = parse_body(alg, body, |a, s, l| parse_bv_pred(a, s, l))?;
            Ok(AnyAutomaton::Bv(m))
        }
        other => Err(Error::parse(
            hline,
            format!("unknown algebra `{other}` (expected interval or bv)"),
        )),
    }
}

/// Parse an automaton against an algebra already in use, so the result can
/// be combined with `with` (disjoint union, products). The file's header
/// must describe the same algebra: equal domain bound, or equal atom list.
pub fn parse_automaton_sharing(text: &str, with: &AnyAutomaton) -> Result<AnyAutomaton> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let (&(hline, header_text), body) = lines
        .split_first()
        .ok_or_else(|| Error::parse(0, "empty automaton file"))?;
    let header = parse_header(header_text, hline)?;
    match (header.algebra.as_str(), with) {
        ("interval", AnyAutomaton::Interval(m0)) => {
            let alg = m0.algebra_rc();
            let domain = header.domain.unwrap_or(0x10FFFF);
            if domain != alg.domain_max() {
                return Err(Error::parse(
                    hline,
                    format!(
                        "domain bound {domain} differs from the first file's {}",
                        alg.domain_max()
                    ),
                ));
            }
            let m = parse_body(alg, body, |a, s, l| parse_interval_pred(a, s, l))?;
            Ok(AnyAutomaton::Interval(m))
        }
        ("bv", AnyAutomaton::Bv(m0)) => {
            let alg = m0.algebra_rc();
            if header.atoms != alg.atoms() {
                return Err(Error::parse(
                    hline,
                    "atom list differs from the first file's".to_string(),
                ));
            }
            let m = parse_body(alg, body, |a, s, l| parse_bv_pred(a, s, l))?;
            Ok(AnyAutomaton::Bv(m))
        }
        _ => Err(Error::AlgebraMismatch),
    }
}

fn print_body<A: Algebra>(m: &Safa<A>, out: &mut String) {
    use std::fmt::Write;
    let _ = writeln!(out, "states {}", m.state_count());
    let _ = writeln!(out, "initial {}", m.pool().format(m.initial()));
    let finals: Vec<String> = m.finals().iter_set().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "final {}", finals.join(" "));
    for s in 0..m.state_count() {
        for (g, q) in m.transitions_from(s) {
            let _ = writeln!(
                out,
                "{s} --{}--> {}",
                m.algebra().format_pred(g),
                m.pool().format(*q)
            );
        }
    }
}

/// Render an automaton back into the text format (parse of the result
/// reproduces the language).
pub fn print_automaton(m: &AnyAutomaton) -> String {
    let mut out = String::new();
    match m {
        AnyAutomaton::Interval(m) => {
            let max = m.algebra().domain_max();
            if max == 0x10FFFF {
                out.push_str("safa algebra=interval\n");
            } else {
                out.push_str(&format!("safa algebra=interval domain={max}\n"));
            }
            print_body(m, &mut out);
        }
        AnyAutomaton::Bv(m) => {
            out.push_str(&format!(
                "safa algebra=bv atoms={}\n",
                m.algebra().atoms().join(",")
            ));
            print_body(m, &mut out);
        }
    }
    out
}
