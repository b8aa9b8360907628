//! Regex query files: a list of patterns followed by one or more `check:`
//! equations over indexed intersections, e.g. `check: 1&2 = 1&2&2'`.
//! A primed index denotes a freshly built isomorphic copy of that pattern.

use crate::CliError;

/// One operand of an intersection: a 1-based pattern index, optionally
/// referring to an independent copy of the pattern's automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub index: usize,
    pub copy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
    /// The source text, for record keeping.
    pub text: String,
}

#[derive(Clone, Debug)]
pub struct RegexQuery {
    pub patterns: Vec<String>,
    pub checks: Vec<Check>,
}

/// Patterns from a corpus file: one per line, `#` starts a comment.
pub fn parse_corpus(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn parse_query(text: &str) -> Result<RegexQuery, CliError> {
    let mut patterns = Vec::new();
    let mut checks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(eq) = line.strip_prefix("check:") {
            checks.push(parse_check(eq, i + 1)?);
        } else {
            patterns.push(line.to_string());
        }
    }
    if checks.is_empty() {
        return Err(CliError::Usage("query file has no `check:` line".into()));
    }
    for c in &checks {
        for t in c.lhs.iter().chain(&c.rhs) {
            if t.index == 0 || t.index > patterns.len() {
                return Err(CliError::Usage(format!(
                    "check `{}` references pattern {} but the file lists {}",
                    c.text,
                    t.index,
                    patterns.len()
                )));
            }
        }
    }
    Ok(RegexQuery { patterns, checks })
}

fn parse_check(eq: &str, line: usize) -> Result<Check, CliError> {
    let bad = |msg: &str| CliError::Usage(format!("line {line}: {msg}"));
    let (l, r) = eq
        .split_once('=')
        .ok_or_else(|| bad("check needs the form `lhs = rhs`"))?;
    let side = |s: &str| -> Result<Vec<Term>, CliError> {
        s.split(['&', '∩'])
            .map(|tok| {
                let tok = tok.trim();
                let (digits, copy) = match tok.strip_suffix('\'') {
                    Some(d) => (d.trim(), true),
                    None => match tok.strip_suffix("(copy)") {
                        Some(d) => (d.trim(), true),
                        None => (tok, false),
                    },
                };
                let index: usize = digits
                    .parse()
                    .map_err(|_| bad(&format!("bad intersection term `{tok}`")))?;
                Ok(Term { index, copy })
            })
            .collect()
    };
    Ok(Check {
        lhs: side(l)?,
        rhs: side(r)?,
        text: eq.trim().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_patterns_and_checks() {
        let q = parse_query("# pair\na*\na*b?\ncheck: 1&2 = 1&2&2'\n").unwrap();
        assert_eq!(q.patterns, vec!["a*", "a*b?"]);
        assert_eq!(q.checks.len(), 1);
        let c = &q.checks[0];
        assert_eq!(c.lhs, vec![Term { index: 1, copy: false }, Term { index: 2, copy: false }]);
        assert_eq!(c.rhs[2], Term { index: 2, copy: true });
    }

    #[test]
    fn accepts_copy_spelling_and_intersection_sign() {
        let q = parse_query("a+\ncheck: 1 ∩ 1(copy) = 1\n").unwrap();
        assert_eq!(q.checks[0].lhs[1], Term { index: 1, copy: true });
    }

    #[test]
    fn rejects_out_of_range_and_missing_check() {
        assert!(parse_query("a*\ncheck: 1&2 = 1\n").is_err());
        assert!(parse_query("a*\n").is_err());
    }
}
