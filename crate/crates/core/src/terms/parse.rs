//! Term grammar:
//!
//! ```text
//! term    := factor ('*' factor)*
//! factor  := primary ('^' INT)*
//! primary := VAR | NAME | '(' term ')'
//! ```
//!
//! `VAR` is `x1`, `x2`, ...; `NAME` is any element name. Names may contain
//! parentheses (Rees triples are named `(λ,g,i)`), so at each position the
//! longest element name followed by a delimiter wins over a grouping
//! parenthesis. Variables shadow element names of the form `x<digits>`.

use std::collections::{HashMap, HashSet};

use super::{Atom, Builder, Term, TermError};
use crate::semigroup::{Elem, FiniteSemigroup};

struct Names<'a> {
    by_len: Vec<(usize, HashMap<&'a str, Elem>)>,
}

impl<'a> Names<'a> {
    fn new(s: &'a FiniteSemigroup) -> Self {
        let lens: HashSet<usize> = s.names().iter().map(String::len).collect();
        let mut lens: Vec<usize> = lens.into_iter().collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        let by_len = lens
            .into_iter()
            .map(|l| {
                let map = s
                    .names()
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| n.len() == l)
                    .map(|(i, n)| (n.as_str(), i as Elem))
                    .collect();
                (l, map)
            })
            .collect();
        Names { by_len }
    }
}

fn is_delimiter(c: Option<u8>) -> bool {
    matches!(c, None | Some(b'*' | b'^' | b')')) || c.is_some_and(|c| c.is_ascii_whitespace())
}

struct Parser<'a> {
    text: &'a [u8],
    src: &'a str,
    pos: usize,
    arity: usize,
    names: Names<'a>,
    builder: Builder,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> TermError {
        TermError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<u32, TermError> {
        let mut factors = vec![self.factor()?];
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        Ok(self.builder.mul(&factors))
    }

    fn factor(&mut self) -> Result<u32, TermError> {
        let mut base = self.primary()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'^') {
                return Ok(base);
            }
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected an exponent after `^`"));
            }
            let k: u64 = self.src[start..self.pos]
                .parse()
                .map_err(|_| TermError::Syntax { pos: start, msg: "exponent too large".into() })?;
            if k == 0 {
                return Err(TermError::ZeroPower);
            }
            base = self.builder.pow(base, k);
        }
    }

    fn variable(&self) -> Option<(usize, usize)> {
        if self.peek() != Some(b'x') {
            return None;
        }
        let mut end = self.pos + 1;
        while self.text.get(end).is_some_and(|c| c.is_ascii_digit()) {
            end += 1;
        }
        if end == self.pos + 1 || !is_delimiter(self.text.get(end).copied()) {
            return None;
        }
        let k: usize = self.src[self.pos + 1..end].parse().ok()?;
        Some((k, end))
    }

    fn name(&self) -> Option<(Elem, usize)> {
        let rest = &self.src[self.pos..];
        self.names.by_len.iter().find_map(|(len, map)| {
            let candidate = rest.get(..*len)?;
            let &elem = map.get(candidate)?;
            is_delimiter(self.text.get(self.pos + len).copied()).then_some((elem, self.pos + len))
        })
    }

    fn primary(&mut self) -> Result<u32, TermError> {
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("unexpected end of input"));
        }
        if let Some((k, end)) = self.variable() {
            if k == 0 || k > self.arity {
                return Err(TermError::VariableOutOfArity { var: k, arity: self.arity });
            }
            self.pos = end;
            return Ok(self.builder.atom(Atom::Var(k as u32 - 1)));
        }
        if let Some((elem, end)) = self.name() {
            self.pos = end;
            return Ok(self.builder.atom(Atom::Const(elem)));
        }
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let inner = self.term()?;
            self.skip_ws();
            if self.peek() != Some(b')') {
                return Err(self.error("expected `)`"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        let end =
            (self.pos..self.text.len()).find(|&i| is_delimiter(self.text.get(i).copied())).unwrap_or(self.text.len());
        if end == self.pos {
            return Err(self.error(format!("unexpected `{}`", self.peek().unwrap() as char)));
        }
        Err(TermError::UnknownElement(self.src[self.pos..end].to_string()))
    }
}

/// Parses `text` as a term in variables `x1..x{arity}` over `s`.
pub fn parse_term(text: &str, arity: usize, s: &FiniteSemigroup) -> Result<Term, TermError> {
    let mut parser =
        Parser { text: text.as_bytes(), src: text, pos: 0, arity, names: Names::new(s), builder: Builder::default() };
    let root = parser.term()?;
    parser.skip_ws();
    if parser.pos != text.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(parser.builder.finish(arity, root))
}
