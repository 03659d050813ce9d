//! System documents: a `vars n` header, then one `lhs = rhs` per line.
//! `#` starts a comment when it begins a line or follows whitespace.

use super::{parse_term, Equation, System, TermError};
use crate::semigroup::FiniteSemigroup;

fn strip_comment(line: &str) -> &str {
    let bytes = line.as_bytes();
    let cut = (0..bytes.len()).find(|&i| bytes[i] == b'#' && (i == 0 || bytes[i - 1].is_ascii_whitespace()));
    match cut {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_system(text: &str, s: &FiniteSemigroup) -> Result<System, TermError> {
    let mut arity = None;
    let mut equations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let at = |e: TermError| TermError::Line { line: idx + 1, source: Box::new(e) };
        let Some(n) = arity else {
            let n = line
                .strip_prefix("vars")
                .filter(|rest| rest.starts_with(char::is_whitespace))
                .and_then(|rest| rest.trim().parse::<usize>().ok())
                .ok_or_else(|| at(TermError::Syntax { pos: 0, msg: "expected header `vars n`".into() }))?;
            arity = Some(n);
            continue;
        };
        let (lhs, rhs) = line
            .split_once('=')
            .filter(|(_, rhs)| !rhs.contains('='))
            .ok_or_else(|| at(TermError::Syntax { pos: 0, msg: "expected exactly one `=`".into() }))?;
        let lhs = parse_term(lhs, n, s).map_err(at)?;
        let rhs = parse_term(rhs, n, s).map_err(at)?;
        equations.push(Equation::new(lhs, rhs).map_err(at)?);
    }
    let arity = arity.ok_or(TermError::Syntax { pos: 0, msg: "missing header `vars n`".into() })?;
    System::new(arity, equations)
}

pub fn render_system(system: &System, s: &FiniteSemigroup) -> String {
    let mut out = format!("vars {}\n", system.arity());
    for eq in system.equations() {
        out.push_str(&eq.lhs.render(s));
        out.push_str(" = ");
        out.push_str(&eq.rhs.render(s));
        out.push('\n');
    }
    out
}
