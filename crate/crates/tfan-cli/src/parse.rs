//! Line-oriented problem files.
//!
//! ```text
//! ring t; x, y, z
//! prime 2            # optional
//! order weights (-1,1,1,1); tiebreak x > y > z
//! ideal
//!   2 - t
//!   x*y^2 - t^2*y^3
//! end
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use tfan::exact::{Int, QVector, Rat};
use tfan::poly::{ExpVec, Polynomial, Term};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("generator is not x-homogeneous")]
    NonHomogeneous,
    #[error("the ideal has no generators")]
    EmptyIdeal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, col, kind: ParseErrorKind::Syntax(msg.into()) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    /// `names[0]` is the name of t, then the x-variables.
    pub names: Vec<String>,
    pub prime: Option<Int>,
    pub weights: Vec<QVector>,
    /// Positions of the x-variables from largest to smallest.
    pub tiebreak: Vec<usize>,
    pub gens: Vec<Polynomial>,
}

impl ProblemFile {
    pub fn n(&self) -> usize {
        self.names.len() - 1
    }
}

/// Strips a trailing `#` comment and returns the line with its 1-based number.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
}

fn col_of(line: &str, sub: &str) -> usize {
    line.find(sub).map_or(1, |i| i + 1)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut names: Option<Vec<String>> = None;
    let mut prime = None;
    let mut order: Option<(usize, String)> = None;
    let mut gens_src: Vec<(usize, usize, String)> = Vec::new();
    let mut in_ideal = false;
    let mut saw_ideal = false;
    let mut last_line = 0;
    for (ln, raw) in lines(text) {
        last_line = ln;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if in_ideal {
            if line == "end" {
                in_ideal = false;
            } else {
                gens_src.push((ln, col_of(raw, line), line.to_string()));
            }
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match kw {
            "ring" => names = Some(parse_ring(ln, raw, rest)?),
            "prime" => {
                let p: BigInt = rest.trim().parse().map_err(|_| syntax(ln, col_of(raw, rest), "expected an integer prime"))?;
                prime = Some(p);
            }
            "order" => order = Some((ln, raw.to_string())),
            "ideal" => {
                in_ideal = true;
                saw_ideal = true;
            }
            _ => return Err(syntax(ln, col_of(raw, kw), format!("unknown keyword '{kw}'"))),
        }
    }
    if in_ideal {
        return Err(syntax(last_line + 1, 1, "missing 'end' after ideal"));
    }
    let names = names.ok_or_else(|| syntax(1, 1, "missing 'ring' line"))?;
    if !saw_ideal || gens_src.is_empty() {
        return Err(ParseError { line: last_line.max(1), col: 1, kind: ParseErrorKind::EmptyIdeal });
    }
    let n = names.len() - 1;
    let (weights, tiebreak) = match &order {
        Some((ln, raw)) => parse_order(*ln, raw, &names)?,
        None => {
            let mut w = vec![Rat::one(); n + 1];
            w[0] = -Rat::one();
            (vec![w], (0..n).collect())
        }
    };
    let mut gens = Vec::new();
    for (ln, col, src) in &gens_src {
        let g = parse_polynomial(src, &names).map_err(|(c, msg)| syntax(*ln, col + c, msg))?;
        if !g.is_x_homogeneous() {
            return Err(ParseError { line: *ln, col: *col, kind: ParseErrorKind::NonHomogeneous });
        }
        gens.push(g);
    }
    Ok(ProblemFile { names, prime, weights, tiebreak, gens })
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|x| x.is_ascii_alphabetic() || x == '_') && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

fn parse_ring(ln: usize, raw: &str, rest: &str) -> Result<Vec<String>, ParseError> {
    let (t, xs) = rest.split_once(';').ok_or_else(|| syntax(ln, col_of(raw, rest), "expected 'ring t; x, y, ..'"))?;
    let mut names = vec![t.trim().to_string()];
    for x in xs.split(',') {
        let x = x.trim();
        if x.is_empty() {
            continue;
        }
        names.push(x.to_string());
    }
    for name in &names {
        if !is_ident(name) {
            return Err(syntax(ln, col_of(raw, name), format!("invalid variable name '{name}'")));
        }
        if names.iter().filter(|m| *m == name).count() > 1 {
            return Err(syntax(ln, col_of(raw, name), format!("variable '{name}' declared twice")));
        }
    }
    Ok(names)
}

/// Parses `weights (..), (..); tiebreak x > y > z` after the `order` keyword.
fn parse_order(ln: usize, raw: &str, names: &[String]) -> Result<(Vec<QVector>, Vec<usize>), ParseError> {
    let n = names.len() - 1;
    let body = raw.trim().strip_prefix("order").unwrap_or("").trim();
    let mut weights = Vec::new();
    let mut tiebreak: Vec<usize> = (0..n).collect();
    for part in body.split(';') {
        let part = part.trim();
        if let Some(w) = part.strip_prefix("weights") {
            for v in split_vectors(w).map_err(|m| syntax(ln, col_of(raw, w), m))? {
                let q = parse_rational_list(&v).map_err(|m| syntax(ln, col_of(raw, &v), m))?;
                if q.len() != n + 1 {
                    return Err(ParseError {
                        line: ln,
                        col: col_of(raw, &v),
                        kind: ParseErrorKind::DimensionMismatch(format!("weight has {} entries, expected {}", q.len(), n + 1)),
                    });
                }
                weights.push(q);
            }
        } else if let Some(tb) = part.strip_prefix("tiebreak") {
            tiebreak = parse_tiebreak(tb, names).map_err(|m| syntax(ln, col_of(raw, tb), m))?;
        } else if !part.is_empty() {
            return Err(syntax(ln, col_of(raw, part), format!("unexpected '{part}' in order")));
        }
    }
    Ok((weights, tiebreak))
}

/// `x > y > z` or `x, y, z` as positions of the x-variables.
pub fn parse_tiebreak(s: &str, names: &[String]) -> Result<Vec<usize>, String> {
    let n = names.len() - 1;
    let mut out = Vec::new();
    for tok in s.split(['>', ',']) {
        let tok = tok.trim();
        let i = names[1..].iter().position(|x| x == tok).ok_or_else(|| format!("unknown variable '{tok}' in tiebreak"))?;
        if out.contains(&i) {
            return Err(format!("variable '{tok}' repeated in tiebreak"));
        }
        out.push(i);
    }
    if out.len() != n {
        return Err(format!("tiebreak must list all {n} variables"));
    }
    Ok(out)
}

fn split_vectors(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or("expected '('")?;
        let close = open.find(')').ok_or("missing ')'")?;
        out.push(open[..close].to_string());
        rest = open[close + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    if out.is_empty() {
        return Err("expected at least one weight vector".into());
    }
    Ok(out)
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let bad = || format!("invalid number '{s}'");
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rat::new(a, b))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Comma-separated rationals, optionally in parentheses.
pub fn parse_rational_list(s: &str) -> Result<QVector, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    s.split(',').map(parse_rational).collect()
}

/// A sum of signed terms `c*v^k*...`; returns the failing byte offset on error.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial, (usize, String)> {
    let n = names.len() - 1;
    let bytes = src.as_bytes();
    let mut i = 0;
    let mut terms = Vec::new();
    let skip = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    let mut first = true;
    loop {
        skip(&mut i);
        if i >= bytes.len() {
            if first {
                return Err((i, "empty polynomial".into()));
            }
            break;
        }
        let mut neg = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            neg = bytes[i] == b'-';
            i += 1;
            skip(&mut i);
        } else if !first {
            return Err((i, "expected '+' or '-'".into()));
        }
        first = false;
        let mut coeff = Int::one();
        let mut exp = ExpVec::one(n);
        loop {
            skip(&mut i);
            if i >= bytes.len() {
                return Err((i, "expected a factor".into()));
            }
            if bytes[i].is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let c: BigInt = src[start..i].parse().expect("digits");
                coeff *= c;
            } else if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &src[start..i];
                let v = names.iter().position(|x| x == name).ok_or((start, format!("unknown variable '{name}'")))?;
                skip(&mut i);
                let mut k: u32 = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    skip(&mut i);
                    let s = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    k = src[s..i].parse().map_err(|_| (s, "expected an exponent".to_string()))?;
                }
                if v == 0 {
                    exp.beta += k;
                } else {
                    exp.alpha[v - 1] += k;
                }
            } else {
                return Err((i, format!("unexpected '{}'", bytes[i] as char)));
            }
            skip(&mut i);
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                continue;
            }
            break;
        }
        if neg {
            coeff = -coeff;
        }
        terms.push(Term::new(coeff, exp));
    }
    Ok(Polynomial::from_terms(n, terms))
}

/// Parses `i=value` pairs such as `0=-1,3=1` for slices.
pub fn parse_fix(s: &str, ambient: usize) -> Result<Vec<(usize, Rat)>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let (i, v) = part.split_once('=').ok_or_else(|| format!("expected 'coordinate=value', got '{part}'"))?;
        let i: usize = i.trim().parse().map_err(|_| format!("invalid coordinate '{i}'"))?;
        if i >= ambient {
            return Err(format!("coordinate {i} out of range"));
        }
        out.push((i, parse_rational(v)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLIP: &str = "ring t; x, y\nprime 2\norder weights (-1,1,1); tiebreak x > y\nideal\n  2 - t\n  x*y^2 - t^2*y^3\n  x^2 - t^3*y^2\nend\n";

    #[test]
    fn parses_flip_file() {
        let p = parse_problem(FLIP).unwrap();
        assert_eq!(p.gens.len(), 3);
        assert_eq!(p.names, vec!["t", "x", "y"]);
        assert_eq!(p.prime, Some(BigInt::from(2)));
        assert_eq!(p.tiebreak, vec![0, 1]);
        assert_eq!(p.gens[1].fmt_with(&p.names), "x*y^2 - t^2*y^3");
    }

    #[test]
    fn rejects_non_homogeneous() {
        let e = parse_problem("ring t; x\nideal\n  x + t\nend\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonHomogeneous);
        assert_eq!((e.line, e.col), (3, 3));
    }

    #[test]
    fn rejects_empty_ideal() {
        let e = parse_problem("ring t; x\nideal\nend\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::EmptyIdeal);
    }

    #[test]
    fn reports_column_of_bad_token() {
        let e = parse_problem("ring t; x\nideal\n  x + q\nend\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 7));
    }

    #[test]
    fn rejects_wrong_weight_length() {
        let e = parse_problem("ring t; x, y\norder weights (-1,1)\nideal\n  x\nend\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::DimensionMismatch(_)));
    }

    #[test]
    fn rational_weights_and_tiebreak() {
        let p = parse_problem("ring t; x, y\norder weights (-1,1/2,0), (0,1,0); tiebreak y > x\nideal\n  x\nend\n").unwrap();
        assert_eq!(p.weights.len(), 2);
        assert_eq!(p.weights[0][1], Rat::new(1.into(), 2.into()));
        assert_eq!(p.tiebreak, vec![1, 0]);
    }
}
