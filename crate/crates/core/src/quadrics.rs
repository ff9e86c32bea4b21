//! The ten quadrics defining the degree-12 model in `P^7`, shipped as text.
//!
//! Only well-formedness is checked: balanced parentheses, variables `x1..x8`
//! outside coefficients, the root of unity `a` only inside them, and every
//! top-level term of degree exactly 2 in the `x` variables.

use crate::error::{Error, Result};

pub const P7_QUADRICS: &str = include_str!("../data/p7_quadrics.txt");

pub const RECORD_SEPARATOR: &str = "---";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quadric {
    pub label: Option<String>,
    pub text: String,
    /// Monomials `x_i x_j` (1-based, `i <= j`) in order of appearance.
    pub monomials: Vec<(u8, u8)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(String),
    Root,
    Var(u8),
    Op(char),
    Open,
    Close,
}

fn tokenize(s: &str, index: usize) -> Result<Vec<Token>> {
    let bad = |reason: String| Error::MalformedQuadric { index, reason };
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Num(chars[start..=i].iter().collect()));
            }
            'a' => out.push(Token::Root),
            'x' => {
                let start = i + 1;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                match digits.parse::<u8>() {
                    Ok(k @ 1..=8) => out.push(Token::Var(k)),
                    _ => return Err(bad(format!("unknown variable x{digits}"))),
                }
            }
            '+' | '-' | '*' | '/' | '^' => out.push(Token::Op(c)),
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            other => return Err(bad(format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

/// Degree in `x` of one top-level term, and its monomial.
fn term_monomial(term: &[Token], index: usize) -> Result<(u8, u8)> {
    let bad = |reason: String| Error::MalformedQuadric { index, reason };
    let mut vars = Vec::new();
    let mut k = 0;
    while k < term.len() {
        if let Token::Var(v) = term[k] {
            let mut power = 1usize;
            if term.get(k + 1) == Some(&Token::Op('^')) {
                power = match term.get(k + 2) {
                    Some(Token::Num(e)) => e.parse().map_err(|_| bad(format!("bad exponent on x{v}")))?,
                    _ => return Err(bad(format!("bad exponent on x{v}"))),
                };
                k += 2;
            }
            vars.extend(std::iter::repeat_n(v, power.min(3)));
        }
        k += 1;
    }
    match vars.as_slice() {
        [i, j] => Ok(((*i).min(*j), (*i).max(*j))),
        _ => Err(bad(format!("term of degree {} in x", vars.len()))),
    }
}

fn parse_record(raw: &str, index: usize) -> Result<Quadric> {
    let bad = |reason: &str| Error::MalformedQuadric { index, reason: reason.to_string() };
    let (label, body) = match raw.split_once(":=") {
        Some((l, b)) => (Some(l.trim().to_string()), b),
        None => (None, raw),
    };
    let text = body.split_whitespace().collect::<Vec<_>>().join(" ");
    if text.is_empty() {
        return Err(bad("empty record"));
    }
    let tokens = tokenize(&text, index)?;
    let mut depth = 0i32;
    let mut terms: Vec<Vec<Token>> = vec![Vec::new()];
    for t in tokens {
        match t {
            Token::Open => depth += 1,
            Token::Close => {
                depth -= 1;
                if depth < 0 {
                    return Err(bad("unbalanced ')'"));
                }
            }
            Token::Var(_) if depth > 0 => return Err(bad("x variable inside a coefficient")),
            Token::Root if depth == 0 => return Err(bad("root of unity outside a coefficient")),
            Token::Op('+') | Token::Op('-') if depth == 0 => {
                if !terms.last().is_some_and(Vec::is_empty) {
                    terms.push(Vec::new());
                }
                continue;
            }
            _ => {}
        }
        if depth == 0 || t == Token::Open {
            terms.last_mut().expect("non-empty").push(t);
        }
    }
    if depth != 0 {
        return Err(bad("unbalanced '('"));
    }
    terms.retain(|t| !t.is_empty());
    let monomials = terms.iter().map(|t| term_monomial(t, index)).collect::<Result<Vec<_>>>()?;
    Ok(Quadric { label, text, monomials })
}

/// Parses records separated by `---` lines; `#` lines are comments.
pub fn parse_quadrics(data: &str) -> Result<Vec<Quadric>> {
    let mut records = Vec::new();
    let mut current = String::new();
    for line in data.lines() {
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed == RECORD_SEPARATOR {
            records.push(std::mem::take(&mut current));
        } else {
            current.push_str(line);
            current.push('\n');
        }
    }
    if !current.trim().is_empty() || records.is_empty() {
        records.push(current);
    }
    records.iter().enumerate().map(|(i, r)| parse_record(r, i + 1)).collect()
}

pub fn load_p7_quadrics() -> Result<Vec<Quadric>> {
    parse_quadrics(P7_QUADRICS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_is_well_formed() {
        let qs = load_p7_quadrics().unwrap();
        assert_eq!(qs.len(), 10);
        for (i, q) in qs.iter().enumerate() {
            assert_eq!(q.label.as_deref(), Some(format!("F{}", i + 1).as_str()));
            assert!(!q.monomials.is_empty());
        }
        assert_eq!(qs[0].monomials[0], (1, 7));
        assert_eq!(qs[4].monomials[1], (2, 3));
        assert_eq!(qs[9].monomials.len(), 9);
        assert!(qs.iter().all(|q| q.monomials.iter().all(|&(i, j)| (1..=8).contains(&i) && (1..=8).contains(&j))));
    }

    #[test]
    fn rejects_malformed() {
        let err = |s: &str| parse_quadrics(s).unwrap_err();
        assert!(matches!(err("(1 + a*x1*x2"), Error::MalformedQuadric { .. }));
        assert!(matches!(err("3*x1*x2*x3"), Error::MalformedQuadric { .. }));
        assert!(matches!(err("3*x9*x1"), Error::MalformedQuadric { .. }));
        assert!(matches!(err("a*x1*x2"), Error::MalformedQuadric { .. }));
        assert!(matches!(err("(2*x1)*x2"), Error::MalformedQuadric { .. }));
        assert!(matches!(err("2*x1 + x2^2"), Error::MalformedQuadric { .. }));
        assert!(matches!(err("x1^3"), Error::MalformedQuadric { .. }));
        assert!(matches!(err("x1^"), Error::MalformedQuadric { .. }));
    }

    #[test]
    fn separators() {
        let qs = parse_quadrics("x1*x2\n---\n1/3*(a^2 - 1)*x3^2 - 32*x4*x5\n").unwrap();
        assert_eq!(qs.len(), 2);
        assert_eq!(qs[1].monomials, vec![(3, 3), (4, 5)]);
    }
}
