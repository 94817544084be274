//! Text s-expressions: `0`, `1`, `x:I`, `!x:I`, `(and F...)`, `(or F...)`,
//! `(maj F...)`. Variable indices are one-based in text.

use super::{Formula, Gate, Node};
use crate::error::{Error, Result};

pub fn to_text(f: &Formula) -> String {
    let mut out = String::new();
    write_rec(f, &mut out);
    out
}

fn write_rec(f: &Formula, out: &mut String) {
    match f.node() {
        Node::Const(b) => out.push(if *b { '1' } else { '0' }),
        Node::Lit { var, neg } => {
            if *neg {
                out.push('!');
            }
            out.push_str(&format!("x:{}", var + 1));
        }
        Node::Gate { op, children } => {
            out.push('(');
            out.push_str(op.name());
            for c in children {
                out.push(' ');
                write_rec(c, out);
            }
            out.push(')');
        }
    }
}

#[derive(Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Vec<Tok<'_>> {
    let mut toks = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        let delim = c == '(' || c == ')' || c.is_whitespace();
        if delim {
            if let Some(st) = start.take() {
                toks.push(Tok::Atom(&s[st..i]));
            }
            match c {
                '(' => toks.push(Tok::Open),
                ')' => toks.push(Tok::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        toks.push(Tok::Atom(&s[st..]));
    }
    toks
}

pub fn parse(s: &str) -> Result<Formula> {
    let toks = tokenize(s);
    let mut pos = 0;
    let f = parse_rec(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(Error::Parse("trailing tokens after formula".into()));
    }
    Ok(f)
}

fn parse_atom(a: &str) -> Result<Formula> {
    match a {
        "0" => return Ok(Formula::constant(false)),
        "1" => return Ok(Formula::constant(true)),
        _ => {}
    }
    let (neg, rest) = match a.strip_prefix('!') {
        Some(r) => (true, r),
        None => (false, a),
    };
    let idx = rest
        .strip_prefix("x:")
        .and_then(|n| n.parse::<u32>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Parse(format!("bad atom {a:?}")))?;
    Ok(Formula::lit(idx - 1, neg))
}

fn parse_rec(toks: &[Tok<'_>], pos: &mut usize) -> Result<Formula> {
    match toks.get(*pos) {
        None => Err(Error::Parse("unexpected end of formula".into())),
        Some(Tok::Close) => Err(Error::Parse("unexpected ')'".into())),
        Some(Tok::Atom(a)) => {
            *pos += 1;
            parse_atom(a)
        }
        Some(Tok::Open) => {
            *pos += 1;
            let op = match toks.get(*pos) {
                Some(Tok::Atom("and")) => Gate::And,
                Some(Tok::Atom("or")) => Gate::Or,
                Some(Tok::Atom("maj")) => Gate::Maj,
                other => return Err(Error::Parse(format!("expected gate name, found {other:?}"))),
            };
            *pos += 1;
            let mut children = Vec::new();
            loop {
                match toks.get(*pos) {
                    Some(Tok::Close) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => children.push(parse_rec(toks, pos)?),
                    None => return Err(Error::Parse("unclosed '('".into())),
                }
            }
            Ok(Formula::gate(op, children))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let f = parse("(and (or x:3 x:2) !x:1 1)").unwrap();
        let printed = to_text(&f);
        assert_eq!(parse(&printed).unwrap(), f);
        assert_eq!(to_text(&parse(&printed).unwrap()), printed);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("(xor x:1)").is_err());
        assert!(parse("x:0").is_err());
        assert!(parse("(and x:1").is_err());
        assert!(parse("x:1 x:2").is_err());
    }
}
