//! S-expression syntax for formulas.
//!
//! ```text
//! formula := (= t t) | (<= t t) | (not f) | (and f f) | (or f f) | (-> f f)
//!          | (forall (vN t) f) | (exists (vN t) f)
//! term    := 0 | 1 | vN | (var vN) | (+ t t) | (* t t)
//! ```

use super::formula::{Formula, Term};
use super::ParseError;

#[derive(Debug, Clone)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn err(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        pos,
        msg: msg.into(),
    }
}

fn read(src: &str) -> Result<Sexp, ParseError> {
    let bytes = src.as_bytes();
    let mut i = 0;
    let node = read_at(bytes, &mut i)?;
    skip_ws(bytes, &mut i);
    if i < bytes.len() {
        return Err(err(i, "trailing input"));
    }
    Ok(node)
}

fn skip_ws(b: &[u8], i: &mut usize) {
    while *i < b.len() && b[*i].is_ascii_whitespace() {
        *i += 1;
    }
}

fn read_at(b: &[u8], i: &mut usize) -> Result<Sexp, ParseError> {
    skip_ws(b, i);
    let start = *i;
    match b.get(*i) {
        None => Err(err(start, "unexpected end of input")),
        Some(b'(') => {
            *i += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(b, i);
                match b.get(*i) {
                    None => return Err(err(*i, "unclosed '('")),
                    Some(b')') => {
                        *i += 1;
                        return Ok(Sexp::List(items, start));
                    }
                    _ => items.push(read_at(b, i)?),
                }
            }
        }
        Some(b')') => Err(err(start, "unexpected ')'")),
        Some(_) => {
            while *i < b.len() && !b[*i].is_ascii_whitespace() && b[*i] != b'(' && b[*i] != b')' {
                *i += 1;
            }
            let text =
                std::str::from_utf8(&b[start..*i]).map_err(|_| err(start, "invalid utf-8"))?;
            Ok(Sexp::Atom(text.to_string(), start))
        }
    }
}

fn var_index(s: &Sexp) -> Result<u32, ParseError> {
    match s {
        Sexp::Atom(a, p) => a
            .strip_prefix('v')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| err(*p, format!("expected variable vN, found '{a}'"))),
        Sexp::List(_, p) => Err(err(*p, "expected variable vN")),
    }
}

fn term(s: &Sexp) -> Result<Term, ParseError> {
    match s {
        Sexp::Atom(a, p) => match a.as_str() {
            "0" => Ok(Term::Zero),
            "1" => Ok(Term::One),
            _ if a.starts_with('v') => var_index(s).map(Term::Var),
            _ => Err(err(*p, format!("unknown term '{a}'"))),
        },
        Sexp::List(items, p) => {
            let head = head(items, *p)?;
            match (head, &items[1..]) {
                ("var", [v]) => var_index(v).map(Term::Var),
                ("+", [a, b]) => Ok(Term::add(term(a)?, term(b)?)),
                ("*", [a, b]) => Ok(Term::mul(term(a)?, term(b)?)),
                _ => Err(err(*p, format!("malformed term '({head} ...)'"))),
            }
        }
    }
}

fn head(items: &[Sexp], pos: usize) -> Result<&str, ParseError> {
    match items.first() {
        Some(Sexp::Atom(h, _)) => Ok(h.as_str()),
        Some(other) => Err(err(other.pos(), "expected operator")),
        None => Err(err(pos, "empty list")),
    }
}

fn formula(s: &Sexp) -> Result<Formula, ParseError> {
    let (items, p) = match s {
        Sexp::List(items, p) => (items, *p),
        Sexp::Atom(a, p) => return Err(err(*p, format!("expected formula, found '{a}'"))),
    };
    let h = head(items, p)?;
    match (h, &items[1..]) {
        ("=", [a, b]) => Ok(Formula::eq(term(a)?, term(b)?)),
        ("<=", [a, b]) => Ok(Formula::le(term(a)?, term(b)?)),
        ("not", [a]) => Ok(Formula::not(formula(a)?)),
        ("and", [a, b]) => Ok(Formula::and(formula(a)?, formula(b)?)),
        ("or", [a, b]) => Ok(Formula::or(formula(a)?, formula(b)?)),
        ("->", [a, b]) => Ok(Formula::implies(formula(a)?, formula(b)?)),
        ("forall" | "exists", [binder, body]) => {
            let (var, bound) = match binder {
                Sexp::List(b, _) if b.len() == 2 => (var_index(&b[0])?, term(&b[1])?),
                other => return Err(err(other.pos(), "expected binder (vN bound)")),
            };
            let body = formula(body)?;
            Ok(if h == "forall" {
                Formula::forall(var, bound, body)
            } else {
                Formula::exists(var, bound, body)
            })
        }
        _ => Err(err(p, format!("malformed formula '({h} ...)'"))),
    }
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    formula(&read(src)?)
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    term(&read(src)?)
}
