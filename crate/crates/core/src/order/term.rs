use std::fmt;

use super::types::{Atom, OrderType};
use super::TermParseError;

/// Term denoting a countable linear order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderTerm {
    Fin(u64),
    Omega,
    OmegaPow(u32),
    Eta,
    Sum(Box<OrderTerm>, Box<OrderTerm>),
    Mul(Box<OrderTerm>, u64),
}

#[allow(clippy::should_implement_trait)]
impl OrderTerm {
    pub fn sum(a: OrderTerm, b: OrderTerm) -> Self {
        OrderTerm::Sum(Box::new(a), Box::new(b))
    }

    pub fn mul(a: OrderTerm, n: u64) -> Self {
        OrderTerm::Mul(Box::new(a), n)
    }

    pub fn order_type(&self) -> OrderType {
        let mut atoms = Vec::new();
        self.push_atoms(&mut atoms);
        OrderType::from_atoms(atoms)
    }

    fn push_atoms(&self, out: &mut Vec<Atom>) {
        match self {
            OrderTerm::Fin(n) => out.push(Atom::Fin(*n)),
            OrderTerm::Omega => out.push(Atom::Pow(1)),
            OrderTerm::OmegaPow(k) => out.push(Atom::Pow(*k)),
            OrderTerm::Eta => out.push(Atom::Eta),
            OrderTerm::Sum(a, b) => {
                a.push_atoms(out);
                b.push_atoms(out);
            }
            OrderTerm::Mul(a, n) => {
                for _ in 0..*n {
                    a.push_atoms(out);
                }
            }
        }
    }

    /// Right-associated sum of folded atoms.
    pub fn normalize(&self) -> OrderTerm {
        self.order_type().to_term()
    }
}

impl fmt::Display for OrderTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderTerm::Fin(n) => write!(f, "{n}"),
            OrderTerm::Omega => write!(f, "w"),
            OrderTerm::OmegaPow(k) => write!(f, "w^{k}"),
            OrderTerm::Eta => write!(f, "eta"),
            OrderTerm::Sum(a, b) => write!(f, "{a} + {b}"),
            OrderTerm::Mul(a, n) => match **a {
                OrderTerm::Sum(..) | OrderTerm::Mul(..) => write!(f, "({a})*{n}"),
                _ => write!(f, "{a}*{n}"),
            },
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> TermParseError {
        TermParseError {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, TermParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| TermParseError {
                pos: start,
                msg: "number too large".into(),
            })
    }

    fn sum(&mut self) -> Result<OrderTerm, TermParseError> {
        let mut acc = self.prod()?;
        while self.eat(b'+') {
            let rhs = self.prod()?;
            acc = OrderTerm::sum(acc, rhs);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<OrderTerm, TermParseError> {
        let atom = self.atom()?;
        if self.eat(b'*') {
            let n = self.nat()?;
            return Ok(if n == 0 {
                OrderTerm::Fin(0)
            } else {
                OrderTerm::mul(atom, n)
            });
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<OrderTerm, TermParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let t = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => Ok(OrderTerm::Fin(self.nat()?)),
            Some(b'w') => {
                self.pos += 1;
                if self.src.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    let at = self.pos;
                    let k = self.nat()?;
                    match k {
                        0 => Err(TermParseError {
                            pos: at,
                            msg: "exponent 0 is not allowed".into(),
                        }),
                        1 => Ok(OrderTerm::Omega),
                        _ => {
                            u32::try_from(k)
                                .map(OrderTerm::OmegaPow)
                                .map_err(|_| TermParseError {
                                    pos: at,
                                    msg: "exponent too large".into(),
                                })
                        }
                    }
                } else {
                    Ok(OrderTerm::Omega)
                }
            }
            Some(b'e') if self.src[self.pos..].starts_with(b"eta") => {
                self.pos += 3;
                Ok(OrderTerm::Eta)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses the term grammar without normalizing.
pub fn parse_term_raw(text: &str) -> Result<OrderTerm, TermParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let t = p.sum()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(t)
}

/// Parses and normalizes.
pub fn parse_term(text: &str) -> Result<OrderTerm, TermParseError> {
    parse_term_raw(text).map(|t| t.normalize())
}
