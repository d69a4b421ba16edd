use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use super::coding::{pair, unpair, Natural};
use super::EvalError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Var(u32),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

/// Bounded arithmetic formula; every quantifier carries a bound term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Le(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall {
        var: u32,
        bound: Term,
        body: Box<Formula>,
    },
    Exists {
        var: u32,
        bound: Term,
        body: Box<Formula>,
    },
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(i: u32) -> Self {
        Term::Var(i)
    }

    pub fn add(a: Term, b: Term) -> Self {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Self {
        Term::Mul(Box::new(a), Box::new(b))
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::Zero | Term::One => {}
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn eval(&self, env: &BTreeMap<u32, Natural>) -> Result<Natural, EvalError> {
        Ok(match self {
            Term::Zero => Natural::zero(),
            Term::One => Natural::one(),
            Term::Var(i) => env.get(i).cloned().ok_or(EvalError::UnboundVariable(*i))?,
            Term::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Term::Mul(a, b) => a.eval(env)? * b.eval(env)?,
        })
    }

    pub fn godel(&self) -> Natural {
        let (tag, payload) = match self {
            Term::Zero => (0u32, Natural::zero()),
            Term::One => (1, Natural::zero()),
            Term::Var(i) => (2, Natural::from(*i)),
            Term::Add(a, b) => (3, pair(&a.godel(), &b.godel())),
            Term::Mul(a, b) => (4, pair(&a.godel(), &b.godel())),
        };
        pair(&Natural::from(tag), &payload)
    }

    pub fn ungodel(code: &Natural) -> Option<Term> {
        let (tag, payload) = unpair(code);
        let children = || {
            let (a, b) = unpair(&payload);
            Some((Box::new(Term::ungodel(&a)?), Box::new(Term::ungodel(&b)?)))
        };
        match tag.to_u32()? {
            0 if payload.is_zero() => Some(Term::Zero),
            1 if payload.is_zero() => Some(Term::One),
            2 => Some(Term::Var(payload.to_u32()?)),
            3 => children().map(|(a, b)| Term::Add(a, b)),
            4 => children().map(|(a, b)| Term::Mul(a, b)),
            _ => None,
        }
    }
}

#[allow(clippy::should_implement_trait)]
impl Formula {
    pub fn eq(a: Term, b: Term) -> Self {
        Formula::Eq(a, b)
    }

    pub fn le(a: Term, b: Term) -> Self {
        Formula::Le(a, b)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(var: u32, bound: Term, body: Formula) -> Self {
        Formula::Forall {
            var,
            bound,
            body: Box::new(body),
        }
    }

    pub fn exists(var: u32, bound: Term, body: Formula) -> Self {
        Formula::Exists {
            var,
            bound,
            body: Box::new(body),
        }
    }

    fn collect_free(&self, bound_vars: &mut Vec<u32>, out: &mut BTreeSet<u32>) {
        let mut term = |t: &Term, bound_vars: &Vec<u32>| {
            for v in t.vars() {
                if !bound_vars.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) => {
                term(a, bound_vars);
                term(b, bound_vars);
            }
            Formula::Not(f) => f.collect_free(bound_vars, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound_vars, out);
                b.collect_free(bound_vars, out);
            }
            Formula::Forall { var, bound, body } | Formula::Exists { var, bound, body } => {
                term(bound, bound_vars);
                bound_vars.push(*var);
                body.collect_free(bound_vars, out);
                bound_vars.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Eq(..) | Formula::Le(..) => 0,
            Formula::Not(f) => 1 + f.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Forall { body, .. } | Formula::Exists { body, .. } => 1 + body.depth(),
        }
    }

    /// Tree code: `pair(tag, payload)` with children paired into the payload.
    pub fn godel(&self) -> Natural {
        let (tag, payload) = match self {
            Formula::Eq(a, b) => (0u32, pair(&a.godel(), &b.godel())),
            Formula::Le(a, b) => (1, pair(&a.godel(), &b.godel())),
            Formula::Not(f) => (2, f.godel()),
            Formula::And(a, b) => (3, pair(&a.godel(), &b.godel())),
            Formula::Or(a, b) => (4, pair(&a.godel(), &b.godel())),
            Formula::Implies(a, b) => (5, pair(&a.godel(), &b.godel())),
            Formula::Forall { var, bound, body } => (6, quant_payload(*var, bound, body)),
            Formula::Exists { var, bound, body } => (7, quant_payload(*var, bound, body)),
        };
        pair(&Natural::from(tag), &payload)
    }

    /// Partial inverse of [`Formula::godel`]; `None` on non-codes.
    pub fn ungodel(code: &Natural) -> Option<Formula> {
        let (tag, payload) = unpair(code);
        let terms = || {
            let (a, b) = unpair(&payload);
            Some((Term::ungodel(&a)?, Term::ungodel(&b)?))
        };
        let subs = || {
            let (a, b) = unpair(&payload);
            Some((
                Box::new(Formula::ungodel(&a)?),
                Box::new(Formula::ungodel(&b)?),
            ))
        };
        let quant = || {
            let (var, rest) = unpair(&payload);
            let (bound, body) = unpair(&rest);
            Some((
                var.to_u32()?,
                Term::ungodel(&bound)?,
                Box::new(Formula::ungodel(&body)?),
            ))
        };
        match tag.to_u32()? {
            0 => terms().map(|(a, b)| Formula::Eq(a, b)),
            1 => terms().map(|(a, b)| Formula::Le(a, b)),
            2 => Formula::ungodel(&payload).map(|f| Formula::Not(Box::new(f))),
            3 => subs().map(|(a, b)| Formula::And(a, b)),
            4 => subs().map(|(a, b)| Formula::Or(a, b)),
            5 => subs().map(|(a, b)| Formula::Implies(a, b)),
            6 => quant().map(|(var, bound, body)| Formula::Forall { var, bound, body }),
            7 => quant().map(|(var, bound, body)| Formula::Exists { var, bound, body }),
            _ => None,
        }
    }

    pub fn eval(&self, env: &BTreeMap<u32, Natural>) -> Result<bool, EvalError> {
        let mut env = env.clone();
        self.eval_in(&mut env)
    }

    fn eval_in(&self, env: &mut BTreeMap<u32, Natural>) -> Result<bool, EvalError> {
        Ok(match self {
            Formula::Eq(a, b) => a.eval(env)? == b.eval(env)?,
            Formula::Le(a, b) => a.eval(env)? <= b.eval(env)?,
            Formula::Not(f) => !f.eval_in(env)?,
            Formula::And(a, b) => a.eval_in(env)? && b.eval_in(env)?,
            Formula::Or(a, b) => a.eval_in(env)? || b.eval_in(env)?,
            Formula::Implies(a, b) => !a.eval_in(env)? || b.eval_in(env)?,
            Formula::Forall { var, bound, body } => !quantify(*var, bound, body, env, false)?,
            Formula::Exists { var, bound, body } => quantify(*var, bound, body, env, true)?,
        })
    }
}

fn quant_payload(var: u32, bound: &Term, body: &Formula) -> Natural {
    pair(&Natural::from(var), &pair(&bound.godel(), &body.godel()))
}

/// Searches `0..=bound` for a value making `body` equal to `want`.
fn quantify(
    var: u32,
    bound: &Term,
    body: &Formula,
    env: &mut BTreeMap<u32, Natural>,
    want: bool,
) -> Result<bool, EvalError> {
    let limit = bound.eval(env)?;
    let saved = env.remove(&var);
    let mut i = Natural::zero();
    let mut found = false;
    let mut outcome = Ok(());
    while i <= limit {
        env.insert(var, i.clone());
        match body.eval_in(env) {
            Ok(v) if v == want => {
                found = true;
                break;
            }
            Ok(_) => {}
            Err(e) => {
                outcome = Err(e);
                break;
            }
        }
        i += 1u32;
    }
    env.remove(&var);
    if let Some(old) = saved {
        env.insert(var, old);
    }
    outcome.map(|_| found)
}

/// Evaluates `phi` under `env`.
pub fn eval_delta0(phi: &Formula, env: &BTreeMap<u32, Natural>) -> Result<bool, EvalError> {
    phi.eval(env)
}

/// Truth of the formula coded by `code` at the tuple `args` (variable `v_i` gets `args[i]`).
/// Non-codes and formulas with free variables outside the tuple are false.
pub fn truth(code: &Natural, args: &[Natural]) -> bool {
    match Formula::ungodel(code) {
        Some(phi) => truth_of(&phi, args),
        None => false,
    }
}

pub fn truth_of(phi: &Formula, args: &[Natural]) -> bool {
    if phi.free_vars().iter().any(|&v| v as usize >= args.len()) {
        return false;
    }
    let env = args
        .iter()
        .enumerate()
        .map(|(i, a)| (i as u32, a.clone()))
        .collect();
    phi.eval(&env).unwrap_or(false)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Var(i) => write!(f, "(var v{i})"),
            Term::Add(a, b) => write!(f, "(+ {a} {b})"),
            Term::Mul(a, b) => write!(f, "(* {a} {b})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Le(a, b) => write!(f, "(<= {a} {b})"),
            Formula::Not(x) => write!(f, "(not {x})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Implies(a, b) => write!(f, "(-> {a} {b})"),
            Formula::Forall { var, bound, body } => write!(f, "(forall (v{var} {bound}) {body})"),
            Formula::Exists { var, bound, body } => write!(f, "(exists (v{var} {bound}) {body})"),
        }
    }
}
