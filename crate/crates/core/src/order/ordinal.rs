use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// Cardinality of a countable order: finite count or `ℵ0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Card {
    Finite(u64),
    Infinite,
}

/// Ordinal below `ω^ω` in Cantor normal form: `(exponent, coefficient)` pairs,
/// exponents strictly decreasing, coefficients positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ordinal(Vec<(u32, u64)>);

impl Ordinal {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Self(vec![(0, n)])
        }
    }

    pub fn omega_pow(k: u32, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self(vec![(k, c)])
        }
    }

    /// From coefficients listed highest exponent first: `[c_{k-1}, …, c_0]`.
    pub fn from_coeffs(coeffs: &[u64]) -> Self {
        let k = coeffs.len() as u32;
        Self(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (k - 1 - i as u32, c))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.first().map(|t| t.0)
    }

    pub fn coef(&self, e: u32) -> u64 {
        self.0.iter().find(|t| t.0 == e).map_or(0, |t| t.1)
    }

    pub fn card(&self) -> Card {
        match self.0.as_slice() {
            [] => Card::Finite(0),
            [(0, c)] => Card::Finite(*c),
            _ => Card::Infinite,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let Some(&(lead, c)) = other.0.first() else {
            return self.clone();
        };
        let mut out: Vec<(u32, u64)> = self.0.iter().copied().filter(|t| t.0 > lead).collect();
        let carry = self.coef(lead);
        out.push((lead, carry + c));
        out.extend(other.0.iter().skip(1).copied());
        Self(out)
    }

    pub fn succ(&self) -> Self {
        self.add(&Self::nat(1))
    }

    /// The `z` with `self + z = other`, when `self ≤ other`.
    pub fn left_sub(&self, other: &Self) -> Option<Self> {
        if self > other {
            return None;
        }
        let mut i = 0;
        while i < self.0.len() && self.0[i] == other.0[i] {
            i += 1;
        }
        if i == self.0.len() {
            return Some(Self(other.0[i..].to_vec()));
        }
        let (e, c) = self.0[i];
        let mut out = Vec::new();
        let (oe, oc) = other.0[i];
        if oe == e {
            out.push((e, oc - c));
        } else {
            out.push((oe, oc));
        }
        out.extend(other.0[i + 1..].iter().copied());
        Some(Self(out))
    }

    pub fn max_coef(&self) -> u64 {
        self.0.iter().map(|t| t.1).max().unwrap_or(0)
    }

    /// Caps every coefficient at `m`.
    pub fn saturate(&self, m: u64) -> Self {
        Self(self.0.iter().map(|&(e, c)| (e, c.min(m))).collect())
    }

    /// `self = ω^n · q + r` with `r < ω^n`.
    pub fn split(&self, n: u32) -> (Self, Self) {
        let q = self
            .0
            .iter()
            .filter(|t| t.0 >= n)
            .map(|&(e, c)| (e - n, c))
            .collect();
        let r = self.0.iter().filter(|t| t.0 < n).copied().collect();
        (Self(q), Self(r))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(e, c)| {
                let base = match e {
                    0 => return c.to_string(),
                    1 => "w".to_string(),
                    _ => format!("w^{e}"),
                };
                if c == 1 {
                    base
                } else {
                    format!("{base}*{c}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `α ≤_L β` for well-orders, in closed form.
///
/// With `α = ω^n·q + r`:
/// * odd `L = 2n+1`: equal remainders mod `ω^n`, both quotients zero or both
///   nonzero, and `|q(β)| ≤ |q(α)|` (for `n = 0` this is `|β| ≤ |α|`);
/// * even `L = 2n+2`: if `α < ω^{n+1}` then `β = α`; otherwise `β ≥ ω^{n+1}`,
///   equal remainders mod `ω^n`, and the `ω^n` coefficient of `β` is at most that of `α`.
pub fn ordinal_leq(level: u32, a: &Ordinal, b: &Ordinal) -> bool {
    if level == 0 {
        return true;
    }
    let n = (level - 1) / 2;
    if level % 2 == 1 {
        if n == 0 {
            return b.card() <= a.card();
        }
        let (qa, ra) = a.split(n);
        let (qb, rb) = b.split(n);
        return ra == rb && qa.is_zero() == qb.is_zero() && qb.card() <= qa.card();
    }
    let (qa, _) = a.split(n + 1);
    let (qb, _) = b.split(n + 1);
    if qa.is_zero() {
        return a == b;
    }
    if qb.is_zero() {
        return false;
    }
    a.split(n).1 == b.split(n).1 && b.coef(n) <= a.coef(n)
}
