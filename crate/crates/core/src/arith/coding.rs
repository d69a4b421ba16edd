use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::CodingError;

/// Arbitrary-precision natural number used for codes.
pub type Natural = BigUint;

/// Cantor pairing `((x+y)^2 + 3x + y) / 2`.
pub fn pair(x: &Natural, y: &Natural) -> Natural {
    let s = x + y;
    let num = &s * &s + x * 3u32 + y;
    assert!(!num.bit(0), "pairing numerator must be even");
    num >> 1u32
}

pub fn pair_u64(x: u64, y: u64) -> Natural {
    pair(&Natural::from(x), &Natural::from(y))
}

/// Inverse of [`pair`].
pub fn unpair(c: &Natural) -> (Natural, Natural) {
    let w = ((c * 8u32 + 1u32).sqrt() - 1u32) >> 1u32;
    let t = (&w * (&w + 1u32)) >> 1u32;
    let x = c - t;
    let y = &w - &x;
    (x, y)
}

/// Code of a finite set: the sum of `2^a` over its members.
pub fn encode_set<'a, I>(set: I) -> Natural
where
    I: IntoIterator<Item = &'a u64>,
{
    let mut code = Natural::zero();
    for &a in set {
        code.set_bit(a, true);
    }
    code
}

/// Members of the set coded by `code`, ascending.
pub fn decode_set(code: &Natural) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for (i, digit) in code.iter_u64_digits().enumerate() {
        let mut d = digit;
        while d != 0 {
            let b = d.trailing_zeros() as u64;
            out.insert(i as u64 * 64 + b);
            d &= d - 1;
        }
    }
    out
}

/// Code of the finite set `{pair(i, a_i)}`.
pub fn encode_seq(seq: &[Natural]) -> Result<Natural, CodingError> {
    let mut exps = BTreeSet::new();
    for (i, a) in seq.iter().enumerate() {
        let p = pair(&Natural::from(i), a);
        exps.insert(p.to_u64().ok_or(CodingError::TooLarge)?);
    }
    Ok(encode_set(&exps))
}

pub fn encode_seq_u64(seq: &[u64]) -> Natural {
    let elems: Vec<Natural> = seq.iter().map(|&a| Natural::from(a)).collect();
    encode_seq(&elems).expect("small sequence")
}

pub fn decode_seq(code: &Natural) -> Result<Vec<Natural>, CodingError> {
    let mut entries = BTreeMap::new();
    for bit in decode_set(code) {
        let (i, a) = unpair(&Natural::from(bit));
        let i = i.to_usize().ok_or(CodingError::NotASequence)?;
        if entries.insert(i, a).is_some() {
            return Err(CodingError::NotASequence);
        }
    }
    if entries.keys().enumerate().any(|(k, &i)| k != i) {
        return Err(CodingError::NotASequence);
    }
    Ok(entries.into_values().collect())
}

pub fn decode_seq_u64(code: &Natural) -> Result<Vec<u64>, CodingError> {
    decode_seq(code)?
        .iter()
        .map(|a| a.to_u64().ok_or(CodingError::TooLarge))
        .collect()
}

pub fn seq_len(code: &Natural) -> Result<usize, CodingError> {
    decode_seq(code).map(|s| s.len())
}

pub fn seq_concat(u: &Natural, v: &Natural) -> Result<Natural, CodingError> {
    let mut s = decode_seq(u)?;
    s.extend(decode_seq(v)?);
    encode_seq(&s)
}

/// A natural known to code a finite sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceCode {
    code: Natural,
    elems: Vec<Natural>,
}

impl SequenceCode {
    pub fn from_code(code: Natural) -> Result<Self, CodingError> {
        let elems = decode_seq(&code)?;
        Ok(Self { code, elems })
    }

    pub fn from_elems(elems: Vec<Natural>) -> Result<Self, CodingError> {
        let code = encode_seq(&elems)?;
        Ok(Self { code, elems })
    }

    pub fn code(&self) -> &Natural {
        &self.code
    }

    pub fn elems(&self) -> &[Natural] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Result<Self, CodingError> {
        let mut elems = self.elems.clone();
        elems.extend(other.elems.iter().cloned());
        Self::from_elems(elems)
    }
}
