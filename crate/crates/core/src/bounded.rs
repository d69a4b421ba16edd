//! Bounded asymmetric relations `ū ≤_n^a v̄` evaluated over `[0, B]`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{decode_seq_u64, truth_of, Formula, Natural};

/// Which bound limits the formula codes inspected at level 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level0Bound {
    /// `x ≤ |ū|`, as printed.
    #[default]
    SeqLen,
    /// `x ≤ a`.
    BoundA,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedBfQuery {
    pub n: u32,
    pub a: u32,
    pub u_code: Natural,
    pub v_code: Natural,
    pub universe_bound: u64,
    /// Length cap for the existential block; `None` means `a`.
    pub existential_length_cap: Option<u32>,
    pub level0: Level0Bound,
}

impl BoundedBfQuery {
    pub fn new(n: u32, a: u32, u_code: Natural, v_code: Natural, universe_bound: u64) -> Self {
        Self {
            n,
            a,
            u_code,
            v_code,
            universe_bound,
            existential_length_cap: None,
            level0: Level0Bound::SeqLen,
        }
    }
}

pub fn bbf_leq(q: &BoundedBfQuery) -> bool {
    let (Ok(u), Ok(v)) = (decode_seq_u64(&q.u_code), decode_seq_u64(&q.v_code)) else {
        return false;
    };
    let cap = q.existential_length_cap.unwrap_or(q.a);
    let mut ev = BoundedBf::new(q.universe_bound, q.a, cap, q.level0);
    ev.leq(q.n, &u, &v)
}

/// All tuples over `[0, bound]` of length at most `max_len`, shortest first.
pub fn tuples_upto(bound: u64, max_len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for t in &layer {
            for x in 0..=bound {
                let mut s: Vec<u64> = t.clone();
                s.push(x);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Memoizing evaluator for one `(B, a, cap)` configuration.
pub struct BoundedBf {
    universe: u64,
    a: u32,
    level0: Level0Bound,
    forall_block: Vec<Vec<u64>>,
    exists_block: Vec<Vec<u64>>,
    formulas: Vec<Option<Formula>>,
    memo: HashMap<(u32, Vec<u64>, Vec<u64>), bool>,
}

impl BoundedBf {
    pub fn new(universe: u64, a: u32, cap: u32, level0: Level0Bound) -> Self {
        Self {
            universe,
            a,
            level0,
            forall_block: tuples_upto(universe, a as usize),
            exists_block: tuples_upto(universe, cap as usize),
            formulas: Vec::new(),
            memo: HashMap::new(),
        }
    }

    fn formula(&mut self, code: usize) -> Option<&Formula> {
        while self.formulas.len() <= code {
            let c = Natural::from(self.formulas.len());
            self.formulas.push(Formula::ungodel(&c));
        }
        self.formulas[code].as_ref()
    }

    fn level0(&mut self, u: &[u64], v: &[u64]) -> bool {
        let top = match self.level0 {
            Level0Bound::SeqLen => u.len(),
            Level0Bound::BoundA => self.a as usize,
        };
        let un: Vec<Natural> = u.iter().map(|&x| Natural::from(x)).collect();
        let vn: Vec<Natural> = v.iter().map(|&x| Natural::from(x)).collect();
        for x in 0..=top {
            let Some(phi) = self.formula(x) else { continue };
            if truth_of(phi, &un) && !truth_of(phi, &vn) {
                return false;
            }
        }
        true
    }

    pub fn leq(&mut self, n: u32, u: &[u64], v: &[u64]) -> bool {
        if u.iter().chain(v).any(|&x| x > self.universe) {
            return false;
        }
        self.leq_in(n, u, v)
    }

    fn leq_in(&mut self, n: u32, u: &[u64], v: &[u64]) -> bool {
        if n == 0 {
            return self.level0(u, v);
        }
        let key = (n, u.to_vec(), v.to_vec());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let forall = std::mem::take(&mut self.forall_block);
        let exists = std::mem::take(&mut self.exists_block);
        let result = forall.iter().all(|x| {
            let vx: Vec<u64> = v.iter().chain(x).copied().collect();
            exists.iter().any(|y| {
                let uy: Vec<u64> = u.iter().chain(y).copied().collect();
                self.leq_in(n - 1, &vx, &uy)
            })
        });
        self.forall_block = forall;
        self.exists_block = exists;
        self.memo.insert(key, result);
        result
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BfProperty {
    DownwardClosure,
    Nestedness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BfCounterexample {
    pub property: BfProperty,
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub u: Vec<u64>,
    pub v: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BfPropertyReport {
    pub universe_bound: u64,
    pub max_n: u32,
    pub max_a: u32,
    pub max_len: usize,
    pub existential_length_cap: u32,
    pub checks: usize,
    pub counterexamples: Vec<BfCounterexample>,
}

impl BfPropertyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks downward closure in `a` and nestedness in `n` over all tuple pairs.
///
/// The existential block uses one fixed length cap (`max_a`) for every `a`.
pub fn check_bf_properties(
    universe: u64,
    max_n: u32,
    max_a: u32,
    max_len: usize,
) -> BfPropertyReport {
    check_bf_properties_with(universe, max_n, max_a, max_len, max_a, Level0Bound::SeqLen)
}

pub fn check_bf_properties_with(
    universe: u64,
    max_n: u32,
    max_a: u32,
    max_len: usize,
    cap: u32,
    level0: Level0Bound,
) -> BfPropertyReport {
    let tuples = tuples_upto(universe, max_len);
    let pairs: Vec<(&Vec<u64>, &Vec<u64>)> = tuples
        .iter()
        .flat_map(|u| tuples.iter().map(move |v| (u, v)))
        .collect();
    let results: Vec<(usize, Vec<BfCounterexample>)> = pairs
        .par_iter()
        .map_init(
            || {
                (0..=max_a)
                    .map(|a| BoundedBf::new(universe, a, cap, level0))
                    .collect::<Vec<_>>()
            },
            |evs, (u, v)| {
                let mut checks = 0;
                let mut found = Vec::new();
                for n in 0..max_n {
                    for a in 0..=max_a {
                        let at_a = evs[a as usize].leq(n, u, v);
                        for b in a..=max_a {
                            checks += 1;
                            if evs[b as usize].leq(n, u, v) && !at_a {
                                found.push(BfCounterexample {
                                    property: BfProperty::DownwardClosure,
                                    n,
                                    a,
                                    b,
                                    u: u.to_vec(),
                                    v: v.to_vec(),
                                });
                            }
                        }
                        checks += 1;
                        if evs[a as usize].leq(n + 1, u, v) && !at_a {
                            found.push(BfCounterexample {
                                property: BfProperty::Nestedness,
                                n,
                                a,
                                b: a,
                                u: u.to_vec(),
                                v: v.to_vec(),
                            });
                        }
                    }
                }
                (checks, found)
            },
        )
        .collect();
    let mut checks = 0;
    let mut counterexamples = Vec::new();
    for (c, found) in results {
        checks += c;
        counterexamples.extend(found);
    }
    BfPropertyReport {
        universe_bound: universe,
        max_n,
        max_a,
        max_len,
        existential_length_cap: cap,
        checks,
        counterexamples,
    }
}

/// Least natural that codes a formula with a free variable.
pub fn first_open_formula_code() -> u64 {
    (0u64..)
        .find(|&c| Formula::ungodel(&Natural::from(c)).is_some_and(|f| !f.free_vars().is_empty()))
        .expect("open formulas exist")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    HoldsWithinBounds,
    FailsWithinBounds,
}

/// Search ranges for the probe's quantified variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeBounds {
    /// Largest entry of `b̄`, `ā′`, `b̄′`; also the universe bound of the inner relations.
    pub value_max: u64,
    pub b_len_max: usize,
    pub x_max: u32,
    pub y_max: u32,
    pub level0: Level0Bound,
}

impl ProbeBounds {
    pub fn uniform(r: u64) -> Self {
        Self {
            value_max: r,
            b_len_max: r as usize,
            x_max: r as u32,
            y_max: r as u32,
            level0: Level0Bound::SeqLen,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub a: Vec<u64>,
    pub n: u32,
    pub bounds: ProbeBounds,
    pub verdict: ProbeVerdict,
    /// The `b̄` that answered every challenge.
    pub witness: Option<Vec<u64>>,
}

/// `∃b̄ ∀ā′b̄′ ∃x (āb̄ ≤_0^x ā′b̄′ → ∀y ā ≤_n^y ā′)` within `bounds`.
pub fn probe_standard_witness(a: &[u64], n: u32, bounds: &ProbeBounds) -> ProbeReport {
    let universe = bounds.value_max.max(a.iter().copied().max().unwrap_or(0));
    let mut level0: Vec<BoundedBf> = (0..=bounds.x_max)
        .map(|x| BoundedBf::new(universe, x, x, bounds.level0))
        .collect();
    let mut upper: Vec<BoundedBf> = (0..=bounds.y_max)
        .map(|y| BoundedBf::new(universe, y, y, bounds.level0))
        .collect();
    let mut conclusion: HashMap<Vec<u64>, bool> = HashMap::new();
    let primes: Vec<Vec<u64>> = fixed_len(bounds.value_max, a.len());
    let mut witness = None;
    for b in tuples_upto(bounds.value_max, bounds.b_len_max) {
        let ab: Vec<u64> = a.iter().chain(&b).copied().collect();
        let b_primes = fixed_len(bounds.value_max, b.len());
        let ok = primes.iter().all(|ap| {
            let concl = *conclusion
                .entry(ap.clone())
                .or_insert_with(|| upper.iter_mut().all(|ev| ev.leq(n, a, ap)));
            concl
                || b_primes.iter().all(|bp| {
                    let apbp: Vec<u64> = ap.iter().chain(bp).copied().collect();
                    level0.iter_mut().any(|ev| !ev.leq(0, &ab, &apbp))
                })
        });
        if ok {
            witness = Some(b);
            break;
        }
    }
    let verdict = if witness.is_some() {
        ProbeVerdict::HoldsWithinBounds
    } else {
        ProbeVerdict::FailsWithinBounds
    };
    ProbeReport {
        a: a.to_vec(),
        n,
        bounds: *bounds,
        verdict,
        witness,
    }
}

fn fixed_len(bound: u64, len: usize) -> Vec<Vec<u64>> {
    tuples_upto(bound, len)
        .into_iter()
        .filter(|t| t.len() == len)
        .collect()
}
