//! Structural α-jumps: materialized on finite structures, level-shifted on order terms.

use serde::Serialize;

use crate::finite::{
    atomic_buckets, bf_partition, same_atomic_type, tuples_upto, BfOptions, FiniteBf,
    FiniteStructure, RelationFile, StructureError,
};
use crate::order::{JumpSpec, LoBf, LoBfConfig, OrderTerm, PointedTerm, Position};

/// `A` expanded by one relation `R_i` per `≡_α` class of tuples of length `1..=tuple_cap`,
/// with `b̄ ∈ R_i ⟺ ā_i ≤_α b̄`.
#[derive(Clone, Debug)]
pub struct JumpedStructure {
    pub base: FiniteStructure,
    pub alpha: u32,
    pub tuple_cap: usize,
    /// `representatives[i]` is the least member of the class behind `R_i`.
    pub representatives: Vec<Vec<usize>>,
    pub structure: FiniteStructure,
}

pub fn relation_name(i: usize) -> String {
    format!("R_{i}")
}

pub fn jump_finite(
    a: &FiniteStructure,
    alpha: u32,
    tuple_cap: usize,
) -> Result<JumpedStructure, StructureError> {
    let classes = bf_partition(a, alpha, tuple_cap);
    let representatives: Vec<Vec<usize>> = classes.iter().map(|c| c[0].clone()).collect();
    let mut bf = FiniteBf::new(a, a, BfOptions::default());
    let tuples: Vec<Vec<usize>> = tuples_upto(a.universe(), tuple_cap);
    // `ā ≤_α b̄` forces equal atomic types, so each class only scans its own bucket.
    let buckets = atomic_buckets(a, &tuples);
    let mut file = a.to_file();
    for (i, rep) in representatives.iter().enumerate() {
        let name = relation_name(i);
        if file.relations.contains_key(&name) {
            return Err(StructureError::Duplicate(name));
        }
        let bucket = buckets
            .iter()
            .find(|b| same_atomic_type(a, &tuples[b[0]], a, rep))
            .expect("rep is a tuple");
        let members: Vec<Vec<usize>> = bucket
            .iter()
            .map(|&j| &tuples[j])
            .filter(|t| bf.leq(rep, t, alpha))
            .cloned()
            .collect();
        file.relations.insert(
            name,
            RelationFile {
                arity: rep.len(),
                tuples: members,
            },
        );
    }
    let structure = FiniteStructure::from_file(&file)?;
    Ok(JumpedStructure {
        base: a.clone(),
        alpha,
        tuple_cap,
        representatives,
        structure,
    })
}

#[derive(Clone, Copy, Debug)]
pub enum ShiftSubject<'a> {
    Finite(&'a FiniteStructure),
    Term(&'a OrderTerm),
}

/// Tuple grid for [`verify_level_shift`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftCaps {
    /// Longest compared tuple (finite) or most points (terms).
    pub tuple_len: usize,
    /// Largest Cantor coefficient of term points.
    pub coef: u64,
    /// Tuple cap of the materialized jump; `None` means `tuple_len + β`, the longest tuple a
    /// `β`-round game starting from `tuple_len` points can reach.
    pub jump_len: Option<usize>,
}

impl Default for ShiftCaps {
    fn default() -> Self {
        Self {
            tuple_len: 2,
            coef: 2,
            jump_len: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftRoute {
    /// Relations computed on the materialized jump.
    Materialized,
    /// The recursion restarted above level `α`.
    Shifted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftMismatch {
    pub route: ShiftRoute,
    pub left: Vec<String>,
    pub right: Vec<String>,
    /// Value on the base structure at level `α + β` (or `≡_α`/`≤_α` at `β = 0`).
    pub direct: bool,
    pub via_route: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelShiftReport {
    pub subject: String,
    pub alpha: u32,
    pub beta: u32,
    pub pairs_checked: usize,
    pub horizon_limited: bool,
    pub mismatches: Vec<ShiftMismatch>,
}

impl LevelShiftReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn show<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(T::to_string).collect()
}

/// Compares `ā ≤_β b̄` after an α-jump with `ā ≤_{α+β} b̄` over all tuple pairs within `caps`.
pub fn verify_level_shift(
    subject: ShiftSubject<'_>,
    alpha: u32,
    beta: u32,
    caps: ShiftCaps,
) -> Result<LevelShiftReport, StructureError> {
    match subject {
        ShiftSubject::Finite(a) => verify_finite(a, alpha, beta, caps),
        ShiftSubject::Term(t) => Ok(verify_term(t, alpha, beta, caps)),
    }
}

fn verify_finite(
    a: &FiniteStructure,
    alpha: u32,
    beta: u32,
    caps: ShiftCaps,
) -> Result<LevelShiftReport, StructureError> {
    let jumped = jump_finite(
        a,
        alpha,
        caps.jump_len.unwrap_or(caps.tuple_len + beta as usize),
    )?;
    let mut direct = FiniteBf::new(a, a, BfOptions::default());
    let mut shifted = FiniteBf::new(
        a,
        a,
        BfOptions {
            base: Some(alpha),
            ..BfOptions::default()
        },
    );
    let j = &jumped.structure;
    let mut materialized = FiniteBf::new(j, j, BfOptions::default());
    let tuples: Vec<Vec<usize>> = tuples_upto(a.universe(), caps.tuple_len);
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for x in &tuples {
        for y in tuples.iter().filter(|y| y.len() == x.len()) {
            pairs += 1;
            let (m, s) = (materialized.leq(x, y, beta), shifted.leq(x, y, beta));
            let (want_m, want_s) = if beta == 0 {
                let up = direct.leq(x, y, alpha);
                (up && direct.leq(y, x, alpha), up)
            } else {
                let d = direct.leq(x, y, alpha + beta);
                (d, d)
            };
            for (route, want, got) in [
                (ShiftRoute::Materialized, want_m, m),
                (ShiftRoute::Shifted, want_s, s),
            ] {
                if want != got {
                    mismatches.push(ShiftMismatch {
                        route,
                        left: show(x),
                        right: show(y),
                        direct: want,
                        via_route: got,
                    });
                }
            }
        }
    }
    Ok(LevelShiftReport {
        subject: format!("structure on {} elements", a.universe()),
        alpha,
        beta,
        pairs_checked: pairs,
        horizon_limited: false,
        mismatches,
    })
}

/// Ascending point tuples of `t` with at most `len` points and coefficients at most `coef`.
pub fn point_grid(t: &OrderTerm, len: usize, coef: u64) -> Vec<PointedTerm> {
    let ty = t.order_type();
    let pool = ty.grid(coef, len as u64);
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<Position>)> = vec![(0, Vec::new())];
    while let Some((from, cur)) = stack.pop() {
        out.push(cur.clone());
        if cur.len() < len {
            for i in (from..pool.len()).rev() {
                let mut next = cur.clone();
                next.push(pool[i].clone());
                stack.push((i + 1, next));
            }
        }
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out.into_iter()
        .map(|ps| PointedTerm::new(ty.clone(), ps).expect("grid points are ascending"))
        .collect()
}

fn verify_term(t: &OrderTerm, alpha: u32, beta: u32, caps: ShiftCaps) -> LevelShiftReport {
    let points = point_grid(t, caps.tuple_len, caps.coef);
    let mut lo = LoBf::new(LoBfConfig {
        max_level: alpha + beta,
        ..LoBfConfig::default()
    });
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    let mut limited = false;
    for x in &points {
        for y in &points {
            pairs += 1;
            let s = lo
                .pointed(x, y, beta, JumpSpec::new(alpha))
                .expect("within level cap");
            let d = lo
                .pointed(x, y, alpha + beta, JumpSpec::new(0))
                .expect("within level cap");
            limited |= s.horizon_limited || d.horizon_limited;
            if s.holds != d.holds {
                mismatches.push(ShiftMismatch {
                    route: ShiftRoute::Shifted,
                    left: show(x.points()),
                    right: show(y.points()),
                    direct: d.holds,
                    via_route: s.holds,
                });
            }
        }
    }
    LevelShiftReport {
        subject: t.to_string(),
        alpha,
        beta,
        pairs_checked: pairs,
        horizon_limited: limited,
        mismatches,
    }
}
