//! Scott ranks via the freeness criterion, for finite structures and order terms.

use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::finite::{finite_rank_search, is_alpha_free_finite_with, BfOptions, FiniteStructure};
use crate::order::{
    coefficient_vectors, interval_decompose, Atom, Coord, JumpSpec, LoBf, LoBfConfig, OrderTerm,
    OrderType, PointedTerm, Position, Slot, Verdict,
};

/// Search limits for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankCaps {
    /// Largest tuple examined; `None` means 3 for terms and the universe size for structures.
    pub max_points: Option<usize>,
    /// Largest `base + level` evaluated.
    pub max_level: u32,
    /// Cantor coefficients of candidate points range over `0..=point_horizon`.
    pub point_horizon: u64,
}

impl Default for RankCaps {
    fn default() -> Self {
        Self {
            max_points: None,
            max_level: 8,
            point_horizon: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankWitness {
    pub tuple: Vec<String>,
    /// The level at which the tuple is free.
    pub free_at: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RankFlags {
    /// The rank is 1 only because ranks are reported from 1 upwards.
    pub rank_floor_applied: bool,
    pub tuple_cap: usize,
    pub level_cap: u32,
    pub horizon_limited: bool,
}

/// One level of the search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankStep {
    pub level: u32,
    pub free_tuple: Option<Vec<String>>,
    pub tuples_examined: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub subject: String,
    pub base: u32,
    /// `None` when a free tuple exists at every level up to the cap.
    pub rank: Option<u32>,
    /// The rank is at least this.
    pub lower_bound: u32,
    pub witness: Option<RankWitness>,
    pub flags: RankFlags,
    pub trace: Vec<RankStep>,
}

impl RankReport {
    /// `"4"`, or `">= 9"` when the cap was reached.
    pub fn display_rank(&self) -> String {
        match self.rank {
            Some(r) => r.to_string(),
            None => format!(">= {}", self.lower_bound),
        }
    }
}

/// Points of `ty` merged with the challenge grid; `marks[j]` is the merged index of `points[j]`.
fn merge_with_grid(ty: &OrderType, points: &[Position], grid: u64) -> (Vec<Position>, Vec<usize>) {
    let mut merged: Vec<(Position, Option<usize>)> = Vec::new();
    for (i, atom) in ty.atoms().iter().enumerate() {
        let mine: Vec<(usize, &Position)> = points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.atom == i)
            .collect();
        match *atom {
            Atom::Fin(n) => {
                for x in 0..n {
                    let p = Position::index(i, x);
                    let mark = mine.iter().find(|(_, q)| **q == p).map(|(j, _)| *j);
                    merged.push((p, mark));
                }
            }
            Atom::Pow(k) => {
                let mut here: Vec<(Position, Option<usize>)> =
                    coefficient_vectors(k as usize, grid)
                        .into_iter()
                        .map(|c| (Position::ord(i, c), None))
                        .collect();
                for &(j, q) in &mine {
                    match here.iter_mut().find(|(p, _)| p == q) {
                        Some(slot) => slot.1 = Some(j),
                        None => here.push((q.clone(), Some(j))),
                    }
                }
                here.sort();
                merged.extend(here);
            }
            Atom::Eta => {
                let mut idx = 0;
                let gap = |merged: &mut Vec<(Position, Option<usize>)>, idx: &mut u64| {
                    for _ in 0..=grid {
                        merged.push((Position::index(i, *idx), None));
                        *idx += 1;
                    }
                };
                gap(&mut merged, &mut idx);
                for &(j, _) in &mine {
                    merged.push((Position::index(i, idx), Some(j)));
                    idx += 1;
                    gap(&mut merged, &mut idx);
                }
            }
        }
    }
    let mut marks = vec![0; points.len()];
    for (m, (_, mark)) in merged.iter().enumerate() {
        if let Some(j) = mark {
            marks[*j] = m;
        }
    }
    (merged.into_iter().map(|(p, _)| p).collect(), marks)
}

/// Whether the points of `t` form an `alpha`-free tuple, relative to `base`.
///
/// The universal extension is the whole challenge grid around the points; any smaller
/// extension is answered by restricting the answer to it.
pub fn is_free_term(lo: &mut LoBf, t: &PointedTerm, alpha: u32, base: JumpSpec) -> Verdict {
    if alpha == 0 {
        return Verdict::exact(false);
    }
    let ty = t.order_type();
    let (merged, marks) = merge_with_grid(ty, t.points(), lo.config().grid);
    let mut deltas = Vec::with_capacity(merged.len() + 1);
    let mut prev: Option<&Position> = None;
    for p in &merged {
        deltas.push(ty.piece(prev, Some(p)));
        prev = Some(p);
    }
    let last = ty.piece(prev, None);
    let slots: Vec<Slot> = deltas
        .iter()
        .enumerate()
        .map(|(m, d)| Slot {
            delta: d,
            mark: marks.iter().position(|&x| x == m),
        })
        .collect();
    let parts = interval_decompose(t);
    lo.escape(ty, alpha, base.alpha, &slots, &last, &parts)
}

/// Candidate tuples of a term in search order: point count, then lexicographic.
///
/// Points in a dense atom are interchangeable, so only the first few ranks are used.
pub fn term_candidates(ty: &OrderType, max_points: usize, horizon: u64) -> Vec<Vec<Position>> {
    let grid = ty.grid(horizon, max_points as u64);
    let mut out = Vec::new();
    for k in 0..=max_points {
        combos(&grid, k, 0, &mut Vec::new(), &mut out);
    }
    out.retain(|t| {
        ty.atoms().iter().enumerate().all(|(i, a)| {
            *a != Atom::Eta
                || t.iter()
                    .filter(|p| p.atom == i)
                    .enumerate()
                    .all(|(r, p)| p.coord == Coord::Index(r as u64))
        })
    });
    out
}

fn combos(
    pool: &[Position],
    k: usize,
    from: usize,
    cur: &mut Vec<Position>,
    out: &mut Vec<Vec<Position>>,
) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in from..pool.len() {
        cur.push(pool[i].clone());
        combos(pool, k, i + 1, cur, out);
        cur.pop();
    }
}

fn show_points(ps: &[Position]) -> Vec<String> {
    ps.iter().map(Position::to_string).collect()
}

pub fn scott_rank_term(t: &OrderTerm, base: JumpSpec, caps: RankCaps) -> RankReport {
    scott_rank_term_with(
        t,
        base,
        caps,
        LoBfConfig {
            max_level: caps.max_level,
            ..LoBfConfig::default()
        },
    )
}

pub fn scott_rank_term_with(
    t: &OrderTerm,
    base: JumpSpec,
    caps: RankCaps,
    cfg: LoBfConfig,
) -> RankReport {
    let ty = t.order_type();
    let max_points = caps.max_points.unwrap_or(3);
    let level_cap = caps.max_level.saturating_sub(base.alpha);
    let candidates = term_candidates(&ty, max_points, caps.point_horizon);
    let mut flags = RankFlags {
        tuple_cap: max_points,
        level_cap,
        ..RankFlags::default()
    };
    let mut trace = Vec::new();
    let mut witness = None;
    let workers: Vec<Mutex<LoBf>> = (0..rayon::current_num_threads())
        .map(|_| Mutex::new(LoBf::new(cfg)))
        .collect();
    let batch = workers.len() * 4;
    for alpha in 1..=level_cap {
        let mut found = None;
        let mut examined = 0;
        for chunk in candidates.chunks(batch) {
            let results: Vec<Verdict> = chunk
                .par_iter()
                .map(|pts| {
                    let w = rayon::current_thread_index().unwrap_or(0) % workers.len();
                    let mut lo = workers[w].lock().expect("worker memo");
                    let pt =
                        PointedTerm::new(ty.clone(), pts.clone()).expect("grid points are valid");
                    is_free_term(&mut lo, &pt, alpha, base)
                })
                .collect();
            flags.horizon_limited |= results.iter().any(|v| v.horizon_limited);
            if let Some(i) = results.iter().position(|v| v.holds) {
                examined += i + 1;
                found = Some(examined - 1);
                break;
            }
            examined += chunk.len();
        }
        trace.push(RankStep {
            level: alpha,
            free_tuple: found.map(|i| show_points(&candidates[i])),
            tuples_examined: examined,
        });
        match found {
            Some(i) => {
                witness = Some(RankWitness {
                    tuple: show_points(&candidates[i]),
                    free_at: alpha,
                })
            }
            None => {
                flags.rank_floor_applied = alpha == 1;
                return RankReport {
                    subject: t.to_string(),
                    base: base.alpha,
                    rank: Some(alpha),
                    lower_bound: alpha,
                    witness,
                    flags,
                    trace,
                };
            }
        }
    }
    RankReport {
        subject: t.to_string(),
        base: base.alpha,
        rank: None,
        lower_bound: level_cap + 1,
        witness,
        flags,
        trace,
    }
}

pub fn scott_rank_structure(a: &FiniteStructure, base: JumpSpec, caps: RankCaps) -> RankReport {
    let max_len = caps.max_points.unwrap_or(a.universe());
    let level_cap = caps.max_level.saturating_sub(base.alpha);
    let opts = BfOptions {
        base: (base.alpha > 0).then_some(base.alpha),
        ..BfOptions::default()
    };
    let found = finite_rank_search(a, max_len, level_cap, opts);
    let show = |t: &[usize]| t.iter().map(usize::to_string).collect::<Vec<_>>();
    let witness = found.witness.as_ref().map(|t| RankWitness {
        tuple: show(t),
        free_at: found.rank.map_or(level_cap, |r| r - 1),
    });
    let rank = found.rank;
    RankReport {
        subject: format!("structure on {} elements", a.universe()),
        base: base.alpha,
        rank,
        lower_bound: rank.unwrap_or(level_cap + 1),
        witness,
        flags: RankFlags {
            rank_floor_applied: rank == Some(1),
            tuple_cap: max_len,
            level_cap,
            horizon_limited: false,
        },
        trace: Vec::new(),
    }
}

/// Re-checks a finite witness through the public freeness operation.
pub fn recheck_structure_witness(a: &FiniteStructure, base: JumpSpec, report: &RankReport) -> bool {
    let Some(w) = &report.witness else {
        return report.rank.is_none_or(|r| r <= 1);
    };
    let Ok(tuple) = w
        .tuple
        .iter()
        .map(|s| s.parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
    else {
        return false;
    };
    let opts = BfOptions {
        base: (base.alpha > 0).then_some(base.alpha),
        ..BfOptions::default()
    };
    is_alpha_free_finite_with(a, &tuple, w.free_at, report.flags.tuple_cap, opts)
}
