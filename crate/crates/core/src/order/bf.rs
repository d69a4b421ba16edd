use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use serde::Serialize;

use super::ordinal::{ordinal_leq, Card, Ordinal};
use super::types::{
    coefficient_vectors, interval_decompose, Atom, OrderType, PointedTerm, Position,
};
use super::LoBfError;

/// Base level of the recursion: `alpha = 0` is the plain relation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct JumpSpec {
    pub alpha: u32,
}

impl JumpSpec {
    pub fn new(alpha: u32) -> Self {
        Self { alpha }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Some quantifier step was searched only up to a horizon.
    pub horizon_limited: bool,
}

impl Verdict {
    pub fn exact(holds: bool) -> Self {
        Self {
            holds,
            horizon_limited: false,
        }
    }

    fn and(self, other: Self) -> Self {
        Self {
            holds: self.holds && other.holds,
            horizon_limited: self.horizon_limited || other.horizon_limited,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LoBfConfig {
    /// Largest `n + base.alpha` accepted.
    pub max_level: u32,
    /// Cantor coefficients of universal challenge points range over `0..=grid`.
    pub grid: u64,
    /// Existential pieces inside well-orders have coefficients in `0..=candidates`.
    pub candidates: u64,
    /// Coefficient horizon for existential points in orders containing `η`.
    pub explicit_horizon: u64,
    /// Use the closed forms for well-orders and `η` when they apply.
    pub closed_form: bool,
}

impl Default for LoBfConfig {
    fn default() -> Self {
        Self {
            max_level: 8,
            grid: 2,
            candidates: 2,
            explicit_horizon: 6,
            closed_form: true,
        }
    }
}

/// Exact decision for well-orders, `η`, and level 1; `None` elsewhere.
pub fn closed_form(level: u32, a: &OrderType, b: &OrderType) -> Option<bool> {
    match level {
        0 => return Some(true),
        1 => return Some(b.card() <= a.card()),
        _ => {}
    }
    if let (Some(x), Some(y)) = (a.to_ordinal(), b.to_ordinal()) {
        return Some(ordinal_leq(level, &x, &y));
    }
    match (a.is_eta(), b.is_eta()) {
        (true, true) => Some(true),
        (true, false) => b.to_ordinal().map(|_| false),
        (false, true) => a
            .to_ordinal()
            .map(|_| level == 2 && a.card() == Card::Infinite),
        (false, false) => None,
    }
}

/// Candidate positions for the existential side of one step.
trait Line {
    type Pos: Clone + Eq + Hash;
    /// Points after `from` paired with the open interval from `from` to them.
    fn next(&self, from: Option<&Self::Pos>, hint: &OrderType) -> Vec<(Self::Pos, OrderType)>;
    fn rest(&self, from: Option<&Self::Pos>) -> OrderType;
    fn complete(&self) -> bool;
}

/// A well-order whose points are reached by adding candidate pieces.
///
/// A point is identified with the ordinal remaining after it, which fixes everything to its right.
struct OrdinalLine {
    total: Ordinal,
    cands: Vec<Ordinal>,
}

impl OrdinalLine {
    fn new(total: Ordinal, coef: u64) -> Self {
        let k = total.degree().unwrap_or(0) as usize + 1;
        let cands = coefficient_vectors(k, coef)
            .iter()
            .map(|c| Ordinal::from_coeffs(c))
            .collect();
        Self { total, cands }
    }
}

impl Line for OrdinalLine {
    type Pos = Ordinal;

    fn next(&self, from: Option<&Ordinal>, hint: &OrderType) -> Vec<(Ordinal, OrderType)> {
        let r = from.unwrap_or(&self.total);
        let mut qs: Vec<Ordinal> = self.cands.clone();
        if let Some(h) = hint.to_ordinal() {
            if !qs.contains(&h) {
                qs.push(h);
            }
        }
        qs.into_iter()
            .filter(|q| q < r)
            .map(|q| {
                let left = q.succ().left_sub(r).expect("q < r");
                (left, OrderType::from_ordinal(&q))
            })
            .collect()
    }

    fn rest(&self, from: Option<&Ordinal>) -> OrderType {
        OrderType::from_ordinal(from.unwrap_or(&self.total))
    }

    fn complete(&self) -> bool {
        false
    }
}

/// Explicitly listed points of an arbitrary order type.
struct ExplicitLine {
    ty: OrderType,
    pos: Vec<Position>,
    complete: bool,
}

impl ExplicitLine {
    fn new(ty: &OrderType, horizon: u64, dense_points: u64) -> Self {
        let complete = ty.atoms().iter().all(|a| matches!(a, Atom::Fin(_)));
        Self {
            ty: ty.clone(),
            pos: ty.grid(horizon, dense_points),
            complete,
        }
    }
}

impl Line for ExplicitLine {
    type Pos = usize;

    fn next(&self, from: Option<&usize>, _hint: &OrderType) -> Vec<(usize, OrderType)> {
        let lo = from.map_or(0, |&i| i + 1);
        (lo..self.pos.len())
            .map(|j| {
                (
                    j,
                    self.ty
                        .piece(from.map(|&i| &self.pos[i]), Some(&self.pos[j])),
                )
            })
            .collect()
    }

    fn rest(&self, from: Option<&usize>) -> OrderType {
        self.ty.piece(from.map(|&i| &self.pos[i]), None)
    }

    fn complete(&self) -> bool {
        self.complete
    }
}

/// Depth-first placement for [`LoBf::escape`]; a state is the slot index, the position,
/// and the interval since the last marked point (`None` once some interval escaped).
struct Escape<'s, 'd, L: Line> {
    line: &'s L,
    beta: u32,
    base: u32,
    slots: &'s [Slot<'d>],
    last: &'s OrderType,
    parts: &'s [OrderType],
    dead: HashSet<(usize, Option<L::Pos>, Option<OrderType>)>,
    limited: bool,
    /// Saturation bound for the coefficients of the accumulated interval.
    saturate: Option<u64>,
}

impl<L: Line> Escape<'_, '_, L> {
    fn run(
        &mut self,
        lo: &mut LoBf,
        i: usize,
        cur: Option<L::Pos>,
        acc: Option<OrderType>,
    ) -> bool {
        if i == self.slots.len() {
            return self.finish(lo, cur.as_ref(), acc.as_ref());
        }
        let key = (i, cur, acc);
        if self.dead.contains(&key) {
            return false;
        }
        let (i, cur, acc) = key;
        let slot = &self.slots[i];
        for (p, gamma) in self.line.next(cur.as_ref(), slot.delta) {
            let v = lo.interval(self.beta - 1, self.base, slot.delta, &gamma);
            self.limited |= v.horizon_limited;
            if !v.holds {
                continue;
            }
            let next = match (&acc, slot.mark) {
                (None, _) => None,
                (Some(acc), Some(j)) => {
                    let w = lo.interval(self.beta, self.base, &self.parts[j], &acc.concat(&gamma));
                    self.limited |= w.horizon_limited;
                    w.holds.then(OrderType::empty)
                }
                (Some(acc), None) => Some(self.clip(acc.concat(&gamma).concat(&OrderType::fin(1)))),
            };
            if self.run(lo, i + 1, Some(p), next) {
                return true;
            }
        }
        self.dead.insert((i, cur, acc));
        false
    }

    fn clip(&self, t: OrderType) -> OrderType {
        match (self.saturate, t.to_ordinal()) {
            (Some(m), Some(o)) => OrderType::from_ordinal(&o.saturate(m)),
            _ => t,
        }
    }

    fn finish(&mut self, lo: &mut LoBf, cur: Option<&L::Pos>, acc: Option<&OrderType>) -> bool {
        let rest = self.line.rest(cur);
        let v = lo.interval(self.beta - 1, self.base, self.last, &rest);
        self.limited |= v.horizon_limited;
        if !v.holds {
            return false;
        }
        match acc {
            None => true,
            Some(acc) => {
                let w = lo.interval(
                    self.beta,
                    self.base,
                    &self.parts[self.parts.len() - 1],
                    &acc.concat(&rest),
                );
                self.limited |= w.horizon_limited;
                !w.holds
            }
        }
    }
}

/// Memoizing decision procedure for interval and pointed relations.
pub struct LoBf {
    cfg: LoBfConfig,
    memo: HashMap<(u32, u32, OrderType, OrderType), Verdict>,
}

impl Default for LoBf {
    fn default() -> Self {
        Self::new(LoBfConfig::default())
    }
}

/// One requirement on the existential side: the next interval must be `lower`-related to `delta`.
pub(crate) struct Slot<'a> {
    pub delta: &'a OrderType,
    /// Index into the free tuple when this slot's point belongs to it.
    pub mark: Option<usize>,
}

impl LoBf {
    pub fn new(cfg: LoBfConfig) -> Self {
        Self {
            cfg,
            memo: HashMap::new(),
        }
    }

    pub fn config(&self) -> &LoBfConfig {
        &self.cfg
    }

    /// `a ≤_level b` for unpointed orders, with the recursion based at `base`.
    pub fn interval(&mut self, level: u32, base: u32, a: &OrderType, b: &OrderType) -> Verdict {
        if base == 0 {
            if level <= 1 || self.cfg.closed_form {
                if let Some(v) = closed_form(level, a, b) {
                    return Verdict::exact(v);
                }
            }
        } else if level == 0 {
            return self.interval(base, 0, a, b);
        }
        let key = (level, base, a.clone(), b.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.game(level, base, a, b);
        self.memo.insert(key, v);
        v
    }

    /// One round of the game: every grid challenge in `b` answered in `a` at level `level - 1`.
    pub fn game(&mut self, level: u32, base: u32, a: &OrderType, b: &OrderType) -> Verdict {
        assert!(level >= 1);
        let h = self.cfg.grid.max(a.max_coef() + 1);
        let challenge = b.grid(h, h + 1);
        let mut deltas = Vec::with_capacity(challenge.len() + 1);
        let mut prev: Option<&Position> = None;
        for p in &challenge {
            deltas.push(b.piece(prev, Some(p)));
            prev = Some(p);
        }
        deltas.push(b.piece(prev, None));
        let b_complete = b.atoms().iter().all(|x| matches!(x, Atom::Fin(_)));
        let slots: Vec<Slot> = deltas[..deltas.len() - 1]
            .iter()
            .map(|d| Slot {
                delta: d,
                mark: None,
            })
            .collect();
        let last = &deltas[deltas.len() - 1];
        let (holds, limited) = match a.to_ordinal() {
            Some(o) if o.degree().unwrap_or(0) > 0 => {
                let line = OrdinalLine::new(o, self.cfg.candidates);
                self.answer(&line, level - 1, base, &slots, last)
            }
            _ => {
                let line = ExplicitLine::new(a, self.cfg.explicit_horizon, challenge.len() as u64);
                self.answer(&line, level - 1, base, &slots, last)
            }
        };
        Verdict {
            holds,
            horizon_limited: limited || !b_complete,
        }
    }

    /// Whether points can be placed in the line so that every interval satisfies the lower relation.
    fn answer<L: Line>(
        &mut self,
        line: &L,
        level: u32,
        base: u32,
        slots: &[Slot],
        last: &OrderType,
    ) -> (bool, bool) {
        let mut limited = !line.complete();
        let mut reach: HashSet<Option<L::Pos>> = HashSet::from([None]);
        for slot in slots {
            let mut next = HashSet::new();
            for from in &reach {
                for (p, gamma) in line.next(from.as_ref(), slot.delta) {
                    let v = self.interval(level, base, slot.delta, &gamma);
                    limited |= v.horizon_limited;
                    if v.holds {
                        next.insert(Some(p));
                    }
                }
            }
            if next.is_empty() {
                return (false, limited);
            }
            reach = next;
        }
        for from in &reach {
            let v = self.interval(level, base, last, &line.rest(from.as_ref()));
            limited |= v.horizon_limited;
            if v.holds {
                return (true, limited);
            }
        }
        (false, limited)
    }

    /// Freeness search: places points for `slots` and the final interval under the level `beta - 1`
    /// relation, and succeeds when some interval of the marked points escapes `≤_beta` against `parts`.
    pub(crate) fn escape(
        &mut self,
        ty: &OrderType,
        beta: u32,
        base: u32,
        slots: &[Slot],
        last: &OrderType,
        parts: &[OrderType],
    ) -> Verdict {
        if slots.iter().all(|s| s.mark.is_none()) {
            return Verdict::exact(false);
        }
        match ty.to_ordinal() {
            Some(o) if o.degree().unwrap_or(0) > 0 => {
                let line = OrdinalLine::new(o, self.cfg.candidates);
                self.escape_on(&line, beta, base, slots, last, parts)
            }
            _ => {
                let dense = slots.len() as u64 + 1;
                let line =
                    ExplicitLine::new(ty, self.cfg.explicit_horizon.max(self.cfg.grid + 1), dense);
                self.escape_on(&line, beta, base, slots, last, parts)
            }
        }
    }

    fn escape_on<L: Line>(
        &mut self,
        line: &L,
        beta: u32,
        base: u32,
        slots: &[Slot],
        last: &OrderType,
        parts: &[OrderType],
    ) -> Verdict {
        let saturate = (base == 0 && self.cfg.closed_form)
            .then(|| {
                parts
                    .iter()
                    .map(|p| p.to_ordinal().map(|o| o.max_coef()))
                    .collect::<Option<Vec<u64>>>()
            })
            .flatten()
            .map(|cs| cs.into_iter().max().unwrap_or(0) + 1);
        let mut search = Escape {
            line,
            beta,
            base,
            slots,
            last,
            parts,
            dead: HashSet::new(),
            limited: !line.complete(),
            saturate,
        };
        let holds = search.run(self, 0, None, Some(OrderType::empty()));
        Verdict {
            holds,
            horizon_limited: search.limited,
        }
    }

    /// `(L, ā) ≤_n (M, b̄)` with the recursion based at `base.alpha`.
    pub fn pointed(
        &mut self,
        l: &PointedTerm,
        m: &PointedTerm,
        n: u32,
        base: JumpSpec,
    ) -> Result<Verdict, LoBfError> {
        if n + base.alpha > self.cfg.max_level {
            return Err(LoBfError::LevelOverflow {
                level: n + base.alpha,
                max: self.cfg.max_level,
            });
        }
        let (ka, kb) = (l.points().len(), m.points().len());
        if ka < kb {
            return self.pointed(l, &m.prefix(ka), n, base);
        }
        if ka > kb {
            return match (n, base.alpha) {
                (0, 0) => Ok(Verdict::exact(false)),
                (0, alpha) => self.pointed(l, m, alpha, JumpSpec::new(0)),
                _ => self.overhang(l, m, n, base),
            };
        }
        if n == 0 && base.alpha == 0 {
            return Ok(Verdict::exact(true));
        }
        let mut v = Verdict::exact(true);
        for (x, y) in interval_decompose(l).iter().zip(&interval_decompose(m)) {
            v = v.and(self.interval(n, base.alpha, x, y));
            if !v.holds {
                break;
            }
        }
        Ok(v)
    }

    /// `L` carries more points than `M`: every completion of `b̄` in `M` must be answered.
    /// Unless `M` is empty or the only missing point is the sole point, some completion
    /// repeats a point and breaks the order pattern.
    fn overhang(
        &mut self,
        l: &PointedTerm,
        m: &PointedTerm,
        n: u32,
        base: JumpSpec,
    ) -> Result<Verdict, LoBfError> {
        let ty = m.order_type();
        if ty.is_empty() {
            return self.pointed(&PointedTerm::bare(ty.clone()), &l.prefix(0), n - 1, base);
        }
        if !m.points().is_empty() || l.points().len() > 1 {
            return Ok(Verdict::exact(false));
        }
        let h = self.cfg.grid.max(l.order_type().max_coef() + 1);
        let mut v = Verdict {
            holds: true,
            horizon_limited: ty.card() == Card::Infinite,
        };
        for x in ty.grid(h, h + 1) {
            let mx = PointedTerm::new(ty.clone(), vec![x]).expect("grid points fit");
            v = v.and(self.pointed(l, &mx, n, base)?);
            if !v.holds {
                break;
            }
        }
        Ok(v)
    }
}

pub fn lo_bf_leq(
    l: &PointedTerm,
    m: &PointedTerm,
    n: u32,
    base: JumpSpec,
) -> Result<Verdict, LoBfError> {
    LoBf::default().pointed(l, m, n, base)
}

/// Decision table for `Fin(p) ≤_n Fin(q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdTable {
    Always,
    /// `q ≤ p`.
    RightAtMostLeft,
    /// `p = q`.
    Equal,
}

impl ThresholdTable {
    pub fn decide(&self, p: u64, q: u64) -> bool {
        match self {
            ThresholdTable::Always => true,
            ThresholdTable::RightAtMostLeft => q <= p,
            ThresholdTable::Equal => p == q,
        }
    }
}

pub fn finite_threshold_table(n: u32) -> ThresholdTable {
    match n {
        0 => ThresholdTable::Always,
        1 => ThresholdTable::RightAtMostLeft,
        _ => ThresholdTable::Equal,
    }
}
