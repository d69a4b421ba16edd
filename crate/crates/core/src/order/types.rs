use std::fmt;

use serde::Serialize;

use super::ordinal::{Card, Ordinal};
use super::term::OrderTerm;
use super::PointError;

/// Summand of a normalized order type. `Pow(0)` never occurs; a single point is `Fin(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Atom {
    Fin(u64),
    Pow(u32),
    Eta,
}

/// Normalized sum of atoms.
///
/// Folding: empty finite summands vanish, adjacent finite summands merge,
/// `x + ω^k` absorbs `x` when `x` is finite or a lower power, and `η + η = η`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderType(Vec<Atom>);

impl OrderType {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn from_atoms<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        let mut out: Vec<Atom> = Vec::new();
        for atom in atoms {
            push_atom(&mut out, atom);
        }
        Self(out)
    }

    pub fn fin(n: u64) -> Self {
        Self::from_atoms([Atom::Fin(n)])
    }

    pub fn eta() -> Self {
        Self(vec![Atom::Eta])
    }

    pub fn from_ordinal(o: &Ordinal) -> Self {
        Self::from_atoms(o.terms().iter().flat_map(|&(e, c)| {
            let n = if e == 0 { 1 } else { c };
            let atom = if e == 0 { Atom::Fin(c) } else { Atom::Pow(e) };
            std::iter::repeat_n(atom, n as usize)
        }))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_eta(&self) -> bool {
        self.0 == [Atom::Eta]
    }

    pub fn has_eta(&self) -> bool {
        self.0.contains(&Atom::Eta)
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::from_atoms(self.0.iter().chain(&other.0).copied())
    }

    pub fn card(&self) -> Card {
        match self.0.as_slice() {
            [] => Card::Finite(0),
            [Atom::Fin(n)] => Card::Finite(*n),
            _ => Card::Infinite,
        }
    }

    /// The ordinal denoted, when the type is a well-order.
    pub fn to_ordinal(&self) -> Option<Ordinal> {
        let mut acc = Ordinal::zero();
        for atom in &self.0 {
            let o = match *atom {
                Atom::Fin(n) => Ordinal::nat(n),
                Atom::Pow(k) => Ordinal::omega_pow(k, 1),
                Atom::Eta => return None,
            };
            acc = acc.add(&o);
        }
        Some(acc)
    }

    pub fn to_term(&self) -> OrderTerm {
        let mut it = self.0.iter().rev().map(|a| match *a {
            Atom::Fin(n) => OrderTerm::Fin(n),
            Atom::Pow(1) => OrderTerm::Omega,
            Atom::Pow(k) => OrderTerm::OmegaPow(k),
            Atom::Eta => OrderTerm::Eta,
        });
        let Some(last) = it.next() else {
            return OrderTerm::Fin(0);
        };
        it.fold(last, |acc, t| OrderTerm::sum(t, acc))
    }

    /// Largest Cantor coefficient over the well-ordered stretches between dense atoms.
    pub fn max_coef(&self) -> u64 {
        self.0
            .split(|a| *a == Atom::Eta)
            .filter_map(|run| OrderType::from_atoms(run.iter().copied()).to_ordinal())
            .map(|o| o.max_coef())
            .max()
            .unwrap_or(0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.0
            .iter()
            .map(|a| match a {
                Atom::Pow(k) => *k,
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

fn push_atom(out: &mut Vec<Atom>, atom: Atom) {
    match atom {
        Atom::Fin(0) => {}
        Atom::Fin(n) => match out.last_mut() {
            Some(Atom::Fin(m)) => *m += n,
            _ => out.push(atom),
        },
        Atom::Pow(0) => push_atom(out, Atom::Fin(1)),
        Atom::Pow(k) => {
            while matches!(out.last(), Some(Atom::Fin(_)))
                || matches!(out.last(), Some(Atom::Pow(j)) if *j < k)
            {
                out.pop();
            }
            out.push(atom);
        }
        Atom::Eta => {
            if out.last() != Some(&Atom::Eta) {
                out.push(atom);
            }
        }
    }
}

impl fmt::Display for OrderType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|a| match a {
                Atom::Fin(n) => n.to_string(),
                Atom::Pow(1) => "w".to_string(),
                Atom::Pow(k) => format!("w^{k}"),
                Atom::Eta => "eta".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Location inside one atom.
///
/// `Fin(n)`: index `< n`; `Pow(k)`: Cantor coefficients of the offset, highest first, length `k`;
/// `Eta`: rank among the selected points of that atom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Coord {
    Index(u64),
    Ord(Vec<u64>),
}

/// A point of a term-denoted order: atom index plus coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Position {
    pub atom: usize,
    pub coord: Coord,
}

impl Position {
    pub fn index(atom: usize, i: u64) -> Self {
        Self {
            atom,
            coord: Coord::Index(i),
        }
    }

    pub fn ord(atom: usize, coeffs: Vec<u64>) -> Self {
        Self {
            atom,
            coord: Coord::Ord(coeffs),
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coord {
            Coord::Index(i) => write!(f, "{}:{}", self.atom, i),
            Coord::Ord(c) => {
                let cs: Vec<String> = c.iter().map(u64::to_string).collect();
                write!(f, "{}:{}", self.atom, cs.join(","))
            }
        }
    }
}

impl OrderType {
    /// Reads `atom:i` (finite and dense atoms) or `atom:c1,..,ck` (an `ω^k` atom), the form printed by
    /// [`Position`]'s `Display`.
    pub fn parse_point(&self, text: &str) -> Result<Position, PointError> {
        let bad = || PointError::BadCoordinate(text.to_string());
        let (atom, coord) = text.trim().split_once(':').ok_or_else(bad)?;
        let atom: usize = atom.trim().parse().map_err(|_| bad())?;
        let nums = coord
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let p = match self.0.get(atom) {
            None => return Err(PointError::NoSuchAtom(atom)),
            Some(Atom::Pow(_)) => Position::ord(atom, nums),
            Some(_) if nums.len() == 1 => Position::index(atom, nums[0]),
            Some(_) => return Err(bad()),
        };
        self.check_position(&p)?;
        Ok(p)
    }

    pub fn check_position(&self, p: &Position) -> Result<(), PointError> {
        let atom = self.0.get(p.atom).ok_or(PointError::NoSuchAtom(p.atom))?;
        let ok = match (atom, &p.coord) {
            (Atom::Fin(n), Coord::Index(i)) => i < n,
            (Atom::Eta, Coord::Index(_)) => true,
            (Atom::Pow(k), Coord::Ord(c)) => c.len() == *k as usize,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(PointError::BadCoordinate(p.to_string()))
        }
    }

    fn head(&self, p: &Position) -> Vec<Atom> {
        match (&self.0[p.atom], &p.coord) {
            (Atom::Fin(_), Coord::Index(i)) => vec![Atom::Fin(*i)],
            (Atom::Pow(_), Coord::Ord(c)) => OrderType::from_ordinal(&Ordinal::from_coeffs(c)).0,
            _ => vec![Atom::Eta],
        }
    }

    fn tail(&self, p: &Position) -> Vec<Atom> {
        match (&self.0[p.atom], &p.coord) {
            (Atom::Fin(n), Coord::Index(i)) => vec![Atom::Fin(n - i - 1)],
            (atom, _) => vec![*atom],
        }
    }

    /// Open interval between two points (or an end) as a normalized type.
    pub fn piece(&self, from: Option<&Position>, to: Option<&Position>) -> OrderType {
        let mut atoms: Vec<Atom> = Vec::new();
        match (from, to) {
            (Some(x), Some(y)) if x.atom == y.atom => match (&self.0[x.atom], &x.coord, &y.coord) {
                (Atom::Fin(_), Coord::Index(i), Coord::Index(j)) => {
                    atoms.push(Atom::Fin(j - i - 1))
                }
                (Atom::Pow(_), Coord::Ord(c), Coord::Ord(d)) => {
                    let u = Ordinal::from_coeffs(c).succ();
                    let z = u
                        .left_sub(&Ordinal::from_coeffs(d))
                        .expect("ascending points");
                    return OrderType::from_ordinal(&z);
                }
                _ => atoms.push(Atom::Eta),
            },
            _ => {
                let lo = match from {
                    Some(x) => {
                        atoms.extend(self.tail(x));
                        x.atom + 1
                    }
                    None => 0,
                };
                let hi = to.map_or(self.0.len(), |y| y.atom);
                atoms.extend(self.0[lo..hi].iter().copied());
                if let Some(y) = to {
                    atoms.extend(self.head(y));
                }
            }
        }
        OrderType::from_atoms(atoms)
    }

    /// Points in lexicographic order whose coefficients are at most `h`;
    /// every point of a finite atom; `eta_points` points per dense atom.
    pub fn grid(&self, h: u64, eta_points: u64) -> Vec<Position> {
        let mut out = Vec::new();
        for (i, atom) in self.0.iter().enumerate() {
            match *atom {
                Atom::Fin(n) => out.extend((0..n).map(|j| Position::index(i, j))),
                Atom::Eta => out.extend((0..eta_points).map(|j| Position::index(i, j))),
                Atom::Pow(k) => {
                    for c in coefficient_vectors(k as usize, h) {
                        out.push(Position::ord(i, c));
                    }
                }
            }
        }
        out
    }
}

/// All vectors of length `k` with entries in `0..=h`, lexicographic.
pub fn coefficient_vectors(k: usize, h: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=h).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Shape of the single-point cuts of one atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CutKind {
    /// The `i`-th point of a finite atom.
    Point(u64),
    /// Any point of `ω^k`, parameterized by `k` Cantor coefficients.
    Ordinal(u32),
    /// Any point of `η`.
    Dense,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutSchema {
    pub atom: usize,
    pub kind: CutKind,
}

impl CutSchema {
    pub fn arity(&self) -> usize {
        match self.kind {
            CutKind::Ordinal(k) => k as usize,
            _ => 0,
        }
    }

    pub fn position(&self, params: &[u64]) -> Position {
        match self.kind {
            CutKind::Point(i) => Position::index(self.atom, i),
            CutKind::Ordinal(_) => Position::ord(self.atom, params.to_vec()),
            CutKind::Dense => Position::index(self.atom, 0),
        }
    }

    /// Left and right parts of the cut at `params`.
    pub fn parts(&self, ty: &OrderType, params: &[u64]) -> (OrderType, OrderType) {
        let p = self.position(params);
        (ty.piece(None, Some(&p)), ty.piece(Some(&p), None))
    }
}

/// One schema per point of each finite atom, one per `ω^k` atom, one per `η` atom.
pub fn cut_schemas(ty: &OrderType) -> Vec<CutSchema> {
    let mut out = Vec::new();
    for (atom, a) in ty.atoms().iter().enumerate() {
        match *a {
            Atom::Fin(n) => out.extend((0..n).map(|i| CutSchema {
                atom,
                kind: CutKind::Point(i),
            })),
            Atom::Pow(k) => out.push(CutSchema {
                atom,
                kind: CutKind::Ordinal(k),
            }),
            Atom::Eta => out.push(CutSchema {
                atom,
                kind: CutKind::Dense,
            }),
        }
    }
    out
}

/// An order type with finitely many selected points in strictly ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointedTerm {
    ty: OrderType,
    points: Vec<Position>,
}

impl PointedTerm {
    pub fn new(ty: OrderType, points: Vec<Position>) -> Result<Self, PointError> {
        for p in &points {
            ty.check_position(p)?;
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PointError::NotAscending);
        }
        Ok(Self { ty, points })
    }

    pub fn bare(ty: OrderType) -> Self {
        Self {
            ty,
            points: Vec::new(),
        }
    }

    /// The first `k` points.
    pub fn prefix(&self, k: usize) -> Self {
        Self {
            ty: self.ty.clone(),
            points: self.points[..k.min(self.points.len())].to_vec(),
        }
    }

    /// Points given as cuts; repeated dense cuts in one atom become successive points.
    pub fn from_cuts(ty: OrderType, cuts: &[(CutSchema, Vec<u64>)]) -> Result<Self, PointError> {
        let mut points: Vec<Position> = Vec::new();
        for (schema, params) in cuts {
            if params.len() != schema.arity() {
                return Err(PointError::BadCoordinate(format!("{params:?}")));
            }
            let mut p = schema.position(params);
            if schema.kind == CutKind::Dense {
                let used = points.iter().filter(|q| q.atom == schema.atom).count() as u64;
                p = Position::index(schema.atom, used);
            }
            points.push(p);
        }
        Self::new(ty, points)
    }

    pub fn order_type(&self) -> &OrderType {
        &self.ty
    }

    pub fn points(&self) -> &[Position] {
        &self.points
    }
}

/// The `k+1` open intervals cut out by `k` ascending points.
pub fn interval_decompose(p: &PointedTerm) -> Vec<OrderType> {
    let mut out = Vec::with_capacity(p.points.len() + 1);
    let mut prev: Option<&Position> = None;
    for q in &p.points {
        out.push(p.ty.piece(prev, Some(q)));
        prev = Some(q);
    }
    out.push(p.ty.piece(prev, None));
    out
}
