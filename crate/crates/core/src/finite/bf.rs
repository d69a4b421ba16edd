use std::collections::HashMap;

use super::structure::{
    all_tuples, atomic_buckets, new_atoms_agree, same_atomic_type, subsets, tuples_upto,
    FiniteStructure,
};

/// How the universal step ranges over extensions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Extension {
    /// One challenge per set of fresh elements of maximal size, witnesses pruned by atomic type.
    /// Tuples of different lengths are first reduced to equal lengths.
    #[default]
    Saturated,
    /// Every tuple of length at most the extension bound (plus the length gap of the two tuples);
    /// no pruning.
    Exhaustive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BfOptions {
    pub extension: Extension,
    /// Extension length bound per step; `None` means the universe size.
    pub ext_len: Option<usize>,
    /// When set, level 0 is `≤_α` instead of atomic-type transfer.
    pub base: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Side {
    A,
    B,
}

impl Side {
    fn flip(self) -> Self {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

/// Memoizing evaluator of `(A, ā) ≤_n (B, b̄)` and its mirror.
pub struct FiniteBf<'s> {
    a: &'s FiniteStructure,
    b: &'s FiniteStructure,
    opts: BfOptions,
    memo: HashMap<(u32, Side, Vec<usize>, Vec<usize>), bool>,
    plain: Option<Box<FiniteBf<'s>>>,
}

impl<'s> FiniteBf<'s> {
    pub fn new(a: &'s FiniteStructure, b: &'s FiniteStructure, opts: BfOptions) -> Self {
        assert!(a.same_vocabulary(b), "structures must share a vocabulary");
        let plain = opts
            .base
            .map(|_| Box::new(FiniteBf::new(a, b, BfOptions { base: None, ..opts })));
        Self {
            a,
            b,
            opts,
            memo: HashMap::new(),
            plain,
        }
    }

    fn structure(&self, side: Side) -> &'s FiniteStructure {
        match side {
            Side::A => self.a,
            Side::B => self.b,
        }
    }

    /// `(A, ā) ≤_n (B, b̄)`.
    pub fn leq(&mut self, abar: &[usize], bbar: &[usize], n: u32) -> bool {
        self.rel(n, Side::A, abar, bbar)
    }

    /// `(B, b̄) ≤_n (A, ā)`.
    pub fn geq(&mut self, abar: &[usize], bbar: &[usize], n: u32) -> bool {
        self.rel(n, Side::B, bbar, abar)
    }

    fn base(&mut self, side: Side, x: &[usize], y: &[usize]) -> bool {
        match (self.opts.base, self.plain.as_mut()) {
            (Some(alpha), Some(plain)) => plain.rel(alpha, side, x, y),
            _ => {
                let (sx, sy) = (self.structure(side), self.structure(side.flip()));
                y.len() >= x.len() && same_atomic_type(sx, x, sy, &y[..x.len()])
            }
        }
    }

    fn challenges(&self, side: Side, y: &[usize], overhang: usize) -> Vec<Vec<usize>> {
        let s = self.structure(side);
        let len = self.opts.ext_len.unwrap_or(s.universe());
        match self.opts.extension {
            Extension::Saturated => {
                let fresh: Vec<usize> = (0..s.universe()).filter(|e| !y.contains(e)).collect();
                subsets(&fresh, len.min(fresh.len()))
            }
            Extension::Exhaustive => tuples_upto(s.universe(), len + overhang),
        }
    }

    /// Left structure is `side`: `(X, x̄) ≤_n (Y, ȳ)`.
    fn rel(&mut self, n: u32, side: Side, x: &[usize], y: &[usize]) -> bool {
        let saturated = self.opts.extension == Extension::Saturated;
        if saturated && x.len() < y.len() {
            return self.rel(n, side, x, &y[..x.len()]);
        }
        if n == 0 {
            return self.base(side, x, y);
        }
        let key = (n, side, x.to_vec(), y.to_vec());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let result = if saturated && x.len() > y.len() {
            self.overhang(n, side, x, y)
        } else {
            let overhang = x.len().saturating_sub(y.len());
            self.challenges(side.flip(), y, overhang)
                .into_iter()
                .all(|d| {
                    let mut yd = y.to_vec();
                    yd.extend(&d);
                    let mut xc = x.to_vec();
                    self.answer(n - 1, side, &yd, &mut xc, saturated)
                })
        };
        self.memo.insert(key, result);
        result
    }

    /// `x̄` longer than `ȳ`: the challenger first fills the missing coordinates.
    fn overhang(&mut self, n: u32, side: Side, x: &[usize], y: &[usize]) -> bool {
        let sy = self.structure(side.flip());
        if sy.universe() == 0 {
            return self.rel(n - 1, side.flip(), &[], &[]);
        }
        all_tuples(sy.universe(), x.len() - y.len()).all(|e| {
            let ye: Vec<usize> = y.iter().chain(&e).copied().collect();
            self.rel(n, side, x, &ye)
        })
    }

    /// Extends `xc` to the length of `yd` so that `(Y, yd) ≤_n (X, xc)`.
    fn answer(
        &mut self,
        n: u32,
        side: Side,
        yd: &[usize],
        xc: &mut Vec<usize>,
        prune: bool,
    ) -> bool {
        if xc.len() >= yd.len() {
            return self.rel(n, side.flip(), yd, xc);
        }
        let (sx, sy) = (self.structure(side), self.structure(side.flip()));
        for e in 0..sx.universe() {
            xc.push(e);
            let m = xc.len() - 1;
            let ok = (!prune || new_atoms_agree(sy, &yd[..=m], sx, xc, m))
                && self.answer(n, side, yd, xc, prune);
            xc.pop();
            if ok {
                return true;
            }
        }
        false
    }
}

/// `(A, ā) ≤_n (B, b̄)` with default options.
pub fn bf_leq_finite(
    a: &FiniteStructure,
    abar: &[usize],
    b: &FiniteStructure,
    bbar: &[usize],
    n: u32,
) -> bool {
    FiniteBf::new(a, b, BfOptions::default()).leq(abar, bbar, n)
}

pub fn bf_leq_finite_with(
    a: &FiniteStructure,
    abar: &[usize],
    b: &FiniteStructure,
    bbar: &[usize],
    n: u32,
    opts: BfOptions,
) -> bool {
    FiniteBf::new(a, b, opts).leq(abar, bbar, n)
}

/// Classes of `≡_n` on nonempty tuples of length at most `max_len`, ordered by least member.
pub fn bf_partition(a: &FiniteStructure, n: u32, max_len: usize) -> Vec<Vec<Vec<usize>>> {
    bf_partition_with(a, n, max_len, BfOptions::default())
}

pub fn bf_partition_with(
    a: &FiniteStructure,
    n: u32,
    max_len: usize,
    opts: BfOptions,
) -> Vec<Vec<Vec<usize>>> {
    let mut bf = FiniteBf::new(a, a, opts);
    let tuples: Vec<Vec<usize>> = tuples_upto(a.universe(), max_len)
        .into_iter()
        .filter(|t| !t.is_empty())
        .collect();
    // `≡_n` refines `≡_0`, so classes are split out of atomic-type buckets.
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
    for bucket in atomic_buckets(a, &tuples) {
        let mut local: Vec<Vec<Vec<usize>>> = Vec::new();
        for t in bucket.into_iter().map(|i| &tuples[i]) {
            match local
                .iter_mut()
                .find(|c| bf.leq(&c[0], t, n) && bf.leq(t, &c[0], n))
            {
                Some(c) => c.push(t.to_vec()),
                None => local.push(vec![t.to_vec()]),
            }
        }
        classes.extend(local);
    }
    classes.sort_by(|x, y| x[0].len().cmp(&y[0].len()).then_with(|| x[0].cmp(&y[0])));
    classes
}
