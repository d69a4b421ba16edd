use super::bf::{BfOptions, Extension, FiniteBf};
use super::structure::{all_tuples, new_atoms_agree, subsets, tuples_upto, FiniteStructure};

/// `ā` is α-free: `∀β<α ∀b̄ ∃ā′b̄′ (āb̄ ≤_β ā′b̄′ ∧ ā ≰_α ā′)`, with `|b̄| ≤ max_len`.
pub fn is_alpha_free_finite(
    a: &FiniteStructure,
    abar: &[usize],
    alpha: u32,
    max_len: usize,
) -> bool {
    is_alpha_free_finite_with(a, abar, alpha, max_len, BfOptions::default())
}

pub fn is_alpha_free_finite_with(
    a: &FiniteStructure,
    abar: &[usize],
    alpha: u32,
    max_len: usize,
    opts: BfOptions,
) -> bool {
    let mut bf = FiniteBf::new(a, a, opts);
    free(&mut bf, a, abar, alpha, max_len, opts.extension)
}

fn free(
    bf: &mut FiniteBf<'_>,
    a: &FiniteStructure,
    abar: &[usize],
    alpha: u32,
    max_len: usize,
    ext: Extension,
) -> bool {
    if alpha == 0 {
        return false;
    }
    let movable: Vec<Vec<usize>> = all_tuples(a.universe(), abar.len())
        .filter(|ap| !bf.leq(abar, ap, alpha))
        .collect();
    if movable.is_empty() {
        return false;
    }
    let family = match ext {
        Extension::Exhaustive => tuples_upto(a.universe(), max_len),
        Extension::Saturated => {
            let fresh: Vec<usize> = (0..a.universe()).filter(|e| !abar.contains(e)).collect();
            subsets(&fresh, max_len.min(fresh.len()))
        }
    };
    let prune = ext == Extension::Saturated;
    (0..alpha).rev().all(|beta| {
        family.iter().all(|bbar| {
            let ab: Vec<usize> = abar.iter().chain(bbar).copied().collect();
            movable.iter().any(|ap| {
                if prune && !(0..ap.len()).all(|m| new_atoms_agree(a, &ab[..=m], a, ap, m)) {
                    return false;
                }
                let mut apbp = ap.clone();
                extend(bf, a, &ab, &mut apbp, beta, prune)
            })
        })
    })
}

fn extend(
    bf: &mut FiniteBf<'_>,
    a: &FiniteStructure,
    ab: &[usize],
    cur: &mut Vec<usize>,
    beta: u32,
    prune: bool,
) -> bool {
    if cur.len() == ab.len() {
        return bf.leq(ab, cur, beta);
    }
    for e in 0..a.universe() {
        cur.push(e);
        let m = cur.len() - 1;
        let ok = (!prune || new_atoms_agree(a, &ab[..=m], a, cur, m))
            && extend(bf, a, ab, cur, beta, prune);
        cur.pop();
        if ok {
            return true;
        }
    }
    false
}

/// Outcome of the least-non-free-level search on a finite structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRank {
    /// `None` when every level up to the cap still has a free tuple.
    pub rank: Option<u32>,
    /// A tuple that is `(rank-1)`-free, when `rank > 1`.
    pub witness: Option<Vec<usize>>,
    pub level_cap: u32,
    pub tuples_examined: usize,
}

/// Candidate tuples in search order: increasing length, then lexicographic.
pub fn rank_candidates(a: &FiniteStructure, max_len: usize, ext: Extension) -> Vec<Vec<usize>> {
    let max_len = max_len.min(a.universe().max(1));
    match ext {
        Extension::Exhaustive => tuples_upto(a.universe(), max_len),
        Extension::Saturated => {
            let all: Vec<usize> = (0..a.universe()).collect();
            (0..=max_len.min(a.universe()))
                .flat_map(|k| subsets(&all, k))
                .collect()
        }
    }
}

pub fn finite_rank_search(
    a: &FiniteStructure,
    max_len: usize,
    level_cap: u32,
    opts: BfOptions,
) -> FiniteRank {
    let mut bf = FiniteBf::new(a, a, opts);
    let candidates = rank_candidates(a, max_len, opts.extension);
    let mut witness = None;
    let mut examined = 0;
    for alpha in 1..=level_cap {
        let found = candidates.iter().find(|t| {
            examined += 1;
            free(&mut bf, a, t, alpha, max_len, opts.extension)
        });
        match found {
            Some(t) => witness = Some(t.clone()),
            None => {
                return FiniteRank {
                    rank: Some(alpha),
                    witness,
                    level_cap,
                    tuples_examined: examined,
                };
            }
        }
    }
    FiniteRank {
        rank: None,
        witness,
        level_cap,
        tuples_examined: examined,
    }
}

/// Least `α ≥ 1` with no α-free tuple of length at most `max_len`; `None` past the level cap.
pub fn scott_rank_finite(a: &FiniteStructure, max_len: usize) -> Option<u32> {
    finite_rank_search(a, max_len, default_level_cap(a), BfOptions::default()).rank
}

pub fn default_level_cap(a: &FiniteStructure) -> u32 {
    a.universe() as u32 + 2
}
