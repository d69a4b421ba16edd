use std::collections::BTreeMap;

use clap::ValueEnum;
use scottbf::arith::{
    decode_seq_u64, decode_set, encode_seq_u64, encode_set, eval_delta0, pair_u64, parse_formula,
    truth, unpair, Formula, Natural,
};
use scottbf::bounded::{
    check_bf_properties, first_open_formula_code, probe_standard_witness, ProbeBounds, ProbeVerdict,
};
use scottbf::finite::{
    bf_partition, is_alpha_free_finite, is_alpha_free_finite_with, scott_rank_finite, subsets,
    tuples_upto, BfOptions, Extension, FiniteBf, FiniteStructure,
};
use scottbf::jump::{verify_level_shift, ShiftCaps, ShiftSubject};
use scottbf::order::{parse_term, JumpSpec, LoBf, OrderType, PointedTerm, Position};
use scottbf::rank::{scott_rank_term, RankCaps};

use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Coding,
    PaBf,
    Finite,
    Lo,
    Jump,
    /// Rank table, ranks over the 1-jump and level shifts on terms.
    #[value(name = "paper")]
    Reference,
    All,
}

pub fn run(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Coding => coding(),
        Suite::PaBf => pa_bf(),
        Suite::Finite => finite(),
        Suite::Lo => lo(),
        Suite::Jump => jump(),
        Suite::Reference => reference(),
        Suite::All => [coding(), pa_bf(), finite(), lo(), jump(), reference()].concat(),
    }
}

fn words(max: u64, max_len: usize) -> Vec<Vec<u64>> {
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..=max).map(move |x| [w.as_slice(), &[x]].concat()))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

const FORMULAS: [&str; 6] = [
    "(= v0 v0)",
    "(<= (+ v0 1) v1)",
    "(exists (v2 v0) (= (+ v2 v2) v0))",
    "(forall (v2 v1) (-> (<= v2 v0) (<= v2 v1)))",
    "(not (and (= v0 0) (= v1 (* v0 v1))))",
    "(or (exists (v2 (+ v0 v1)) (= (* v2 v2) v1)) (= v0 1))",
];

fn coding() -> Vec<Check> {
    const S: &str = "coding";
    let pairs_bad = (0..=1000u64)
        .flat_map(|x| (0..=1000u64).map(move |y| (x, y)))
        .filter(|&(x, y)| unpair(&pair_u64(x, y)) != (Natural::from(x), Natural::from(y)))
        .count();
    let seqs = words(7, 3);
    let seq_bad = seqs
        .iter()
        .filter(|s| decode_seq_u64(&encode_seq_u64(s)).ok().as_ref() != Some(*s))
        .count();
    let sets: Vec<Vec<u64>> = (0..=10)
        .flat_map(|k| subsets(&(0..10).collect::<Vec<_>>(), k))
        .map(|s| s.into_iter().map(|x| x as u64).collect())
        .collect();
    let set_bad = sets
        .iter()
        .filter(|s| {
            decode_set(&encode_set(s.iter()))
                .into_iter()
                .collect::<Vec<_>>()
                != **s
        })
        .count();
    let mut godel_bad = 0;
    let mut truth_bad = 0;
    let mut evaluated = 0;
    for text in FORMULAS {
        let f = parse_formula(text).expect("suite formulas parse");
        godel_bad += (Formula::ungodel(&f.godel()).as_ref() != Some(&f)) as usize;
        for args in words(4, 2).into_iter().filter(|w| w.len() == 2) {
            let nat: Vec<Natural> = args.iter().map(|&x| Natural::from(x)).collect();
            let env: BTreeMap<u32, Natural> = nat
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, x)| (i as u32, x))
                .collect();
            let Ok(direct) = eval_delta0(&f, &env) else {
                continue;
            };
            evaluated += 1;
            truth_bad += (truth(&f.godel(), &nat) != direct) as usize;
        }
    }
    vec![
        Check::new(
            S,
            "pairing round trip",
            pairs_bad == 0,
            format!("[0,1000]^2, {pairs_bad} failures"),
        ),
        Check::new(
            S,
            "sequence round trip",
            seq_bad == 0,
            format!("{} sequences over [0,7], {seq_bad} failures", seqs.len()),
        ),
        Check::new(
            S,
            "set round trip",
            set_bad == 0,
            format!("{} subsets of [0,9], {set_bad} failures", sets.len()),
        ),
        Check::new(
            S,
            "godel round trip",
            godel_bad == 0,
            format!("{} formulas, {godel_bad} failures", FORMULAS.len()),
        ),
        Check::new(
            S,
            "truth predicate",
            truth_bad == 0,
            format!("{evaluated} evaluations, {truth_bad} disagreements"),
        ),
    ]
}

fn pa_bf() -> Vec<Check> {
    const S: &str = "pa-bf";
    let r = check_bf_properties(4, 2, 2, 2);
    let c = first_open_formula_code();
    let probes: [(&[u64], u32, u64); 3] = [(&[0], 1, 3), (&[], 0, 2), (&[0], 1, 0)];
    let holding = probes
        .iter()
        .filter(|(a, n, b)| {
            probe_standard_witness(a, *n, &ProbeBounds::uniform(*b)).verdict
                == ProbeVerdict::HoldsWithinBounds
        })
        .count();
    vec![
        Check::new(
            S,
            "closure and nestedness",
            r.passed(),
            format!(
                "B=4 n<=2 a<=2 len<=2, {} checks, {} counterexamples",
                r.checks,
                r.counterexamples.len()
            ),
        ),
        Check::new(
            S,
            "level 0 sees sentences",
            c > 100,
            format!("first open formula code {c}"),
        ),
        Check::new(
            S,
            "non-freeness probe",
            holding == probes.len(),
            format!("{holding}/{} hold within bounds", probes.len()),
        ),
    ]
}

fn small_structures() -> Vec<FiniteStructure> {
    let mut v: Vec<FiniteStructure> = (0..=4).map(FiniteStructure::linear_order).collect();
    v.extend(
        [&[3][..], &[2, 3], &[1, 2], &[2, 2]]
            .iter()
            .map(|l| FiniteStructure::cycles(l)),
    );
    v
}

fn finite() -> Vec<Check> {
    const S: &str = "finite";
    let family = small_structures();
    let (mut refl, mut nested, mut checked) = (0, 0, 0);
    for a in &family {
        let mut bf = FiniteBf::new(a, a, BfOptions::default());
        let ts = tuples_upto(a.universe(), 2);
        for x in &ts {
            for n in 0..=2 {
                refl += !bf.leq(x, x, n) as usize;
            }
            for y in ts.iter().filter(|y| y.len() == x.len()) {
                for n in 0..2 {
                    checked += 1;
                    nested += (bf.leq(x, y, n + 1) && !bf.leq(x, y, n)) as usize;
                }
            }
        }
    }
    let exhaustive = BfOptions {
        extension: Extension::Exhaustive,
        ..BfOptions::default()
    };
    let mut modes = 0;
    for a in [
        FiniteStructure::linear_order(3),
        FiniteStructure::cycles(&[3]),
        FiniteStructure::cycles(&[2, 1]),
    ] {
        for t in tuples_upto(a.universe(), 1) {
            for alpha in 0..=2 {
                modes += (is_alpha_free_finite(&a, &t, alpha, 2)
                    != is_alpha_free_finite_with(&a, &t, alpha, 2, exhaustive))
                    as usize;
            }
        }
    }
    let parts: Vec<usize> = [(1, 1, 1), (3, 0, 1), (4, 1, 1), (3, 0, 2)]
        .iter()
        .map(|&(n, l, k)| bf_partition(&FiniteStructure::linear_order(n), l, k).len())
        .collect();
    let ranks = (
        scott_rank_finite(&FiniteStructure::cycles(&[3, 3]), 6),
        scott_rank_finite(&FiniteStructure::cycles(&[2, 3]), 1),
    );
    vec![
        Check::new(
            S,
            "reflexive",
            refl == 0,
            format!("{} structures, {refl} failures", family.len()),
        ),
        Check::new(
            S,
            "nested",
            nested == 0,
            format!("{checked} pairs, {nested} failures"),
        ),
        Check::new(
            S,
            "extension modes agree",
            modes == 0,
            format!("{modes} disagreements on freeness"),
        ),
        Check::new(
            S,
            "partition sizes",
            parts == [1, 1, 4, 4],
            format!("{parts:?}"),
        ),
        Check::new(
            S,
            "ranks",
            ranks == (Some(1), Some(2)),
            format!(
                "two triangles {:?}, 2+3 cycles at length 1 {:?}",
                ranks.0, ranks.1
            ),
        ),
    ]
}

fn pointed(n: usize, pts: &[usize]) -> PointedTerm {
    PointedTerm::new(
        OrderType::fin(n as u64),
        pts.iter().map(|&i| Position::index(0, i as u64)).collect(),
    )
    .expect("ascending indices")
}

/// `lo_bf` against the finite engine on orders of size at most 6.
pub fn oracle_grid() -> (usize, usize) {
    let (mut checked, mut disagree) = (0, 0);
    for p in 0..=6usize {
        for q in 0..=6usize {
            let (a, b) = (
                FiniteStructure::linear_order(p),
                FiniteStructure::linear_order(q),
            );
            let mut bf = FiniteBf::new(&a, &b, BfOptions::default());
            let mut lo = LoBf::default();
            let sel = |n: usize| -> Vec<Vec<usize>> {
                let all: Vec<usize> = (0..n).collect();
                (0..=2.min(n)).flat_map(|k| subsets(&all, k)).collect()
            };
            for x in sel(p) {
                for y in sel(q) {
                    for n in 0..=3 {
                        let got = lo
                            .pointed(&pointed(p, &x), &pointed(q, &y), n, JumpSpec::default())
                            .expect("level in cap");
                        checked += 1;
                        disagree += (got.holds != bf.leq(&x, &y, n)) as usize;
                    }
                }
            }
        }
    }
    (checked, disagree)
}

fn lo() -> Vec<Check> {
    const S: &str = "lo";
    let (checked, disagree) = oracle_grid();
    let mut lo = LoBf::default();
    let ty = |t: &str| parse_term(t).expect("suite terms parse").order_type();
    let expected = [
        ("w", "eta", 2, true),
        ("w", "eta", 3, false),
        ("w", "w*2", 2, true),
        ("w", "w*2", 3, false),
        ("1 + eta", "eta", 2, true),
        ("eta", "1 + eta", 2, false),
        ("eta + 1 + eta", "eta", 4, true),
    ];
    let wrong: Vec<String> = expected
        .iter()
        .filter(|&&(a, b, n, want)| lo.interval(n, 0, &ty(a), &ty(b)).holds != want)
        .map(|(a, b, n, _)| format!("{a} vs {b} at {n}"))
        .collect();
    vec![
        Check::new(
            S,
            "finite oracle",
            disagree == 0,
            format!("{checked} comparisons, {disagree} disagreements"),
        ),
        Check::new(
            S,
            "examples",
            wrong.is_empty(),
            format!("{} cases, wrong {wrong:?}", expected.len()),
        ),
    ]
}

fn jump() -> Vec<Check> {
    const S: &str = "jump";
    let mut out = Vec::new();
    for n in 1..=8 {
        let a = FiniteStructure::linear_order(n);
        let reports: Vec<_> = (0..=2)
            .map(|beta| {
                verify_level_shift(ShiftSubject::Finite(&a), 1, beta, ShiftCaps::default())
                    .expect("no name clash")
            })
            .collect();
        let bad: usize = reports.iter().map(|r| r.mismatches.len()).sum();
        let pairs: usize = reports.iter().map(|r| r.pairs_checked).sum();
        out.push(Check::new(
            S,
            format!("order {n}, alpha 1, beta <= 2"),
            bad == 0,
            format!("{pairs} pairs, {bad} mismatches"),
        ));
    }
    for lengths in [&[3][..], &[2, 3], &[3, 3]] {
        let a = FiniteStructure::cycles(lengths);
        let r = verify_level_shift(ShiftSubject::Finite(&a), 1, 2, ShiftCaps::default())
            .expect("no name clash");
        out.push(Check::new(
            S,
            format!("cycles {lengths:?}, alpha 1, beta 2"),
            r.passed(),
            format!(
                "{} pairs, {} mismatches",
                r.pairs_checked,
                r.mismatches.len()
            ),
        ));
    }
    out
}

pub const RANK_TABLE: [(&str, u32); 6] = [
    ("eta", 1),
    ("w", 2),
    ("w*2", 3),
    ("w^2", 4),
    ("w^2*2", 5),
    ("w^3", 6),
];

fn reference() -> Vec<Check> {
    const S: &str = "reference";
    let sr = |t: &str, base: u32| {
        scott_rank_term(
            &parse_term(t).expect("suite terms parse"),
            JumpSpec::new(base),
            RankCaps::default(),
        )
    };
    let mut out = Vec::new();
    for (t, want) in RANK_TABLE.iter().copied().chain([("1", 1), ("4", 1)]) {
        let r = sr(t, 0);
        out.push(Check::new(
            S,
            format!("SR({t})"),
            r.rank == Some(want),
            format!("{} (expected {want})", r.display_rank()),
        ));
    }
    for (t, want) in [("w", 1), ("w*2", 2), ("w^2", 3)] {
        let r = sr(t, 1);
        out.push(Check::new(
            S,
            format!("SR({t}) over the 1-jump"),
            r.rank == Some(want),
            format!("{} (expected {want})", r.display_rank()),
        ));
    }
    for t in ["3", "w", "w + 1", "w*2", "w^2", "eta", "1 + eta"] {
        let term = parse_term(t).expect("suite terms parse");
        let reports: Vec<_> = (0..=3)
            .map(|beta| {
                verify_level_shift(ShiftSubject::Term(&term), 1, beta, ShiftCaps::default())
                    .expect("terms never clash")
            })
            .collect();
        let bad: usize = reports.iter().map(|r| r.mismatches.len()).sum();
        let pairs: usize = reports.iter().map(|r| r.pairs_checked).sum();
        out.push(Check::new(
            S,
            format!("level shift {t}, alpha 1, beta <= 3"),
            bad == 0,
            format!("{pairs} pairs, {bad} mismatches"),
        ));
    }
    out
}
