use std::collections::BTreeMap;
use std::time::Instant;

mod common;

use scottbf::arith::{decode_seq_u64, encode_seq_u64, eval_delta0, pair_u64, unpair, Natural};
use scottbf::bounded::{check_bf_properties, probe_standard_witness, ProbeBounds, ProbeVerdict};
use scottbf::finite::{subsets, BfOptions, FiniteBf, FiniteStructure};
use scottbf::jump::{verify_level_shift, ShiftCaps, ShiftSubject};
use scottbf::order::{parse_term, JumpSpec, LoBf, OrderType, PointedTerm, Position};
use scottbf::rank::{scott_rank_term, RankCaps};

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(id: u32, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    println!(
        "criterion {id}: {verdict} ({:.1}s) {}",
        start.elapsed().as_secs_f64(),
        o.detail
    );
    o.pass
}

fn sr(text: &str, base: u32) -> Option<u32> {
    scott_rank_term(
        &parse_term(text).unwrap(),
        JumpSpec::new(base),
        RankCaps::default(),
    )
    .rank
}

fn rank_table() -> Outcome {
    let table = [
        ("eta", 1),
        ("w", 2),
        ("w*2", 3),
        ("w^2", 4),
        ("w^2*2", 5),
        ("w^3", 6),
        ("1", 1),
        ("5", 1),
    ];
    let wrong: Vec<String> = table
        .iter()
        .filter_map(|&(t, want)| {
            let got = sr(t, 0);
            (got != Some(want)).then(|| format!("{t}: {got:?} != {want}"))
        })
        .collect();
    Outcome {
        pass: wrong.is_empty(),
        detail: format!("{} subjects, mismatches {wrong:?}", table.len()),
    }
}

fn pointed(n: usize, pts: &[usize]) -> PointedTerm {
    PointedTerm::new(
        OrderType::fin(n as u64),
        pts.iter().map(|&i| Position::index(0, i as u64)).collect(),
    )
    .unwrap()
}

fn oracle_grid() -> Outcome {
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
                            .unwrap();
                        checked += 1;
                        disagree += (got.holds != bf.leq(&x, &y, n)) as usize;
                    }
                }
            }
        }
    }
    Outcome {
        pass: disagree == 0,
        detail: format!("{checked} comparisons, {disagree} disagreements"),
    }
}

fn level_shift() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for n in 1..=8 {
        let a = FiniteStructure::linear_order(n);
        for beta in 0..=2 {
            let r = verify_level_shift(ShiftSubject::Finite(&a), 1, beta, ShiftCaps::default())
                .unwrap();
            pairs += r.pairs_checked;
            if !r.passed() {
                failures.push(format!("order {n} beta {beta}"));
            }
        }
    }
    for text in ["3", "w", "w + 1", "w*2", "w^2", "eta", "1 + eta"] {
        let t = parse_term(text).unwrap();
        for beta in 0..=3 {
            let r =
                verify_level_shift(ShiftSubject::Term(&t), 1, beta, ShiftCaps::default()).unwrap();
            pairs += r.pairs_checked;
            if !r.passed() {
                failures.push(format!("{text} beta {beta}"));
            }
        }
    }
    let shifted: Vec<Option<u32>> = ["w", "w*2", "w^2"].iter().map(|t| sr(t, 1)).collect();
    if shifted != [Some(1), Some(2), Some(3)] {
        failures.push(format!("rank shift {shifted:?}"));
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("{pairs} pairs, rank shift {shifted:?}, failures {failures:?}"),
    }
}

fn bounded_properties() -> Outcome {
    let r = check_bf_properties(4, 2, 2, 2);
    Outcome {
        pass: r.passed(),
        detail: format!(
            "{} checks, {} counterexamples",
            r.checks,
            r.counterexamples.len()
        ),
    }
}

fn coding() -> Outcome {
    let mut bad = 0;
    for x in 0..=1000u64 {
        for y in 0..=1000u64 {
            bad += (unpair(&pair_u64(x, y)) != (Natural::from(x), Natural::from(y))) as usize;
        }
    }
    let mut seqs = vec![vec![]];
    for len in 1..=3 {
        let mut layer: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..len {
            layer = layer
                .into_iter()
                .flat_map(|w| (0..=7).map(move |x| [w.clone(), vec![x]].concat()))
                .collect();
        }
        seqs.extend(layer);
    }
    bad += seqs
        .iter()
        .filter(|s| decode_seq_u64(&encode_seq_u64(s)).ok().as_ref() != Some(*s))
        .count();
    let cases = common::random_cases(17, 500, 4);
    for (f, vals) in &cases {
        let env: BTreeMap<u32, Natural> = vals
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as u32, Natural::from(x)))
            .collect();
        bad += (eval_delta0(f, &env).unwrap() != common::naive(f, &mut vals.clone())) as usize;
    }
    Outcome {
        pass: bad == 0,
        detail: format!(
            "1001^2 pairs, {} sequences, {} formulas, {bad} failures",
            seqs.len(),
            cases.len()
        ),
    }
}

fn probe() -> Outcome {
    let configs: [(&[u64], u32, u64); 3] = [(&[0], 1, 3), (&[], 0, 2), (&[0], 1, 0)];
    let holds = configs
        .iter()
        .filter(|(a, n, r)| {
            probe_standard_witness(a, *n, &ProbeBounds::uniform(*r)).verdict
                == ProbeVerdict::HoldsWithinBounds
        })
        .count();
    Outcome {
        pass: holds == configs.len(),
        detail: format!(
            "non-freeness probe holds within bounds on {holds}/{} micro-configurations; \
             results about nonstandard models are not executable and rest on criteria 1-5",
            configs.len()
        ),
    }
}

fn main() {
    let results = [
        run(1, rank_table),
        run(2, oracle_grid),
        run(3, level_shift),
        run(4, bounded_properties),
        run(5, coding),
        run(6, probe),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
