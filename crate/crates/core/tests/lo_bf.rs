use scottbf::finite::{bf_leq_finite, subsets, BfOptions, FiniteBf, FiniteStructure};
use scottbf::order::{
    closed_form, finite_threshold_table, interval_decompose, lo_bf_leq, parse_term, JumpSpec, LoBf,
    LoBfConfig, LoBfError, OrderType, PointedTerm, Position,
};

fn ty(text: &str) -> OrderType {
    parse_term(text).unwrap().order_type()
}

fn bare(text: &str) -> PointedTerm {
    PointedTerm::bare(ty(text))
}

fn leq(a: &str, b: &str, n: u32) -> bool {
    lo_bf_leq(&bare(a), &bare(b), n, JumpSpec::default())
        .unwrap()
        .holds
}

fn finite_pointed(n: u64, points: &[usize]) -> PointedTerm {
    PointedTerm::new(
        OrderType::fin(n),
        points
            .iter()
            .map(|&i| Position::index(0, i as u64))
            .collect(),
    )
    .unwrap()
}

#[test]
fn omega_and_eta() {
    assert!(leq("w", "eta", 1));
    assert!(leq("eta", "w", 1));
    assert!(leq("w", "eta", 2));
    assert!(!leq("w", "eta", 3));
}

#[test]
fn omega_and_omega_two() {
    assert!(leq("w", "w*2", 2));
    assert!(!leq("w", "w*2", 3));
    assert!(leq("w*2", "w", 2));
}

#[test]
fn eta_absorbs_points() {
    for n in 0..=4 {
        assert!(leq("eta + 1 + eta", "eta", n), "n={n}");
        assert!(leq("eta", "eta + 1 + eta", n), "n={n}");
    }
    // A least element is a Σ2 property.
    assert!(leq("1 + eta", "eta", 2));
    assert!(!leq("eta", "1 + eta", 2));
}

#[test]
fn interval_examples() {
    let w = PointedTerm::new(ty("w"), vec![Position::ord(0, vec![3])]).unwrap();
    assert_eq!(interval_decompose(&w), vec![OrderType::fin(3), ty("w")]);
    assert_eq!(
        interval_decompose(&finite_pointed(5, &[1, 3])),
        vec![OrderType::fin(1); 3]
    );
    let e = PointedTerm::new(ty("eta"), vec![Position::index(0, 0)]).unwrap();
    assert_eq!(interval_decompose(&e), vec![ty("eta"), ty("eta")]);
}

#[test]
fn level_cap_is_enforced() {
    let err = lo_bf_leq(&bare("w"), &bare("w"), 7, JumpSpec::new(2)).unwrap_err();
    assert_eq!(err, LoBfError::LevelOverflow { level: 9, max: 8 });
    assert!(lo_bf_leq(&bare("w"), &bare("w"), 6, JumpSpec::new(2)).is_ok());
}

fn ascending(n: usize, max_points: usize) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..n).collect();
    (0..=max_points.min(n))
        .flat_map(|k| subsets(&all, k))
        .collect()
}

#[test]
fn agrees_with_finite_structures() {
    let mut checked = 0;
    for p in 0..=6usize {
        for q in 0..=6usize {
            let (a, b) = (
                FiniteStructure::linear_order(p),
                FiniteStructure::linear_order(q),
            );
            let mut bf = FiniteBf::new(&a, &b, BfOptions::default());
            let mut lo = LoBf::default();
            for x in ascending(p, 2) {
                for y in ascending(q, 2) {
                    let (px, py) = (finite_pointed(p as u64, &x), finite_pointed(q as u64, &y));
                    for n in 0..=3 {
                        let want = bf.leq(&x, &y, n);
                        let got = lo.pointed(&px, &py, n, JumpSpec::default()).unwrap();
                        assert_eq!(got.holds, want, "{p}{x:?} vs {q}{y:?} at {n}");
                        assert!(!got.horizon_limited);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 15_000);
}

#[test]
fn threshold_tables_match_brute_force() {
    let orders: Vec<FiniteStructure> = (0..=16).map(FiniteStructure::linear_order).collect();
    for n in 0..=2u32 {
        let bound = if n == 2 { 16 } else { 12 };
        let table = finite_threshold_table(n);
        for p in 0..=bound {
            for q in 0..=bound {
                let brute = bf_leq_finite(&orders[p], &[], &orders[q], &[], n);
                assert_eq!(table.decide(p as u64, q as u64), brute, "n={n} p={p} q={q}");
            }
        }
    }
    for n in 3..=5 {
        assert_eq!(finite_threshold_table(n), finite_threshold_table(2));
    }
}

fn regression_grid() -> Vec<OrderType> {
    let mut out: Vec<OrderType> = (0..=4).map(OrderType::fin).collect();
    for t in ["w", "w + 1", "w + 2", "w*2", "w^2", "eta"] {
        out.push(ty(t));
    }
    out
}

#[test]
fn nested_and_reflexive_on_grid() {
    let grid = regression_grid();
    let mut lo = LoBf::default();
    for a in &grid {
        for n in 0..=4 {
            assert!(lo.interval(n, 0, a, a).holds, "{a} at {n}");
        }
        for b in &grid {
            for n in 0..4 {
                if lo.interval(n + 1, 0, a, b).holds {
                    assert!(lo.interval(n, 0, a, b).holds, "{a} vs {b} at {n}");
                }
            }
        }
    }
}

#[test]
fn transitive_on_grid() {
    let grid = regression_grid();
    let mut lo = LoBf::default();
    for n in 0..=4 {
        for a in &grid {
            let ups: Vec<&OrderType> = grid
                .iter()
                .filter(|b| lo.interval(n, 0, a, b).holds)
                .collect();
            for b in ups {
                for c in &grid {
                    if lo.interval(n, 0, b, c).holds {
                        assert!(lo.interval(n, 0, a, c).holds, "{a} {b} {c} at {n}");
                    }
                }
            }
        }
    }
}

#[test]
fn game_matches_closed_forms() {
    let mut grid = regression_grid();
    for t in [
        "w^2 + w", "w^2 + 1", "w*3", "w^2*2", "w + eta", "eta + w", "eta + 1",
    ] {
        grid.push(ty(t));
    }
    let mut game = LoBf::new(LoBfConfig {
        closed_form: false,
        ..LoBfConfig::default()
    });
    let mut compared = 0;
    for a in &grid {
        for b in &grid {
            for n in 2..=4 {
                if let Some(want) = closed_form(n, a, b) {
                    assert_eq!(game.interval(n, 0, a, b).holds, want, "{a} vs {b} at {n}");
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 400);
}

#[test]
fn omega_against_long_finite_prefixes() {
    let mut lo = LoBf::default();
    for q in 0..=4u64 {
        let big = q as usize + 7;
        let (prefix, small) = (
            FiniteStructure::linear_order(big),
            FiniteStructure::linear_order(q as usize),
        );
        for n in 0..=3 {
            let finite = bf_leq_finite(&prefix, &[], &small, &[], n);
            let symbolic = lo.interval(n, 0, &ty("w"), &OrderType::fin(q)).holds;
            assert_eq!(symbolic, finite, "w vs {q} at {n}");
            if lo.interval(n, 0, &OrderType::fin(q), &ty("w")).holds {
                assert!(bf_leq_finite(&small, &[], &prefix, &[], n));
            }
        }
    }
}

#[test]
fn unequal_point_counts() {
    let one = PointedTerm::new(ty("w"), vec![Position::ord(0, vec![0])]).unwrap();
    let none = bare("w");
    assert!(
        lo_bf_leq(&none, &one, 3, JumpSpec::default())
            .unwrap()
            .holds
    );
    assert!(
        !lo_bf_leq(&one, &none, 1, JumpSpec::default())
            .unwrap()
            .holds
    );
    let empty = bare("0");
    let single = finite_pointed(1, &[0]);
    assert!(
        lo_bf_leq(&single, &empty, 1, JumpSpec::default())
            .unwrap()
            .holds
    );
    assert!(
        !lo_bf_leq(&single, &empty, 2, JumpSpec::default())
            .unwrap()
            .holds
    );
    let e = PointedTerm::new(ty("eta"), vec![Position::index(0, 0)]).unwrap();
    assert!(
        lo_bf_leq(&e, &bare("eta"), 3, JumpSpec::default())
            .unwrap()
            .holds
    );
}
