use scottbf::arith::{encode_seq_u64, truth, Natural};
use scottbf::bounded::{
    bbf_leq, check_bf_properties, check_bf_properties_with, first_open_formula_code,
    probe_standard_witness, BoundedBf, BoundedBfQuery, Level0Bound, ProbeBounds, ProbeVerdict,
};

fn query(n: u32, a: u32, u: &[u64], v: &[u64], b: u64) -> BoundedBfQuery {
    BoundedBfQuery::new(n, a, encode_seq_u64(u), encode_seq_u64(v), b)
}

#[test]
fn level_zero_is_reflexive() {
    for u in [vec![], vec![2], vec![0, 3], vec![4, 4, 1]] {
        assert!(bbf_leq(&query(0, 0, &u, &u, 4)));
        assert!(bbf_leq(&query(0, 3, &u, &u, 4)));
    }
    assert!(bbf_leq(&query(0, 2, &[2], &[2], 4)));
}

#[test]
fn higher_levels_are_reflexive() {
    for n in 0..=2 {
        for u in [vec![], vec![1], vec![3, 0]] {
            assert!(bbf_leq(&query(n, 1, &u, &u, 3)), "n={n} u={u:?}");
        }
    }
}

fn naive_level0(u: &[u64], v: &[u64]) -> bool {
    let un: Vec<Natural> = u.iter().map(|&x| Natural::from(x)).collect();
    let vn: Vec<Natural> = v.iter().map(|&x| Natural::from(x)).collect();
    (0..=u.len() as u64).all(|x| {
        let x = Natural::from(x);
        !truth(&x, &un) || truth(&x, &vn)
    })
}

fn words(b: u64, max_len: usize) -> Vec<Vec<u64>> {
    let mut all = vec![vec![]];
    for len in 1..=max_len {
        let mut layer: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..len {
            layer = layer
                .into_iter()
                .flat_map(|w| (0..=b).map(move |x| [w.clone(), vec![x]].concat()))
                .collect();
        }
        all.extend(layer);
    }
    all
}

// Direct two-block expansion of level 1 with the role swap as printed.
fn naive_level1(a: usize, cap: usize, b: u64, u: &[u64], v: &[u64]) -> bool {
    words(b, a).iter().all(|x| {
        let vx = [v, x.as_slice()].concat();
        words(b, cap)
            .iter()
            .any(|y| naive_level0(&vx, &[u, y.as_slice()].concat()))
    })
}

#[test]
fn level_one_matches_direct_expansion() {
    let oracle = naive_level1(1, 1, 4, &[1], &[2]);
    assert!(oracle);
    let mut q = query(1, 1, &[1], &[2], 4);
    q.existential_length_cap = Some(1);
    assert_eq!(bbf_leq(&q), oracle);
    let mut ev = BoundedBf::new(2, 1, 1, Level0Bound::SeqLen);
    for u in words(2, 1) {
        for v in words(2, 1) {
            assert_eq!(
                ev.leq(1, &u, &v),
                naive_level1(1, 1, 2, &u, &v),
                "{u:?} {v:?}"
            );
        }
    }
}

#[test]
fn invalid_codes_are_false() {
    for bad in [3u32, 4, 16] {
        let q = BoundedBfQuery::new(0, 1, Natural::from(bad), Natural::from(bad), 4);
        assert!(!bbf_leq(&q));
        let q = BoundedBfQuery::new(1, 1, encode_seq_u64(&[1]), Natural::from(bad), 4);
        assert!(!bbf_leq(&q));
    }
}

#[test]
fn entries_beyond_the_universe_are_false() {
    assert!(!bbf_leq(&query(0, 1, &[5], &[5], 4)));
}

#[test]
fn level_zero_only_sees_sentences_at_desk_scale() {
    let c = first_open_formula_code();
    assert!(c > 100, "{c}");
    assert_eq!(c, first_open_formula_code());
}

#[test]
fn bound_a_variant_agrees_on_sentences() {
    let mut seq = BoundedBf::new(2, 2, 2, Level0Bound::SeqLen);
    let mut by_a = BoundedBf::new(2, 2, 2, Level0Bound::BoundA);
    assert!(seq.leq(0, &[1], &[2]));
    assert!(by_a.leq(0, &[1], &[2]));
}

#[test]
fn properties_hold_small() {
    let r = check_bf_properties(2, 1, 1, 1);
    assert!(r.passed(), "{:?}", r.counterexamples.first());
    assert!(r.checks > 0);
}

#[test]
fn properties_vacuous_without_levels() {
    let r = check_bf_properties(4, 0, 2, 2);
    assert!(r.passed());
    assert_eq!(r.checks, 0);
}

#[test]
fn properties_hold_at_b4() {
    let r = check_bf_properties(4, 2, 2, 2);
    assert!(r.passed(), "{:?}", r.counterexamples.first());
    assert_eq!(r.existential_length_cap, 2);
}

#[test]
fn properties_hold_with_bound_a_window() {
    let r = check_bf_properties_with(2, 2, 1, 1, 1, Level0Bound::BoundA);
    assert!(r.passed(), "{:?}", r.counterexamples.first());
}

#[test]
fn probe_micro_configurations() {
    let r = probe_standard_witness(&[0], 1, &ProbeBounds::uniform(3));
    assert_eq!(r.verdict, ProbeVerdict::HoldsWithinBounds);
    assert!(r.witness.is_some());
    let r = probe_standard_witness(&[], 0, &ProbeBounds::uniform(2));
    assert_eq!(r.verdict, ProbeVerdict::HoldsWithinBounds);
    let r = probe_standard_witness(&[0], 1, &ProbeBounds::uniform(0));
    assert_eq!(r.verdict, ProbeVerdict::HoldsWithinBounds);
    assert_eq!(r.witness, Some(vec![]));
}
