use std::collections::HashMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scottbf::finite::{
    bf_leq_finite, bf_leq_finite_with, bf_partition, finite_rank_search, is_alpha_free_finite,
    is_alpha_free_finite_with, scott_rank_finite, tuples_upto, BfOptions, Extension, FiniteBf,
    FiniteStructure, StructureError,
};

/// A binary relation on `0..n` as a bit matrix.
#[derive(Clone, Debug)]
struct Digraph {
    n: usize,
    edges: Vec<bool>,
}

impl Digraph {
    fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            n,
            edges: (0..n * n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    fn edge(&self, x: usize, y: usize) -> bool {
        self.edges[x * self.n + y]
    }

    fn structure(&self) -> FiniteStructure {
        let tuples: Vec<Vec<usize>> = (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| vec![x, y]))
            .filter(|t| self.edge(t[0], t[1]))
            .collect();
        FiniteStructure::new(self.n, [("r".to_string(), 2, tuples)]).unwrap()
    }
}

fn words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| (0..n).map(move |x| [w.as_slice(), &[x]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Straight transcription of the definition: level 0 compares `x̄` with the prefix of `ȳ`,
/// level n+1 lets the right side extend by up to `|universe|` points plus the length gap.
struct Naive<'g> {
    g: [&'g Digraph; 2],
    memo: HashMap<(u32, usize, Vec<usize>, Vec<usize>), bool>,
}

impl<'g> Naive<'g> {
    fn new(a: &'g Digraph, b: &'g Digraph) -> Self {
        Self {
            g: [a, b],
            memo: HashMap::new(),
        }
    }

    fn level0(&self, left: usize, x: &[usize], y: &[usize]) -> bool {
        let (gx, gy) = (self.g[left], self.g[1 - left]);
        y.len() >= x.len()
            && (0..x.len()).all(|i| {
                (0..x.len()).all(|j| {
                    (x[i] == x[j]) == (y[i] == y[j]) && gx.edge(x[i], x[j]) == gy.edge(y[i], y[j])
                })
            })
    }

    fn leq(&mut self, n: u32, left: usize, x: &[usize], y: &[usize]) -> bool {
        if n == 0 {
            return self.level0(left, x, y);
        }
        let key = (n, left, x.to_vec(), y.to_vec());
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let right = 1 - left;
        let (nx, ny) = (self.g[left].n, self.g[right].n);
        let r = words(ny, ny + x.len().saturating_sub(y.len()))
            .iter()
            .all(|d| {
                let yd = [y, d.as_slice()].concat();
                let need = (y.len() + d.len()).saturating_sub(x.len());
                words(nx, need + 1)
                    .iter()
                    .filter(|c| c.len() >= need)
                    .any(|c| {
                        let xc = [x, c.as_slice()].concat();
                        self.leq(n - 1, right, &yd, &xc)
                    })
            });
        self.memo.insert(key, r);
        r
    }
}

fn small_digraphs() -> Vec<Digraph> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for mask in 0..1u64 << (n * n) {
            out.push(Digraph::from_mask(n, mask));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        out.push(Digraph::from_mask(3, rng.gen_range(0..1 << 9)));
    }
    out
}

#[test]
fn matches_naive_definition_on_small_digraphs() {
    let graphs = small_digraphs();
    let mut checked = 0;
    for (i, ga) in graphs.iter().enumerate() {
        for gb in graphs.iter().skip(i).step_by(3) {
            let (sa, sb) = (ga.structure(), gb.structure());
            let mut naive = Naive::new(ga, gb);
            let mut fast = FiniteBf::new(&sa, &sb, BfOptions::default());
            let max_level = if ga.n + gb.n <= 4 { 2 } else { 1 };
            for x in tuples_upto(ga.n, 1) {
                for y in tuples_upto(gb.n, 1) {
                    for n in 0..=max_level {
                        assert_eq!(
                            fast.leq(&x, &y, n),
                            naive.leq(n, 0, &x, &y),
                            "{ga:?} {x:?} / {gb:?} {y:?} n={n}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn two_element_order_versus_one() {
    let (two, one) = (
        FiniteStructure::linear_order(2),
        FiniteStructure::linear_order(1),
    );
    assert!(bf_leq_finite(&two, &[], &one, &[], 1));
    assert!(!bf_leq_finite(&one, &[], &two, &[], 1));
}

#[test]
fn two_cycle_versus_three_cycle() {
    let c2 = Digraph {
        n: 2,
        edges: vec![false, true, true, false],
    };
    let c3 = Digraph {
        n: 3,
        edges: (0..9).map(|i| i / 3 != i % 3).collect(),
    };
    let oracle = Naive::new(&c2, &c3).leq(1, 0, &[], &[]);
    let reverse = Naive::new(&c3, &c2).leq(1, 0, &[], &[]);
    assert!(!oracle);
    assert!(reverse);
    let (s2, s3) = (FiniteStructure::cycles(&[2]), FiniteStructure::cycles(&[3]));
    assert_eq!(bf_leq_finite(&s2, &[], &s3, &[], 1), oracle);
    assert_eq!(bf_leq_finite(&s3, &[], &s2, &[], 1), reverse);
}

#[test]
fn identity_is_related_at_every_level() {
    let a = FiniteStructure::cycles(&[3, 2]);
    let mut bf = FiniteBf::new(&a, &a, BfOptions::default());
    for t in tuples_upto(5, 2) {
        for n in 0..=3 {
            assert!(bf.leq(&t, &t, n));
        }
    }
}

#[test]
fn partition_examples() {
    assert_eq!(
        bf_partition(&FiniteStructure::linear_order(1), 1, 1).len(),
        1
    );
    assert_eq!(
        bf_partition(&FiniteStructure::linear_order(3), 0, 1).len(),
        1
    );
    assert_eq!(
        bf_partition(&FiniteStructure::linear_order(4), 1, 1).len(),
        4
    );
    assert_eq!(
        bf_partition(&FiniteStructure::linear_order(3), 0, 2).len(),
        4
    );
}

#[test]
fn partition_refines_with_level() {
    let a = FiniteStructure::cycles(&[2, 3]);
    let counts: Vec<usize> = (0..=3).map(|n| bf_partition(&a, n, 2).len()).collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]), "{counts:?}");
    let fine = bf_partition(&a, 2, 2);
    let coarse = bf_partition(&a, 1, 2);
    for class in &fine {
        assert!(coarse.iter().any(|c| class.iter().all(|t| c.contains(t))));
    }
}

#[test]
fn freeness_examples() {
    let single = FiniteStructure::linear_order(1);
    let four = FiniteStructure::linear_order(4);
    for t in tuples_upto(1, 1) {
        assert!(!is_alpha_free_finite(&single, &t, 0, 1));
        assert!(!is_alpha_free_finite(&single, &t, 1, 1));
    }
    assert!(!is_alpha_free_finite(&four, &[], 1, 4));
    assert!(!is_alpha_free_finite(&four, &[2], 0, 4));
}

#[test]
fn saturated_freeness_matches_exhaustive() {
    let exhaustive = BfOptions {
        extension: Extension::Exhaustive,
        ..BfOptions::default()
    };
    for a in [
        FiniteStructure::linear_order(3),
        FiniteStructure::cycles(&[3]),
        FiniteStructure::cycles(&[2, 1]),
    ] {
        for t in tuples_upto(a.universe(), 1) {
            for alpha in 0..=2 {
                assert_eq!(
                    is_alpha_free_finite(&a, &t, alpha, 2),
                    is_alpha_free_finite_with(&a, &t, alpha, 2, exhaustive),
                    "{t:?} alpha={alpha}"
                );
            }
        }
    }
}

#[test]
fn scott_rank_examples() {
    for n in 1..=5 {
        assert_eq!(
            scott_rank_finite(&FiniteStructure::linear_order(n), n),
            Some(1),
            "order of size {n}"
        );
    }
    let bare = FiniteStructure::new(1, Vec::<(String, usize, Vec<Vec<usize>>)>::new()).unwrap();
    assert_eq!(scott_rank_finite(&bare, 1), Some(1));
    let two_triangles = FiniteStructure::cycles(&[3, 3]);
    assert_eq!(scott_rank_finite(&two_triangles, 6), Some(1));
}

fn short(ext: Extension) -> BfOptions {
    BfOptions {
        extension: ext,
        ext_len: Some(2),
        ..BfOptions::default()
    }
}

#[test]
fn rank_search_modes_agree() {
    for a in [
        FiniteStructure::cycles(&[3, 3]),
        FiniteStructure::cycles(&[2, 3]),
        FiniteStructure::linear_order(4),
    ] {
        let sat = finite_rank_search(&a, 2, 3, short(Extension::Saturated));
        let exh = finite_rank_search(&a, 2, 3, short(Extension::Exhaustive));
        assert_eq!(sat.rank, exh.rank);
    }
}

#[test]
fn short_tuples_see_a_free_element() {
    // With one-point tuples the triangle vertex cannot be told apart from the edge end.
    let a = FiniteStructure::cycles(&[2, 3]);
    let r = finite_rank_search(&a, 1, 4, BfOptions::default());
    assert_eq!(r.rank, Some(2));
    let w = r.witness.expect("a 1-free tuple");
    assert!(is_alpha_free_finite(&a, &w, 1, 1));
    for t in tuples_upto(5, 1) {
        assert!(!is_alpha_free_finite(&a, &t, 2, 1));
    }
    assert_eq!(scott_rank_finite(&a, 5), Some(1));
}

fn graph_family() -> Vec<FiniteStructure> {
    let mut out: Vec<FiniteStructure> = (1..=4).map(FiniteStructure::linear_order).collect();
    for n in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for mask in 0..1u32 << pairs.len() {
            let edges: Vec<Vec<usize>> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .flat_map(|(_, &(i, j))| [vec![i, j], vec![j, i]])
                .collect();
            out.push(FiniteStructure::new(n, [("e".to_string(), 2, edges)]).unwrap());
        }
    }
    out
}

#[test]
fn nested_reflexive_transitive_on_small_graphs() {
    for a in graph_family() {
        let mut bf = FiniteBf::new(&a, &a, BfOptions::default());
        let tuples = tuples_upto(a.universe(), 2);
        for x in &tuples {
            for y in tuples.iter().filter(|y| y.len() == x.len()) {
                for n in 0..2 {
                    if bf.leq(x, y, n + 1) {
                        assert!(bf.leq(x, y, n), "{x:?} {y:?} n={n}");
                    }
                }
            }
        }
        for n in 0..=2 {
            for x in &tuples {
                assert!(bf.leq(x, x, n));
                let ups: Vec<&Vec<usize>> = tuples
                    .iter()
                    .filter(|y| y.len() == x.len() && bf.leq(x, y, n))
                    .collect();
                for y in &ups {
                    for z in tuples.iter().filter(|z| z.len() == x.len()) {
                        if bf.leq(y, z, n) {
                            assert!(bf.leq(x, z, n), "{x:?} {y:?} {z:?} n={n}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn json_round_trip() {
    let a = FiniteStructure::cycles(&[2, 3]);
    let back = FiniteStructure::from_json(&a.to_json()).unwrap();
    assert_eq!(back, a);
    let text = r#"{"universe": 2, "relations": {"lt": {"arity": 2, "tuples": [[0, 1]]}}}"#;
    assert_eq!(
        FiniteStructure::from_json(text).unwrap(),
        FiniteStructure::linear_order(2)
    );
}

#[test]
fn malformed_structures_are_rejected() {
    let out = r#"{"universe": 2, "relations": {"lt": {"arity": 2, "tuples": [[0, 2]]}}}"#;
    assert!(matches!(
        FiniteStructure::from_json(out),
        Err(StructureError::OutOfUniverse { element: 2, .. })
    ));
    let arity = r#"{"universe": 2, "relations": {"lt": {"arity": 2, "tuples": [[0]]}}}"#;
    assert!(matches!(
        FiniteStructure::from_json(arity),
        Err(StructureError::Arity { .. })
    ));
    assert!(matches!(
        FiniteStructure::from_json("{"),
        Err(StructureError::Json(_))
    ));
}

fn arb_graph() -> impl Strategy<Value = (FiniteStructure, Vec<usize>)> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let edges = proptest::collection::vec((0..n, 0..n), 0..6);
            let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
            (Just(n), edges, perm)
        })
        .prop_map(|(n, edges, perm)| {
            let tuples: Vec<Vec<usize>> = edges.into_iter().map(|(x, y)| vec![x, y]).collect();
            (
                FiniteStructure::new(n, [("r".to_string(), 2, tuples)]).unwrap(),
                perm,
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_preserves_verdicts((a, perm) in arb_graph()) {
        let b = a.relabel(&perm);
        let map = |t: &[usize]| t.iter().map(|&x| perm[x]).collect::<Vec<_>>();
        let mut left = FiniteBf::new(&a, &a, BfOptions::default());
        let mut right = FiniteBf::new(&b, &b, BfOptions::default());
        for x in tuples_upto(a.universe(), 1) {
            for y in &tuples_upto(a.universe(), 2) {
                for n in 0..=2 {
                    prop_assert_eq!(left.leq(&x, y, n), right.leq(&map(&x), &map(y), n));
                }
            }
            prop_assert!(bf_leq_finite(&a, &x, &b, &map(&x), 3));
        }
    }

    #[test]
    fn saturated_matches_exhaustive((a, _) in arb_graph(), seed in any::<u64>()) {
        let tuples = tuples_upto(a.universe(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let x = tuples.choose(&mut rng).unwrap();
            let y = tuples.choose(&mut rng).unwrap();
            for n in 0..=2 {
                prop_assert_eq!(
                    bf_leq_finite_with(&a, x, &a, y, n, short(Extension::Saturated)),
                    bf_leq_finite_with(&a, x, &a, y, n, short(Extension::Exhaustive))
                );
            }
        }
    }
}
