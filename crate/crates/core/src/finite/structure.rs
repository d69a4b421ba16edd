use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::StructureError;

const MAX_TABLE: usize = 1 << 24;

/// On-disk form: `{"universe": n, "relations": {name: {"arity": k, "tuples": [[..], ..]}}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub universe: usize,
    #[serde(default)]
    pub relations: BTreeMap<String, RelationFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub arity: usize,
    pub tuples: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    name: String,
    arity: usize,
    table: Vec<bool>,
}

impl Relation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

/// All relations of one arity, bit-packed per tuple so atomic types compare row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Packed {
    arity: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Packed {
    fn build(universe: usize, arity: usize, rels: &[&Relation]) -> Self {
        let words = rels.len().div_ceil(64);
        let size = universe.pow(arity as u32);
        let mut rows = vec![0u64; size * words];
        for (j, r) in rels.iter().enumerate() {
            for (t, _) in r.table.iter().enumerate().filter(|(_, &v)| v) {
                rows[t * words + j / 64] |= 1 << (j % 64);
            }
        }
        Self { arity, words, rows }
    }

    fn row(&self, t: usize) -> &[u64] {
        &self.rows[t * self.words..(t + 1) * self.words]
    }
}

/// A finite relational structure with universe `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteStructure {
    universe: usize,
    relations: Vec<Relation>,
    packed: Vec<Packed>,
}

fn index(universe: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * universe + x)
}

impl FiniteStructure {
    pub fn new<I, T>(universe: usize, relations: I) -> Result<Self, StructureError>
    where
        I: IntoIterator<Item = (String, usize, T)>,
        T: IntoIterator<Item = Vec<usize>>,
    {
        let mut rels: BTreeMap<String, Relation> = BTreeMap::new();
        for (name, arity, tuples) in relations {
            let size = (universe as u128).pow(arity as u32);
            if size > MAX_TABLE as u128 {
                return Err(StructureError::TooLarge { name, arity });
            }
            let mut table = vec![false; size as usize];
            for t in tuples {
                if t.len() != arity {
                    return Err(StructureError::Arity {
                        name,
                        arity,
                        found: t.len(),
                    });
                }
                if let Some(&x) = t.iter().find(|&&x| x >= universe) {
                    return Err(StructureError::OutOfUniverse {
                        element: x,
                        universe,
                    });
                }
                table[index(universe, &t)] = true;
            }
            if rels.contains_key(&name) {
                return Err(StructureError::Duplicate(name));
            }
            rels.insert(name.clone(), Relation { name, arity, table });
        }
        let relations: Vec<Relation> = rels.into_values().collect();
        let arities: BTreeSet<usize> = relations
            .iter()
            .map(|r| r.arity)
            .filter(|&k| k > 0)
            .collect();
        let packed = arities
            .into_iter()
            .map(|k| {
                let group: Vec<&Relation> = relations.iter().filter(|r| r.arity == k).collect();
                Packed::build(universe, k, &group)
            })
            .collect();
        Ok(Self {
            universe,
            relations,
            packed,
        })
    }

    pub fn from_file(file: &StructureFile) -> Result<Self, StructureError> {
        Self::new(
            file.universe,
            file.relations
                .iter()
                .map(|(name, r)| (name.clone(), r.arity, r.tuples.clone())),
        )
    }

    pub fn from_json(text: &str) -> Result<Self, StructureError> {
        let file: StructureFile =
            serde_json::from_str(text).map_err(|e| StructureError::Json(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_file(&self) -> StructureFile {
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let tuples = all_tuples(self.universe, r.arity)
                    .filter(|t| r.table[index(self.universe, t)])
                    .collect();
                (
                    r.name.clone(),
                    RelationFile {
                        arity: r.arity,
                        tuples,
                    },
                )
            })
            .collect();
        StructureFile {
            universe: self.universe,
            relations,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    /// The strict order `0 < 1 < … < n-1` as relation `lt`.
    pub fn linear_order(n: usize) -> Self {
        let lt = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j]));
        Self::new(n, [("lt".to_string(), 2, lt.collect::<Vec<_>>())]).expect("valid order")
    }

    /// Disjoint union of undirected cycles of the given lengths, as symmetric relation `e`.
    pub fn cycles(lengths: &[usize]) -> Self {
        let mut edges = BTreeSet::new();
        let mut start = 0;
        for &len in lengths {
            for i in 0..len {
                let (x, y) = (start + i, start + (i + 1) % len);
                if x != y {
                    edges.insert(vec![x, y]);
                    edges.insert(vec![y, x]);
                }
            }
            start += len;
        }
        Self::new(start, [("e".to_string(), 2, edges)]).expect("valid graph")
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        self.relations[rel].table[index(self.universe, tuple)]
    }

    pub fn same_vocabulary(&self, other: &Self) -> bool {
        self.relations.len() == other.relations.len()
            && self
                .relations
                .iter()
                .zip(&other.relations)
                .all(|(r, s)| r.name == s.name && r.arity == s.arity)
    }

    /// Image under the bijection `i ↦ perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let rels = self.relations.iter().map(|r| {
            let tuples: Vec<Vec<usize>> = all_tuples(self.universe, r.arity)
                .filter(|t| r.table[index(self.universe, t)])
                .map(|t| t.iter().map(|&x| perm[x]).collect())
                .collect();
            (r.name.clone(), r.arity, tuples)
        });
        Self::new(self.universe, rels).expect("relabeling preserves validity")
    }

    pub fn check_tuple(&self, tuple: &[usize]) -> Result<(), StructureError> {
        match tuple.iter().find(|&&x| x >= self.universe) {
            Some(&x) => Err(StructureError::OutOfUniverse {
                element: x,
                universe: self.universe,
            }),
            None => Ok(()),
        }
    }
}

/// All tuples of the given length over `0..universe`, lexicographically.
pub fn all_tuples(universe: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if len == 0 {
        1
    } else if universe == 0 {
        0
    } else {
        universe.pow(len as u32)
    };
    (0..total).map(move |mut k| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = k % universe.max(1);
            k /= universe.max(1);
        }
        t
    })
}

/// All tuples of length at most `max_len`, shortest first, then lexicographic.
pub fn tuples_upto(universe: usize, max_len: usize) -> Vec<Vec<usize>> {
    (0..=max_len)
        .flat_map(|len| all_tuples(universe, len))
        .collect()
}

/// Increasing tuples of length `k` drawn from `pool`.
pub fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            go(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Whether every atomic fact about `xs` whose largest index is `m` matches the one about `ys`.
pub(crate) fn new_atoms_agree(
    x: &FiniteStructure,
    xs: &[usize],
    y: &FiniteStructure,
    ys: &[usize],
    m: usize,
) -> bool {
    for i in 0..m {
        if (xs[i] == xs[m]) != (ys[i] == ys[m]) {
            return false;
        }
    }
    let mut idx = Vec::new();
    for (px, py) in x.packed.iter().zip(&y.packed) {
        let k = px.arity;
        idx.clear();
        idx.resize(k, 0usize);
        'odometer: loop {
            if idx.contains(&m) {
                let tx = idx.iter().fold(0, |acc, &j| acc * x.universe + xs[j]);
                let ty = idx.iter().fold(0, |acc, &j| acc * y.universe + ys[j]);
                if px.row(tx) != py.row(ty) {
                    return false;
                }
            }
            for j in (0..k).rev() {
                idx[j] += 1;
                if idx[j] <= m {
                    continue 'odometer;
                }
                idx[j] = 0;
            }
            break;
        }
    }
    true
}

/// Groups `tuples` by atomic type, in order of first appearance; entries are indices into `tuples`.
pub(crate) fn atomic_buckets(a: &FiniteStructure, tuples: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut buckets: Vec<Vec<usize>> = Vec::new();
    for (i, t) in tuples.iter().enumerate() {
        match buckets
            .iter_mut()
            .find(|b| same_atomic_type(a, &tuples[b[0]], a, t))
        {
            Some(b) => b.push(i),
            None => buckets.push(vec![i]),
        }
    }
    buckets
}

/// Same quantifier-free type: equal length, equalities, and all relation atoms.
pub fn same_atomic_type(
    x: &FiniteStructure,
    xs: &[usize],
    y: &FiniteStructure,
    ys: &[usize],
) -> bool {
    if xs.len() != ys.len() {
        return false;
    }
    let nullary = x
        .relations
        .iter()
        .enumerate()
        .filter(|(_, r)| r.arity == 0)
        .all(|(i, _)| x.holds(i, &[]) == y.holds(i, &[]));
    nullary && (0..xs.len()).all(|m| new_atoms_agree(x, xs, y, ys, m))
}
