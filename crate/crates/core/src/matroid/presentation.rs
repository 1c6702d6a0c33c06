use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Matroid, AUTO_VALIDATE_LIMIT};
use crate::element_set::{k_subsets, ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// A set of elements with a declared rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedSet {
    pub set: Vec<usize>,
    pub rank: usize,
}

/// The ways a matroid can be written down. The ground-set size is supplied
/// separately (see [`build_matroid`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidPresentation {
    Bases {
        bases: Vec<Vec<usize>>,
    },
    Uniform {
        rank: usize,
    },
    /// Cycle matroid; the elements are the edges in list order. Self-loops
    /// are allowed and become matroid loops.
    Graph {
        vertices: usize,
        edges: Vec<[usize; 2]>,
    },
    /// Paving matroid of the given rank. `copoints` lists the dependent
    /// hyperplanes (sets of size at least `rank`); smaller sets are ignored.
    PavingCopoints {
        rank: usize,
        copoints: Vec<Vec<usize>>,
    },
    /// Rank function `r(X) = min (rank(F) + |X - F|)` over the listed pairs.
    CyclicFlats {
        flats: Vec<RankedSet>,
    },
    /// Rank-3 Dowling geometry over the group with this multiplication table.
    Dowling3 {
        table: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Copy, Debug, Default)]
pub struct BuildOptions {
    /// `None`: validate the exchange axiom iff `n <= 12`.
    pub validate: Option<bool>,
}

impl BuildOptions {
    fn validate(&self, n: usize) -> bool {
        self.validate.unwrap_or(n <= AUTO_VALIDATE_LIMIT)
    }
}

/// On-disk form of a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidFile {
    #[serde(default)]
    pub name: String,
    pub ground_set_size: usize,
    pub presentation: MatroidPresentation,
}

impl MatroidFile {
    pub fn build(&self, opts: BuildOptions) -> Result<Matroid> {
        build_matroid(self.ground_set_size, &self.presentation, opts)
    }

    /// A basis-list file for an explicit matroid.
    pub fn from_matroid(name: impl Into<String>, m: &Matroid) -> Self {
        MatroidFile {
            name: name.into(),
            ground_set_size: m.size(),
            presentation: MatroidPresentation::Bases {
                bases: m.bases().iter().map(|b| b.to_vec()).collect(),
            },
        }
    }
}

pub fn build_matroid(n: usize, p: &MatroidPresentation, opts: BuildOptions) -> Result<Matroid> {
    if n >= MAX_ELEMENTS {
        return Err(Error::InvalidInput(format!("ground set of size {n} is too large")));
    }
    let validate = opts.validate(n);
    match p {
        MatroidPresentation::Bases { bases } => {
            let sets = bases
                .iter()
                .map(|b| to_set(n, b))
                .collect::<Result<Vec<_>>>()?;
            Matroid::from_bases_with(n, sets, validate)
        }
        MatroidPresentation::Uniform { rank } => {
            if *rank > n {
                return Err(Error::InvalidInput(format!("U_{{{rank},{n}}} has rank above size")));
            }
            Ok(Matroid::uniform(*rank, n))
        }
        MatroidPresentation::Graph { vertices, edges } => graphic(n, *vertices, edges, validate),
        MatroidPresentation::PavingCopoints { rank, copoints } => paving(n, *rank, copoints, validate),
        MatroidPresentation::CyclicFlats { flats } => from_cyclic_flats(n, flats, validate),
        MatroidPresentation::Dowling3 { table } => dowling3(n, table, validate),
    }
}

fn to_set(n: usize, xs: &[usize]) -> Result<ElementSet> {
    let mut s = ElementSet::EMPTY;
    for &x in xs {
        if x >= n {
            return Err(Error::InvalidInput(format!("element {x} outside ground set of size {n}")));
        }
        if s.contains(x) {
            return Err(Error::InvalidInput(format!("element {x} repeated in {xs:?}")));
        }
        s = s.with(x);
    }
    Ok(s)
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Forest test by union-find.
fn is_forest(vertices: usize, edges: &[[usize; 2]], subset: ElementSet) -> bool {
    let mut parent: Vec<usize> = (0..vertices).collect();
    for e in subset.iter() {
        let [u, v] = edges[e];
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

fn graphic(n: usize, vertices: usize, edges: &[[usize; 2]], validate: bool) -> Result<Matroid> {
    if edges.len() != n {
        return Err(Error::InvalidInput(format!(
            "graph has {} edges but ground_set_size is {n}",
            edges.len()
        )));
    }
    if let Some(bad) = edges.iter().find(|[u, v]| *u >= vertices || *v >= vertices) {
        return Err(Error::InvalidInput(format!("edge {bad:?} uses a vertex >= {vertices}")));
    }
    let mut parent: Vec<usize> = (0..vertices).collect();
    let mut rank = 0;
    for &[u, v] in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            rank += 1;
        }
    }
    let bases: Vec<ElementSet> = k_subsets(n, rank)
        .filter(|&s| is_forest(vertices, edges, s))
        .collect();
    Matroid::from_bases_with(n, bases, validate)
}

fn paving(n: usize, rank: usize, copoints: &[Vec<usize>], validate: bool) -> Result<Matroid> {
    if rank > n {
        return Err(Error::InvalidInput(format!("rank {rank} exceeds size {n}")));
    }
    let big: Vec<ElementSet> = copoints
        .iter()
        .map(|c| to_set(n, c))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|c| c.len() >= rank)
        .collect();
    if rank >= 2 {
        for (i, a) in big.iter().enumerate() {
            for b in &big[i + 1..] {
                if a.intersection(*b).len() >= rank - 1 {
                    return Err(Error::InvalidInput(format!(
                        "copoints {a:?} and {b:?} share {} elements; a rank-{rank} paving \
                         matroid allows at most {}",
                        a.intersection(*b).len(),
                        rank - 2
                    )));
                }
            }
        }
    }
    let bases: Vec<ElementSet> = k_subsets(n, rank)
        .filter(|s| !big.iter().any(|c| s.is_subset(*c)))
        .collect();
    Matroid::from_bases_with(n, bases, validate)
}

fn from_cyclic_flats(n: usize, flats: &[RankedSet], validate: bool) -> Result<Matroid> {
    if flats.is_empty() {
        return Err(Error::InvalidInput("cyclic_flats presentation lists no sets".into()));
    }
    let pairs: Vec<(ElementSet, usize)> = flats
        .iter()
        .map(|f| Ok((to_set(n, &f.set)?, f.rank)))
        .collect::<Result<_>>()?;
    let rank_fn = |x: ElementSet| {
        pairs
            .iter()
            .map(|&(f, k)| k + x.difference(f).len())
            .min()
            .expect("nonempty")
    };
    let r = rank_fn(ElementSet::full(n));
    if r > n {
        return Err(Error::InvalidInput("listed ranks exceed the set sizes".into()));
    }
    let bases: Vec<ElementSet> = k_subsets(n, r).filter(|&s| rank_fn(s) == r).collect();
    let m = Matroid::from_bases_with(n, bases, validate)?;
    if validate {
        for &(f, k) in &pairs {
            if m.rank_of(f) != k {
                return Err(Error::NotAMatroid(format!(
                    "listed rank {k} of {f:?} disagrees with the induced rank {}",
                    m.rank_of(f)
                )));
            }
        }
    }
    Ok(m)
}

fn check_group(table: &[Vec<usize>]) -> Result<usize> {
    let k = table.len();
    let bad = |msg: String| Err(Error::InvalidInput(format!("group table: {msg}")));
    if k == 0 {
        return bad("empty".into());
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != k {
            return bad(format!("row {i} has length {}", row.len()));
        }
        let distinct: BTreeSet<usize> = row.iter().copied().collect();
        if distinct.len() != k || row.iter().any(|&x| x >= k) {
            return bad(format!("row {i} is not a permutation of 0..{k}"));
        }
    }
    for j in 0..k {
        let distinct: BTreeSet<usize> = table.iter().map(|row| row[j]).collect();
        if distinct.len() != k {
            return bad(format!("column {j} is not a permutation of 0..{k}"));
        }
    }
    let Some(e) = (0..k).find(|&e| (0..k).all(|a| table[e][a] == a && table[a][e] == a)) else {
        return bad("no identity element".into());
    };
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return bad(format!("not associative at ({a}, {b}, {c})"));
                }
            }
        }
    }
    Ok(e)
}

fn dowling3(n: usize, table: &[Vec<usize>], validate: bool) -> Result<Matroid> {
    let identity = check_group(table)?;
    let k = table.len();
    if n != 3 + 3 * k {
        return Err(Error::InvalidInput(format!(
            "Q_3 over a group of order {k} has {} elements, not {n}",
            3 + 3 * k
        )));
    }
    let inverse: Vec<usize> = (0..k)
        .map(|a| (0..k).find(|&b| table[a][b] == identity).expect("latin square"))
        .collect();
    // p_i -> i; a_{ij} (i < j) -> 3 + pair(i, j) * k + a; a_{ji} = (a^{-1})_{ij}
    let pair = |i: usize, j: usize| match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        _ => unreachable!(),
    };
    let elem = |i: usize, j: usize, a: usize| {
        if i < j {
            3 + pair(i, j) * k + a
        } else {
            3 + pair(j, i) * k + inverse[a]
        }
    };
    let mut lines: BTreeSet<ElementSet> = BTreeSet::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let line = (0..k)
            .map(|a| elem(i, j, a))
            .chain([i, j])
            .collect::<ElementSet>();
        lines.insert(line);
    }
    for (i, j, l) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)] {
        for a in 0..k {
            for b in 0..k {
                lines.insert(ElementSet::from_elements([
                    elem(i, j, a),
                    elem(j, l, b),
                    elem(i, l, table[a][b]),
                ]));
            }
        }
    }
    let lines: Vec<Vec<usize>> = lines.into_iter().map(|l| l.to_vec()).collect();
    paving(n, 3, &lines, validate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(n: usize, p: MatroidPresentation) -> Result<Matroid> {
        build_matroid(n, &p, BuildOptions::default())
    }

    #[test]
    fn uniform_presentation() {
        let m = build(3, MatroidPresentation::Uniform { rank: 2 }).unwrap();
        assert_eq!(m.bases().len(), 3);
        assert!(m.bases().iter().all(|b| b.len() == 2));
        assert!(build(3, MatroidPresentation::Uniform { rank: 4 }).is_err());
    }

    #[test]
    fn k4_has_sixteen_spanning_trees() {
        let edges = vec![[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
        let m = build(6, MatroidPresentation::Graph { vertices: 4, edges: edges.clone() }).unwrap();
        assert_eq!(m.bases().len(), 16);
        // independent oracle: count 3-edge subsets touching all 4 vertices without a cycle
        let trees = k_subsets(6, 3)
            .filter(|s| {
                let mut touched = 0u32;
                for e in s.iter() {
                    touched |= 1 << edges[e][0] | 1 << edges[e][1];
                }
                touched == 0b1111
            })
            .count();
        assert_eq!(trees, 16);
    }

    #[test]
    fn graph_loops_and_size_mismatch() {
        let m = build(2, MatroidPresentation::Graph { vertices: 1, edges: vec![[0, 0], [0, 0]] }).unwrap();
        assert_eq!(m.rank(), 0);
        assert!(build(3, MatroidPresentation::Graph { vertices: 2, edges: vec![[0, 1]] }).is_err());
        assert!(build(1, MatroidPresentation::Graph { vertices: 1, edges: vec![[0, 4]] }).is_err());
    }

    #[test]
    fn paving_presentation_checks_overlaps() {
        let ok = build(
            6,
            MatroidPresentation::PavingCopoints { rank: 3, copoints: vec![vec![0, 1, 2], vec![3, 4, 5]] },
        )
        .unwrap();
        assert_eq!(ok.bases().len(), 18);
        let bad = build(
            5,
            MatroidPresentation::PavingCopoints { rank: 3, copoints: vec![vec![0, 1, 2], vec![0, 1, 3]] },
        );
        assert!(matches!(bad, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn cyclic_flat_presentation_of_twin() {
        let flats = vec![
            RankedSet { set: vec![], rank: 0 },
            RankedSet { set: vec![0, 1, 2], rank: 2 },
            RankedSet { set: vec![3, 4, 5], rank: 2 },
            RankedSet { set: (0..6).collect(), rank: 3 },
        ];
        let m = build(6, MatroidPresentation::CyclicFlats { flats }).unwrap();
        assert_eq!(m, crate::corpus::twin_m());
        let bad = vec![
            RankedSet { set: vec![], rank: 0 },
            RankedSet { set: vec![0, 1], rank: 2 },
            RankedSet { set: vec![0, 1, 2], rank: 1 },
        ];
        assert!(build(3, MatroidPresentation::CyclicFlats { flats: bad }).is_err());
    }

    #[test]
    fn dowling_over_trivial_group_is_k4() {
        let m = build(6, MatroidPresentation::Dowling3 { table: vec![vec![0]] }).unwrap();
        assert_eq!(m.bases().len(), 16);
        assert_eq!(m.flats_of_rank(2).unwrap().iter().filter(|l| l.len() == 3).count(), 4);
    }

    #[test]
    fn dowling_rejects_bad_tables() {
        let not_latin = MatroidPresentation::Dowling3 { table: vec![vec![0, 0], vec![1, 1]] };
        assert!(build(9, not_latin).is_err());
        let wrong_size = MatroidPresentation::Dowling3 { table: vec![vec![0, 1], vec![1, 0]] };
        assert!(build(8, wrong_size).is_err());
        // latin square without associativity (order-5 quasigroup-ish): identity 0
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(build(18, MatroidPresentation::Dowling3 { table: t }).is_err());
    }

    #[test]
    fn json_shape() {
        let p: MatroidPresentation =
            serde_json::from_str(r#"{"kind":"graph","vertices":3,"edges":[[0,1],[1,2],[0,2]]}"#).unwrap();
        assert_eq!(build(3, p).unwrap(), Matroid::uniform(2, 3));
        assert!(serde_json::from_str::<MatroidPresentation>(r#"{"kind":"uniform","rank":1,"x":2}"#).is_err());
    }
}
