//! Named matroids used by the examples, the verification harness and the
//! test suites.

use crate::element_set::ElementSet;
use crate::matroid::{build_matroid, BuildOptions, Matroid, MatroidPresentation, RankedSet};

#[derive(Clone, Debug)]
pub struct NamedMatroid {
    pub name: String,
    pub matroid: Matroid,
}

fn named(name: impl Into<String>, matroid: Matroid) -> NamedMatroid {
    NamedMatroid {
        name: name.into(),
        matroid,
    }
}

pub fn graph(vertices: usize, edges: &[[usize; 2]]) -> Matroid {
    build_matroid(
        edges.len(),
        &MatroidPresentation::Graph {
            vertices,
            edges: edges.to_vec(),
        },
        BuildOptions::default(),
    )
    .expect("valid graph")
}

pub fn paving(n: usize, rank: usize, copoints: &[&[usize]]) -> Matroid {
    build_matroid(
        n,
        &MatroidPresentation::PavingCopoints {
            rank,
            copoints: copoints.iter().map(|c| c.to_vec()).collect(),
        },
        BuildOptions::default(),
    )
    .expect("valid paving matroid")
}

pub fn from_cyclic_flats(n: usize, flats: &[(&[usize], usize)]) -> Matroid {
    build_matroid(
        n,
        &MatroidPresentation::CyclicFlats {
            flats: flats
                .iter()
                .map(|&(s, rank)| RankedSet { set: s.to_vec(), rank })
                .collect(),
        },
        BuildOptions::default(),
    )
    .expect("valid cyclic-flat presentation")
}

pub fn complete_graph(v: usize) -> Matroid {
    let edges: Vec<[usize; 2]> = (0..v)
        .flat_map(|i| (i + 1..v).map(move |j| [i, j]))
        .collect();
    graph(v, &edges)
}

pub fn k4() -> Matroid {
    complete_graph(4)
}

pub fn k5() -> Matroid {
    complete_graph(5)
}

/// Two triangles sharing a vertex.
pub fn bowtie() -> Matroid {
    graph(5, &[[0, 1], [1, 2], [0, 2], [2, 3], [3, 4], [2, 4]])
}

/// Two disjoint three-point lines in rank 3.
pub fn twin_m() -> Matroid {
    paving(6, 3, &[&[0, 1, 2], &[3, 4, 5]])
}

/// Two three-point lines through the point 0, plus the free point 5.
pub fn twin_n() -> Matroid {
    paving(6, 3, &[&[0, 1, 2], &[0, 3, 4]])
}

pub fn twin_n_minus_x() -> Matroid {
    paving(5, 3, &[&[0, 1, 2], &[0, 3, 4]])
}

/// Rank 3 on seven elements with a parallel pair {5, 6} and four lines of
/// three points.
pub fn tutte_twin_m1() -> Matroid {
    from_cyclic_flats(
        7,
        &[
            (&[], 0),
            (&[5, 6], 1),
            (&[0, 2, 3], 2),
            (&[0, 1, 5, 6], 2),
            (&[2, 4, 5, 6], 2),
            (&[1, 3, 4], 2),
            (&[0, 1, 2, 3, 4, 5, 6], 3),
        ],
    )
}

/// Rank 3 on seven elements: a four-point line and a line through a parallel
/// pair {5, 6}, meeting at 0.
pub fn tutte_twin_m2() -> Matroid {
    from_cyclic_flats(
        7,
        &[
            (&[], 0),
            (&[5, 6], 1),
            (&[0, 2, 3, 4], 2),
            (&[0, 1, 5, 6], 2),
            (&[0, 1, 2, 3, 4, 5, 6], 3),
        ],
    )
}

pub const FANO_LINES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

pub fn fano() -> Matroid {
    let lines: Vec<&[usize]> = FANO_LINES.iter().map(|l| l.as_slice()).collect();
    paving(7, 3, &lines)
}

/// AG(3,2): eight points, fourteen four-point planes.
pub fn ag32() -> Matroid {
    let planes: Vec<Vec<usize>> = crate::element_set::k_subsets(8, 4)
        .filter(|s| s.iter().fold(0, |acc, e| acc ^ e) == 0)
        .map(|s| s.to_vec())
        .collect();
    let refs: Vec<&[usize]> = planes.iter().map(|p| p.as_slice()).collect();
    paving(8, 4, &refs)
}

pub fn vamos() -> Matroid {
    paving(
        8,
        4,
        &[
            &[0, 1, 2, 3],
            &[0, 1, 4, 5],
            &[0, 1, 6, 7],
            &[2, 3, 4, 5],
            &[2, 3, 6, 7],
        ],
    )
}

pub fn dowling3(table: Vec<Vec<usize>>) -> Matroid {
    let n = 3 + 3 * table.len();
    build_matroid(n, &MatroidPresentation::Dowling3 { table }, BuildOptions::default())
        .expect("valid group table")
}

pub fn cyclic_group_table(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect()
}

pub fn klein_four_table() -> Vec<Vec<usize>> {
    (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect()
}

fn u(r: usize, n: usize) -> Matroid {
    Matroid::uniform(r, n)
}

/// Sharp and improper free products with their factors, ground sets of at
/// most eight elements.
pub fn free_product_pairs() -> Vec<(String, Matroid, Matroid)> {
    let u12_u11 = u(1, 2).direct_sum(&u(1, 1));
    vec![
        ("U12*U12".into(), u(1, 2), u(1, 2)),
        ("U12*U13".into(), u(1, 2), u(1, 3)),
        ("U13*U12".into(), u(1, 3), u(1, 2)),
        ("U23*U12".into(), u(2, 3), u(1, 2)),
        ("U12*U23".into(), u(1, 2), u(2, 3)),
        ("U23*U23".into(), u(2, 3), u(2, 3)),
        ("U24*U12".into(), u(2, 4), u(1, 2)),
        ("U13*U24".into(), u(1, 3), u(2, 4)),
        ("(U12+U11)*U12".into(), u12_u11.clone(), u(1, 2)),
        ("U12*(U12+U01)".into(), u(1, 2), u(1, 2).direct_sum(&u(0, 1))),
        ("(U12+U11)*(U13+U12)".into(), u12_u11, u(1, 3).direct_sum(&u(1, 2))),
        ("(U12*U12)*U12".into(), u(1, 2).free_product(&u(1, 2)), u(1, 2)),
    ]
}

/// At least sixty matroids on at most eight elements.
pub fn small_corpus() -> Vec<NamedMatroid> {
    let mut out = Vec::new();
    for n in 0..=6 {
        for r in 0..=n {
            out.push(named(format!("U{r},{n}"), u(r, n)));
        }
    }
    out.push(named("M(K4)", k4()));
    out.push(named("bowtie", bowtie()));
    out.push(named("diamond", graph(4, &[[0, 1], [1, 2], [2, 3], [0, 3], [0, 2]])));
    out.push(named("K2,3", graph(5, &[[0, 2], [0, 3], [0, 4], [1, 2], [1, 3], [1, 4]])));
    out.push(named(
        "W4",
        graph(5, &[[0, 1], [0, 2], [0, 3], [0, 4], [1, 2], [2, 3], [3, 4], [1, 4]]),
    ));
    out.push(named("house", graph(5, &[[0, 1], [1, 2], [2, 3], [3, 4], [4, 0], [1, 4]])));
    out.push(named("loop+parallel", graph(3, &[[0, 1], [0, 1], [1, 2], [2, 2]])));
    out.push(named("K4 doubled edge", graph(4, &[[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3], [0, 1]])));
    out.push(named("triangle with pendant", graph(4, &[[0, 1], [1, 2], [0, 2], [2, 3]])));
    out.push(named("twin M", twin_m()));
    out.push(named("twin N", twin_n()));
    out.push(named("twin N\\x", twin_n_minus_x()));
    out.push(named("tutte twin M1", tutte_twin_m1()));
    out.push(named("tutte twin M2", tutte_twin_m2()));
    out.push(named("F7", fano()));
    let f7 = fano();
    out.push(named(
        "F7-",
        f7.relax(ElementSet::from_elements([0, 1, 2])).expect("Fano line is a circuit-hyperplane"),
    ));
    out.push(named("P6", paving(6, 3, &[&[0, 1, 2]])));
    out.push(named("Q6", paving(6, 3, &[&[0, 1, 2], &[2, 3, 4]])));
    out.push(named("R6", paving(6, 3, &[&[0, 1, 2], &[2, 3, 4], &[0, 4, 5]])));
    out.push(named("AG(3,2)", ag32()));
    out.push(named("Vamos", vamos()));
    out.push(named(
        "whirl W3",
        k4().relax(ElementSet::from_elements([0, 1, 3])).expect("triangle of K4"),
    ));
    out.push(named("P6 relaxed", paving(6, 3, &[&[0, 1, 2]]).relax(ElementSet::from_elements([0, 1, 2])).unwrap()));
    out.push(named("U23+U11", u(2, 3).direct_sum(&u(1, 1))));
    out.push(named("U12+U12", u(1, 2).direct_sum(&u(1, 2))));
    out.push(named("U11+U01", u(1, 1).direct_sum(&u(0, 1))));
    out.push(named("U13+U12", u(1, 3).direct_sum(&u(1, 2))));
    out.push(named("U23+U23", u(2, 3).direct_sum(&u(2, 3))));
    out.push(named("K4+U01", k4().direct_sum(&u(0, 1))));
    out.push(named("U24+U02", u(2, 4).direct_sum(&u(0, 2))));
    for (name, a, b) in free_product_pairs() {
        let p = a.free_product(&b);
        if p.size() <= 8 {
            out.push(named(name, p));
        }
    }
    out.push(named("Trun(M(K4))", k4().truncate().unwrap()));
    out.push(named("M(K4)+x", k4().free_extension()));
    out.push(named("Lift(U13)", u(1, 3).lift().unwrap()));
    out.push(named("bowtie*", bowtie().dual()));
    out.push(named("M1*", tutte_twin_m1().dual()));
    out.push(named("Q6 coext", paving(6, 3, &[&[0, 1, 2], &[2, 3, 4]]).free_coextension()));
    out.push(named("Trun(U23+U23)", u(2, 3).direct_sum(&u(2, 3)).truncate().unwrap()));
    out
}
