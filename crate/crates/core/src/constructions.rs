//! Constructions applied directly to invariants.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::element_set::{k_subsets, ElementSet};
use crate::error::{Error, Result};
use crate::ginvariant::{g_from_catenary, g_invariant, CatenaryData, Composition, GInvariant, RankSequence};
use crate::matroid::Matroid;
use crate::numeric::factorial;

fn map_symbols(g: &GInvariant, n: usize, r: usize, f: impl Fn(RankSequence) -> RankSequence) -> GInvariant {
    let mut out = GInvariant::zero(n, r);
    for (s, c) in g.terms() {
        out.add_term(f(*s), c.clone());
    }
    out
}

/// Reversed complement of every symbol.
pub fn g_dual(g: &GInvariant) -> GInvariant {
    map_symbols(g, g.n(), g.n() - g.r(), RankSequence::dual)
}

pub fn g_truncate(g: &GInvariant) -> Result<GInvariant> {
    if g.r() == 0 {
        return Err(Error::Precondition("truncation needs positive rank".into()));
    }
    Ok(map_symbols(g, g.n(), g.r() - 1, |s| s.demote().expect("weight is positive")))
}

pub fn g_lift(g: &GInvariant) -> Result<GInvariant> {
    if g.r() >= g.n() {
        return Err(Error::Precondition("lift needs a circuit (rank below size)".into()));
    }
    Ok(map_symbols(g, g.n(), g.r() + 1, |s| s.promote().expect("a zero is present")))
}

/// Truncation in γ-coordinates: ν(a) contributes a_{r−1}/(a_{r−1}+a_r) of a flag
/// to (a_0, ..., a_{r−2}, a_{r−1}+a_r), since the copoints above X_{r−2}
/// partition E − X_{r−2}.
pub fn cat_truncate(c: &CatenaryData) -> Result<CatenaryData> {
    let (n, r) = (c.n(), c.r());
    if r == 0 {
        return Err(Error::Precondition("truncation needs positive rank".into()));
    }
    if r == 1 {
        return Ok(if c.is_empty() {
            CatenaryData::zero(n, 0)
        } else {
            CatenaryData::single(Composition::new(vec![n])?, BigInt::one())
        });
    }
    let mut acc: HashMap<Vec<usize>, BigRational> = HashMap::new();
    for (a, k) in c.terms() {
        let p = a.parts();
        let (x, y) = (p[r - 1], p[r]);
        let mut merged = p[..r - 1].to_vec();
        merged.push(x + y);
        *acc.entry(merged).or_insert_with(BigRational::zero) +=
            BigRational::new(k * x, BigInt::from(x + y));
    }
    let mut out = CatenaryData::zero(n, r - 1);
    for (parts, v) in acc {
        if !v.is_integer() {
            return Err(Error::NonIntegral(format!("truncated flag count at {parts:?} is {v}")));
        }
        out.add(Composition::new(parts)?, v.to_integer());
    }
    Ok(out)
}

/// Symbols of all shuffles of `s` and `t`, with the interleaving counted once each.
fn shuffle_words(s: RankSequence, t: RankSequence, mut emit: impl FnMut(RankSequence)) {
    let (n1, n) = (s.len(), s.len() + t.len());
    for p in k_subsets(n, n1) {
        let (mut i, mut j) = (0, 0);
        let mut w = RankSequence::empty();
        for pos in 0..n {
            if p.contains(pos) {
                w = w.push(s.get(i));
                i += 1;
            } else {
                w = w.push(t.get(j));
                j += 1;
            }
        }
        emit(w);
    }
}

pub fn g_shuffle(g1: &GInvariant, g2: &GInvariant) -> GInvariant {
    let mut out = GInvariant::zero(g1.n() + g2.n(), g1.r() + g2.r());
    for (s, c1) in g1.terms() {
        for (t, c2) in g2.terms() {
            let c = c1 * c2;
            let mut counts: HashMap<RankSequence, u64> = HashMap::new();
            shuffle_words(*s, *t, |w| *counts.entry(w).or_default() += 1);
            for (w, k) in counts {
                out.add_term(w, &c * k);
            }
        }
    }
    out
}

/// Catenary data of a direct sum: loop counts add, the remaining parts shuffle.
pub fn cat_direct_sum(c1: &CatenaryData, c2: &CatenaryData) -> CatenaryData {
    let (r1, r2) = (c1.r(), c2.r());
    let mut out = CatenaryData::zero(c1.n() + c2.n(), r1 + r2);
    for (a, ka) in c1.terms() {
        for (b, kb) in c2.terms() {
            let k = ka * kb;
            for p in k_subsets(r1 + r2, r1) {
                let mut parts = vec![a.parts()[0] + b.parts()[0]];
                let (mut i, mut j) = (1, 1);
                for pos in 0..r1 + r2 {
                    if p.contains(pos) {
                        parts.push(a.parts()[i]);
                        i += 1;
                    } else {
                        parts.push(b.parts()[j]);
                        j += 1;
                    }
                }
                out.add(Composition::from_parts_unchecked(parts), k.clone());
            }
        }
    }
    out
}

pub fn g_add_coloop(g: &GInvariant) -> GInvariant {
    g_shuffle(g, &GInvariant::single(RankSequence::from_bits([true]), BigInt::one()))
}

pub fn g_add_loop(g: &GInvariant) -> GInvariant {
    g_shuffle(g, &GInvariant::single(RankSequence::from_bits([false]), BigInt::one()))
}

/// Rewrites γ(h, a_1, ..., a_r) as γ(0, a_1, ..., a_r).
pub fn cat_strip_loops(c: &CatenaryData, h: usize) -> Result<CatenaryData> {
    if h > c.n() {
        return Err(Error::Precondition(format!("cannot strip {h} loops from {} elements", c.n())));
    }
    let mut out = CatenaryData::zero(c.n() - h, c.r());
    for (a, k) in c.terms() {
        if a.parts()[0] != h {
            return Err(Error::Precondition(format!("{a} does not start with {h} loops")));
        }
        let mut parts = a.parts().to_vec();
        parts[0] = 0;
        out.add(Composition::from_parts_unchecked(parts), k.clone());
    }
    Ok(out)
}

/// Rewrites γ(0, a_1, ..., a_r) as γ(h, a_1, ..., a_r).
pub fn cat_add_loops(c: &CatenaryData, h: usize) -> Result<CatenaryData> {
    let mut out = CatenaryData::zero(c.n() + h, c.r());
    for (a, k) in c.terms() {
        if a.parts()[0] != 0 {
            return Err(Error::Precondition(format!("{a} is not loopless")));
        }
        let mut parts = a.parts().to_vec();
        parts[0] = h;
        out.add(Composition::new(parts)?, k.clone());
    }
    Ok(out)
}

fn insert_everywhere(g: &GInvariant, bit: bool, r: usize, f: impl Fn(RankSequence) -> RankSequence) -> GInvariant {
    let mut out = GInvariant::zero(g.n() + 1, r);
    for (s, c) in g.terms() {
        for pos in 0..=s.len() {
            out.add_term(f(s.insert(pos, bit)), c.clone());
        }
    }
    out
}

pub fn g_free_extension(g: &GInvariant) -> GInvariant {
    insert_everywhere(g, true, g.r(), |s| s.demote().expect("a one was inserted"))
}

pub fn g_free_coextension(g: &GInvariant) -> GInvariant {
    insert_everywhere(g, false, g.r() + 1, |s| s.promote().expect("a zero was inserted"))
}

/// Rank sequence of the interleaving that puts the elements of the first
/// ordering at the (0-based) positions in `p`, replaying
/// r(X1 ∪ X2) = min{r1(E1) + r2(X2), r1(X1) + |X2|}.
pub fn free_product_rank_sequence(s1: RankSequence, s2: RankSequence, p: ElementSet) -> RankSequence {
    let n = s1.len() + s2.len();
    let r1 = s1.weight();
    let (mut i, mut j, mut prev) = (0, 0, 0);
    let mut w = RankSequence::empty();
    for pos in 0..n {
        if p.contains(pos) {
            i += 1;
        } else {
            j += 1;
        }
        let rank = (r1 + s2.prefix_weight(j)).min(s1.prefix_weight(i) + j);
        w = w.push(rank > prev);
        prev = rank;
    }
    w
}

pub fn g_free_product(g1: &GInvariant, g2: &GInvariant) -> GInvariant {
    let (n1, n) = (g1.n(), g1.n() + g2.n());
    let positions: Vec<ElementSet> = k_subsets(n, n1).collect();
    let pairs: Vec<_> = g1
        .terms()
        .flat_map(|a| g2.terms().map(move |b| (a, b)))
        .collect();
    let partials: Vec<GInvariant> = pairs
        .par_iter()
        .map(|((s, c1), (t, c2))| {
            let mut counts: HashMap<RankSequence, u64> = HashMap::new();
            for &p in &positions {
                *counts.entry(free_product_rank_sequence(**s, **t, p)).or_default() += 1;
            }
            let c = *c1 * *c2;
            let mut part = GInvariant::zero(n, g1.r() + g2.r());
            for (w, k) in counts {
                part.add_term(w, &c * k);
            }
            part
        })
        .collect();
    let mut out = GInvariant::zero(n, g1.r() + g2.r());
    for p in &partials {
        out += p;
    }
    out
}

/// The q-cone transformation of the catenary data of a simple matroid.
/// The output is formal when q is not a prime power.
pub fn cat_qcone(c: &CatenaryData, q: usize) -> Result<CatenaryData> {
    if q < 2 {
        return Err(Error::Precondition(format!("q-cone needs q >= 2, got {q}")));
    }
    let (n, r) = (c.n(), c.r());
    for (a, _) in c.terms() {
        let p = a.parts();
        if p[0] != 0 || (r >= 1 && p[1] != 1) {
            return Err(Error::Precondition(format!("{a} is not the composition of a simple matroid")));
        }
    }
    let mut out = CatenaryData::zero(q * n + 1, r + 1);
    for (a, k) in c.terms() {
        let p = a.parts();
        let mut prefix = 0;
        let mut weight = BigInt::one();
        for j in 1..=r + 1 {
            prefix += p[j - 1];
            let mut parts = p[..j].to_vec();
            parts.push(prefix * (q - 1) + 1);
            parts.extend(p[j..].iter().map(|&x| x * q));
            out.add(Composition::new(parts)?, k * &weight);
            weight *= q;
        }
    }
    Ok(out)
}

/// Catenary form of a relaxation delta; None when r = 0 or r = n.
fn relax_delta_catenary(n: usize, r: usize) -> Option<CatenaryData> {
    if r == 0 || r >= n {
        return None;
    }
    let mut d = CatenaryData::zero(n, r);
    if r == 1 {
        d.add(Composition::from_parts_unchecked(vec![0, n]), BigInt::one());
        d.add(Composition::from_parts_unchecked(vec![1, n - 1]), -BigInt::one());
    } else {
        let rf = factorial(r);
        let mut up = vec![0];
        up.extend(std::iter::repeat_n(1, r - 1));
        up.push(n - r + 1);
        let mut down = vec![0];
        down.extend(std::iter::repeat_n(1, r - 2));
        down.push(2);
        down.push(n - r);
        d.add(Composition::from_parts_unchecked(up), rf.clone());
        d.add(Composition::from_parts_unchecked(down), -(rf / BigInt::from(2)));
    }
    Some(d)
}

/// 𝒢 after relaxing one circuit-hyperplane:
/// adds r!(n−r)!([1^r 0^(n−r)] − [1^(r−1) 0 1 0^(n−r−1)]).
pub fn g_relax(g: &GInvariant) -> Result<GInvariant> {
    let (n, r) = (g.n(), g.r());
    let d_cat = relax_delta_catenary(n, r)
        .ok_or_else(|| Error::Precondition(format!("no circuit-hyperplane exists with n={n}, r={r}")))?;
    let k = factorial(r) * factorial(n - r);
    let top = RankSequence::ones_then_zeros(r, n);
    let lowered = RankSequence::from_bits((0..n).map(|i| i + 1 < r || i == r));
    let mut delta = GInvariant::zero(n, r);
    delta.add_term(top, k.clone());
    delta.add_term(lowered, -k.clone());
    if g_from_catenary(&d_cat) != delta {
        return Err(Error::IdentityFailed("relaxation delta differs between bases".into()));
    }
    if g.coeff(&lowered) < k {
        return Err(Error::Negative(format!(
            "coefficient of [{lowered}] would become {}; the input has no circuit-hyperplane",
            g.coeff(&lowered) - &k
        )));
    }
    Ok(g + &delta)
}

/// Catenary data after relaxing one circuit-hyperplane.
pub fn cat_relax(c: &CatenaryData) -> Result<CatenaryData> {
    let d = relax_delta_catenary(c.n(), c.r())
        .ok_or_else(|| Error::Precondition(format!("no circuit-hyperplane exists with n={}, r={}", c.n(), c.r())))?;
    let mut out = c.clone();
    out += &d;
    if out.has_negative() {
        return Err(Error::Negative("relaxed catenary data; the input has no circuit-hyperplane".into()));
    }
    Ok(out)
}

fn append_symbol(g: &GInvariant, bit: bool) -> GInvariant {
    map_symbols(g, g.n() + 1, g.r() + bit as usize, |s| s.push(bit))
}

fn prepend_symbol(g: &GInvariant, bit: bool) -> GInvariant {
    map_symbols(g, g.n() + 1, g.r() + bit as usize, |s| s.insert(0, bit))
}

/// Checks the single-element deletion and contraction sums for 𝒢(M).
pub fn dc_sum_check(m: &Matroid) -> Result<bool> {
    if m.size() == 0 {
        return Err(Error::Precondition("the deletion/contraction sums need n >= 1".into()));
    }
    let g = g_invariant(m);
    let coloops = m.coloops();
    let loops = m.loops();
    let mut del = GInvariant::zero(m.size(), m.rank());
    let mut con = GInvariant::zero(m.size(), m.rank());
    for a in 0..m.size() {
        del += &append_symbol(&g_invariant(&m.delete_element(a)), coloops.contains(a));
        con += &prepend_symbol(&g_invariant(&m.contract_element(a)), !loops.contains(a));
    }
    if del != g {
        return Err(Error::IdentityFailed(format!("deletion sum gives {del}, expected {g}")));
    }
    if con != g {
        return Err(Error::IdentityFailed(format!("contraction sum gives {con}, expected {g}")));
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ginvariant::{catenary, g_brute_force};

    fn g(s: &str) -> GInvariant {
        s.parse().unwrap()
    }

    fn cat(terms: &[(&[usize], i64)]) -> CatenaryData {
        CatenaryData::from_counts(terms.iter().map(|&(p, k)| (p, k))).unwrap()
    }

    #[test]
    fn dual_and_rank_moves() {
        assert_eq!(g_dual(&g("4[110]+2[101]")), g("4[100]+2[010]"));
        assert_eq!(g_dual(&g("2[10]")), g("2[10]"));
        assert_eq!(g_truncate(&g("6[110]")).unwrap(), g("6[100]"));
        assert!(g_truncate(&g("2[00]")).is_err());
        assert!(g_lift(&g("2[11]")).is_err());
        let u13 = Matroid::uniform(1, 3);
        assert_eq!(
            g_lift(&g_invariant(&u13)).unwrap(),
            g_invariant(&u13.lift().unwrap())
        );
    }

    #[test]
    fn truncation_in_both_bases() {
        let k4 = catenary(&corpus::k4());
        assert_eq!(cat_truncate(&k4).unwrap(), cat(&[(&[0, 1, 5], 6)]));
        assert_eq!(cat_truncate(&k4).unwrap(), catenary(&corpus::k4().truncate().unwrap()));
        for m in corpus::small_corpus().iter().filter(|m| m.matroid.rank() >= 1) {
            let c = catenary(&m.matroid);
            assert_eq!(
                g_from_catenary(&cat_truncate(&c).unwrap()),
                g_truncate(&g_from_catenary(&c)).unwrap(),
                "{}",
                m.name
            );
        }
    }

    #[test]
    fn shuffles_and_sums() {
        assert_eq!(g_shuffle(&g("[1]"), &g("[1]")), g("2[11]"));
        let u23 = g_invariant(&Matroid::uniform(2, 3));
        let u11 = g_invariant(&Matroid::uniform(1, 1));
        let sum = Matroid::uniform(2, 3).direct_sum(&Matroid::uniform(1, 1));
        assert_eq!(g_shuffle(&u23, &u11), g_invariant(&sum));
        assert_eq!(
            cat_direct_sum(&catenary(&Matroid::uniform(2, 3)), &catenary(&Matroid::uniform(1, 1))),
            cat(&[(&[0, 1, 1, 2], 6), (&[0, 1, 2, 1], 3)])
        );
        assert_eq!(
            cat_direct_sum(&catenary(&Matroid::uniform(0, 2)), &catenary(&Matroid::uniform(1, 1))),
            cat(&[(&[2, 1], 1)])
        );
    }

    #[test]
    fn loops_and_coloops() {
        assert_eq!(g_add_coloop(&g("2[10]")), g("4[110]+2[101]"));
        assert_eq!(g_add_loop(&g("[1]")), g("[01]+[10]"));
        assert_eq!(cat_strip_loops(&cat(&[(&[2, 1], 1)]), 2).unwrap(), cat(&[(&[0, 1], 1)]));
        assert!(cat_strip_loops(&cat(&[(&[1, 2], 1)]), 2).is_err());
        assert_eq!(cat_add_loops(&cat(&[(&[0, 1], 1)]), 2).unwrap(), cat(&[(&[2, 1], 1)]));
    }

    #[test]
    fn free_extension_examples() {
        assert_eq!(
            g_free_extension(&g("96[11100]+24[11010]")),
            g("648[111000]+72[110100]")
        );
        assert_eq!(g_free_extension(&g("[1]")), g("2[10]"));
    }

    #[test]
    fn free_product_examples() {
        let w = free_product_rank_sequence(
            "101".parse().unwrap(),
            "10010".parse().unwrap(),
            ElementSet::from_elements([2, 3, 4]),
        );
        assert_eq!(w.to_string(), "11100010");
        assert_eq!(g_free_product(&g("2[10]"), &g("2[10]")), g("20[1100]+4[1010]"));
        let m = Matroid::uniform(1, 2).free_product(&Matroid::uniform(1, 2));
        assert_eq!(g_brute_force(&m).unwrap(), g("20[1100]+4[1010]"));
    }

    #[test]
    fn qcone_examples() {
        assert_eq!(cat_qcone(&catenary(&Matroid::uniform(1, 1)), 2).unwrap(), cat(&[(&[0, 1, 2], 3)]));
        let fig = catenary(&corpus::twin_m());
        let cone = cat_qcone(&fig, 5).unwrap();
        assert_eq!(
            cone,
            cat(&[
                (&[0, 1, 5, 10, 15], 36),
                (&[0, 1, 5, 5, 20], 108),
                (&[0, 1, 2, 13, 15], 150),
                (&[0, 1, 1, 9, 20], 450),
                (&[0, 1, 2, 3, 25], 750),
                (&[0, 1, 1, 4, 25], 2250),
            ])
        );
        assert_eq!(cone.total(), fig.total() * (1 + 5 + 25 + 125));
        assert!(cat_qcone(&catenary(&Matroid::uniform(1, 2)), 2).is_err());
    }

    #[test]
    fn relaxation() {
        assert_eq!(g_relax(&g("4[110]+2[101]")).unwrap(), g("6[110]"));
        assert!(matches!(g_relax(&g("6[110]")), Err(Error::Negative(_))));
        let c = catenary(&Matroid::uniform(1, 2).direct_sum(&Matroid::uniform(1, 1)));
        assert_eq!(cat_relax(&c).unwrap(), catenary(&Matroid::uniform(2, 3)));
    }

    #[test]
    fn deletion_contraction_sums() {
        assert!(dc_sum_check(&corpus::k4()).unwrap());
        assert!(dc_sum_check(&Matroid::uniform(2, 4)).unwrap());
        assert!(dc_sum_check(&Matroid::uniform(0, 1)).unwrap());
    }
}
