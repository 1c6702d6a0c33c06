//! Pinchpoints of cyclic-flat lattices and detection of free products from
//! the G-invariant.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::configuration::Configuration;
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::ginvariant::{catenary_from_g, CatenaryData, GInvariant};
use crate::matroid::Matroid;
use crate::parameters::{flat_count, flat_counts_by_coloops, g_split_at_unique_flat};

/// Interior nodes comparable with every node.
pub fn pinchpoints(c: &Configuration) -> Vec<usize> {
    let k = c.len();
    (1..k.saturating_sub(1))
        .filter(|&i| (0..k).all(|j| c.leq(i, j) || c.leq(j, i)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub rank: usize,
    pub size: usize,
    pub left: GInvariant,
    pub right: GInvariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationReport {
    pub is_proper: bool,
    pub factors: Vec<Factor>,
}

/// `table[k][s]` = number of cyclic flats of rank k and size s.
fn cyclic_flat_table(c: &CatenaryData) -> Result<Vec<Vec<BigInt>>> {
    (0..=c.r())
        .map(|k| {
            (0..=c.n())
                .map(|s| Ok(flat_counts_by_coloops(c, k, s)?.swap_remove(0)))
                .collect()
        })
        .collect()
}

fn cyclic_flat_total(c: &CatenaryData) -> Result<BigInt> {
    Ok(cyclic_flat_table(c)?.into_iter().flatten().sum())
}

/// Finds every sharp free-product factorization visible in 𝒢(M).
pub fn detect_free_product(g: &GInvariant) -> Result<FactorizationReport> {
    let c = catenary_from_g(g)?;
    let r = c.r();
    let table = cyclic_flat_table(&c)?;
    let per_rank: Vec<BigInt> = table.iter().map(|row| row.iter().sum()).collect();
    let mut factors = Vec::new();
    for k in 1..r {
        if !per_rank[k].is_one() {
            continue;
        }
        if per_rank[k + 1..].iter().all(|x| x.is_zero()) {
            // The greatest cyclic flat is never a pinchpoint.
            continue;
        }
        let s0 = table[k].iter().position(|x| x.is_one()).expect("one cyclic flat at this rank");
        if !flat_count(&c, k, s0)?.is_one() {
            continue;
        }
        let (left, right) = g_split_at_unique_flat(g, k, s0)?;
        let at_most: BigInt = per_rank[..=k].iter().sum();
        let at_least: BigInt = per_rank[k..].iter().sum();
        if cyclic_flat_total(&catenary_from_g(&left)?)? == at_most
            && cyclic_flat_total(&catenary_from_g(&right)?)? == at_least
        {
            factors.push(Factor {
                rank: k,
                size: s0,
                left,
                right,
            });
        }
    }
    Ok(FactorizationReport {
        is_proper: !factors.is_empty(),
        factors,
    })
}

/// Splits M at a pinchpoint X into (M|X, M/X).
pub fn factor_at_pinchpoint(m: &Matroid, x: ElementSet) -> Result<(Matroid, Matroid)> {
    let z = m.cyclic_flats();
    let is_pinch = z.index_of(x).is_some_and(|i| z.pinchpoints().contains(&i));
    if !is_pinch {
        return Err(Error::Precondition(format!("{x:?} is not a pinchpoint of the cyclic flats")));
    }
    let (left, right) = (m.restriction(x), m.contraction(x));
    let mut perm = vec![0; m.size()];
    for (i, e) in x.iter().chain(m.ground().difference(x).iter()).enumerate() {
        perm[e] = i;
    }
    if left.free_product(&right) != m.relabel(&perm)? {
        return Err(Error::IdentityFailed("the factors do not reassemble the matroid".into()));
    }
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::configuration_of;
    use crate::corpus;
    use crate::ginvariant::g_invariant;

    fn g(s: &str) -> GInvariant {
        s.parse().unwrap()
    }

    #[test]
    fn pinchpoint_nodes() {
        let u12 = Matroid::uniform(1, 2);
        let fp = u12.free_product(&u12);
        let c = configuration_of(&fp).unwrap();
        assert_eq!(pinchpoints(&c), vec![1]);
        assert_eq!((c.node(1).s, c.node(1).rho), (2, 1));
        assert!(pinchpoints(&configuration_of(&corpus::twin_n()).unwrap()).is_empty());
        assert!(pinchpoints(&configuration_of(&Matroid::uniform(2, 4)).unwrap()).is_empty());
    }

    #[test]
    fn detection() {
        let rep = detect_free_product(&g("20[1100]+4[1010]")).unwrap();
        assert!(rep.is_proper);
        assert_eq!(
            rep.factors,
            vec![Factor {
                rank: 1,
                size: 2,
                left: g("2[10]"),
                right: g("2[10]")
            }]
        );
        assert!(!detect_free_product(&g_invariant(&corpus::twin_n())).unwrap().is_proper);
        assert!(!detect_free_product(&g_invariant(&corpus::k4())).unwrap().is_proper);
        let with_coloop = Matroid::uniform(1, 2).direct_sum(&Matroid::uniform(1, 1));
        assert!(!detect_free_product(&g_invariant(&with_coloop)).unwrap().is_proper);
    }

    #[test]
    fn factoring() {
        let u12 = Matroid::uniform(1, 2);
        let fp = u12.free_product(&u12);
        let (a, b) = factor_at_pinchpoint(&fp, ElementSet::from_elements([0, 1])).unwrap();
        assert_eq!((a, b), (u12.clone(), u12));
        assert!(factor_at_pinchpoint(&fp, ElementSet::from_elements([0])).is_err());
        assert!(factor_at_pinchpoint(&fp, ElementSet::EMPTY).is_err());
    }
}
