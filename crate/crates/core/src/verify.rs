//! Cross-checks every derived path against direct computation on one matroid.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::configuration::{catenary_from_config, configuration_of, independent_copoint_count};
use crate::constructions::{dc_sum_check, g_dual, g_free_coextension, g_free_extension, g_lift, g_relax, g_truncate};
use crate::error::Result;
use crate::freeproduct::{detect_free_product, factor_at_pinchpoint};
use crate::ginvariant::{
    catenary, catenary_by_copoint_recursion, catenary_from_g, g_brute_force_with_limit, g_from_catenary, g_invariant,
    tutte_brute_force_with_limit, tutte_from_g, GInvariant,
};
use crate::matroid::{Matroid, SetFamily};
use crate::parameters::{chain_count, family_counts, flat_count, flat_counts_by_coloops, has_spanning_circuit, FamilyKind, SizeChainSpec};
use crate::reconstruction::{
    circuit_deck, circuit_deck_reconstruct, circuit_deck_reconstruct_with_size, copoint_deck, h_sums, rank_k_deck,
    recover_n, reconstruct_from_copoint_deck, reconstruct_from_copoint_deck_with_size, slice_assemble,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub r: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Failed)
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<Option<String>>) {
        let (status, detail) = match f() {
            Ok(None) => (Status::Passed, None),
            Ok(Some(why)) => (Status::Failed, Some(why)),
            Err(e) => (Status::Failed, Some(e.to_string())),
        };
        self.checks.push(Check {
            name: name.into(),
            status,
            detail,
        });
    }

    fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::Skipped,
            detail: Some(why.into()),
        });
    }
}

fn same<T: PartialEq + std::fmt::Display>(got: T, want: T) -> Option<String> {
    (got != want).then(|| format!("got {got}, expected {want}"))
}

fn same_g(got: &GInvariant, want: &GInvariant) -> Option<String> {
    same(got, want)
}

/// Runs the identity suite; `deep` adds constructions, parameters,
/// configurations and free products.
pub fn verify(m: &Matroid, deep: bool, oracle_limit: usize) -> VerifyReport {
    let (n, r) = (m.size(), m.rank());
    let mut rec = Recorder { checks: Vec::new() };
    let cat = catenary(m);
    let g = g_from_catenary(&cat);

    rec.check("catenary: flags = copoint recursion", || {
        Ok(same(&catenary_by_copoint_recursion(m), &cat))
    });
    rec.check("catenary round trip through symbols", || Ok(same(&catenary_from_g(&g)?, &cat)));
    if n <= oracle_limit {
        rec.check("G-invariant = permutation oracle", || {
            Ok(same_g(&g, &g_brute_force_with_limit(m, oracle_limit)?))
        });
        rec.check("Tutte polynomial = subset oracle", || {
            Ok(same(&tutte_from_g(&g)?, &tutte_brute_force_with_limit(m, oracle_limit)?))
        });
    } else {
        rec.skip("G-invariant = permutation oracle", format!("n = {n} exceeds the oracle limit {oracle_limit}"));
        rec.skip("Tutte polynomial = subset oracle", format!("n = {n} exceeds the oracle limit {oracle_limit}"));
    }
    for k in 0..=r {
        rec.check(format!("slicing at rank {k}"), || Ok(same_g(&slice_assemble(&rank_k_deck(m, k)?, k)?, &g)));
    }
    if r >= 2 {
        let deck = copoint_deck(m);
        rec.check("recover n from copoint deck", || Ok(same(recover_n(&deck)?, n)));
        rec.check("copoint deck round trip", || Ok(same_g(&reconstruct_from_copoint_deck(&deck)?, &g)));
    } else {
        rec.check("copoint deck round trip (given n)", || {
            Ok(same_g(&reconstruct_from_copoint_deck_with_size(&copoint_deck(m), n)?, &g))
        });
    }
    if n - r >= 2 {
        rec.check("circuit deck round trip", || Ok(same_g(&circuit_deck_reconstruct(&circuit_deck(m))?, &g)));
    } else {
        rec.check("circuit deck round trip (given n)", || {
            Ok(same_g(&circuit_deck_reconstruct_with_size(&circuit_deck(m), n)?, &g))
        });
    }

    if deep {
        deep_checks(m, &g, &mut rec);
    }

    let count = |s: Status| rec.checks.iter().filter(|c| c.status == s).count();
    VerifyReport {
        n,
        r,
        passed: count(Status::Passed),
        failed: count(Status::Failed),
        skipped: count(Status::Skipped),
        checks: rec.checks,
    }
}

fn deep_checks(m: &Matroid, g: &GInvariant, rec: &mut Recorder) {
    let (n, r) = (m.size(), m.rank());
    let cat = catenary(m);

    rec.check("averaged slicing", || {
        let mut sum = GInvariant::zero(n, r);
        for k in 0..=r {
            sum += &slice_assemble(&rank_k_deck(m, k)?, k)?;
        }
        Ok(same_g(&sum, &g.scaled(&BigInt::from(r + 1))))
    });
    if r >= 2 {
        rec.check("size-summed copoint deck round trip", || {
            Ok(same_g(&reconstruct_from_copoint_deck(&h_sums(m))?, g))
        });
    }
    if n >= 1 {
        rec.check("deletion/contraction sum", || {
            Ok((!dc_sum_check(m)?).then(|| "sum over elements differs".to_string()))
        });
    }
    rec.check("dual", || Ok(same_g(&g_dual(g), &g_invariant(&m.dual()))));
    if r >= 1 {
        rec.check("truncation", || Ok(same_g(&g_truncate(g)?, &g_invariant(&m.truncate()?))));
    }
    if r < n {
        rec.check("lift", || Ok(same_g(&g_lift(g)?, &g_invariant(&m.lift()?))));
    }
    rec.check("free extension", || Ok(same_g(&g_free_extension(g), &g_invariant(&m.free_extension()))));
    rec.check("free coextension", || {
        Ok(same_g(&g_free_coextension(g), &g_invariant(&m.free_coextension())))
    });
    let hyperplanes: Vec<_> = m.circuits().into_iter().filter(|c| c.len() == r && m.is_flat(*c)).collect();
    for x in hyperplanes {
        rec.check(format!("relaxation of circuit-hyperplane {:?}", x.to_vec()), || {
            Ok(same_g(&g_relax(g)?, &g_invariant(&m.relax(x)?)))
        });
    }

    rec.check("flat counts by rank and size", || {
        let flats = m.flats();
        for k in 0..=r {
            let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for f in &flats[k] {
                let v = by_size.entry(f.len()).or_insert_with(|| vec![0; k + 1]);
                v[m.coloops_of(*f).len()] += 1;
            }
            for s in 0..=n {
                let want = by_size.get(&s).cloned().unwrap_or_else(|| vec![0; k + 1]);
                let total: usize = want.iter().sum();
                if flat_count(&cat, k, s)? != BigInt::from(total) {
                    return Ok(Some(format!("f_{k}({s})")));
                }
                let got = flat_counts_by_coloops(&cat, k, s)?;
                if got != want.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>() {
                    return Ok(Some(format!("f_{k}({s},c): got {got:?}, expected {want:?}")));
                }
            }
        }
        Ok(None)
    });
    rec.check("chain counts F_{h,k}", || {
        let flats = m.flats();
        for h in 0..=r {
            for k in h..=r {
                let mut want: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
                let mut chains: Vec<Vec<_>> = flats[h].iter().map(|x| vec![*x]).collect();
                for j in h + 1..=k {
                    chains = chains
                        .into_iter()
                        .flat_map(|c| {
                            let last = *c.last().unwrap();
                            flats[j].iter().filter(move |y| last.is_subset(**y)).map(move |y| {
                                let mut c2 = c.clone();
                                c2.push(*y);
                                c2
                            })
                        })
                        .collect();
                }
                for c in &chains {
                    *want.entry(c.iter().map(|x| x.len()).collect()).or_default() += 1;
                }
                for (sizes, w) in want {
                    let got = chain_count(&cat, &SizeChainSpec::new(h, k, sizes.clone())?)?;
                    if got != BigInt::from(w) {
                        return Ok(Some(format!("F_{h},{k}{sizes:?}: got {got}, expected {w}")));
                    }
                }
            }
        }
        Ok(None)
    });
    for (name, kind, fam) in [
        ("circuit counts", FamilyKind::Circuit, SetFamily::Circuits),
        ("cocircuit counts", FamilyKind::Cocircuit, SetFamily::Cocircuits),
    ] {
        rec.check(name, || {
            let sets = m.set_family(fam);
            for s in 0..=n {
                let want = sets.iter().filter(|(x, _)| x.len() == s).count();
                let got = family_counts(g, kind, s, None)?;
                if got != BigInt::from(want) {
                    return Ok(Some(format!("size {s}: got {got}, expected {want}")));
                }
            }
            Ok(None)
        });
    }
    rec.check("cyclic set counts", || {
        let sets = m.set_family(SetFamily::CyclicSets);
        for s in 0..=n {
            for j in 0..=r {
                let want = sets.iter().filter(|(x, k)| x.len() == s && *k == j).count();
                let got = family_counts(g, FamilyKind::CyclicSet, s, Some(j))?;
                if got != BigInt::from(want) {
                    return Ok(Some(format!("size {s} rank {j}: got {got}, expected {want}")));
                }
            }
        }
        Ok(None)
    });
    rec.check("spanning circuit", || {
        let want = m.circuits().iter().any(|c| c.len() == r + 1);
        Ok(same(has_spanning_circuit(g)?, want))
    });

    if m.coloops().is_empty() {
        rec.check("catenary from configuration", || {
            Ok(same(&catenary_from_config(&configuration_of(m)?)?, &cat))
        });
        if m.loops().is_empty() {
            rec.check("independent copoints from configuration", || {
                let want = m.copoints().into_iter().filter(|x| m.is_independent(*x)).count();
                Ok(same(independent_copoint_count(&configuration_of(m)?)?, BigInt::from(want)))
            });
        }
    } else {
        rec.skip("catenary from configuration", "the matroid has coloops");
    }

    rec.check("free product detection = pinchpoints", || {
        let z = m.cyclic_flats();
        let mut want = Vec::new();
        for i in z.pinchpoints() {
            let (x, k) = z.flats[i];
            let (a, b) = factor_at_pinchpoint(m, x)?;
            want.push((k, x.len(), g_invariant(&a), g_invariant(&b)));
        }
        let got: Vec<_> = detect_free_product(g)?
            .factors
            .into_iter()
            .map(|f| (f.rank, f.size, f.left, f.right))
            .collect();
        Ok((got != want).then(|| format!("detected {} factorizations, expected {}", got.len(), want.len())))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::ginvariant::DEFAULT_ORACLE_LIMIT;

    #[test]
    fn small_matroids_pass() {
        for m in [Matroid::uniform(2, 3), corpus::k4(), corpus::twin_m(), Matroid::uniform(1, 2).direct_sum(&Matroid::uniform(1, 1))] {
            let rep = verify(&m, true, DEFAULT_ORACLE_LIMIT);
            let failures: Vec<_> = rep.failures().collect();
            assert!(failures.is_empty(), "{failures:?}");
            assert!(rep.passed > 10);
        }
    }

    #[test]
    fn oracle_skipped_above_limit() {
        let rep = verify(&corpus::k4(), false, 4);
        assert_eq!(rep.skipped, 2);
        assert!(rep.ok());
    }
}
