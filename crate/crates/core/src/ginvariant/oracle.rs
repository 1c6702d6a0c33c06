//! Brute-force oracles: the permutation sum and the corank-nullity expansion.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::invariant::{GInvariant, TuttePolynomial};
use super::sequence::RankSequence;
use crate::element_set::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::numeric::binomial;

pub const DEFAULT_ORACLE_LIMIT: usize = 9;

/// The oracle limit, overridable through `GINV_ORACLE_LIMIT`.
pub fn oracle_limit() -> usize {
    std::env::var("GINV_ORACLE_LIMIT")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

pub fn g_brute_force(m: &Matroid) -> Result<GInvariant> {
    g_brute_force_with_limit(m, oracle_limit())
}

/// Σ over all n! orderings of the rank sequence, by direct enumeration.
pub fn g_brute_force_with_limit(m: &Matroid, limit: usize) -> Result<GInvariant> {
    let n = m.size();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    fn rec(m: &Matroid, x: ElementSet, rx: usize, seq: RankSequence, counts: &mut HashMap<RankSequence, u64>) {
        if seq.len() == m.size() {
            *counts.entry(seq).or_default() += 1;
            return;
        }
        for e in m.ground().difference(x).iter() {
            let y = x.with(e);
            let ry = m.rank_of(y);
            rec(m, y, ry, seq.push(ry > rx), counts);
        }
    }
    let mut counts = HashMap::new();
    rec(m, ElementSet::default(), 0, RankSequence::empty(), &mut counts);
    GInvariant::from_terms(n, m.rank(), counts.into_iter().map(|(s, c)| (s, BigInt::from(c))))
}

pub fn tutte_brute_force(m: &Matroid) -> Result<TuttePolynomial> {
    tutte_brute_force_with_limit(m, oracle_limit())
}

/// Σ_A (x−1)^{r−r(A)} (y−1)^{|A|−r(A)} over all subsets A.
pub fn tutte_brute_force_with_limit(m: &Matroid, limit: usize) -> Result<TuttePolynomial> {
    let n = m.size();
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let r = m.rank();
    let mut by_exponents: HashMap<(usize, usize), u64> = HashMap::new();
    for a in m.ground().subsets() {
        let ra = m.rank_of(a);
        *by_exponents.entry((r - ra, a.len() - ra)).or_default() += 1;
    }
    Ok(expand_shifted(by_exponents.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
}

/// Expands Σ c (x−1)^i (y−1)^j into the monomial basis.
pub(crate) fn expand_shifted<I: IntoIterator<Item = ((usize, usize), BigInt)>>(terms: I) -> TuttePolynomial {
    let mut t = TuttePolynomial::default();
    for ((i, j), c) in terms {
        for p in 0..=i {
            let sp = if (i - p) % 2 == 0 { 1 } else { -1 };
            let cx = binomial(i, p) * sp;
            for q in 0..=j {
                let sq = if (j - q) % 2 == 0 { 1 } else { -1 };
                t.add_term(p, q, &c * &cx * binomial(j, q) * sq);
            }
        }
    }
    t
}
