//! The γ-basis and the change of basis to and from symbols.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::invariant::{CatenaryData, GInvariant};
use super::sequence::{compositions, dominates_unchecked, Composition, RankSequence};
use crate::error::{Error, Result};
use crate::numeric::{exact_div, factorial, falling};

type Expansion = Arc<Vec<(RankSequence, BigInt)>>;

/// Coefficient of [seq(b)] in γ(a); zero unless b ⊵ a.
pub fn gamma_coefficient(a: &Composition, b: &Composition) -> BigInt {
    if a.r() != b.r() || a.n() != b.n() || !dominates_unchecked(b, a) {
        return BigInt::zero();
    }
    let (a, b) = (a.parts(), b.parts());
    let mut c = falling(a[0] as i64, b[0]);
    let mut slack = a[0] as i64 - b[0] as i64;
    for j in 1..a.len() {
        c *= a[j] as i64;
        c *= falling(a[j] as i64 - 1 + slack, b[j] - 1);
        slack += a[j] as i64 - b[j] as i64;
    }
    c
}

/// All b with b ⊵ a, each paired with the coefficient of [seq(b)] in γ(a).
fn expansion(a: &Composition) -> Expansion {
    static CACHE: OnceLock<Mutex<HashMap<Composition, Expansion>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(e) = cache.lock().unwrap().get(a) {
        return e.clone();
    }
    let parts = a.parts();
    let r = a.r();
    let n = a.n();
    let mut out = Vec::new();
    let mut b = Vec::with_capacity(r + 1);
    // prefix sums of a
    let sa = a.prefix_sums();
    fn rec(
        j: usize,
        sb: usize,
        slack: i64,
        coeff: BigInt,
        parts: &[usize],
        sa: &[usize],
        n: usize,
        b: &mut Vec<usize>,
        out: &mut Vec<(RankSequence, BigInt)>,
    ) {
        let r = parts.len() - 1;
        if j > r {
            if sb == n {
                let comp = Composition::from_parts_unchecked(b.clone());
                out.push((comp.to_sequence(), coeff));
            }
            return;
        }
        let lo = if j == 0 { 0 } else { 1 };
        // every later part needs at least 1
        let max_by_total = n - sb - (r - j);
        let hi = (sa[j] - sb).min(max_by_total);
        for bj in lo..=hi {
            if j == r && sb + bj != n {
                continue;
            }
            let factor = if j == 0 {
                falling(parts[0] as i64, bj)
            } else {
                falling(parts[j] as i64 - 1 + slack, bj - 1) * parts[j] as i64
            };
            if factor.is_zero() {
                continue;
            }
            b.push(bj);
            rec(
                j + 1,
                sb + bj,
                slack + parts[j] as i64 - bj as i64,
                &coeff * factor,
                parts,
                sa,
                n,
                b,
                out,
            );
            b.pop();
        }
    }
    rec(0, 0, 0, BigInt::from(1), parts, &sa, n, &mut b, &mut out);
    out.sort_by(|x, y| x.0.cmp(&y.0));
    let e: Expansion = Arc::new(out);
    cache.lock().unwrap().insert(a.clone(), e.clone());
    e
}

/// γ(a) written in the symbol basis.
pub fn gamma_expand(a: &Composition) -> GInvariant {
    let e = expansion(a);
    GInvariant::from_terms(a.n(), a.r(), e.iter().cloned()).expect("shapes agree")
}

/// Diagonal entry of the basis change: the coefficient of [seq(a)] in γ(a).
pub fn gamma_diagonal(a: &Composition) -> BigInt {
    a.parts().iter().map(|&x| factorial(x)).product()
}

/// γ(a) with every symbol specialised to 1.
pub fn gamma1(a: &Composition) -> BigInt {
    static CACHE: OnceLock<Mutex<HashMap<Composition, BigInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(a) {
        return v.clone();
    }
    let v: BigInt = expansion(a).iter().map(|(_, c)| c).sum();
    cache.lock().unwrap().insert(a.clone(), v.clone());
    v
}

pub fn g_from_catenary(c: &CatenaryData) -> GInvariant {
    let mut g = GInvariant::zero(c.n(), c.r());
    for (a, k) in c.terms() {
        for (s, coeff) in expansion(a).iter() {
            g.add_term(*s, coeff * k);
        }
    }
    g
}

/// Inverts the triangular change of basis by back-substitution.
///
/// Compositions are processed by decreasing sum of prefix sums: γ(a) only
/// reaches symbols whose prefix sums are pointwise at most those of a.
pub fn catenary_from_g(g: &GInvariant) -> Result<CatenaryData> {
    let (n, r) = (g.n(), g.r());
    let mut order = compositions(n, r);
    order.sort_by_key(|a| std::cmp::Reverse(a.prefix_sums().iter().sum::<usize>()));
    let mut residual = g.clone();
    let mut out = CatenaryData::zero(n, r);
    for a in order {
        if residual.is_zero() {
            break;
        }
        let seq = a.to_sequence();
        let coeff = residual.coeff(&seq);
        if coeff.is_zero() {
            continue;
        }
        let nu = exact_div(&coeff, &gamma_diagonal(&a), &format!("γ-coordinate of {a}"))?;
        if nu.is_negative() {
            return Err(Error::Negative(format!("γ-coordinate of {a} is {nu}")));
        }
        for (s, c) in expansion(&a).iter() {
            residual.add_term(*s, -(c * &nu));
        }
        out.add(a, nu);
    }
    if !residual.is_zero() {
        return Err(Error::IdentityFailed(format!("residual {residual} after back-substitution")));
    }
    Ok(out)
}
