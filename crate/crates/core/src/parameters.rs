//! Flat, chain and set-family counts read off the catenary data.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::constructions::g_dual;
use crate::error::{Error, Result};
use crate::ginvariant::{catenary_from_g, g_from_catenary, gamma1, CatenaryData, Composition, GInvariant};
use crate::numeric::{exact_div, factorial};

/// Sizes (s_h, ..., s_k) of a saturated chain of flats of ranks h..=k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeChainSpec {
    pub h: usize,
    pub k: usize,
    pub sizes: Vec<usize>,
}

impl SizeChainSpec {
    pub fn new(h: usize, k: usize, sizes: Vec<usize>) -> Result<Self> {
        if h > k {
            return Err(Error::InvalidInput(format!("chain ranks {h} > {k}")));
        }
        if sizes.len() != k - h + 1 {
            return Err(Error::InvalidInput(format!(
                "a chain of ranks {h}..={k} needs {} sizes, got {}",
                k - h + 1,
                sizes.len()
            )));
        }
        if sizes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput(format!("chain sizes {sizes:?} are not strictly increasing")));
        }
        Ok(SizeChainSpec { h, k, sizes })
    }

    fn check(&self, n: usize, r: usize) -> Result<()> {
        if self.k > r {
            return Err(Error::InvalidInput(format!("chain rank {} exceeds matroid rank {r}", self.k)));
        }
        if *self.sizes.last().unwrap() > n {
            return Err(Error::InvalidInput(format!("chain size exceeds ground set size {n}")));
        }
        Ok(())
    }

    /// Whether the composition's flags pass through flats of these sizes at these ranks.
    fn matches(&self, prefix: &[usize]) -> bool {
        (self.h..=self.k).all(|j| prefix[j] == self.sizes[j - self.h])
    }
}

/// γ₁(0, a_{k+1}, ..., a_r).
fn gamma1_tail(a: &Composition, k: usize) -> BigInt {
    let mut parts = vec![0];
    parts.extend_from_slice(&a.parts()[k + 1..]);
    gamma1(&Composition::new(parts).expect("tail parts are positive"))
}

fn gamma1_head(a: &Composition, h: usize) -> BigInt {
    gamma1(&Composition::new(a.parts()[..=h].to_vec()).expect("head of a composition"))
}

/// F_{h,k}(s_h, ..., s_k): the number of saturated chains of flats with the given sizes.
pub fn chain_count(c: &CatenaryData, spec: &SizeChainSpec) -> Result<BigInt> {
    spec.check(c.n(), c.r())?;
    let (n, h, k) = (c.n(), spec.h, spec.k);
    let mut sum = BigInt::zero();
    for (a, nu) in c.terms() {
        if spec.matches(&a.prefix_sums()) {
            sum += gamma1_head(a, h) * gamma1_tail(a, k) * nu;
        }
    }
    let den = factorial(spec.sizes[0]) * factorial(n - spec.sizes[k - h]);
    exact_div(&sum, &den, &format!("chain count F_{{{h},{k}}}{:?}", spec.sizes))
}

/// f_k(s): the number of rank-k flats of size s.
pub fn flat_count(c: &CatenaryData, k: usize, s: usize) -> Result<BigInt> {
    if k > c.r() {
        return Err(Error::InvalidInput(format!("rank {k} exceeds matroid rank {}", c.r())));
    }
    if s > c.n() {
        return Ok(BigInt::zero());
    }
    chain_count(c, &SizeChainSpec::new(k, k, vec![s])?)
}

/// f_k(s, c): rank-k flats of size s whose restriction has exactly `cnum` coloops.
pub fn flat_count_coloops(c: &CatenaryData, k: usize, s: usize, cnum: usize) -> Result<BigInt> {
    if cnum > k || k > c.r() {
        return Err(Error::InvalidInput(format!(
            "need coloops {cnum} <= rank {k} <= matroid rank {}",
            c.r()
        )));
    }
    Ok(flat_counts_by_coloops(c, k, s)?[cnum].clone())
}

/// [f_k(s,0), ..., f_k(s,k)] from the triangular system
/// Σ_{j>=c} f_k(s,j) j!/(j−c)! = F_{k−c,k}(s−c, ..., s).
pub fn flat_counts_by_coloops(c: &CatenaryData, k: usize, s: usize) -> Result<Vec<BigInt>> {
    if k > c.r() {
        return Err(Error::InvalidInput(format!("rank {k} exceeds matroid rank {}", c.r())));
    }
    let mut f = vec![BigInt::zero(); k + 1];
    if s > c.n() {
        return Ok(f);
    }
    for cc in (0..=k).rev() {
        let rhs = if s < cc {
            BigInt::zero()
        } else {
            chain_count(c, &SizeChainSpec::new(k - cc, k, (s - cc..=s).collect())?)?
        };
        let known: BigInt = (cc + 1..=k)
            .map(|j| &f[j] * factorial(j) / factorial(j - cc))
            .sum();
        let v = exact_div(&(rhs - known), &factorial(cc), &format!("f_{k}({s},{cc})"))?;
        if v.is_negative() {
            return Err(Error::Negative(format!("f_{k}({s},{cc}) = {v}")));
        }
        f[cc] = v;
    }
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Cocircuit,
    Circuit,
    CyclicSet,
}

/// Counts cocircuits, circuits or cyclic sets of a given size (and rank, for
/// circuits and cyclic sets).
pub fn family_counts(g: &GInvariant, kind: FamilyKind, size: usize, rank: Option<usize>) -> Result<BigInt> {
    let (n, r) = (g.n(), g.r());
    if size > n {
        return Ok(BigInt::zero());
    }
    match kind {
        FamilyKind::Cocircuit => {
            if rank.is_some() {
                return Err(Error::InvalidInput("a rank filter applies to circuits and cyclic sets only".into()));
            }
            if r == 0 {
                return Ok(BigInt::zero());
            }
            flat_count(&catenary_from_g(g)?, r - 1, n - size)
        }
        FamilyKind::Circuit => {
            if rank.is_some_and(|j| j + 1 != size) {
                return Ok(BigInt::zero());
            }
            family_counts(&g_dual(g), FamilyKind::Cocircuit, size, None)
        }
        FamilyKind::CyclicSet => {
            let dual = catenary_from_g(&g_dual(g))?;
            let rd = n - r;
            // E − X is a flat of the dual of rank n − s − r + j
            let ranks: Vec<usize> = match rank {
                Some(j) => vec![j],
                None => (0..=r).collect(),
            };
            let mut total = BigInt::zero();
            for j in ranks {
                let Some(kd) = (n - size + j).checked_sub(r) else { continue };
                if kd <= rd && j <= r {
                    total += flat_count(&dual, kd, n - size)?;
                }
            }
            Ok(total)
        }
    }
}

/// Whether some circuit has r + 1 elements.
pub fn has_spanning_circuit(g: &GInvariant) -> Result<bool> {
    Ok(family_counts(g, FamilyKind::Circuit, g.r() + 1, None)?.is_positive())
}

fn admissible_sequences(c: &CatenaryData, from: usize, to: usize, fixed_rank: usize, s: usize) -> BTreeSet<Vec<usize>> {
    c.terms()
        .map(|(a, _)| a.prefix_sums())
        .filter(|p| p[fixed_rank] == s)
        .map(|p| p[from..=to].to_vec())
        .collect()
}

fn best_sequence(c: &CatenaryData, h: usize, k: usize, candidates: BTreeSet<Vec<usize>>) -> Result<(Vec<usize>, BigInt)> {
    let mut best: Option<(Vec<usize>, BigInt)> = None;
    for seq in candidates {
        let count = chain_count(c, &SizeChainSpec::new(h, k, seq.clone())?)?;
        if best.as_ref().is_none_or(|(_, b)| count > *b) {
            best = Some((seq, count));
        }
    }
    best.filter(|(_, b)| b.is_positive())
        .ok_or_else(|| Error::NoSolution("no chain passes through the flat".into()))
}

/// Catenary data of M|F and M/F for the unique rank-k flat F of size s.
pub fn cat_split_at_unique_flat(c: &CatenaryData, k: usize, s: usize) -> Result<(CatenaryData, CatenaryData)> {
    let (n, r) = (c.n(), c.r());
    let f = flat_count(c, k, s)?;
    if f != BigInt::from(1) {
        return Err(Error::Precondition(format!("there are {f} rank-{k} flats of size {s}, not one")));
    }
    // M|F from chains F = X_k ⊂ ... ⊂ X_r = E
    let (tail, count) = best_sequence(c, k, r, admissible_sequences(c, k, r, k, s))?;
    let mut restriction = CatenaryData::zero(s, k);
    for (a, nu) in c.terms() {
        let p = a.prefix_sums();
        if p[k..] == tail[..] {
            let head = Composition::new(a.parts()[..=k].to_vec())?;
            restriction.add(head, exact_div(nu, &count, "restriction to the unique flat")?);
        }
    }
    // M/F from chains cl(∅) = X_0 ⊂ ... ⊂ X_k = F
    let (head, count) = best_sequence(c, 0, k, admissible_sequences(c, 0, k, k, s))?;
    let mut contraction = CatenaryData::zero(n - s, r - k);
    for (a, nu) in c.terms() {
        let p = a.prefix_sums();
        if p[..=k] == head[..] {
            let mut parts = vec![0];
            parts.extend_from_slice(&a.parts()[k + 1..]);
            contraction.add(Composition::new(parts)?, exact_div(nu, &count, "contraction by the unique flat")?);
        }
    }
    Ok((restriction, contraction))
}

/// (𝒢(M|F), 𝒢(M/F)) for the unique rank-k flat F of size s.
pub fn g_split_at_unique_flat(g: &GInvariant, k: usize, s: usize) -> Result<(GInvariant, GInvariant)> {
    let c = catenary_from_g(g)?;
    let (a, b) = cat_split_at_unique_flat(&c, k, s)?;
    Ok((g_from_catenary(&a), g_from_catenary(&b)))
}
