//! Basis counts and closed-form catenary data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::invariant::CatenaryData;
use super::sequence::Composition;
use crate::error::{Error, Result};
use crate::numeric::{exact_div, factorial, falling};

/// b(M) = (1/r!) Σ ν(a) a_1 a_2 ... a_r.
pub fn basis_count(c: &CatenaryData) -> Result<BigInt> {
    let ordered: BigInt = c
        .terms()
        .map(|(a, k)| k * a.parts()[1..].iter().map(|&x| BigInt::from(x)).product::<BigInt>())
        .sum();
    exact_div(&ordered, &factorial(c.r()), "basis count")
}

/// Catenary data of a perfect matroid design with flat sizes α_0 < α_1 < ... < α_r.
pub fn pmd_catenary(alphas: &[usize]) -> Result<CatenaryData> {
    if alphas.is_empty() {
        return Err(Error::InvalidInput("at least one flat size is required".into()));
    }
    if alphas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(format!("flat sizes {alphas:?} are not strictly increasing")));
    }
    let r = alphas.len() - 1;
    let top = alphas[r] as i64;
    let mut count = BigRational::one();
    for i in 0..r {
        count *= BigRational::new(
            BigInt::from(top - alphas[i] as i64),
            BigInt::from(alphas[i + 1] as i64 - alphas[i] as i64),
        );
    }
    if !count.is_integer() {
        return Err(Error::NonIntegral(format!("flag count {count} for design {alphas:?}")));
    }
    let mut parts = vec![alphas[0]];
    parts.extend(alphas.windows(2).map(|w| w[1] - w[0]));
    Ok(CatenaryData::single(Composition::new(parts)?, count.to_integer()))
}

/// Catenary data of a rank-r paving matroid from f_{r−1}(m), the number of
/// copoints of each size m.
pub fn paving_catenary(n: usize, r: usize, copoint_counts: &BTreeMap<usize, BigInt>) -> Result<CatenaryData> {
    if r < 2 {
        return Err(Error::Precondition(format!("paving formula needs rank at least 2, got {r}")));
    }
    let mut out = CatenaryData::zero(n, r);
    for (&m, f) in copoint_counts {
        if m + 1 < r || m >= n {
            return Err(Error::InvalidInput(format!(
                "a copoint of size {m} is impossible in a rank-{r} paving matroid on {n} elements"
            )));
        }
        let mut parts = vec![0];
        parts.extend(std::iter::repeat_n(1, r - 2));
        parts.push(m + 2 - r);
        parts.push(n - m);
        out.add(Composition::new(parts)?, f * falling(m as i64, r - 2));
    }
    Ok(out)
}
