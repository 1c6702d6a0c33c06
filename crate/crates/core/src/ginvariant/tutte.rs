use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::invariant::{GInvariant, TuttePolynomial};
use super::oracle::expand_shifted;
use crate::error::{Error, Result};
use crate::numeric::factorial;

/// Specialises each symbol [r_1..r_n] to
/// Σ_m (x−1)^{r−wt(r_1..r_m)} (y−1)^{m−wt(r_1..r_m)} / (m!(n−m)!).
pub fn tutte_from_g(g: &GInvariant) -> Result<TuttePolynomial> {
    let (n, r) = (g.n(), g.r());
    let mut acc: HashMap<(usize, usize), BigRational> = HashMap::new();
    let weights: Vec<BigInt> = (0..=n).map(|m| factorial(m) * factorial(n - m)).collect();
    for (s, c) in g.terms() {
        for m in 0..=n {
            let w = s.prefix_weight(m);
            let key = (r - w, m - w);
            *acc.entry(key).or_insert_with(BigRational::zero) += BigRational::new(c.clone(), weights[m].clone());
        }
    }
    let mut integral = Vec::with_capacity(acc.len());
    for (k, v) in acc {
        if !v.is_integer() {
            return Err(Error::NonIntegral(format!(
                "Tutte specialisation: coefficient of (x-1)^{}(y-1)^{} is {v}",
                k.0, k.1
            )));
        }
        integral.push((k, v.to_integer()));
    }
    Ok(expand_shifted(integral))
}
