//! Catenary data by flag enumeration.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;

use super::invariant::CatenaryData;
use super::sequence::Composition;
use crate::element_set::ElementSet;
use crate::matroid::Matroid;

/// A maximal chain of flats X_0 = cl(∅) ⊂ X_1 ⊂ ... ⊂ X_r = E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub chain: Vec<ElementSet>,
}

impl Flag {
    pub fn composition(&self) -> Composition {
        let mut parts = vec![self.chain[0].len()];
        parts.extend(self.chain.windows(2).map(|w| w[1].len() - w[0].len()));
        Composition::from_parts_unchecked(parts)
    }
}

/// Calls `f` on every flag of `m`.
pub fn for_each_flag(m: &Matroid, mut f: impl FnMut(&Flag)) {
    fn rec(m: &Matroid, flag: &mut Flag, f: &mut dyn FnMut(&Flag)) {
        let top = *flag.chain.last().unwrap();
        if flag.chain.len() == m.rank() + 1 {
            f(flag);
            return;
        }
        for y in m.covers(top) {
            flag.chain.push(y);
            rec(m, flag, f);
            flag.chain.pop();
        }
    }
    let mut flag = Flag {
        chain: vec![m.loops()],
    };
    rec(m, &mut flag, &mut f);
}

type Tails = Rc<BTreeMap<Vec<usize>, BigInt>>;

/// Counts flags by composition. Flats are expanded through their covers
/// cl(X ∪ e); the tail distribution above each flat is computed once.
pub fn catenary(m: &Matroid) -> CatenaryData {
    fn tails(m: &Matroid, x: ElementSet, memo: &mut HashMap<ElementSet, Tails>) -> Tails {
        if let Some(t) = memo.get(&x) {
            return t.clone();
        }
        let mut out: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        if x == m.ground() {
            out.insert(Vec::new(), BigInt::from(1));
        } else {
            for y in m.covers(x) {
                let step = y.len() - x.len();
                for (tail, k) in tails(m, y, memo).iter() {
                    let mut key = Vec::with_capacity(tail.len() + 1);
                    key.push(step);
                    key.extend_from_slice(tail);
                    *out.entry(key).or_default() += k;
                }
            }
        }
        let t = Rc::new(out);
        memo.insert(x, t.clone());
        t
    }
    let loops = m.loops();
    let mut memo = HashMap::new();
    let mut out = CatenaryData::zero(m.size(), m.rank());
    for (tail, k) in tails(m, loops, &mut memo).iter() {
        let mut parts = vec![loops.len()];
        parts.extend_from_slice(tail);
        out.add(Composition::from_parts_unchecked(parts), k.clone());
    }
    out
}

/// ν(M; a_0..a_r) as the sum over copoints X with |E − X| = a_r of ν(M|X; a_0..a_{r−1}).
pub fn catenary_by_copoint_recursion(m: &Matroid) -> CatenaryData {
    let (n, r) = (m.size(), m.rank());
    let mut out = CatenaryData::zero(n, r);
    if r == 0 {
        out.add(Composition::from_parts_unchecked(vec![n]), BigInt::from(1));
        return out;
    }
    for x in m.copoints() {
        let sub = catenary_by_copoint_recursion(&m.restriction(x));
        for (c, k) in sub.terms() {
            let mut parts = c.parts().to_vec();
            parts.push(n - x.len());
            out.add(Composition::from_parts_unchecked(parts), k.clone());
        }
    }
    out
}
