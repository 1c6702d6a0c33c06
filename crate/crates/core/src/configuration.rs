//! Size/rank-labeled lattices of cyclic flats and the catenary data they
//! determine.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::constructions::cat_add_loops;
use crate::error::{Error, Result};
use crate::ginvariant::{basis_count, CatenaryData, Composition};
use crate::matroid::Matroid;
use crate::numeric::{binomial, factorial, falling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConfigNode {
    pub s: usize,
    pub rho: usize,
}

/// A finite lattice with size and rank labels. Nodes are kept in a canonical
/// order: sorted by rank, size and order profile, so node 0 is the bottom and
/// the last node the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    nodes: Vec<ConfigNode>,
    leq: Vec<Vec<bool>>,
}

impl Configuration {
    /// Builds a configuration from labels and a cover (or any generating)
    /// relation given as pairs `(lower, upper)`.
    pub fn new(nodes: Vec<ConfigNode>, covers: &[(usize, usize)]) -> Result<Self> {
        let k = nodes.len();
        if k == 0 {
            return Err(Error::InvalidInput("a configuration needs at least one node".into()));
        }
        let mut leq = vec![vec![false; k]; k];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= k || b >= k {
                return Err(Error::InvalidInput(format!("cover ({a},{b}) names a missing node")));
            }
            leq[a][b] = true;
        }
        for m in 0..k {
            for i in 0..k {
                if leq[i][m] {
                    for j in 0..k {
                        if leq[m][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_order(nodes, leq)
    }

    fn from_order(nodes: Vec<ConfigNode>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let k = nodes.len();
        for i in 0..k {
            for j in 0..k {
                if i != j && leq[i][j] {
                    if leq[j][i] {
                        return Err(Error::InvalidInput("the order relation has a cycle".into()));
                    }
                    let (x, y) = (nodes[i], nodes[j]);
                    if x.s >= y.s || x.rho >= y.rho || x.s - x.rho >= y.s - y.rho {
                        return Err(Error::InvalidInput(format!(
                            "labels ({},{}) < ({},{}) violate the cyclic-flat conditions",
                            x.s, x.rho, y.s, y.rho
                        )));
                    }
                }
            }
        }
        let below = |i: usize| (0..k).filter(|&j| leq[j][i]).count();
        let above = |i: usize| (0..k).filter(|&j| leq[i][j]).count();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| (nodes[i].rho, nodes[i].s, below(i), std::cmp::Reverse(above(i)), i));
        let nodes: Vec<ConfigNode> = order.iter().map(|&i| nodes[i]).collect();
        let leq: Vec<Vec<bool>> = order.iter().map(|&i| order.iter().map(|&j| leq[i][j]).collect()).collect();
        let c = Configuration { nodes, leq };
        if !(0..k).all(|j| c.leq[0][j] && c.leq[j][k - 1]) {
            return Err(Error::InvalidInput("the order has no least or no greatest element".into()));
        }
        for a in 0..k {
            for b in a + 1..k {
                let ub: Vec<usize> = (0..k).filter(|&u| c.leq[a][u] && c.leq[b][u]).collect();
                if !ub.iter().any(|&u| ub.iter().all(|&v| c.leq[u][v])) {
                    return Err(Error::InvalidInput("the order is not a lattice".into()));
                }
            }
        }
        Ok(c)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[ConfigNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> ConfigNode {
        self.nodes[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.nodes[self.top()].s
    }

    pub fn r(&self) -> usize {
        self.nodes[self.top()].rho
    }

    /// Pairs `(i, j)` with `j` covering `i`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in 0..k {
                if i != j
                    && self.leq[i][j]
                    && !(0..k).any(|m| m != i && m != j && self.leq[i][m] && self.leq[m][j])
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn sub(&self, keep: &[usize], shift: ConfigNode) -> Configuration {
        let nodes = keep
            .iter()
            .map(|&i| ConfigNode {
                s: self.nodes[i].s - shift.s,
                rho: self.nodes[i].rho - shift.rho,
            })
            .collect();
        let leq = keep.iter().map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect()).collect();
        Configuration::from_order(nodes, leq).expect("intervals of a configuration are configurations")
    }

    fn interval(&self, lo: usize, hi: usize) -> Configuration {
        let keep: Vec<usize> = (0..self.len()).filter(|&y| self.leq[lo][y] && self.leq[y][hi]).collect();
        self.sub(&keep, self.nodes[lo])
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigurationJson {
    nodes: Vec<ConfigNode>,
    covers: Vec<(usize, usize)>,
}

impl Serialize for Configuration {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigurationJson {
            nodes: self.nodes.clone(),
            covers: self.covers(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = ConfigurationJson::deserialize(de)?;
        Configuration::new(j.nodes, &j.covers).map_err(serde::de::Error::custom)
    }
}

pub fn configuration_of(m: &Matroid) -> Result<Configuration> {
    if !m.coloops().is_empty() {
        return Err(Error::Precondition("the matroid has a coloop".into()));
    }
    let z = m.cyclic_flats();
    let nodes = z.flats.iter().map(|&(f, rho)| ConfigNode { s: f.len(), rho }).collect();
    let leq = (0..z.len()).map(|i| (0..z.len()).map(|j| z.leq(i, j)).collect()).collect();
    Configuration::from_order(nodes, leq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorMode {
    Restrict,
    Contract,
}

/// Configuration of the restriction to, or contraction by, the cyclic flat at node `x`.
pub fn config_minor(c: &Configuration, x: usize, mode: MinorMode) -> Result<Configuration> {
    if x >= c.len() {
        return Err(Error::InvalidInput(format!("node {x} does not exist")));
    }
    Ok(match mode {
        MinorMode::Restrict => c.interval(c.bottom(), x),
        MinorMode::Contract => c.interval(x, c.top()),
    })
}

/// Keeps the nodes of rank at most r−2 and relabels the top to rank r−1.
pub fn config_truncate(c: &Configuration) -> Result<Configuration> {
    let r = c.r();
    if r == 0 {
        return Err(Error::Precondition("cannot truncate a rank-0 configuration".into()));
    }
    let top = c.top();
    let mut keep: Vec<usize> = (0..c.len()).filter(|&i| i != top && c.nodes[i].rho + 2 <= r).collect();
    keep.push(top);
    let mut nodes: Vec<ConfigNode> = keep.iter().map(|&i| c.nodes[i]).collect();
    nodes.last_mut().unwrap().rho = r - 1;
    let leq = keep.iter().map(|&i| keep.iter().map(|&j| c.leq[i][j]).collect()).collect();
    Configuration::from_order(nodes, leq)
}

type Memo<T> = OnceLock<Mutex<HashMap<Configuration, T>>>;
static CATENARY_MEMO: Memo<CatenaryData> = OnceLock::new();
static IOTA_MEMO: Memo<BigInt> = OnceLock::new();

fn memoized<T: Clone>(memo: &'static Memo<T>, c: &Configuration, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let table = memo.get_or_init(Default::default);
    if let Some(v) = table.lock().unwrap().get(c) {
        return Ok(v.clone());
    }
    let v = f()?;
    table.lock().unwrap().insert(c.clone(), v.clone());
    Ok(v)
}

/// Strict chains from `from` to `to`, endpoints included.
fn for_each_chain(c: &Configuration, from: usize, to: usize, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn go(
        c: &Configuration,
        to: usize,
        chain: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        let last = *chain.last().unwrap();
        if last == to {
            return f(chain);
        }
        for y in last + 1..c.len() {
            if c.leq[last][y] && c.leq[y][to] {
                chain.push(y);
                go(c, to, chain, f)?;
                chain.pop();
            }
        }
        Ok(())
    }
    go(c, to, &mut vec![from], f)
}

/// Weighted column sums of lower-triangular matrices with prescribed row sums:
/// each matrix weighs the product of the multinomials of its rows.
fn column_sum_weights(rows: &[usize]) -> HashMap<Vec<usize>, BigInt> {
    let t = rows.len();
    let mut states: HashMap<Vec<usize>, BigInt> = HashMap::from([(vec![0; t], BigInt::one())]);
    for (i, &w) in rows.iter().enumerate() {
        let mut next: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for (cols, weight) in &states {
            // Spread w items over columns 0..=i, tracking the multinomial.
            let mut stack = vec![(0usize, w, cols.clone(), weight.clone())];
            while let Some((j, left, cs, wt)) = stack.pop() {
                if j == i {
                    let mut cs = cs;
                    cs[j] += left;
                    *next.entry(cs).or_insert_with(BigInt::zero) += wt;
                    continue;
                }
                for a in 0..=left {
                    let mut cs2 = cs.clone();
                    cs2[j] += a;
                    stack.push((j + 1, left - a, cs2, &wt * binomial(left, a)));
                }
            }
        }
        states = next;
    }
    states
}

/// Catenary data of any matroid with the given configuration.
pub fn catenary_from_config(c: &Configuration) -> Result<CatenaryData> {
    let h = c.nodes[0].s;
    if h == 0 {
        return catenary_loopless(c);
    }
    let stripped = c.sub(&(0..c.len()).collect::<Vec<_>>(), ConfigNode { s: h, rho: 0 });
    cat_add_loops(&catenary_loopless(&stripped)?, h)
}

fn catenary_loopless(c: &Configuration) -> Result<CatenaryData> {
    memoized(&CATENARY_MEMO, c, || {
        let (n, r) = (c.n(), c.r());
        if r == 0 {
            return Ok(CatenaryData::single(Composition::new(vec![n])?, BigInt::one()));
        }
        if c.len() <= 2 {
            let mut parts = vec![0];
            parts.extend(std::iter::repeat_n(1, r - 1));
            parts.push(n - r + 1);
            return Ok(CatenaryData::single(Composition::new(parts)?, falling(n as i64, r - 1)));
        }
        let mut out = CatenaryData::zero(n, r);
        for_each_chain(c, c.bottom(), c.top(), &mut |chain| {
            let mut iota = BigInt::one();
            let mut rows = Vec::with_capacity(chain.len() - 1);
            let mut jumps = Vec::with_capacity(chain.len() - 1);
            for w in chain.windows(2) {
                let step = c.interval(w[0], w[1]);
                iota *= independent_copoint_count(&step)?;
                if iota.is_zero() {
                    return Ok(());
                }
                let wi = step.r() - 1;
                rows.push(wi);
                jumps.push(step.n() - wi);
            }
            for (cols, weight) in column_sum_weights(&rows) {
                let mut parts = vec![0];
                let mut count = &iota * weight;
                for (a, jump) in cols.iter().zip(&jumps) {
                    parts.extend(std::iter::repeat_n(1, *a));
                    parts.push(*jump);
                    count *= factorial(*a);
                }
                out.add(Composition::new(parts)?, count);
            }
            Ok(())
        })?;
        Ok(out)
    })
}

pub fn basis_count_config(c: &Configuration) -> Result<BigInt> {
    basis_count(&catenary_from_config(c)?)
}

/// Number of independent copoints, by inclusion/exclusion over chains of
/// proper nonzero cyclic flats.
pub fn independent_copoint_count(c: &Configuration) -> Result<BigInt> {
    let r = c.r();
    if r == 0 || c.nodes[0].s > 0 {
        return Ok(BigInt::zero());
    }
    memoized(&IOTA_MEMO, c, || {
        let mut total = basis_count_config(&config_truncate(c)?)?;
        let inner: Vec<usize> = (0..c.len()).filter(|&i| c.nodes[i].rho > 0 && c.nodes[i].rho < r).collect();
        // Chains F_1 < ... < F_p inside the proper part, grown from each start.
        fn extend(
            c: &Configuration,
            inner: &[usize],
            chain: &mut Vec<usize>,
            prefix: &BigInt,
            total: &mut BigInt,
        ) -> Result<()> {
            let last = *chain.last().unwrap();
            let top_part = basis_count_config(&config_truncate(&c.interval(last, c.top()))?)?;
            let term = prefix * top_part;
            if chain.len() % 2 == 1 {
                *total -= term;
            } else {
                *total += term;
            }
            for &y in inner {
                if y != last && c.leq[last][y] {
                    let p = prefix * basis_count_config(&c.interval(last, y))?;
                    if p.is_zero() {
                        continue;
                    }
                    chain.push(y);
                    extend(c, inner, chain, &p, total)?;
                    chain.pop();
                }
            }
            Ok(())
        }
        for &f in &inner {
            let p = basis_count_config(&c.interval(c.bottom(), f))?;
            extend(c, &inner, &mut vec![f], &p, &mut total)?;
        }
        if total < BigInt::zero() {
            return Err(Error::Negative("independent copoint count".into()));
        }
        Ok(total)
    })
}
