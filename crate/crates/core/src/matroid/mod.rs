//! Explicit matroids given by their basis collection.
//!
//! Every presentation compiles to a sorted, deduplicated list of bases on the
//! ground set `{0, .., n-1}`; rank, closure, flats and the derived set families
//! are computed from that list.

mod construct;
mod presentation;

pub use construct::{Binary, Unary};
pub use presentation::{build_matroid, BuildOptions, MatroidFile, MatroidPresentation, RankedSet};

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::element_set::{ElementSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// Ground sets up to this size get a full subset-rank table on first use.
const RANK_TABLE_LIMIT: usize = 20;

/// Exchange-axiom validation runs by default up to this ground-set size.
pub const AUTO_VALIDATE_LIMIT: usize = 12;

#[derive(Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<ElementSet>,
    rank_table: OnceLock<Vec<u8>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.rank)
            .field("bases", &self.bases.len())
            .finish()
    }
}

/// Which derived family [`Matroid::set_family`] returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetFamily {
    Circuits,
    Cocircuits,
    CyclicSets,
}

impl Matroid {
    /// Builds a matroid from a basis list, validating the exchange axiom when
    /// `n <= AUTO_VALIDATE_LIMIT`.
    pub fn from_bases(n: usize, bases: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        Self::from_bases_with(n, bases, n <= AUTO_VALIDATE_LIMIT)
    }

    pub fn from_bases_with(
        n: usize,
        bases: impl IntoIterator<Item = ElementSet>,
        validate: bool,
    ) -> Result<Self> {
        if n >= MAX_ELEMENTS {
            return Err(Error::InvalidInput(format!(
                "ground set of size {n} is too large (limit {})",
                MAX_ELEMENTS - 1
            )));
        }
        let bases: BTreeSet<ElementSet> = bases.into_iter().collect();
        let Some(first) = bases.first() else {
            return Err(Error::NotAMatroid("empty basis collection".into()));
        };
        let rank = first.len();
        let ground = ElementSet::full(n);
        for b in &bases {
            if b.len() != rank {
                return Err(Error::NotAMatroid(format!(
                    "bases of different sizes ({} and {})",
                    rank,
                    b.len()
                )));
            }
            if !b.is_subset(ground) {
                return Err(Error::InvalidInput(format!(
                    "basis {b:?} is not a subset of the ground set of size {n}"
                )));
            }
        }
        let m = Matroid::from_sorted_bases(n, bases.into_iter().collect());
        if validate {
            m.check_exchange()?;
        }
        Ok(m)
    }

    /// Caller guarantees a valid, sorted, deduplicated basis list.
    pub(crate) fn from_sorted_bases(n: usize, bases: Vec<ElementSet>) -> Self {
        debug_assert!(!bases.is_empty());
        debug_assert!(bases.windows(2).all(|w| w[0] < w[1]));
        let rank = bases[0].len();
        Matroid {
            n,
            rank,
            bases,
            rank_table: OnceLock::new(),
        }
    }

    pub(crate) fn from_basis_set(n: usize, bases: BTreeSet<ElementSet>) -> Self {
        Matroid::from_sorted_bases(n, bases.into_iter().collect())
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Self {
        assert!(r <= n && n < MAX_ELEMENTS, "U_{{{r},{n}}} is not defined");
        Matroid::from_sorted_bases(n, crate::element_set::k_subsets(n, r).collect())
    }

    /// The matroid on no elements.
    pub fn empty() -> Self {
        Matroid::uniform(0, 0)
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Rank of the whole ground set.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn is_basis(&self, x: ElementSet) -> bool {
        self.bases.binary_search(&x).is_ok()
    }

    /// Checks the basis-exchange axiom exhaustively.
    pub fn check_exchange(&self) -> Result<()> {
        let set: HashSet<ElementSet> = self.bases.iter().copied().collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for e in b1.difference(b2).iter() {
                    let ok = b2
                        .difference(b1)
                        .iter()
                        .any(|f| set.contains(&b1.without(e).with(f)));
                    if !ok {
                        return Err(Error::NotAMatroid(format!(
                            "exchange fails for bases {b1:?}, {b2:?} at element {e}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn table(&self) -> Option<&[u8]> {
        if self.n > RANK_TABLE_LIMIT {
            return None;
        }
        Some(self.rank_table.get_or_init(|| {
            let size = 1usize << self.n;
            let mut independent = vec![false; size];
            for b in &self.bases {
                independent[b.0 as usize] = true;
            }
            for mask in (0..size).rev() {
                if independent[mask] {
                    let mut rest = mask;
                    while rest != 0 {
                        let low = rest & rest.wrapping_neg();
                        independent[mask ^ low] = true;
                        rest ^= low;
                    }
                }
            }
            let mut ranks = vec![0u8; size];
            for mask in 1..size {
                ranks[mask] = if independent[mask] {
                    mask.count_ones() as u8
                } else {
                    let mut best = 0;
                    let mut rest = mask;
                    while rest != 0 {
                        let low = rest & rest.wrapping_neg();
                        best = best.max(ranks[mask ^ low]);
                        rest ^= low;
                    }
                    best
                };
            }
            ranks
        }))
    }

    /// `max |X ∩ B|` over bases `B`.
    pub fn rank_of(&self, x: ElementSet) -> usize {
        debug_assert!(x.is_subset(self.ground()));
        match self.table() {
            Some(t) => t[x.0 as usize] as usize,
            None => self
                .bases
                .iter()
                .map(|b| b.intersection(x).len())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn is_independent(&self, x: ElementSet) -> bool {
        self.rank_of(x) == x.len()
    }

    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let rx = self.rank_of(x);
        self.ground()
            .difference(x)
            .iter()
            .filter(|&e| self.rank_of(x.with(e)) == rx)
            .fold(x, |acc, e| acc.with(e))
    }

    pub fn is_flat(&self, x: ElementSet) -> bool {
        self.closure(x) == x
    }

    pub fn loops(&self) -> ElementSet {
        self.closure(ElementSet::EMPTY)
    }

    /// Elements in every basis.
    pub fn coloops(&self) -> ElementSet {
        self.bases
            .iter()
            .fold(self.ground(), |acc, &b| acc.intersection(b))
    }

    /// Elements of `x` that are coloops of the restriction to `x`.
    pub fn coloops_of(&self, x: ElementSet) -> ElementSet {
        let rx = self.rank_of(x);
        x.iter()
            .filter(|&e| self.rank_of(x.without(e)) + 1 == rx)
            .collect()
    }

    /// `x` minus the coloops of the restriction to `x`: the union of the
    /// circuits contained in `x`.
    pub fn cyclic_part(&self, x: ElementSet) -> ElementSet {
        x.difference(self.coloops_of(x))
    }

    pub fn is_cyclic(&self, x: ElementSet) -> bool {
        self.coloops_of(x).is_empty()
    }

    /// Flats covering `f`: `cl(f ∪ e)` for `e ∉ f`, deduplicated.
    pub fn covers(&self, f: ElementSet) -> Vec<ElementSet> {
        let mut out = BTreeSet::new();
        let mut rest = self.ground().difference(f);
        while let Some(e) = rest.iter().next() {
            let g = self.closure(f.with(e));
            rest = rest.difference(g);
            out.insert(g);
        }
        out.into_iter().collect()
    }

    /// All flats, grouped by rank.
    pub fn flats(&self) -> Vec<Vec<ElementSet>> {
        let mut levels = vec![vec![self.loops()]];
        for _ in 0..self.rank {
            let next: BTreeSet<ElementSet> = levels
                .last()
                .unwrap()
                .iter()
                .flat_map(|&f| self.covers(f))
                .collect();
            levels.push(next.into_iter().collect());
        }
        levels
    }

    pub fn flats_of_rank(&self, k: usize) -> Result<Vec<ElementSet>> {
        if k > self.rank {
            return Err(Error::Precondition(format!(
                "rank {k} exceeds the matroid rank {}",
                self.rank
            )));
        }
        Ok(self.flats().swap_remove(k))
    }

    pub fn copoints(&self) -> Vec<ElementSet> {
        if self.rank == 0 {
            return Vec::new();
        }
        self.flats().swap_remove(self.rank - 1)
    }

    /// Circuits via fundamental circuits of every basis.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let mut out = BTreeSet::new();
        for &b in &self.bases {
            for e in self.ground().difference(b).iter() {
                let c = b
                    .iter()
                    .filter(|&f| self.is_basis(b.without(f).with(e)))
                    .fold(ElementSet::singleton(e), |acc, f| acc.with(f));
                out.insert(c);
            }
        }
        out.into_iter().collect()
    }

    /// The requested family, each set paired with its rank in this matroid.
    pub fn set_family(&self, kind: SetFamily) -> Vec<(ElementSet, usize)> {
        let sets: Vec<ElementSet> = match kind {
            SetFamily::Circuits => self.circuits(),
            SetFamily::Cocircuits => self.dual().circuits(),
            SetFamily::CyclicSets => {
                let mut v: Vec<_> = self
                    .dual()
                    .flats()
                    .into_iter()
                    .flatten()
                    .map(|f| f.complement(self.n))
                    .collect();
                v.sort();
                v
            }
        };
        sets.into_iter().map(|s| (s, self.rank_of(s))).collect()
    }

    pub fn cyclic_flats(&self) -> CyclicFlats {
        let mut flats: Vec<(ElementSet, usize)> = self
            .flats()
            .into_iter()
            .enumerate()
            .flat_map(|(k, level)| level.into_iter().map(move |f| (f, k)))
            .filter(|&(f, _)| self.is_cyclic(f))
            .collect();
        flats.sort_by_key(|&(f, k)| (k, f.len(), f));
        CyclicFlats { flats }
    }

    /// `M / contract \ delete`, relabeled to `{0, .., n'-1}` in increasing order.
    pub fn minor(&self, contract: ElementSet, delete: ElementSet) -> Result<Matroid> {
        if !contract.intersection(delete).is_empty() {
            return Err(Error::Precondition(format!(
                "contracted {contract:?} and deleted {delete:?} overlap"
            )));
        }
        let ground = self.ground();
        if !contract.union(delete).is_subset(ground) {
            return Err(Error::Precondition("minor sets exceed the ground set".into()));
        }
        let rc = self.rank_of(contract);
        let contracted: Vec<ElementSet> = self
            .bases
            .iter()
            .filter(|b| b.intersection(contract).len() == rc)
            .map(|b| b.difference(contract))
            .collect();
        let best = contracted
            .iter()
            .map(|b| b.difference(delete).len())
            .max()
            .unwrap_or(0);
        let keep = ground.difference(contract).difference(delete);
        let relabel = compress_map(keep);
        let bases: BTreeSet<ElementSet> = contracted
            .into_iter()
            .map(|b| b.difference(delete))
            .filter(|b| b.len() == best)
            .map(|b| apply_map(b, &relabel))
            .collect();
        Ok(Matroid::from_basis_set(keep.len(), bases))
    }

    /// `M | x`, elements of `x` relabeled in increasing order.
    pub fn restriction(&self, x: ElementSet) -> Matroid {
        self.minor(ElementSet::EMPTY, self.ground().difference(x))
            .expect("restriction arguments are disjoint")
    }

    /// `M / x`, elements of `E - x` relabeled in increasing order.
    pub fn contraction(&self, x: ElementSet) -> Matroid {
        self.minor(x, ElementSet::EMPTY)
            .expect("contraction arguments are disjoint")
    }

    pub fn delete_element(&self, e: usize) -> Matroid {
        self.minor(ElementSet::EMPTY, ElementSet::singleton(e))
            .expect("single deletion")
    }

    pub fn contract_element(&self, e: usize) -> Matroid {
        self.minor(ElementSet::singleton(e), ElementSet::EMPTY)
            .expect("single contraction")
    }

    pub fn dual(&self) -> Matroid {
        let bases: BTreeSet<ElementSet> = self.bases.iter().map(|b| b.complement(self.n)).collect();
        Matroid::from_basis_set(self.n, bases)
    }

    /// Renames element `e` to `perm[e]`; `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Matroid> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n || perm.iter().any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidInput("relabeling is not a permutation".into()));
        }
        let bases: BTreeSet<ElementSet> = self
            .bases
            .iter()
            .map(|b| b.iter().map(|e| perm[e]).collect())
            .collect();
        Ok(Matroid::from_basis_set(self.n, bases))
    }

    pub fn is_simple(&self) -> bool {
        self.loops().is_empty()
            && (0..self.n).all(|e| {
                (e + 1..self.n).all(|f| self.rank_of(ElementSet::from_elements([e, f])) == 2)
            })
    }

    /// All circuits have size `r` or `r + 1`.
    pub fn is_paving(&self) -> bool {
        self.circuits().iter().all(|c| c.len() >= self.rank)
    }
}

/// Position of each member of `keep` within `keep`.
fn compress_map(keep: ElementSet) -> Vec<Option<usize>> {
    let mut map = vec![None; MAX_ELEMENTS];
    for (i, e) in keep.iter().enumerate() {
        map[e] = Some(i);
    }
    map
}

fn apply_map(x: ElementSet, map: &[Option<usize>]) -> ElementSet {
    x.iter()
        .map(|e| map[e].expect("element outside the kept set"))
        .collect()
}

/// The cyclic flats of a matroid with their ranks, sorted by
/// `(rank, size, mask)`; index 0 is the least element and the last index the
/// greatest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFlats {
    pub flats: Vec<(ElementSet, usize)>,
}

impl CyclicFlats {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.flats[i].0.is_subset(self.flats[j].0)
    }

    pub fn index_of(&self, x: ElementSet) -> Option<usize> {
        self.flats.iter().position(|&(f, _)| f == x)
    }

    pub fn join(&self, m: &Matroid, i: usize, j: usize) -> Option<usize> {
        self.index_of(m.closure(self.flats[i].0.union(self.flats[j].0)))
    }

    pub fn meet(&self, m: &Matroid, i: usize, j: usize) -> Option<usize> {
        self.index_of(m.cyclic_part(self.flats[i].0.intersection(self.flats[j].0)))
    }

    /// Interior cyclic flats comparable with every cyclic flat.
    pub fn pinchpoints(&self) -> Vec<usize> {
        let last = self.flats.len().saturating_sub(1);
        (1..last)
            .filter(|&i| (0..self.flats.len()).all(|j| self.leq(i, j) || self.leq(j, i)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    #[test]
    fn uniform_basics() {
        let u24 = Matroid::uniform(2, 4);
        assert_eq!(u24.rank_of(set(&[0, 1, 2])), 2);
        assert_eq!(u24.rank_of(ElementSet::EMPTY), 0);
        assert_eq!(u24.flats_of_rank(1).unwrap().len(), 4);
        assert_eq!(u24.flats_of_rank(2).unwrap(), vec![u24.ground()]);
        assert!(u24.flats_of_rank(3).is_err());
        let u23 = Matroid::uniform(2, 3);
        assert_eq!(u23.closure(set(&[0])), set(&[0]));
        assert_eq!(u23.circuits(), vec![set(&[0, 1, 2])]);
        assert_eq!(
            u23.set_family(SetFamily::Circuits),
            vec![(set(&[0, 1, 2]), 2)]
        );
    }

    #[test]
    fn empty_matroid_is_well_defined() {
        let e = Matroid::empty();
        assert_eq!(e.size(), 0);
        assert_eq!(e.rank(), 0);
        assert_eq!(e.bases(), &[ElementSet::EMPTY]);
        assert_eq!(e.flats(), vec![vec![ElementSet::EMPTY]]);
        assert_eq!(e.dual(), e);
        assert_eq!(e.cyclic_flats().len(), 1);
    }

    #[test]
    fn rejects_bad_basis_lists() {
        assert!(matches!(
            Matroid::from_bases(3, []),
            Err(Error::NotAMatroid(_))
        ));
        assert!(matches!(
            Matroid::from_bases(3, [set(&[0]), set(&[1, 2])]),
            Err(Error::NotAMatroid(_))
        ));
        // {01, 23}: exchange fails
        assert!(matches!(
            Matroid::from_bases(4, [set(&[0, 1]), set(&[2, 3])]),
            Err(Error::NotAMatroid(_))
        ));
        assert!(Matroid::from_bases_with(4, [set(&[0, 1]), set(&[2, 3])], false).is_ok());
        assert!(matches!(
            Matroid::from_bases(2, [set(&[5])]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn k4_structure() {
        let k4 = corpus::k4();
        assert_eq!(k4.bases().len(), 16);
        let lines = k4.flats_of_rank(2).unwrap();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines.iter().filter(|l| l.len() == 3).count(), 4);
        assert_eq!(lines.iter().filter(|l| l.len() == 2).count(), 3);
        for l in lines.iter().filter(|l| l.len() == 3) {
            assert_eq!(k4.rank_of(*l), 2);
            assert_eq!(k4.restriction(*l), Matroid::uniform(2, 3));
        }
        let stars = k4
            .set_family(SetFamily::Cocircuits)
            .into_iter()
            .filter(|(c, _)| c.len() == 3)
            .count();
        assert_eq!(stars, 4);
        let d = k4.dual();
        assert_eq!((d.size(), d.rank()), (6, 3));
    }

    #[test]
    fn twin_lines_and_cyclic_flats() {
        let m = corpus::twin_m();
        assert_eq!(m.closure(set(&[0, 1])), set(&[0, 1, 2]));
        let cyc = m.set_family(SetFamily::CyclicSets);
        let small: Vec<_> = cyc.iter().filter(|(s, k)| s.len() == 3 && *k == 2).collect();
        assert_eq!(small.len(), 2);
        let z = m.cyclic_flats();
        let labels: Vec<_> = z.flats.iter().map(|&(f, k)| (f.len(), k)).collect();
        assert_eq!(labels, vec![(0, 0), (3, 2), (3, 2), (6, 3)]);
        assert!(z.pinchpoints().is_empty());
    }

    #[test]
    fn cyclic_flats_exclude_coloops() {
        // U_{1,2} ⊕ U_{1,1}: {a, b} parallel, c a coloop
        let m = Matroid::from_bases(3, [set(&[0, 2]), set(&[1, 2])]).unwrap();
        let z = m.cyclic_flats();
        assert_eq!(z.flats, vec![(ElementSet::EMPTY, 0), (set(&[0, 1]), 1)]);
        assert_eq!(m.coloops(), set(&[2]));
        let u = Matroid::uniform(2, 5).cyclic_flats();
        assert_eq!(u.flats.len(), 2);
    }

    #[test]
    fn minors() {
        let k4 = corpus::k4();
        assert_eq!(k4.minor(ElementSet::EMPTY, ElementSet::EMPTY).unwrap(), k4);
        assert!(k4.minor(set(&[0]), set(&[0, 1])).is_err());
        let nx = corpus::twin_n().delete_element(5);
        assert_eq!(nx, corpus::twin_n_minus_x());
        // deleting then contracting a single element commutes with duality
        for e in 0..6 {
            assert_eq!(k4.contract_element(e).dual(), k4.dual().delete_element(e));
        }
    }

    #[test]
    fn relabel_is_checked() {
        let m = Matroid::uniform(1, 2);
        assert!(m.relabel(&[0, 0]).is_err());
        assert_eq!(m.relabel(&[1, 0]).unwrap(), m);
    }

    #[test]
    fn lattice_operations_on_m1() {
        let m = corpus::tutte_twin_m1();
        let z = m.cyclic_flats();
        for i in 0..z.len() {
            for j in 0..z.len() {
                let join = z.join(&m, i, j).expect("join is a cyclic flat");
                let meet = z.meet(&m, i, j).expect("meet is a cyclic flat");
                assert!(z.leq(i, join) && z.leq(j, join));
                assert!(z.leq(meet, i) && z.leq(meet, j));
            }
        }
    }
}
