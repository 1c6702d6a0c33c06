use std::collections::BTreeSet;

use super::Matroid;
use crate::element_set::{k_subsets, ElementSet};
use crate::error::{Error, Result};

/// Single-matroid constructions. New elements get label `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unary {
    Truncate,
    Lift,
    FreeExtension,
    FreeCoextension,
    AddColoop,
    AddLoop,
    /// Relax a circuit-hyperplane.
    Relax(ElementSet),
}

/// Two-matroid constructions; the second operand's elements are shifted by
/// the size of the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Binary {
    DirectSum,
    FreeProduct,
}

impl Matroid {
    pub fn construct(&self, op: Unary) -> Result<Matroid> {
        match op {
            Unary::Truncate => self.truncate(),
            Unary::Lift => self.lift(),
            Unary::FreeExtension => Ok(self.free_extension()),
            Unary::FreeCoextension => Ok(self.free_coextension()),
            Unary::AddColoop => Ok(self.direct_sum(&Matroid::uniform(1, 1))),
            Unary::AddLoop => Ok(self.direct_sum(&Matroid::uniform(0, 1))),
            Unary::Relax(x) => self.relax(x),
        }
    }

    pub fn combine(&self, other: &Matroid, op: Binary) -> Matroid {
        match op {
            Binary::DirectSum => self.direct_sum(other),
            Binary::FreeProduct => self.free_product(other),
        }
    }

    /// Bases are the independent sets of size `r - 1`.
    pub fn truncate(&self) -> Result<Matroid> {
        if self.rank() == 0 {
            return Err(Error::Precondition("truncation needs positive rank".into()));
        }
        let bases: BTreeSet<ElementSet> = self
            .bases()
            .iter()
            .flat_map(|b| b.iter().map(move |e| b.without(e)))
            .collect();
        Ok(Matroid::from_basis_set(self.size(), bases))
    }

    /// Higgs lift, `Trun(M*)*`.
    pub fn lift(&self) -> Result<Matroid> {
        if self.rank() == self.size() {
            return Err(Error::Precondition("lift needs a circuit".into()));
        }
        Ok(self.dual().truncate()?.dual())
    }

    /// `Trun(M ⊕ U_{1,1})`.
    pub fn free_extension(&self) -> Matroid {
        self.direct_sum(&Matroid::uniform(1, 1))
            .truncate()
            .expect("adding a coloop gives positive rank")
    }

    pub fn free_coextension(&self) -> Matroid {
        self.dual().free_extension().dual()
    }

    pub fn relax(&self, x: ElementSet) -> Result<Matroid> {
        let r = self.rank();
        if !x.is_subset(self.ground()) || r == 0 {
            return Err(Error::Precondition(format!("{x:?} cannot be a circuit-hyperplane")));
        }
        let is_circuit = !self.is_independent(x) && x.iter().all(|e| self.is_independent(x.without(e)));
        let is_hyperplane = self.rank_of(x) + 1 == r && self.is_flat(x);
        if !(is_circuit && is_hyperplane) {
            return Err(Error::Precondition(format!("{x:?} is not a circuit-hyperplane")));
        }
        let mut bases: BTreeSet<ElementSet> = self.bases().iter().copied().collect();
        bases.insert(x);
        Ok(Matroid::from_basis_set(self.size(), bases))
    }

    pub fn direct_sum(&self, other: &Matroid) -> Matroid {
        let shift = self.size();
        let bases: BTreeSet<ElementSet> = self
            .bases()
            .iter()
            .flat_map(|&b1| other.bases().iter().map(move |&b2| b1.union(b2.shifted(shift))))
            .collect();
        Matroid::from_basis_set(self.size() + other.size(), bases)
    }

    /// Bases: sets of size `r1 + r2` meeting `E1` in an independent set of the
    /// first matroid and `E2` in a spanning set of the second.
    pub fn free_product(&self, other: &Matroid) -> Matroid {
        let (n1, n2) = (self.size(), other.size());
        let (r1, r2) = (self.rank(), other.rank());
        let e1 = self.ground();
        let bases: BTreeSet<ElementSet> = k_subsets(n1 + n2, r1 + r2)
            .filter(|b| {
                let x1 = b.intersection(e1);
                let x2 = ElementSet(b.0 >> n1);
                self.is_independent(x1) && other.rank_of(x2) == r2
            })
            .collect();
        Matroid::from_basis_set(n1 + n2, bases)
    }
}
