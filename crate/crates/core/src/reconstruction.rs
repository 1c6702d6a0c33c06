//! Circle products, the slicing formula and reconstruction from decks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::constructions::g_dual;
use crate::error::{Error, Result};
use crate::ginvariant::{catenary_from_g, g_from_catenary, g_invariant, CatenaryData, Composition, GInvariant};
use crate::matroid::Matroid;
use crate::numeric::factorial;

/// γ(a_0..a_{r1}) ⊙ γ(0, b_1..b_{r2}) = γ(a_0..a_{r1}, b_1..b_{r2}), bilinearly.
pub fn circle_product(c1: &CatenaryData, c2: &CatenaryData) -> Result<CatenaryData> {
    let mut out = CatenaryData::zero(c1.n() + c2.n(), c1.r() + c2.r());
    for (b, _) in c2.terms() {
        if b.parts()[0] != 0 {
            return Err(Error::Precondition(format!("right factor has {b}, which does not start with 0")));
        }
    }
    for (a, ka) in c1.terms() {
        for (b, kb) in c2.terms() {
            let mut parts = a.parts().to_vec();
            parts.extend_from_slice(&b.parts()[1..]);
            out.add(Composition::from_parts_unchecked(parts), ka * kb);
        }
    }
    Ok(out)
}

fn sort_key(g: &GInvariant) -> (usize, usize, String) {
    (g.n(), g.r(), g.to_string())
}

/// An unlabeled multiset of invariants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantDeck {
    entries: Vec<(GInvariant, usize)>,
}

impl InvariantDeck {
    pub fn new<I: IntoIterator<Item = (GInvariant, usize)>>(items: I) -> Self {
        let mut entries: Vec<(GInvariant, usize)> = Vec::new();
        for (g, m) in items {
            if m == 0 {
                continue;
            }
            match entries.iter_mut().find(|(h, _)| *h == g) {
                Some(e) => e.1 += m,
                None => entries.push((g, m)),
            }
        }
        entries.sort_by_cached_key(|(g, _)| sort_key(g));
        InvariantDeck { entries }
    }

    pub fn from_invariants<I: IntoIterator<Item = GInvariant>>(items: I) -> Self {
        Self::new(items.into_iter().map(|g| (g, 1)))
    }

    pub fn entries(&self) -> &[(GInvariant, usize)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of cards, counted with multiplicity.
    pub fn card_count(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    fn catenaries(&self) -> Result<Vec<(CatenaryData, usize)>> {
        self.entries
            .iter()
            .map(|(g, m)| Ok((catenary_from_g(g)?, *m)))
            .collect()
    }

    fn common_rank(&self) -> Result<Option<usize>> {
        let mut ranks = self.entries.iter().map(|(g, _)| g.r());
        let Some(r) = ranks.next() else { return Ok(None) };
        if ranks.any(|x| x != r) {
            return Err(Error::InvalidInput("deck entries have different ranks".into()));
        }
        Ok(Some(r))
    }
}

/// An unlabeled multiset of (restriction, contraction) pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairDeck {
    entries: Vec<((GInvariant, GInvariant), usize)>,
}

impl PairDeck {
    pub fn new<I: IntoIterator<Item = ((GInvariant, GInvariant), usize)>>(items: I) -> Self {
        let mut entries: Vec<((GInvariant, GInvariant), usize)> = Vec::new();
        for (p, m) in items {
            if m == 0 {
                continue;
            }
            match entries.iter_mut().find(|(q, _)| *q == p) {
                Some(e) => e.1 += m,
                None => entries.push((p, m)),
            }
        }
        entries.sort_by_cached_key(|((a, b), _)| (sort_key(a), sort_key(b)));
        PairDeck { entries }
    }

    pub fn entries(&self) -> &[((GInvariant, GInvariant), usize)] {
        &self.entries
    }
}

/// 𝒢(M) = Σ over rank-k flats X of 𝒢(M|X) ⊙ 𝒢(M/X).
pub fn slice_assemble(deck: &PairDeck, k: usize) -> Result<GInvariant> {
    let first = deck
        .entries
        .first()
        .ok_or_else(|| Error::InvalidInput("an empty pair deck determines nothing".into()))?;
    let (n, r) = (first.0 .0.n() + first.0 .1.n(), first.0 .0.r() + first.0 .1.r());
    let mut out = CatenaryData::zero(n, r);
    for ((a, b), m) in &deck.entries {
        if a.r() != k || a.n() + b.n() != n || a.r() + b.r() != r {
            return Err(Error::InvalidInput(format!(
                "deck pair of shapes ({},{}) and ({},{}) does not fit rank {k} and ({n},{r})",
                a.n(),
                a.r(),
                b.n(),
                b.r()
            )));
        }
        let p = circle_product(&catenary_from_g(a)?, &catenary_from_g(b)?)?;
        for (c, v) in p.terms() {
            out.add(c.clone(), v * BigInt::from(*m));
        }
    }
    Ok(g_from_catenary(&out))
}

/// Σ over cards and their flags of ν ∏_{j<r−1} (s_{j+1} − s_j)/(n − s_j).
fn copoint_equation(cards: &[(CatenaryData, usize)], n: usize) -> BigRational {
    let mut total = BigRational::zero();
    for (c, m) in cards {
        for (a, nu) in c.terms() {
            let s = a.prefix_sums();
            let mut term = BigRational::from_integer(nu * BigInt::from(*m));
            for j in 0..s.len() - 1 {
                term *= BigRational::new(BigInt::from(s[j + 1] - s[j]), BigInt::from(n - s[j]));
            }
            total += term;
        }
    }
    total
}

/// Recovers n from a copoint deck by solving the strictly decreasing equation.
pub fn recover_n(deck: &InvariantDeck) -> Result<usize> {
    let r1 = deck
        .common_rank()?
        .ok_or_else(|| Error::InvalidInput("an empty copoint deck (rank 0) needs an explicit size".into()))?;
    if r1 == 0 {
        return Err(Error::InvalidInput(
            "a rank-1 copoint deck does not determine n; supply the size explicitly".into(),
        ));
    }
    let cards = deck.catenaries()?;
    let max_size = deck.entries.iter().map(|(g, _)| g.n()).max().unwrap();
    // A card standing for several copoints of size s has total j·s!.
    let copoints: BigInt = deck
        .entries
        .iter()
        .map(|(g, m)| g.total() / factorial(g.n()) * BigInt::from(g.n() * m))
        .sum();
    let cap = usize::try_from(copoints).unwrap_or(usize::MAX - r1 - 1) + r1 + 1;
    let one = BigRational::one();
    let mut prev: Option<BigRational> = None;
    for n in max_size + 1..=cap.max(max_size + 1) {
        let v = copoint_equation(&cards, n);
        if let Some(p) = &prev {
            if v >= *p {
                return Err(Error::IdentityFailed(format!("copoint equation is not decreasing at n={n}")));
            }
        }
        if v == one {
            return Ok(n);
        }
        if v < one {
            return Err(Error::NoSolution(format!("copoint equation skips 1 between n={} and n={n}", n - 1)));
        }
        prev = Some(v);
    }
    Err(Error::NoSolution(format!("no ground-set size up to {cap} fits the deck")))
}

pub fn reconstruct_from_copoint_deck(deck: &InvariantDeck) -> Result<GInvariant> {
    let n = recover_n(deck)?;
    reconstruct_from_copoint_deck_with_size(deck, n)
}

/// Reassembles ν(M; a_0..a_r) = Σ over cards of size n − a_r of ν(card; a_0..a_{r−1}).
/// An empty deck stands for a rank-0 matroid.
pub fn reconstruct_from_copoint_deck_with_size(deck: &InvariantDeck, n: usize) -> Result<GInvariant> {
    let Some(r1) = deck.common_rank()? else {
        return Ok(GInvariant::single(
            crate::ginvariant::RankSequence::ones_then_zeros(0, n),
            factorial(n),
        ));
    };
    let cards = deck.catenaries()?;
    let mut loops: Option<usize> = None;
    let mut out = CatenaryData::zero(n, r1 + 1);
    for (c, m) in &cards {
        if c.n() >= n {
            return Err(Error::InvalidInput(format!("a copoint of size {} in a matroid of size {n}", c.n())));
        }
        for (a, nu) in c.terms() {
            let a0 = a.parts()[0];
            if *loops.get_or_insert(a0) != a0 {
                return Err(Error::IdentityFailed("deck entries disagree on the number of loops".into()));
            }
            let mut parts = a.parts().to_vec();
            parts.push(n - c.n());
            out.add(Composition::new(parts)?, nu * BigInt::from(*m));
        }
    }
    Ok(g_from_catenary(&out))
}

fn dual_deck(deck: &InvariantDeck) -> InvariantDeck {
    InvariantDeck::new(deck.entries.iter().map(|(g, m)| (g_dual(g), *m)))
}

/// Reconstruction from {𝒢(M/Y) : Y a circuit}, through the dual copoint deck.
pub fn circuit_deck_reconstruct(deck: &InvariantDeck) -> Result<GInvariant> {
    Ok(g_dual(&reconstruct_from_copoint_deck(&dual_deck(deck))?))
}

pub fn circuit_deck_reconstruct_with_size(deck: &InvariantDeck, n: usize) -> Result<GInvariant> {
    Ok(g_dual(&reconstruct_from_copoint_deck_with_size(&dual_deck(deck), n)?))
}

/// For girth at least g + 2: 𝒢(M) = g! γ(0,1^g) ⊙ Σ 𝒢(M/X) over rank-g flats X.
pub fn girth_deck_reconstruct(deck: &InvariantDeck, g: usize, n: usize) -> Result<GInvariant> {
    let r2 = deck
        .common_rank()?
        .ok_or_else(|| Error::InvalidInput("empty contraction deck".into()))?;
    if deck.entries.iter().any(|(e, _)| e.n() + g != n) {
        return Err(Error::InvalidInput(format!("deck entries do not have {} elements", n.saturating_sub(g))));
    }
    let mut sum = CatenaryData::zero(n - g, r2);
    for (c, m) in deck.catenaries()? {
        for (a, nu) in c.terms() {
            sum.add(a.clone(), nu * BigInt::from(m));
        }
    }
    let mut ones = vec![0];
    ones.extend(std::iter::repeat_n(1, g));
    let bottom = CatenaryData::single(Composition::new(ones)?, factorial(g));
    Ok(g_from_catenary(&circle_product(&bottom, &sum)?))
}

pub fn copoint_deck(m: &Matroid) -> InvariantDeck {
    InvariantDeck::from_invariants(m.copoints().into_iter().map(|x| g_invariant(&m.restriction(x))))
}

/// ℋ(M;s): the copoint deck summed by copoint size.
pub fn h_sums(m: &Matroid) -> InvariantDeck {
    let deck = copoint_deck(m);
    let mut sums: Vec<GInvariant> = Vec::new();
    for (g, mult) in deck.entries() {
        let scaled = g.scaled(&BigInt::from(*mult));
        match sums.iter_mut().find(|s| s.n() == g.n()) {
            Some(s) => *s += &scaled,
            None => sums.push(scaled),
        }
    }
    InvariantDeck::from_invariants(sums)
}

pub fn circuit_deck(m: &Matroid) -> InvariantDeck {
    InvariantDeck::from_invariants(m.circuits().into_iter().map(|y| g_invariant(&m.contraction(y))))
}

pub fn rank_k_deck(m: &Matroid, k: usize) -> Result<PairDeck> {
    let flats = m.flats_of_rank(k)?;
    Ok(PairDeck::new(
        flats
            .into_iter()
            .map(|x| ((g_invariant(&m.restriction(x)), g_invariant(&m.contraction(x))), 1)),
    ))
}

pub fn girth_deck(m: &Matroid, g: usize) -> Result<InvariantDeck> {
    Ok(InvariantDeck::from_invariants(
        m.flats_of_rank(g)?.into_iter().map(|x| g_invariant(&m.contraction(x))),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeckRole {
    Copoint,
    Circuit,
    RankK,
    HSums,
    Girth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DeckCard {
    Single {
        invariant: GInvariant,
        multiplicity: usize,
    },
    Pair {
        restriction: GInvariant,
        contraction: GInvariant,
        multiplicity: usize,
    },
}

/// Interchange form of a deck.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeckFile {
    pub role: DeckRole,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub entries: Vec<DeckCard>,
}

impl DeckFile {
    pub fn from_invariant_deck(role: DeckRole, deck: &InvariantDeck) -> Self {
        DeckFile {
            role,
            k: None,
            n: None,
            entries: deck
                .entries()
                .iter()
                .map(|(g, m)| DeckCard::Single {
                    invariant: g.clone(),
                    multiplicity: *m,
                })
                .collect(),
        }
    }

    pub fn from_pair_deck(k: usize, deck: &PairDeck) -> Self {
        DeckFile {
            role: DeckRole::RankK,
            k: Some(k),
            n: None,
            entries: deck
                .entries()
                .iter()
                .map(|((a, b), m)| DeckCard::Pair {
                    restriction: a.clone(),
                    contraction: b.clone(),
                    multiplicity: *m,
                })
                .collect(),
        }
    }

    pub fn invariant_deck(&self) -> Result<InvariantDeck> {
        self.entries
            .iter()
            .map(|e| match e {
                DeckCard::Single { invariant, multiplicity } => Ok((invariant.clone(), *multiplicity)),
                DeckCard::Pair { .. } => Err(Error::InvalidInput(
                    "this deck role takes single invariants, not pairs".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map(InvariantDeck::new)
    }

    pub fn pair_deck(&self) -> Result<PairDeck> {
        self.entries
            .iter()
            .map(|e| match e {
                DeckCard::Pair {
                    restriction,
                    contraction,
                    multiplicity,
                } => Ok(((restriction.clone(), contraction.clone()), *multiplicity)),
                DeckCard::Single { .. } => Err(Error::InvalidInput("a rank-k deck takes pairs".into())),
            })
            .collect::<Result<Vec<_>>>()
            .map(PairDeck::new)
    }

    /// Reassembles 𝒢(M) according to the role.
    pub fn reconstruct(&self) -> Result<GInvariant> {
        match self.role {
            DeckRole::Copoint | DeckRole::HSums => match self.n {
                Some(n) => reconstruct_from_copoint_deck_with_size(&self.invariant_deck()?, n),
                None => reconstruct_from_copoint_deck(&self.invariant_deck()?),
            },
            DeckRole::Circuit => match self.n {
                Some(n) => circuit_deck_reconstruct_with_size(&self.invariant_deck()?, n),
                None => circuit_deck_reconstruct(&self.invariant_deck()?),
            },
            DeckRole::RankK => {
                let k = self
                    .k
                    .ok_or_else(|| Error::InvalidInput("a rank-k deck needs the field k".into()))?;
                slice_assemble(&self.pair_deck()?, k)
            }
            DeckRole::Girth => {
                let g = self.k.ok_or_else(|| Error::InvalidInput("a girth deck needs the field k".into()))?;
                let n = self.n.ok_or_else(|| Error::InvalidInput("a girth deck needs the field n".into()))?;
                girth_deck_reconstruct(&self.invariant_deck()?, g, n)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn g(s: &str) -> GInvariant {
        s.parse().unwrap()
    }

    fn cat(terms: &[(&[usize], i64)]) -> CatenaryData {
        CatenaryData::from_counts(terms.iter().map(|&(p, k)| (p, k))).unwrap()
    }

    #[test]
    fn circle_product_examples() {
        assert_eq!(circle_product(&cat(&[(&[0, 1], 1)]), &cat(&[(&[0, 2], 1)])).unwrap(), cat(&[(&[0, 1, 2], 1)]));
        assert_eq!(
            circle_product(&cat(&[(&[0, 2], 1)]), &cat(&[(&[0, 1, 3], 2)])).unwrap(),
            cat(&[(&[0, 2, 1, 3], 2)])
        );
        assert!(circle_product(&cat(&[(&[0, 1], 1)]), &cat(&[(&[1, 1], 1)])).is_err());
    }

    #[test]
    fn slicing() {
        let u23 = Matroid::uniform(2, 3);
        assert_eq!(slice_assemble(&rank_k_deck(&u23, 1).unwrap(), 1).unwrap(), g("6[110]"));
        let k4 = corpus::k4();
        let deck = rank_k_deck(&k4, 2).unwrap();
        assert_eq!(deck.entries().iter().map(|e| e.1).sum::<usize>(), 7);
        assert_eq!(slice_assemble(&deck, 2).unwrap(), g("576[111000]+144[110100]"));
        assert_eq!(slice_assemble(&rank_k_deck(&k4, 0).unwrap(), 0).unwrap(), g_invariant(&k4));
    }

    #[test]
    fn recovering_n() {
        let u11 = g_invariant(&Matroid::uniform(1, 1));
        assert_eq!(recover_n(&InvariantDeck::new([(u11, 3)])).unwrap(), 3);
        assert_eq!(recover_n(&copoint_deck(&corpus::k4())).unwrap(), 6);
        let rank1 = InvariantDeck::new([(GInvariant::empty_matroid(), 1)]);
        assert!(recover_n(&rank1).is_err());
    }

    #[test]
    fn copoint_reconstruction() {
        assert_eq!(
            reconstruct_from_copoint_deck(&copoint_deck(&corpus::k4())).unwrap(),
            g("576[111000]+144[110100]")
        );
        let fig = InvariantDeck::new([(g_invariant(&Matroid::uniform(2, 3)), 2), (g_invariant(&Matroid::uniform(2, 2)), 9)]);
        assert_eq!(fig, copoint_deck(&corpus::twin_m()));
        assert_eq!(reconstruct_from_copoint_deck(&fig).unwrap(), g("648[111000]+72[110100]"));
        let sums = h_sums(&corpus::twin_m());
        assert_eq!(sums.card_count(), 2);
        assert_eq!(reconstruct_from_copoint_deck(&sums).unwrap(), g("648[111000]+72[110100]"));
        assert_eq!(
            reconstruct_from_copoint_deck_with_size(&InvariantDeck::default(), 3).unwrap(),
            g("6[000]")
        );
    }

    #[test]
    fn circuit_and_girth_decks() {
        let k4 = corpus::k4();
        assert_eq!(circuit_deck(&k4).card_count(), 7);
        assert_eq!(circuit_deck_reconstruct(&circuit_deck(&k4)).unwrap(), g_invariant(&k4));
        let u23 = Matroid::uniform(2, 3);
        assert!(circuit_deck_reconstruct(&circuit_deck(&u23)).is_err());
        assert_eq!(circuit_deck_reconstruct_with_size(&circuit_deck(&u23), 3).unwrap(), g("6[110]"));
        assert_eq!(girth_deck_reconstruct(&girth_deck(&u23, 1).unwrap(), 1, 3).unwrap(), g("6[110]"));
        assert_eq!(girth_deck_reconstruct(&girth_deck(&k4, 1).unwrap(), 1, 6).unwrap(), g_invariant(&k4));
        assert_eq!(girth_deck_reconstruct(&girth_deck(&k4, 0).unwrap(), 0, 6).unwrap(), g_invariant(&k4));
    }

    #[test]
    fn deck_file_round_trip() {
        let file = DeckFile::from_invariant_deck(DeckRole::Copoint, &copoint_deck(&corpus::k4()));
        let text = serde_json::to_string(&file).unwrap();
        assert!(text.starts_with(r#"{"role":"copoint","entries":[{"invariant":"#));
        let back: DeckFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.reconstruct().unwrap(), g_invariant(&corpus::k4()));
        let pairs = DeckFile::from_pair_deck(1, &rank_k_deck(&corpus::k4(), 1).unwrap());
        let back: DeckFile = serde_json::from_str(&serde_json::to_string(&pairs).unwrap()).unwrap();
        assert_eq!(back.reconstruct().unwrap(), g_invariant(&corpus::k4()));
    }
}
