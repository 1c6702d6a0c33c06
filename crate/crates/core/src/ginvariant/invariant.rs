use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::sequence::{Composition, RankSequence};
use crate::error::{Error, Result};

/// A vector in the symbol basis {[r] : r an (n,r)-sequence}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GInvariant {
    n: usize,
    r: usize,
    coeffs: BTreeMap<RankSequence, BigInt>,
}

impl GInvariant {
    pub fn zero(n: usize, r: usize) -> Self {
        GInvariant {
            n,
            r,
            coeffs: BTreeMap::new(),
        }
    }

    /// The invariant of the empty matroid.
    pub fn empty_matroid() -> Self {
        Self::single(RankSequence::empty(), BigInt::from(1))
    }

    pub fn single(seq: RankSequence, c: BigInt) -> Self {
        let mut g = Self::zero(seq.len(), seq.weight());
        g.add_term(seq, c);
        g
    }

    pub fn from_terms<I>(n: usize, r: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (RankSequence, BigInt)>,
    {
        let mut g = Self::zero(n, r);
        for (s, c) in terms {
            if s.len() != n || s.weight() != r {
                return Err(Error::InvalidInput(format!("symbol [{s}] is not an ({n},{r})-sequence")));
            }
            g.add_term(s, c);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn coeff(&self, s: &RankSequence) -> BigInt {
        self.coeffs.get(s).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RankSequence, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c[s]`; panics if `s` has the wrong shape.
    pub fn add_term(&mut self, s: RankSequence, c: BigInt) {
        assert!(
            s.len() == self.n && s.weight() == self.r,
            "symbol [{s}] is not an ({},{})-sequence",
            self.n,
            self.r
        );
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(s).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&s);
        }
    }

    pub fn total(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.n, self.r);
        for (s, c) in &self.coeffs {
            out.add_term(*s, c * k);
        }
        out
    }

    pub fn has_negative(&self) -> bool {
        self.coeffs.values().any(|c| c.is_negative())
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.n == other.n && self.r == other.r,
            "adding invariants of shapes ({},{}) and ({},{})",
            self.n,
            self.r,
            other.n,
            other.r
        );
    }
}

impl AddAssign<&GInvariant> for GInvariant {
    fn add_assign(&mut self, rhs: &GInvariant) {
        self.check_shape(rhs);
        for (s, c) in &rhs.coeffs {
            self.add_term(*s, c.clone());
        }
    }
}

impl Add for &GInvariant {
    type Output = GInvariant;
    fn add(self, rhs: &GInvariant) -> GInvariant {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &GInvariant {
    type Output = GInvariant;
    fn sub(self, rhs: &GInvariant) -> GInvariant {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (s, c) in &rhs.coeffs {
            out.add_term(*s, -c);
        }
        out
    }
}

/// Largest symbol first, as in `576[111000]+144[110100]`.
impl fmt::Display for GInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.coeffs.iter().rev().enumerate() {
            if i > 0 && !c.is_negative() {
                f.write_str("+")?;
            }
            write!(f, "{c}[{s}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G<{},{}>({self})", self.n, self.r)
    }
}

/// Parses sums such as `96[11100]+24[11010]`; a missing coefficient means 1.
impl FromStr for GInvariant {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let open = rest
                .find('[')
                .ok_or_else(|| Error::InvalidInput(format!("expected '[' in {text:?}")))?;
            let close = rest
                .find(']')
                .ok_or_else(|| Error::InvalidInput(format!("expected ']' in {text:?}")))?;
            let coeff = match &rest[..open] {
                "" | "+" => BigInt::from(1),
                "-" => BigInt::from(-1),
                c => c
                    .trim_start_matches('+')
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidInput(format!("bad coefficient {c:?}")))?,
            };
            let seq: RankSequence = rest[open + 1..close].parse()?;
            terms.push((seq, coeff));
            rest = &rest[close + 1..];
        }
        let (n, r) = terms
            .first()
            .map(|(s, _)| (s.len(), s.weight()))
            .ok_or_else(|| Error::InvalidInput("an invariant needs at least one symbol".into()))?;
        Self::from_terms(n, r, terms)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GInvariantRepr {
    n: usize,
    r: usize,
    coeffs: BTreeMap<String, String>,
}

impl Serialize for GInvariant {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        GInvariantRepr {
            n: self.n,
            r: self.r,
            coeffs: self
                .coeffs
                .iter()
                .map(|(s, c)| (s.to_string(), c.to_string()))
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GInvariant {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = GInvariantRepr::deserialize(de)?;
        let terms = repr
            .coeffs
            .iter()
            .map(|(s, c)| {
                let seq: RankSequence = s.parse().map_err(D::Error::custom)?;
                let c: BigInt = c.parse().map_err(|_| D::Error::custom(format!("bad integer {c:?}")))?;
                Ok((seq, c))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        GInvariant::from_terms(repr.n, repr.r, terms).map_err(D::Error::custom)
    }
}

/// Flag counts indexed by (n,r)-compositions; the coordinates in the γ-basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CatenaryData {
    n: usize,
    r: usize,
    counts: BTreeMap<Composition, BigInt>,
}

impl CatenaryData {
    pub fn zero(n: usize, r: usize) -> Self {
        CatenaryData {
            n,
            r,
            counts: BTreeMap::new(),
        }
    }

    pub fn single(c: Composition, count: BigInt) -> Self {
        let mut out = Self::zero(c.n(), c.r());
        out.add(c, count);
        out
    }

    pub fn from_terms<I>(n: usize, r: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Composition, BigInt)>,
    {
        let mut out = Self::zero(n, r);
        for (c, k) in terms {
            if c.n() != n || c.r() != r {
                return Err(Error::InvalidInput(format!("{c} is not an ({n},{r})-composition")));
            }
            out.add(c, k);
        }
        Ok(out)
    }

    /// Builds from raw part lists, inferring (n, r) from the first entry.
    pub fn from_counts<I, P>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (P, i64)>,
        P: AsRef<[usize]>,
    {
        let terms = terms
            .into_iter()
            .map(|(p, k)| Ok((Composition::new(p.as_ref().to_vec())?, BigInt::from(k))))
            .collect::<Result<Vec<_>>>()?;
        let (n, r) = terms
            .first()
            .map(|(c, _)| (c.n(), c.r()))
            .ok_or_else(|| Error::InvalidInput("catenary data needs at least one entry".into()))?;
        Self::from_terms(n, r, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, c: &Composition) -> BigInt {
        self.counts.get(c).cloned().unwrap_or_default()
    }

    /// Count for a raw part list; zero if the parts do not form a composition.
    pub fn get_parts(&self, parts: &[usize]) -> BigInt {
        Composition::new(parts.to_vec())
            .map(|c| self.get(&c))
            .unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &BigInt)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn add(&mut self, c: Composition, k: BigInt) {
        assert!(
            c.n() == self.n && c.r() == self.r,
            "{c} is not an ({},{})-composition",
            self.n,
            self.r
        );
        if k.is_zero() {
            return;
        }
        let entry = self.counts.entry(c.clone()).or_default();
        *entry += k;
        if entry.is_zero() {
            self.counts.remove(&c);
        }
    }

    /// Total number of flags.
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn has_negative(&self) -> bool {
        self.counts.values().any(|c| c.is_negative())
    }
}

impl AddAssign<&CatenaryData> for CatenaryData {
    fn add_assign(&mut self, rhs: &CatenaryData) {
        assert!(self.n == rhs.n && self.r == rhs.r, "adding catenary data of different shapes");
        for (c, k) in &rhs.counts {
            self.add(c.clone(), k.clone());
        }
    }
}

impl fmt::Display for CatenaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (c, k)) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}:{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for CatenaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu<{},{}>{self}", self.n, self.r)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CountRepr {
    composition: Vec<usize>,
    count: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatenaryRepr {
    n: usize,
    r: usize,
    counts: Vec<CountRepr>,
}

impl Serialize for CatenaryData {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        CatenaryRepr {
            n: self.n,
            r: self.r,
            counts: self
                .counts
                .iter()
                .map(|(c, k)| CountRepr {
                    composition: c.parts().to_vec(),
                    count: k.to_string(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for CatenaryData {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let repr = CatenaryRepr::deserialize(de)?;
        let terms = repr
            .counts
            .into_iter()
            .map(|e| {
                let c = Composition::new(e.composition).map_err(D::Error::custom)?;
                let k: BigInt = e
                    .count
                    .parse()
                    .map_err(|_| D::Error::custom(format!("bad integer {:?}", e.count)))?;
                Ok((c, k))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        CatenaryData::from_terms(repr.n, repr.r, terms).map_err(D::Error::custom)
    }
}

/// Bivariate polynomial in x, y with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TuttePolynomial {
    coeffs: BTreeMap<(usize, usize), BigInt>,
}

impl TuttePolynomial {
    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), BigInt)>>(terms: I) -> Self {
        let mut t = TuttePolynomial::default();
        for (k, c) in terms {
            t.add_term(k.0, k.1, c);
        }
        t
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, x: i64, y: i64) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| c * num_traits::pow(BigInt::from(x), i) * num_traits::pow(BigInt::from(y), j))
            .sum()
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        // descending total degree, then x-degree
        let mut keys: Vec<_> = self.coeffs.iter().collect();
        keys.sort_by(|a, b| {
            let (da, db) = (a.0 .0 + a.0 .1, b.0 .0 + b.0 .1);
            db.cmp(&da).then(b.0 .0.cmp(&a.0 .0))
        });
        for (idx, (&(i, j), c)) in keys.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mono = monomial(i, j);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == BigInt::from(1) {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

fn monomial(i: usize, j: usize) -> String {
    let var = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    format!("{}{}", var("x", i), var("y", j))
}

impl fmt::Debug for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({self})")
    }
}

#[derive(Serialize)]
struct TutteTerm {
    x: usize,
    y: usize,
    coeff: String,
}

#[derive(Serialize)]
struct TutteRepr {
    terms: Vec<TutteTerm>,
    display: String,
}

impl Serialize for TuttePolynomial {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        TutteRepr {
            terms: self
                .coeffs
                .iter()
                .map(|(&(x, y), c)| TutteTerm {
                    x,
                    y,
                    coeff: c.to_string(),
                })
                .collect(),
            display: self.to_string(),
        }
        .serialize(ser)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let g: GInvariant = "576[111000]+144[110100]".parse().unwrap();
        assert_eq!((g.n(), g.r()), (6, 3));
        assert_eq!(g.total(), BigInt::from(720));
        assert_eq!(g.to_string(), "576[111000]+144[110100]");
        let h: GInvariant = "[01]+[10]".parse().unwrap();
        assert_eq!(h.coeff(&"01".parse().unwrap()), BigInt::from(1));
        assert!("3[11]+2[100]".parse::<GInvariant>().is_err());
        let d = &g - &g;
        assert!(d.is_zero());
        assert_eq!(d.to_string(), "0");
    }

    #[test]
    fn json_shapes() {
        let g: GInvariant = "576[111000]+144[110100]".parse().unwrap();
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"n":6,"r":3,"coeffs":{"110100":"144","111000":"576"}}"#
        );
        let back: GInvariant = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        let c = CatenaryData::from_counts([(vec![0, 1, 2, 3], 12), (vec![0, 1, 1, 4], 6)]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"n":6,"r":3,"counts":[{"composition":[0,1,1,4],"count":"6"},{"composition":[0,1,2,3],"count":"12"}]}"#
        );
        assert_eq!(serde_json::from_str::<CatenaryData>(&text).unwrap(), c);
    }

    #[test]
    fn tutte_display_and_eval() {
        let t = TuttePolynomial::from_terms([((2, 0), 1.into()), ((1, 0), 1.into()), ((0, 1), 1.into())]);
        assert_eq!(t.to_string(), "x^2 + x + y");
        assert_eq!(t.eval(1, 1), BigInt::from(3));
    }
}
