use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A 0/1 word of length at most 64, stored most-significant-first so that the
/// derived order is lexicographic for words of equal length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RankSequence {
    len: u8,
    bits: u64,
}

impl RankSequence {
    pub const MAX_LEN: usize = 64;

    pub fn empty() -> Self {
        RankSequence { len: 0, bits: 0 }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        iter.into_iter().fold(Self::empty(), |s, b| s.push(b))
    }

    /// [1^r 0^(n-r)]
    pub fn ones_then_zeros(r: usize, n: usize) -> Self {
        Self::from_bits((0..n).map(|i| i < r))
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn get(&self, j: usize) -> bool {
        debug_assert!(j < self.len());
        (self.bits >> (self.len() - 1 - j)) & 1 == 1
    }

    /// Number of ones among the first `m` positions.
    pub fn prefix_weight(&self, m: usize) -> usize {
        if m == 0 {
            0
        } else {
            (self.bits >> (self.len() - m)).count_ones() as usize
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(move |j| self.get(j))
    }

    pub fn push(self, bit: bool) -> Self {
        assert!(self.len() < Self::MAX_LEN, "rank sequence too long");
        RankSequence {
            len: self.len + 1,
            bits: (self.bits << 1) | bit as u64,
        }
    }

    pub fn concat(self, other: Self) -> Self {
        assert!(self.len() + other.len() <= Self::MAX_LEN, "rank sequence too long");
        if other.len == 0 {
            return self;
        }
        RankSequence {
            len: self.len + other.len,
            bits: (self.bits << other.len) | other.bits,
        }
    }

    /// Inserts `bit` so that it ends up at position `pos`.
    pub fn insert(self, pos: usize, bit: bool) -> Self {
        assert!(pos <= self.len());
        let tail_len = self.len() - pos;
        let tail = self.bits & low_mask(tail_len);
        let head = self.bits >> tail_len;
        let bits = (((head << 1) | bit as u64) << tail_len) | tail;
        RankSequence {
            len: self.len + 1,
            bits,
        }
    }

    /// Replaces the right-most 1 by 0.
    pub fn demote(self) -> Option<Self> {
        if self.bits == 0 {
            return None;
        }
        Some(RankSequence {
            len: self.len,
            bits: self.bits & (self.bits - 1),
        })
    }

    /// Replaces the left-most 0 by 1.
    pub fn promote(self) -> Option<Self> {
        let zeros = !self.bits & low_mask(self.len());
        if zeros == 0 {
            return None;
        }
        let top = 63 - zeros.leading_zeros();
        Some(RankSequence {
            len: self.len,
            bits: self.bits | (1 << top),
        })
    }

    /// Reversed complement.
    pub fn dual(self) -> Self {
        Self::from_bits(self.iter().collect::<Vec<_>>().into_iter().rev().map(|b| !b))
    }

    pub fn to_composition(&self) -> Composition {
        let mut parts = vec![0usize];
        for b in self.iter() {
            if b {
                parts.push(1);
            } else {
                *parts.last_mut().unwrap() += 1;
            }
        }
        Composition(parts)
    }
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl fmt::Display for RankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for RankSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for RankSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > Self::MAX_LEN {
            return Err(Error::InvalidInput(format!("rank sequence longer than {}", Self::MAX_LEN)));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidInput(format!("bad rank-sequence character {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

/// An (n,r)-composition (a_0, a_1, ..., a_r) with a_j > 0 for j >= 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("a composition needs at least one part".into()));
        }
        if let Some(j) = parts.iter().skip(1).position(|&a| a == 0) {
            return Err(Error::InvalidInput(format!(
                "composition {parts:?} has a zero part at index {}",
                j + 1
            )));
        }
        if parts.iter().sum::<usize>() > RankSequence::MAX_LEN {
            return Err(Error::InvalidInput("composition too large".into()));
        }
        Ok(Composition(parts))
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty() && parts[1..].iter().all(|&a| a > 0));
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn r(&self) -> usize {
        self.0.len() - 1
    }

    /// Prefix sums s_j = a_0 + ... + a_j for j = 0..=r.
    pub fn prefix_sums(&self) -> Vec<usize> {
        self.0
            .iter()
            .scan(0, |acc, &a| {
                *acc += a;
                Some(*acc)
            })
            .collect()
    }

    pub fn to_sequence(&self) -> RankSequence {
        let mut s = RankSequence::from_bits(std::iter::repeat_n(false, self.0[0]));
        for &a in &self.0[1..] {
            s = s.push(true);
            for _ in 1..a {
                s = s.push(false);
            }
        }
        s
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Either side of the sequence/composition correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeqOrComp {
    Sequence(RankSequence),
    Composition(Composition),
}

pub fn seq_comp_bijection(x: &SeqOrComp) -> SeqOrComp {
    match x {
        SeqOrComp::Sequence(s) => SeqOrComp::Composition(s.to_composition()),
        SeqOrComp::Composition(c) => SeqOrComp::Sequence(c.to_sequence()),
    }
}

/// True iff b ⊵ a: every prefix sum of b is at most the matching prefix sum of a.
pub fn dominates(b: &Composition, a: &Composition) -> Result<bool> {
    if b.r() != a.r() || b.n() != a.n() {
        return Err(Error::InvalidInput(format!(
            "compositions {b} and {a} have different shapes"
        )));
    }
    Ok(dominates_unchecked(b, a))
}

pub(crate) fn dominates_unchecked(b: &Composition, a: &Composition) -> bool {
    let (mut sb, mut sa) = (0, 0);
    for (x, y) in b.0.iter().zip(&a.0) {
        sb += x;
        sa += y;
        if sb > sa {
            return false;
        }
    }
    true
}

/// All (n,r)-compositions in increasing order.
pub fn compositions(n: usize, r: usize) -> Vec<Composition> {
    fn rec(left: usize, slots: usize, parts: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 0 {
            if left == 0 {
                out.push(Composition(parts.clone()));
            }
            return;
        }
        for a in 1..=left + 1 - slots {
            parts.push(a);
            rec(left - a, slots - 1, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut parts = Vec::with_capacity(r + 1);
    for a0 in 0..=n - r {
        parts.push(a0);
        rec(n - a0, r, &mut parts, &mut out);
        parts.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> RankSequence {
        s.parse().unwrap()
    }

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(seq("110100").to_composition(), comp(&[0, 1, 2, 3]));
        assert_eq!(comp(&[0, 1, 1, 4]).to_sequence(), seq("111000"));
        assert_eq!(seq("0011").to_composition(), comp(&[2, 1, 1]));
        assert_eq!(seq("").to_composition(), comp(&[0]));
        assert_eq!(
            seq_comp_bijection(&SeqOrComp::Sequence(seq("0011"))),
            SeqOrComp::Composition(comp(&[2, 1, 1]))
        );
    }

    #[test]
    fn bijection_round_trips() {
        for n in 0..=8 {
            for r in 0..=n {
                let all = compositions(n, r);
                assert_eq!(num_bigint::BigInt::from(all.len()), crate::numeric::binomial(n, r));
                for c in all {
                    let s = c.to_sequence();
                    assert_eq!((s.len(), s.weight()), (n, r));
                    assert_eq!(s.to_composition(), c);
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&comp(&[0, 1, 1, 4]), &comp(&[0, 1, 2, 3])).unwrap());
        assert!(!dominates(&comp(&[0, 1, 2, 3]), &comp(&[0, 1, 1, 4])).unwrap());
        assert!(dominates(&comp(&[0, 1, 2, 3]), &comp(&[0, 1, 2, 3])).unwrap());
        assert!(dominates(&comp(&[0, 1, 2]), &comp(&[0, 1, 2, 3])).is_err());
    }

    #[test]
    fn compositions_reject_zero_parts() {
        assert!(Composition::new(vec![0, 0, 1]).is_err());
        assert!(Composition::new(vec![]).is_err());
        assert!(Composition::new(vec![3]).is_ok());
    }

    #[test]
    fn word_operations() {
        assert_eq!(seq("0110").demote().unwrap(), seq("0100"));
        assert_eq!(seq("0110").promote().unwrap(), seq("1110"));
        assert_eq!(seq("1101").promote().unwrap(), seq("1111"));
        assert!(seq("000").demote().is_none());
        assert!(seq("11").promote().is_none());
        assert_eq!(seq("110").dual(), seq("100"));
        assert_eq!(seq("101").insert(1, true), seq("1101"));
        assert_eq!(seq("101").insert(3, false), seq("1010"));
        assert_eq!(seq("101").insert(0, false), seq("0101"));
        assert_eq!(seq("10").concat(seq("01")), seq("1001"));
        assert_eq!(seq("10110").prefix_weight(3), 2);
        assert_eq!(seq("10110").prefix_weight(0), 0);
        assert!(seq("011") < seq("100"));
        assert!("012".parse::<RankSequence>().is_err());
    }
}
