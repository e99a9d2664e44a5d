//! Formal characters over the weight lattices of type A1 (`Z`) and A2 (`Z^2`).
//!
//! A [`FormalCharacter`] is an immutable, finitely supported map from weights
//! to integer multiplicities. Terms are kept sorted lexicographically by
//! coordinates and zero entries are never stored, so two equal characters are
//! structurally equal and serialize to identical bytes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mult::Mult;

/// A prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^i` as a signed weight scale.
    pub fn power(self, i: u32) -> i64 {
        i64::try_from(self.0)
            .ok()
            .and_then(|p| p.checked_pow(i))
            .expect("p^i overflows the weight range")
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    A1,
    A2,
}

impl Rank {
    pub fn get(self) -> u8 {
        match self {
            Rank::A1 => 1,
            Rank::A2 => 2,
        }
    }

    pub fn from_u8(r: u8) -> Option<Self> {
        match r {
            1 => Some(Rank::A1),
            2 => Some(Rank::A2),
            _ => None,
        }
    }
}

/// A weight in fundamental-weight coordinates. Rank-1 weights keep the unused
/// second coordinate at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    coords: [i64; 2],
    rank: Rank,
}

impl Weight {
    pub const fn a1(n: i64) -> Self {
        Weight {
            coords: [n, 0],
            rank: Rank::A1,
        }
    }

    pub const fn a2(a: i64, b: i64) -> Self {
        Weight {
            coords: [a, b],
            rank: Rank::A2,
        }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords[..self.rank.get() as usize]
    }

    pub fn from_coords(coords: &[i64]) -> Option<Self> {
        match *coords {
            [n] => Some(Weight::a1(n)),
            [a, b] => Some(Weight::a2(a, b)),
            _ => None,
        }
    }

    /// First coordinate; the whole weight in rank 1.
    pub fn first(&self) -> i64 {
        self.coords[0]
    }

    pub fn second(&self) -> i64 {
        self.coords[1]
    }

    fn plus(&self, other: &Weight) -> Weight {
        Weight {
            coords: [
                self.coords[0] + other.coords[0],
                self.coords[1] + other.coords[1],
            ],
            rank: self.rank,
        }
    }

    fn scaled(&self, k: i64) -> Weight {
        let mul = |c: i64| c.checked_mul(k).expect("twisted weight overflows i64");
        Weight {
            coords: [mul(self.coords[0]), mul(self.coords[1])],
            rank: self.rank,
        }
    }

    fn negated(&self) -> Weight {
        self.scaled(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank {
            Rank::A1 => write!(f, "{}", self.coords[0]),
            Rank::A2 => write!(f, "({},{})", self.coords[0], self.coords[1]),
        }
    }
}

/// A finitely supported integer-valued function on the weight lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CharacterJson", into = "CharacterJson")]
pub struct FormalCharacter {
    rank: Rank,
    terms: Vec<(Weight, Mult)>,
}

// Above this many slots a rank-1 product is accumulated sparsely.
const DENSE_SPAN_LIMIT: i64 = 1 << 24;

impl FormalCharacter {
    pub fn zero(rank: Rank) -> Self {
        FormalCharacter {
            rank,
            terms: Vec::new(),
        }
    }

    /// The character of the trivial module.
    pub fn one(rank: Rank) -> Self {
        let origin = match rank {
            Rank::A1 => Weight::a1(0),
            Rank::A2 => Weight::a2(0, 0),
        };
        FormalCharacter {
            rank,
            terms: vec![(origin, Mult::ONE)],
        }
    }

    /// Builds a character, summing repeated weights and dropping zeros.
    pub fn from_terms<I>(rank: Rank, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, Mult)>,
    {
        let mut acc: BTreeMap<Weight, Mult> = BTreeMap::new();
        for (w, m) in terms {
            if w.rank != rank {
                return Err(Error::RankMismatch {
                    left: rank.get(),
                    right: w.rank.get(),
                });
            }
            *acc.entry(w).or_default() += &m;
        }
        Ok(Self::from_sorted_map(rank, acc))
    }

    /// Rank-1 shorthand: `FormalCharacter::a1([(2, 1), (0, 1), (-2, 1)])`.
    pub fn a1<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        Self::from_terms(
            Rank::A1,
            terms
                .into_iter()
                .map(|(w, m)| (Weight::a1(w), Mult::from(m))),
        )
        .expect("rank-1 weights")
    }

    /// Rank-2 shorthand: `FormalCharacter::a2([((1, 0), 1), ((-1, 1), 1)])`.
    pub fn a2<I: IntoIterator<Item = ((i64, i64), i64)>>(terms: I) -> Self {
        Self::from_terms(
            Rank::A2,
            terms
                .into_iter()
                .map(|((a, b), m)| (Weight::a2(a, b), Mult::from(m))),
        )
        .expect("rank-2 weights")
    }

    fn from_sorted_map(rank: Rank, map: BTreeMap<Weight, Mult>) -> Self {
        FormalCharacter {
            rank,
            terms: map.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    /// Terms in ascending lexicographic order of weight.
    pub fn terms(&self) -> &[(Weight, Mult)] {
        &self.terms
    }

    /// Number of distinct weights; `is_zero` plays the role of `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, w: &Weight) -> Mult {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(w))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or(Mult::ZERO)
    }

    /// Lexicographically greatest weight in the support.
    pub fn max_weight(&self) -> Option<&Weight> {
        self.terms.last().map(|(w, _)| w)
    }

    pub fn min_weight(&self) -> Option<&Weight> {
        self.terms.first().map(|(w, _)| w)
    }

    /// Evaluation at the identity: the sum of all multiplicities.
    pub fn dimension(&self) -> Mult {
        self.terms.iter().map(|(_, m)| m).sum()
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.rank.get(),
                right: other.rank.get(),
            })
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (xs, ys) = (&self.terms, &other.terms);
        while i < xs.len() || j < ys.len() {
            let pick = match (xs.get(i), ys.get(j)) {
                (Some((wx, _)), Some((wy, _))) => wx.cmp(wy),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match pick {
                std::cmp::Ordering::Less => {
                    out.push(xs[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let (w, m) = &ys[j];
                    out.push((*w, if negate_other { -m } else { m.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut m = xs[i].1.clone();
                    if negate_other {
                        m -= &ys[j].1;
                    } else {
                        m += &ys[j].1;
                    }
                    if !m.is_zero() {
                        out.push((xs[i].0, m));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        FormalCharacter {
            rank: self.rank,
            terms: out,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.merge(other, true))
    }

    pub fn scale(&self, k: &Mult) -> Self {
        if k.is_zero() {
            return Self::zero(self.rank);
        }
        FormalCharacter {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, m)| (*w, m * k)).collect(),
        }
    }

    /// Product of characters: convolution of supports.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.rank));
        }
        if self.rank == Rank::A1 {
            if let Some(c) = self.multiply_dense_a1(other) {
                return Ok(c);
            }
        }
        Ok(self.multiply_sparse(other))
    }

    fn multiply_sparse(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Weight, Mult> = BTreeMap::new();
        for (wx, mx) in &self.terms {
            for (wy, my) in &other.terms {
                acc.entry(wx.plus(wy)).or_default().add_product(mx, my);
            }
        }
        Self::from_sorted_map(self.rank, acc)
    }

    // Machine-word fast path; `None` sends the caller to the exact sparse path.
    fn multiply_dense_a1(&self, other: &Self) -> Option<Self> {
        let lo = self.min_weight()?.first() + other.min_weight()?.first();
        let hi = self.max_weight()?.first() + other.max_weight()?.first();
        if hi - lo >= DENSE_SPAN_LIMIT {
            return None;
        }
        let small = |c: &Self| -> Option<Vec<(i64, i128)>> {
            c.terms
                .iter()
                .map(|(w, m)| m.to_i64().map(|v| (w.first(), i128::from(v))))
                .collect()
        };
        let (xs, ys) = (small(self)?, small(other)?);
        let mut acc = vec![0i128; (hi - lo + 1) as usize];
        for &(wx, mx) in &xs {
            let base = wx - lo;
            for &(wy, my) in &ys {
                let slot = &mut acc[(base + wy) as usize];
                *slot = slot.checked_add(mx * my)?;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, m)| *m != 0)
            .map(|(i, m)| (Weight::a1(lo + i as i64), Mult::from(m)))
            .collect();
        Some(FormalCharacter {
            rank: Rank::A1,
            terms,
        })
    }

    /// The `i`-th Frobenius twist: every weight is multiplied by `p^i`.
    pub fn frobenius_twist(&self, p: Prime, i: u32) -> Self {
        let k = p.power(i);
        if k == 1 {
            return self.clone();
        }
        FormalCharacter {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(w, m)| (w.scaled(k), m.clone()))
                .collect(),
        }
    }

    /// Character of the linear dual: support negated.
    pub fn dual(&self) -> Self {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(w, m)| (w.negated(), m.clone()))
            .collect();
        terms.reverse();
        FormalCharacter {
            rank: self.rank,
            terms,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_positive())
    }

    /// Invariance under the Weyl group: negation for A1, the two simple
    /// reflections `s1(a,b) = (-a, a+b)` and `s2(a,b) = (a+b, -b)` for A2.
    pub fn is_weyl_invariant(&self) -> bool {
        let reflections: &[fn(&Weight) -> Weight] = match self.rank {
            Rank::A1 => &[|w| w.negated()],
            Rank::A2 => &[
                |w| Weight::a2(-w.coords[0], w.coords[0] + w.coords[1]),
                |w| Weight::a2(w.coords[0] + w.coords[1], -w.coords[1]),
            ],
        };
        reflections
            .iter()
            .all(|s| self.terms.iter().all(|(w, m)| self.get(&s(w)) == *m))
    }
}

/// Canonical JSON form: `{"rank": r, "terms": [[[c1, ..., cr], mult], ...]}`.
#[derive(Serialize, Deserialize)]
struct CharacterJson {
    rank: u8,
    terms: Vec<(Vec<i64>, Mult)>,
}

impl From<FormalCharacter> for CharacterJson {
    fn from(c: FormalCharacter) -> Self {
        CharacterJson {
            rank: c.rank.get(),
            terms: c
                .terms
                .iter()
                .map(|(w, m)| (w.coords().to_vec(), m.clone()))
                .collect(),
        }
    }
}

impl TryFrom<CharacterJson> for FormalCharacter {
    type Error = Error;

    fn try_from(j: CharacterJson) -> Result<Self> {
        let rank = Rank::from_u8(j.rank).ok_or_else(|| Error::OutOfRange {
            what: "rank",
            value: i64::from(j.rank),
            expected: "1 or 2".into(),
        })?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for (coords, m) in j.terms {
            let w = Weight::from_coords(&coords)
                .filter(|w| w.rank == rank)
                .ok_or(Error::RankMismatch {
                    left: rank.get(),
                    right: coords.len() as u8,
                })?;
            terms.push((w, m));
        }
        FormalCharacter::from_terms(rank, terms)
    }
}

/// Base-`p` expansion `a0 + a1 p + ... + ak p^k` of a non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BasePDigits {
    p: Prime,
    digits: Vec<u64>,
}

impl BasePDigits {
    pub fn p(&self) -> Prime {
        self.p
    }

    /// `(a0, ..., ak)`, least significant first. Zero expands to `(0)`.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p.get() + d)
    }

    /// Index `l` of the first nonzero digit, `None` for zero.
    pub fn leading_index(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d != 0)
    }
}

pub fn digits(p: Prime, mut value: u64) -> BasePDigits {
    let base = p.get();
    let mut out = Vec::new();
    loop {
        out.push(value % base);
        value /= base;
        if value == 0 {
            break;
        }
    }
    BasePDigits { p, digits: out }
}
