//! Characters of SL2 modules: induced/Weyl modules, simples via Steinberg's
//! tensor product theorem, indecomposable tiltings, and the `Y(r)` family,
//! together with the two greedy peels (composition factors and tilting
//! summands).
//!
//! All characters here are rank 1. `chi(n)` below means the induced-module
//! character `n, n-2, ..., -n`, which is also the Weyl-module character.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::charlat::{digits, FormalCharacter, Prime, Rank, Weight};
use crate::error::{Error, Result};
use crate::mult::Mult;

/// Multiset of composition-factor labels. The label type is `u64` for SL2
/// and [`A2Weight`](crate::a2lat::A2Weight) for SL3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompFactorMultiset<L: Ord = u64> {
    entries: BTreeMap<L, Mult>,
}

impl<L: Ord + Copy> CompFactorMultiset<L> {
    pub fn new() -> Self {
        CompFactorMultiset {
            entries: BTreeMap::new(),
        }
    }

    pub(crate) fn insert(&mut self, label: L, m: Mult) {
        if !m.is_zero() {
            *self.entries.entry(label).or_default() += &m;
        }
    }

    pub fn multiplicity(&self, label: &L) -> Mult {
        self.entries.get(label).cloned().unwrap_or(Mult::ZERO)
    }

    pub fn contains(&self, label: &L) -> bool {
        self.entries.contains_key(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&L, &Mult)> {
        self.entries.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = L> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum mult * character(label)`.
    pub fn reconstruct<F>(&self, rank: Rank, mut character: F) -> Result<FormalCharacter>
    where
        F: FnMut(L) -> Result<FormalCharacter>,
    {
        let mut acc = FormalCharacter::zero(rank);
        for (label, m) in &self.entries {
            acc = acc.add(&character(*label)?.scale(m))?;
        }
        Ok(acc)
    }
}

impl<L: Ord + Copy> Default for CompFactorMultiset<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord + Copy> FromIterator<(L, u64)> for CompFactorMultiset<L> {
    fn from_iter<I: IntoIterator<Item = (L, u64)>>(iter: I) -> Self {
        let mut out = CompFactorMultiset::new();
        for (l, m) in iter {
            out.insert(l, Mult::from(m));
        }
        out
    }
}

// Serialized as sorted `[label, multiplicity]` pairs.
impl<L: Ord + Serialize> Serialize for CompFactorMultiset<L> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for pair in &self.entries {
            seq.serialize_element(&pair)?;
        }
        seq.end()
    }
}

/// Direct-sum decomposition of a tilting character into indecomposables.
/// `sum mult * T(label) + residual` is the peeled character, and a successful
/// peel leaves a zero residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiltingDecomposition {
    pub summands: CompFactorMultiset<u64>,
    pub residual: FormalCharacter,
}

impl Serialize for TiltingDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.summands.serialize(s)
    }
}

/// `chi(n)`: weights `n, n-2, ..., -n`, each once.
pub fn nabla_char(n: u64) -> FormalCharacter {
    let n = n as i64;
    FormalCharacter::a1((0..=n).map(|k| (n - 2 * k, 1)))
}

/// `L(lambda) = prod_i chi(a_i)^{F^i}` over the base-`p` digits of `lambda`.
pub fn simple_char(p: Prime, lambda: u64) -> FormalCharacter {
    digits(p, lambda).digits().iter().enumerate().fold(
        FormalCharacter::one(Rank::A1),
        |acc, (i, &a)| {
            acc.multiply(&nabla_char(a).frobenius_twist(p, i as u32))
                .expect("rank 1")
        },
    )
}

/// Weights of `L(lambda)`, all of multiplicity one, written out directly as
/// the sums `sum_i p^i (a_i - 2 k_i)` with `0 <= k_i <= a_i`.
pub fn simple_weights(p: Prime, lambda: u64) -> Vec<i64> {
    let mut out = vec![0i64];
    for (i, &a) in digits(p, lambda).digits().iter().enumerate() {
        if a == 0 {
            continue;
        }
        let scale = p.power(i as u32);
        let a = a as i64;
        out = out
            .iter()
            .flat_map(|&w| (0..=a).map(move |k| w + scale * (a - 2 * k)))
            .collect();
    }
    out
}

/// Fundamental tilting modules `T(u)`, `0 <= u <= 2p - 2`. Below `p` the
/// module is simple and induced; above it is uniserial with factors
/// `L(2p-2-u), L(u), L(2p-2-u)`, so its character is `chi(u) + chi(2p-2-u)`.
pub fn fundamental_tilting_char(p: Prime, u: u64) -> Result<FormalCharacter> {
    let p = p.get();
    if u > 2 * p - 2 {
        return Err(Error::OutOfRange {
            what: "fundamental tilting weight",
            value: u as i64,
            expected: format!("0..={}", 2 * p - 2),
        });
    }
    if u < p {
        Ok(nabla_char(u))
    } else {
        nabla_char(u).add(&nabla_char(2 * p - 2 - u))
    }
}

/// Indecomposable tilting character `T(m)`. Beyond the fundamental range,
/// `m = m0 + p m'` with `p - 1 <= m0 <= 2p - 2` and
/// `T(m) = T(m0) (x) T(m')^F`.
pub fn tilting_char(p: Prime, m: u64) -> FormalCharacter {
    let pp = p.get();
    if m <= 2 * pp - 2 {
        return fundamental_tilting_char(p, m).expect("fundamental range");
    }
    let m0 = pp - 1 + (m - (pp - 1)) % pp;
    let rest = (m - m0) / pp;
    fundamental_tilting_char(p, m0)
        .expect("fundamental range")
        .multiply(&tilting_char(p, rest).frobenius_twist(p, 1))
        .expect("rank 1")
}

/// A deliberately wrong tilting family: every upper fundamental `T(u)`,
/// `p <= u <= 2p-2`, carries an extra `chi(2p-2-u)`. Peeling against it must
/// trip the negativity alarm; used to check that the alarm is live.
pub fn mutated_tilting_char(p: Prime, m: u64) -> FormalCharacter {
    let t = tilting_char(p, m);
    let pp = p.get();
    if (pp..=2 * pp - 2).contains(&m) {
        t.add(&nabla_char(2 * pp - 2 - m)).expect("rank 1")
    } else {
        t
    }
}

/// Dense working copy of a rank-1 character over `[-h, h]`.
struct Workspace {
    offset: i64,
    slots: Vec<Mult>,
}

impl Workspace {
    fn new(x: &FormalCharacter) -> Result<Self> {
        if x.rank() != Rank::A1 {
            return Err(Error::RankMismatch {
                left: 1,
                right: x.rank().get(),
            });
        }
        let h = x
            .terms()
            .iter()
            .map(|(w, _)| w.first().abs())
            .max()
            .unwrap_or(0);
        let mut slots = vec![Mult::ZERO; (2 * h + 1) as usize];
        for (w, m) in x.terms() {
            slots[(w.first() + h) as usize] = m.clone();
        }
        Ok(Workspace { offset: h, slots })
    }

    fn top(&self) -> i64 {
        self.offset
    }

    fn at(&self, w: i64) -> &Mult {
        &self.slots[(w + self.offset) as usize]
    }

    fn subtract(&mut self, w: i64, m: &Mult) -> Result<()> {
        match self.slots.get_mut((w + self.offset) as usize) {
            Some(slot) => {
                *slot -= m;
                Ok(())
            }
            // Outside [-h, h] the input was zero, so the residual goes negative.
            None => Err(Error::NegativeMultiplicity {
                weight: Weight::a1(w),
                multiplicity: -m,
            }),
        }
    }

    /// After peeling every non-negative weight, anything left below zero is
    /// an error.
    fn check_cleared(&self) -> Result<()> {
        for w in (-self.offset..0).rev() {
            let m = self.at(w);
            if m.is_negative() {
                return Err(Error::NegativeMultiplicity {
                    weight: Weight::a1(w),
                    multiplicity: m.clone(),
                });
            }
            if !m.is_zero() {
                return Err(Error::NotWeylInvariant {
                    weight: Weight::a1(w),
                });
            }
        }
        Ok(())
    }

    /// Greedy peel from the top weight down. `piece(h, c)` subtracts `c`
    /// copies of the character labelled `h`.
    fn peel<F>(&mut self, mut piece: F) -> Result<CompFactorMultiset<u64>>
    where
        F: FnMut(&mut Self, u64, &Mult) -> Result<()>,
    {
        let mut found = CompFactorMultiset::new();
        for h in (0..=self.top()).rev() {
            let c = self.at(h).clone();
            if c.is_zero() {
                continue;
            }
            if c.is_negative() {
                return Err(Error::NegativeMultiplicity {
                    weight: Weight::a1(h),
                    multiplicity: c,
                });
            }
            piece(self, h as u64, &c)?;
            found.insert(h as u64, c);
        }
        self.check_cleared()?;
        Ok(found)
    }
}

/// Composition factors of a module character, by peeling simple characters
/// off the highest remaining weight.
pub fn comp_factors(p: Prime, x: &FormalCharacter) -> Result<CompFactorMultiset<u64>> {
    Workspace::new(x)?.peel(|ws, h, c| {
        for w in simple_weights(p, h) {
            ws.subtract(w, c)?;
        }
        Ok(())
    })
}

/// Tilting summands of a tilting character.
pub fn peel_tilting(p: Prime, x: &FormalCharacter) -> Result<TiltingDecomposition> {
    peel_tilting_with(p, x, tilting_char)
}

/// [`peel_tilting`] against a caller-supplied tilting character family. Used
/// to check that a wrong family is caught by the negativity alarm.
pub fn peel_tilting_with<F>(
    p: Prime,
    x: &FormalCharacter,
    tilting: F,
) -> Result<TiltingDecomposition>
where
    F: Fn(Prime, u64) -> FormalCharacter,
{
    let summands = Workspace::new(x)?.peel(|ws, h, c| {
        for (w, m) in tilting(p, h).terms() {
            ws.subtract(w.first(), &(m * c))?;
        }
        Ok(())
    })?;
    Ok(TiltingDecomposition {
        summands,
        residual: FormalCharacter::zero(Rank::A1),
    })
}

/// `Y(r) = chi(m)^2` for `r = 2m`, `chi(m+1) chi(m)` for `r = 2m+1`, and zero
/// for negative `r`.
pub fn y_char(r: i64) -> FormalCharacter {
    if r < 0 {
        return FormalCharacter::zero(Rank::A1);
    }
    let m = (r / 2) as u64;
    let other = if r % 2 == 0 { m } else { m + 1 };
    nabla_char(other).multiply(&nabla_char(m)).expect("rank 1")
}

/// The three recursions expressing `Y` at a large even argument through
/// Frobenius twists of smaller `Y`s (`p` odd, `a` even, `0 <= a <= p-3`):
///
/// * `TwoPm`: `Y(2pm+a) = chi(p-1)chi(a+1)Y(2m-1)^F + chi(p-1)chi(p-a-3)Y(2m-2)^F + Y(a)`
/// * `Shifted`: `Y(p-1+2pm+a) = chi(p-1)chi(a)Y(2m)^F + chi(p-1)chi(p-2-a)Y(2m-1)^F + Y(p-a-3)`
/// * `Top`: `Y(2pm+2p-2) = chi(p-1)chi(p-1)Y(2m)^F`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum YIdentity {
    TwoPm { a: u64 },
    Shifted { a: u64 },
    Top,
}

impl YIdentity {
    pub fn name(&self) -> &'static str {
        match self {
            YIdentity::TwoPm { .. } => "Y(2pm+a)",
            YIdentity::Shifted { .. } => "Y(p-1+2pm+a)",
            YIdentity::Top => "Y(2pm+2p-2)",
        }
    }

    /// Every admissible instance for a given odd prime.
    pub fn all(p: Prime) -> Vec<YIdentity> {
        let evens: Vec<u64> = (0..=p.get().saturating_sub(3)).step_by(2).collect();
        evens
            .iter()
            .map(|&a| YIdentity::TwoPm { a })
            .chain(evens.iter().map(|&a| YIdentity::Shifted { a }))
            .chain(std::iter::once(YIdentity::Top))
            .collect()
    }

    /// Both sides of the identity at `m`.
    pub fn sides(&self, p: Prime, m: u64) -> Result<(FormalCharacter, FormalCharacter)> {
        let pp = p.get();
        if pp < 3 {
            return Err(Error::Unsupported(format!(
                "the Y recursions need an odd prime, got p = {pp}"
            )));
        }
        let check_a = |a: u64| {
            if a.is_multiple_of(2) && a + 3 <= pp {
                Ok(a as i64)
            } else {
                Err(Error::OutOfRange {
                    what: "a",
                    value: a as i64,
                    expected: format!("an even integer in 0..={}", pp - 3),
                })
            }
        };
        let (p_i, m_i) = (pp as i64, m as i64);
        let top = nabla_char(pp - 1);
        let term = |k: i64, r: i64| -> Result<FormalCharacter> {
            top.multiply(&nabla_char(k as u64))?
                .multiply(&y_char(r).frobenius_twist(p, 1))
        };
        match *self {
            YIdentity::TwoPm { a } => {
                let a = check_a(a)?;
                let lhs = y_char(2 * p_i * m_i + a);
                let rhs = term(a + 1, 2 * m_i - 1)?
                    .add(&term(p_i - a - 3, 2 * m_i - 2)?)?
                    .add(&y_char(a))?;
                Ok((lhs, rhs))
            }
            YIdentity::Shifted { a } => {
                let a = check_a(a)?;
                let lhs = y_char(p_i - 1 + 2 * p_i * m_i + a);
                let rhs = term(a, 2 * m_i)?
                    .add(&term(p_i - 2 - a, 2 * m_i - 1)?)?
                    .add(&y_char(p_i - a - 3))?;
                Ok((lhs, rhs))
            }
            YIdentity::Top => {
                let lhs = y_char(2 * p_i * m_i + 2 * p_i - 2);
                let rhs = term(p_i - 1, 2 * m_i)?;
                Ok((lhs, rhs))
            }
        }
    }
}

/// Exact character equality of the two sides of a `Y` recursion.
pub fn y_identity_check(p: Prime, m: u64, identity: YIdentity) -> Result<bool> {
    let (lhs, rhs) = identity.sides(p, m)?;
    Ok(lhs == rhs)
}
