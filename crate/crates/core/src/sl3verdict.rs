//! Reductive-pair analysis for SL3.
//!
//! Simple characters come from Steinberg's tensor product theorem: each
//! base-`p` digit weight contributes a Weyl character when it lies in the
//! closure of the bottom alcove (where simple and induced modules agree) or
//! an entry from a character table otherwise. The tensor square
//! `L(lambda) (x) L(lambda)*` is peeled into composition factors and each
//! factor is tested against the adjoint weight `(1,1)` with the linkage
//! principle and the vanishing result for `Ext^1` between simples with
//! bottom-alcove restricted parts. The answer is one-sided: `ProvenYes` or
//! `Inconclusive`, never `No`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::a2lat::{
    alcove_class, dim_a2, dominant_representative, linked_a2, weyl_char_a2, weyl_images,
};
use crate::a2lat::{A2Weight, AlcoveClass};
use crate::charlat::{FormalCharacter, Prime, Rank, Weight};
use crate::error::{Error, Result};
use crate::mult::Mult;
use crate::sl2chars::CompFactorMultiset;
use crate::sl2verdict::{Reason, Verdict, VerdictKind, WeightLabel};

/// Restricted weights whose simple modules give reductive pairs at `p = 7`.
pub const P7_BASES: [A2Weight; 9] = [
    A2Weight::new(1, 0),
    A2Weight::new(0, 1),
    A2Weight::new(1, 1),
    A2Weight::new(2, 0),
    A2Weight::new(0, 2),
    A2Weight::new(2, 1),
    A2Weight::new(1, 2),
    A2Weight::new(3, 0),
    A2Weight::new(0, 3),
];

/// Twist weights for `p = 7`: [`P7_BASES`] plus three more, all with
/// dimension prime to 7.
pub const P7_TWISTS: [A2Weight; 12] = [
    A2Weight::new(1, 0),
    A2Weight::new(0, 1),
    A2Weight::new(1, 1),
    A2Weight::new(2, 0),
    A2Weight::new(0, 2),
    A2Weight::new(2, 1),
    A2Weight::new(1, 2),
    A2Weight::new(3, 0),
    A2Weight::new(0, 3),
    A2Weight::new(2, 2),
    A2Weight::new(3, 1),
    A2Weight::new(1, 3),
];

const BUILTIN_TABLE: &str = include_str!("../data/a2_table.jsonl");

/// `lambda = sum_i p^i lambda_i` with every `lambda_i` restricted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinbergFactorization {
    pub p: Prime,
    pub digit_weights: Vec<A2Weight>,
}

impl SteinbergFactorization {
    pub fn reconstruct(&self) -> A2Weight {
        self.digit_weights
            .iter()
            .rev()
            .fold(A2Weight::ZERO, |acc, d| {
                acc.scaled(self.p.get() as i64) + *d
            })
    }
}

/// Coordinatewise base-`p` digits. The zero weight has the single digit `(0,0)`.
pub fn steinberg_digits_a2(p: Prime, lambda: A2Weight) -> Result<SteinbergFactorization> {
    let lambda = lambda.require_dominant()?;
    let q = p.get() as i64;
    let (mut a, mut b) = (lambda.a, lambda.b);
    let mut digit_weights = Vec::new();
    loop {
        digit_weights.push(A2Weight::new(a % q, b % q));
        a /= q;
        b /= q;
        if a == 0 && b == 0 {
            break;
        }
    }
    Ok(SteinbergFactorization { p, digit_weights })
}

/// One line of a character table file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub p: u64,
    pub weight: A2Weight,
    pub character: FormalCharacter,
}

/// Simple characters supplied from outside, keyed by `(p, weight)`.
/// Entries are checked on insertion (see [`validate_simple_character`]).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharTable {
    entries: BTreeMap<(u64, A2Weight), FormalCharacter>,
}

impl CharTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// The table compiled into the library.
    pub fn builtin() -> &'static CharTable {
        static TABLE: OnceLock<CharTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            CharTable::from_jsonl(BUILTIN_TABLE).expect("built-in character table is valid")
        })
    }

    /// Parses JSON lines; blank lines and lines starting with `#` are skipped.
    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut table = CharTable::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let entry: TableEntry = serde_json::from_str(trimmed).map_err(|e| Error::Table {
                line: line_no,
                message: e.to_string(),
            })?;
            table.insert(entry).map_err(|e| match e {
                Error::Table { message, .. } => Error::Table {
                    line: line_no,
                    message,
                },
                other => Error::Table {
                    line: line_no,
                    message: other.to_string(),
                },
            })?;
        }
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_jsonl(&std::fs::read_to_string(path)?)
    }

    pub fn insert(&mut self, entry: TableEntry) -> Result<()> {
        let p = Prime::new(entry.p)?;
        validate_simple_character(p, entry.weight, &entry.character)?;
        self.entries
            .insert((entry.p, entry.weight), entry.character);
        Ok(())
    }

    pub fn get(&self, p: Prime, weight: A2Weight) -> Option<&FormalCharacter> {
        self.entries.get(&(p.get(), weight))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = TableEntry> + '_ {
        self.entries.iter().map(|(&(p, weight), c)| TableEntry {
            p,
            weight,
            character: c.clone(),
        })
    }
}

fn table_error(message: String) -> Error {
    Error::Table { line: 0, message }
}

/// `nu <= lambda` in the dominance order: `lambda - nu` is a non-negative
/// integer combination of the simple roots.
fn dominated_by(nu: A2Weight, lambda: A2Weight) -> bool {
    let d = lambda - nu;
    let c1 = 2 * d.a + d.b;
    let c2 = d.a + 2 * d.b;
    c1 >= 0 && c2 >= 0 && c1 % 3 == 0
}

fn first_non_invariant(x: &FormalCharacter) -> Option<Weight> {
    x.terms().iter().find_map(|(w, m)| {
        let aw = A2Weight::from_weight(w)?;
        weyl_images(aw)
            .into_iter()
            .any(|image| x.get(&image.to_weight()) != *m)
            .then_some(*w)
    })
}

/// Sanity checks for a claimed simple character: top weight `lambda` with
/// multiplicity 1, every other weight below it, non-negative, Weyl-invariant,
/// and every Weyl character in its decomposition linked to `lambda`.
pub fn validate_simple_character(p: Prime, lambda: A2Weight, x: &FormalCharacter) -> Result<()> {
    let lambda = lambda.require_dominant()?;
    if x.rank() != Rank::A2 {
        return Err(Error::RankMismatch {
            left: 2,
            right: x.rank().get(),
        });
    }
    if x.get(&lambda.to_weight()) != Mult::ONE {
        return Err(table_error(format!(
            "multiplicity of {lambda} in L{lambda} must be 1"
        )));
    }
    if !x.is_nonnegative() {
        return Err(table_error(format!(
            "L{lambda} has a negative multiplicity"
        )));
    }
    if let Some(w) = first_non_invariant(x) {
        return Err(table_error(format!(
            "L{lambda} is not Weyl-invariant at {w}"
        )));
    }
    for (w, _) in x.terms() {
        let nu = dominant_representative(A2Weight::from_weight(w).expect("rank 2"));
        if !dominated_by(nu, lambda) {
            return Err(table_error(format!(
                "weight {w} of L{lambda} is not below {lambda}"
            )));
        }
    }
    let weyl = peel_dominant(x, true, weyl_char_a2)?;
    for (nu, m) in weyl.iter() {
        if !linked_a2(p, *nu, lambda) {
            return Err(table_error(format!(
                "L{lambda} contains chi{nu} (coefficient {m}), which is not linked to {lambda}"
            )));
        }
    }
    Ok(())
}

fn peel_key(w: A2Weight) -> (i64, i64, i64) {
    (w.a + w.b, w.a, w.b)
}

/// Greedy peel over dominant weights, highest `a+b` first (ties broken
/// lexicographically). `piece(lambda)` must have top weight `lambda` with
/// multiplicity 1.
fn peel_dominant<F>(
    x: &FormalCharacter,
    allow_negative: bool,
    mut piece: F,
) -> Result<CompFactorMultiset<A2Weight>>
where
    F: FnMut(A2Weight) -> Result<FormalCharacter>,
{
    if x.rank() != Rank::A2 {
        return Err(Error::RankMismatch {
            left: 2,
            right: x.rank().get(),
        });
    }
    if let Some(weight) = first_non_invariant(x) {
        return Err(Error::NotWeylInvariant { weight });
    }
    let mut ws: BTreeMap<(i64, i64, i64), Mult> = x
        .terms()
        .iter()
        .filter_map(|(w, m)| {
            let aw = A2Weight::from_weight(w)?;
            aw.is_dominant().then(|| (peel_key(aw), m.clone()))
        })
        .collect();
    let mut found = CompFactorMultiset::new();
    while let Some(((_, a, b), m)) = ws.pop_last() {
        if m.is_zero() {
            continue;
        }
        let lambda = A2Weight::new(a, b);
        if m.is_negative() && !allow_negative {
            return Err(Error::NegativeMultiplicity {
                weight: lambda.to_weight(),
                multiplicity: m,
            });
        }
        for (w, c) in piece(lambda)?.terms() {
            let nu = A2Weight::from_weight(w).expect("rank 2");
            if nu.is_dominant() && nu != lambda {
                *ws.entry(peel_key(nu)).or_default() -= &(c * &m);
            }
        }
        found.insert(lambda, m);
    }
    Ok(found)
}

/// Simple characters of SL3 at a fixed prime, memoized. Lookup order for a
/// weight (and then for each of its digit weights): the user table, the
/// built-in table, and for closure-adapted digits the Weyl character.
pub struct SimpleCharsA2<'t> {
    p: Prime,
    table: Option<&'t CharTable>,
    use_builtin: bool,
    memo: RwLock<HashMap<A2Weight, FormalCharacter>>,
}

impl<'t> SimpleCharsA2<'t> {
    pub fn new(p: Prime, table: Option<&'t CharTable>) -> Self {
        SimpleCharsA2 {
            p,
            table,
            use_builtin: true,
            memo: RwLock::new(HashMap::new()),
        }
    }

    /// Same provider without the compiled-in table.
    pub fn without_builtin(mut self) -> Self {
        self.use_builtin = false;
        self
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    /// Seeds the memo, e.g. from a persistent cache.
    pub fn preload(&self, lambda: A2Weight, character: FormalCharacter) {
        self.memo
            .write()
            .expect("memo lock")
            .insert(lambda, character);
    }

    /// Everything computed so far, sorted by weight.
    pub fn memoized(&self) -> Vec<(A2Weight, FormalCharacter)> {
        let memo = self.memo.read().expect("memo lock");
        let mut out: Vec<_> = memo.iter().map(|(w, c)| (*w, c.clone())).collect();
        out.sort_by_key(|x| x.0);
        out
    }

    fn lookup(&self, w: A2Weight) -> Option<&FormalCharacter> {
        self.table.and_then(|t| t.get(self.p, w)).or_else(|| {
            self.use_builtin
                .then(|| CharTable::builtin().get(self.p, w))
                .flatten()
        })
    }

    pub fn get(&self, lambda: A2Weight) -> Result<FormalCharacter> {
        if let Some(c) = self.memo.read().expect("memo lock").get(&lambda) {
            return Ok(c.clone());
        }
        let c = self.compute(lambda)?;
        self.memo
            .write()
            .expect("memo lock")
            .insert(lambda, c.clone());
        Ok(c)
    }

    fn compute(&self, lambda: A2Weight) -> Result<FormalCharacter> {
        let lambda = lambda.require_dominant()?;
        if let Some(c) = self.lookup(lambda) {
            return Ok(c.clone());
        }
        let factorization = steinberg_digits_a2(self.p, lambda)?;
        let mut acc = FormalCharacter::one(Rank::A2);
        for (level, &digit) in factorization.digit_weights.iter().enumerate() {
            if digit == A2Weight::ZERO {
                continue;
            }
            let base = match self.lookup(digit) {
                Some(c) => c.clone(),
                None if digit.is_closure_adapted(self.p) => weyl_char_a2(digit)?,
                None => {
                    return Err(Error::AdaptationFailure {
                        p: self.p.get(),
                        weight: lambda,
                        digit,
                        level: level as u32,
                    })
                }
            };
            acc = acc.multiply(&base.frobenius_twist(self.p, level as u32))?;
        }
        Ok(acc)
    }

    /// Composition factors of a Weyl-invariant rank-2 character.
    pub fn comp_factors(&self, x: &FormalCharacter) -> Result<CompFactorMultiset<A2Weight>> {
        peel_dominant(x, false, |w| self.get(w))
    }

    pub fn verdict(&self, lambda: A2Weight, strict: bool) -> Result<MaskReport> {
        sl3_verdict_with(self, lambda, strict)
    }
}

pub fn simple_char_a2(
    p: Prime,
    lambda: A2Weight,
    table: Option<&CharTable>,
) -> Result<FormalCharacter> {
    SimpleCharsA2::new(p, table).get(lambda)
}

pub fn comp_factors_a2(
    p: Prime,
    x: &FormalCharacter,
    table: Option<&CharTable>,
) -> Result<CompFactorMultiset<A2Weight>> {
    SimpleCharsA2::new(p, table).comp_factors(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FactorStatus {
    SelfFactor,
    ExtZeroByLinkage,
    ExtZeroByYehia,
    PossiblyNonzero,
}

impl FactorStatus {
    pub fn is_cleared(self) -> bool {
        self != FactorStatus::PossiblyNonzero
    }
}

/// The weights `(p-s-2, p-r-2)`, `(r+s+1, p-s-2)`, `(p-r-2, r+s+1)` for
/// `lambda0 = (r, s)`: the only restricted parts other than `lambda0` itself
/// that can carry a non-split extension.
pub fn exceptional_restricted_parts(p: Prime, lambda0: A2Weight) -> [A2Weight; 3] {
    let q = p.get() as i64;
    let (r, s) = (lambda0.a, lambda0.b);
    [
        A2Weight::new(q - s - 2, q - r - 2),
        A2Weight::new(r + s + 1, q - s - 2),
        A2Weight::new(q - r - 2, r + s + 1),
    ]
}

/// Can `Ext^1(L(lambda0), L(mu))` be nonzero? `lambda0` must lie in the
/// interior of the bottom alcove. With `strict`, a factor whose restricted
/// part equals `lambda0` (but which is not `lambda0`) is left open.
pub fn yehia_mask(p: Prime, lambda0: A2Weight, mu: A2Weight, strict: bool) -> Result<FactorStatus> {
    if alcove_class(p, lambda0) != AlcoveClass::BottomAlcoveInterior {
        return Err(Error::OutOfRange {
            what: "a + b + 2 of the target weight",
            value: lambda0.a + lambda0.b + 2,
            expected: format!("a dominant weight with a + b + 2 < {p}"),
        });
    }
    let mu = mu.require_dominant()?;
    if mu == lambda0 {
        return Ok(FactorStatus::SelfFactor);
    }
    let mu0 = steinberg_digits_a2(p, mu)?.digit_weights[0];
    if !linked_a2(p, mu0, lambda0) || !linked_a2(p, mu, lambda0) {
        return Ok(FactorStatus::ExtZeroByLinkage);
    }
    if mu0 == lambda0 {
        return Ok(if strict {
            FactorStatus::PossiblyNonzero
        } else {
            FactorStatus::ExtZeroByYehia
        });
    }
    if !exceptional_restricted_parts(p, lambda0).contains(&mu0) {
        return Ok(FactorStatus::ExtZeroByYehia);
    }
    Ok(FactorStatus::PossiblyNonzero)
}

fn linkage_only_status(p: Prime, lambda0: A2Weight, mu: A2Weight) -> FactorStatus {
    if mu == lambda0 {
        FactorStatus::SelfFactor
    } else if !linked_a2(p, mu, lambda0) {
        FactorStatus::ExtZeroByLinkage
    } else {
        FactorStatus::PossiblyNonzero
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MaskKind {
    /// Linkage plus the `Ext^1` vanishing result (needs `(1,1)` in the
    /// bottom alcove, i.e. `p >= 5`).
    Yehia,
    /// Linkage alone.
    LinkageOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub weight: A2Weight,
    pub multiplicity: Mult,
    pub status: FactorStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaskReport {
    pub p: u64,
    pub weight: A2Weight,
    pub strict: bool,
    pub mask: MaskKind,
    /// Highest `a+b` first, ties lexicographically descending.
    pub factors: Vec<FactorReport>,
    pub verdict: Verdict,
}

impl MaskReport {
    pub fn composition_factors(&self) -> CompFactorMultiset<A2Weight> {
        let mut m = CompFactorMultiset::new();
        for f in &self.factors {
            m.insert(f.weight, f.multiplicity.clone());
        }
        m
    }

    pub fn kind(&self) -> VerdictKind {
        self.verdict.kind
    }
}

/// Does `L(lambda)` give a reductive pair? Runs the composition-factor
/// method on `L(lambda) (x) L(lambda)*` with target factor `(1,1)`.
pub fn sl3_verdict(
    p: Prime,
    lambda: A2Weight,
    table: Option<&CharTable>,
    strict: bool,
) -> Result<MaskReport> {
    sl3_verdict_with(&SimpleCharsA2::new(p, table), lambda, strict)
}

fn sl3_verdict_with(
    chars: &SimpleCharsA2<'_>,
    lambda: A2Weight,
    strict: bool,
) -> Result<MaskReport> {
    let p = chars.p();
    if p.get() == 3 {
        return Err(Error::Unsupported(
            "p = 3: the adjoint module of SL3 is not simple".into(),
        ));
    }
    let lambda = lambda.require_dominant()?;
    let ch = chars.get(lambda)?;
    let factors = chars.comp_factors(&ch.multiply(&ch.dual())?)?;

    let target = A2Weight::ADJOINT;
    let mask = if alcove_class(p, target) == AlcoveClass::BottomAlcoveInterior {
        MaskKind::Yehia
    } else {
        MaskKind::LinkageOnly
    };

    let mut rows = Vec::with_capacity(factors.len());
    for (&mu, m) in factors.iter() {
        let status = match mask {
            MaskKind::Yehia => yehia_mask(p, target, mu, strict)?,
            MaskKind::LinkageOnly => linkage_only_status(p, target, mu),
        };
        rows.push(FactorReport {
            weight: mu,
            multiplicity: m.clone(),
            status,
        });
    }
    rows.sort_by_key(|r| std::cmp::Reverse(peel_key(r.weight)));

    let mut reasons = Vec::new();
    if mask == MaskKind::LinkageOnly {
        reasons.push(Reason::LinkageOnlyMask);
    }
    let adjoint = factors.multiplicity(&target);
    let kind = if adjoint.is_zero() {
        reasons.push(Reason::AdjointFactorMissing);
        VerdictKind::Inconclusive
    } else {
        reasons.push(Reason::AdjointFactor {
            multiplicity: adjoint,
        });
        let q = p.get() as i64;
        for row in &rows {
            let label = WeightLabel::A2(row.weight);
            if row.status == FactorStatus::PossiblyNonzero {
                reasons.push(Reason::PossiblyNonsplitFactor {
                    label,
                    multiplicity: row.multiplicity.clone(),
                });
            } else if row.status == FactorStatus::ExtZeroByYehia
                && row.weight != target
                && A2Weight::new(row.weight.a % q, row.weight.b % q) == target
            {
                reasons.push(Reason::NonStrictReading { label });
            }
        }
        if rows.iter().all(|r| r.status.is_cleared()) {
            reasons.push(Reason::AllExtensionsSplit);
            VerdictKind::ProvenYes
        } else {
            VerdictKind::Inconclusive
        }
    };

    Ok(MaskReport {
        p: p.get(),
        weight: lambda,
        strict,
        mask,
        factors: rows,
        verdict: Verdict {
            p: p.get(),
            weight: WeightLabel::A2(lambda),
            kind,
            reasons,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionSource {
    /// `mu` is closure-adapted, so `L(mu)` is the induced module.
    WeylModule,
    /// From the simple character (Steinberg product or table).
    SimpleCharacter,
}

/// A weight certified to give a reductive pair: `L(base + p^n twist) =
/// L(base) (x) L(twist)^[n]` where `L(base)` gives one and `p` does not
/// divide `dim L(twist)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub p: u64,
    pub base: A2Weight,
    pub twist: A2Weight,
    pub n: u32,
    pub weight: A2Weight,
    pub twist_dimension: u64,
    pub dimension_source: DimensionSource,
    pub base_verdict: VerdictKind,
}

pub fn example_machine(
    p: Prime,
    lambda: A2Weight,
    mu: A2Weight,
    n: u32,
    table: Option<&CharTable>,
    strict: bool,
) -> Result<Certificate> {
    let chars = SimpleCharsA2::new(p, table);
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            expected: "n >= 1".into(),
        });
    }
    let lambda = lambda.require_dominant()?;
    let mu = mu.require_dominant()?;
    if !lambda.is_restricted(p) {
        return Err(Error::NotRestricted {
            p: p.get(),
            weight: lambda,
        });
    }
    let report = chars.verdict(lambda, strict)?;
    if report.kind() != VerdictKind::ProvenYes {
        return Err(Error::NotCertified {
            p: p.get(),
            weight: lambda,
            kind: report.kind().to_string(),
        });
    }

    let (twist_dimension, dimension_source) = if mu.is_closure_adapted(p) {
        (dim_a2(mu)?, DimensionSource::WeylModule)
    } else {
        match chars.get(mu) {
            Ok(c) => {
                let dim = c.dimension().to_u64().ok_or(Error::DimensionUnknown {
                    p: p.get(),
                    weight: mu,
                })?;
                (dim, DimensionSource::SimpleCharacter)
            }
            Err(Error::AdaptationFailure { .. }) => {
                return Err(Error::DimensionUnknown {
                    p: p.get(),
                    weight: mu,
                })
            }
            Err(e) => return Err(e),
        }
    };
    if twist_dimension % p.get() == 0 {
        return Err(Error::DimensionDivisible {
            p: p.get(),
            weight: mu,
            dim: twist_dimension,
        });
    }

    let overflow = || Error::OutOfRange {
        what: "n",
        value: i64::from(n),
        expected: "p^n * mu to fit in 64 bits".into(),
    };
    let scale = (p.get() as i64).checked_pow(n).ok_or_else(overflow)?;
    let weight = A2Weight::new(
        mu.a.checked_mul(scale)
            .and_then(|x| x.checked_add(lambda.a))
            .ok_or_else(overflow)?,
        mu.b.checked_mul(scale)
            .and_then(|x| x.checked_add(lambda.b))
            .ok_or_else(overflow)?,
    );
    Ok(Certificate {
        p: p.get(),
        base: lambda,
        twist: mu,
        n,
        weight,
        twist_dimension,
        dimension_source,
        base_verdict: report.kind(),
    })
}
