//! Reductive-pair verdicts for SL2: the digit rule for simple modules, the
//! congruence rule for Weyl modules, and the character-level oracles that
//! check them.
//!
//! Digit and congruence rules are if-and-only-if statements and answer
//! `Yes`/`No`. The tilting oracle for Weyl modules is two-sided as well,
//! because tilting modules are determined by their characters. The
//! composition-factor oracle for simple modules can only certify
//! (`ProvenYes`) or give up (`Inconclusive`).

use std::fmt;

use serde::Serialize;

use crate::a2lat::A2Weight;
use crate::charlat::{digits, FormalCharacter, Prime};
use crate::error::{Error, Result};
use crate::mult::Mult;
use crate::sl2chars::{comp_factors, peel_tilting_with, simple_char, tilting_char, y_char};

/// Highest weight of the adjoint module of SL2.
pub const ADJOINT_A1: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictKind {
    Yes,
    No,
    ProvenYes,
    Inconclusive,
}

impl VerdictKind {
    /// Whether the module is known to give a reductive pair.
    pub fn is_positive(self) -> bool {
        matches!(self, VerdictKind::Yes | VerdictKind::ProvenYes)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::Yes => "Yes",
            VerdictKind::No => "No",
            VerdictKind::ProvenYes => "ProvenYes",
            VerdictKind::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum WeightLabel {
    A1(u64),
    A2(A2Weight),
}

impl fmt::Display for WeightLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightLabel::A1(n) => write!(f, "{n}"),
            WeightLabel::A2(w) => write!(f, "{w}"),
        }
    }
}

/// Machine-readable evidence attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Reason {
    CharacteristicTwo,
    /// Highest weight 0: the image of the group is trivial.
    TrivialModule,
    FrobeniusNormalized {
        from: u64,
        to: u64,
        twists: u32,
    },
    Digits {
        digits: Vec<u64>,
        leading: usize,
    },
    DigitTooLarge {
        index: usize,
        digit: u64,
        bound: u64,
    },
    LeadingDigitTooLarge {
        index: usize,
        digit: u64,
        bound: u64,
    },
    /// Tensor factor `L(p-1)^{F^index}` has dimension `p`.
    DimensionObstruction {
        index: usize,
        dim: u64,
    },
    DigitRuleSatisfied,
    Residue {
        modulus: u64,
        residue: u64,
        allowed: bool,
    },
    TiltingPeel {
        summands: usize,
        adjoint_multiplicity: Mult,
    },
    AdjointFactor {
        multiplicity: Mult,
    },
    AdjointFactorMissing,
    LinkedFactor {
        label: WeightLabel,
        multiplicity: Mult,
    },
    PossiblyNonsplitFactor {
        label: WeightLabel,
        multiplicity: Mult,
    },
    AllExtensionsSplit,
    /// A factor with the same restricted part as the adjoint weight was
    /// cleared by the non-strict reading of the extension result.
    NonStrictReading {
        label: WeightLabel,
    },
    LinkageOnlyMask,
}

impl Reason {
    pub fn code(&self) -> &'static str {
        match self {
            Reason::CharacteristicTwo => "characteristic_two",
            Reason::TrivialModule => "trivial_module",
            Reason::FrobeniusNormalized { .. } => "frobenius_normalized",
            Reason::Digits { .. } => "digits",
            Reason::DigitTooLarge { .. } => "digit_too_large",
            Reason::LeadingDigitTooLarge { .. } => "leading_digit_too_large",
            Reason::DimensionObstruction { .. } => "dimension_obstruction",
            Reason::DigitRuleSatisfied => "digit_rule_satisfied",
            Reason::Residue { .. } => "residue",
            Reason::TiltingPeel { .. } => "tilting_peel",
            Reason::AdjointFactor { .. } => "adjoint_factor",
            Reason::AdjointFactorMissing => "adjoint_factor_missing",
            Reason::LinkedFactor { .. } => "linked_factor",
            Reason::PossiblyNonsplitFactor { .. } => "possibly_nonsplit_factor",
            Reason::AllExtensionsSplit => "all_extensions_split",
            Reason::NonStrictReading { .. } => "non_strict_reading",
            Reason::LinkageOnlyMask => "linkage_only_mask",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::CharacteristicTwo => {
                f.write_str("characteristic 2: no SL2-module gives a reductive pair")
            }
            Reason::TrivialModule => {
                f.write_str("highest weight 0 is the trivial module; the rule is applied literally")
            }
            Reason::FrobeniusNormalized { from, to, twists } => write!(
                f,
                "{from} is the {twists}-fold Frobenius twist of {to}, which has the same answer"
            ),
            Reason::Digits { digits, leading } => {
                write!(f, "base-p digits (least significant first) {digits:?}, first nonzero at index {leading}")
            }
            Reason::DigitTooLarge { index, digit, bound } => {
                write!(f, "digit a_{index} = {digit} exceeds {bound}")
            }
            Reason::LeadingDigitTooLarge { index, digit, bound } => {
                write!(f, "first nonzero digit a_{index} = {digit} exceeds {bound}")
            }
            Reason::DimensionObstruction { index, dim } => write!(
                f,
                "tensor factor {index} is indecomposable of dimension {dim}, divisible by p"
            ),
            Reason::DigitRuleSatisfied => f.write_str("all digit conditions hold"),
            Reason::Residue { modulus, residue, allowed } => write!(
                f,
                "n = {residue} mod {modulus}, which is {}an allowed class",
                if *allowed { "" } else { "not " }
            ),
            Reason::TiltingPeel { summands, adjoint_multiplicity } => write!(
                f,
                "tilting peel found {summands} distinct summands, T(2) = L(2) with multiplicity {adjoint_multiplicity}"
            ),
            Reason::AdjointFactor { multiplicity } => {
                write!(f, "the adjoint module is a composition factor with multiplicity {multiplicity}")
            }
            Reason::AdjointFactorMissing => {
                f.write_str("the adjoint module is not a composition factor")
            }
            Reason::LinkedFactor { label, multiplicity } => write!(
                f,
                "factor L{label} (x{multiplicity}) is linked to the adjoint weight; its extensions may not split"
            ),
            Reason::PossiblyNonsplitFactor { label, multiplicity } => write!(
                f,
                "factor L{label} (x{multiplicity}) is not cleared by the extension mask"
            ),
            Reason::AllExtensionsSplit => f.write_str(
                "every other composition factor has only split extensions with the adjoint module",
            ),
            Reason::NonStrictReading { label } => write!(
                f,
                "factor L{label} shares its restricted part with the adjoint weight; cleared by the non-strict reading"
            ),
            Reason::LinkageOnlyMask => f.write_str(
                "the adjoint weight is not in the bottom alcove; only linkage was used",
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub p: u64,
    pub weight: WeightLabel,
    pub kind: VerdictKind,
    pub reasons: Vec<Reason>,
}

impl Verdict {
    fn a1(p: Prime, weight: u64, kind: VerdictKind, reasons: Vec<Reason>) -> Self {
        Verdict {
            p: p.get(),
            weight: WeightLabel::A1(weight),
            kind,
            reasons,
        }
    }

    /// Reason codes joined by commas, for tabular output.
    pub fn codes(&self) -> String {
        self.reasons
            .iter()
            .map(Reason::code)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Strips trailing zero base-`p` digits: a Frobenius twist gives a reductive
/// pair exactly when the untwisted module does.
pub fn normalize_frobenius(p: Prime, lambda: u64) -> Result<u64> {
    if lambda == 0 {
        return Err(Error::ZeroWeight);
    }
    let mut l = lambda;
    while l.is_multiple_of(p.get()) {
        l /= p.get();
    }
    Ok(l)
}

/// Classifies simple modules `L(lambda)`, `lambda >= 1`, by the base-`p`
/// digits of `lambda`.
pub fn simple_verdict(p: Prime, lambda: u64) -> Result<Verdict> {
    let normalized = normalize_frobenius(p, lambda)?;
    if p.get() == 2 {
        return Ok(Verdict::a1(
            p,
            lambda,
            VerdictKind::No,
            vec![Reason::CharacteristicTwo],
        ));
    }
    let pp = p.get();
    let expansion = digits(p, lambda);
    let ds = expansion.digits();
    let l = expansion.leading_index().expect("lambda is nonzero");

    let mut reasons = Vec::new();
    if normalized != lambda {
        reasons.push(Reason::FrobeniusNormalized {
            from: lambda,
            to: normalized,
            twists: l as u32,
        });
    }
    reasons.push(Reason::Digits {
        digits: ds.to_vec(),
        leading: l,
    });

    let mut failed = false;
    if pp > 3 {
        for (i, &a) in ds.iter().enumerate() {
            if a > pp - 2 {
                failed = true;
                reasons.push(Reason::DigitTooLarge {
                    index: i,
                    digit: a,
                    bound: pp - 2,
                });
                reasons.push(Reason::DimensionObstruction {
                    index: i,
                    dim: a + 1,
                });
            }
        }
        if ds[l] > pp - 3 {
            failed = true;
            reasons.push(Reason::LeadingDigitTooLarge {
                index: l,
                digit: ds[l],
                bound: pp - 3,
            });
        }
    } else {
        // p = 3: every digit but the first nonzero one must be at most 1.
        for (i, &a) in ds.iter().enumerate() {
            if i != l && a > 1 {
                failed = true;
                reasons.push(Reason::DigitTooLarge {
                    index: i,
                    digit: a,
                    bound: 1,
                });
            }
        }
    }

    let kind = if failed {
        VerdictKind::No
    } else {
        reasons.push(Reason::DigitRuleSatisfied);
        VerdictKind::Yes
    };
    Ok(Verdict::a1(p, lambda, kind, reasons))
}

/// Classifies Weyl modules `nabla(n)` by the residue of `n`.
pub fn weyl_verdict(p: Prime, n: u64) -> Verdict {
    let mut reasons = Vec::new();
    if n == 0 {
        reasons.push(Reason::TrivialModule);
    }
    let pp = p.get();
    if pp == 2 {
        reasons.push(Reason::CharacteristicTwo);
        return Verdict::a1(p, n, VerdictKind::No, reasons);
    }
    let (modulus, residue, allowed) = if pp == 3 {
        let r = n % 9;
        (9, r, (1..=6).contains(&r))
    } else {
        let r = n % pp;
        (pp, r, r != 0 && r != pp - 2 && r != pp - 1)
    };
    reasons.push(Reason::Residue {
        modulus,
        residue,
        allowed,
    });
    let kind = if allowed {
        VerdictKind::Yes
    } else {
        VerdictKind::No
    };
    Verdict::a1(p, n, kind, reasons)
}

/// Decides the Weyl-module question from characters alone: peel
/// `nabla(n) (x) Delta(n)` into indecomposable tiltings and look for
/// `T(2) = L(2)`.
pub fn weyl_oracle(p: Prime, n: u64) -> Result<Verdict> {
    weyl_oracle_with(p, n, tilting_char)
}

/// [`weyl_oracle`] against a caller-supplied tilting character family.
pub fn weyl_oracle_with<F>(p: Prime, n: u64, tilting: F) -> Result<Verdict>
where
    F: Fn(Prime, u64) -> FormalCharacter,
{
    let decomposition = peel_tilting_with(p, &y_char(2 * n as i64), tilting)?;
    let adjoint = decomposition.summands.multiplicity(&ADJOINT_A1);
    let mut reasons = Vec::new();
    if n == 0 {
        reasons.push(Reason::TrivialModule);
    }
    reasons.push(Reason::TiltingPeel {
        summands: decomposition.summands.len(),
        adjoint_multiplicity: adjoint.clone(),
    });
    let kind = if p.get() == 2 {
        // L(2) is not tilting in characteristic 2.
        reasons.push(Reason::CharacteristicTwo);
        VerdictKind::No
    } else if adjoint.is_positive() {
        VerdictKind::Yes
    } else {
        VerdictKind::No
    };
    Ok(Verdict::a1(p, n, kind, reasons))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TensorFactor {
    pub dim: u64,
    pub indecomposable: bool,
}

/// If `p` does not divide `dim Lie G` and some indecomposable tensor factor
/// has dimension divisible by `p`, every summand of `V (x) V*` has dimension
/// divisible by `p`, so the Lie algebra cannot be one.
pub fn divisibility_obstruction(p: Prime, lie_dim: u64, factors: &[TensorFactor]) -> bool {
    let pp = p.get();
    !lie_dim.is_multiple_of(pp) && factors.iter().any(|f| f.indecomposable && f.dim % pp == 0)
}

/// The Steinberg factorization `L(lambda) = (x)_i L(a_i)^{F^i}` as a list of
/// simple (hence indecomposable) tensor factors, zero digits omitted.
pub fn simple_tensor_factors(p: Prime, lambda: u64) -> Vec<TensorFactor> {
    digits(p, lambda)
        .digits()
        .iter()
        .filter(|&&a| a != 0)
        .map(|&a| TensorFactor {
            dim: a + 1,
            indecomposable: true,
        })
        .collect()
}

/// `mu` and `nu` lie in one affine Weyl group dot orbit: `mu+1 = +-(nu+1)`
/// modulo `2p`.
pub fn linked_a1(p: Prime, mu: u64, nu: u64) -> bool {
    let m = 2 * p.get();
    let (x, y) = ((mu + 1) % m, (nu + 1) % m);
    x == y || (x + y) % m == 0
}

/// One-sided check for simple modules: if the adjoint factor `L(2)` occurs in
/// `L(lambda) (x) L(lambda)*` and no other composition factor is linked to
/// it, every extension splits and the adjoint copy is a summand.
pub fn sufficiency_oracle_simple(p: Prime, lambda: u64) -> Result<Verdict> {
    if p.get() == 2 {
        return Err(Error::Unsupported(
            "the composition-factor oracle needs p >= 3".into(),
        ));
    }
    if lambda == 0 {
        return Err(Error::ZeroWeight);
    }
    let ch = simple_char(p, lambda);
    let factors = comp_factors(p, &ch.multiply(&ch.dual())?)?;
    let adjoint = factors.multiplicity(&ADJOINT_A1);
    if adjoint.is_zero() {
        return Ok(Verdict::a1(
            p,
            lambda,
            VerdictKind::Inconclusive,
            vec![Reason::AdjointFactorMissing],
        ));
    }
    let mut reasons = vec![Reason::AdjointFactor {
        multiplicity: adjoint,
    }];
    for (&mu, m) in factors.iter() {
        if mu != ADJOINT_A1 && linked_a1(p, mu, ADJOINT_A1) {
            reasons.push(Reason::LinkedFactor {
                label: WeightLabel::A1(mu),
                multiplicity: m.clone(),
            });
        }
    }
    let kind = if reasons.len() == 1 {
        reasons.push(Reason::AllExtensionsSplit);
        VerdictKind::ProvenYes
    } else {
        VerdictKind::Inconclusive
    };
    Ok(Verdict::a1(p, lambda, kind, reasons))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn simple(pr: u64, l: u64) -> VerdictKind {
        simple_verdict(p(pr), l).unwrap().kind
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_frobenius(p(5), 50).unwrap(), 2);
        assert_eq!(normalize_frobenius(p(3), 9).unwrap(), 1);
        assert_eq!(normalize_frobenius(p(5), 7).unwrap(), 7);
        assert_eq!(normalize_frobenius(p(5), 0), Err(Error::ZeroWeight));
    }

    #[test]
    fn simple_examples() {
        use VerdictKind::*;
        assert_eq!(simple(5, 1), Yes);
        assert_eq!(simple(5, 4), No);
        assert_eq!(simple(3, 5), Yes);
        assert_eq!(simple(3, 8), No);
        assert_eq!(simple(2, 3), No);
        assert_eq!(simple(5, 11), Yes);
        assert_eq!(simple_verdict(p(5), 0), Err(Error::ZeroWeight));
    }

    #[test]
    fn simple_reasons_name_the_failure() {
        let v = simple_verdict(p(5), 4).unwrap();
        assert!(v.reasons.contains(&Reason::DigitTooLarge {
            index: 0,
            digit: 4,
            bound: 3
        }));
        assert!(v
            .reasons
            .contains(&Reason::DimensionObstruction { index: 0, dim: 5 }));
        let v = simple_verdict(p(5), 3).unwrap();
        assert_eq!(v.kind, VerdictKind::No);
        assert!(v.reasons.contains(&Reason::LeadingDigitTooLarge {
            index: 0,
            digit: 3,
            bound: 2
        }));
        let v = simple_verdict(p(5), 50).unwrap();
        assert_eq!(
            v.reasons[0],
            Reason::FrobeniusNormalized {
                from: 50,
                to: 2,
                twists: 2
            }
        );
        assert_eq!(v.kind, VerdictKind::Yes);
    }

    #[test]
    fn dimension_p_plus_one_pair() {
        // nabla(p) fails while L(1 + p(p-1)/2) = L(1) (x) L((p-1)/2)^F works;
        // both have dimension p + 1.
        for pr in [5u64, 7, 11, 13] {
            let lambda = 1 + pr * (pr - 1) / 2;
            assert_eq!(simple(pr, lambda), VerdictKind::Yes);
            assert_eq!(weyl_verdict(p(pr), pr).kind, VerdictKind::No);
            assert_eq!(simple_char(p(pr), lambda).dimension(), Mult::from(pr + 1));
        }
        assert_eq!(simple_char(p(5), 11).dimension(), Mult::from(6));
    }

    #[test]
    fn weyl_examples() {
        use VerdictKind::*;
        assert_eq!(weyl_verdict(p(5), 7).kind, Yes);
        assert_eq!(weyl_verdict(p(5), 4).kind, No);
        assert_eq!(weyl_verdict(p(3), 7).kind, No);
        assert_eq!(weyl_verdict(p(3), 3).kind, Yes);
        assert_eq!(weyl_verdict(p(2), 6).kind, No);
        let zero = weyl_verdict(p(5), 0);
        assert_eq!(zero.kind, No);
        assert_eq!(zero.reasons[0], Reason::TrivialModule);
    }

    #[test]
    fn weyl_oracle_examples() {
        use VerdictKind::*;
        assert_eq!(weyl_oracle(p(5), 2).unwrap().kind, Yes);
        assert_eq!(weyl_oracle(p(5), 4).unwrap().kind, No);
        assert_eq!(weyl_oracle(p(3), 1).unwrap().kind, Yes);
        assert_eq!(weyl_oracle(p(2), 5).unwrap().kind, No);
    }

    #[test]
    fn obstruction_examples() {
        let f = |dim, indecomposable| TensorFactor {
            dim,
            indecomposable,
        };
        assert!(divisibility_obstruction(p(5), 3, &[f(5, true)]));
        assert!(!divisibility_obstruction(p(3), 3, &[f(3, true)]));
        assert!(!divisibility_obstruction(
            p(7),
            3,
            &[f(3, true), f(4, true)]
        ));
        assert!(!divisibility_obstruction(p(5), 3, &[f(5, false)]));
        assert_eq!(
            simple_tensor_factors(p(5), 4 + 2 * 25),
            vec![f(5, true), f(3, true)]
        );
    }

    #[test]
    fn linkage_examples() {
        assert!(linked_a1(p(5), 2, 2));
        assert!(linked_a1(p(5), 2, 12));
        assert!(!linked_a1(p(5), 2, 4));
        assert!(linked_a1(p(5), 6, 2));
        assert!(!linked_a1(p(5), 0, 2));
    }

    #[test]
    fn linkage_matches_brute_force_orbit() {
        // Dot orbit of nu under x -> -x - 2 and x -> x + 2p, enumerated.
        for pr in [2u64, 3, 5, 7] {
            let pp = pr as i64;
            for nu in 0..30i64 {
                let mut orbit = std::collections::BTreeSet::new();
                for k in -60..=60 {
                    orbit.insert(nu + 2 * pp * k);
                    orbit.insert(-nu - 2 + 2 * pp * k);
                }
                for mu in 0..60i64 {
                    assert_eq!(linked_a1(p(pr), mu as u64, nu as u64), orbit.contains(&mu));
                }
            }
        }
    }

    #[test]
    fn sufficiency_examples() {
        let v = sufficiency_oracle_simple(p(5), 1).unwrap();
        assert_eq!(v.kind, VerdictKind::ProvenYes);
        assert_eq!(
            sufficiency_oracle_simple(p(5), 2).unwrap().kind,
            VerdictKind::ProvenYes
        );
        let v = sufficiency_oracle_simple(p(5), 4).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
        assert!(matches!(
            sufficiency_oracle_simple(p(2), 3),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(sufficiency_oracle_simple(p(3), 0), Err(Error::ZeroWeight));
    }

    #[test]
    fn verdict_json_shape() {
        let v = weyl_verdict(p(5), 7);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"p":5,"weight":7,"kind":"Yes","reasons":[{"code":"residue","modulus":5,"residue":2,"allowed":true}]}"#
        );
    }
}
