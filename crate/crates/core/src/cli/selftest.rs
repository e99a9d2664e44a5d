use std::io::Write;

use clap::ValueEnum;

use super::{load_table, SelftestArgs, EXIT_CHECK_FAILED, EXIT_OK, SCHEMA_VERSION};
use crate::a2lat::{dim_a2, A2Weight};
use crate::charlat::{FormalCharacter, Prime};
use crate::error::{Error, Result};
use crate::sl2chars::{
    comp_factors, mutated_tilting_char, peel_tilting_with, simple_char, tilting_char, y_char,
    y_identity_check, CompFactorMultiset, YIdentity,
};
use crate::sl2verdict::{
    normalize_frobenius, simple_verdict, sufficiency_oracle_simple, weyl_oracle_with, weyl_verdict,
    VerdictKind, ADJOINT_A1,
};
use crate::sl3verdict::{example_machine, CharTable, SimpleCharsA2, P7_BASES, P7_TWISTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub(crate) enum Mutation {
    /// Use the corrupted tilting family in the SL2 peel checks.
    TiltingRecursion,
}

type Check = std::result::Result<(), String>;

fn p(n: u64) -> Prime {
    Prime::new(n).expect("prime")
}

fn w(a: i64, b: i64) -> A2Weight {
    A2Weight::new(a, b)
}

fn golden(pairs: &[((i64, i64), u64)]) -> CompFactorMultiset<A2Weight> {
    pairs.iter().map(|&((a, b), m)| (w(a, b), m)).collect()
}

fn describe(f: &CompFactorMultiset<A2Weight>) -> String {
    f.iter()
        .map(|(w, m)| format!("{w}:{m}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn paper_example(table: Option<&CharTable>) -> Check {
    let report = SimpleCharsA2::new(p(5), table)
        .verdict(w(5, 1), false)
        .map_err(fail)?;
    let expect = golden(&[((6, 6), 1), ((5, 5), 1), ((1, 1), 1), ((0, 0), 1)]);
    let got = report.composition_factors();
    if got != expect {
        return Err(format!("factors {}", describe(&got)));
    }
    if report.kind() != VerdictKind::ProvenYes {
        return Err(format!("verdict {}", report.kind()));
    }
    Ok(())
}

fn p7_square(table: Option<&CharTable>) -> Check {
    let chars = SimpleCharsA2::new(p(7), table);
    let c = chars.get(w(1, 1)).map_err(fail)?;
    let got = chars
        .comp_factors(&c.multiply(&c.dual()).map_err(fail)?)
        .map_err(fail)?;
    let expect = golden(&[
        ((2, 2), 1),
        ((3, 0), 1),
        ((0, 3), 1),
        ((1, 1), 2),
        ((0, 0), 1),
    ]);
    if got != expect {
        return Err(format!("factors {}", describe(&got)));
    }
    Ok(())
}

fn p7_bases(table: Option<&CharTable>) -> Check {
    let chars = SimpleCharsA2::new(p(7), table);
    for lam in P7_BASES {
        let kind = chars.verdict(lam, false).map_err(fail)?.kind();
        if kind != VerdictKind::ProvenYes {
            return Err(format!("L{lam}: {kind}"));
        }
    }
    Ok(())
}

fn p7_twist_dims() -> Check {
    for mu in P7_TWISTS {
        let d = dim_a2(mu).map_err(fail)?;
        if d % 7 == 0 {
            return Err(format!("dim {mu} = {d}"));
        }
    }
    Ok(())
}

fn p7_machine(table: Option<&CharTable>) -> Check {
    for lam in P7_BASES {
        for mu in P7_TWISTS {
            for n in 1..=2u32 {
                let c = example_machine(p(7), lam, mu, n, table, false).map_err(fail)?;
                let q = 7i64.pow(n);
                if c.weight != lam + mu.scaled(q) {
                    return Err(format!("{lam} + 7^{n} {mu} gave {}", c.weight));
                }
            }
        }
    }
    Ok(())
}

fn weyl_agreement(family: fn(Prime, u64) -> FormalCharacter) -> Check {
    for pr in [2, 3, 5, 7, 11] {
        for n in 0..=150 {
            let oracle =
                weyl_oracle_with(p(pr), n, family).map_err(|e| format!("p={pr} n={n}: {e}"))?;
            let rule = weyl_verdict(p(pr), n);
            if oracle.kind != rule.kind {
                return Err(format!(
                    "p={pr} n={n}: rule {} oracle {}",
                    rule.kind, oracle.kind
                ));
            }
        }
    }
    Ok(())
}

fn simple_consistency() -> Check {
    for pr in [3, 5, 7] {
        for lam in 1..=pr * pr * pr {
            let rule = simple_verdict(p(pr), lam).map_err(fail)?;
            let oracle = sufficiency_oracle_simple(p(pr), lam).map_err(fail)?;
            if oracle.kind == VerdictKind::ProvenYes && rule.kind != VerdictKind::Yes {
                return Err(format!(
                    "p={pr} lambda={lam}: oracle proves Yes, rule says No"
                ));
            }
            if rule.kind == VerdictKind::Yes {
                // Twisting kills the Lie algebra action, so look at the
                // untwisted module.
                let c = simple_char(p(pr), normalize_frobenius(p(pr), lam).map_err(fail)?);
                let f = comp_factors(p(pr), &c.multiply(&c.dual()).map_err(fail)?).map_err(fail)?;
                if !f.contains(&ADJOINT_A1) {
                    return Err(format!("p={pr} lambda={lam}: no factor L(2)"));
                }
            }
            if simple_verdict(p(pr), pr * lam).map_err(fail)?.kind != rule.kind {
                return Err(format!("p={pr} lambda={lam}: not Frobenius invariant"));
            }
        }
    }
    Ok(())
}

fn identities() -> Check {
    for pr in [3, 5, 7] {
        for identity in YIdentity::all(p(pr)) {
            for m in 0..=12 {
                if !y_identity_check(p(pr), m, identity).map_err(fail)? {
                    return Err(format!("p={pr} {identity:?} m={m}"));
                }
            }
        }
    }
    Ok(())
}

fn alarm_live() -> Check {
    match peel_tilting_with(p(3), &y_char(28), mutated_tilting_char) {
        Err(Error::NegativeMultiplicity { .. }) => Ok(()),
        Err(e) => Err(format!("unexpected error {e}")),
        Ok(_) => Err("corrupted tilting family was not detected".into()),
    }
}

/// Every user entry whose character can also be derived without the user
/// table must agree with the derivation.
fn table_consistency(table: &CharTable) -> Check {
    for entry in table.entries() {
        let pr = Prime::new(entry.p).map_err(fail)?;
        match SimpleCharsA2::new(pr, None).get(entry.weight) {
            Ok(derived) if derived != entry.character => {
                return Err(format!(
                    "p={} L{}: table character (dim {}) differs from the derived one (dim {})",
                    entry.p,
                    entry.weight,
                    entry.character.dimension(),
                    derived.dimension()
                ));
            }
            Ok(_) | Err(Error::AdaptationFailure { .. }) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

pub(crate) fn cmd_selftest(a: SelftestArgs, out: &mut dyn Write) -> Result<i32> {
    let table = load_table(&a.table)?;
    let t = table.as_ref();
    let family: fn(Prime, u64) -> FormalCharacter = match a.mutate {
        Some(Mutation::TiltingRecursion) => mutated_tilting_char,
        None => tilting_char,
    };

    let mut checks: Vec<(&str, Check)> = vec![
        ("sl3_paper_example_p5", paper_example(t)),
        ("sl3_adjoint_square_p7", p7_square(t)),
        ("sl3_p7_bases_certified", p7_bases(t)),
        ("sl3_p7_twist_dimensions", p7_twist_dims()),
        ("sl3_p7_example_machine", p7_machine(t)),
        ("sl2_weyl_rule_vs_tilting_peel", weyl_agreement(family)),
        ("sl2_simple_rule_consistency", simple_consistency()),
        ("sl2_y_identities", identities()),
        ("negativity_alarm_live", alarm_live()),
    ];
    if let Some(table) = t {
        checks.push(("table_consistency", table_consistency(table)));
    }

    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    writeln!(out, "check\tstatus\tdetail")?;
    let mut failed = 0;
    for (name, result) in &checks {
        match result {
            Ok(()) => writeln!(out, "{name}\tpass\t")?,
            Err(detail) => {
                failed += 1;
                writeln!(out, "{name}\tFAIL\t{detail}")?;
            }
        }
    }
    writeln!(out, "# {} checks, {failed} failed", checks.len())?;
    Ok(if failed == 0 {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
