use num_bigint::BigInt;
use proptest::prelude::*;

use reductive_pairs::a2lat::{linked_a2, weyl_char_a2, A2Weight};
use reductive_pairs::charlat::{FormalCharacter, Prime, Rank};
use reductive_pairs::mult::Mult;
use reductive_pairs::sl2chars::{
    comp_factors, nabla_char, peel_tilting, simple_char, tilting_char,
};
use reductive_pairs::sl2verdict::{
    linked_a1, simple_verdict, sufficiency_oracle_simple, VerdictKind,
};
use reductive_pairs::sl3verdict::SimpleCharsA2;

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]).prop_map(|p| Prime::new(p).unwrap())
}

fn odd_prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(vec![3u64, 5, 7, 11]).prop_map(|p| Prime::new(p).unwrap())
}

fn a1_char() -> impl Strategy<Value = FormalCharacter> {
    prop::collection::vec((-12i64..=12, -5i64..=5), 0..8).prop_map(FormalCharacter::a1)
}

fn a2_char() -> impl Strategy<Value = FormalCharacter> {
    prop::collection::vec(((-5i64..=5, -5i64..=5), -4i64..=4), 0..6).prop_map(FormalCharacter::a2)
}

fn weight() -> impl Strategy<Value = A2Weight> {
    (0i64..8, 0i64..8).prop_map(|(a, b)| A2Weight::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws_a1(x in a1_char(), y in a1_char(), z in a1_char()) {
        prop_assert_eq!(x.multiply(&y).unwrap(), y.multiply(&x).unwrap());
        prop_assert_eq!(
            x.multiply(&y).unwrap().multiply(&z).unwrap(),
            x.multiply(&y.multiply(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.multiply(&y.add(&z).unwrap()).unwrap(),
            x.multiply(&y).unwrap().add(&x.multiply(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(x.multiply(&FormalCharacter::one(Rank::A1)).unwrap(), x.clone());
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn ring_laws_a2(x in a2_char(), y in a2_char(), z in a2_char()) {
        prop_assert_eq!(x.multiply(&y).unwrap(), y.multiply(&x).unwrap());
        prop_assert_eq!(
            x.multiply(&y.add(&z).unwrap()).unwrap(),
            x.multiply(&y).unwrap().add(&x.multiply(&z).unwrap()).unwrap()
        );
        prop_assert!(x.multiply(&FormalCharacter::one(Rank::A1)).is_err());
    }

    #[test]
    fn twist_is_a_ring_homomorphism(x in a1_char(), y in a1_char(), p in prime(), i in 0u32..3) {
        let tw = |c: &FormalCharacter| c.frobenius_twist(p, i);
        prop_assert_eq!(tw(&x.multiply(&y).unwrap()), tw(&x).multiply(&tw(&y)).unwrap());
        prop_assert_eq!(tw(&x.add(&y).unwrap()), tw(&x).add(&tw(&y)).unwrap());
        prop_assert_eq!(tw(&x).frobenius_twist(p, 1), x.frobenius_twist(p, i + 1));
        prop_assert_eq!(tw(&x).dimension(), x.dimension());
    }

    #[test]
    fn dual_is_an_involutive_homomorphism(x in a2_char(), y in a2_char()) {
        prop_assert_eq!(x.dual().dual(), x.clone());
        prop_assert_eq!(x.multiply(&y).unwrap().dual(), x.dual().multiply(&y.dual()).unwrap());
    }

    #[test]
    fn dimension_is_multiplicative(x in a1_char(), y in a1_char()) {
        prop_assert_eq!(x.multiply(&y).unwrap().dimension(), &x.dimension() * &y.dimension());
        prop_assert_eq!(x.add(&y).unwrap().dimension(), &x.dimension() + &y.dimension());
    }

    #[test]
    fn json_round_trip(x in a2_char()) {
        let text = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<FormalCharacter>(&text).unwrap(), x);
    }

    #[test]
    fn linkage_is_an_equivalence_a1(p in prime(), a in 0u64..200, b in 0u64..200, c in 0u64..200) {
        prop_assert!(linked_a1(p, a, a));
        prop_assert_eq!(linked_a1(p, a, b), linked_a1(p, b, a));
        if linked_a1(p, a, b) && linked_a1(p, b, c) {
            prop_assert!(linked_a1(p, a, c));
        }
    }

    #[test]
    fn linkage_is_an_equivalence_a2(p in prime(), x in weight(), y in weight(), z in weight()) {
        prop_assert!(linked_a2(p, x, x));
        prop_assert_eq!(linked_a2(p, x, y), linked_a2(p, y, x));
        if linked_a2(p, x, y) && linked_a2(p, y, z) {
            prop_assert!(linked_a2(p, x, z));
        }
    }

    #[test]
    fn sl2_factors_reconstruct(p in prime(), m in 0u64..40, n in 0u64..40) {
        let x = nabla_char(m).multiply(&nabla_char(n)).unwrap();
        let f = comp_factors(p, &x).unwrap();
        prop_assert_eq!(f.reconstruct(Rank::A1, |l| Ok(simple_char(p, l))).unwrap(), x.clone());
        // Tilting modules are closed under tensor products.
        let y = tilting_char(p, m).multiply(&tilting_char(p, n)).unwrap();
        let t = peel_tilting(p, &y).unwrap();
        prop_assert!(t.residual.is_zero());
        prop_assert_eq!(
            t.summands.reconstruct(Rank::A1, |l| Ok(tilting_char(p, l))).unwrap(),
            y
        );
    }

    #[test]
    fn sl3_factors_reconstruct(w in (0i64..5, 0i64..5), v in (0i64..3, 0i64..3)) {
        // Keep every dominated weight off the walls a = 6, b = 6, which need
        // a table: 2a+b and a+2b only drop going down.
        let (a, b) = (w.0 + v.0, w.1 + v.1);
        prop_assume!(2 * a + b <= 11 && a + 2 * b <= 11);
        let p = Prime::new(7).unwrap();
        let chars = SimpleCharsA2::new(p, None);
        let x = weyl_char_a2(A2Weight::new(w.0, w.1)).unwrap()
            .multiply(&weyl_char_a2(A2Weight::new(v.0, v.1)).unwrap()).unwrap();
        let f = chars.comp_factors(&x).unwrap();
        prop_assert_eq!(f.reconstruct(Rank::A2, |l| chars.get(l)).unwrap(), x);
    }

    #[test]
    fn simple_verdict_is_frobenius_invariant(p in prime(), lam in 1u64..5000) {
        prop_assert_eq!(
            simple_verdict(p, lam).unwrap().kind,
            simple_verdict(p, p.get() * lam).unwrap().kind
        );
    }

    #[test]
    fn sufficiency_oracle_is_sound(p in odd_prime(), lam in 1u64..3000) {
        let oracle = sufficiency_oracle_simple(p, lam).unwrap().kind;
        prop_assert_ne!(oracle, VerdictKind::No);
        if oracle == VerdictKind::ProvenYes {
            prop_assert_eq!(simple_verdict(p, lam).unwrap().kind, VerdictKind::Yes);
        }
    }

    #[test]
    fn mult_matches_bigint(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let big = |x: i64| BigInt::from(x);
        let got = &(&Mult::from(a) * &Mult::from(b)) + &Mult::from(c);
        prop_assert_eq!(got.to_bigint(), big(a) * big(b) + big(c));
        let mut acc = Mult::from(c);
        acc.add_product(&Mult::from(a), &Mult::from(b));
        prop_assert_eq!(acc.to_bigint(), big(a) * big(b) + big(c));
        let diff = &Mult::from(a) - &Mult::from(b);
        prop_assert_eq!(diff.to_bigint(), big(a) - big(b));
    }
}
