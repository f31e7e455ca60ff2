use num_bigint::BigUint;
use proptest::prelude::*;

use cwkit_core::cf::{cf_to_path, from_cf, path_to_cf, to_cf};
use cwkit_core::diagonal::{diagonal_element, solve_membership};
use cwkit_core::qmark::{qmark, qmark_children, qmark_reciprocal};
use cwkit_core::tree::{children, fraction_at, level_of, parent, path_of, rank_of, unrank};
use cwkit_core::{Dyadic, Fraction};

fn fraction(max: u64) -> impl Strategy<Value = Fraction> {
    (1..=max, 1..=max).prop_map(|(p, q)| Fraction::new(p, q).unwrap())
}

proptest! {
    #[test]
    fn path_and_rank_roundtrip(r in fraction(1 << 24)) {
        let p = path_of(&r);
        prop_assert_eq!(fraction_at(&p), r.clone());
        let k = rank_of(&r).unwrap();
        prop_assert_eq!(unrank(&k).unwrap(), r.clone());
        prop_assert_eq!(BigUint::from(k.bits()), level_of(&r));
    }

    #[test]
    fn cf_matches_path(r in fraction(1 << 40)) {
        let c = to_cf(&r);
        prop_assert_eq!(from_cf(&c), r.clone());
        prop_assert_eq!(cf_to_path(&c).unwrap(), path_of(&r));
        prop_assert_eq!(path_to_cf(&path_of(&r)), c.clone());
        prop_assert_eq!(c.digit_sum(), level_of(&r));
    }

    #[test]
    fn children_then_parent(r in fraction(1 << 30)) {
        let (l, rc) = children(&r);
        prop_assert_eq!(parent(&l).unwrap(), r.clone());
        prop_assert_eq!(parent(&rc).unwrap(), r.clone());
        prop_assert!(l < Fraction::one() && rc > Fraction::one());
    }

    #[test]
    fn qmark_translation_and_children(r in fraction(1_000_000)) {
        let x = qmark(&r);
        let one = BigUint::from(1u32);
        prop_assert_eq!(qmark(&r.add_integer(&one)), &x + &Dyadic::one());
        let (l, rc) = children(&r);
        prop_assert_eq!(qmark_children(&r, &x).unwrap(), (qmark(&l), qmark(&rc)));
    }

    #[test]
    fn qmark_reciprocal_identity(r in fraction(1_000_000)) {
        prop_assume!(r > Fraction::one());
        let x = qmark(&r);
        prop_assert_eq!(qmark_reciprocal(&r, &x).unwrap(), qmark(&r.recip()));
    }

    #[test]
    fn qmark_is_monotone(r in fraction(100_000), s in fraction(100_000)) {
        prop_assert_eq!(r.cmp(&s), qmark(&r).cmp(&qmark(&s)));
    }

    #[test]
    fn membership_recovers_element(n in 1u64..5000, j in 1u64..10_000) {
        let jj = BigUint::from(j);
        let r = diagonal_element(n, &jj).unwrap();
        prop_assert_eq!(solve_membership(&r, n).unwrap(), Some(jj));
    }
}
