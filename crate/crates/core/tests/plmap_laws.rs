mod common;

use common::{compact_map, periodic_map, r, rational};
use proptest::prelude::*;
use qn_core::plmap::text::{parse_block, PlBlock};
use qn_core::plmap::{CompactPL, PeriodicPL, PlHomeo, Side};
use qn_core::Rational;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn periodic_group_laws(f in periodic_map(), g in periodic_map(), h in periodic_map()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert!(f.inverse().compose(&f).is_identity());
        prop_assert_eq!(PeriodicPL::identity().compose(&f), f.clone());
        prop_assert_eq!(f.inverse().inverse(), f);
    }

    #[test]
    fn compact_group_laws(f in compact_map(), g in compact_map(), h in compact_map()) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert_eq!(f.compose(&CompactPL::identity()), f);
    }

    #[test]
    fn composition_is_pointwise(f in periodic_map(), g in periodic_map(), x in rational(7)) {
        let fg = f.compose(&g);
        prop_assert_eq!(fg.eval(&x).unwrap(), g.eval(&f.eval(&x).unwrap()).unwrap());
        prop_assert_eq!(f.eval_inv(&f.eval(&x).unwrap()).unwrap(), x.clone());
        let shifted = &x + &Rational::integer(3);
        prop_assert_eq!(f.eval(&shifted).unwrap(), &f.eval(&x).unwrap() + &Rational::integer(3));
    }

    #[test]
    fn powers(f in periodic_map(), k in -3i64..4) {
        let mut expect = PeriodicPL::identity();
        let step = if k < 0 { f.inverse() } else { f.clone() };
        for _ in 0..k.abs() {
            expect = expect.compose(&step);
        }
        prop_assert_eq!(f.pow(k), expect);
    }

    #[test]
    fn support_matches_moved_points(f in periodic_map(), x in rational(97)) {
        let moved = f.eval(&x).unwrap() != x;
        prop_assert_eq!(f.support().contains(&x), moved);
        if let Some((a, b)) = f.support().stable_hull() {
            prop_assert!(&b - &a < Rational::one());
            if moved {
                let k = Rational::from_bigint((&x - &a).floor());
                prop_assert!(&x - &k <= b);
            }
        }
    }

    #[test]
    fn compact_support_matches(f in compact_map(), m in 1i64..97) {
        let x = Rational::new(m, 97);
        prop_assert_eq!(f.support().contains(&x), f.eval(&x).unwrap() != x);
    }

    #[test]
    fn slopes_agree_with_difference_quotients(f in periodic_map(), m in 1i64..64) {
        let x = Rational::new(m, 64);
        let h = Rational::new(1, 1 << 20);
        let right = (&f.eval(&(&x + &h)).unwrap() - &f.eval(&x).unwrap()) / h.clone();
        let left = (&f.eval(&x).unwrap() - &f.eval(&(&x - &h)).unwrap()) / h;
        prop_assert_eq!(f.slope(&x, Side::Right).unwrap(), right);
        prop_assert_eq!(f.slope(&x, Side::Left).unwrap(), left);
    }

    #[test]
    fn agree_on_matches_sampling(f in periodic_map(), g in periodic_map()) {
        let (a, b) = (r("1/8"), r("5/8"));
        let same = f.agree_on(&g, &a, &b);
        let samples = (0..=64).all(|i| {
            let x = &a + &(&(&b - &a) * &Rational::new(i, 64));
            f.eval(&x).unwrap() == g.eval(&x).unwrap()
        });
        // sampling can only miss disagreements, never invent them
        prop_assert!(!same || samples);
        prop_assert!(f.agree_on(&f.clone(), &a, &b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn text_round_trip(f in periodic_map(), g in compact_map(), n in 2u32..7) {
        let b = PlBlock::periodic(n, f);
        prop_assert_eq!(parse_block(&b.render()).unwrap(), b);
        let c = PlBlock::compact(n, g);
        prop_assert_eq!(parse_block(&c.render()).unwrap(), c);
    }

    #[test]
    fn canonical_form_idempotent(f in periodic_map()) {
        prop_assert_eq!(PeriodicPL::new(f.points().to_vec()).unwrap(), f);
    }
}

#[test]
fn domain_errors() {
    let f = CompactPL::identity();
    assert!(f.eval(&r("3/2")).is_err());
    assert!(f.slope(&r("0"), Side::Left).is_err());
    assert!(PeriodicPL::new(vec![(r("0"), r("0")), (r("1"), r("2"))]).is_err());
}
