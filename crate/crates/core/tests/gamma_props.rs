mod common;

use common::{fn_element, letters, r, word_of};
use proptest::prelude::*;
use qn_core::exact::slope_factor;
use qn_core::gammaq::{
    belk_transform, conj_in_q, contract, diagonal_lift, factor, kappa, kappa_inv, member_gamma, move_into,
    normal_gen_set, stab0_project, translation_number, tuple_signature, Atom, GammaContext, Word,
};
use qn_core::plmap::{PeriodicPL, PlHomeo, Side};
use qn_core::Rational;

fn ctx() -> GammaContext {
    GammaContext::new(2).unwrap()
}

/// Pointwise check: the slope at `x` is `n^i (n+1)^j` with `i - j` equal to
/// the number of integers crossed going from `x` to `f(x)`. Samples a grid
/// plus the midpoints between breakpoints and integer preimages.
fn crossing_oracle(f: &PeriodicPL, n: u32) -> bool {
    let mut cuts: Vec<Rational> = f.points().iter().map(|p| p.0.clone()).collect();
    let (lo, hi) = (f.eval(&Rational::zero()).unwrap().floor(), f.eval(&Rational::one()).unwrap().ceil());
    let mut k = Rational::from_bigint(lo);
    while k <= Rational::from_bigint(hi.clone()) {
        cuts.push(f.eval_inv(&k).unwrap());
        k = &k + &Rational::one();
    }
    cuts.retain(|x| !x.is_negative() && x <= &Rational::one());
    cuts.sort();
    let mut samples: Vec<Rational> = cuts.windows(2).map(|w| w[0].midpoint(&w[1])).collect();
    samples.extend((0..997).map(|m| Rational::new(m, 997)));
    samples.iter().all(|x| {
        let y = f.eval(x).unwrap();
        let mut crossed = 0i64;
        let mut k = Rational::from_bigint(x.floor() + 1i32);
        while k <= y {
            crossed += 1;
            k = &k + &Rational::one();
        }
        let mut k = Rational::from_bigint(x.floor());
        while k > y {
            crossed -= 1;
            k = &k - &Rational::one();
        }
        match slope_factor(&f.slope(x, Side::Right).unwrap(), n) {
            Ok(s) => s.i - s.j == crossed,
            Err(_) => false,
        }
    })
}

fn in_period(x: &Rational, a: &Rational, b: &Rational) -> bool {
    let k = Rational::from_bigint((x - a).floor());
    let x = x - &k;
    &x > a && &x < b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn products_stay_in_gamma(w in letters(8)) {
        let c = ctx();
        let f = c.eval(&word_of(&c, &w)).unwrap();
        prop_assert!(member_gamma(&f, 2).is_ok());
        prop_assert!(crossing_oracle(&f, 2));
    }

    #[test]
    fn shifted_products_leave_gamma(w in letters(6), s in 1i64..6) {
        let c = ctx();
        let f = c.eval(&word_of(&c, &w)).unwrap().compose(&PeriodicPL::translation(Rational::new(s, 6)));
        prop_assert!(member_gamma(&f, 2).is_err());
        prop_assert!(!crossing_oracle(&f, 2));
    }

    #[test]
    fn factorization_round_trip(w in letters(6)) {
        let c = ctx();
        let g = c.eval(&word_of(&c, &w)).unwrap();
        let f = factor(&c, &g).unwrap();
        prop_assert_eq!(c.eval(&f).unwrap(), g);
    }

    #[test]
    fn stabilizer_lifts(w in letters(6)) {
        let f = fn_element(6, &w);
        let g = diagonal_lift(&f, 2).unwrap();
        prop_assert!(member_gamma(&g, 2).is_ok());
        prop_assert_eq!(stab0_project(&g, 2).unwrap(), f);
    }

    #[test]
    fn word_text_round_trip(a in letters(4), b in letters(3), c2 in letters(3)) {
        let c = ctx();
        let mut w = word_of(&c, &a);
        w.push(Atom::Comm(word_of(&c, &b), word_of(&c, &c2)));
        let back = Word::parse(&w.render()).unwrap();
        prop_assert_eq!(c.eval(&back).unwrap(), c.eval(&w).unwrap());
        prop_assert_eq!(back, w.clone());
        prop_assert!(c.eval(&w.then(&w.inverse())).unwrap().is_identity());
    }

    #[test]
    fn signatures_are_feta_invariant(ms in prop::collection::btree_set(0i64..216, 1..5), w in letters(5)) {
        let pts: Vec<Rational> = ms.iter().map(|&m| Rational::new(m, 216)).collect();
        let f = fn_element(6, &w);
        let img: Vec<Rational> = pts.iter().map(|x| f.eval(x).unwrap()).collect();
        prop_assert_eq!(tuple_signature(&pts, 6).unwrap(), tuple_signature(&img, 6).unwrap());
    }

    #[test]
    fn translation_number_bounds(w in letters(6), h in letters(4)) {
        let c = ctx();
        let f = c.eval(&word_of(&c, &w)).unwrap();
        let t = translation_number(&f, 32, 6);
        if let Some(tau) = &t.exact {
            let (p, q) = t.certificate.unwrap();
            prop_assert_eq!(tau, &Rational::new(q, p as i64));
            let mut x = Rational::zero();
            for m in 1..=32i64 {
                x = f.eval(&x).unwrap();
                prop_assert!((&x - &(tau * &Rational::integer(m))).abs() < Rational::one());
            }
            // conjugation invariance
            let g = c.eval(&word_of(&c, &h)).unwrap();
            let tc = translation_number(&f.conjugate_by(&g), 32, 6);
            if let Some(v) = tc.exact {
                prop_assert_eq!(&v, tau);
            }
        }
        prop_assert!((&t.estimate - &translation_number(&f, 64, 0).estimate).abs() <= Rational::new(3, 64));
    }

    #[test]
    fn contraction_lands_inside(u0 in 0i64..48, du in 0i64..23, v0 in -24i64..48, dv in 1i64..12) {
        let c = ctx();
        let (a, b) = (Rational::new(u0, 24), Rational::new(u0 + du, 24));
        let (p, q) = (Rational::new(v0, 24), Rational::new(v0 + dv, 24));
        let w = contract(&c, &a, &b, &p, &q).unwrap();
        let f = c.eval(&w).unwrap();
        let (fa, fb) = (f.eval(&a).unwrap(), f.eval(&b).unwrap());
        prop_assert!(in_period(&fa, &p, &q) && in_period(&fb, &p, &q));
        prop_assert!(&fb - &fa < &q - &p);
    }

    #[test]
    fn commutator_words_agree_on_interval(w in letters(4), lo in 0i64..20, len in 1i64..4) {
        let c = ctx();
        let g = word_of(&c, &w);
        let (a, b) = (Rational::new(lo, 24), Rational::new(lo + len, 24));
        let h = conj_in_q(&c, &g, &a, &b).unwrap();
        prop_assert!(h.is_q_certified());
        let (hm, gm) = (c.eval(&h).unwrap(), c.eval(&g).unwrap());
        prop_assert!(hm.agree_on(&gm, &a, &b));
        let shift = Rational::integer(2);
        prop_assert!(hm.agree_on(&gm, &(&a + &shift), &(&b + &shift)));
    }

    #[test]
    fn doubling_equivariance(w in letters(5), m in 1i64..200) {
        let c = ctx();
        let g = c.eval(&word_of(&c, &w)).unwrap();
        let b = belk_transform(&g, 2, 3).unwrap();
        prop_assert!(b.check().is_ok());
        let t = Rational::new(m, 72);
        prop_assume!(t >= Rational::new(1, 8) && t <= Rational::integer(4));
        prop_assert_eq!(b.eval(&t).unwrap(), kappa_inv(&g.eval(&kappa(&t).unwrap()).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn kappa_conjugates_doubling_to_translation(num in 1i64..100_000, den in 1i64..1000) {
        let t = Rational::new(num, den);
        let s = kappa(&t).unwrap();
        prop_assert_eq!(kappa_inv(&s), t.clone());
        prop_assert_eq!(kappa(&(&t * &Rational::integer(2))).unwrap(), &s - &Rational::one());
    }
}

/// A word moving any point into any open interval exists; 100 random pairs.
#[test]
fn points_reach_every_interval() {
    use rand::{Rng, SeedableRng};
    let c = ctx();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(100);
    for _ in 0..100 {
        let x = Rational::new(rng.gen_range(-108..108), 36);
        let a = Rational::new(rng.gen_range(-120..120), 40);
        let b = &a + &Rational::new(rng.gen_range(1..10), 40);
        let w = move_into(&c, &x, &a, &b).unwrap();
        let y = c.eval(&w).unwrap().eval(&x).unwrap();
        assert!(y > a && y < b, "{x} went to {y}, outside ({a}, {b})");
    }
}

#[test]
fn xi_breaks_signature_invariance() {
    let xi = GammaContext::with_depth(2, 2).unwrap().xi;
    let x = r("35/36");
    let y = xi.eval(&x).unwrap().fract();
    assert_eq!(y, r("2/9"));
    assert_eq!(tuple_signature(&[x], 6).unwrap(), vec![5]);
    assert_eq!(tuple_signature(&[y], 6).unwrap(), vec![3]);
}

#[test]
fn normal_generators() {
    let c = ctx();
    let gens = normal_gen_set(&c).unwrap();
    let k = c.chain.psis.len();
    assert_eq!(gens.len(), k * (k - 1) / 2 + 2);
    for w in &gens {
        assert!(w.is_q_certified());
        let f = c.eval(w).unwrap();
        assert!(member_gamma(&f, 2).is_ok());
        if !f.is_identity() {
            assert!(f.support().stable_hull().is_some(), "{w}");
        }
    }
}

