#![allow(dead_code)]

use proptest::prelude::*;
use qn_core::gammaq::{Atom, GammaContext, Word};
use qn_core::plmap::{CompactPL, PeriodicPL, PlHomeo};
use qn_core::thompson::presentation_generator;
use qn_core::Rational;

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Graph points from a strictly increasing abscissa set and positive rises.
fn graph(cuts: Vec<u32>, rises: Vec<u32>, y0: Rational) -> Vec<(Rational, Rational)> {
    let mut xs: Vec<u32> = cuts.into_iter().map(|c| c % 63 + 1).collect();
    xs.sort();
    xs.dedup();
    let k = xs.len() + 1;
    let rises = &rises[..k];
    let total: u32 = rises.iter().sum();
    let mut pts = vec![(Rational::zero(), y0.clone())];
    let mut acc = 0;
    for (i, x) in xs.iter().enumerate() {
        acc += rises[i];
        pts.push((Rational::new(*x as i64, 64), &y0 + &Rational::new(acc as i64, total as i64)));
    }
    pts.push((Rational::one(), &y0 + &Rational::one()));
    pts
}

pub fn periodic_map() -> impl Strategy<Value = PeriodicPL> {
    (
        prop::collection::vec(0u32..1000, 0..5),
        prop::collection::vec(1u32..9, 6),
        -40i64..40,
    )
        .prop_map(|(c, r, y)| PeriodicPL::new(graph(c, r, Rational::new(y, 16))).unwrap())
}

pub fn compact_map() -> impl Strategy<Value = CompactPL> {
    (prop::collection::vec(0u32..1000, 0..5), prop::collection::vec(1u32..9, 6))
        .prop_map(|(c, r)| CompactPL::new(graph(c, r, Rational::zero())).unwrap())
}

pub fn rational(den: i64) -> impl Strategy<Value = Rational> {
    (-4 * den..4 * den).prop_map(move |m| Rational::new(m, den))
}

/// Letters for a random word: index `k` stands for `ξ`, smaller ones for `ψ_i`.
pub fn letters(max_len: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..7, any::<bool>()), 1..=max_len)
}

pub fn word_of(ctx: &GammaContext, letters: &[(usize, bool)]) -> Word {
    let k = ctx.chain.psis.len();
    let atoms = letters
        .iter()
        .map(|&(i, inv)| {
            let i = i % (k + 1);
            if i == k {
                Atom::Xi(if inv { -1 } else { 1 })
            } else if inv {
                Atom::F(ctx.chain.psis[i].inverse())
            } else {
                Atom::F(ctx.chain.psis[i].clone())
            }
        })
        .collect();
    Word::new(ctx.n, ctx.depth, atoms)
}

pub fn fn_element(n: u32, letters: &[(usize, bool)]) -> CompactPL {
    letters.iter().fold(CompactPL::identity(), |acc, &(i, inv)| {
        let g = presentation_generator(i % 4, n).unwrap().to_map();
        acc.compose(&if inv { g.inverse() } else { g })
    })
}
