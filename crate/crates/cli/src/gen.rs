//! Random inputs for the property suites.

use qn_core::gammaq::{Atom, GammaContext, Word};
use qn_core::plmap::{CompactPL, PlHomeo};
use qn_core::thompson::{class_of, presentation_generator};
use qn_core::Rational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// The first few infinite-presentation generators of `F_n` as maps.
pub fn fn_generators(n: u32, count: usize) -> Vec<CompactPL> {
    (0..count)
        .map(|i| presentation_generator(i, n).expect("small index").to_map())
        .collect()
}

/// A product of `1..=max_len` random generators or inverses.
pub fn fn_word(rng: &mut ChaCha8Rng, gens: &[CompactPL], max_len: usize) -> CompactPL {
    let len = rng.gen_range(1..=max_len);
    (0..len).fold(CompactPL::identity(), |acc, _| {
        let g = &gens[rng.gen_range(0..gens.len())];
        if rng.gen_bool(0.5) {
            acc.compose(g)
        } else {
            acc.compose(&g.inverse())
        }
    })
}

/// A random word over `ξ^{±1}` and the chain generators of `F_η` with inverses.
pub fn gamma_word(rng: &mut ChaCha8Rng, ctx: &GammaContext, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    let k = ctx.chain.psis.len();
    let atoms = (0..len)
        .map(|_| {
            let pick = rng.gen_range(0..k + 1);
            let inv = rng.gen_bool(0.5);
            if pick == k {
                Atom::Xi(if inv { -1 } else { 1 })
            } else if inv {
                Atom::F(ctx.chain.psis[pick].inverse())
            } else {
                Atom::F(ctx.chain.psis[pick].clone())
            }
        })
        .collect();
    Word::new(ctx.n, ctx.depth, atoms)
}

/// A point `m / n^k` in `(0, 1)` with `1 <= k <= max_depth`.
pub fn nadic_point(rng: &mut ChaCha8Rng, n: u32, max_depth: u32) -> Rational {
    let k = rng.gen_range(1..=max_depth);
    let d = (n as i64).pow(k);
    Rational::new(rng.gen_range(1..d), d)
}

/// `len` distinct sorted points of depth at most `max_depth`.
pub fn nadic_tuple(rng: &mut ChaCha8Rng, n: u32, max_depth: u32, len: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = vec![];
    while out.len() < len {
        let x = nadic_point(rng, n, max_depth);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out.sort();
    out
}

/// A sorted tuple with the same class sequence as `s`, by rejection.
pub fn matching_tuple(rng: &mut ChaCha8Rng, s: &[Rational], n: u32, max_depth: u32) -> Vec<Rational> {
    let want: Vec<u32> = s.iter().map(|x| class_of(x, n).expect("n-adic")).collect();
    loop {
        let t = nadic_tuple(rng, n, max_depth, s.len());
        let got: Vec<u32> = t.iter().map(|x| class_of(x, n).expect("n-adic")).collect();
        if got == want {
            return t;
        }
    }
}

/// A closed interval `[a, b]` with `0 < b - a < 1`, endpoints with denominator `den`.
pub fn interval(rng: &mut ChaCha8Rng, den: i64) -> (Rational, Rational) {
    let a = rng.gen_range(-den..2 * den);
    let len = rng.gen_range(1..den);
    (Rational::new(a, den), Rational::new(a + len, den))
}
