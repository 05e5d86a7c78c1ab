//! The ambient groups `Γ_n` of periodic PL maps and the subgroups `Q_n`.
//!
//! `η = n(n+1)` throughout. `F_η` sits inside `Γ_n` as the stabilizer of 0,
//! acting diagonally on every `[m, m+1]`.

mod belk;
mod dynamics;
mod factor;
mod rotation;
mod signature;
mod special;
mod word;

pub use belk::{belk_transform, kappa, kappa_inv, BelkMap};
pub use dynamics::{
    conj_in_q, contract, move_into, normal_gen_set, simplicity_witness, Witness,
};
pub use factor::factor;
pub use rotation::{translation_number, RotationEstimate};
pub use signature::tuple_signature;
pub use special::{default_depth, is_special, mush, special_in_q, xi_build};
pub use word::{Atom, Word};

use crate::error::{Error, Result};
use crate::exact::{in_ring, slope_factor, Rational};
use crate::plmap::{CompactPL, PeriodicPL, PlHomeo};
use crate::thompson::{chain_generators, member_fn, ChainSet};

pub fn eta(n: u32) -> u32 {
    n * (n + 1)
}

/// A periodic map that passed the `Γ_n` membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaElement {
    pub n: u32,
    pub map: PeriodicPL,
}

impl GammaElement {
    pub fn eta(&self) -> u32 {
        eta(self.n)
    }
}

/// Decides membership of `f` in `Γ_n`.
///
/// Breakpoints must lie in `Z[1/η]` and slopes must be `n^i (n+1)^j`. On
/// every open piece where neither `x` nor `f(x)` is an integer the exponent
/// difference `i - j` must equal `floor(f(x)) - floor(x)`, the signed count
/// of integers strictly between `x` and `f(x)`.
pub fn member_gamma(f: &PeriodicPL, n: u32) -> Result<GammaElement> {
    if n < 2 {
        return Err(Error::UnsupportedBase(n));
    }
    let e = eta(n) as u64;
    for b in f.breakpoints() {
        if !in_ring(&b, e) {
            return Err(Error::BreakpointNotInRing(b.to_string()));
        }
    }
    for (x0, y0, x1, y1, s) in f.segments() {
        let exps = slope_factor(&s, n).map_err(|_| Error::SlopeNotFactorable(s.to_string()))?;
        let want = exps.i - exps.j;
        // cut where f crosses an integer; x itself only meets 0 and 1 here
        let mut cuts = vec![x0.clone()];
        let mut m = Rational::from_bigint(y0.floor() + 1i32);
        while &m < y1 {
            cuts.push(x0 + &(&(&m - y0) / &s));
            m = &m + &Rational::one();
        }
        cuts.push(x1.clone());
        for w in cuts.windows(2) {
            let t = w[0].midpoint(&w[1]);
            let ft = y0 + &(&s * &(&t - x0));
            let count = ft.floor() - t.floor();
            let count: i64 = num_traits::ToPrimitive::to_i64(&count).unwrap_or(i64::MAX);
            if count != want {
                return Err(Error::CrossingCountMismatch(format!(
                    "slope {s} on ({}, {}) has i-j = {want}, crossing count {count}",
                    w[0], w[1]
                )));
            }
        }
    }
    Ok(GammaElement { n, map: f.clone() })
}

/// The diagonal copy in `Γ_n` of an element of `F_η`.
pub fn diagonal_lift(f: &CompactPL, n: u32) -> Result<PeriodicPL> {
    if !member_fn(f, eta(n)) {
        return Err(Error::NotInFEta(format!("{:?}", f.points())));
    }
    Ok(PeriodicPL::diagonal(f))
}

/// The restriction to `[0, 1]` of an element fixing 0.
pub fn stab0_project(g: &PeriodicPL, n: u32) -> Result<CompactPL> {
    if !g.value_at_zero().is_zero() {
        return Err(Error::NotAStabilizer(g.value_at_zero().to_string()));
    }
    let f = CompactPL::new(g.points().to_vec())?;
    if !member_fn(&f, eta(n)) {
        return Err(Error::NotInFEta(format!("{:?}", f.points())));
    }
    Ok(f)
}

/// The fixed data used by words: `ξ` at one depth and the chain for `F_η`.
#[derive(Clone, Debug)]
pub struct GammaContext {
    pub n: u32,
    pub depth: u32,
    pub xi: PeriodicPL,
    pub xi_inv: PeriodicPL,
    pub chain: ChainSet,
}

impl GammaContext {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_depth(n, default_depth(n))
    }

    pub fn with_depth(n: u32, depth: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedBase(n));
        }
        let xi = xi_build(n, depth)?;
        let xi_inv = xi.inverse();
        let chain = chain_generators(eta(n))?;
        Ok(GammaContext {
            n,
            depth,
            xi,
            xi_inv,
            chain,
        })
    }

    pub fn eta(&self) -> u32 {
        eta(self.n)
    }

    /// The chain generators lifted to periodic maps.
    pub fn psi(&self, i: usize) -> PeriodicPL {
        PeriodicPL::diagonal(&self.chain.psis[i])
    }

    pub fn eval(&self, w: &Word) -> Result<PeriodicPL> {
        if w.n != self.n || w.depth != self.depth {
            return Err(Error::BaseMismatch(w.n, self.n));
        }
        Ok(w.eval_with(&self.xi, &self.xi_inv))
    }

    /// A context matching the parameters of a word.
    pub fn for_word(w: &Word) -> Result<Self> {
        Self::with_depth(w.n, w.depth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn translation_fails_crossing_test() {
        let t = PeriodicPL::translation(r("1/2"));
        assert!(matches!(member_gamma(&t, 2), Err(Error::CrossingCountMismatch(_))));
        let one = PeriodicPL::translation(r("1"));
        assert!(matches!(member_gamma(&one, 2), Err(Error::CrossingCountMismatch(_))));
    }

    #[test]
    fn diagonal_elements_are_members() {
        let ctx = GammaContext::new(2).unwrap();
        for i in 0..6 {
            member_gamma(&ctx.psi(i), 2).unwrap();
        }
        member_gamma(&ctx.xi, 2).unwrap();
        member_gamma(&ctx.xi_inv, 2).unwrap();
    }

    #[test]
    fn bad_breakpoint_and_slope() {
        let f = PeriodicPL::new(vec![
            (r("0"), r("0")),
            (r("1/5"), r("1/10")),
            (r("1"), r("1")),
        ])
        .unwrap();
        assert!(matches!(member_gamma(&f, 2), Err(Error::BreakpointNotInRing(_))));
        let g = PeriodicPL::new(vec![
            (r("0"), r("0")),
            (r("1/2"), r("1/10")),
            (r("1"), r("1")),
        ])
        .unwrap();
        assert!(matches!(member_gamma(&g, 2), Err(Error::SlopeNotFactorable(_))));
    }

    #[test]
    fn stabilizer_round_trip() {
        let ctx = GammaContext::new(2).unwrap();
        let f = &ctx.chain.psis[2];
        let g = diagonal_lift(f, 2).unwrap();
        assert_eq!(&stab0_project(&g, 2).unwrap(), f);
        assert!(matches!(stab0_project(&ctx.xi, 2), Err(Error::NotAStabilizer(_))));
    }
}
