use crate::error::{Error, Result};
use crate::exact::{power_of, Rational};
use crate::plmap::{CompactPL, PeriodicPL, PlHomeo, Side};
use crate::thompson::nary_map;

use super::dynamics::contract;
use super::word::{Atom, Word};
use super::{eta, GammaContext};

/// Smallest depth `k >= 2` with `nη / η^k < 1/3`.
pub fn default_depth(n: u32) -> u32 {
    let e = eta(n) as u64;
    let mut k = 2;
    while e.pow(k) <= 3 * n as u64 * e {
        k += 1;
    }
    k
}

/// Corner points of `ξ` at depth `k`: the support is `(a0, a3) + Z`.
fn xi_corners(n: u32, k: u32) -> [Rational; 4] {
    let e = eta(n) as i64;
    let unit = Rational::power(e as u64, -(k as i64));
    [
        &unit * &Rational::integer(-e),
        &unit * &Rational::integer(1 - e),
        Rational::zero(),
        &unit * &Rational::integer(n as i64 * e),
    ]
}

/// The element `ξ` of depth `k`.
///
/// On `[-η/η^k, nη/η^k]` it has three pieces of slopes `η`, `n` and `1/η`,
/// fixing both ends and sending `(-η+1)/η^k` to 0; elsewhere it is the
/// identity, extended periodically.
pub fn xi_build(n: u32, k: u32) -> Result<PeriodicPL> {
    if k < 2 {
        return Err(Error::DepthTooSmall(k));
    }
    if n < 2 {
        return Err(Error::UnsupportedBase(n));
    }
    let [a0, a1, _, a3] = xi_corners(n, k);
    let e = eta(n) as i64;
    let unit = Rational::power(e as u64, -(k as i64));
    let y = &unit * &Rational::integer(n as i64 * e - n as i64);
    let one = Rational::one();
    PeriodicPL::new(vec![
        (Rational::zero(), y.clone()),
        (a3.clone(), a3),
        (&one + &a0, &one + &a0),
        (&one + &a1, one.clone()),
        (one.clone(), &one + &y),
    ])
}

/// `0·f` lies in `(0, 1)` and `f` has constant slope `n` on `(0·f^{-1}, 0)`.
pub fn is_special(f: &PeriodicPL, n: u32) -> bool {
    let zero = Rational::zero();
    let y = f.eval(&zero).expect("periodic maps are total");
    if !y.is_positive() || y >= Rational::one() {
        return false;
    }
    let z = f.eval_inv(&zero).expect("periodic maps are total");
    let slope_n = Rational::integer(n as i64);
    if f.slope(&z, Side::Right).ok() != Some(slope_n.clone()) {
        return false;
    }
    f.breakpoints_in(&z, &zero)
        .iter()
        .filter(|b| *b > &z && b.is_negative())
        .all(|b| f.slope(b, Side::Right).ok() == Some(slope_n.clone()))
}

/// An element `g` of `F_η` such that `g^{-1} f` is special.
///
/// Needs `0·f` in `(0, 1)`. On `(0·f^{-1}, 0)` the slopes of `f` are
/// `n η^t` and `g` takes the matching slopes `η^t` there, fixing 1; the rest
/// of `[0, 1]` is filled with a cone matching.
pub fn mush(f: &PeriodicPL, n: u32) -> Result<CompactPL> {
    let zero = Rational::zero();
    let one = Rational::one();
    let e = eta(n);
    let y = f.eval(&zero)?;
    if !y.is_positive() || y >= one {
        return Err(Error::NotInWindow(y.to_string()));
    }
    let z = f.eval_inv(&zero)?;
    let mut cuts = vec![z.clone()];
    cuts.extend(
        f.breakpoints_in(&z, &zero)
            .into_iter()
            .filter(|b| b > &z && b.is_negative()),
    );
    cuts.push(zero.clone());
    cuts.dedup();
    let nr = Rational::integer(n as i64);
    let mut right = vec![(one.clone(), one.clone())];
    for w in cuts.windows(2).rev() {
        let s = f.slope(&w[0], Side::Right)?;
        let t = power_of(&(&s / &nr), e)
            .ok_or_else(|| Error::ConstructionFailed(format!("slope {s} is not n·η^t")))?;
        let (xr, yr) = right.last().cloned().expect("nonempty");
        let len = &w[1] - &w[0];
        right.push((&xr - &len, &yr - &(&Rational::power(e as u64, t) * &len)));
    }
    right.reverse();
    let (r1, r2) = right[0].clone();
    let left = nary_map(&zero, &r1, &zero, &r2, e)
        .map_err(|err| Error::ConstructionFailed(format!("mush completion: {err}")))?;
    let right = crate::plmap::IntervalMap::new(right)?;
    let g = CompactPL::from_interval_map(left.concat(&right)?)?;
    let h = PeriodicPL::diagonal(&g).inverse().compose(f);
    if !is_special(&h, n) {
        return Err(Error::ConstructionFailed("mushed element is not special".into()));
    }
    Ok(g)
}

/// A special element of `Q_n` written as a single commutator `[g, ξ']`.
///
/// `ξ'` is `ξ` at a depth whose support fits in `(-ε, ε) + Z`, and `g`
/// pushes that support into `(1/2 - ε, 1/2 + ε) + Z`.
pub fn special_in_q(n: u32, eps: &Rational) -> Result<Word> {
    if !eps.is_positive() || eps > &Rational::new(1, 4) {
        return Err(Error::OutOfRange(format!("epsilon {eps} must lie in (0, 1/4]")));
    }
    let mut k = default_depth(n);
    loop {
        let c = xi_corners(n, k);
        if &(-&c[0]) < eps && &c[3] < eps {
            break;
        }
        k += 1;
    }
    let ctx = GammaContext::with_depth(n, k)?;
    let [a0, _, _, a3] = xi_corners(n, k);
    let half = Rational::new(1, 2);
    let g = contract(&ctx, &a0, &a3, &(&half - eps), &(&half + eps))?;
    let w = Word::new(n, k, vec![Atom::Comm(g, Word::new(n, k, vec![Atom::Xi(1)]))]);
    if !is_special(&ctx.eval(&w)?, n) {
        return Err(Error::ConstructionFailed("commutator is not special".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson::orbit_class;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn xi_depth_two() {
        let xi = xi_build(2, 2).unwrap();
        assert_eq!(xi.eval(&r("0")).unwrap(), r("5/18"));
        assert_eq!(xi.eval(&r("1")).unwrap(), r("23/18"));
        assert_eq!(xi.eval_inv(&r("5/18")).unwrap(), r("0"));
        assert_eq!(xi.slope(&r("0"), Side::Left).unwrap(), r("2"));
        assert_eq!(xi.slope(&r("0"), Side::Right).unwrap(), r("1/6"));
        let mut slopes = xi.slopes();
        slopes.retain(|s| s != &r("1"));
        slopes.sort();
        assert_eq!(slopes, vec![r("1/6"), r("2"), r("6")]);
        assert_eq!(xi.support().to_string(), "(-1/6, 1/3) + Z");
        assert_eq!(orbit_class(&r("5/18"), 6).unwrap(), 5);
    }

    #[test]
    fn xi_is_special_and_depth_checked() {
        for n in 2..5 {
            let xi = xi_build(n, default_depth(n)).unwrap();
            assert!(is_special(&xi, n));
        }
        assert_eq!(default_depth(2), 3);
        assert_eq!(xi_build(2, 1), Err(Error::DepthTooSmall(1)));
    }

    #[test]
    fn mush_of_xi_times_diagonal() {
        let ctx = GammaContext::new(2).unwrap();
        let f = ctx.psi(0).compose(&ctx.xi).compose(&ctx.psi(5));
        let g = mush(&f, 2).unwrap();
        let h = PeriodicPL::diagonal(&g).inverse().compose(&f);
        assert!(is_special(&h, 2));
    }

    #[test]
    fn special_commutator() {
        let w = special_in_q(2, &r("1/5")).unwrap();
        let ctx = GammaContext::for_word(&w).unwrap();
        let f = ctx.eval(&w).unwrap();
        assert!(is_special(&f, 2));
        let small = special_in_q(2, &r("1/100")).unwrap();
        assert!(small.depth > w.depth);
    }
}
