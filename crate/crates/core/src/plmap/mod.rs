//! Piecewise-linear homeomorphisms with exact rational breakpoints.
//!
//! Maps act on the right: `compose(f, g)` applies `f` first, then `g`.

mod compact;
mod interval;
mod periodic;
mod support;
pub mod text;

pub use compact::CompactPL;
pub use interval::IntervalMap;
pub use periodic::PeriodicPL;
pub use support::SupportSet;

use crate::exact::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Shared surface of the compact and periodic map kinds.
pub trait PlHomeo: Clone + PartialEq {
    fn eval(&self, x: &Rational) -> crate::Result<Rational>;
    fn eval_inv(&self, y: &Rational) -> crate::Result<Rational>;
    fn compose(&self, g: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity() -> Self;
    fn is_identity(&self) -> bool;
    fn slope(&self, x: &Rational, side: Side) -> crate::Result<Rational>;
    fn support(&self) -> SupportSet;
    /// Breakpoints (stored graph abscissae) lying in `[a, b]`.
    fn breakpoints_in(&self, a: &Rational, b: &Rational) -> Vec<Rational>;

    /// `f^{-1} g^{-1} f g`.
    fn commutator(&self, g: &Self) -> Self {
        self.inverse()
            .compose(&g.inverse())
            .compose(self)
            .compose(g)
    }

    /// `g^{-1} f g`.
    fn conjugate_by(&self, g: &Self) -> Self {
        g.inverse().compose(self).compose(g)
    }

    fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    /// Whether `f` and `g` coincide on the closed interval `[a, b]`.
    ///
    /// Both maps are affine between consecutive sample points, so agreement
    /// at the endpoints and at every breakpoint of either map is enough.
    fn agree_on(&self, g: &Self, a: &Rational, b: &Rational) -> bool {
        let mut pts = vec![a.clone(), b.clone()];
        pts.extend(self.breakpoints_in(a, b));
        pts.extend(g.breakpoints_in(a, b));
        pts.iter().all(|x| match (self.eval(x), g.eval(x)) {
            (Ok(u), Ok(v)) => u == v,
            _ => false,
        })
    }
}
