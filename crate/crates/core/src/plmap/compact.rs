use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::{IntervalMap, PlHomeo, Side, SupportSet};

/// Increasing PL homeomorphism of `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CompactPL(IntervalMap);

impl CompactPL {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        Self::from_interval_map(IntervalMap::new(points)?)
    }

    pub fn from_interval_map(m: IntervalMap) -> Result<Self> {
        let zero = Rational::zero();
        let one = Rational::one();
        if m.domain() != (&zero, &one) || m.range() != (&zero, &one) {
            return Err(Error::InvalidMap("compact maps fix 0 and 1".into()));
        }
        Ok(CompactPL(m))
    }

    /// Builds a map from its values at a superset of its breakpoints.
    pub fn from_samples<F>(mut xs: Vec<Rational>, eval: F) -> Result<Self>
    where
        F: Fn(&Rational) -> Rational,
    {
        xs.push(Rational::zero());
        xs.push(Rational::one());
        xs.retain(|x| !x.is_negative() && x <= &Rational::one());
        xs.sort();
        xs.dedup();
        let pts = xs.into_iter().map(|x| {
            let y = eval(&x);
            (x, y)
        });
        Self::new(pts.collect())
    }

    pub fn as_interval(&self) -> &IntervalMap {
        &self.0
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        self.0.points()
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.0.slopes()
    }

    /// Interior breakpoints.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let p = self.0.points();
        p[1..p.len() - 1].iter().map(|q| q.0.clone()).collect()
    }
}

impl PlHomeo for CompactPL {
    fn eval(&self, x: &Rational) -> Result<Rational> {
        self.0.eval(x)
    }

    fn eval_inv(&self, y: &Rational) -> Result<Rational> {
        self.0.eval_inv(y)
    }

    fn compose(&self, g: &Self) -> Self {
        CompactPL(self.0.then(&g.0).expect("both act on [0,1]"))
    }

    fn inverse(&self) -> Self {
        CompactPL(self.0.inverse())
    }

    fn identity() -> Self {
        CompactPL(IntervalMap::identity_on(Rational::zero(), Rational::one()))
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn slope(&self, x: &Rational, side: Side) -> Result<Rational> {
        self.0.slope(x, side)
    }

    fn support(&self) -> SupportSet {
        SupportSet::of_compact(self.0.points())
    }

    fn breakpoints_in(&self, a: &Rational, b: &Rational) -> Vec<Rational> {
        self.0
            .points()
            .iter()
            .filter(|p| &p.0 >= a && &p.0 <= b)
            .map(|p| p.0.clone())
            .collect()
    }
}

impl fmt::Debug for CompactPL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Compact{:?}", self.0)
    }
}
