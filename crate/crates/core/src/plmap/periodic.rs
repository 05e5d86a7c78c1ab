use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::interval::{canonical, interp_xy, interp_yx};
use super::{IntervalMap, PlHomeo, Side, SupportSet};

/// PL homeomorphism of the line commuting with `t -> t + 1`.
///
/// Stored as its graph over `[0, 1]`; the first and last abscissae are always
/// 0 and 1, and the last value is the first plus one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicPL {
    pts: Vec<(Rational, Rational)>,
}

impl PeriodicPL {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("need at least two points".into()));
        }
        let first = &points[0];
        let last = &points[points.len() - 1];
        if !first.0.is_zero() || last.0 != Rational::one() || last.1 != &first.1 + &Rational::one() {
            return Err(Error::InvalidMap(
                "graph must run from x=0 to x=1 with y(1) = y(0) + 1".into(),
            ));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::InvalidMap(format!(
                    "not increasing at ({}, {})",
                    w[1].0, w[1].1
                )));
            }
        }
        Ok(PeriodicPL {
            pts: canonical(points),
        })
    }

    /// Builds a map from its values at a superset of its breakpoints in `[0, 1]`.
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

    /// The lift of a compact map acting on every `[m, m+1]`.
    pub fn diagonal(f: &super::CompactPL) -> Self {
        PeriodicPL {
            pts: f.points().to_vec(),
        }
    }

    /// `t -> t + c`.
    pub fn translation(c: Rational) -> Self {
        let d = &c + &Rational::one();
        PeriodicPL {
            pts: vec![(Rational::zero(), c), (Rational::one(), d)],
        }
    }

    /// Periodic extension of a bijection `[a, a+1] -> [c, c+1]`.
    pub fn from_window(m: &IntervalMap) -> Result<Self> {
        let (a, b) = m.domain();
        let (c, d) = m.range();
        if b - a != Rational::one() || d - c != Rational::one() {
            return Err(Error::InvalidMap("window must have unit length".into()));
        }
        let xs = m.points().iter().map(|p| p.0.fract()).collect();
        let a = a.clone();
        Self::from_samples(xs, |x| {
            let t = x - &Rational::from_bigint((x - &a).floor());
            &m.eval(&t).expect("shifted into window") + &(x - &t)
        })
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.pts
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.segments().map(|s| s.4).collect()
    }

    /// `(x0, y0, x1, y1, slope)` for each piece over `[0, 1]`.
    pub fn segments(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational, &Rational, Rational)> {
        self.pts.windows(2).map(|w| {
            let s = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            (&w[0].0, &w[0].1, &w[1].0, &w[1].1, s)
        })
    }

    /// Genuine breakpoints in `[0, 1)`, where the one-sided slopes differ.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let slopes = self.slopes();
        let mut out = vec![];
        if slopes[0] != slopes[slopes.len() - 1] {
            out.push(Rational::zero());
        }
        for i in 1..self.pts.len() - 1 {
            out.push(self.pts[i].0.clone());
        }
        out
    }

    pub fn value_at_zero(&self) -> &Rational {
        &self.pts[0].1
    }

    fn eval_exact(&self, x: &Rational) -> Rational {
        let k = Rational::from_bigint(x.floor());
        let t = x - &k;
        &interp_xy(&self.pts, &t) + &k
    }

    fn eval_inv_exact(&self, y: &Rational) -> Rational {
        let y0 = &self.pts[0].1;
        let k = Rational::from_bigint((y - y0).floor());
        let s = y - &k;
        &interp_yx(&self.pts, &s) + &k
    }
}

impl PlHomeo for PeriodicPL {
    fn eval(&self, x: &Rational) -> Result<Rational> {
        Ok(self.eval_exact(x))
    }

    fn eval_inv(&self, y: &Rational) -> Result<Rational> {
        Ok(self.eval_inv_exact(y))
    }

    fn compose(&self, g: &Self) -> Self {
        let y0 = &self.pts[0].1;
        let base = Rational::from_bigint(y0.floor());
        let top = y0 + &Rational::one();
        let mut xs: Vec<Rational> = self.pts.iter().map(|p| p.0.clone()).collect();
        for (b, _) in &g.pts {
            for shift in 0..2 {
                let v = &(b + &base) + &Rational::integer(shift);
                if &v >= y0 && v <= top {
                    xs.push(self.eval_inv_exact(&v));
                }
            }
        }
        Self::from_samples(xs, |x| g.eval_exact(&self.eval_exact(x))).expect("composition is a homeomorphism")
    }

    fn inverse(&self) -> Self {
        let xs = self.pts.iter().map(|p| p.1.fract()).collect();
        Self::from_samples(xs, |y| self.eval_inv_exact(y)).expect("inverse is a homeomorphism")
    }

    fn identity() -> Self {
        PeriodicPL::translation(Rational::zero())
    }

    fn is_identity(&self) -> bool {
        self.pts.iter().all(|(x, y)| x == y)
    }

    fn slope(&self, x: &Rational, side: Side) -> Result<Rational> {
        let k = Rational::from_bigint(x.floor());
        let mut t = x - &k;
        if side == Side::Left && t.is_zero() {
            t = Rational::one();
        }
        let idx = match side {
            Side::Left => self.pts.partition_point(|p| p.0 < t) - 1,
            Side::Right => self.pts.partition_point(|p| p.0 <= t) - 1,
        };
        let (p, q) = (&self.pts[idx], &self.pts[idx + 1]);
        Ok((&q.1 - &p.1) / (&q.0 - &p.0))
    }

    fn support(&self) -> SupportSet {
        SupportSet::of_periodic(&self.pts)
    }

    fn breakpoints_in(&self, a: &Rational, b: &Rational) -> Vec<Rational> {
        let mut out = vec![];
        let lo = a.floor();
        let hi = b.floor();
        let mut k = lo;
        while k <= hi {
            let kr = Rational::from_bigint(k.clone());
            for (x, _) in &self.pts {
                let v = x + &kr;
                if &v >= a && &v <= b {
                    out.push(v);
                }
            }
            k += 1;
        }
        out
    }
}

impl fmt::Debug for PeriodicPL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Periodic[")?;
        for (i, (x, y)) in self.pts.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{x} {y}")?;
        }
        write!(f, "]")
    }
}
