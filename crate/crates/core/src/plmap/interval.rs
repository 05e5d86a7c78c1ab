use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::Side;

/// Increasing PL bijection between two closed intervals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntervalMap {
    pts: Vec<(Rational, Rational)>,
}

impl IntervalMap {
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidMap("need at least two points".into()));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 <= w[0].1 {
                return Err(Error::InvalidMap(format!(
                    "not increasing at ({}, {})",
                    w[1].0, w[1].1
                )));
            }
        }
        Ok(IntervalMap {
            pts: canonical(points),
        })
    }

    /// The affine map `[a, b] -> [c, d]`.
    pub fn linear(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        Self::new(vec![(a, c), (b, d)])
    }

    pub fn identity_on(a: Rational, b: Rational) -> Self {
        IntervalMap {
            pts: vec![(a.clone(), a), (b.clone(), b)],
        }
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        &self.pts
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.pts[0].0, &self.pts[self.pts.len() - 1].0)
    }

    pub fn range(&self) -> (&Rational, &Rational) {
        (&self.pts[0].1, &self.pts[self.pts.len() - 1].1)
    }

    /// `(x0, y0, x1, y1, slope)` for each linear piece.
    pub fn segments(&self) -> impl Iterator<Item = (&Rational, &Rational, &Rational, &Rational, Rational)> {
        self.pts.windows(2).map(|w| {
            let s = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
            (&w[0].0, &w[0].1, &w[1].0, &w[1].1, s)
        })
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.segments().map(|s| s.4).collect()
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let (a, b) = self.domain();
        if x < a || x > b {
            return Err(Error::DomainError(x.to_string()));
        }
        Ok(interp(&self.pts, x, |p| &p.0, |p| &p.1))
    }

    pub fn eval_inv(&self, y: &Rational) -> Result<Rational> {
        let (c, d) = self.range();
        if y < c || y > d {
            return Err(Error::DomainError(y.to_string()));
        }
        Ok(interp(&self.pts, y, |p| &p.1, |p| &p.0))
    }

    pub fn slope(&self, x: &Rational, side: Side) -> Result<Rational> {
        let (a, b) = self.domain();
        let undefined = match side {
            Side::Left => x <= a || x > b,
            Side::Right => x < a || x >= b,
        };
        if undefined {
            return Err(Error::SideUndefined(x.to_string()));
        }
        // index of the segment on the requested side
        let idx = match side {
            Side::Left => self.pts.partition_point(|p| &p.0 < x) - 1,
            Side::Right => self.pts.partition_point(|p| &p.0 <= x) - 1,
        };
        let (p, q) = (&self.pts[idx], &self.pts[idx + 1]);
        Ok((&q.1 - &p.1) / (&q.0 - &p.0))
    }

    pub fn inverse(&self) -> Self {
        IntervalMap {
            pts: self.pts.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// `self` then `g`; the range of `self` must equal the domain of `g`.
    pub fn then(&self, g: &IntervalMap) -> Result<Self> {
        if self.range() != g.domain() {
            return Err(Error::InvalidMap(format!(
                "range [{}, {}] is not the next domain [{}, {}]",
                self.range().0,
                self.range().1,
                g.domain().0,
                g.domain().1
            )));
        }
        let mut xs: Vec<Rational> = self.pts.iter().map(|p| p.0.clone()).collect();
        for (b, _) in &g.pts {
            xs.push(self.eval_inv(b)?);
        }
        xs.sort();
        xs.dedup();
        let pts = xs
            .into_iter()
            .map(|x| {
                let y = g.eval(&self.eval(&x).expect("in domain")).expect("in domain");
                (x, y)
            })
            .collect();
        Ok(IntervalMap {
            pts: canonical(pts),
        })
    }

    /// Joins two maps whose graphs meet end to start.
    pub fn concat(&self, next: &IntervalMap) -> Result<Self> {
        let last = &self.pts[self.pts.len() - 1];
        if last != &next.pts[0] {
            return Err(Error::InvalidMap(format!(
                "pieces do not meet: ({}, {}) vs ({}, {})",
                last.0, last.1, next.pts[0].0, next.pts[0].1
            )));
        }
        let mut pts = self.pts.clone();
        pts.extend(next.pts[1..].iter().cloned());
        Ok(IntervalMap {
            pts: canonical(pts),
        })
    }

    /// Concatenates a non-empty run of abutting maps.
    pub fn concat_all(parts: &[IntervalMap]) -> Result<Self> {
        let mut it = parts.iter();
        let mut acc = it
            .next()
            .ok_or_else(|| Error::InvalidMap("no pieces".into()))?
            .clone();
        for p in it {
            acc = acc.concat(p)?;
        }
        Ok(acc)
    }

    /// Restriction to `[a, b]` inside the domain.
    pub fn restrict(&self, a: &Rational, b: &Rational) -> Result<Self> {
        let mut pts = vec![(a.clone(), self.eval(a)?)];
        for p in &self.pts {
            if &p.0 > a && &p.0 < b {
                pts.push(p.clone());
            }
        }
        pts.push((b.clone(), self.eval(b)?));
        Self::new(pts)
    }

    pub fn is_identity(&self) -> bool {
        self.pts.iter().all(|(x, y)| x == y)
    }

    /// Conjugate into `[c, d]` by the affine map sending the domain there.
    pub fn rescale(&self, c: &Rational, d: &Rational) -> Self {
        let (a, b) = self.domain();
        let ratio = (d - c) / (b - a);
        let t = |v: &Rational| c + &(&(v - a) * &ratio);
        IntervalMap {
            pts: self.pts.iter().map(|(x, y)| (t(x), t(y))).collect(),
        }
    }
}

/// Affine interpolation over a sorted point list, keyed by `key`.
fn interp<K, V>(pts: &[(Rational, Rational)], x: &Rational, key: K, val: V) -> Rational
where
    K: Fn(&(Rational, Rational)) -> &Rational,
    V: Fn(&(Rational, Rational)) -> &Rational,
{
    let i = pts.partition_point(|p| key(p) <= x);
    if i == 0 {
        return val(&pts[0]).clone();
    }
    let p = &pts[i - 1];
    if key(p) == x || i == pts.len() {
        return val(p).clone();
    }
    let q = &pts[i];
    val(p) + &(&(x - key(p)) * &(val(q) - val(p)) / (key(q) - key(p)))
}

pub(crate) fn interp_xy(pts: &[(Rational, Rational)], x: &Rational) -> Rational {
    interp(pts, x, |p| &p.0, |p| &p.1)
}

pub(crate) fn interp_yx(pts: &[(Rational, Rational)], y: &Rational) -> Rational {
    interp(pts, y, |p| &p.1, |p| &p.0)
}

/// Drops repeated abscissae and interior points where the incoming and
/// outgoing slopes agree. The first and last points always survive.
pub(crate) fn canonical(pts: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(pts.len());
    for p in pts {
        if let Some(last) = out.last() {
            if last.0 == p.0 {
                continue;
            }
        }
        while out.len() >= 2 {
            let a = &out[out.len() - 2];
            let b = &out[out.len() - 1];
            let s1 = (&b.1 - &a.1) * (&p.0 - &b.0);
            let s2 = (&p.1 - &b.1) * (&b.0 - &a.0);
            if s1 == s2 {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

impl fmt::Debug for IntervalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntervalMap[")?;
        for (i, (x, y)) in self.pts.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{x} {y}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn merges_collinear_points() {
        let m = IntervalMap::new(vec![
            (q("0"), q("0")),
            (q("1/4"), q("1/8")),
            (q("1/2"), q("1/4")),
            (q("1"), q("1")),
        ])
        .unwrap();
        assert_eq!(m.points().len(), 3);
    }

    #[test]
    fn compose_and_invert() {
        let f = IntervalMap::linear(q("0"), q("1"), q("2"), q("4")).unwrap();
        let g = IntervalMap::new(vec![(q("2"), q("0")), (q("3"), q("1/2")), (q("4"), q("1"))]).unwrap();
        let h = f.then(&g).unwrap();
        assert!(h.is_identity());
        assert!(f.then(&f.inverse()).unwrap().is_identity());
    }

    #[test]
    fn slopes_at_ends() {
        let f = IntervalMap::linear(q("0"), q("1"), q("0"), q("2")).unwrap();
        assert!(f.slope(&q("0"), Side::Left).is_err());
        assert!(f.slope(&q("1"), Side::Right).is_err());
        assert_eq!(f.slope(&q("1"), Side::Left).unwrap(), q("2"));
    }
}
