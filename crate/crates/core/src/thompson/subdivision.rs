use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::nary::is_cone;

/// An n-ary subdivision of `[0, 1]`, stored by its interior cut points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subdivision {
    n: u32,
    cuts: Vec<Rational>,
}

impl Subdivision {
    pub fn new(n: u32, cuts: Vec<Rational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::UnsupportedBase(n));
        }
        let s = Subdivision { n, cuts };
        let ends = s.endpoints();
        for w in ends.windows(2) {
            if !is_cone(&w[0], &w[1], n) {
                return Err(Error::NotACone(format!("{}, {}", w[0], w[1])));
            }
        }
        if !s.collapses_to_trivial() {
            return Err(Error::InvalidMap("subdivision does not collapse".into()));
        }
        Ok(s)
    }

    pub fn trivial(n: u32) -> Self {
        Subdivision { n, cuts: vec![] }
    }

    /// All cones of depth `k`.
    pub fn uniform(n: u32, k: u32) -> Self {
        let d = (n as i64).pow(k);
        Subdivision {
            n,
            cuts: (1..d).map(|m| Rational::new(m, d)).collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    /// Number of intervals.
    pub fn len(&self) -> usize {
        self.cuts.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `0`, the cut points, then `1`.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.cuts.len() + 2);
        v.push(Rational::zero());
        v.extend(self.cuts.iter().cloned());
        v.push(Rational::one());
        v
    }

    pub fn interval(&self, i: usize) -> (Rational, Rational) {
        let e = self.endpoints();
        (e[i].clone(), e[i + 1].clone())
    }

    /// Regular n-ary subdivision of the `k`-th interval.
    pub fn tau(&self, k: usize) -> Result<Self> {
        if k >= self.len() {
            return Err(Error::IndexOutOfRange { index: k, len: self.len() });
        }
        let (a, b) = self.interval(k);
        let step = (&b - &a) / Rational::integer(self.n as i64);
        let children = (1..self.n).map(|j| &a + &(&step * &Rational::integer(j as i64)));
        let mut cuts = self.cuts.clone();
        cuts.splice(k..k, children);
        Ok(Subdivision { n: self.n, cuts })
    }

    /// Whether intervals `i..i+n` are the regular subdivision of one cone.
    pub(crate) fn collapsible_at(&self, i: usize) -> bool {
        let n = self.n as usize;
        if i + n > self.len() {
            return false;
        }
        let e = self.endpoints();
        let len = &e[i + 1] - &e[i];
        for j in i..i + n {
            if &e[j + 1] - &e[j] != len {
                return false;
            }
        }
        is_cone(&e[i], &e[i + n], self.n)
    }

    pub(crate) fn collapse(&self, i: usize) -> Self {
        let mut cuts = self.cuts.clone();
        // interval i spans endpoints i..i+1; cut j sits at endpoint j+1
        cuts.drain(i..i + self.n as usize - 1);
        Subdivision { n: self.n, cuts }
    }

    fn collapses_to_trivial(&self) -> bool {
        let mut s = self.clone();
        while s.len() > 1 {
            match (0..s.len()).find(|&i| s.collapsible_at(i)) {
                Some(i) => s = s.collapse(i),
                None => return false,
            }
        }
        true
    }

    /// Position (1-based) of `x` among the cut points.
    pub fn position(&self, x: &Rational) -> Option<usize> {
        self.cuts.iter().position(|c| c == x).map(|p| p + 1)
    }
}

impl fmt::Display for Subdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subdiv n={}:", self.n)?;
        for c in &self.cuts {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subdivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Subdivision {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad subdivision line {s:?}"));
        let rest = s.trim().strip_prefix("subdiv").ok_or_else(bad)?;
        let (head, cuts) = rest.split_once(':').ok_or_else(bad)?;
        let n = head
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(bad)?;
        let cuts = cuts
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Rational>>>()?;
        Subdivision::new(n, cuts)
    }
}
