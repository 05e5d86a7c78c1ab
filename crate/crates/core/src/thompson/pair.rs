use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::plmap::{CompactPL, PlHomeo};

use super::nary::{is_cone, member_fn};
use super::Subdivision;

/// Ordered pair of equal-size subdivisions, kept in reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PairDiagram {
    domain: Subdivision,
    range: Subdivision,
}

impl PairDiagram {
    /// Builds and reduces a pair.
    pub fn new(domain: Subdivision, range: Subdivision) -> Result<Self> {
        if domain.n() != range.n() {
            return Err(Error::BaseMismatch(domain.n(), range.n()));
        }
        if domain.len() != range.len() {
            return Err(Error::InvalidMap(format!(
                "subdivisions have {} and {} intervals",
                domain.len(),
                range.len()
            )));
        }
        Ok(PairDiagram { domain, range }.reduced())
    }

    pub fn identity(n: u32) -> Self {
        PairDiagram {
            domain: Subdivision::trivial(n),
            range: Subdivision::trivial(n),
        }
    }

    pub fn n(&self) -> u32 {
        self.domain.n()
    }

    pub fn domain(&self) -> &Subdivision {
        &self.domain
    }

    pub fn range(&self) -> &Subdivision {
        &self.range
    }

    /// Applies `tau_k` to both sides without reducing.
    pub fn expand(&self, k: usize) -> Result<(Subdivision, Subdivision)> {
        Ok((self.domain.tau(k)?, self.range.tau(k)?))
    }

    /// Leftmost-first simultaneous collapse, to a fixpoint.
    fn reduced(mut self) -> Self {
        loop {
            let hit = (0..self.domain.len())
                .find(|&i| self.domain.collapsible_at(i) && self.range.collapsible_at(i));
            match hit {
                Some(i) => {
                    self.domain = self.domain.collapse(i);
                    self.range = self.range.collapse(i);
                }
                None => return self,
            }
        }
    }

    pub fn to_map(&self) -> CompactPL {
        let pts = self
            .domain
            .endpoints()
            .into_iter()
            .zip(self.range.endpoints())
            .collect();
        CompactPL::new(pts).expect("cone matching is increasing")
    }

    /// The reduced pair of an `F_n` element.
    pub fn from_map(f: &CompactPL, n: u32) -> Result<Self> {
        if !member_fn(f, n) {
            return Err(Error::NotInFn(n as u64));
        }
        let bps = f.breakpoints();
        let mut dom = vec![];
        let mut stack = vec![(Rational::zero(), Rational::one())];
        let nr = Rational::integer(n as i64);
        while let Some((a, b)) = stack.pop() {
            let linear = !bps.iter().any(|x| x > &a && x < &b);
            let (fa, fb) = (f.eval(&a)?, f.eval(&b)?);
            if linear && is_cone(&fa, &fb, n) {
                dom.push(b);
                continue;
            }
            let step = (&b - &a) / &nr;
            for j in (0..n).rev() {
                let lo = &a + &(&step * &Rational::integer(j as i64));
                let hi = &lo + &step;
                stack.push((lo, hi));
            }
        }
        dom.pop();
        let ran = dom.iter().map(|x| f.eval(x)).collect::<Result<Vec<_>>>()?;
        Self::new(Subdivision::new(n, dom)?, Subdivision::new(n, ran)?)
    }

    /// Product (self first) via a common refinement of the middle subdivisions.
    pub fn multiply(&self, other: &PairDiagram) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::BaseMismatch(self.n(), other.n()));
        }
        let mut mid: Vec<Rational> = self.range.cuts().to_vec();
        mid.extend(other.domain.cuts().iter().cloned());
        mid.sort();
        mid.dedup();
        let f = self.to_map();
        let g = other.to_map();
        let dom = mid.iter().map(|k| f.eval_inv(k)).collect::<Result<Vec<_>>>()?;
        let ran = mid.iter().map(|k| g.eval(k)).collect::<Result<Vec<_>>>()?;
        Self::new(Subdivision::new(self.n(), dom)?, Subdivision::new(self.n(), ran)?)
    }

    pub fn inverse(&self) -> Self {
        PairDiagram {
            domain: self.range.clone(),
            range: self.domain.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.range
    }

    pub fn render(&self) -> String {
        format!("{}\n{}\n", self.domain, self.range)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        if lines.len() != 2 {
            return Err(Error::Parse("a pair diagram is two subdiv lines".into()));
        }
        Self::new(lines[0].parse()?, lines[1].parse()?)
    }
}

impl fmt::Debug for PairDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} | {:?})", self.domain, self.range)
    }
}
