use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{in_ring, nadic_residue, Rational};
use crate::plmap::{CompactPL, IntervalMap, PlHomeo, Side};

use super::nary::{cone_embed, nary_map};
use super::{PairDiagram, Subdivision};

/// Orbit class in `1..=n-1` of any point of `Z[1/n]`.
pub fn class_of(x: &Rational, n: u32) -> Result<u32> {
    let r = nadic_residue(x, n)? as u32;
    Ok(if r == 0 { n - 1 } else { r })
}

/// Orbit class of `x` in `Z[1/n] ∩ (0,1)`.
pub fn orbit_class(x: &Rational, n: u32) -> Result<u32> {
    if !in_ring(x, n as u64) {
        return Err(Error::NotInRing(x.to_string()));
    }
    if !x.is_positive() || x >= &Rational::one() {
        return Err(Error::OutOfRange(x.to_string()));
    }
    class_of(x, n)
}

/// An element of `F_n` sending `x` to `i/n`, where `i` is the class of `x`.
///
/// Domain: all cones of depth `k` where `x = m/n^k` in lowest terms. Range:
/// `tau_0` applied `(m - i)/(n - 1)` times to the regular subdivision, then
/// the rightmost interval subdivided until the sizes match. The domain has
/// `n^k` pieces, so this is meant for small depths.
pub fn orbit_map(x: &Rational, n: u32) -> Result<CompactPL> {
    let i = orbit_class(x, n)?;
    let nr = Rational::integer(n as i64);
    let mut k = 0u32;
    let mut scaled = x.clone();
    while !scaled.is_integer() {
        scaled = &scaled * &nr;
        k += 1;
    }
    let m = scaled
        .floor()
        .to_u64()
        .ok_or_else(|| Error::ConstructionFailed("depth too large".into()))?;
    let l1 = (m - i as u64) / (n as u64 - 1);
    let domain = Subdivision::uniform(n, k);
    let mut range = Subdivision::trivial(n).tau(0)?;
    for _ in 0..l1 {
        range = range.tau(0)?;
    }
    while range.len() < domain.len() {
        let last = range.len() - 1;
        range = range.tau(last)?;
    }
    Ok(PairDiagram::new(domain, range)?.to_map())
}

/// A pair `(g, h)` of `F_n` elements whose commutator `[g, h]` sends `p` to `q`.
///
/// `h` moves `p` to `q` inside `[1/n^K, 1 - 1/n^K]`, and `g` compresses
/// `[0, 1 - 1/n^K]` below `1/n^K`, so `p·g^{-1}` lies right of the support of `h`.
pub fn point_commutator(p: &Rational, q: &Rational, n: u32) -> Result<(CompactPL, CompactPL)> {
    if class_of(p, n)? != class_of(q, n)? {
        return Err(Error::SignatureMismatch(format!("{p} vs {q}")));
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let nr = Rational::integer(n as i64);
    let mut a = Rational::one() / &nr;
    while &a >= p.min(q) || &(&one - &a) <= p.max(q) {
        a = &a / &nr;
    }
    let b = &one - &a;
    let h = IntervalMap::concat_all(&[
        IntervalMap::identity_on(zero.clone(), a.clone()),
        nary_map(&a, p, &a, q, n)?,
        nary_map(p, &b, q, &b, n)?,
        IntervalMap::identity_on(b.clone(), one.clone()),
    ])?;
    let e = &(&a / &nr) * &Rational::integer(n as i64 - 1);
    let g = nary_map(&zero, &b, &zero, &e, n)?.concat(&nary_map(&b, &one, &e, &one, n)?)?;
    Ok((CompactPL::from_interval_map(g)?, CompactPL::from_interval_map(h)?))
}

/// An element of `F_n'` given as an explicit product of commutators.
#[derive(Clone, Debug)]
pub struct CertifiedMap {
    pub map: CompactPL,
    /// `map = [a_1, b_1] [a_2, b_2] ...`, in order of application.
    pub commutators: Vec<(CompactPL, CompactPL)>,
}

impl CertifiedMap {
    pub fn identity() -> Self {
        CertifiedMap {
            map: CompactPL::identity(),
            commutators: vec![],
        }
    }

    /// Recomputes the product of the listed commutators.
    pub fn product(&self) -> CompactPL {
        self.commutators
            .iter()
            .fold(CompactPL::identity(), |acc, (a, b)| acc.compose(&a.commutator(b)))
    }

    pub fn verify(&self) -> bool {
        self.product() == self.map
    }
}

/// An element of `F_n'` sending `s_i` to `t_i` for every `i`.
///
/// Induction on the tuple length: with the prefix already matched, both
/// remaining points are pushed into a deep right cone by a map fixing the
/// prefix, matched there by an embedded commutator, and pushed back.
pub fn tuple_transport(s: &[Rational], t: &[Rational], n: u32) -> Result<CertifiedMap> {
    if s.len() != t.len() {
        return Err(Error::SignatureMismatch(format!(
            "tuples of length {} and {}",
            s.len(),
            t.len()
        )));
    }
    for tuple in [s, t] {
        for x in tuple {
            orbit_class(x, n)?;
        }
        if tuple.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::OutOfRange("tuple is not increasing".into()));
        }
    }
    for (a, b) in s.iter().zip(t) {
        if class_of(a, n)? != class_of(b, n)? {
            return Err(Error::SignatureMismatch(format!("{a} vs {b}")));
        }
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let nr = Rational::integer(n as i64);
    let mut out = CertifiedMap::identity();
    for j in 0..s.len() {
        let u = out.map.eval(&s[j])?;
        let v = t[j].clone();
        if u == v {
            continue;
        }
        let lo = if j == 0 { zero.clone() } else { t[j - 1].clone() };
        let mut width = Rational::one() / &nr;
        while &one - &width <= lo {
            width = &width / &nr;
        }
        let c = &one - &width;
        let w = (&u).min(&v).clone();
        let cls = class_of(&w, n)?;
        let w2 = &c + &(&(&width / &nr) * &Rational::integer(cls as i64));
        let mut parts = vec![];
        if lo.is_positive() {
            parts.push(IntervalMap::identity_on(zero.clone(), lo.clone()));
        }
        parts.push(nary_map(&lo, &w, &lo, &w2, n)?);
        parts.push(nary_map(&w, &one, &w2, &one, n)?);
        let g2 = CompactPL::from_interval_map(IntervalMap::concat_all(&parts)?)?;
        let scale = |x: &Rational| &(x - &c) / &width;
        let (p, q) = (scale(&g2.eval(&u)?), scale(&g2.eval(&v)?));
        let (a, b) = point_commutator(&p, &q, n)?;
        let g2i = g2.inverse();
        let a = cone_embed(&a, &c, &one, n)?.conjugate_by(&g2i);
        let b = cone_embed(&b, &c, &one, n)?.conjugate_by(&g2i);
        out.map = out.map.compose(&a.commutator(&b));
        out.commutators.push((a, b));
    }
    for (a, b) in s.iter().zip(t) {
        if &out.map.eval(a)? != b {
            return Err(Error::ConstructionFailed(format!("{a} not sent to {b}")));
        }
    }
    Ok(out)
}

/// Trivial germs at both ends: identity near 0 and near 1.
pub fn fprime_necessary(f: &CompactPL) -> bool {
    let zero = Rational::zero();
    let one = Rational::one();
    let slopes_ok = f.slope(&zero, Side::Right).map(|s| s == one).unwrap_or(false)
        && f.slope(&one, Side::Left).map(|s| s == one).unwrap_or(false);
    slopes_ok && !f.support().closure_contains(&zero) && !f.support().closure_contains(&one)
}
