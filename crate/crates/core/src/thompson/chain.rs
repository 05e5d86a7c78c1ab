use crate::error::Result;
use crate::exact::Rational;
use crate::plmap::{CompactPL, IntervalMap, PlHomeo};

use super::nary::nary_map;

/// A chain generating set `psi_1..psi_n` with its supports and checks.
#[derive(Clone, Debug)]
pub struct ChainSet {
    pub n: u32,
    pub psis: Vec<CompactPL>,
    pub supports: Vec<(Rational, Rational)>,
}

impl ChainSet {
    pub fn chain_ok(&self) -> bool {
        check_chain(&self.supports)
    }

    pub fn fast_ok(&self) -> bool {
        check_fast(&self.psis, &self.supports)
    }
}

/// Consecutive supports overlap in order and non-neighbours are disjoint,
/// starting at 0 and ending at 1.
pub fn check_chain(supports: &[(Rational, Rational)]) -> bool {
    let k = supports.len();
    if k < 2 || !supports[0].0.is_zero() || supports[k - 1].1 != Rational::one() {
        return false;
    }
    for i in 0..k - 1 {
        let (a, b) = &supports[i];
        let (c, d) = &supports[i + 1];
        if !(a < c && c < b && b < d) {
            return false;
        }
    }
    for i in 0..k {
        for j in i + 2..k {
            if supports[i].1 > supports[j].0 {
                return false;
            }
        }
    }
    true
}

/// `x·psi_1...psi_n >= y` with `x = inf J_2` and `y = sup J_{n-1}`.
pub fn check_fast(psis: &[CompactPL], supports: &[(Rational, Rational)]) -> bool {
    let k = supports.len();
    if k < 2 || psis.len() != k {
        return false;
    }
    let x = supports[1].0.clone();
    let y = &supports[k - 2].1;
    let mut p = x;
    for f in psis {
        p = f.eval(&p).expect("inside [0,1]");
    }
    &p >= y
}

/// Depth-two grid points used as interior chain endpoints, preferring the
/// middle third so that the inner generators avoid a neighbourhood of 0.
fn grid_points(n: u32) -> Vec<Rational> {
    let d = (n as i64) * (n as i64);
    let all: Vec<Rational> = (1..d).map(|k| Rational::new(k, d)).collect();
    let third = Rational::new(1, 3);
    let two_thirds = Rational::new(2, 3);
    let middle: Vec<Rational> = all
        .iter()
        .filter(|x| *x >= &third && *x <= &two_thirds)
        .cloned()
        .collect();
    let need = 2 * n as usize - 2;
    let pool = if middle.len() >= need { middle } else { all };
    let start = (pool.len() - need) / 2;
    pool[start..start + need].to_vec()
}

/// Bump on `[a, b]` pushing `a + delta` up to `b - delta'`.
fn bump(a: &Rational, b: &Rational, n: u32) -> Result<IntervalMap> {
    let n3 = Rational::power(n as u64, 4);
    let delta = n3.recip();
    let span = (b - a) * &n3;
    // the long piece must hold a cone count of 1 mod (n - 1)
    let j = if n == 2 {
        1
    } else {
        let r = (span.floor() - 1i32) % (n as i64 - 1);
        let r: i64 = num_traits::ToPrimitive::to_i64(&r).unwrap_or(0);
        if r <= 0 {
            r + n as i64 - 1
        } else {
            r
        }
    };
    let delta2 = &Rational::integer(j) / &n3;
    let mid_x = a + &delta;
    let mid_y = b - &delta2;
    nary_map(a, &mid_x, a, &mid_y, n)?.concat(&nary_map(&mid_x, b, &mid_y, b, n)?)
}

/// An explicit fast chain generating set for `F_n`.
pub fn chain_generators(n: u32) -> Result<ChainSet> {
    let p = grid_points(n);
    let k = n as usize;
    let mut supports = Vec::with_capacity(k);
    for i in 0..k {
        let a = if i == 0 { Rational::zero() } else { p[2 * i - 2].clone() };
        let b = if i == k - 1 { Rational::one() } else { p[2 * i + 1].clone() };
        supports.push((a, b));
    }
    let mut psis = Vec::with_capacity(k);
    for (a, b) in &supports {
        let mut parts = vec![];
        if a.is_positive() {
            parts.push(IntervalMap::identity_on(Rational::zero(), a.clone()));
        }
        parts.push(bump(a, b, n)?);
        if b < &Rational::one() {
            parts.push(IntervalMap::identity_on(b.clone(), Rational::one()));
        }
        psis.push(CompactPL::from_interval_map(IntervalMap::concat_all(&parts)?)?);
    }
    Ok(ChainSet { n, psis, supports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thompson::member_fn;

    #[test]
    fn chains_for_small_n() {
        for n in [2, 3, 4, 6, 12] {
            let c = chain_generators(n).unwrap();
            assert!(c.chain_ok(), "chain n={n}");
            assert!(c.fast_ok(), "fast n={n}");
            for (f, (a, b)) in c.psis.iter().zip(&c.supports) {
                assert!(member_fn(f, n));
                let s = f.support();
                assert_eq!(s.intervals(), &[(a.clone(), b.clone())]);
            }
        }
    }
}
