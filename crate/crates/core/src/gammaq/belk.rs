use crate::error::{Error, Result};
use crate::exact::{in_ring, power_of, Rational};
use crate::plmap::{IntervalMap, PeriodicPL, PlHomeo};

/// `⌊log2 t⌋` for positive `t`.
fn log2_floor(t: &Rational) -> i64 {
    let two = Rational::integer(2);
    let mut k = 0i64;
    let mut p = Rational::one();
    while &p > t {
        p = &p / &two;
        k -= 1;
    }
    while &(&p * &two) <= t {
        p = &p * &two;
        k += 1;
    }
    k
}

/// The orientation reversing map `(0, ∞) -> R` sending `[2^k, 2^{k+1}]`
/// linearly onto `[-(k+1), -k]`.
pub fn kappa(t: &Rational) -> Result<Rational> {
    if !t.is_positive() {
        return Err(Error::DomainError(t.to_string()));
    }
    let k = log2_floor(t);
    let scale = Rational::power(2, -k);
    Ok(&Rational::integer(1 - k) - &(t * &scale))
}

pub fn kappa_inv(s: &Rational) -> Rational {
    let neg = -s;
    let k = num_traits::ToPrimitive::to_i64(&neg.floor()).expect("moderate window");
    &Rational::power(2, k) * &(&Rational::integer(1 - k) - s)
}

/// `t -> κ^{-1}(g(κ(t)))` on the window `[2^{-k}, 2^k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BelkMap {
    pub window: u32,
    pub map: IntervalMap,
}

impl BelkMap {
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        self.map.eval(t)
    }

    /// Interior breakpoints of the window map.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let pts = self.map.points();
        pts[1..pts.len() - 1].iter().map(|p| p.0.clone()).collect()
    }

    /// Fifty points of `Z[1/6]` spread over `[2^{-k}, 2^{k-1}]`.
    pub fn sample_points(&self) -> Vec<Rational> {
        let k = self.window as i64;
        let lo = Rational::power(2, -k);
        let hi = Rational::power(2, k - 1);
        let grid = Rational::power(6, 5);
        (0..50)
            .map(|i| {
                let t = &lo + &(&(&hi - &lo) * &Rational::new(i, 49));
                let snapped = &Rational::from_bigint((&t * &grid).floor()) / &grid;
                if snapped < lo { lo.clone() } else { snapped }
            })
            .collect()
    }

    /// Slopes are powers of 6, breakpoints lie in `Z[1/6]`, and the map
    /// commutes with doubling at the sample points.
    pub fn check(&self) -> Result<()> {
        for s in self.map.slopes() {
            if power_of(&s, 6).is_none() {
                return Err(Error::SlopeNotFactorable(s.to_string()));
            }
        }
        for b in self.breakpoints() {
            if !in_ring(&b, 6) {
                return Err(Error::BreakpointNotInRing(b.to_string()));
            }
        }
        let two = Rational::integer(2);
        for t in self.sample_points() {
            let lhs = self.eval(&(&t * &two))?;
            let rhs = &self.eval(&t)? * &two;
            if lhs != rhs {
                return Err(Error::ConstructionFailed(format!("doubling fails at {t}")));
            }
        }
        Ok(())
    }
}

/// Conjugates `g` in `Γ_2` to a map of the positive reals and checks it.
pub fn belk_transform(g: &PeriodicPL, n: u32, window: u32) -> Result<BelkMap> {
    if n != 2 {
        return Err(Error::UnsupportedBase(n));
    }
    if window == 0 {
        return Err(Error::OutOfRange("window must be positive".into()));
    }
    let k = window as i64;
    let lo = Rational::integer(-k);
    let hi = Rational::integer(k);
    let mut ss: Vec<Rational> = (-k..=k).map(Rational::integer).collect();
    for m in -k - 1..=k {
        for b in g.points() {
            let s = &b.0 + &Rational::integer(m);
            if s >= lo && s <= hi {
                ss.push(s);
            }
        }
    }
    let glo = g.eval(&lo)?.floor();
    let ghi = g.eval(&hi)?.ceil();
    let (glo, ghi) = (
        num_traits::ToPrimitive::to_i64(&glo).expect("moderate"),
        num_traits::ToPrimitive::to_i64(&ghi).expect("moderate"),
    );
    for m in glo..=ghi {
        let s = g.eval_inv(&Rational::integer(m))?;
        if s >= lo && s <= hi {
            ss.push(s);
        }
    }
    let mut pts = vec![];
    for s in ss {
        let t = kappa_inv(&s);
        let y = kappa_inv(&g.eval(&s)?);
        pts.push((t, y));
    }
    pts.sort();
    pts.dedup();
    let map = IntervalMap::new(pts)?;
    let out = BelkMap { window, map };
    out.check()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammaq::xi_build;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa(&r("3/2")).unwrap(), r("-1/2"));
        assert_eq!(kappa(&r("1")).unwrap(), r("0"));
        assert_eq!(kappa(&r("2")).unwrap(), r("-1"));
        assert_eq!(kappa(&r("1/4")).unwrap(), r("2"));
        for t in ["3/2", "1/3", "7", "5/64"] {
            assert_eq!(kappa_inv(&kappa(&r(t)).unwrap()), r(t));
        }
    }

    #[test]
    fn identity_and_xi() {
        let id = belk_transform(&PeriodicPL::identity(), 2, 3).unwrap();
        assert!(id.map.is_identity());
        let xi = xi_build(2, 2).unwrap();
        belk_transform(&xi, 2, 3).unwrap();
        assert_eq!(belk_transform(&xi, 3, 3).unwrap_err(), Error::UnsupportedBase(3));
    }
}
