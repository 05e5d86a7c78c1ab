use crate::exact::Rational;
use crate::plmap::{PeriodicPL, PlHomeo};

/// `0·f^m / m` together with an exact value when a periodic point turns up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationEstimate {
    pub estimate: Rational,
    pub iterations: u64,
    pub error_bound: Rational,
    pub exact: Option<Rational>,
    /// `(p, q)` with `x·f^p = x + q` for some `x`.
    pub certificate: Option<(u64, i64)>,
}

/// Estimates `lim 0·f^m / m`.
///
/// For each `p <= p_max` the graph of `f^p` over one period is scanned for a
/// solution of `x·f^p = x + q`; the first hit gives the exact value `q/p`.
pub fn translation_number(f: &PeriodicPL, m_max: u64, p_max: u64) -> RotationEstimate {
    let m_max = m_max.max(1);
    let mut x = Rational::zero();
    for _ in 0..m_max {
        x = f.eval(&x).expect("periodic maps are total");
    }
    let m = Rational::integer(m_max as i64);
    let estimate = &x / &m;
    let error_bound = &Rational::integer(2) / &m;
    let mut power = PeriodicPL::identity();
    for p in 1..=p_max {
        power = power.compose(f);
        for (x0, y0, x1, y1, _) in power.segments() {
            let d0 = y0 - x0;
            let d1 = y1 - x1;
            let (lo, hi) = if d0 <= d1 { (d0, d1) } else { (d1, d0) };
            let q = Rational::from_bigint(lo.ceil());
            if q <= hi {
                let qi = num_traits::ToPrimitive::to_i64(q.numer()).expect("small displacement");
                return RotationEstimate {
                    estimate,
                    iterations: m_max,
                    error_bound,
                    exact: Some(&q / &Rational::integer(p as i64)),
                    certificate: Some((p, qi)),
                };
            }
        }
    }
    RotationEstimate {
        estimate,
        iterations: m_max,
        error_bound,
        exact: None,
        certificate: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammaq::xi_build;

    #[test]
    fn fixed_point_gives_zero() {
        let xi = xi_build(2, 2).unwrap();
        let r = translation_number(&xi, 32, 4);
        assert_eq!(r.exact, Some(Rational::zero()));
        assert_eq!(r.certificate, Some((1, 0)));
    }

    #[test]
    fn translation_is_exact() {
        let t = PeriodicPL::translation(Rational::new(2, 3));
        let r = translation_number(&t, 30, 4);
        assert_eq!(r.exact, Some(Rational::new(2, 3)));
        assert_eq!(r.estimate, Rational::new(2, 3));
    }
}
