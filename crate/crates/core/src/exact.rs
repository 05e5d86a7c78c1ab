//! Exact rational arithmetic and the ring/slope tests built on it.
//!
//! Every coordinate in the library is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, reducing to lowest terms.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_bigints(BigInt::from(num), BigInt::from(den))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        -((-self.0.numer()).div_floor(self.0.denom()))
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        self - &Rational::from_bigint(self.floor())
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Rational {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    /// `base^exp` for an integer base and a possibly negative exponent.
    pub fn power(base: u64, exp: i64) -> Rational {
        let b = BigInt::from(base);
        let p = num_traits::pow(b, exp.unsigned_abs() as usize);
        let r = Rational::from_bigint(p);
        if exp < 0 {
            r.recip()
        } else {
            r
        }
    }

    /// Midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Rational) -> Rational {
        (self + other) / Rational::integer(2)
    }

    /// Decimal rendering truncated toward zero after `digits` places.
    ///
    /// Presentation only; never parsed back.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let scaled = (self.0.numer().abs() * &scale) / self.0.denom();
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let sign = if self.is_negative() && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{int_part}");
        }
        let frac = frac_part.to_string();
        let pad = "0".repeat(digits as usize - frac.len());
        format!("{sign}{int_part}.{pad}{frac}")
    }

    /// Lossy conversion, used only by plotting.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_bigints(num, den))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_bigint(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// The exponent pair of a slope `n^i (n+1)^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlopeExponents {
    pub i: i64,
    pub j: i64,
    pub base_n: u32,
}

impl SlopeExponents {
    pub fn value(&self) -> Rational {
        let n = self.base_n as u64;
        Rational::power(n, self.i) * Rational::power(n + 1, self.j)
    }
}

/// Strips every factor of `p` from `x`, returning the count.
fn strip(x: &mut BigInt, p: &BigInt) -> i64 {
    let mut count = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        *x = q;
        count += 1;
    }
}

/// Writes `q` as `n^i (n+1)^j`.
pub fn slope_factor(q: &Rational, n: u32) -> Result<SlopeExponents> {
    if n < 2 {
        return Err(Error::UnsupportedBase(n));
    }
    if !q.is_positive() {
        return Err(Error::NotAProductOfBases(q.to_string()));
    }
    let bn = BigInt::from(n);
    let bn1 = BigInt::from(n + 1);
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    let i_num = strip(&mut num, &bn);
    let j_num = strip(&mut num, &bn1);
    let i_den = strip(&mut den, &bn);
    let j_den = strip(&mut den, &bn1);
    if !num.is_one() || !den.is_one() {
        return Err(Error::NotAProductOfBases(q.to_string()));
    }
    let e = SlopeExponents {
        i: i_num - i_den,
        j: j_num - j_den,
        base_n: n,
    };
    if &e.value() != q {
        return Err(Error::NotAProductOfBases(q.to_string()));
    }
    Ok(e)
}

/// Returns `m` when `q = n^m`.
pub fn power_of(q: &Rational, n: u32) -> Option<i64> {
    if !q.is_positive() || n < 2 {
        return None;
    }
    let bn = BigInt::from(n);
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    let up = strip(&mut num, &bn);
    let down = strip(&mut den, &bn);
    if num.is_one() && den.is_one() {
        Some(up - down)
    } else {
        None
    }
}

/// Whether every prime factor of the denominator of `x` divides `m`.
pub fn in_ring(x: &Rational, m: u64) -> bool {
    let bm = BigInt::from(m);
    let mut d = x.denom().clone();
    loop {
        if d.is_one() {
            return true;
        }
        let g = d.gcd(&bm);
        if g.is_one() {
            return false;
        }
        d /= g;
    }
}

/// Writes `x` as `m / n^k` and returns `m mod (n-1)` in `0..n-1`.
///
/// The residue does not depend on the chosen `k`, since `n = 1 mod (n-1)`.
pub fn nadic_residue(x: &Rational, n: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::UnsupportedBase(n));
    }
    let bn = BigInt::from(n);
    let mut d = x.denom().clone();
    let mut scale = BigInt::one();
    while !d.is_one() {
        let g = d.gcd(&bn);
        if g.is_one() {
            return Err(Error::NotInRing(x.to_string()));
        }
        d /= &g;
        scale *= &bn / &g;
    }
    // x = numer * scale / n^k for the k steps taken above
    let m = x.numer() * scale;
    let modulus = BigInt::from(n - 1);
    Ok(m.mod_floor(&modulus).to_u64().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn slope_factor_examples() {
        let e = slope_factor(&q("1"), 3).unwrap();
        assert_eq!((e.i, e.j), (0, 0));
        let e = slope_factor(&q("6"), 2).unwrap();
        assert_eq!((e.i, e.j), (1, 1));
        let e = slope_factor(&q("4/3"), 2).unwrap();
        assert_eq!((e.i, e.j), (2, -1));
        assert!(matches!(
            slope_factor(&q("5"), 2),
            Err(Error::NotAProductOfBases(_))
        ));
        assert!(slope_factor(&q("2"), 4).is_err());
        assert!(slope_factor(&q("-6"), 2).is_err());
    }

    #[test]
    fn slope_factor_round_trip_exhaustive() {
        for n in 2u32..=4 {
            for i in -20i64..=20 {
                for j in -20i64..=20 {
                    let v = Rational::power(n as u64, i) * Rational::power(n as u64 + 1, j);
                    let e = slope_factor(&v, n).unwrap();
                    assert_eq!((e.i, e.j), (i, j), "n={n} v={v}");
                }
            }
        }
    }

    #[test]
    fn in_ring_examples() {
        assert!(in_ring(&q("3/4"), 2));
        assert!(in_ring(&q("10/36"), 6));
        assert!(!in_ring(&q("1/5"), 6));
        assert!(in_ring(&q("7"), 2));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(q("10/36").to_string(), "5/18");
        assert_eq!(q("4/-2").to_string(), "-2");
        assert_eq!(q(" 3 / 9 ").to_string(), "1/3");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_ceil_fract() {
        assert_eq!(q("-1/3").floor(), BigInt::from(-1));
        assert_eq!(q("-1/3").ceil(), BigInt::from(0));
        assert_eq!(q("-1/3").fract(), q("2/3"));
        assert_eq!(q("7/2").fract(), q("1/2"));
        assert_eq!(q("2").fract(), q("0"));
    }

    #[test]
    fn residues() {
        assert_eq!(nadic_residue(&q("5/9"), 3).unwrap(), 1);
        assert_eq!(nadic_residue(&q("2/3"), 3).unwrap(), 0);
        assert_eq!(nadic_residue(&q("10/36"), 6).unwrap(), 0);
        assert_eq!(nadic_residue(&q("1"), 6).unwrap(), 1);
        assert!(nadic_residue(&q("1/5"), 6).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q("5/18").to_decimal(4), "0.2777");
        assert_eq!(q("-1/4").to_decimal(3), "-0.250");
        assert_eq!(q("3").to_decimal(2), "3.00");
    }

    #[test]
    fn power_of_base() {
        assert_eq!(power_of(&q("1/8"), 2), Some(-3));
        assert_eq!(power_of(&q("1"), 5), Some(0));
        assert_eq!(power_of(&q("6"), 2), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn canonicalization_ignores_common_factor(k in 1i64..1000, p in -10_000i64..10_000, d in 1i64..10_000) {
                prop_assert_eq!(Rational::new(k * p, k * d), Rational::new(p, d));
            }
        }

        proptest! {
            #[test]
            fn ring_closed_under_add_mul(a in -500i64..500, ea in 0u32..6, b in -500i64..500, eb in 0u32..6, m in 2u64..13) {
                let x = Rational::new(a, (m as i64).pow(ea));
                let y = Rational::new(b, (m as i64).pow(eb));
                prop_assert!(in_ring(&x, m) && in_ring(&y, m));
                prop_assert!(in_ring(&(&x + &y), m));
                prop_assert!(in_ring(&(&x * &y), m));
            }
        }
    }
}
