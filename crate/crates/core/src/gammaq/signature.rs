use crate::error::{Error, Result};
use crate::exact::{in_ring, Rational};
use crate::thompson::class_of;

/// Orbit classes of the points of a tuple in circular order, rotated to the
/// lexicographically least form. The point 0 has class `η - 1`.
pub fn tuple_signature(points: &[Rational], e: u32) -> Result<Vec<u32>> {
    let mut pts = points.to_vec();
    pts.sort();
    for w in pts.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
    }
    let mut classes = vec![];
    for x in &pts {
        if x.is_negative() || x >= &Rational::one() {
            return Err(Error::OutOfRange(x.to_string()));
        }
        if !in_ring(x, e as u64) {
            return Err(Error::NotInRing(x.to_string()));
        }
        classes.push(class_of(x, e)?);
    }
    let k = classes.len();
    let best = (0..k)
        .map(|s| classes[s..].iter().chain(&classes[..s]).copied().collect::<Vec<_>>())
        .min();
    Ok(best.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(tuple_signature(&[Rational::new(5, 18)], 6).unwrap(), vec![5]);
        assert!(tuple_signature(&[], 6).unwrap().is_empty());
        let p = Rational::new(1, 6);
        assert!(matches!(tuple_signature(&[p.clone(), p], 6), Err(Error::DuplicatePoint(_))));
        let s = tuple_signature(&[Rational::new(2, 6), Rational::zero(), Rational::new(1, 36)], 6).unwrap();
        assert_eq!(s, vec![1, 2, 5]);
    }
}
