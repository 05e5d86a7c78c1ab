use crate::error::Result;

use super::{PairDiagram, Subdivision};

/// Right vine: the regular subdivision with its last interval subdivided
/// repeatedly, until there are at least `leaves` intervals.
fn right_vine(n: u32, leaves: usize) -> Result<Subdivision> {
    let mut t = Subdivision::trivial(n).tau(0)?;
    while t.len() < leaves {
        let last = t.len() - 1;
        t = t.tau(last)?;
    }
    Ok(t)
}

/// The generator `f_i` of the infinite presentation of `F_n`.
///
/// On a right vine `T` whose last interval lies right of leaf `i`,
/// `f_i = (tau_i(T), tau_last(T))`: the identity left of leaf `i`, leaf `i`
/// spread over `n` leaves, and every later vine leaf shifted by `n - 1`.
pub fn presentation_generator(i: usize, n: u32) -> Result<PairDiagram> {
    let t = right_vine(n, i + 2)?;
    PairDiagram::new(t.tau(i)?, t.tau(t.len() - 1)?)
}

/// Checks `f_i^{-1} f_j f_i = f_{j+n-1}` by pair-diagram multiplication.
pub fn presentation_relation_holds(i: usize, j: usize, n: u32) -> Result<bool> {
    let fi = presentation_generator(i, n)?;
    let fj = presentation_generator(j, n)?;
    let lhs = fi.inverse().multiply(&fj)?.multiply(&fi)?;
    Ok(lhs == presentation_generator(j + n as usize - 1, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    #[test]
    fn relations_hold() {
        for n in [2, 3] {
            for i in 0..=6 {
                for j in i + 1..=6 {
                    assert!(presentation_relation_holds(i, j, n).unwrap(), "i={i} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn first_generator_n2() {
        let f0 = presentation_generator(0, 2).unwrap();
        let c = |v: &[&str]| v.iter().map(|s| s.parse::<Rational>().unwrap()).collect::<Vec<_>>();
        assert_eq!(f0.domain().cuts(), c(&["1/4", "1/2"]).as_slice());
        assert_eq!(f0.range().cuts(), c(&["1/2", "3/4"]).as_slice());
    }

    #[test]
    fn generators_distinct() {
        for n in [2, 3] {
            let gens: Vec<_> = (0..8).map(|i| presentation_generator(i, n).unwrap()).collect();
            for a in 0..gens.len() {
                for b in a + 1..gens.len() {
                    assert_ne!(gens[a], gens[b]);
                }
            }
        }
    }
}
