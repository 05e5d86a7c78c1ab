use crate::error::{Error, Result};
use crate::exact::{in_ring, power_of, Rational};
use crate::plmap::{CompactPL, IntervalMap, PlHomeo};

fn check_nadic(a: &Rational, b: &Rational, n: u32) -> Result<()> {
    if a >= b || !in_ring(a, n as u64) || !in_ring(b, n as u64) {
        return Err(Error::NotAnNaryInterval(format!("{a}, {b}")));
    }
    Ok(())
}

/// Whether `[a, b]` has the form `[k/n^m, (k+1)/n^m]` with `m >= 0`.
pub fn is_cone(a: &Rational, b: &Rational, n: u32) -> bool {
    if a >= b {
        return false;
    }
    let len = b - a;
    match power_of(&len, n) {
        Some(e) if e <= 0 => (a / &len).is_integer(),
        _ => false,
    }
}

/// Largest cone `[x, x + L]` with `x + L <= b`.
fn largest_cone_at(x: &Rational, b: &Rational, n: u32) -> Rational {
    let mut len = Rational::one();
    let nr = Rational::integer(n as i64);
    loop {
        if (x / &len).is_integer() && &(x + &len) <= b {
            return len;
        }
        len = &len / &nr;
    }
}

/// Greedy decomposition of an n-ary interval into cones, returned as the
/// list of cut points including both ends.
pub fn greedy_cones(a: &Rational, b: &Rational, n: u32) -> Result<Vec<Rational>> {
    check_nadic(a, b, n)?;
    let mut cuts = vec![a.clone()];
    let mut x = a.clone();
    while &x < b {
        let len = largest_cone_at(&x, b, n);
        x = &x + &len;
        cuts.push(x.clone());
    }
    Ok(cuts)
}

/// Splits the largest (leftmost on ties) cone of a cut list into `n` pieces.
fn split_largest(cuts: &mut Vec<Rational>, n: u32) {
    let mut best = 0;
    let mut best_len = &cuts[1] - &cuts[0];
    for i in 1..cuts.len() - 1 {
        let l = &cuts[i + 1] - &cuts[i];
        if l > best_len {
            best = i;
            best_len = l;
        }
    }
    let step = &best_len / &Rational::integer(n as i64);
    let start = cuts[best].clone();
    let children: Vec<Rational> = (1..n).map(|j| &start + &(&step * &Rational::integer(j as i64))).collect();
    cuts.splice(best + 1..best + 1, children);
}

/// PL map `[a, b] -> [c, d]` sending matched cones linearly onto each other.
///
/// Slopes are powers of `n` and breakpoints lie in `Z[1/n]`. The cone counts
/// of the two sides must agree mod `n - 1`.
pub fn nary_map(a: &Rational, b: &Rational, c: &Rational, d: &Rational, n: u32) -> Result<IntervalMap> {
    let mut dom = greedy_cones(a, b, n)?;
    let mut ran = greedy_cones(c, d, n)?;
    let gap = dom.len().abs_diff(ran.len());
    if n > 2 && gap % (n as usize - 1) != 0 {
        return Err(Error::IncompatibleIntervals(format!("[{a}, {b}] vs [{c}, {d}]")));
    }
    while dom.len() != ran.len() {
        if dom.len() < ran.len() {
            split_largest(&mut dom, n);
        } else {
            split_largest(&mut ran, n);
        }
    }
    IntervalMap::new(dom.into_iter().zip(ran).collect())
}

/// A point of `Z[1/n]` strictly inside `(a, b)` whose orbit class is `class`.
pub fn point_of_class(a: &Rational, b: &Rational, class: u32, n: u32) -> Rational {
    assert!(a < b, "empty interval");
    let want = (class % (n - 1).max(1)) as i64;
    let modulus = (n as i64 - 1).max(1);
    let nr = Rational::integer(n as i64);
    let mut step = Rational::one();
    loop {
        step = &step / &nr;
        let mut m = Rational::from_bigint((a / &step).floor() + 1i32);
        let r = m.floor() % modulus;
        let r: i64 = num_traits::ToPrimitive::to_i64(&r).unwrap_or(0);
        let shift = (want - r).rem_euclid(modulus);
        m = &m + &Rational::integer(shift);
        let x = &m * &step;
        if &x < b {
            return x;
        }
    }
}

/// The element of `F_n` built from the two cone matchings `[0, x] -> [0, y]`
/// and `[x, 1] -> [y, 1]`.
pub fn move_point(x: &Rational, y: &Rational, n: u32) -> Result<CompactPL> {
    let zero = Rational::zero();
    let one = Rational::one();
    if x == y {
        return Ok(CompactPL::identity());
    }
    let m = nary_map(&zero, x, &zero, y, n)?.concat(&nary_map(x, &one, y, &one, n)?)?;
    CompactPL::from_interval_map(m)
}

fn is_power_slope(s: &Rational, n: u32) -> bool {
    power_of(s, n).is_some()
}

/// Slopes in `{n^m}` and breakpoints in `Z[1/n]`.
pub fn member_fn(f: &CompactPL, n: u32) -> bool {
    member_fnr(f.as_interval(), n)
}

/// Membership test for `F_{n,r}`-style maps on an arbitrary interval.
pub fn member_fnr(f: &IntervalMap, n: u32) -> bool {
    f.points().iter().all(|(x, y)| in_ring(x, n as u64) && in_ring(y, n as u64))
        && f.slopes().iter().all(|s| is_power_slope(s, n))
}

/// Extends `f1: [0, r1] -> [0, r2]` to an element of `F_n`.
pub fn complete_partial(f1: &IntervalMap, n: u32) -> Result<CompactPL> {
    let zero = Rational::zero();
    let one = Rational::one();
    let (a, r1) = f1.domain();
    let (c, r2) = f1.range();
    let bad = |why: &str| Error::BadPartial(why.to_string());
    if a != &zero || c != &zero {
        return Err(bad("partial map must start at 0"));
    }
    if r1 >= &one || r2 >= &one {
        return Err(bad("partial map must end inside (0,1)"));
    }
    if !member_fnr(f1, n) {
        return Err(bad("slopes or breakpoints outside F_n"));
    }
    let tail = nary_map(r1, &one, r2, &one, n).map_err(|e| bad(&e.to_string()))?;
    CompactPL::from_interval_map(f1.concat(&tail)?)
}

/// The copy of `f` acting inside the cone `[a, b]`, identity elsewhere.
pub fn cone_embed(f: &CompactPL, a: &Rational, b: &Rational, n: u32) -> Result<CompactPL> {
    let zero = Rational::zero();
    let one = Rational::one();
    if !is_cone(a, b, n) || a < &zero || b > &one {
        return Err(Error::NotACone(format!("{a}, {b}")));
    }
    if f.is_identity() {
        return Ok(CompactPL::identity());
    }
    let inner = f.as_interval().rescale(a, b);
    let mut parts = vec![];
    if a > &zero {
        parts.push(IntervalMap::identity_on(zero, a.clone()));
    }
    parts.push(inner);
    if b < &one {
        parts.push(IntervalMap::identity_on(b.clone(), one));
    }
    CompactPL::from_interval_map(IntervalMap::concat_all(&parts)?)
}

/// The map `J -> [0, l]` sending the `i`-th greedy cone of `J` onto `[i-1, i]`.
pub fn interval_conj(a: &Rational, b: &Rational, n: u32) -> Result<IntervalMap> {
    let cuts = greedy_cones(a, b, n)?;
    let pts = cuts
        .into_iter()
        .enumerate()
        .map(|(i, x)| (x, Rational::integer(i as i64)))
        .collect();
    IntervalMap::new(pts)
}

/// Carries `g`, restricted to `J = domain(phi)`, to `[0, l]` as `phi^{-1} g phi`.
pub fn conjugate_to_fnl(g: &CompactPL, phi: &IntervalMap) -> Result<IntervalMap> {
    let (a, b) = phi.domain();
    let gj = g.as_interval().restrict(a, b)?;
    if gj.range() != phi.domain() {
        return Err(Error::InvalidMap("map does not preserve the interval".into()));
    }
    phi.inverse().then(&gj)?.then(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plmap::Side;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn cones() {
        assert!(is_cone(&q("1/4"), &q("1/2"), 2));
        assert!(is_cone(&q("-1/6"), &q("0"), 6));
        assert!(!is_cone(&q("1/4"), &q("3/4"), 2));
        assert!(!is_cone(&q("1/3"), &q("2/3"), 2));
        assert!(is_cone(&q("1/3"), &q("2/3"), 3));
    }

    #[test]
    fn completion_example() {
        let f1 = IntervalMap::linear(q("0"), q("1/2"), q("0"), q("1/4")).unwrap();
        let g = complete_partial(&f1, 2).unwrap();
        assert!(member_fn(&g, 2));
        assert!(g.agree_on(&CompactPL::new(vec![(q("0"), q("0")), (q("1/2"), q("1/4")), (q("1"), q("1"))]).unwrap(), &q("0"), &q("1/2")));
        assert_eq!(g.eval(&q("3/4")).unwrap(), q("1/2"));
        assert_eq!(g.slope(&q("5/8"), Side::Right).unwrap(), q("1"));
        assert_eq!(g.slope(&q("7/8"), Side::Right).unwrap(), q("2"));
        let id = IntervalMap::identity_on(q("0"), q("1/2"));
        assert!(complete_partial(&id, 2).unwrap().is_identity());
        let bad = IntervalMap::linear(q("0"), q("1/10"), q("0"), q("1/2")).unwrap();
        assert!(matches!(complete_partial(&bad, 2), Err(Error::BadPartial(_))));
    }

    #[test]
    fn interval_conj_example() {
        let phi = interval_conj(&q("1/4"), &q("3/4"), 2).unwrap();
        assert_eq!(phi.eval(&q("1/2")).unwrap(), q("1"));
        assert_eq!(phi.slopes(), vec![q("4")]);
        assert!(interval_conj(&q("0"), &q("1"), 2).unwrap().is_identity());
        assert!(interval_conj(&q("0"), &q("1/3"), 2).is_err());
    }

    #[test]
    fn cone_embed_example() {
        let f = CompactPL::new(vec![(q("0"), q("0")), (q("1/2"), q("1/4")), (q("3/4"), q("1/2")), (q("1"), q("1"))]).unwrap();
        let e = cone_embed(&f, &q("0"), &q("1/2"), 2).unwrap();
        assert_eq!(e.breakpoints(), vec![q("1/4"), q("3/8"), q("1/2")]);
        assert_eq!(e.eval(&q("1/4")).unwrap(), q("1/8"));
        assert!(e.support().intervals().iter().all(|(a, b)| a >= &q("0") && b <= &q("1/2")));
        assert!(matches!(cone_embed(&f, &q("1/4"), &q("3/4"), 2), Err(Error::NotACone(_))));
    }

    #[test]
    fn nary_map_counts() {
        let m = nary_map(&q("0"), &q("1/3"), &q("0"), &q("1/9"), 3).unwrap();
        assert_eq!(m.eval(&q("1/3")).unwrap(), q("1/9"));
        assert!(nary_map(&q("0"), &q("1/3"), &q("0"), &q("2/3"), 3).is_err());
    }
}
