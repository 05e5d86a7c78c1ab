use std::fmt;

use crate::exact::Rational;

/// The open set of moved points of a map.
///
/// For periodic maps the intervals describe one period and the set is their
/// union translated by every integer. A wrapping interval is stored with a
/// negative left end, so `(-1/6, 1/3)` means `(-1/6, 1/3) + Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    intervals: Vec<(Rational, Rational)>,
    periodic: bool,
    everywhere: bool,
}

impl SupportSet {
    pub fn empty(periodic: bool) -> Self {
        SupportSet {
            intervals: vec![],
            periodic,
            everywhere: false,
        }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    /// True for a periodic map without fixed points.
    pub fn is_everywhere(&self) -> bool {
        self.everywhere
    }

    pub fn is_empty(&self) -> bool {
        !self.everywhere && self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.everywhere {
            return true;
        }
        self.intervals.iter().any(|(a, b)| {
            if self.periodic {
                let t = x - &Rational::from_bigint((x - a).floor());
                &t > a && &t < b
            } else {
                x > a && x < b
            }
        })
    }

    /// Membership in the closure.
    pub fn closure_contains(&self, x: &Rational) -> bool {
        if self.everywhere {
            return true;
        }
        self.intervals.iter().any(|(a, b)| {
            if self.periodic {
                let t = x - &Rational::from_bigint((x - a).floor());
                &t >= a && &t <= b
            } else {
                x >= a && x <= b
            }
        })
    }

    /// Smallest closed interval `[a, b]` with `b - a < 1` whose translates
    /// cover a periodic support, found by dropping the widest fixed gap.
    ///
    /// `None` when no such interval exists; the empty support gives `None` too.
    pub fn stable_hull(&self) -> Option<(Rational, Rational)> {
        if !self.periodic || self.everywhere || self.intervals.is_empty() {
            return None;
        }
        let k = self.intervals.len();
        let mut best: Option<(Rational, Rational)> = None;
        for i in 0..k {
            let g0 = self.intervals[i].1.clone();
            let g1 = if i + 1 < k {
                self.intervals[i + 1].0.clone()
            } else {
                &self.intervals[0].0 + &Rational::one()
            };
            let wider = match &best {
                Some((b0, b1)) => &g1 - &g0 > b1 - b0,
                None => true,
            };
            if g1 > g0 && wider {
                best = Some((g0, g1));
            }
        }
        let (g0, g1) = best?;
        let shift = Rational::from_bigint(g1.floor());
        Some((&g1 - &shift, &(&g0 + &Rational::one()) - &shift))
    }

    /// Compact maps built from graph points over `[0, 1]`.
    pub(crate) fn of_compact(pts: &[(Rational, Rational)]) -> Self {
        let gaps = moved_gaps(pts);
        SupportSet {
            intervals: gaps,
            periodic: false,
            everywhere: false,
        }
    }

    /// Periodic maps, from one period of the graph over `[0, 1]`.
    pub(crate) fn of_periodic(pts: &[(Rational, Rational)]) -> Self {
        let fixed = fixed_sets(pts);
        if fixed.is_empty() {
            return SupportSet {
                intervals: vec![],
                periodic: true,
                everywhere: true,
            };
        }
        let mut intervals = vec![];
        for w in fixed.windows(2) {
            if w[0].1 < w[1].0 {
                intervals.push((w[0].1.clone(), w[1].0.clone()));
            }
        }
        let first = &fixed[0].0;
        let last = &fixed[fixed.len() - 1].1;
        // 0 fixed iff 1 fixed, so the two end gaps are empty together
        if !first.is_zero() {
            intervals.insert(0, (last - &Rational::one(), first.clone()));
        }
        SupportSet {
            intervals,
            periodic: true,
            everywhere: false,
        }
    }
}

/// Maximal closed fixed sets `[p, q]` of a PL graph, sorted and merged.
fn fixed_sets(pts: &[(Rational, Rational)]) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = vec![];
    let mut push = |p: Rational, q: Rational| {
        if let Some(last) = out.last_mut() {
            if p <= last.1 {
                if q > last.1 {
                    last.1 = q;
                }
                return;
            }
        }
        out.push((p, q));
    };
    for w in pts.windows(2) {
        let (x0, y0) = &w[0];
        let (x1, y1) = &w[1];
        let d0 = y0 - x0;
        let d1 = y1 - x1;
        if d0.is_zero() && d1.is_zero() {
            push(x0.clone(), x1.clone());
            continue;
        }
        if d0.is_zero() {
            push(x0.clone(), x0.clone());
        }
        if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
            let z = x0 + &(&(&d0 / &(&d0 - &d1)) * &(x1 - x0));
            push(z.clone(), z);
        }
        if d1.is_zero() {
            push(x1.clone(), x1.clone());
        }
    }
    out
}

fn moved_gaps(pts: &[(Rational, Rational)]) -> Vec<(Rational, Rational)> {
    let fixed = fixed_sets(pts);
    fixed
        .windows(2)
        .filter(|w| w[0].1 < w[1].0)
        .map(|w| (w[0].1.clone(), w[1].0.clone()))
        .collect()
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.everywhere {
            return write!(f, "R");
        }
        if self.intervals.is_empty() {
            return write!(f, "empty");
        }
        for (i, (a, b)) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "({a}, {b})")?;
        }
        if self.periodic {
            write!(f, " + Z")?;
        }
        Ok(())
    }
}
