use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::plmap::{CompactPL, IntervalMap, PeriodicPL, PlHomeo};
use crate::thompson::{class_of, cone_embed, move_point, nary_map, point_of_class};

use super::factor::factor;
use super::word::{Atom, Word};
use super::GammaContext;

/// Whether the closed interval `[a, b]` sits inside `(v0, v1) + k` for some integer `k`.
fn inside_mod1(a: &Rational, b: &Rational, v0: &Rational, v1: &Rational) -> bool {
    let k = Rational::from_bigint((a - v0).floor());
    let a1 = a - &k;
    &a1 > v0 && &(b - &k) < v1
}

/// Whether `[a, b] + Z` and `[c, d] + Z` are disjoint (both shorter than 1).
fn disjoint_mod1(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> bool {
    let k = Rational::from_bigint((c - a).floor());
    let c1 = c - &k;
    let d1 = d - &k;
    &c1 > b && d1 < a + &Rational::one()
}

/// An `F_η` element sending `[a, b] ⊂ (0, 1)` into `[w0, w1] ⊂ (0, 1)`.
fn squeeze_into(a: &Rational, b: &Rational, w0: &Rational, w1: &Rational, e: u32) -> Result<CompactPL> {
    let zero = Rational::zero();
    let one = Rational::one();
    let p = point_of_class(&zero, a, class_of(w0, e)?, e);
    let q = point_of_class(b, &one, class_of(w1, e)?, e);
    let m = nary_map(&zero, &p, &zero, w0, e)?
        .concat(&nary_map(&p, &q, w0, w1, e)?)?
        .concat(&nary_map(&q, &one, w1, &one, e)?)?;
    CompactPL::from_interval_map(m)
}

/// A word `f` with `([u0, u1] + Z)·f ⊂ (v0, v1) + Z`.
///
/// An interval missing the integers is squeezed inside its period. One
/// touching an integer is first pulled towards it by a diagonal element so
/// that `ξ` pushes it off, then squeezed.
pub fn contract(ctx: &GammaContext, u0: &Rational, u1: &Rational, v0: &Rational, v1: &Rational) -> Result<Word> {
    let one = Rational::one();
    if u1 < u0 || v1 <= v0 {
        return Err(Error::OutOfRange(format!("[{u0}, {u1}] into ({v0}, {v1})")));
    }
    if &(u1 - u0) >= &one {
        return Err(Error::TooWide(format!("[{u0}, {u1}]")));
    }
    let mut w = Word::identity(ctx.n, ctx.depth);
    if inside_mod1(u0, u1, v0, v1) {
        return Ok(w);
    }
    let e = ctx.eta();
    let shift = Rational::from_bigint(v0.floor());
    let lo = v0 - &shift;
    let hi = (v1 - &shift).min(one.clone());
    let mid = lo.midpoint(&hi);
    let w0 = point_of_class(&lo, &mid, 1, e);
    let w1 = point_of_class(&mid, &hi, 1, e);

    let s = Rational::from_bigint(u0.floor());
    let (mut a, mut b) = (u0 - &s, u1 - &s);
    if a.is_zero() || b >= one {
        if !a.is_zero() {
            a = &a - &one;
            b = &b - &one;
        }
        let z = ctx.xi_inv.eval(&Rational::zero())?;
        let target = &one + &z;
        let r = point_of_class(&b, &(&a + &one), class_of(&target, e)?, e);
        let d = move_point(&r, &target, e)?;
        let dd = PeriodicPL::diagonal(&d);
        a = ctx.xi.eval(&dd.eval(&a)?)?;
        b = ctx.xi.eval(&dd.eval(&b)?)?;
        if !d.is_identity() {
            w.push(Atom::F(d));
        }
        w.push(Atom::Xi(1));
    }
    let l = squeeze_into(&a, &b, &w0, &w1, e)?;
    if !l.is_identity() {
        w.push(Atom::F(l));
    }
    let f = ctx.eval(&w)?;
    if !inside_mod1(&f.eval(u0)?, &f.eval(u1)?, v0, v1) {
        return Err(Error::ConstructionFailed("contraction missed the target".into()));
    }
    Ok(w)
}

/// Two points of `Z[1/η]` inside `(lo, hi)`, the left one first.
fn inner_pair(lo: &Rational, hi: &Rational, e: u32) -> (Rational, Rational) {
    let mid = lo.midpoint(hi);
    (point_of_class(lo, &mid, 1, e), point_of_class(&mid, hi, 1, e))
}

/// A word `f` with `x·f` in the open interval `(w0, w1)`.
///
/// The point is first carried into the period of `w0` by the same moves
/// that factorization uses, then squeezed into the target.
pub fn move_into(ctx: &GammaContext, x: &Rational, w0: &Rational, w1: &Rational) -> Result<Word> {
    if w1 <= w0 {
        return Err(Error::OutOfRange(format!("({w0}, {w1})")));
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let e = ctx.eta();
    let y_xi = ctx.xi.eval(&zero)?;
    let z_xi = ctx.xi_inv.eval(&zero)?;
    let m = Rational::from_bigint(w0.floor());
    let mut w = Word::identity(ctx.n, ctx.depth);
    let mut cur = x.clone();
    let squeeze = |t: &Rational, lo: &Rational, hi: &Rational| -> Result<CompactPL> {
        let (a, b) = inner_pair(lo, hi, e);
        squeeze_into(t, t, &a, &b, e)
    };
    loop {
        let p = Rational::from_bigint(cur.floor());
        if p == m && !cur.is_integer() {
            break;
        }
        let up = if cur.is_integer() { p <= m } else { p < m };
        if !cur.is_integer() {
            let l = if up {
                squeeze(&cur.fract(), &(&one + &z_xi), &one)?
            } else {
                squeeze(&cur.fract(), &zero, &y_xi)?
            };
            cur = PeriodicPL::diagonal(&l).eval(&cur)?;
            w.push(Atom::F(l));
        }
        let (xi, s) = if up { (&ctx.xi, 1) } else { (&ctx.xi_inv, -1) };
        cur = xi.eval(&cur)?;
        w.push(Atom::Xi(s));
    }
    let hi = w1.min(&(&m + &one)).clone();
    let l = squeeze(&cur.fract(), &(w0 - &m), &(&hi - &m))?;
    w.push(Atom::F(l));
    let y = ctx.eval(&w)?.eval(x)?;
    if &y <= w0 || &y >= w1 {
        return Err(Error::ConstructionFailed(format!("{x} landed at {y}")));
    }
    Ok(w)
}

/// `f = g·r` in `F_η` with `g` the identity on `[0, 2δ]` and `r` the
/// identity around `1/2 · f`.
///
/// `g` copies `f` on `[1/2 - δ, 1/2 + δ]` and fills the gaps with cone
/// matchings; these exist because `x` and `x·f` share an orbit class.
fn split_stable(f: &CompactPL, e: u32) -> Result<(CompactPL, CompactPL)> {
    let one = Rational::one();
    let c = Rational::new(1, 2);
    let three = Rational::integer(3);
    let mut d = Rational::one();
    let (lo, hi) = loop {
        d = &d / &Rational::integer(e as i64);
        let lo = &c - &d;
        let hi = &c + &d;
        let flo = f.eval(&lo)?;
        let fhi = f.eval(&hi)?;
        if lo > &three * &d && flo > &three * &d && hi < &one - &d && fhi < &one - &d {
            break (lo, hi);
        }
    };
    let edge = &d + &d;
    let g = IntervalMap::concat_all(&[
        IntervalMap::identity_on(Rational::zero(), edge.clone()),
        nary_map(&edge, &lo, &edge, &f.eval(&lo)?, e)?,
        f.as_interval().restrict(&lo, &hi)?,
        nary_map(&hi, &one, &f.eval(&hi)?, &one, e)?,
    ])?;
    let g = CompactPL::from_interval_map(g)?;
    let r = g.inverse().compose(f);
    Ok((g, r))
}

/// Rewrites atoms so each evaluates to a map fixing some interval.
fn stable_atoms(ctx: &GammaContext, atom: &Atom) -> Result<Vec<Atom>> {
    let single = Word::new(ctx.n, ctx.depth, vec![atom.clone()]);
    let k = ctx.eval(&single)?;
    if k.is_identity() || k.support().stable_hull().is_some() {
        return Ok(vec![atom.clone()]);
    }
    match atom {
        Atom::F(f) => {
            let (g, r) = split_stable(f, ctx.eta())?;
            Ok(vec![Atom::F(g), Atom::F(r)])
        }
        _ => {
            let mut out = vec![];
            for a in factor(ctx, &k)?.atoms {
                match &a {
                    Atom::F(f) if PeriodicPL::diagonal(f).support().stable_hull().is_none() => {
                        let (g, r) = split_stable(f, ctx.eta())?;
                        out.extend([Atom::F(g), Atom::F(r)]);
                    }
                    _ => out.push(a),
                }
            }
            Ok(out)
        }
    }
}

/// A commutator word agreeing with `g` on `[i0, i1] + Z`.
///
/// Each letter `k` is replaced by `[k1, k]`, where `k1` contracts the
/// support of `k` into a gap of the current image of the interval; on that
/// image the commutator acts exactly as `k`. Letters moving every
/// non-integer point are first split into letters that fix an interval.
pub fn conj_in_q(ctx: &GammaContext, g: &Word, i0: &Rational, i1: &Rational) -> Result<Word> {
    if i1 < i0 {
        return Err(Error::OutOfRange(format!("[{i0}, {i1}]")));
    }
    if &(i1 - i0) >= &Rational::one() {
        return Err(Error::TooWide(format!("[{i0}, {i1}]")));
    }
    let mut out = Word::identity(ctx.n, ctx.depth);
    let mut h = PeriodicPL::identity();
    let mut atoms = vec![];
    for atom in &g.atoms {
        atoms.extend(stable_atoms(ctx, atom)?);
    }
    for atom in &atoms {
        let single = Word::new(ctx.n, ctx.depth, vec![atom.clone()]);
        let k = ctx.eval(&single)?;
        if k.is_identity() {
            continue;
        }
        let (s0, s1) = k
            .support()
            .stable_hull()
            .ok_or_else(|| Error::ConstructionFailed(format!("support of {atom} has no fixed interval")))?;
        let j0 = h.eval(i0)?;
        let j1 = h.eval(i1)?;
        if disjoint_mod1(&j0, &j1, &s0, &s1) {
            continue;
        }
        let gap = &Rational::one() - &(&j1 - &j0);
        let third = &gap / &Rational::integer(3);
        let v0 = &j1 + &third;
        let v1 = &v0 + &third;
        let k1 = contract(ctx, &s0, &s1, &v0, &v1)?;
        let comm = ctx.eval(&k1)?.commutator(&k);
        h = h.compose(&comm);
        out.push(Atom::Comm(k1, single));
    }
    if !h.agree_on(&ctx.eval(g)?, i0, i1) {
        return Err(Error::ConstructionFailed("certificate disagrees on the interval".into()));
    }
    Ok(out)
}

/// Output of [`simplicity_witness`].
#[derive(Clone, Debug)]
pub struct Witness {
    pub h1: Word,
    pub h2: Word,
    /// The cone `U` supporting both `h1` and `h2`, with `(U+Z)·f` disjoint from `U+Z`.
    pub cone: (Rational, Rational),
    pub point: Rational,
}

/// Distance from `t` to the nearest integer.
fn dist_z(t: &Rational) -> Rational {
    let f = t.fract();
    let g = &Rational::one() - &f;
    f.min(g)
}

/// Commutators `h1`, `h2` of `F_η` supported near a point moved by `f`
/// with `[h1, [f, h2]] = [h1, h2] ≠ 1`.
pub fn simplicity_witness(ctx: &GammaContext, f: &Word) -> Result<Witness> {
    if !f.is_q_certified() {
        return Err(Error::InvalidMap("word is not a product of commutators".into()));
    }
    let fm = ctx.eval(f)?;
    if fm.is_identity() {
        return Err(Error::TrivialInput);
    }
    let pts = fm.points();
    let mut cands: Vec<Rational> = pts[1..pts.len() - 1].iter().map(|p| p.0.clone()).collect();
    cands.extend(pts.windows(2).map(|w| w[0].0.midpoint(&w[1].0)));
    let mut best: Option<(Rational, Rational)> = None;
    for x in cands {
        let d = dist_z(&(&fm.eval(&x)? - &x));
        if d.is_positive() && best.as_ref().map_or(true, |(_, bd)| &d > bd) {
            best = Some((x, d));
        }
    }
    let (x, delta) = best.ok_or_else(|| Error::ConstructionFailed("map moves no point off x+Z".into()))?;
    let lip = fm.slopes().into_iter().max().expect("nonempty");
    let two = Rational::integer(2);
    let r = (&delta / &(&two * &(&lip + &Rational::one())))
        .min(&x / &two)
        .min(&(&Rational::one() - &x) / &two);
    let e = ctx.eta();
    let mut unit = Rational::one();
    while &(&two * &unit) >= &r {
        unit = &unit / &Rational::integer(e as i64);
    }
    let c0 = &Rational::from_bigint(((&x - &r) / &unit).floor() + 1i32) * &unit;
    let c1 = &c0 + &unit;
    if !disjoint_mod1(&fm.eval(&c0)?, &fm.eval(&c1)?, &c0, &c1) {
        return Err(Error::ConstructionFailed("cone is not displaced".into()));
    }
    let embed = |i: usize| -> Result<Word> {
        let p = cone_embed(&ctx.chain.psis[i], &c0, &c1, e)?;
        Ok(Word::new(ctx.n, ctx.depth, vec![Atom::F(p)]))
    };
    let comm = |a: Word, b: Word| Word::new(ctx.n, ctx.depth, vec![Atom::Comm(a, b)]);
    let pairs = [((0, 1), (1, 2)), ((1, 2), (2, 3)), ((0, 1), (0, 2)), ((0, 2), (1, 3))];
    for ((a, b), (c, d)) in pairs {
        let h1 = comm(embed(a)?, embed(b)?);
        let h2 = comm(embed(c)?, embed(d)?);
        let m1 = ctx.eval(&h1)?;
        let m2 = ctx.eval(&h2)?;
        let lhs = m1.commutator(&m2);
        if lhs.is_identity() {
            continue;
        }
        let rhs = m1.commutator(&fm.commutator(&m2));
        if rhs != lhs {
            return Err(Error::ConstructionFailed("witness identity failed".into()));
        }
        return Ok(Witness {
            h1,
            h2,
            cone: (c0, c1),
            point: x,
        });
    }
    Err(Error::ConstructionFailed("no non-commuting pair found".into()))
}

/// The commutators `[ψ_i, ψ_j]` for `i < j` together with `[ξ, ψ_1]` and
/// `[ξ, ψ_η]`, each checked to fix an open subinterval of `(0, 1)`.
pub fn normal_gen_set(ctx: &GammaContext) -> Result<Vec<Word>> {
    let gen = |a: Atom| Word::new(ctx.n, ctx.depth, vec![a]);
    let psi = |i: usize| gen(Atom::F(ctx.chain.psis[i].clone()));
    let comm = |a: Word, b: Word| gen(Atom::Comm(a, b));
    let k = ctx.chain.psis.len();
    let mut out = vec![];
    for i in 0..k {
        for j in i + 1..k {
            out.push(comm(psi(i), psi(j)));
        }
    }
    out.push(comm(gen(Atom::Xi(1)), psi(0)));
    out.push(comm(gen(Atom::Xi(1)), psi(k - 1)));
    for w in &out {
        let s = ctx.eval(w)?.support();
        if !s.is_empty() && s.stable_hull().is_none() {
            return Err(Error::ConstructionFailed(format!("{w} is not stably supported")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gammaq::special_in_q;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn contract_examples() {
        let ctx = GammaContext::new(2).unwrap();
        let w = contract(&ctx, &r("1/4"), &r("3/4"), &r("1/16"), &r("1/8")).unwrap();
        let f = ctx.eval(&w).unwrap();
        assert!(inside_mod1(&f.eval(&r("1/4")).unwrap(), &f.eval(&r("3/4")).unwrap(), &r("1/16"), &r("1/8")));
        assert!(contract(&ctx, &r("1/4"), &r("1/3"), &r("0"), &r("1/2")).unwrap().is_empty());
        assert!(matches!(contract(&ctx, &r("0"), &r("1"), &r("0"), &r("1/2")), Err(Error::TooWide(_))));
        for (a, b) in [("-1/3", "1/5"), ("0", "1/2"), ("1/2", "1"), ("7/10", "13/10")] {
            contract(&ctx, &r(a), &r(b), &r("2/5"), &r("3/7")).unwrap();
        }
    }

    #[test]
    fn move_into_examples() {
        let ctx = GammaContext::new(2).unwrap();
        for (x, a, b) in [("0", "5/2", "8/3"), ("1/7", "-3", "-29/10"), ("2", "2/5", "1/2"), ("-4/3", "-4/3", "-1")] {
            move_into(&ctx, &r(x), &r(a), &r(b)).unwrap();
        }
    }

    #[test]
    fn conj_single_generator() {
        let ctx = GammaContext::new(2).unwrap();
        for i in 0..6 {
            let g = Word::new(2, ctx.depth, vec![Atom::F(ctx.chain.psis[i].clone())]);
            let h = conj_in_q(&ctx, &g, &r("1/10"), &r("2/5")).unwrap();
            assert!(h.is_q_certified());
        }
        let empty = Word::identity(2, ctx.depth);
        assert!(conj_in_q(&ctx, &empty, &r("0"), &r("1/2")).unwrap().is_empty());
    }

    #[test]
    fn conj_with_fully_supported_letters() {
        let ctx = GammaContext::new(2).unwrap();
        let g = Word::parse("word n=2 k=3: XI F{0,0;5/36,5/6;1/6,31/36;1,1} COMM(XI,F{0,0;5/36,5/6;1/6,31/36;1,1})")
            .unwrap();
        for (a, b) in [("1/10", "2/5"), ("-1/8", "1/3"), ("2/3", "7/6")] {
            let h = conj_in_q(&ctx, &g, &r(a), &r(b)).unwrap();
            assert!(h.is_q_certified());
            assert!(ctx.eval(&h).unwrap().agree_on(&ctx.eval(&g).unwrap(), &r(a), &r(b)));
        }
        let f = CompactPL::new(vec![(r("0"), r("0")), (r("5/36"), r("5/6")), (r("1/6"), r("31/36")), (r("1"), r("1"))])
            .unwrap();
        let (g, h) = split_stable(&f, 6).unwrap();
        assert_eq!(g.compose(&h), f);
    }

    #[test]
    fn witness_for_special_commutator() {
        let f = special_in_q(2, &r("1/5")).unwrap();
        let ctx = GammaContext::for_word(&f).unwrap();
        let wit = simplicity_witness(&ctx, &f).unwrap();
        let m1 = ctx.eval(&wit.h1).unwrap();
        let m2 = ctx.eval(&wit.h2).unwrap();
        assert!(!m1.commutator(&m2).is_identity());
        let id = Word::new(2, ctx.depth, vec![Atom::Comm(Word::identity(2, ctx.depth), Word::identity(2, ctx.depth))]);
        assert_eq!(simplicity_witness(&ctx, &id).unwrap_err(), Error::TrivialInput);
    }

    #[test]
    fn normal_generators() {
        let ctx = GammaContext::new(2).unwrap();
        let z = normal_gen_set(&ctx).unwrap();
        assert_eq!(z.len(), 17);
        // far-apart chain members commute
        assert!(ctx.psi(0).commutator(&ctx.psi(2)).is_identity());
        assert!(ctx.xi.commutator(&ctx.psi(1)).is_identity());
    }
}
