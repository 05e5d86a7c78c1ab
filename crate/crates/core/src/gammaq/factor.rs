use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::plmap::{CompactPL, PeriodicPL, PlHomeo};
use crate::thompson::{class_of, move_point, point_of_class};

use super::special::mush;
use super::word::{Atom, Word};
use super::{member_gamma, stab0_project, GammaContext};

fn push_f(atoms: &mut Vec<Atom>, f: CompactPL) {
    if !f.is_identity() {
        atoms.push(Atom::F(f));
    }
}

/// An `F_η` element moving the fractional part of `x` into `(lo, hi)`.
fn nudge(x: &Rational, lo: &Rational, hi: &Rational, e: u32) -> Result<CompactPL> {
    let t = x.fract();
    if &t > lo && &t < hi {
        return Ok(CompactPL::identity());
    }
    let target = point_of_class(lo, hi, class_of(&t, e)?, e);
    move_point(&t, &target, e)
}

/// Writes `g` in `Γ_n` as a word in `ξ^{±1}` and elements of `F_η`.
///
/// First `0·g` is walked into `[0, 1)` one period at a time, then the
/// result is mushed to a special element, its value at 0 is moved onto
/// `0·ξ`, and what remains fixes 0.
pub fn factor(ctx: &GammaContext, g: &PeriodicPL) -> Result<Word> {
    member_gamma(g, ctx.n)?;
    let e = ctx.eta();
    let zero = Rational::zero();
    let one = Rational::one();
    let y_xi = ctx.xi.eval(&zero)?;
    let z_xi = ctx.xi_inv.eval(&zero)?;
    let mut walk: Vec<Atom> = vec![];
    let mut cur = g.clone();
    loop {
        let x = cur.eval(&zero)?;
        if !x.is_negative() && x < one {
            break;
        }
        if x.is_integer() {
            let s = if x.is_positive() { -1 } else { 1 };
            walk.push(Atom::Xi(s));
            cur = cur.compose(if s > 0 { &ctx.xi } else { &ctx.xi_inv });
            continue;
        }
        let (l, s) = if x.is_positive() {
            (nudge(&x, &zero, &y_xi, e)?, -1)
        } else {
            (nudge(&x, &(&one + &z_xi), &one, e)?, 1)
        };
        cur = cur
            .compose(&PeriodicPL::diagonal(&l))
            .compose(if s > 0 { &ctx.xi } else { &ctx.xi_inv });
        push_f(&mut walk, l);
        walk.push(Atom::Xi(s));
    }
    let back = Word::new(ctx.n, ctx.depth, walk).inverse();
    let mut atoms = vec![];
    if cur.eval(&zero)?.is_zero() {
        push_f(&mut atoms, stab0_project(&cur, ctx.n)?);
    } else {
        let f2 = mush(&cur, ctx.n)?;
        let h = PeriodicPL::diagonal(&f2).inverse().compose(&cur);
        let f3 = move_point(&h.eval(&zero)?, &y_xi, e)
            .map_err(|err| Error::ConstructionFailed(format!("transport to 0·ξ: {err}")))?;
        let rest = h.compose(&PeriodicPL::diagonal(&f3)).compose(&ctx.xi_inv);
        let e0 = stab0_project(&rest, ctx.n)?;
        push_f(&mut atoms, f2);
        push_f(&mut atoms, e0);
        atoms.push(Atom::Xi(1));
        push_f(&mut atoms, f3.inverse());
    }
    let w = Word::new(ctx.n, ctx.depth, atoms).then(&back);
    if &ctx.eval(&w)? != g {
        return Err(Error::ConstructionFailed("factorization does not evaluate back".into()));
    }
    Ok(w)
}
