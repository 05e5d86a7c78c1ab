//! Property suites behind `qn verify`.

use std::collections::{HashSet, VecDeque};

use qn_core::exact::{in_ring, nadic_residue};
use qn_core::gammaq::{
    belk_transform, conj_in_q, default_depth, eta, factor, is_special, kappa, kappa_inv, member_gamma, mush,
    simplicity_witness, special_in_q, translation_number, xi_build, Atom, GammaContext, Word,
};
use qn_core::plmap::text::{parse_block, PlBlock};
use qn_core::plmap::{CompactPL, PeriodicPL, PlHomeo, Side};
use qn_core::thompson::{
    chain_generators, class_of, fprime_necessary, member_fn, orbit_class, orbit_map, presentation_relation_holds,
    tuple_transport, PairDiagram, Subdivision,
};
use qn_core::{Error, Rational, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gen;

pub const SUITES: [&str; 13] = [
    "axioms",
    "breakpoints-mod",
    "orbits",
    "transport",
    "gamma-membership",
    "special",
    "factorization",
    "relations",
    "rotnum",
    "conj-q",
    "witness",
    "belk",
    "chain",
];

pub const DEFAULT_SEED: u64 = 0x5eed_2019;

#[derive(Clone, Debug)]
pub struct Params {
    pub n: u32,
    pub seed: u64,
    pub depth: u32,
    pub max_index: usize,
    pub m: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            n: 2,
            seed: DEFAULT_SEED,
            depth: 3,
            max_index: 6,
            m: 32,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn new(suite: &str) -> Self {
        Report {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Counts a case whose construction itself may fail.
    fn attempt(&mut self, label: &str, r: Result<bool>) {
        match r {
            Ok(ok) => self.check(ok, || format!("{label}: property violated")),
            Err(e) => self.check(false, || format!("{label}: {}: {e}", e.token())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Summary line plus up to five failure messages.
    pub fn render(&self) -> String {
        let mut s = format!(
            "suite {}: cases={} failures={}\n",
            self.suite,
            self.cases,
            self.failures.len()
        );
        for f in self.failures.iter().take(5) {
            s.push_str("  ");
            s.push_str(f);
            s.push('\n');
        }
        s
    }
}

pub fn run_suite(name: &str, p: &Params) -> Option<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let rng = &mut rng;
    let report = match name {
        "axioms" => axioms(p, rng),
        "breakpoints-mod" => breakpoints_mod(p),
        "orbits" => orbits(p, rng),
        "transport" => transport(p, rng),
        "gamma-membership" => gamma_membership(p, rng),
        "special" => special(p, rng),
        "factorization" => factorization(p, rng),
        "relations" => relations(p),
        "rotnum" => rotnum(p, rng),
        "conj-q" => conj_q(p, rng),
        "witness" => witness(p, rng),
        "belk" => belk(p, rng),
        "chain" => chain(p),
        _ => return None,
    };
    Some(report)
}

fn ctx_for(n: u32) -> GammaContext {
    GammaContext::new(n).expect("valid base")
}

fn axioms(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("axioms");
    let gens = gen::fn_generators(p.n, 4);
    let ctx = ctx_for(p.n);
    for case in 0..1000 {
        let f = gen::fn_word(rng, &gens, 4);
        let g = gen::fn_word(rng, &gens, 4);
        let h = gen::fn_word(rng, &gens, 4);
        r.check(f.compose(&g).compose(&h) == f.compose(&g.compose(&h)), || {
            format!("case {case}: compact associativity")
        });
        r.check(f.compose(&f.inverse()).is_identity(), || format!("case {case}: f f^-1"));
        r.check(f.inverse().inverse() == f, || format!("case {case}: double inverse"));
        r.check(CompactPL::identity().compose(&f) == f, || format!("case {case}: identity"));
        r.check(CompactPL::new(f.points().to_vec()).ok() == Some(f.clone()), || {
            format!("case {case}: canonical form not idempotent")
        });
        let block = PlBlock::compact(p.n, f.clone());
        r.check(parse_block(&block.render()).ok() == Some(block), || {
            format!("case {case}: text round trip")
        });
        r.attempt(
            &format!("case {case}: pair round trip"),
            PairDiagram::from_map(&f, p.n).map(|d| d.to_map() == f),
        );
        let a = ctx.eval(&gen::gamma_word(rng, &ctx, 3)).expect("context word");
        let b = ctx.eval(&gen::gamma_word(rng, &ctx, 3)).expect("context word");
        let c = ctx.eval(&gen::gamma_word(rng, &ctx, 3)).expect("context word");
        r.check(a.compose(&b).compose(&c) == a.compose(&b.compose(&c)), || {
            format!("case {case}: periodic associativity")
        });
        r.check(a.compose(&a.inverse()).is_identity(), || format!("case {case}: periodic inverse"));
        let pb = PlBlock::periodic(p.n, a.clone());
        r.check(parse_block(&pb.render()).ok() == Some(pb), || {
            format!("case {case}: periodic text round trip")
        });
        let x = Rational::new(rng.gen_range(-50..50), rng.gen_range(1..40));
        r.check(a.eval_inv(&a.eval(&x).unwrap()).unwrap() == x, || {
            format!("case {case}: eval_inv at {x}")
        });
    }
    r
}

/// Every subdivision reachable from the trivial one in at most `depth` moves.
fn reachable(n: u32, depth: u32) -> Vec<Subdivision> {
    let mut seen: HashSet<Subdivision> = HashSet::new();
    let mut order = vec![];
    let mut queue = VecDeque::from([(Subdivision::trivial(n), 0u32)]);
    seen.insert(Subdivision::trivial(n));
    while let Some((s, d)) = queue.pop_front() {
        order.push(s.clone());
        if d == depth {
            continue;
        }
        for k in 0..s.len() {
            let t = s.tau(k).expect("index in range");
            if seen.insert(t.clone()) {
                queue.push_back((t, d + 1));
            }
        }
    }
    order
}

fn breakpoints_mod(p: &Params) -> Report {
    let mut r = Report::new("breakpoints-mod");
    let n = p.n;
    let m = (n as i64 - 1).max(1);
    let res = |x: &Rational| nadic_residue(x, n).expect("n-adic") as i64;
    let congruent = |a: i64, b: i64| (a - b).rem_euclid(m) == 0;
    let subs = reachable(n, p.depth);
    for s in &subs {
        let ends = s.endpoints();
        for w in ends.windows(2) {
            r.check(congruent(res(&w[1]), res(&w[0]) + 1), || format!("cone [{}, {}] in {s}", w[0], w[1]));
        }
        for (i, x) in s.cuts().iter().enumerate() {
            let want = (i as i64).rem_euclid(m) + 1;
            let got = class_of(x, n).map(|c| c as i64).unwrap_or(-1);
            r.check(got == want, || format!("cut {x} at position {} in {s}", i + 1));
        }
        for a in 0..ends.len() {
            for b in a + 1..ends.len() {
                let l = (b - a) as i64;
                r.check(congruent(res(&ends[b]) - res(&ends[a]), l), || {
                    format!("[{}, {}] with {l} pieces in {s}", ends[a], ends[b])
                });
            }
        }
    }
    for s1 in &subs {
        for s2 in &subs {
            for (i, x) in s1.cuts().iter().enumerate() {
                if let Some(j) = s2.position(x) {
                    r.check(congruent(i as i64 + 1, j as i64), || format!("{x} in {s1} and {s2}"));
                }
            }
            if s1.len() == s2.len() {
                let f = match PairDiagram::new(s1.clone(), s2.clone()) {
                    Ok(d) => d.to_map(),
                    Err(e) => {
                        r.check(false, || format!("pair {s1} / {s2}: {e}"));
                        continue;
                    }
                };
                for x in s1.cuts() {
                    let y = f.eval(x).expect("inside [0,1]");
                    r.check(congruent(res(x), res(&y)), || format!("{x} -> {y} under {s1} / {s2}"));
                }
            }
        }
    }
    r
}

fn orbits(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("orbits");
    let n = p.n;
    for k in 1..=p.depth.min(4) {
        let d = (n as i64).pow(k);
        for num in 1..d {
            let x = Rational::new(num, d);
            r.attempt(
                &format!("orbit_map({x})"),
                (|| {
                    let f = orbit_map(&x, n)?;
                    let i = orbit_class(&x, n)?;
                    Ok(member_fn(&f, n) && f.eval(&x)? == Rational::new(i as i64, n as i64))
                })(),
            );
        }
    }
    let gens = gen::fn_generators(n, 4);
    for case in 0..500 {
        let g = gen::fn_word(rng, &gens, 6);
        let x = gen::nadic_point(rng, n, 4);
        r.attempt(
            &format!("case {case}: class of {x}"),
            (|| Ok(orbit_class(&g.eval(&x)?, n)? == orbit_class(&x, n)?))(),
        );
    }
    r
}

fn transport(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("transport");
    let n = p.n;
    for case in 0..200 {
        let len = rng.gen_range(1..=4);
        let s = gen::nadic_tuple(rng, n, p.depth.max(2), len);
        let t = gen::matching_tuple(rng, &s, n, p.depth.max(2));
        r.attempt(
            &format!("case {case}: {s:?} -> {t:?}"),
            (|| {
                let cm = tuple_transport(&s, &t, n)?;
                let mut ok = cm.verify() && fprime_necessary(&cm.map);
                ok &= cm.commutators.iter().all(|(a, b)| member_fn(a, n) && member_fn(b, n));
                for (a, b) in s.iter().zip(&t) {
                    ok &= &cm.map.eval(a)? == b;
                }
                Ok(ok)
            })(),
        );
    }
    r
}

fn gamma_membership(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("gamma-membership");
    let n = p.n;
    let ctx = ctx_for(n);
    r.check(member_gamma(&PeriodicPL::identity(), n).is_ok(), || "identity rejected".into());
    r.check(member_gamma(&ctx.xi, n).is_ok(), || "xi rejected".into());
    r.check(
        matches!(
            member_gamma(&PeriodicPL::translation(Rational::one()), n),
            Err(Error::CrossingCountMismatch(_))
        ),
        || "unit translation not rejected by the crossing test".into(),
    );
    for case in 0..500 {
        let f = ctx.eval(&gen::gamma_word(rng, &ctx, 4)).expect("context word");
        let g = ctx.eval(&gen::gamma_word(rng, &ctx, 4)).expect("context word");
        r.check(member_gamma(&f.compose(&g), n).is_ok(), || format!("case {case}: product"));
        r.check(member_gamma(&f.inverse(), n).is_ok(), || format!("case {case}: inverse"));
    }
    if n == 2 {
        let xi = xi_build(2, 2).expect("depth 2");
        r.check(xi.eval(&Rational::zero()).ok() == Some(Rational::new(5, 18)), || {
            "0·xi is not 5/18".into()
        });
        let probes = [Rational::new(-11, 72), Rational::new(-1, 72), Rational::new(1, 6)];
        let want = [Rational::integer(6), Rational::integer(2), Rational::new(1, 6)];
        for (x, s) in probes.iter().zip(&want) {
            r.check(xi.slope(x, Side::Right).ok().as_ref() == Some(s), || format!("slope at {x} is not {s}"));
        }
    }
    r
}

/// Each support interval lies in `(-ε, ε) + Z` or `(1/2 - ε, 1/2 + ε) + Z`.
fn support_near(f: &PeriodicPL, eps: &Rational) -> bool {
    let half = Rational::new(1, 2);
    f.support().intervals().iter().all(|(a, b)| {
        let k = Rational::from_bigint((a + eps).floor());
        let (a, b) = (a - &k, b - &k);
        let near0 = &a >= &(-eps) && &b <= eps;
        let near1 = &a >= &(&Rational::one() - eps) && &b <= &(&Rational::one() + eps);
        let near_half = &a >= &(&half - eps) && &b <= &(&half + eps);
        near0 || near1 || near_half
    })
}

fn special(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("special");
    let n = p.n;
    let e = eta(n);
    r.attempt("xi special", xi_build(n, default_depth(n)).map(|xi| is_special(&xi, n)));
    r.attempt("xi depth 2 special", xi_build(n, 2).map(|xi| is_special(&xi, n)));
    for eps in [Rational::new(1, 5), Rational::new(1, 10)] {
        r.attempt(
            &format!("special_in_q eps={eps}"),
            (|| {
                let w = special_in_q(n, &eps)?;
                let f = GammaContext::for_word(&w)?.eval(&w)?;
                let shape = w.len() == 1 && matches!(w.atoms[0], Atom::Comm(..));
                Ok(shape
                    && is_special(&f, n)
                    && support_near(&f, &eps)
                    && orbit_class(&f.eval(&Rational::zero())?, e)? == e - 1)
            })(),
        );
    }
    let ctx = ctx_for(n);
    let k = ctx.chain.psis.len();
    let diag_word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(0..4);
        (0..len).fold(PeriodicPL::identity(), |acc, _| {
            let f = ctx.psi(rng.gen_range(0..k));
            if rng.gen_bool(0.5) { acc.compose(&f) } else { acc.compose(&f.inverse()) }
        })
    };
    for case in 0..200 {
        let g = diag_word(rng).compose(&ctx.xi).compose(&diag_word(rng));
        r.attempt(
            &format!("case {case}: mushed element"),
            (|| {
                let m = mush(&g, n)?;
                let h = PeriodicPL::diagonal(&m).inverse().compose(&g);
                Ok(is_special(&h, n) && orbit_class(&h.eval(&Rational::zero())?, e)? == e - 1)
            })(),
        );
    }
    r
}

fn factorization(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("factorization");
    let ctx = ctx_for(p.n);
    r.attempt("identity", factor(&ctx, &PeriodicPL::identity()).map(|w| w.is_empty()));
    for case in 0..500 {
        let g = ctx.eval(&gen::gamma_word(rng, &ctx, 8)).expect("context word");
        r.attempt(
            &format!("case {case}"),
            factor(&ctx, &g).and_then(|w| Ok(ctx.eval(&w)? == g)),
        );
    }
    r
}

fn relations(p: &Params) -> Report {
    let mut r = Report::new("relations");
    for j in 1..=p.max_index {
        for i in 0..j {
            r.attempt(&format!("i={i} j={j}"), presentation_relation_holds(i, j, p.n));
        }
    }
    r
}

fn rotnum(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("rotnum");
    let ctx = ctx_for(p.n);
    let mut fixed = vec![ctx.xi.clone(), ctx.xi_inv.clone()];
    fixed.extend((0..ctx.chain.psis.len()).map(|i| ctx.psi(i)));
    for (i, f) in fixed.iter().enumerate() {
        let t = translation_number(f, p.m, 1);
        r.check(t.exact == Some(Rational::zero()) && t.certificate == Some((1, 0)), || {
            format!("fixed-point input {i} not certified 0")
        });
    }
    for case in 0..100 {
        let f = ctx.eval(&gen::gamma_word(rng, &ctx, 6)).expect("context word");
        for m in [8u64, 16, 32] {
            let a = translation_number(&f, m, 0).estimate;
            let b = translation_number(&f, 2 * m, 0).estimate;
            let bound = Rational::new(3, 2 * m as i64);
            r.check((&a - &b).abs() <= bound, || format!("case {case}: Cauchy bound at m={m}"));
        }
        let t = translation_number(&f, p.m, 6);
        if let Some(tau) = &t.exact {
            r.check((&t.estimate - tau).abs() <= t.error_bound, || format!("case {case}: error bound"));
            for k in [2i64, 3] {
                let tk = translation_number(&f.pow(k), p.m, 6);
                if let Some(v) = tk.exact {
                    r.check(v == tau * &Rational::integer(k), || format!("case {case}: homogeneity k={k}"));
                }
            }
        }
    }
    r
}

fn conj_q(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("conj-q");
    let ctx = ctx_for(p.n);
    for case in 0..100 {
        let g = gen::gamma_word(rng, &ctx, 5);
        let (a, b) = gen::interval(rng, 24);
        r.attempt(
            &format!("case {case}: [{a}, {b}]"),
            (|| {
                let h = conj_in_q(&ctx, &g, &a, &b)?;
                Ok(h.is_q_certified() && ctx.eval(&h)?.agree_on(&ctx.eval(&g)?, &a, &b))
            })(),
        );
    }
    r
}

/// A nontrivial all-commutator word, from one of three constructions.
fn certified_word(rng: &mut ChaCha8Rng, ctx: &GammaContext) -> Result<Word> {
    loop {
        let w = match rng.gen_range(0..3) {
            0 => {
                let a = gen::gamma_word(rng, ctx, 3);
                let b = gen::gamma_word(rng, ctx, 3);
                Word::new(ctx.n, ctx.depth, vec![Atom::Comm(a, b)])
            }
            1 => {
                let eps = Rational::new(1, rng.gen_range(5..12));
                special_in_q(ctx.n, &eps)?
            }
            _ => {
                let g = gen::gamma_word(rng, ctx, 3);
                let (a, b) = gen::interval(rng, 12);
                conj_in_q(ctx, &g, &a, &b)?
            }
        };
        if !GammaContext::for_word(&w)?.eval(&w)?.is_identity() {
            return Ok(w);
        }
    }
}

fn witness(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("witness");
    let ctx = ctx_for(p.n);
    for case in 0..50 {
        r.attempt(
            &format!("case {case}"),
            (|| {
                let f = certified_word(rng, &ctx)?;
                let c = GammaContext::for_word(&f)?;
                let w = simplicity_witness(&c, &f)?;
                let fm = c.eval(&f)?;
                let h1 = c.eval(&w.h1)?;
                let h2 = c.eval(&w.h2)?;
                let lhs = h1.commutator(&h2);
                Ok(!lhs.is_identity() && h1.commutator(&fm.commutator(&h2)) == lhs)
            })(),
        );
    }
    r
}

fn belk(p: &Params, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new("belk");
    let ctx = ctx_for(2);
    let window = p.depth.max(2);
    for case in 0..20 {
        let g = ctx.eval(&gen::gamma_word(rng, &ctx, 4)).expect("context word");
        r.attempt(
            &format!("case {case}"),
            (|| {
                let b = belk_transform(&g, 2, window)?;
                let mut ok = b.map.slopes().iter().all(|s| qn_core::exact::power_of(s, 6).is_some());
                ok &= b.breakpoints().iter().all(|x| in_ring(x, 6));
                let two = Rational::integer(2);
                for t in b.sample_points() {
                    ok &= b.eval(&(&t * &two))? == &b.eval(&t)? * &two;
                    ok &= b.eval(&t)? == kappa_inv(&g.eval(&kappa(&t)?)?);
                }
                Ok(ok)
            })(),
        );
    }
    r
}

fn chain(p: &Params) -> Report {
    let mut r = Report::new("chain");
    r.attempt(
        &format!("n={}", p.n),
        chain_generators(p.n).map(|c| {
            c.chain_ok()
                && c.fast_ok()
                && c.psis.iter().all(|f| member_fn(f, p.n))
                && c.psis.iter().zip(&c.supports).all(|(f, s)| f.support().intervals() == [s.clone()])
        }),
    );
    r
}
