//! The `qn` command line: exact evaluation, membership tests, factorization
//! and the property suites, reading and writing the text block formats.

pub mod gen;
pub mod plot;
pub mod suites;

use std::fmt::Write as _;
use std::io::Read;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qn_core::gammaq::{
    belk_transform, conj_in_q, default_depth, eta, factor, member_gamma, mush, simplicity_witness, special_in_q,
    translation_number, tuple_signature, xi_build, GammaContext, Word,
};
use qn_core::plmap::text::{parse_block, parse_blocks, AnyMap, PlBlock};
use qn_core::plmap::{PeriodicPL, PlHomeo};
use qn_core::thompson::{member_fn, orbit_class, orbit_map, tuple_transport, PairDiagram};
use qn_core::{Error, Rational};

#[derive(Parser, Debug)]
#[command(name = "qn", version, about = "Exact computations in Q_n, Gamma_n and F_n")]
struct Cli {
    /// Base n (the block header's n when omitted).
    #[arg(long, global = true)]
    n: Option<u32>,
    #[arg(long, global = true, default_value_t = suites::DEFAULT_SEED)]
    seed: u64,
    /// Depth of xi, subdivision depth for suites, or Belk window.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Iteration count for translation numbers.
    #[arg(long, global = true, default_value_t = 32)]
    m: u64,
    #[arg(long = "max-index", global = true, default_value_t = 6)]
    max_index: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Value of the map on stdin at a point.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Composite of the two maps on stdin, first one applied first.
    Compose,
    Invert,
    /// Whether the compact map on stdin lies in F_n.
    MemberF,
    /// Membership of the periodic map on stdin in Gamma_n.
    MemberGamma,
    /// Converts a compact map to its reduced pair diagram, or back.
    Pair,
    /// Writes the periodic map on stdin as a word in xi and F_eta.
    Factor,
    /// An F_eta element g with g^-1 f special.
    Mush,
    /// The element xi.
    Xi,
    /// A special element of Q_n as one commutator.
    SpecialQ {
        #[arg(long, default_value = "1/5")]
        eps: String,
    },
    /// Translation number of the periodic map on stdin.
    Rotnum {
        #[arg(long, default_value_t = 8)]
        p: u64,
    },
    OrbitClass {
        #[arg(long)]
        x: String,
    },
    OrbitMap {
        #[arg(long)]
        x: String,
    },
    /// An F_n' element sending one tuple onto another.
    Transport {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// A word sending [u0,u1]+Z into (v0,v1)+Z.
    Contract {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// A commutator word agreeing with the word on stdin on I+Z.
    ConjQ {
        #[arg(long, allow_hyphen_values = true)]
        interval: String,
    },
    /// Witness pair for the commutator word on stdin.
    Witness,
    /// Conjugate of a Gamma_2 element to the positive reals.
    Belk,
    /// Orbit-class signature of a tuple in Z[1/eta].
    Signature {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// CSV or SVG of the map on stdin.
    Plot,
    /// Runs a property suite.
    Verify { suite: String },
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Fail {
    Usage(String),
    Domain(Error),
    Token(&'static str, String, i32),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Fail>;

/// Runs `qn` with `args` (without the program name); stdin is read only by
/// verbs that take input.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("qn".to_string())
        .chain(args.into_iter().map(Into::into))
        .collect();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { status: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    let mut err = String::new();
    match dispatch(&cli, stdin, &mut out, &mut err) {
        Ok(status) => Outcome { status, stdout: out, stderr: err },
        Err(Fail::Usage(msg)) => Outcome {
            status: 2,
            stdout: out,
            stderr: format!("error: {msg}\n"),
        },
        Err(Fail::Domain(e)) => Outcome {
            status: 1,
            stdout: out,
            stderr: format!("error: {}: {e}\n", e.token()),
        },
        Err(Fail::Token(t, msg, status)) => Outcome {
            status,
            stdout: out,
            stderr: format!("error: {t}: {msg}\n"),
        },
    }
}

fn read_all(stdin: &mut dyn Read) -> Res<String> {
    let mut s = String::new();
    stdin
        .read_to_string(&mut s)
        .map_err(|e| Fail::Usage(format!("cannot read stdin: {e}")))?;
    Ok(s)
}

fn rat(s: &str) -> Res<Rational> {
    Ok(s.parse::<Rational>()?)
}

fn rat_list(s: &str) -> Res<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(|t| rat(t.trim())).collect()
}

fn pair_of(s: &str) -> Res<(Rational, Rational)> {
    let v = rat_list(s)?;
    if v.len() != 2 {
        return Err(Fail::Usage(format!("expected two comma-separated rationals, got '{s}'")));
    }
    Ok((v[0].clone(), v[1].clone()))
}

fn periodic_input(cli: &Cli, stdin: &mut dyn Read) -> Res<(u32, PeriodicPL)> {
    let b = parse_block(&read_all(stdin)?)?;
    let n = cli.n.unwrap_or(b.n);
    Ok((n, b.into_periodic()?))
}

fn context(cli: &Cli, n: u32) -> Res<GammaContext> {
    Ok(GammaContext::with_depth(n, cli.depth.unwrap_or_else(|| default_depth(n)))?)
}

fn word_input(stdin: &mut dyn Read) -> Res<Word> {
    Ok(Word::parse(&read_all(stdin)?)?)
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut String, err: &mut String) -> Res<i32> {
    let base = cli.n.unwrap_or(2);
    match &cli.cmd {
        Cmd::Eval { x } => {
            let b = parse_block(&read_all(stdin)?)?;
            let x = rat(x)?;
            let y = match &b.map {
                AnyMap::Compact(f) => f.eval(&x)?,
                AnyMap::Periodic(f) => f.eval(&x)?,
                AnyMap::Interval(f) => f.eval(&x)?,
            };
            writeln!(out, "{y}").unwrap();
        }
        Cmd::Compose => {
            let blocks = parse_blocks(&read_all(stdin)?)?;
            if blocks.len() != 2 {
                return Err(Fail::Usage(format!("compose needs two blocks, got {}", blocks.len())));
            }
            let mut it = blocks.into_iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            let n = cli.n.unwrap_or(a.n);
            let block = match (a.map, b.map) {
                (AnyMap::Compact(f), AnyMap::Compact(g)) => PlBlock::compact(n, f.compose(&g)),
                (AnyMap::Interval(f), AnyMap::Interval(g)) => PlBlock::interval(n, f.then(&g)?),
                (f, g) => {
                    let f = PlBlock { n, map: f }.into_periodic()?;
                    let g = PlBlock { n, map: g }.into_periodic()?;
                    PlBlock::periodic(n, f.compose(&g))
                }
            };
            out.push_str(&block.render());
        }
        Cmd::Invert => {
            let b = parse_block(&read_all(stdin)?)?;
            let n = cli.n.unwrap_or(b.n);
            let block = match b.map {
                AnyMap::Compact(f) => PlBlock::compact(n, f.inverse()),
                AnyMap::Periodic(f) => PlBlock::periodic(n, f.inverse()),
                AnyMap::Interval(f) => PlBlock::interval(n, f.inverse()),
            };
            out.push_str(&block.render());
        }
        Cmd::MemberF => {
            let b = parse_block(&read_all(stdin)?)?;
            let n = cli.n.unwrap_or(b.n);
            let f = b.into_compact()?;
            writeln!(out, "{}", member_fn(&f, n)).unwrap();
        }
        Cmd::MemberGamma => {
            let (n, f) = periodic_input(cli, stdin)?;
            member_gamma(&f, n)?;
            writeln!(out, "member").unwrap();
        }
        Cmd::Pair => {
            let text = read_all(stdin)?;
            if text.trim_start().starts_with("plmap") {
                let b = parse_block(&text)?;
                let n = cli.n.unwrap_or(b.n);
                out.push_str(&PairDiagram::from_map(&b.into_compact()?, n)?.render());
            } else {
                let d = PairDiagram::parse(&text)?;
                out.push_str(&PlBlock::compact(d.n(), d.to_map()).render());
            }
        }
        Cmd::Factor => {
            let (n, f) = periodic_input(cli, stdin)?;
            let ctx = context(cli, n)?;
            writeln!(out, "{}", factor(&ctx, &f)?.render()).unwrap();
        }
        Cmd::Mush => {
            let (n, f) = periodic_input(cli, stdin)?;
            member_gamma(&f, n)?;
            out.push_str(&PlBlock::compact(eta(n), mush(&f, n)?).render());
        }
        Cmd::Xi => {
            let xi = xi_build(base, cli.depth.unwrap_or_else(|| default_depth(base)))?;
            out.push_str(&PlBlock::periodic(base, xi).render());
        }
        Cmd::SpecialQ { eps } => {
            writeln!(out, "{}", special_in_q(base, &rat(eps)?)?.render()).unwrap();
        }
        Cmd::Rotnum { p } => {
            let (n, f) = periodic_input(cli, stdin)?;
            member_gamma(&f, n)?;
            let r = translation_number(&f, cli.m, *p);
            if let (Some(v), Some((p, q))) = (&r.exact, r.certificate) {
                writeln!(out, "exact {v} (p={p},q={q})").unwrap();
            }
            writeln!(out, "estimate {} m={} error_bound={}", r.estimate, r.iterations, r.error_bound).unwrap();
        }
        Cmd::OrbitClass { x } => {
            writeln!(out, "O_{}", orbit_class(&rat(x)?, base)?).unwrap();
        }
        Cmd::OrbitMap { x } => {
            out.push_str(&PlBlock::compact(base, orbit_map(&rat(x)?, base)?).render());
        }
        Cmd::Transport { from, to } => {
            let cm = tuple_transport(&rat_list(from)?, &rat_list(to)?, base)?;
            out.push_str(&PlBlock::compact(base, cm.map.clone()).render());
            writeln!(out, "# certified by {} commutators", cm.commutators.len()).unwrap();
        }
        Cmd::Contract { u, v } => {
            let (u0, u1) = pair_of(u)?;
            let (v0, v1) = pair_of(v)?;
            let ctx = context(cli, base)?;
            writeln!(out, "{}", qn_core::gammaq::contract(&ctx, &u0, &u1, &v0, &v1)?.render()).unwrap();
        }
        Cmd::ConjQ { interval } => {
            let (a, b) = pair_of(interval)?;
            let w = word_input(stdin)?;
            let ctx = GammaContext::for_word(&w)?;
            writeln!(out, "{}", conj_in_q(&ctx, &w, &a, &b)?.render()).unwrap();
        }
        Cmd::Witness => {
            let w = word_input(stdin)?;
            let ctx = GammaContext::for_word(&w)?;
            let wit = simplicity_witness(&ctx, &w)?;
            writeln!(out, "h1 {}", wit.h1.render()).unwrap();
            writeln!(out, "h2 {}", wit.h2.render()).unwrap();
            writeln!(out, "cone [{}, {}] around {}", wit.cone.0, wit.cone.1, wit.point).unwrap();
        }
        Cmd::Belk => {
            let (n, f) = periodic_input(cli, stdin)?;
            member_gamma(&f, n)?;
            let b = belk_transform(&f, n, cli.depth.unwrap_or(3))?;
            out.push_str(&PlBlock::interval(n, b.map).render());
        }
        Cmd::Signature { points } => {
            let sig = tuple_signature(&rat_list(points)?, eta(base))?;
            let parts: Vec<String> = sig.iter().map(|c| format!("O_{c}")).collect();
            writeln!(out, "({})", parts.join(", ")).unwrap();
        }
        Cmd::Plot => {
            let b = parse_block(&read_all(stdin)?)?;
            out.push_str(&match cli.format {
                Format::Csv => plot::csv(b.points()),
                Format::Svg => plot::svg(b.points()),
            });
        }
        Cmd::Verify { suite } => {
            let params = suites::Params {
                n: base,
                seed: cli.seed,
                depth: cli.depth.unwrap_or(3),
                max_index: cli.max_index,
                m: cli.m,
            };
            let start = Instant::now();
            let report = suites::run_suite(suite, &params).ok_or_else(|| {
                Fail::Token("UnknownSuite", format!("'{suite}'; known: {}", suites::SUITES.join(", ")), 2)
            })?;
            out.push_str(&report.render());
            writeln!(err, "elapsed {} ms", start.elapsed().as_millis()).unwrap();
            return Ok(if report.passed() { 0 } else { 1 });
        }
    }
    Ok(0)
}
