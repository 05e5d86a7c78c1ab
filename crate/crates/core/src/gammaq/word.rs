use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::plmap::{CompactPL, PeriodicPL, PlHomeo};

/// One letter of a word in `Γ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `ξ` or its inverse (`±1`).
    Xi(i8),
    /// The diagonal copy of an element of `F_η`.
    F(CompactPL),
    /// `[a, b] = a^{-1} b^{-1} a b`.
    Comm(Word, Word),
}

/// A product of atoms read left to right, so the first atom acts first.
///
/// `depth` fixes which `ξ` the `Xi` atoms mean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub n: u32,
    pub depth: u32,
    pub atoms: Vec<Atom>,
}

impl Atom {
    pub fn inverse(&self) -> Atom {
        match self {
            Atom::Xi(s) => Atom::Xi(-s),
            Atom::F(f) => Atom::F(f.inverse()),
            Atom::Comm(a, b) => Atom::Comm(b.clone(), a.clone()),
        }
    }

    fn eval_with(&self, xi: &PeriodicPL, xi_inv: &PeriodicPL) -> PeriodicPL {
        match self {
            Atom::Xi(s) if *s > 0 => xi.clone(),
            Atom::Xi(_) => xi_inv.clone(),
            Atom::F(f) => PeriodicPL::diagonal(f),
            Atom::Comm(a, b) => a.eval_with(xi, xi_inv).commutator(&b.eval_with(xi, xi_inv)),
        }
    }
}

impl Word {
    pub fn new(n: u32, depth: u32, atoms: Vec<Atom>) -> Self {
        Word { n, depth, atoms }
    }

    pub fn identity(n: u32, depth: u32) -> Self {
        Word::new(n, depth, vec![])
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn push(&mut self, a: Atom) {
        self.atoms.push(a);
    }

    pub fn then(&self, other: &Word) -> Word {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Word::new(self.n, self.depth, atoms)
    }

    pub fn inverse(&self) -> Word {
        Word::new(
            self.n,
            self.depth,
            self.atoms.iter().rev().map(Atom::inverse).collect(),
        )
    }

    /// Every atom is a commutator, which certifies membership in `Q_n`.
    pub fn is_q_certified(&self) -> bool {
        self.atoms.iter().all(|a| matches!(a, Atom::Comm(..)))
    }

    pub fn eval_with(&self, xi: &PeriodicPL, xi_inv: &PeriodicPL) -> PeriodicPL {
        self.atoms
            .iter()
            .fold(PeriodicPL::identity(), |acc, a| acc.compose(&a.eval_with(xi, xi_inv)))
    }

    /// `word n=N k=K: ATOMS`.
    pub fn render(&self) -> String {
        format!("word n={} k={}: {}", self.n, self.depth, self.body())
    }

    fn body(&self) -> String {
        if self.atoms.is_empty() {
            return "id".into();
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        parts.join(" ")
    }

    pub fn parse(text: &str) -> Result<Word> {
        let text = text.trim();
        let (head, body) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse("missing ':' after word header".into()))?;
        let mut n = None;
        let mut depth = None;
        let mut fields = head.split_whitespace();
        if fields.next() != Some("word") {
            return Err(Error::Parse("word header must start with 'word'".into()));
        }
        for f in fields {
            let (k, v) = f
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field {f}")))?;
            let v: u32 = v.parse().map_err(|_| Error::Parse(format!("bad number {v}")))?;
            match k {
                "n" => n = Some(v),
                "k" => depth = Some(v),
                _ => return Err(Error::Parse(format!("unknown header field {k}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing n".into()))?;
        let depth = depth.unwrap_or_else(|| super::default_depth(n));
        let mut p = Parser {
            s: body.as_bytes(),
            i: 0,
            n,
            depth,
        };
        let w = p.word()?;
        p.skip_ws();
        if p.i != p.s.len() {
            return Err(Error::Parse(format!("trailing input at byte {}", p.i)));
        }
        Ok(w)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Xi(s) if *s > 0 => write!(f, "XI"),
            Atom::Xi(_) => write!(f, "XI'"),
            Atom::F(m) => {
                let pts: Vec<String> = m.points().iter().map(|(x, y)| format!("{x},{y}")).collect();
                write!(f, "F{{{}}}", pts.join(";"))
            }
            Atom::Comm(a, b) => write!(f, "COMM({},{})", a.body(), b.body()),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    n: u32,
    depth: u32,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            self.i += lit.len();
            true
        } else {
            false
        }
    }

    fn at_word_end(&self) -> bool {
        self.i >= self.s.len() || matches!(self.s[self.i], b',' | b')')
    }

    fn word(&mut self) -> Result<Word> {
        let mut atoms = vec![];
        self.skip_ws();
        if self.eat("id") {
            self.skip_ws();
            return Ok(Word::new(self.n, self.depth, atoms));
        }
        loop {
            self.skip_ws();
            if self.at_word_end() {
                break;
            }
            atoms.push(self.atom()?);
        }
        Ok(Word::new(self.n, self.depth, atoms))
    }

    fn atom(&mut self) -> Result<Atom> {
        if self.eat("XI'") {
            return Ok(Atom::Xi(-1));
        }
        if self.eat("XI") {
            return Ok(Atom::Xi(1));
        }
        if self.eat("COMM(") {
            let a = self.word()?;
            if !self.eat(",") {
                return Err(Error::Parse(format!("expected ',' at byte {}", self.i)));
            }
            let b = self.word()?;
            if !self.eat(")") {
                return Err(Error::Parse(format!("expected ')' at byte {}", self.i)));
            }
            return Ok(Atom::Comm(a, b));
        }
        if self.eat("F{") {
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i] != b'}' {
                self.i += 1;
            }
            if self.i >= self.s.len() {
                return Err(Error::Parse("unterminated F{".into()));
            }
            let inner = std::str::from_utf8(&self.s[start..self.i]).expect("ascii input");
            self.i += 1;
            let mut pts = vec![];
            for pair in inner.split(';') {
                let (x, y) = pair
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad point {pair}")))?;
                pts.push((x.parse::<Rational>()?, y.parse::<Rational>()?));
            }
            let f = CompactPL::new(pts)?;
            if !crate::thompson::member_fn(&f, super::eta(self.n)) {
                return Err(Error::NotInFEta(inner.to_string()));
            }
            return Ok(Atom::F(f));
        }
        Err(Error::Parse(format!("unknown atom at byte {}", self.i)))
    }
}
