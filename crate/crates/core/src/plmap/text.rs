//! Text blocks: a header line `plmap kind=<kind> n=<int>` followed by one
//! `x y` line per graph point.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::exact::Rational;

use super::{CompactPL, IntervalMap, PeriodicPL};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMap {
    Compact(CompactPL),
    Periodic(PeriodicPL),
    Interval(IntervalMap),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlBlock {
    pub n: u32,
    pub map: AnyMap,
}

impl PlBlock {
    pub fn compact(n: u32, f: CompactPL) -> Self {
        PlBlock { n, map: AnyMap::Compact(f) }
    }

    pub fn periodic(n: u32, f: PeriodicPL) -> Self {
        PlBlock { n, map: AnyMap::Periodic(f) }
    }

    pub fn interval(n: u32, f: IntervalMap) -> Self {
        PlBlock { n, map: AnyMap::Interval(f) }
    }

    pub fn kind(&self) -> &'static str {
        match self.map {
            AnyMap::Compact(_) => "compact",
            AnyMap::Periodic(_) => "periodic",
            AnyMap::Interval(_) => "interval",
        }
    }

    pub fn points(&self) -> &[(Rational, Rational)] {
        match &self.map {
            AnyMap::Compact(f) => f.points(),
            AnyMap::Periodic(f) => f.points(),
            AnyMap::Interval(f) => f.points(),
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("plmap kind={} n={}\n", self.kind(), self.n);
        for (x, y) in self.points() {
            writeln!(s, "{x} {y}").unwrap();
        }
        s
    }

    pub fn into_compact(self) -> Result<CompactPL> {
        match self.map {
            AnyMap::Compact(f) => Ok(f),
            _ => Err(Error::Parse(format!("expected a compact map, got {}", self.kind()))),
        }
    }

    /// Periodic maps pass through; compact maps are lifted diagonally.
    pub fn into_periodic(self) -> Result<PeriodicPL> {
        match self.map {
            AnyMap::Periodic(f) => Ok(f),
            AnyMap::Compact(f) => Ok(PeriodicPL::diagonal(&f)),
            AnyMap::Interval(_) => Err(Error::Parse("expected a periodic map, got interval".into())),
        }
    }
}

fn parse_header(line: &str) -> Result<(String, u32)> {
    let mut words = line.split_whitespace();
    if words.next() != Some("plmap") {
        return Err(Error::Parse(format!("bad header {line:?}")));
    }
    let mut kind = None;
    let mut n = None;
    for w in words {
        match w.split_once('=') {
            Some(("kind", k)) => kind = Some(k.to_string()),
            Some(("n", v)) => {
                n = Some(v.parse::<u32>().map_err(|_| Error::Parse(format!("bad n in {line:?}")))?)
            }
            _ => return Err(Error::Parse(format!("unknown field {w:?}"))),
        }
    }
    match (kind, n) {
        (Some(k), Some(n)) => Ok((k, n)),
        _ => Err(Error::Parse(format!("header needs kind and n: {line:?}"))),
    }
}

fn build(kind: &str, n: u32, pts: Vec<(Rational, Rational)>) -> Result<PlBlock> {
    let map = match kind {
        "compact" => AnyMap::Compact(CompactPL::new(pts)?),
        "periodic" => AnyMap::Periodic(PeriodicPL::new(pts)?),
        "interval" => AnyMap::Interval(IntervalMap::new(pts)?),
        other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
    };
    Ok(PlBlock { n, map })
}

/// Parses every block in `text`. Blank lines and `#` comments are ignored.
pub fn parse_blocks(text: &str) -> Result<Vec<PlBlock>> {
    let mut out = vec![];
    let mut current: Option<(String, u32, Vec<(Rational, Rational)>)> = None;
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with("plmap") {
            if let Some((k, n, pts)) = current.take() {
                out.push(build(&k, n, pts)?);
            }
            let (k, n) = parse_header(line)?;
            current = Some((k, n, vec![]));
            continue;
        }
        let (_, _, pts) = current
            .as_mut()
            .ok_or_else(|| Error::Parse("point before header".into()))?;
        let mut it = line.split_whitespace();
        let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("expected two rationals: {line:?}")));
        };
        pts.push((x.parse()?, y.parse()?));
    }
    if let Some((k, n, pts)) = current.take() {
        out.push(build(&k, n, pts)?);
    }
    Ok(out)
}

pub fn parse_block(text: &str) -> Result<PlBlock> {
    let mut blocks = parse_blocks(text)?;
    if blocks.len() != 1 {
        return Err(Error::Parse(format!("expected one block, found {}", blocks.len())));
    }
    Ok(blocks.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_recanonicalize() {
        let text = "plmap kind=compact n=2\n0 0\n1/4 1/8\n2/4 1/4\n1 1\n";
        let b = parse_block(text).unwrap();
        assert_eq!(b.render(), "plmap kind=compact n=2\n0 0\n1/2 1/4\n1 1\n");
        assert_eq!(parse_block(&b.render()).unwrap(), b);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_block("plmap kind=compact n=2\n0 0\n1 2\n").is_err());
        assert!(parse_block("plmap kind=periodic n=2\n0 0\n1/2 1/2\n1 3/2\n").is_err());
        assert!(parse_block("0 0\n").is_err());
        assert!(parse_block("plmap kind=weird n=2\n0 0\n1 1\n").is_err());
    }
}
