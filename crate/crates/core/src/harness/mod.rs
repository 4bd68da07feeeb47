//! Instance generation, batch experiments and gap reports.

mod bench;
mod generate;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use bench::{run_benchmark, run_cases, BenchCase, GapReport, GapRow, RowResult, CSV_HEADER};
pub use generate::{generate, uniform_int, COEFFICIENT_RANGE, WEAK_NOISE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Correlation {
    Uncorrelated,
    Weak,
}

impl Correlation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Correlation::Uncorrelated => "uncorr",
            Correlation::Weak => "weak",
        }
    }
}

impl fmt::Display for Correlation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Correlation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uncorr" | "uncorrelated" => Ok(Correlation::Uncorrelated),
            "weak" => Ok(Correlation::Weak),
            _ => Err(format!("unknown correlation `{s}` (expected uncorr or weak)")),
        }
    }
}

/// Parameters of one generated instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub m: usize,
    pub n: usize,
    pub correlation: Correlation,
    pub seed: u64,
    pub budget_ratio: f64,
}

impl GenSpec {
    pub fn new(m: usize, n: usize, correlation: Correlation, seed: u64) -> Self {
        GenSpec {
            m,
            n,
            correlation,
            seed,
            budget_ratio: 0.5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::InvalidInstance(format!(
                "m and n must be at least 1 (m={}, n={})",
                self.m, self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.budget_ratio) {
            return Err(Error::InvalidInstance(format!(
                "budget ratio must lie in [0, 1], got {}",
                self.budget_ratio
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} n={} corr={} seed={} budget-ratio={}",
            self.m, self.n, self.correlation, self.seed, self.budget_ratio
        )
    }
}

/// Parses a benchmark spec file: one `key=value` line per instance, e.g.
///
/// ```text
/// # family A
/// m=20 n=20 corr=weak seed=1
/// m=1000 n=10 corr=uncorr seed=100 count=10
/// ```
///
/// Keys are `m`, `n`, `corr`, `seed`, `budget-ratio` (default 0.5) and
/// `count` (default 1), which expands to `count` specs with consecutive seeds.
pub fn parse_spec_file(text: &str) -> Result<Vec<GenSpec>> {
    let mut specs = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let n = k + 1;
        let (spec, count) = parse_spec_line(line).map_err(|msg| Error::parse(n, msg))?;
        for offset in 0..count {
            specs.push(GenSpec {
                seed: spec.seed.wrapping_add(offset),
                ..spec
            });
        }
    }
    Ok(specs)
}

fn parse_spec_line(line: &str) -> std::result::Result<(GenSpec, u64), String> {
    let (mut m, mut n, mut corr, mut seed) = (None, None, None, None);
    let mut budget_ratio = 0.5;
    let mut count = 1u64;
    for tok in line.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found `{tok}`"))?;
        let bad = |what: &str| format!("bad {what} `{value}`");
        match key {
            "m" => m = Some(value.parse().map_err(|_| bad("m"))?),
            "n" => n = Some(value.parse().map_err(|_| bad("n"))?),
            "corr" => corr = Some(value.parse::<Correlation>()?),
            "seed" => seed = Some(value.parse().map_err(|_| bad("seed"))?),
            "budget-ratio" | "budget_ratio" => budget_ratio = value.parse().map_err(|_| bad("budget ratio"))?,
            "count" => count = value.parse().map_err(|_| bad("count"))?,
            _ => return Err(format!("unknown key `{key}`")),
        }
    }
    let spec = GenSpec {
        m: m.ok_or("missing m")?,
        n: n.ok_or("missing n")?,
        correlation: corr.ok_or("missing corr")?,
        seed: seed.ok_or("missing seed")?,
        budget_ratio,
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok((spec, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_file_parsing() {
        let text = "# comment\nm=20 n=20 corr=weak seed=7\n\nm=3 n=4 corr=uncorr seed=1 budget-ratio=0.25 count=3\n";
        let specs = parse_spec_file(text).unwrap();
        assert_eq!(specs.len(), 4);
        assert_eq!(specs[0], GenSpec::new(20, 20, Correlation::Weak, 7));
        assert_eq!(specs[3].seed, 3);
        assert_eq!(specs[3].budget_ratio, 0.25);
    }

    #[test]
    fn spec_file_errors_carry_line_numbers() {
        for (text, line) in [
            ("m=1 n=1 corr=weak\n", 1),
            ("\nm=1 n=1 corr=strong seed=1\n", 2),
            ("m=1 n=0 corr=weak seed=1\n", 1),
            ("m=1 n=1 corr=weak seed=1 colour=red\n", 1),
        ] {
            match parse_spec_file(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn spec_display_round_trips() {
        let spec = GenSpec {
            budget_ratio: 0.75,
            ..GenSpec::new(5, 6, Correlation::Uncorrelated, 99)
        };
        assert_eq!(parse_spec_file(&spec.to_string()).unwrap(), vec![spec]);
    }
}
