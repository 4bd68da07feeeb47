//! Line-oriented text format for instances.
//!
//! ```text
//! MCKP 1
//! m=2 b=4
//! cat 2
//! 2 1.9
//! 3 3
//! cat 2
//! 4 2
//! 2 1
//! ```
//!
//! Lines starting with `#` and blank lines are skipped on input.

use std::fmt::Write as _;

use super::{Category, Instance, Item};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

const MAGIC: &str = "MCKP 1";

pub fn read_instance<T: Scalar>(bytes: &[u8]) -> Result<Instance<T>> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::parse(0, format!("not UTF-8: {e}")))?;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (n, magic) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    if magic != MAGIC {
        return Err(Error::parse(n, format!("expected `{MAGIC}`, found `{magic}`")));
    }

    let (n, header) = lines
        .next()
        .ok_or_else(|| Error::parse(n + 1, "missing `m=<int> b=<decimal>` header"))?;
    let mut m = None;
    let mut budget = None;
    for tok in header.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::parse(n, format!("expected key=value, found `{tok}`")))?;
        match key {
            "m" => {
                m = Some(
                    value
                        .parse::<usize>()
                        .map_err(|_| Error::parse(n, format!("m must be a non-negative integer, found `{value}`")))?,
                )
            }
            "b" => {
                budget = Some(T::parse_decimal(value).ok_or_else(|| Error::parse(n, format!("bad budget `{value}`")))?)
            }
            _ => return Err(Error::parse(n, format!("unknown header key `{key}`"))),
        }
    }
    let m = m.ok_or_else(|| Error::parse(n, "header is missing m"))?;
    let budget = budget.ok_or_else(|| Error::parse(n, "header is missing b"))?;
    if m == 0 {
        return Err(Error::parse(n, "instance needs at least one category"));
    }
    if budget <= T::zero() {
        return Err(Error::parse(n, format!("budget must be positive, got {budget}")));
    }
    let header_line = n;

    let mut categories = Vec::with_capacity(m);
    for j in 0..m {
        let (n, line) = lines
            .next()
            .ok_or_else(|| Error::parse(header_line, format!("expected {m} categories, found {j}")))?;
        let size = line
            .strip_prefix("cat ")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::parse(n, format!("expected `cat <n>`, found `{line}`")))?;
        if size == 0 {
            return Err(Error::parse(n, "category must contain at least one item"));
        }
        let mut items = Vec::with_capacity(size);
        let mut last = n;
        for _ in 0..size {
            let (n, line) = lines
                .next()
                .ok_or_else(|| Error::parse(last + 1, "unexpected end of file inside category"))?;
            last = n;
            items.push(parse_item::<T>(n, line)?);
        }
        categories.push(Category::new(items).map_err(|e| Error::parse(n, e.to_string()))?);
    }
    if let Some((n, line)) = lines.next() {
        return Err(Error::parse(n, format!("trailing content `{line}`")));
    }
    Instance::new(categories, budget).map_err(|e| Error::parse(header_line, e.to_string()))
}

fn parse_item<T: Scalar>(n: usize, line: &str) -> Result<Item<T>> {
    let mut toks = line.split_whitespace();
    let (Some(p), Some(c), None) = (toks.next(), toks.next(), toks.next()) else {
        return Err(Error::parse(n, format!("expected `<profit> <cost>`, found `{line}`")));
    };
    let profit = T::parse_decimal(p).ok_or_else(|| Error::parse(n, format!("bad profit `{p}`")))?;
    let cost = T::parse_decimal(c).ok_or_else(|| Error::parse(n, format!("bad cost `{c}`")))?;
    Item::new(profit, cost).map_err(|e| Error::parse(n, e.to_string()))
}

pub fn write_instance<T: Scalar>(instance: &Instance<T>) -> Result<String> {
    let dec = |v: T| v.to_decimal().ok_or_else(|| Error::NotDecimal(v.to_string()));
    let mut out = String::new();
    writeln!(out, "{MAGIC}").unwrap();
    writeln!(out, "m={} b={}", instance.num_categories(), dec(instance.budget())?).unwrap();
    for cat in instance.categories() {
        writeln!(out, "cat {}", cat.len()).unwrap();
        for item in cat.items() {
            writeln!(out, "{} {}", dec(item.profit)?, dec(item.cost)?).unwrap();
        }
    }
    Ok(out)
}
