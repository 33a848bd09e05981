//! Reading sets from flags and JSON files.

use std::fs;
use std::path::Path;

use intiles::IntegerSet;
use serde::{Deserialize, Serialize};

/// A set after normalization, with the translation that was removed.
#[derive(Debug, Clone, Serialize)]
pub struct Ingested {
    pub set: IntegerSet,
    pub shift: u64,
}

impl Ingested {
    pub fn new(raw: Vec<u64>, what: &str) -> Result<Self, String> {
        let set = IntegerSet::from_unsorted(raw).map_err(|e| format!("{what}: {e}"))?;
        let (set, shift) = set.normalize_with_shift();
        Ok(Self { set, shift })
    }
}

pub fn parse_list(flag: &str, text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| format!("--{flag}: {s:?} is not a nonnegative integer"))
        })
        .collect()
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("--input {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("--input {}: {e}", path.display()))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SetFile {
    Bare(Vec<u64>),
    Wrapped { set: Vec<u64> },
}

pub fn read_set(inline: Option<&str>, path: Option<&Path>) -> Result<Ingested, String> {
    let raw = match (inline, path) {
        (Some(text), None) => parse_list("set", text)?,
        (None, Some(path)) => match read_json::<SetFile>(path)? {
            SetFile::Bare(v) | SetFile::Wrapped { set: v } => v,
        },
        _ => return Err("exactly one of --set and --input is required".into()),
    };
    Ingested::new(raw, "set")
}

#[derive(Deserialize)]
pub struct TilingFile {
    pub tile: Vec<u64>,
    pub complement: Vec<u64>,
    pub modulus: u64,
}

pub fn read_tiling(path: &Path) -> Result<TilingFile, String> {
    read_json(path)
}

/// `p^a` or `p`, comma-separated.
pub fn parse_prime_powers(text: &str) -> Result<Vec<(u64, u32)>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let bad = || format!("--primes: {item:?} is not of the form p or p^a");
            let (p, a) = item.split_once('^').unwrap_or((item, "1"));
            Ok((
                p.trim().parse().map_err(|_| bad())?,
                a.trim().parse().map_err(|_| bad())?,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("set", "0, 2,5").unwrap(), vec![0, 2, 5]);
        assert!(parse_list("set", "0,-1").is_err());
        assert_eq!(parse_prime_powers("2^2,3").unwrap(), vec![(2, 2), (3, 1)]);
        assert!(parse_prime_powers("2^x").is_err());
    }

    #[test]
    fn normalization_is_echoed() {
        let i = Ingested::new(vec![7, 5, 9], "set").unwrap();
        assert_eq!(i.set.elements(), &[0, 2, 4]);
        assert_eq!(i.shift, 5);
        assert!(Ingested::new(vec![1, 1], "set").is_err());
    }
}
