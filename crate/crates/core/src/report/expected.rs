//! The shipped expected-values table (`data/expected.tsv`).

use crate::error::{Error, Result};
use crate::wps::WeightedSpace;

const EXPECTED_TSV: &str = include_str!("../../data/expected.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedRow {
    pub row: usize,
    pub weights: [u32; 4],
    pub anti_k3: u64,
    pub m: u64,
    pub s: u64,
    pub i_s: u64,
    pub g1: u64,
    pub g: u64,
    pub beta1: u64,
    pub beta2: u64,
    pub alpha_s: u64,
}

pub fn parse(text: &str) -> Result<Vec<ExpectedRow>> {
    let bad = |line: &str| Error::Inconsistent(format!("malformed expected-values line {line:?}"));
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let f: Vec<&str> = line.split('\t').collect();
            if f.len() != 11 {
                return Err(bad(line));
            }
            let n = |i: usize| f[i].trim().parse::<u64>().map_err(|_| bad(line));
            let weights: WeightedSpace = f[1].parse().map_err(|_| bad(line))?;
            Ok(ExpectedRow {
                row: n(0)? as usize,
                weights: weights.weights(),
                anti_k3: n(2)?,
                m: n(3)?,
                s: n(4)?,
                i_s: n(5)?,
                g1: n(6)?,
                g: n(7)?,
                beta1: n(8)?,
                beta2: n(9)?,
                alpha_s: n(10)?,
            })
        })
        .collect()
}

/// The fourteen rows, in table order.
pub fn table() -> Vec<ExpectedRow> {
    parse(EXPECTED_TSV).expect("shipped expected-values table parses")
}

pub fn lookup(space: &WeightedSpace) -> Option<ExpectedRow> {
    table().into_iter().find(|r| r.weights == space.weights())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_table() {
        let t = table();
        assert_eq!(t.len(), 14);
        assert_eq!(t[8].weights, [2, 3, 3, 4]);
        assert_eq!((t[8].anti_k3, t[8].g1, t[8].alpha_s), (24, 4, 6));
        assert!(t.iter().enumerate().all(|(i, r)| r.row == i + 1));
    }

    #[test]
    fn rejects_short_lines() {
        assert!(parse("1\t1,1,1,3\t72").is_err());
    }
}
