//! Young diagrams, the Hecke and BMW branching rules, and path-count
//! dimensions.
//!
//! Diagrams are row lists in English notation. Transposing every diagram is a
//! symmetry of both lattices; the reduced Burau chain is the hook `(2,1,...,1)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YoungError {
    #[error("row lengths must be weakly decreasing: {0}")]
    NotDecreasing(String),
    #[error("cannot parse diagram '{0}'")]
    Parse(String),
    #[error("no common parent")]
    NoCommonParent,
    #[error("diagrams must be distinct with equal box counts")]
    InvalidPair,
    #[error("a diagram with {boxes} boxes cannot appear in row {row}")]
    ParityMismatch { boxes: usize, row: usize },
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(mut rows: Vec<usize>) -> Result<Self, YoungError> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(YoungError::NotDecreasing(format!("{rows:?}")));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> Self {
        YoungDiagram::default()
    }

    /// Comma-separated row lengths; `0`, `()` or an empty string for the empty diagram.
    pub fn parse(src: &str) -> Result<Self, YoungError> {
        let s = src.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() || s == "0" || s == "∅" {
            return Ok(YoungDiagram::empty());
        }
        let rows = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| YoungError::Parse(src.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        YoungDiagram::new(rows)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn transpose(&self) -> YoungDiagram {
        let w = self.rows.first().copied().unwrap_or(0);
        let rows = (0..w).map(|c| self.rows.iter().filter(|&&r| r > c).count()).collect();
        YoungDiagram { rows }
    }

    /// Diagrams obtained by removing one corner box.
    pub fn subdiagrams(&self) -> BTreeSet<YoungDiagram> {
        let mut out = BTreeSet::new();
        for i in 0..self.rows.len() {
            let next = self.rows.get(i + 1).copied().unwrap_or(0);
            if self.rows[i] > next {
                let mut rows = self.rows.clone();
                rows[i] -= 1;
                out.insert(YoungDiagram::new(rows).expect("corner removal keeps shape"));
            }
        }
        out
    }

    /// Diagrams obtained by adding one box.
    pub fn superdiagrams(&self) -> BTreeSet<YoungDiagram> {
        let mut out = BTreeSet::new();
        for i in 0..=self.rows.len() {
            let cur = self.rows.get(i).copied().unwrap_or(0);
            if i == 0 || self.rows[i - 1] > cur {
                let mut rows = self.rows.clone();
                if i == rows.len() {
                    rows.push(1);
                } else {
                    rows[i] += 1;
                }
                out.insert(YoungDiagram { rows });
            }
        }
        out
    }

    /// Neighbours in the BMW Bratteli diagram: one box added or removed.
    pub fn bmw_neighbors(&self) -> BTreeSet<YoungDiagram> {
        let mut out = self.subdiagrams();
        out.extend(self.superdiagrams());
        out
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

pub fn subdiagrams(l: &YoungDiagram) -> BTreeSet<YoungDiagram> {
    l.subdiagrams()
}

pub fn bmw_neighbors(l: &YoungDiagram) -> BTreeSet<YoungDiagram> {
    l.bmw_neighbors()
}

/// The diagram having both `d1` and `d2` as subdiagrams: their cellwise union.
pub fn reconstruct(d1: &YoungDiagram, d2: &YoungDiagram) -> Result<YoungDiagram, YoungError> {
    if d1 == d2 || d1.boxes() != d2.boxes() {
        return Err(YoungError::InvalidPair);
    }
    let n = d1.rows.len().max(d2.rows.len());
    let rows = (0..n)
        .map(|i| d1.rows.get(i).copied().unwrap_or(0).max(d2.rows.get(i).copied().unwrap_or(0)))
        .collect();
    let mu = YoungDiagram::new(rows).expect("union of diagrams is a diagram");
    if mu.boxes() != d1.boxes() + 1 {
        return Err(YoungError::NoCommonParent);
    }
    Ok(mu)
}

/// All partitions of `n`, largest first.
pub fn partitions(n: usize) -> Vec<YoungDiagram> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if n == 0 {
            out.push(YoungDiagram { rows: prefix.clone() });
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of paths from the empty diagram to `l` in Young's lattice.
pub fn dimension_hecke(l: &YoungDiagram) -> BigUint {
    fn go(l: &YoungDiagram, memo: &mut HashMap<YoungDiagram, BigUint>) -> BigUint {
        if l.is_empty() {
            return BigUint::one();
        }
        if let Some(v) = memo.get(l) {
            return v.clone();
        }
        let v = l.subdiagrams().iter().map(|s| go(s, memo)).fold(BigUint::zero(), |a, b| a + b);
        memo.insert(l.clone(), v.clone());
        v
    }
    go(l, &mut HashMap::new())
}

/// Path counts to every vertex of row `n` of the BMW Bratteli diagram.
pub fn bmw_row(n: usize) -> BTreeMap<YoungDiagram, BigUint> {
    let mut row: BTreeMap<YoungDiagram, BigUint> = BTreeMap::new();
    row.insert(YoungDiagram::empty(), BigUint::one());
    for _ in 0..n {
        let mut next: BTreeMap<YoungDiagram, BigUint> = BTreeMap::new();
        for (l, c) in &row {
            for nb in l.bmw_neighbors() {
                *next.entry(nb).or_insert_with(BigUint::zero) += c;
            }
        }
        row = next;
    }
    row
}

/// Number of paths from the empty diagram at row 0 to `l` at row `row`.
pub fn dimension_bmw(l: &YoungDiagram, row: usize) -> Result<BigUint, YoungError> {
    let boxes = l.boxes();
    if row < boxes || (row - boxes) % 2 != 0 {
        return Err(YoungError::ParityMismatch { boxes, row });
    }
    Ok(bmw_row(row).remove(l).unwrap_or_else(BigUint::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> YoungDiagram {
        YoungDiagram::parse(s).unwrap()
    }

    #[test]
    fn subdiagram_examples() {
        assert_eq!(subdiagrams(&d("2,2,2")), [d("2,2,1")].into());
        assert_eq!(subdiagrams(&d("3,2")), [d("2,2"), d("3,1")].into());
        assert_eq!(subdiagrams(&d("1")), [YoungDiagram::empty()].into());
    }

    #[test]
    fn reconstruct_examples() {
        assert_eq!(reconstruct(&d("2,2"), &d("3,1")).unwrap(), d("3,2"));
        assert_eq!(reconstruct(&d("2,1"), &d("1,1,1")).unwrap(), d("2,1,1"));
        assert_eq!(reconstruct(&d("3"), &d("1,1,1")), Err(YoungError::NoCommonParent));
    }

    #[test]
    fn neighbor_examples() {
        assert_eq!(bmw_neighbors(&YoungDiagram::empty()), [d("1")].into());
        assert_eq!(bmw_neighbors(&d("1")), [YoungDiagram::empty(), d("2"), d("1,1")].into());
        assert_eq!(bmw_neighbors(&d("2,1")), [d("1,1"), d("2"), d("3,1"), d("2,2"), d("2,1,1")].into());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension_hecke(&d("5")), 1u32.into());
        assert_eq!(dimension_hecke(&d("2,2,2")), 5u32.into());
        assert_eq!(dimension_hecke(&d("2,1,1,1")), 4u32.into());
        assert_eq!(dimension_bmw(&YoungDiagram::empty(), 0).unwrap(), 1u32.into());
        assert_eq!(dimension_bmw(&d("1"), 3).unwrap(), 3u32.into());
        assert!(matches!(dimension_bmw(&d("1"), 2), Err(YoungError::ParityMismatch { .. })));
        assert_eq!(d("3,1").transpose(), d("2,1,1"));
    }
}
