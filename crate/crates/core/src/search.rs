//! Exhaustive enumeration of `U_n − V_m` over a finite box of indices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use rug::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::recurrence::RecurrenceSpec;

/// Default ceiling on the number of `(n, m)` cells in one search.
pub const DEFAULT_CELL_CEILING: u128 = 1_000_000;

/// Index ranges `[n_lo, n_hi] × [m_lo, m_hi]`, both inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchBox {
    pub n_lo: u64,
    pub n_hi: u64,
    pub m_lo: u64,
    pub m_hi: u64,
}

impl SearchBox {
    pub fn new(n: RangeInclusive<u64>, m: RangeInclusive<u64>) -> Self {
        SearchBox { n_lo: *n.start(), n_hi: *n.end(), m_lo: *m.start(), m_hi: *m.end() }
    }

    pub fn n_range(&self) -> RangeInclusive<u64> {
        self.n_lo..=self.n_hi
    }

    pub fn m_range(&self) -> RangeInclusive<u64> {
        self.m_lo..=self.m_hi
    }

    pub fn is_empty(&self) -> bool {
        self.n_lo > self.n_hi || self.m_lo > self.m_hi
    }

    pub fn cells(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        (self.n_hi - self.n_lo + 1) as u128 * (self.m_hi - self.m_lo + 1) as u128
    }

    pub fn contains(&self, other: &SearchBox) -> bool {
        other.is_empty()
            || (self.n_lo <= other.n_lo
                && other.n_hi <= self.n_hi
                && self.m_lo <= other.m_lo
                && other.m_hi <= self.m_hi)
    }
}

/// Every value `c = U_n − V_m` in a box, with the index pairs producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationTable {
    pub u_label: String,
    pub v_label: String,
    pub search_box: SearchBox,
    /// Pair lists are sorted and free of duplicates.
    pub entries: BTreeMap<Integer, Vec<(u64, u64)>>,
}

fn terms_in(spec: &RecurrenceSpec, lo: u64, hi: u64) -> Vec<Integer> {
    if lo > hi {
        return Vec::new();
    }
    spec.terms(hi as usize + 1).split_off(lo as usize)
}

fn check_size(b: &SearchBox, ceiling: u128) -> Result<()> {
    let cells = b.cells();
    if cells > ceiling {
        return Err(Error::BoxTooLarge { cells, ceiling });
    }
    Ok(())
}

fn table(
    u: &RecurrenceSpec,
    v: &RecurrenceSpec,
    b: SearchBox,
    entries: BTreeMap<Integer, Vec<(u64, u64)>>,
) -> RepresentationTable {
    RepresentationTable { u_label: u.label.clone(), v_label: v.label.clone(), search_box: b, entries }
}

/// Serial enumeration with the default cell ceiling.
pub fn enumerate(u: &RecurrenceSpec, v: &RecurrenceSpec, b: SearchBox) -> Result<RepresentationTable> {
    enumerate_with(u, v, b, DEFAULT_CELL_CEILING, false)
}

/// Enumeration over `n`-stripes, optionally in parallel. The result does not
/// depend on `parallel`.
pub fn enumerate_with(
    u: &RecurrenceSpec,
    v: &RecurrenceSpec,
    b: SearchBox,
    ceiling: u128,
    parallel: bool,
) -> Result<RepresentationTable> {
    check_size(&b, ceiling)?;
    if b.is_empty() {
        return Ok(table(u, v, b, BTreeMap::new()));
    }
    let us = terms_in(u, b.n_lo, b.n_hi);
    let vs = terms_in(v, b.m_lo, b.m_hi);
    let stripe = |(i, un): (usize, &Integer)| -> BTreeMap<Integer, Vec<(u64, u64)>> {
        let n = b.n_lo + i as u64;
        let mut map: BTreeMap<Integer, Vec<(u64, u64)>> = BTreeMap::new();
        for (j, vm) in vs.iter().enumerate() {
            map.entry(Integer::from(un - vm)).or_default().push((n, b.m_lo + j as u64));
        }
        map
    };
    let merge = |mut a: BTreeMap<Integer, Vec<(u64, u64)>>, c: BTreeMap<Integer, Vec<(u64, u64)>>| {
        for (k, mut pairs) in c {
            a.entry(k).or_default().append(&mut pairs);
        }
        a
    };
    let mut entries = if parallel {
        us.par_iter().enumerate().map(stripe).reduce(BTreeMap::new, merge)
    } else {
        us.iter().enumerate().map(stripe).fold(BTreeMap::new(), merge)
    };
    for pairs in entries.values_mut() {
        pairs.sort_unstable();
        pairs.dedup();
    }
    Ok(table(u, v, b, entries))
}

/// Enumeration on a dedicated pool of `threads` workers; `threads ≤ 1` runs
/// serially.
pub fn enumerate_threads(
    u: &RecurrenceSpec,
    v: &RecurrenceSpec,
    b: SearchBox,
    ceiling: u128,
    threads: usize,
) -> Result<RepresentationTable> {
    if threads <= 1 {
        return enumerate_with(u, v, b, ceiling, false);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Inconclusive(format!("thread pool: {e}")))?;
    pool.install(|| enumerate_with(u, v, b, ceiling, true))
}

/// A second, independent enumerator: all triples `(c, n, m)` are sorted and
/// runs of equal `c` are grouped.
pub fn enumerate_sorted_merge(u: &RecurrenceSpec, v: &RecurrenceSpec, b: SearchBox) -> Result<RepresentationTable> {
    check_size(&b, DEFAULT_CELL_CEILING)?;
    let mut triples = Vec::new();
    for n in b.n_range() {
        for m in b.m_range() {
            let c = crate::recurrence::term(u, n as usize) - crate::recurrence::term(v, m as usize);
            triples.push((c, n, m));
        }
    }
    triples.sort();
    let mut entries: BTreeMap<Integer, Vec<(u64, u64)>> = BTreeMap::new();
    let mut i = 0;
    while i < triples.len() {
        let mut j = i;
        let mut pairs = Vec::new();
        while j < triples.len() && triples[j].0 == triples[i].0 {
            pairs.push((triples[j].1, triples[j].2));
            j += 1;
        }
        entries.insert(triples[i].0.clone(), pairs);
        i = j;
    }
    Ok(table(u, v, b, entries))
}

impl RepresentationTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn pairs(&self, c: &Integer) -> &[(u64, u64)] {
        self.entries.get(c).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Values with at least two representations.
    pub fn multi_represented(&self) -> BTreeSet<Integer> {
        self.entries.iter().filter(|(_, p)| p.len() >= 2).map(|(c, _)| c.clone()).collect()
    }

    /// Recomputes every multiply represented pair from scratch; returns the
    /// first pair that fails `U_n − V_m = c`.
    pub fn audit(&self, u: &RecurrenceSpec, v: &RecurrenceSpec) -> Option<(Integer, u64, u64)> {
        use crate::recurrence::term;
        for c in self.multi_represented() {
            for &(n, m) in self.pairs(&c) {
                if term(u, n as usize) - term(v, m as usize) != c {
                    return Some((c, n, m));
                }
            }
        }
        None
    }

    /// `c,n,m` rows sorted by `(c, n, m)`; with `only_multi`, values with a
    /// single representation are left out.
    pub fn to_csv(&self, only_multi: bool) -> String {
        let mut out = String::from("c,n,m\n");
        for (c, pairs) in &self.entries {
            if only_multi && pairs.len() < 2 {
                continue;
            }
            for (n, m) in pairs {
                let _ = writeln!(out, "{c},{n},{m}");
            }
        }
        out
    }

    pub fn summary_json(&self) -> Value {
        let multi = self.multi_represented();
        let representations: BTreeMap<String, Vec<[u64; 2]>> =
            multi.iter().map(|c| (c.to_string(), self.pairs(c).iter().map(|&(n, m)| [n, m]).collect())).collect();
        let b = &self.search_box;
        json!({
            "u": self.u_label,
            "v": self.v_label,
            "box": {"n": [b.n_lo, b.n_hi], "m": [b.m_lo, b.m_hi]},
            "cells": b.cells().to_string(),
            "distinct_values": self.entries.len(),
            "multi_represented": multi.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "multi_count": multi.len(),
            "representations": representations,
        })
    }
}

/// Missing and extra elements of a found set relative to an expected one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SetDiff {
    pub missing: BTreeSet<Integer>,
    pub extra: BTreeSet<Integer>,
}

impl SetDiff {
    pub fn is_pass(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &BTreeSet<Integer>| x.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        json!({"pass": self.is_pass(), "missing": s(&self.missing), "extra": s(&self.extra)})
    }
}

pub fn verify_against(found: &BTreeSet<Integer>, expected: &BTreeSet<Integer>) -> SetDiff {
    SetDiff {
        missing: expected.difference(found).cloned().collect(),
        extra: found.difference(expected).cloned().collect(),
    }
}

/// Reads one integer per line; blank lines and `#` comments are skipped.
pub fn parse_expected(text: &str) -> std::result::Result<BTreeSet<Integer>, String> {
    let mut out = BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let c: Integer = line.parse().map_err(|_| format!("line {}: not an integer: {line:?}", i + 1))?;
        out.insert(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> RecurrenceSpec {
        RecurrenceSpec::new("fib", vec![1, 1], vec![0, 1]).unwrap()
    }

    fn trib() -> RecurrenceSpec {
        RecurrenceSpec::new("trib", vec![1, 1, 1], vec![0, 1, 1]).unwrap()
    }

    #[test]
    fn small_box_zero_row() {
        let t = enumerate(&fib(), &trib(), SearchBox::new(2..=10, 2..=10)).unwrap();
        let zero = t.pairs(&Integer::new());
        for p in [(2, 2), (3, 3), (7, 6)] {
            assert!(zero.contains(&p), "{p:?}");
        }
        assert_eq!(t.pair_count(), 81);
    }

    #[test]
    fn empty_and_oversized_boxes() {
        let t = enumerate(&fib(), &trib(), SearchBox { n_lo: 2, n_hi: 1, m_lo: 2, m_hi: 10 }).unwrap();
        assert!(t.is_empty());
        assert!(t.multi_represented().is_empty());
        let e = enumerate(&fib(), &trib(), SearchBox::new(0..=2000, 0..=2000)).unwrap_err();
        assert!(matches!(e, Error::BoxTooLarge { .. }));
    }

    #[test]
    fn identical_sequences_on_the_diagonal() {
        let t = enumerate(&fib(), &fib(), SearchBox::new(2..=5, 2..=5)).unwrap();
        let zero = t.pairs(&Integer::new());
        for n in 2..=5 {
            assert!(zero.contains(&(n, n)));
        }
    }

    #[test]
    fn set_differences() {
        let a: BTreeSet<Integer> = [1, 2, 3].into_iter().map(Integer::from).collect();
        let b: BTreeSet<Integer> = [2, 3, 4].into_iter().map(Integer::from).collect();
        let d = verify_against(&a, &b);
        assert_eq!(d.missing, [Integer::from(4)].into_iter().collect());
        assert_eq!(d.extra, [Integer::from(1)].into_iter().collect());
        assert!(verify_against(&a, &a).is_pass());
    }

    #[test]
    fn expected_file_format() {
        let s = parse_expected("# header\n0\n-271\n\n 4 \n").unwrap();
        assert_eq!(s.len(), 3);
        assert!(parse_expected("x\n").unwrap_err().contains("line 1"));
    }
}
