//! Unsigned Gauss codes, DT codes, and the rewrites the recursion is built on.
//!
//! A Gauss code is stored *normalized*: reading left to right, label `k`
//! first appears before label `k + 1`. Every constructor normalizes, so two
//! codes compare equal exactly when they describe the same word up to
//! relabeling.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unsigned double-occurrence word; labels `1..=n`, each exactly twice.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct GaussCode(Vec<u32>);

/// Relabel so first occurrences appear in increasing order.
///
/// Labels are small positive integers, each occurring twice.
fn normalize_small(word: &[u32]) -> Vec<u32> {
    let max = word.iter().copied().max().unwrap_or(0) as usize;
    let mut map = vec![0u32; max + 1];
    let mut next = 0;
    word.iter()
        .map(|&c| {
            let slot = &mut map[c as usize];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
            *slot
        })
        .collect()
}

impl GaussCode {
    /// Validate an arbitrary labelled word and normalize it.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        if !word.len().is_multiple_of(2) {
            return Err(Error::MalformedWord(format!("odd length {}", word.len())));
        }
        let mut counts: std::collections::BTreeMap<u32, usize> = Default::default();
        for &c in &word {
            *counts.entry(c).or_default() += 1;
        }
        if let Some((c, k)) = counts.iter().find(|(_, &k)| k != 2) {
            return Err(Error::MalformedWord(format!("label {c} occurs {k} times")));
        }
        let dense: std::collections::BTreeMap<u32, u32> = counts
            .keys()
            .enumerate()
            .map(|(i, &c)| (c, i as u32 + 1))
            .collect();
        let word: Vec<u32> = word.iter().map(|c| dense[c]).collect();
        Ok(GaussCode(normalize_small(&word)))
    }

    /// The unknot's code: the empty word.
    pub fn empty() -> Self {
        GaussCode(Vec::new())
    }

    /// Word with small positive labels, each twice; normalizes.
    pub(crate) fn from_dense(word: &[u32]) -> Self {
        GaussCode(normalize_small(word))
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    /// Number of crossings `n`.
    pub fn crossings(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based positions of the two occurrences of every label, indexed by `label - 1`.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(usize::MAX, usize::MAX); self.crossings()];
        for (p, &c) in self.0.iter().enumerate() {
            let slot = &mut occ[c as usize - 1];
            if slot.0 == usize::MAX {
                slot.0 = p;
            } else {
                slot.1 = p;
            }
        }
        occ
    }

    /// The word read from position `start`, forward or backward, renormalized.
    pub fn dihedral_image(&self, start: usize, reflect: bool) -> GaussCode {
        let len = self.0.len();
        if len == 0 {
            return self.clone();
        }
        let word: Vec<u32> = (0..len)
            .map(|k| {
                let p = if reflect {
                    (start + len - k) % len
                } else {
                    (start + k) % len
                };
                self.0[p]
            })
            .collect();
        GaussCode::from_dense(&word)
    }

    /// Lexicographic minimum over all `4n` rotations and reflected rotations.
    pub fn reduced_form(&self) -> GaussCode {
        let len = self.0.len();
        if len == 0 {
            return self.clone();
        }
        let mut best = self.0.clone();
        let mut buf = vec![0u32; len];
        let mut map = vec![0u32; len / 2 + 1];
        for reflect in [false, true] {
            for start in 0..len {
                if relabel_into(&self.0, start, reflect, &mut map, &mut buf, &best) {
                    std::mem::swap(&mut best, &mut buf);
                }
            }
        }
        GaussCode(best)
    }

    /// DT code: entry `s` is the 1-based position partnering position `2s - 1`.
    ///
    /// Fails when some label sits at two positions of equal parity; such a
    /// word violates the even-interlacing condition and has no planar
    /// realization, so no rotation of it has a DT code either.
    pub fn to_dt(&self) -> Result<DtCode> {
        let occ = self.occurrences();
        let mut partner = vec![0usize; self.0.len()];
        for &(a, b) in &occ {
            if (a + b) % 2 == 0 {
                return Err(Error::MalformedPairing(format!(
                    "positions {} and {} of {self} have equal parity",
                    a + 1,
                    b + 1
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        let entries = (0..self.crossings())
            .map(|s| partner[2 * s] as u32 + 1)
            .collect();
        Ok(DtCode(entries))
    }

    /// Inverse of [`GaussCode::to_dt`].
    pub fn from_dt(dt: &DtCode) -> Result<GaussCode> {
        let n = dt.0.len();
        let mut word = vec![0u32; 2 * n];
        for (s, &j) in dt.0.iter().enumerate() {
            if j % 2 != 0 || j < 2 || j as usize > 2 * n {
                return Err(Error::MalformedPairing(format!(
                    "entry {j} is not an even integer in 2..={}",
                    2 * n
                )));
            }
            let j = j as usize - 1;
            if word[j] != 0 {
                return Err(Error::MalformedPairing(format!("entry {} repeats", j + 1)));
            }
            word[2 * s] = s as u32 + 1;
            word[j] = s as u32 + 1;
        }
        Ok(GaussCode::from_dense(&word))
    }

    /// Delete cyclically adjacent equal labels until none remain.
    pub fn remove_kinks(&self) -> GaussCode {
        let mut stack: Vec<u32> = Vec::with_capacity(self.0.len());
        for &c in &self.0 {
            if stack.last() == Some(&c) {
                stack.pop();
            } else {
                stack.push(c);
            }
        }
        // the linear pass leaves a freely reduced word; only the wrap can still cancel
        let mut lo = 0;
        let mut hi = stack.len();
        while hi - lo >= 2 && stack[lo] == stack[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        GaussCode::from_dense(&stack[lo..hi])
    }

    /// Non-Seifert splice at crossing `label`: `w1 k w2 k w3 -> w1 rev(w2) w3`,
    /// followed by kink removal.
    pub fn splice_at(&self, label: u32) -> Result<GaussCode> {
        if label == 0 || label as usize > self.crossings() {
            return Err(Error::UnknownLabel(label));
        }
        let (p, q) = self.occurrences()[label as usize - 1];
        let mut word = Vec::with_capacity(self.0.len() - 2);
        word.extend_from_slice(&self.0[..p]);
        word.extend(self.0[p + 1..q].iter().rev());
        word.extend_from_slice(&self.0[q + 1..]);
        Ok(GaussCode::from_dense(&word).remove_kinks())
    }

    /// Split into prime summands along label-closed cyclic intervals.
    ///
    /// Parts are kink-reduced before recursing, so a nugatory crossing left
    /// behind by a split disappears instead of being counted.
    pub fn decompose_connect_sum(&self) -> SummandList {
        let mut summands = Vec::new();
        let mut pending = vec![self.remove_kinks()];
        while let Some(code) = pending.pop() {
            if code.is_empty() {
                continue;
            }
            match code.find_split() {
                Some((start, len)) => {
                    let total = code.0.len();
                    let inner: Vec<u32> = (0..len).map(|k| code.0[(start + k) % total]).collect();
                    let outer: Vec<u32> =
                        (len..total).map(|k| code.0[(start + k) % total]).collect();
                    pending.push(GaussCode::from_dense(&inner).remove_kinks());
                    pending.push(GaussCode::from_dense(&outer).remove_kinks());
                }
                None => summands.push(code),
            }
        }
        summands.sort();
        SummandList(summands)
    }

    /// First label-closed proper cyclic interval, as `(start, length)`.
    fn find_split(&self) -> Option<(usize, usize)> {
        let total = self.0.len();
        let mut seen = vec![false; self.crossings() + 1];
        for start in 0..total {
            seen.iter_mut().for_each(|s| *s = false);
            let mut open = 0usize;
            for len in 1..total - 1 {
                let c = self.0[(start + len - 1) % total] as usize;
                if seen[c] {
                    open -= 1;
                } else {
                    seen[c] = true;
                    open += 1;
                }
                if open == 0 {
                    return Some((start, len));
                }
            }
        }
        None
    }
}

/// Write the normalized dihedral image starting at `start` into `buf` and
/// report whether it is lexicographically smaller than `best`.
///
/// Stops early once the image is known to be no smaller.
fn relabel_into(
    word: &[u32],
    start: usize,
    reflect: bool,
    map: &mut [u32],
    buf: &mut [u32],
    best: &[u32],
) -> bool {
    let len = word.len();
    map.iter_mut().for_each(|m| *m = 0);
    let mut next = 0;
    let mut smaller = false;
    for k in 0..len {
        let p = if reflect {
            (start + len - k) % len
        } else {
            (start + k) % len
        };
        let slot = &mut map[word[p] as usize];
        if *slot == 0 {
            next += 1;
            *slot = next;
        }
        buf[k] = *slot;
        if !smaller {
            match buf[k].cmp(&best[k]) {
                std::cmp::Ordering::Less => smaller = true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    smaller
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

impl FromStr for GaussCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GaussCode::new(parse_integers(s).map_err(Error::MalformedWord)?)
    }
}

impl TryFrom<String> for GaussCode {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GaussCode> for String {
    fn from(g: GaussCode) -> String {
        g.to_string()
    }
}

/// Dowker-Thistlethwaite code: `n` distinct even entries in `2..=2n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DtCode(Vec<u32>);

impl DtCode {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let dt = DtCode(entries);
        // validation lives in the pairing reconstruction
        GaussCode::from_dt(&dt)?;
        Ok(dt)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn crossings(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

impl FromStr for DtCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DtCode::new(parse_integers(s).map_err(Error::MalformedPairing)?)
    }
}

impl TryFrom<String> for DtCode {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DtCode> for String {
    fn from(d: DtCode) -> String {
        d.to_string()
    }
}

/// Catalog name such as `7_4`; the unknot is `0_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct KnotName {
    pub crossings: u32,
    pub index: u32,
}

impl KnotName {
    pub const UNKNOT: KnotName = KnotName {
        crossings: 0,
        index: 1,
    };

    pub fn new(crossings: u32, index: u32) -> Self {
        KnotName { crossings, index }
    }
}

impl fmt::Display for KnotName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.crossings, self.index)
    }
}

impl FromStr for KnotName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedName(s.to_string());
        let (c, i) = s.trim().split_once('_').ok_or_else(bad)?;
        let crossings = c.parse().map_err(|_| bad())?;
        let index: u32 = i.parse().map_err(|_| bad())?;
        if index == 0 {
            return Err(bad());
        }
        Ok(KnotName { crossings, index })
    }
}

impl TryFrom<String> for KnotName {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<KnotName> for String {
    fn from(k: KnotName) -> String {
        k.to_string()
    }
}

/// Prime summands of a kink-free code, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SummandList(pub Vec<GaussCode>);

impl SummandList {
    pub fn total_crossings(&self) -> usize {
        self.0.iter().map(GaussCode::crossings).sum()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GaussCode> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, items: &[u32]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Comma and/or whitespace separated integers; brackets are tolerated.
pub fn parse_integers(s: &str) -> std::result::Result<Vec<u32>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace() || c == '[' || c == ']')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| format!("bad integer {t:?}")))
        .collect()
}
