//! Persisted lookup tables and the build pipeline that fills them.
//!
//! Each table is stored one JSON document per crossing number, e.g.
//! `dg_07.json`, `ddt_07.json`, `dsplice_07.json`, `dcc_07.json`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cc_engine::{extend_cc_tables, CcTable, SpliceRows};
use crate::codes::{DtCode, GaussCode, KnotName};
use crate::embedding::{validate_realizable, CrossingSigns, Diagram};
use crate::error::{Error, Result};
use crate::flype::{enumerate_orbit_with_limit, DEFAULT_ORBIT_LIMIT};
use crate::oracle::crosscap_oracle;
use crate::splice_table::{splice_row, DtIndex, SpliceRow};

/// Code format of ingested rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeFormat {
    Gauss,
    Dt,
}

/// Stored diagram of a knot: reduced code and crossing signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEntry {
    pub code: GaussCode,
    pub signs: CrossingSigns,
}

type Levels<K, V> = BTreeMap<u32, BTreeMap<K, V>>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableSet {
    pub d_g: Levels<KnotName, DiagramEntry>,
    pub d_dt: Levels<DtCode, KnotName>,
    pub d_splice: Levels<KnotName, Vec<Vec<KnotName>>>,
    pub d_cc: CcTable,
}

/// Parse `name,code` rows. Blank lines and `#` comments are skipped.
///
/// The code is checked before the name, so a row with an unrealizable code
/// reports `NonRealizable` whatever its name.
pub fn parse_rows(text: &str, format: CodeFormat) -> Result<Vec<(KnotName, GaussCode)>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::MalformedRow {
            line: i + 1,
            reason,
        };
        let (name, code) = line
            .split_once(',')
            .ok_or_else(|| bad("expected name,code".into()))?;
        let code = match format {
            CodeFormat::Gauss => code.parse::<GaussCode>(),
            CodeFormat::Dt => code.parse::<DtCode>().and_then(|d| GaussCode::from_dt(&d)),
        }
        .map_err(|e| bad(e.to_string()))?;
        if !validate_realizable(&code) {
            return Err(Error::NonRealizable(code.to_string()));
        }
        let name = name
            .trim()
            .parse::<KnotName>()
            .map_err(|e| bad(e.to_string()))?;
        rows.push((name, code));
    }
    Ok(rows)
}

/// Read `name,value` rows of expected crosscap numbers.
pub fn read_expected(path: &Path) -> Result<Vec<(KnotName, u32)>> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| Error::MalformedRow {
            line: i + 1,
            reason: reason.into(),
        };
        let (name, value) = line
            .split_once(',')
            .ok_or_else(|| bad("expected name,value"))?;
        let value = value.trim().parse().map_err(|_| bad("bad value"))?;
        out.push((name.trim().parse()?, value));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    MissingKnot {
        knot: KnotName,
        expected: u32,
    },
    ValueMismatch {
        knot: KnotName,
        expected: u32,
        computed: u32,
    },
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::MissingKnot { knot, expected } => {
                write!(f, "MISSING {knot} expected {expected}")
            }
            Mismatch::ValueMismatch {
                knot,
                expected,
                computed,
            } => {
                write!(f, "MISMATCH {knot} expected {expected} computed {computed}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.mismatches {
            writeln!(f, "{m}")?;
        }
        write!(
            f,
            "checked {} mismatches {}",
            self.checked,
            self.mismatches.len()
        )
    }
}

/// Compare expected values against `table`.
pub fn verify(expected: &[(KnotName, u32)], table: &CcTable) -> VerifyReport {
    let mismatches = expected
        .iter()
        .filter_map(|&(knot, expected)| match table.get(&knot) {
            None => Some(Mismatch::MissingKnot { knot, expected }),
            Some(computed) if computed != expected => Some(Mismatch::ValueMismatch {
                knot,
                expected,
                computed,
            }),
            Some(_) => None,
        })
        .collect();
    VerifyReport {
        checked: expected.len(),
        mismatches,
    }
}

impl TableSet {
    pub fn new() -> Self {
        TableSet::default()
    }

    /// Add rows to `d_g`. Re-adding a knot with the same diagram is a no-op;
    /// a different diagram under a known name is `DuplicateName`.
    pub fn ingest_str(&mut self, text: &str, format: CodeFormat) -> Result<usize> {
        let rows = parse_rows(text, format)?;
        let mut fresh: BTreeMap<KnotName, DiagramEntry> = BTreeMap::new();
        for (name, code) in rows {
            let code = code.reduced_form();
            if fresh.contains_key(&name) {
                return Err(Error::DuplicateName(name));
            }
            if let Some(old) = self.d_g.get(&name.crossings).and_then(|l| l.get(&name)) {
                if old.code != code {
                    return Err(Error::DuplicateName(name));
                }
            }
            let signs = Diagram::new(code.clone())?.signs;
            fresh.insert(name, DiagramEntry { code, signs });
        }
        let count = fresh.len();
        for (name, entry) in fresh {
            self.d_g
                .entry(name.crossings)
                .or_default()
                .insert(name, entry);
        }
        Ok(count)
    }

    pub fn ingest(&mut self, path: &Path, format: CodeFormat) -> Result<usize> {
        self.ingest_str(&fs::read_to_string(path)?, format)
    }

    pub fn knots(&self) -> impl Iterator<Item = (&KnotName, &DiagramEntry)> {
        self.d_g.values().flatten()
    }

    pub fn diagram(&self, knot: &KnotName) -> Option<&DiagramEntry> {
        self.d_g.get(&knot.crossings)?.get(knot)
    }

    pub fn dt_index(&self) -> DtIndex {
        self.d_dt
            .values()
            .flatten()
            .map(|(dt, name)| (dt.clone(), *name))
            .collect()
    }

    pub fn splice_rows(&self) -> SpliceRows {
        self.d_splice
            .values()
            .flatten()
            .map(|(knot, per)| {
                (
                    *knot,
                    SpliceRow {
                        knot: *knot,
                        per_crossing: per.clone(),
                    },
                )
            })
            .collect()
    }

    pub fn build_ddt(&mut self, max_n: u32) -> Result<()> {
        self.build_ddt_with_limit(max_n, DEFAULT_ORBIT_LIMIT)
    }

    /// Flype orbit of every stored diagram up to `max_n` crossings.
    pub fn build_ddt_with_limit(&mut self, max_n: u32, limit: usize) -> Result<()> {
        for (&n, level) in self.d_g.range(..=max_n) {
            let orbits = level
                .par_iter()
                .map(|(name, entry)| Ok((*name, enumerate_orbit_with_limit(&entry.code, limit)?)))
                .collect::<Result<Vec<_>>>()?;
            let mut keys: BTreeMap<DtCode, KnotName> = BTreeMap::new();
            for (name, orbit) in orbits {
                for dt in orbit.dt_codes() {
                    if let Some(&first) = keys.get(&dt) {
                        if first != name {
                            return Err(Error::ConflictingDiagram {
                                dt: dt.to_string(),
                                first,
                                second: name,
                            });
                        }
                    }
                    keys.insert(dt, name);
                }
            }
            self.d_dt.insert(n, keys);
        }
        Ok(())
    }

    /// Splice row of every stored diagram up to `max_n` crossings.
    pub fn build_dsplice(&mut self, max_n: u32) -> Result<()> {
        let ddt = self.dt_index();
        for (&n, level) in self.d_g.range(..=max_n) {
            let rows = level
                .par_iter()
                .map(|(name, entry)| {
                    let row = splice_row(*name, &entry.code, &ddt)?;
                    Ok((*name, row.per_crossing))
                })
                .collect::<Result<BTreeMap<_, _>>>()?;
            self.d_splice.insert(n, rows);
        }
        Ok(())
    }

    /// Crosscap numbers through `max_n` crossings, rebuilt from level 0.
    pub fn build_dcc(&mut self, max_n: u32) -> Result<()> {
        let mut table = CcTable::new();
        extend_cc_tables(&mut table, &self.splice_rows(), max_n)?;
        self.d_cc = table;
        Ok(())
    }

    pub fn build_all(&mut self, max_n: u32) -> Result<()> {
        self.build_ddt(max_n)?;
        self.build_dsplice(max_n)?;
        self.build_dcc(max_n)
    }

    /// Compare `d_cc` with the state-surface oracle on every stored
    /// diagram up to `max_n` crossings.
    pub fn verify_oracle(&self, max_n: u32) -> Result<VerifyReport> {
        let expected = self
            .d_g
            .range(..=max_n)
            .flat_map(|(_, level)| level.iter())
            .collect::<Vec<_>>()
            .par_iter()
            .map(|(name, entry)| {
                let d = Diagram::new(entry.code.clone())?;
                Ok((**name, crosscap_oracle(&d)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(verify(&expected, &self.d_cc))
    }

    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        write_levels(dir, "dg", &self.d_g)?;
        write_levels(dir, "ddt", &self.d_dt)?;
        write_levels(dir, "dsplice", &self.d_splice)?;
        write_levels(dir, "dcc", self.d_cc.levels())
    }

    /// Read whatever tables exist in `dir`; absent tables stay empty.
    pub fn load(dir: &Path) -> Result<Self> {
        let mut d_cc = CcTable::new();
        for (n, level) in read_levels::<KnotName, u32>(dir, "dcc")? {
            d_cc.set_level(n, level);
        }
        Ok(TableSet {
            d_g: read_levels(dir, "dg")?,
            d_dt: read_levels(dir, "ddt")?,
            d_splice: read_levels(dir, "dsplice")?,
            d_cc,
        })
    }
}

fn write_levels<K: Serialize, V: Serialize>(
    dir: &Path,
    prefix: &str,
    levels: &Levels<K, V>,
) -> Result<()> {
    for (n, level) in levels {
        let path = dir.join(format!("{prefix}_{n:02}.json"));
        fs::write(path, render_level(level)?)?;
    }
    Ok(())
}

/// A JSON object with one compact entry per line.
fn render_level<K: Serialize, V: Serialize>(level: &BTreeMap<K, V>) -> Result<String> {
    let mut out = String::from("{");
    for (i, (k, v)) in level.iter().enumerate() {
        out.push_str(if i == 0 { "\n  " } else { ",\n  " });
        out.push_str(&serde_json::to_string(k)?);
        out.push_str(": ");
        out.push_str(&serde_json::to_string(v)?);
    }
    out.push_str(if level.is_empty() { "}\n" } else { "\n}\n" });
    Ok(out)
}

fn read_levels<K, V>(dir: &Path, prefix: &str) -> Result<Levels<K, V>>
where
    K: Ord + for<'de> Deserialize<'de>,
    V: for<'de> Deserialize<'de>,
{
    let mut out = BTreeMap::new();
    if !dir.exists() {
        return Ok(out);
    }
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        let Some(n) = stem
            .strip_prefix(prefix)
            .and_then(|s| s.strip_prefix('_'))
            .and_then(|s| s.parse::<u32>().ok())
        else {
            continue;
        };
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        out.insert(n, serde_json::from_str(&fs::read_to_string(&path)?)?);
    }
    Ok(out)
}
