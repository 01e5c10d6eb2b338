//! Splice-unknotting recursion over the splice table, level by level.
//!
//! For a prime alternating knot `K` with stored diagram `D`,
//! `u-(K) = 1 + min_i sum_j u-(K'_ij)`, where `K'_i1 .. K'_im` are the
//! connect summands left by the non-Seifert splice at crossing `i` of `D`.
//! For prime alternating knots this value is the crosscap number.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{GaussCode, KnotName};
use crate::error::{Error, Result};
use crate::splice_table::{summand_names, DtIndex, SpliceRow};

/// Splice rows of every knot, by name.
pub type SpliceRows = BTreeMap<KnotName, SpliceRow>;

/// `u-` values per crossing number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcTable {
    levels: BTreeMap<u32, BTreeMap<KnotName, u32>>,
}

impl Default for CcTable {
    fn default() -> Self {
        CcTable::new()
    }
}

impl CcTable {
    /// Table holding only the unknot, `0_1 -> 0`.
    pub fn new() -> Self {
        CcTable {
            levels: BTreeMap::from([(0, BTreeMap::from([(KnotName::UNKNOT, 0)]))]),
        }
    }

    pub fn get(&self, knot: &KnotName) -> Option<u32> {
        self.levels.get(&knot.crossings)?.get(knot).copied()
    }

    pub fn level(&self, n: u32) -> Option<&BTreeMap<KnotName, u32>> {
        self.levels.get(&n)
    }

    pub fn levels(&self) -> &BTreeMap<u32, BTreeMap<KnotName, u32>> {
        &self.levels
    }

    pub fn insert(&mut self, knot: KnotName, value: u32) {
        self.levels
            .entry(knot.crossings)
            .or_default()
            .insert(knot, value);
    }

    pub fn set_level(&mut self, n: u32, values: BTreeMap<KnotName, u32>) {
        self.levels.insert(n, values);
    }

    /// Sum of the values of `names`.
    pub fn sum(&self, names: &[KnotName]) -> Result<u32> {
        names
            .iter()
            .map(|k| self.get(k).ok_or(Error::MissingDependency(*k)))
            .sum()
    }
}

/// `1 + min` over the row's crossings of the summed summand values.
pub fn u_minus_of_row(row: &SpliceRow, table: &CcTable) -> Result<u32> {
    let mut best = None;
    for names in &row.per_crossing {
        let cost = table.sum(names)?;
        best = Some(best.map_or(cost, |b: u32| b.min(cost)));
    }
    Ok(1 + best.unwrap_or(0))
}

/// `u-` of `knot`, looked up or computed from its row and then memoized.
pub fn u_minus(knot: &KnotName, rows: &SpliceRows, table: &mut CcTable) -> Result<u32> {
    if let Some(v) = table.get(knot) {
        return Ok(v);
    }
    let row = rows.get(knot).ok_or(Error::MissingDependency(*knot))?;
    let value = u_minus_of_row(row, table)?;
    table.insert(*knot, value);
    Ok(value)
}

/// Recursion applied directly to an arbitrary alternating code, prime or not.
pub fn u_minus_of_code(code: &GaussCode, ddt: &DtIndex, table: &CcTable) -> Result<u32> {
    let code = code.remove_kinks();
    if code.is_empty() {
        return Ok(0);
    }
    let mut best = u32::MAX;
    for k in 1..=code.crossings() as u32 {
        let names = summand_names(&code.splice_at(k)?, ddt)?;
        best = best.min(table.sum(&names)?);
    }
    Ok(1 + best)
}

/// Fill levels `3..=max_n` from the rows, strictly in crossing order.
pub fn build_cc_tables(rows: &SpliceRows, max_n: u32) -> Result<CcTable> {
    let mut table = CcTable::new();
    extend_cc_tables(&mut table, rows, max_n)?;
    Ok(table)
}

/// Compute every level of `rows` up to `max_n` on top of `table`.
pub fn extend_cc_tables(table: &mut CcTable, rows: &SpliceRows, max_n: u32) -> Result<()> {
    let mut by_level: BTreeMap<u32, Vec<&SpliceRow>> = BTreeMap::new();
    for row in rows.values() {
        if row.knot.crossings <= max_n {
            by_level.entry(row.knot.crossings).or_default().push(row);
        }
    }
    for (n, level_rows) in by_level {
        let values = level_rows
            .par_iter()
            .map(|row| Ok((row.knot, u_minus_of_row(row, table)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        table.set_level(n, values);
    }
    Ok(())
}

/// Every splice sequence realizing `u-(code)`.
///
/// Step `i` records the 1-based position, in the code current at that step,
/// of the first occurrence of the spliced crossing. Codes between steps are
/// the kink-free normalized splice results, not their reduced forms.
pub fn enumerate_min_sequences(
    code: &GaussCode,
    ddt: &DtIndex,
    table: &CcTable,
) -> Result<Vec<Vec<usize>>> {
    let code = code.remove_kinks();
    let target = u_minus_of_code(&code, ddt, table)?;
    let mut memo = HashMap::new();
    sequences(&code, target, ddt, table, &mut memo)
}

fn sequences(
    code: &GaussCode,
    target: u32,
    ddt: &DtIndex,
    table: &CcTable,
    memo: &mut HashMap<GaussCode, Vec<Vec<usize>>>,
) -> Result<Vec<Vec<usize>>> {
    if code.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    if let Some(found) = memo.get(code) {
        return Ok(found.clone());
    }
    let occ = code.occurrences();
    let mut out = Vec::new();
    for k in 1..=code.crossings() as u32 {
        let next = code.splice_at(k)?;
        let rest = table.sum(&summand_names(&next, ddt)?)?;
        if rest + 1 != target {
            continue;
        }
        let position = occ[k as usize - 1].0 + 1;
        for tail in sequences(&next, rest, ddt, table, memo)? {
            let mut seq = Vec::with_capacity(tail.len() + 1);
            seq.push(position);
            seq.extend(tail);
            out.push(seq);
        }
    }
    memo.insert(code.clone(), out.clone());
    Ok(out)
}
