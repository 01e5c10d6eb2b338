//! Knot types left behind by each single splice of a stored diagram.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::codes::{DtCode, GaussCode, KnotName};
use crate::error::{Error, Result};

/// Reduced DT code of every known diagram, mapped to its knot.
pub type DtIndex = HashMap<DtCode, KnotName>;

/// Per crossing of the stored diagram, the names of the summands of its
/// splice. An unknotted result is recorded as `[0_1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpliceRow {
    pub knot: KnotName,
    pub per_crossing: Vec<Vec<KnotName>>,
}

/// Name of a prime, kink-free, realizable code.
pub fn name_of(code: &GaussCode, ddt: &DtIndex) -> Result<KnotName> {
    if code.is_empty() {
        return Ok(KnotName::UNKNOT);
    }
    let key = code.reduced_form().to_dt()?;
    ddt.get(&key)
        .copied()
        .ok_or_else(|| Error::UnknownDiagram(key.to_string()))
}

/// Sorted names of the connect summands of `code`; `[0_1]` for the unknot.
pub fn summand_names(code: &GaussCode, ddt: &DtIndex) -> Result<Vec<KnotName>> {
    let summands = code.decompose_connect_sum();
    if summands.is_empty() {
        return Ok(vec![KnotName::UNKNOT]);
    }
    let mut names = summands
        .iter()
        .map(|s| name_of(s, ddt))
        .collect::<Result<Vec<_>>>()?;
    names.sort();
    Ok(names)
}

pub fn splice_row(knot: KnotName, code: &GaussCode, ddt: &DtIndex) -> Result<SpliceRow> {
    let per_crossing = (1..=code.crossings() as u32)
        .map(|k| summand_names(&code.splice_at(k)?, ddt))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpliceRow { knot, per_crossing })
}
