//! Crosscap numbers of prime alternating knots, computed from unsigned Gauss
//! codes by the splice-unknotting recursion and checked against a
//! state-surface enumeration.

pub mod cc_engine;
pub mod codes;
pub mod embedding;
pub mod error;
pub mod flype;
pub mod oracle;
pub mod splice_table;
pub mod tables;

pub use cc_engine::{CcTable, SpliceRows};
pub use codes::{DtCode, GaussCode, KnotName, SummandList};
pub use embedding::{CrossingSigns, Diagram, FaceColor, FaceData, RotationSystem};
pub use error::{Error, Result};
pub use flype::{FlypeCandidate, Orbit};
pub use splice_table::{DtIndex, SpliceRow};
pub use tables::{CodeFormat, TableSet};
