//! Serialisation: the textual clause syntax, TPTP CNF files, proof JSON and
//! run reports.

mod cursor;
pub mod proof;
pub mod report;
pub mod syntax;
pub mod tptp;

pub use cursor::ParseError;
pub use proof::{proof_from_json, proof_to_json, read_proof, write_proof, ProofFormatError};
pub use report::{GrowthCheck, OracleSummary, RunReport, Verdict};
pub use syntax::{parse_atom, parse_clause, parse_term};
pub use tptp::{export_tptp, import_tptp};
