//! Machine-readable run reports. Everything except `wall_time_ms` depends
//! only on the inputs, so [`RunReport::payload_json`] is byte-stable.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::prover::{ProverResult, ProverStatus};
use crate::refutation::{closed_form_a, occ_table, recurrence_a, RefutationProof};

/// Id of the codomain clause whose uses follow the growth law.
pub const CODOMAIN_CLAUSE: &str = "C5";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// The command-line arguments after the program name.
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clauses: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proof_nodes: Option<usize>,
    /// Decimal counts, keyed by input clause id.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub occ: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<GrowthCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<serde_json::Value>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub ok: bool,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl Verdict {
    pub fn pass(status: impl Into<String>) -> Self {
        Verdict { ok: true, status: status.into(), message: None }
    }

    pub fn fail(status: impl Into<String>, message: impl Into<String>) -> Self {
        Verdict { ok: false, status: status.into(), message: Some(message.into()) }
    }
}

/// Uses of the codomain clause against the recurrence and its closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthCheck {
    pub m: u64,
    pub occ: String,
    pub recurrence_a: String,
    pub closed_form_a: String,
    pub matches: bool,
}

impl GrowthCheck {
    /// Compares the uses of `C5` in a refutation of `C(m-1)` with `a(m)`.
    pub fn new(m: u64, occ: &BigUint) -> Self {
        let rec = recurrence_a(m);
        let closed = closed_form_a(m);
        GrowthCheck {
            m,
            occ: occ.to_string(),
            matches: *occ == rec && rec == closed,
            recurrence_a: rec.to_string(),
            closed_form_a: closed.to_string(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub status: String,
    pub generated: usize,
    pub kept: usize,
    pub subsumed: usize,
    pub given: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub input_uses: BTreeMap<String, String>,
}

impl OracleSummary {
    pub fn new(result: &ProverResult) -> Self {
        let (status, trace_nodes) = match &result.status {
            ProverStatus::Refuted(p) => ("refuted".to_string(), Some(p.len())),
            ProverStatus::Saturated => ("saturated".to_string(), None),
            ProverStatus::ResourceOut(why) => (format!("resource-out: {why}"), None),
        };
        OracleSummary {
            status,
            generated: result.stats.generated,
            kept: result.stats.kept,
            subsumed: result.stats.subsumed,
            given: result.stats.given,
            trace_nodes,
            input_uses: decimal(&result.stats.input_uses),
        }
    }
}

fn decimal(table: &BTreeMap<String, BigUint>) -> BTreeMap<String, String> {
    table.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

impl RunReport {
    pub fn new(command: &[String]) -> Self {
        RunReport { command: command.to_vec(), ..RunReport::default() }
    }

    /// Fills node count, occ table and, when the codomain clause is an
    /// input, the growth comparison.
    pub fn with_proof(mut self, p: &RefutationProof) -> Self {
        let table = occ_table(p);
        self.proof_nodes = Some(p.len());
        self.clauses = Some(p.inputs.len());
        if let (Some(n), Some(uses)) = (p.inputs.parameter, table.get(CODOMAIN_CLAUSE)) {
            self.growth = Some(GrowthCheck::new(n.0 + 1, uses));
        }
        self.occ = decimal(&table);
        self
    }

    /// The report without wall time, suitable for golden comparison.
    pub fn payload_json(&self) -> String {
        let stable = RunReport { wall_time_ms: None, ..self.clone() };
        serde_json::to_string_pretty(&stable).expect("reports serialise")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }
}
