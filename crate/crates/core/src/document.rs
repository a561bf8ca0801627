//! JSON documents written by the command line tool and the C interface.
//! Exact values are always strings (`"p/q"`), never floats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{parse_rational, IndexSet, PartialMatrix};
use crate::oracle::PropertySpec;
use crate::reduction::ReductionOutcome;
use crate::report::{CheckReport, Counters, MinorWitness, Verdict};
use crate::signature::{Sign, Signature};

pub const REPORT_SCHEMA_VERSION: &str = "1.0";
pub const GADGET_SCHEMA_VERSION: &str = "1.0";

/// JSON Schema for [`ReportDocument`].
pub const REPORT_SCHEMA: &str = include_str!("../schemas/report.schema.json");
/// JSON Schema for [`GadgetDocument`].
pub const GADGET_SCHEMA: &str = include_str!("../schemas/gadget.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyDocument {
    pub name: String,
    pub signature: Vec<String>,
    pub strict: bool,
}

impl PropertyDocument {
    pub fn new(name: &str, spec: &PropertySpec) -> Self {
        PropertyDocument {
            name: name.to_string(),
            signature: signature_strings(&spec.signature),
            strict: spec.strict,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: String,
    pub order: usize,
    pub required_sign: i8,
    pub strict: bool,
}

impl From<&MinorWitness> for WitnessDocument {
    fn from(w: &MinorWitness) -> Self {
        WitnessDocument {
            rows: w.rows.as_slice().to_vec(),
            cols: w.cols.as_slice().to_vec(),
            value: w.value.to_string(),
            order: w.order(),
            required_sign: w.required_sign.as_i8(),
            strict: w.strict,
        }
    }
}

impl WitnessDocument {
    pub fn to_witness(&self) -> Result<MinorWitness> {
        let value = parse_rational(&self.value).map_err(|m| Error::parse(1, None, m))?;
        let required_sign = Sign::from_i8(self.required_sign)
            .ok_or_else(|| Error::Argument(format!("required_sign {} is not +1 or -1", self.required_sign)))?;
        let rows = IndexSet::new(self.rows.clone())?;
        let cols = IndexSet::new(self.cols.clone())?;
        if rows.len() != self.order || cols.len() != self.order {
            return Err(Error::Shape("witness order does not match its index sets".into()));
        }
        Ok(MinorWitness {
            rows,
            cols,
            value,
            required_sign,
            strict: self.strict,
        })
    }
}

/// Output of `tpkit check --output json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: Vec<String>,
    pub property: PropertyDocument,
    pub method: String,
    pub verdict: Verdict,
    pub witness: Option<WitnessDocument>,
    pub counters: Counters,
    pub wall_time_ms: f64,
}

impl ReportDocument {
    pub fn new(
        command: Vec<String>,
        property: PropertyDocument,
        method: &str,
        report: &CheckReport,
        wall_time_ms: f64,
    ) -> Self {
        ReportDocument {
            schema_version: REPORT_SCHEMA_VERSION.to_string(),
            command,
            property,
            method: method.to_string(),
            verdict: report.verdict(),
            witness: report.witness.as_ref().map(WitnessDocument::from),
            counters: report.counters,
            wall_time_ms,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Sidecar written by `tpkit gadget`. `certificate` is the violating minor
/// of the gadget when it fails the check, in matrix coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GadgetDocument {
    pub schema_version: String,
    pub graph: GraphDocument,
    pub k: usize,
    pub strict: bool,
    pub target_signature: Vec<String>,
    pub flipped_signature: Vec<String>,
    pub base_matrix: Vec<Vec<String>>,
    pub matrix: Vec<Vec<Option<String>>>,
    pub verdict: Verdict,
    pub certificate: Option<WitnessDocument>,
    pub has_balanced_biclique: bool,
    pub reduction_holds: bool,
}

impl From<&ReductionOutcome> for GadgetDocument {
    fn from(outcome: &ReductionOutcome) -> Self {
        let inst = &outcome.instance;
        GadgetDocument {
            schema_version: GADGET_SCHEMA_VERSION.to_string(),
            graph: GraphDocument {
                left: inst.graph.left(),
                right: inst.graph.right(),
                edges: inst.graph.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            },
            k: inst.k,
            strict: outcome.strict,
            target_signature: signature_strings(&inst.target_signature),
            flipped_signature: signature_strings(&inst.flipped_signature),
            base_matrix: cell_strings(&inst.base_matrix)
                .into_iter()
                .map(|r| r.into_iter().map(|c| c.unwrap_or_default()).collect())
                .collect(),
            matrix: cell_strings(&inst.output),
            verdict: outcome.brute.verdict(),
            certificate: outcome.brute.witness.as_ref().map(WitnessDocument::from),
            has_balanced_biclique: outcome.has_balanced_biclique,
            reduction_holds: outcome.holds(),
        }
    }
}

pub fn signature_strings(sig: &Signature) -> Vec<String> {
    sig.signs().iter().map(|s| s.symbol().to_string()).collect()
}

fn cell_strings(m: &PartialMatrix) -> Vec<Vec<Option<String>>> {
    (1..=m.rows())
        .map(|i| (1..=m.cols()).map(|j| m.get(i, j).map(|v| v.to_string())).collect())
        .collect()
}
