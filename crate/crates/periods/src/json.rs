//! Serialized report shapes. Exact values are strings; see `docs/report-schema.md`.

use periods_core::report::{CheckRecord, Report};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct ChainEntry {
    pub edge: String,
    pub coeff: i64,
}

#[derive(Debug, Serialize)]
pub struct InfoJson {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub genus: usize,
    /// `(edge, weight)` in edge order.
    pub weights: Vec<(String, String)>,
    pub tree: Vec<String>,
    pub cotree: Vec<String>,
    pub rest: Vec<String>,
    pub basis: Vec<Vec<ChainEntry>>,
    pub dual_basis: Vec<Vec<ChainEntry>>,
    pub m: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct BlocksJson {
    pub im: Vec<Vec<String>>,
    pub re: Vec<Vec<String>>,
    pub residual: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct PeriodJson {
    pub name: String,
    pub genus: usize,
    pub omega_l: Vec<Vec<String>>,
    pub l: Vec<Vec<String>>,
    pub tree_sum: String,
    pub wp_potential: String,
    pub wp_potential_ln_approx: f64,
    pub normalized: Option<BlocksJson>,
}

#[derive(Debug, Serialize)]
pub struct MinorJson {
    pub rows: String,
    pub det: String,
}

#[derive(Debug, Serialize)]
pub struct QuasiTreeJson {
    pub edges: Vec<String>,
    pub weight: String,
    pub class_matrix: Vec<Vec<String>>,
    pub minors: Vec<MinorJson>,
}

#[derive(Debug, Serialize)]
pub struct QuasiTreesJson {
    pub name: String,
    pub k: usize,
    pub count: usize,
    pub quasi_trees: Vec<QuasiTreeJson>,
}

#[derive(Debug, Serialize)]
pub struct RecordJson {
    pub check: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl From<&CheckRecord> for RecordJson {
    fn from(r: &CheckRecord) -> Self {
        RecordJson {
            check: r.check.clone(),
            params: r.params.clone(),
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
            pass: r.pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteJson {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub records: Vec<RecordJson>,
}

impl SuiteJson {
    pub fn from_report(suite: &str, rep: &Report) -> Self {
        SuiteJson {
            suite: suite.into(),
            passed: rep.passed(),
            failed: rep.failed(),
            records: rep.records.iter().map(RecordJson::from).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    pub name: String,
    pub suites: Vec<SuiteJson>,
    pub summary: Summary,
}

impl VerifyJson {
    pub fn new(name: &str, suites: Vec<SuiteJson>, total: &Report) -> Self {
        let summary = Summary { passed: total.passed(), failed: total.failed(), all_pass: total.all_pass() };
        VerifyJson { name: name.into(), suites, summary }
    }
}
