//! JSON and CSV renderings of tables and verification runs.
//!
//! Every number is written as a decimal string and object keys keep their
//! declaration order, so a report parsed back and re-serialized is
//! byte-identical.

use serde::{Deserialize, Serialize};

use crate::analysis::VerificationRecord;
use crate::sequences::{QuadraticSpec, ResidueTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub a: String,
    pub b: String,
    pub name: Option<String>,
}

impl From<&QuadraticSpec> for SpecJson {
    fn from(spec: &QuadraticSpec) -> Self {
        SpecJson {
            a: spec.a().to_string(),
            b: spec.b().to_string(),
            name: spec.name().map(str::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub spec: SpecJson,
    pub p: String,
    pub tables_agree: bool,
    pub pattern: String,
    pub palindromic: bool,
    pub mirror_holds: bool,
    pub condition_value: String,
    pub condition_ok: bool,
    pub degenerate_b: bool,
}

impl From<&VerificationRecord> for RecordJson {
    fn from(r: &VerificationRecord) -> Self {
        RecordJson {
            spec: SpecJson::from(&r.spec),
            p: r.p.to_string(),
            tables_agree: r.tables_agree,
            pattern: r.pattern.to_string(),
            palindromic: r.palindromic,
            mirror_holds: r.mirror_holds,
            condition_value: r.condition_value.value().to_string(),
            condition_ok: r.condition_ok,
            degenerate_b: r.degenerate_b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spec: SpecJson,
    pub primes_checked: String,
    /// Primes whose record is a violation.
    pub violations: Vec<String>,
    pub records: Vec<RecordJson>,
}

impl VerifyReport {
    pub fn new(spec: &QuadraticSpec, records: &[VerificationRecord]) -> Self {
        VerifyReport {
            spec: SpecJson::from(spec),
            primes_checked: records.len().to_string(),
            violations: records
                .iter()
                .filter(|r| r.is_violation())
                .map(|r| r.p.to_string())
                .collect(),
            records: records.iter().map(RecordJson::from).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "spec,p,tables_agree,pattern,palindromic,mirror_holds,condition_value,condition_ok,degenerate_b\n",
        );
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},\"{}\",{},{},{},{},{}\n",
                csv_field(&spec_label(&r.spec)),
                r.p,
                r.tables_agree,
                r.pattern,
                r.palindromic,
                r.mirror_holds,
                r.condition_value,
                r.condition_ok,
                r.degenerate_b,
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub spec: SpecJson,
    pub p: String,
    pub tables_agree: bool,
    pub residues: Vec<String>,
}

impl TableReport {
    /// Reports `primary`, flagging whether `other` matches it.
    pub fn new(primary: &ResidueTable, other: &ResidueTable) -> Self {
        TableReport {
            spec: SpecJson::from(&primary.spec),
            p: primary.modulus.get().to_string(),
            tables_agree: primary.agrees_with(other),
            residues: primary.residues().iter().map(u64::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,residue\n");
        for (j, r) in self.residues.iter().enumerate() {
            out.push_str(&format!("{j},{r}\n"));
        }
        out
    }
}

fn spec_label(spec: &SpecJson) -> String {
    match &spec.name {
        Some(n) => n.clone(),
        None => format!("quad:a={},b={}", spec.a, spec.b),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
