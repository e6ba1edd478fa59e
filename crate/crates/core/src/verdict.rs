//! Outcome of a decision procedure: pass/fail, the clause it concerns, an
//! optional witness cell, and exact values rendered as strings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::setalg::Ball;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub ball: Ball,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub report: BTreeMap<String, String>,
}

impl Verdict {
    pub fn pass(condition: impl Into<String>) -> Self {
        Verdict { ok: true, condition: condition.into(), witness: None, report: BTreeMap::new() }
    }

    pub fn fail(condition: impl Into<String>, ball: Ball, value: impl Into<String>) -> Self {
        Verdict {
            ok: false,
            condition: condition.into(),
            witness: Some(Witness { ball, value: value.into() }),
            report: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.report.insert(key.into(), value.to_string());
        self
    }

    /// Conjunction: the first failing verdict wins; reports of the passing
    /// parts are kept under their condition names.
    pub fn all(condition: impl Into<String>, parts: Vec<Verdict>) -> Self {
        let condition = condition.into();
        let mut report = BTreeMap::new();
        report.insert("check".to_string(), condition.clone());
        let mut failed: Option<Verdict> = None;
        for part in parts {
            report.insert(format!("{}.ok", part.condition), part.ok.to_string());
            for (k, v) in &part.report {
                report.insert(format!("{}.{}", part.condition, k), v.clone());
            }
            if !part.ok && failed.is_none() {
                failed = Some(part);
            }
        }
        match failed {
            None => Verdict { ok: true, condition, witness: None, report },
            Some(f) => Verdict { ok: false, condition: f.condition, witness: f.witness, report },
        }
    }
}
