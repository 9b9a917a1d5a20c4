use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one check on one instance. Serializes as one JSON line with
/// keys in declaration order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub hypothesis_met: bool,
    pub computed: BTreeMap<String, Value>,
    pub bound: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn new(check: &str, instance: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            instance: instance.to_string(),
            hypothesis_met: true,
            computed: BTreeMap::new(),
            bound: String::new(),
            verdict: Verdict::Pass,
            witness: None,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.computed.insert(key.to_string(), value.into());
        self
    }

    pub fn bound(&mut self, bound: impl Into<String>) -> &mut Self {
        self.bound = bound.into();
        self
    }

    /// Marks the report failed unless `ok`; the first failure's witness is kept.
    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) -> &mut Self {
        if !ok && self.verdict != Verdict::Skipped {
            if self.verdict == Verdict::Pass {
                self.witness = Some(witness());
            }
            self.verdict = Verdict::Fail;
        }
        self
    }

    /// Records an unmet hypothesis by name.
    pub fn skip(&mut self, hypothesis: &str) -> &mut Self {
        self.hypothesis_met = false;
        self.verdict = Verdict::Skipped;
        self.witness = None;
        self.set("failed_hypothesis", hypothesis)
    }

    /// A computability precondition (a configured size bound) that failed.
    pub fn out_of_bounds(&mut self, reason: &str) -> &mut Self {
        self.skip("within configured bounds");
        self.set("bound_exceeded", reason)
    }

    pub fn finish(&mut self) -> CheckReport {
        self.clone()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
