//! Machine-readable run reports, schema `cu-lattice/1`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::model::CuModel;
use crate::real::NamedCheck;

pub const SCHEMA: &str = "cu-lattice/1";

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    /// SHA-256 of the model's canonical JSON.
    pub model_digest: Option<String>,
    pub seed: u64,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<NamedCheck>,
    pub witnesses: Value,
    pub elapsed_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, model: Option<&CuModel>, seed: u64) -> Self {
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            model_digest: model.map(digest),
            seed,
            params: BTreeMap::new(),
            checks: Vec::new(),
            witnesses: Value::Null,
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("param serializes"));
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing field zeroed, for byte comparisons.
    pub fn to_json_untimed(&self) -> String {
        RunReport { elapsed_ms: 0, ..self.clone() }.to_json()
    }
}

pub fn digest(m: &CuModel) -> String {
    hex::encode(Sha256::digest(m.to_json().as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_distinguishes_models() {
        let a = digest(&CuModel::nbar_power(2));
        assert_eq!(a, digest(&CuModel::nbar_power(2)));
        assert_eq!(a.len(), 64);
        assert_ne!(a, digest(&CuModel::nbar_power(3)));
    }

    #[test]
    fn untimed_json_ignores_elapsed() {
        let mut r = RunReport::new("x", None, 3).param("trials", 10);
        r.checks.push(NamedCheck::new("c", true, ""));
        let a = r.to_json_untimed();
        r.elapsed_ms = 99;
        assert_eq!(a, r.to_json_untimed());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["params"]["trials"], 10);
        assert!(r.passed());
    }
}
