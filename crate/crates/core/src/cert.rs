//! JSON certificates. Keys are emitted in sorted order and every value is a
//! function of the parameters and seeds, so repeated runs are byte-identical.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::genset::{LayerAssignment, ModuleSet};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct Certificate {
    command: String,
    parameters: Map<String, Value>,
    sections: Map<String, Value>,
    passed: bool,
}

impl Certificate {
    pub fn new(command: &str) -> Self {
        Certificate { command: command.to_string(), parameters: Map::new(), sections: Map::new(), passed: true }
    }

    pub fn parameter(&mut self, key: &str, value: impl Serialize) -> Result<&mut Self> {
        self.parameters.insert(key.to_string(), to_value(value)?);
        Ok(self)
    }

    pub fn section(&mut self, key: &str, value: impl Serialize) -> Result<&mut Self> {
        self.sections.insert(key.to_string(), to_value(value)?);
        Ok(self)
    }

    /// Records a verdict; the certificate passes only if every verdict does.
    pub fn verdict(&mut self, key: &str, passed: bool) -> &mut Self {
        self.passed &= passed;
        let verdicts = self.sections.entry("verdicts").or_insert_with(|| Value::Object(Map::new()));
        if let Value::Object(m) = verdicts {
            m.insert(key.to_string(), Value::Bool(passed));
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn to_value(&self) -> Value {
        json!({
            "tool": "repdim",
            "tool_version": env!("CARGO_PKG_VERSION"),
            "certificate_version": CERTIFICATE_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "sections": self.sections,
            "passed": self.passed,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }
}

fn to_value(v: impl Serialize) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Verification(format!("certificate serialization: {e}")))
}

/// The module set with its layers: labels, fingerprints and explicit action matrices.
pub fn module_set_section(set: &ModuleSet, layers: &LayerAssignment) -> Result<Value> {
    let members = set
        .members()
        .iter()
        .map(|m| {
            Ok(json!({
                "label": m.label,
                "layer": layers.layer_of.get(&m.label),
                "fingerprint": to_value(&m.fingerprint)?,
                "module": to_value(m.module.to_payload())?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "p": set.group().p.get(),
        "rank": set.group().rank,
        "members": members,
        "layers": layers.layers,
        "r_d_sequence": layers.r_d_sequence,
        "n_layers": layers.n_layers(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Prime;
    use crate::genset::{build_np, layer_partition, BuildOptions};
    use crate::module::{ModulePayload, PModule};
    use crate::pgroup::ElemAbelianGroup;

    #[test]
    fn keys_are_sorted_and_output_is_stable() {
        let g = ElemAbelianGroup::new(Prime::new(2).unwrap(), 2);
        let make = || {
            let set = build_np(g, &BuildOptions::default()).unwrap();
            let layers = layer_partition(&set).unwrap();
            let mut c = Certificate::new("mp");
            c.parameter("p", 2).unwrap().parameter("rank", 2).unwrap();
            c.section("module_set", module_set_section(&set, &layers).unwrap()).unwrap();
            c.verdict("equality", true);
            c.to_json()
        };
        let a = make();
        assert_eq!(a, make());
        let v: Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(a.find("\"certificate_version\"").unwrap() < a.find("\"command\"").unwrap());
        assert_eq!(v["sections"]["module_set"]["n_layers"], 4);
        assert_eq!(v["passed"], true);
    }

    #[test]
    fn modules_round_trip_through_the_certificate() {
        let g = ElemAbelianGroup::new(Prime::new(3).unwrap(), 1);
        let set = build_np(g, &BuildOptions::default()).unwrap();
        let layers = layer_partition(&set).unwrap();
        let v = module_set_section(&set, &layers).unwrap();
        for (m, json) in set.members().iter().zip(v["members"].as_array().unwrap()) {
            let payload: ModulePayload = serde_json::from_value(json["module"].clone()).unwrap();
            assert_eq!(PModule::from_payload(&payload).unwrap(), m.module);
        }
    }

    #[test]
    fn failed_verdict_fails_the_certificate() {
        let mut c = Certificate::new("verify");
        c.verdict("a", true).verdict("b", false);
        assert!(!c.passed());
        assert_eq!(c.to_value()["sections"]["verdicts"]["b"], false);
    }
}
