//! Run metadata embedded in every JSON artifact.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything that determines an output. Equal manifests give byte-identical
/// artifacts, so nothing time- or host-dependent belongs here.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub parameters: BTreeMap<String, Value>,
    /// Tree condition T3 is never checked.
    pub t3_verified: bool,
}

impl RunManifest {
    pub fn new(command: &str) -> RunManifest {
        RunManifest {
            tool: "braidforge",
            version: VERSION,
            command: command.to_string(),
            inputs: Vec::new(),
            parameters: BTreeMap::new(),
            t3_verified: false,
        }
    }

    pub fn input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest { path: path.to_string(), sha256: sha256_hex(bytes) });
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }

    #[test]
    fn parameters_serialize_sorted() {
        let mut m = RunManifest::new("h1");
        m.param("n", 4);
        m.param("max_steps", 10);
        let s = serde_json::to_string(&m.parameters).unwrap();
        assert_eq!(s, r#"{"max_steps":10,"n":4}"#);
    }
}
