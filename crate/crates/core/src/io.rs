//! File loading and JSON artifact writing for the command-line front end.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::manifest::RunManifest;
use crate::presentation::{FPGroup, PresentationJson};
use crate::representations::{AssignmentJson, UnitaryAssignment};

/// Reads a file and records its digest in the manifest.
pub fn read_input(path: &str, manifest: &mut RunManifest) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
    manifest.input(path, &bytes);
    String::from_utf8(bytes).map_err(|_| Error::Input(format!("{path} is not UTF-8")))
}

/// Accepts either a bare object or an artifact written by this tool, whose
/// payload sits under `result`.
fn payload(text: &str) -> Result<Value> {
    let mut v: Value = serde_json::from_str(text)?;
    if let Some(r) = v.get_mut("result") {
        return Ok(r.take());
    }
    Ok(v)
}

pub fn parse_presentation(text: &str) -> Result<FPGroup> {
    let p: PresentationJson = serde_json::from_value(payload(text)?)?;
    FPGroup::from_json(&p)
}

pub fn parse_assignment(text: &str) -> Result<UnitaryAssignment> {
    let v = payload(text)?;
    let a: AssignmentJson = serde_json::from_value(v.get("assignment").cloned().unwrap_or(v))?;
    UnitaryAssignment::from_json(&a)
}

#[derive(Serialize)]
struct Artifact<'a, T: Serialize> {
    manifest: &'a RunManifest,
    result: &'a T,
}

/// Pretty JSON with a trailing newline; key order is fixed by the types.
pub fn artifact<T: Serialize>(manifest: &RunManifest, result: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&Artifact { manifest, result })?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrapped_and_bare_presentations() {
        let bare = r#"{"generators":["a","b"],"relators":[[[0,1],[1,1],[0,-1],[1,-1]]]}"#;
        let wrapped = format!(r#"{{"manifest":{{}},"result":{bare}}}"#);
        let p = parse_presentation(bare).unwrap();
        assert_eq!(p, parse_presentation(&wrapped).unwrap());
        assert_eq!(p.to_string(), "⟨ a, b | a b a^-1 b^-1 ⟩");
        assert!(parse_presentation(r#"{"generators":["a"],"relators":[[[3,1]]]}"#).is_err());
    }

    #[test]
    fn unreadable_input() {
        let mut m = RunManifest::new("x");
        assert!(matches!(read_input("/nonexistent/graph.json", &mut m), Err(Error::Input(_))));
    }
}
