//! Problem-spec JSON documents.
//!
//! Keys may be nested (`{"task": {"reach": "F y"}}`) or dotted
//! (`{"task.reach": "F y"}`).

use serde_json::{Map, Value};

use finsynth::logic::{parse, AtomPartition, Formula};
use finsynth::synthesis::ProblemSpec;

use crate::CliError;

const FORMULA_KEYS: [&str; 4] = ["env.safe", "env.reach", "task.reach", "task.safe"];

/// Flattens nested objects into dotted keys, one level deep.
fn flatten(doc: &Map<String, Value>) -> Result<Map<String, Value>, CliError> {
    let mut out = Map::new();
    for (k, v) in doc {
        match (k.as_str(), v) {
            ("atoms" | "env" | "task", Value::Object(inner)) => {
                for (ik, iv) in inner {
                    out.insert(format!("{k}.{ik}"), iv.clone());
                }
            }
            _ => {
                out.insert(k.clone(), v.clone());
            }
        }
    }
    for k in out.keys() {
        if !(k == "atoms.agent" || k == "atoms.env" || FORMULA_KEYS.contains(&k.as_str())) {
            return Err(CliError::Spec(format!("unknown key `{k}`")));
        }
    }
    Ok(out)
}

fn names(doc: &Map<String, Value>, key: &str) -> Result<Vec<String>, CliError> {
    match doc.get(key) {
        None | Some(Value::Null) => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .map(|v| {
                v.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| CliError::Spec(format!("`{key}` must list strings")))
            })
            .collect(),
        Some(_) => Err(CliError::Spec(format!("`{key}` must be an array"))),
    }
}

/// Parses a spec document. Formula errors name the offending key.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Spec(format!("invalid JSON: {e}")))?;
    let Value::Object(doc) = value else {
        return Err(CliError::Spec("top level must be an object".into()));
    };
    let doc = flatten(&doc)?;
    if !doc.contains_key("atoms.agent") && !doc.contains_key("atoms.env") {
        return Err(CliError::Spec("missing `atoms`".into()));
    }
    let atoms = AtomPartition::new(names(&doc, "atoms.agent")?, names(&doc, "atoms.env")?)
        .map_err(|e| CliError::Spec(e.to_string()))?;
    let mut formulas: Vec<Option<Formula>> = Vec::new();
    for key in FORMULA_KEYS {
        let f = match doc.get(key) {
            None | Some(Value::Null) => None,
            Some(Value::String(text)) => Some(
                parse(text, &atoms).map_err(|e| CliError::Spec(format!("{key}: {e}")))?,
            ),
            Some(_) => return Err(CliError::Spec(format!("`{key}` must be a formula string"))),
        };
        formulas.push(f);
    }
    let mut it = formulas.into_iter();
    let mut spec = ProblemSpec::new(atoms);
    spec.env_safe = it.next().unwrap();
    spec.env_reach = it.next().unwrap();
    spec.task_reach = it.next().unwrap();
    spec.task_safe = it.next().unwrap();
    Ok(spec)
}

/// Renders a spec in the nested layout.
pub fn spec_to_json(spec: &ProblemSpec) -> String {
    let mut doc = Map::new();
    let mut atoms = Map::new();
    atoms.insert("agent".into(), spec.atoms.agent().into());
    atoms.insert("env".into(), spec.atoms.env().into());
    doc.insert("atoms".into(), Value::Object(atoms));
    let mut put = |group: &str, key: &str, f: &Option<Formula>| {
        if let Some(f) = f {
            let entry = doc
                .entry(group.to_string())
                .or_insert_with(|| Value::Object(Map::new()));
            entry
                .as_object_mut()
                .unwrap()
                .insert(key.into(), Value::String(f.to_string()));
        }
    };
    put("env", "safe", &spec.env_safe);
    put("env", "reach", &spec.env_reach);
    put("task", "reach", &spec.task_reach);
    put("task", "safe", &spec.task_safe);
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).unwrap();
    s.push('\n');
    s
}
