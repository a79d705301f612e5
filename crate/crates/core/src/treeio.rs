//! Herbrand tree serialization: JSON (read and write), DOT and indented text.
//!
//! JSON leaves are `{"leaf":{"axiom":name,"args":[term,...]}}` and nodes are
//! `{"node":{"atom":"P(t)","true":tree,"false":tree}}`.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::frontend::Theory;
use crate::logic::{GroundTheory, HerbrandTree};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeFormatError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{path}: {msg}")]
    Shape { path: String, msg: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Dot,
    Text,
}

pub fn to_json(t: &HerbrandTree) -> Value {
    match t {
        HerbrandTree::Contrad(i) => json!({
            "leaf": {
                "axiom": i.name(),
                "args": i.args().iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            }
        }),
        HerbrandTree::Exp(a, l, r) => json!({
            "node": {
                "atom": a.to_string(),
                "true": to_json(l),
                "false": to_json(r),
            }
        }),
    }
}

pub fn to_json_string(t: &HerbrandTree) -> String {
    serde_json::to_string_pretty(&to_json(t)).expect("trees serialize")
}

fn shape(path: &str, msg: impl Into<String>) -> TreeFormatError {
    TreeFormatError::Shape {
        path: path.into(),
        msg: msg.into(),
    }
}

fn single<'v>(
    v: &'v Value,
    path: &str,
) -> Result<(&'v str, &'v serde_json::Map<String, Value>), TreeFormatError> {
    let obj = v
        .as_object()
        .ok_or_else(|| shape(path, "expected an object"))?;
    if obj.len() != 1 {
        return Err(shape(path, "expected exactly one of `leaf` or `node`"));
    }
    let (k, body) = obj.iter().next().expect("one entry");
    let body = body
        .as_object()
        .ok_or_else(|| shape(path, format!("`{k}` must hold an object")))?;
    Ok((k.as_str(), body))
}

fn field<'v>(
    body: &'v serde_json::Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'v Value, TreeFormatError> {
    body.get(key)
        .ok_or_else(|| shape(path, format!("missing `{key}`")))
}

fn from_value(th: &Theory, v: &Value, path: &str) -> Result<HerbrandTree, TreeFormatError> {
    let (kind, body) = single(v, path)?;
    match kind {
        "leaf" => {
            let name = field(body, "axiom", path)?
                .as_str()
                .ok_or_else(|| shape(path, "`axiom` must be a string"))?;
            let args = field(body, "args", path)?
                .as_array()
                .ok_or_else(|| shape(path, "`args` must be an array"))?
                .iter()
                .map(|a| {
                    let s = a
                        .as_str()
                        .ok_or_else(|| shape(path, "arguments must be strings"))?;
                    th.parse_term(s)
                        .map_err(|e| shape(path, format!("argument `{s}`: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let shown = args
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            th.lookup(name, &args)
                .map(HerbrandTree::Contrad)
                .ok_or_else(|| shape(path, format!("`{name}({shown})` is not an axiom instance")))
        }
        "node" => {
            let s = field(body, "atom", path)?
                .as_str()
                .ok_or_else(|| shape(path, "`atom` must be a string"))?;
            let a = th
                .parse_atom(s)
                .map_err(|e| shape(path, format!("atom `{s}`: {e}")))?;
            let l = from_value(th, field(body, "true", path)?, &format!("{path}/T"))?;
            let r = from_value(th, field(body, "false", path)?, &format!("{path}/F"))?;
            Ok(HerbrandTree::exp(a, l, r))
        }
        k => Err(shape(path, format!("unknown tree kind `{k}`"))),
    }
}

/// Reads a JSON tree, resolving atoms and indices against `th`.
pub fn from_json(th: &Theory, src: &str) -> Result<HerbrandTree, TreeFormatError> {
    let v: Value = serde_json::from_str(src).map_err(|e| TreeFormatError::Json(e.to_string()))?;
    from_value(th, &v, "tree")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(t: &HerbrandTree) -> String {
    fn go(t: &HerbrandTree, next: &mut usize, out: &mut String) -> usize {
        let id = *next;
        *next += 1;
        match t {
            HerbrandTree::Contrad(i) => {
                writeln!(
                    out,
                    "  n{id} [shape=box, label=\"{}\"];",
                    escape(&i.to_string())
                )
                .unwrap();
            }
            HerbrandTree::Exp(a, l, r) => {
                writeln!(out, "  n{id} [label=\"{}\"];", escape(&a.to_string())).unwrap();
                let lt = go(l, next, out);
                writeln!(out, "  n{id} -> n{lt} [label=\"T\"];").unwrap();
                let rt = go(r, next, out);
                writeln!(out, "  n{id} -> n{rt} [label=\"F\"];").unwrap();
            }
        }
        id
    }
    let mut out = String::from("digraph herbrand {\n");
    go(t, &mut 0, &mut out);
    out.push_str("}\n");
    out
}

pub fn to_text(t: &HerbrandTree) -> String {
    fn go(t: &HerbrandTree, depth: usize, label: &str, out: &mut String) {
        let pad = "  ".repeat(depth);
        match t {
            HerbrandTree::Contrad(i) => writeln!(out, "{pad}{label}{i}").unwrap(),
            HerbrandTree::Exp(a, l, r) => {
                writeln!(out, "{pad}{label}{a}?").unwrap();
                go(l, depth + 1, "T: ", out);
                go(r, depth + 1, "F: ", out);
            }
        }
    }
    let mut out = String::new();
    go(t, 0, "", &mut out);
    out
}

pub fn render(t: &HerbrandTree, format: Format) -> String {
    match format {
        Format::Json => to_json_string(t) + "\n",
        Format::Dot => to_dot(t),
        Format::Text => to_text(t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_tree;

    fn white_crow() -> (Theory, HerbrandTree) {
        let th = Theory::from_source(include_str!("../examples/whitecrow.thy")).unwrap();
        let t = build_tree(&th, Default::default()).unwrap();
        (th, t)
    }

    #[test]
    fn json_round_trip() {
        let (th, t) = white_crow();
        let s = to_json_string(&t);
        assert_eq!(from_json(&th, &s).unwrap(), t);
        let v = to_json(&t);
        assert_eq!(v["node"]["atom"], "Crow(42)");
        assert_eq!(
            v["node"]["false"],
            json!({"leaf": {"axiom": "crow42", "args": []}})
        );
        assert_eq!(
            v["node"]["true"]["node"]["false"],
            json!({"leaf": {"axiom": "crow_black", "args": ["42"]}})
        );
    }

    #[test]
    fn json_errors_carry_the_path() {
        let (th, _) = white_crow();
        let bad = r#"{"node":{"atom":"Crow(42)","true":{"leaf":{"axiom":"zzz","args":[]}},"false":{"leaf":{"axiom":"crow42","args":[]}}}}"#;
        let e = from_json(&th, bad).unwrap_err();
        assert!(e.to_string().starts_with("tree/T:"), "{e}");
        assert!(matches!(
            from_json(&th, "[1"),
            Err(TreeFormatError::Json(_))
        ));
        assert!(from_json(&th, r#"{"leaf":{"axiom":"crow42","args":["7"]}}"#).is_err());
        assert!(from_json(&th, r#"{"node":{"atom":"Dog(1)","true":{},"false":{}}}"#).is_err());
    }

    #[test]
    fn dot_and_text() {
        let (_, t) = white_crow();
        let dot = to_dot(&t);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("[label=\"T\"]").count(), 3);
        assert_eq!(dot.matches("[label=\"F\"]").count(), 3);
        assert_eq!(dot.matches("shape=box").count(), 4);
        let text = to_text(&t);
        assert_eq!(text.lines().next(), Some("Crow(42)?"));
        assert_eq!(text.lines().count(), 7);
        assert!(text.contains("\n  F: crow42\n"));
    }
}
