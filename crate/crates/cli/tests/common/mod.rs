//! Shared helpers for the CLI test suites: running the binary and checking
//! JSON output against the schemas shipped under `docs/schemas/`.
//!
//! Each test target compiles its own copy, so helpers a target does not
//! use are expected.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tauberian"))
}

pub fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

pub fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

/// Checks `value` against the named schema file. Covers the subset of JSON
/// Schema the shipped schemas use: type, required, properties,
/// additionalProperties, items, enum, and $ref (file-relative or
/// `#/definitions/...`).
pub fn assert_valid(schema_file: &str, value: &Value) {
    let path = schema_dir().join(schema_file);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|err| panic!("cannot read {}: {err}", path.display()));
    let schema: Value = serde_json::from_str(&text).expect("schema parses");
    let mut errors = Vec::new();
    check(&schema, &schema, value, schema_file, "$", &mut errors);
    assert!(
        errors.is_empty(),
        "{schema_file} violations:\n  {}",
        errors.join("\n  ")
    );
}

fn resolve(root: &Value, reference: &str, file: &str) -> (Value, String) {
    if let Some(pointer) = reference.strip_prefix("#/") {
        let mut node = root;
        for segment in pointer.split('/') {
            node = node
                .get(segment)
                .unwrap_or_else(|| panic!("{file}: dangling $ref {reference}"));
        }
        (node.clone(), file.to_string())
    } else {
        let path = schema_dir().join(reference);
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|err| panic!("cannot read {}: {err}", path.display()));
        (
            serde_json::from_str(&text).expect("referenced schema parses"),
            reference.to_string(),
        )
    }
}

fn check(
    root: &Value,
    schema: &Value,
    value: &Value,
    file: &str,
    at: &str,
    errors: &mut Vec<String>,
) {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let (resolved, new_file) = resolve(root, reference, file);
        check(&resolved, &resolved, value, &new_file, at, errors);
        return;
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            errors.push(format!("{at}: {value} not in enum {allowed:?}"));
        }
        return;
    }
    if let Some(expected) = schema.get("type") {
        let names: Vec<&str> = match expected {
            Value::String(name) => vec![name.as_str()],
            Value::Array(names) => names.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let matches = names.iter().any(|name| match *name {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "integer" => value.is_i64() || value.is_u64(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            _ => false,
        });
        if !matches {
            errors.push(format!("{at}: expected type {names:?}, got {value}"));
            return;
        }
    }
    if let Some(object) = value.as_object() {
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for name in required.iter().filter_map(Value::as_str) {
                if !object.contains_key(name) {
                    errors.push(format!("{at}: missing required field `{name}`"));
                }
            }
        }
        if let Some(properties) = schema.get("properties").and_then(Value::as_object) {
            for (name, subschema) in properties {
                if let Some(subvalue) = object.get(name) {
                    check(root, subschema, subvalue, file, &format!("{at}.{name}"), errors);
                }
            }
            if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
                for name in object.keys() {
                    if !properties.contains_key(name) {
                        errors.push(format!("{at}: unexpected field `{name}`"));
                    }
                }
            }
        }
    }
    if let Some(array) = value.as_array() {
        if let Some(items) = schema.get("items") {
            for (i, item) in array.iter().enumerate() {
                check(root, items, item, file, &format!("{at}[{i}]"), errors);
            }
        }
    }
}
