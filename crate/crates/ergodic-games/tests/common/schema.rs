//! Minimal JSON Schema (draft-07 subset) checker used to hold the CLI's
//! report files to the documents shipped under `schemas/`. Supports the
//! keywords those schemas actually use: type, properties, required,
//! additionalProperties, items, enum, oneOf, minimum, maximum, and $ref
//! (both `#/definitions/...` and sibling-file references).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::Value;

pub struct SchemaStore {
    dir: PathBuf,
    loaded: std::cell::RefCell<BTreeMap<String, Value>>,
}

impl SchemaStore {
    pub fn open(dir: impl AsRef<Path>) -> Self {
        SchemaStore { dir: dir.as_ref().to_path_buf(), loaded: Default::default() }
    }

    /// The repository's schema directory.
    pub fn repo() -> Self {
        Self::open(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas"))
    }

    fn schema(&self, file: &str) -> Value {
        if let Some(v) = self.loaded.borrow().get(file) {
            return v.clone();
        }
        let path = self.dir.join(file);
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("cannot read schema {}: {e}", path.display()));
        let value: Value = serde_json::from_str(&text)
            .unwrap_or_else(|e| panic!("schema {} is not JSON: {e}", path.display()));
        self.loaded.borrow_mut().insert(file.to_string(), value.clone());
        value
    }

    /// Validates `instance` against the schema in `file`; returns all
    /// violations found, empty when conformant.
    pub fn validate(&self, file: &str, instance: &Value) -> Vec<String> {
        let root = self.schema(file);
        let mut errors = Vec::new();
        self.check(&root, &root, instance, "$", &mut errors);
        errors
    }

    /// Panics with a readable report unless `instance` conforms.
    pub fn assert_valid(&self, file: &str, instance: &Value) {
        let errors = self.validate(file, instance);
        assert!(errors.is_empty(), "instance violates {file}:\n  {}", errors.join("\n  "));
    }

    fn resolve<'a>(&self, root: &'a Value, reference: &str) -> (Value, Option<Value>) {
        // Returns (schema, new_root-if-file-changed).
        if let Some(pointer) = reference.strip_prefix("#/") {
            let mut node = root;
            for segment in pointer.split('/') {
                node = node
                    .get(segment)
                    .unwrap_or_else(|| panic!("dangling $ref {reference}"));
            }
            return (node.clone(), None);
        }
        let (file, fragment) = match reference.split_once('#') {
            Some((f, frag)) => (f, Some(frag)),
            None => (reference, None),
        };
        let new_root = self.schema(file);
        let node = match fragment {
            Some(frag) if !frag.is_empty() => new_root
                .pointer(frag)
                .unwrap_or_else(|| panic!("dangling $ref {reference}"))
                .clone(),
            _ => new_root.clone(),
        };
        (node, Some(new_root))
    }

    fn check(&self, root: &Value, schema: &Value, instance: &Value, path: &str, errors: &mut Vec<String>) {
        let obj = match schema.as_object() {
            Some(o) => o,
            None => return, // `true` schemas and free-form keywords
        };

        if let Some(reference) = obj.get("$ref").and_then(Value::as_str) {
            let (resolved, new_root) = self.resolve(root, reference);
            let next_root = new_root.as_ref().unwrap_or(root);
            self.check(next_root, &resolved, instance, path, errors);
            return;
        }

        if let Some(variants) = obj.get("oneOf").and_then(Value::as_array) {
            let mut matches = 0;
            for variant in variants {
                let mut scratch = Vec::new();
                self.check(root, variant, instance, path, &mut scratch);
                if scratch.is_empty() {
                    matches += 1;
                }
            }
            if matches != 1 {
                errors.push(format!("{path}: matches {matches} of {} oneOf variants", variants.len()));
            }
        }

        if let Some(type_spec) = obj.get("type") {
            let names: Vec<&str> = match type_spec {
                Value::String(s) => vec![s.as_str()],
                Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
                _ => vec![],
            };
            if !names.iter().any(|t| type_matches(t, instance)) {
                errors.push(format!("{path}: expected type {names:?}, got {}", type_name(instance)));
                return;
            }
        }

        if let Some(allowed) = obj.get("enum").and_then(Value::as_array) {
            if !allowed.contains(instance) {
                errors.push(format!("{path}: {instance} not among {allowed:?}"));
            }
        }

        if let Some(minimum) = obj.get("minimum").and_then(Value::as_f64) {
            if let Some(v) = instance.as_f64() {
                if v < minimum {
                    errors.push(format!("{path}: {v} below minimum {minimum}"));
                }
            }
        }
        if let Some(maximum) = obj.get("maximum").and_then(Value::as_f64) {
            if let Some(v) = instance.as_f64() {
                if v > maximum {
                    errors.push(format!("{path}: {v} above maximum {maximum}"));
                }
            }
        }

        if let Some(map) = instance.as_object() {
            let properties = obj.get("properties").and_then(Value::as_object);
            if let Some(required) = obj.get("required").and_then(Value::as_array) {
                for key in required.iter().filter_map(Value::as_str) {
                    if !map.contains_key(key) {
                        errors.push(format!("{path}: missing required property '{key}'"));
                    }
                }
            }
            for (key, value) in map {
                let child_path = format!("{path}.{key}");
                if let Some(subschema) = properties.and_then(|p| p.get(key)) {
                    self.check(root, subschema, value, &child_path, errors);
                } else {
                    match obj.get("additionalProperties") {
                        Some(Value::Bool(false)) => {
                            errors.push(format!("{path}: unexpected property '{key}'"));
                        }
                        Some(schema @ Value::Object(_)) => {
                            self.check(root, schema, value, &child_path, errors);
                        }
                        _ => {}
                    }
                }
            }
        }

        if let Some(array) = instance.as_array() {
            if let Some(item_schema) = obj.get("items") {
                for (idx, item) in array.iter().enumerate() {
                    self.check(root, item_schema, item, &format!("{path}[{idx}]"), errors);
                }
            }
        }
    }
}

fn type_matches(name: &str, instance: &Value) -> bool {
    match name {
        "object" => instance.is_object(),
        "array" => instance.is_array(),
        "string" => instance.is_string(),
        "boolean" => instance.is_boolean(),
        "null" => instance.is_null(),
        "number" => instance.is_number(),
        "integer" => {
            instance.is_i64()
                || instance.is_u64()
                || instance.as_f64().is_some_and(|v| v.fract() == 0.0)
        }
        _ => false,
    }
}

fn type_name(instance: &Value) -> &'static str {
    match instance {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(_) => "number",
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}
