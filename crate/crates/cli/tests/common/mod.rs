//! Shared helpers: an in-process runner and a validator for the JSON Schema keywords the shipped
//! schemas use.

#![allow(dead_code)]

use serde_json::Value;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fsgraph").chain(args.iter().copied());
    let code = fsgraph_cli::run_with(argv, &mut out, &mut err);
    Output { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

pub fn schema(name: &str) -> Value {
    let path = format!("{}/schemas/{name}.schema.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

/// Errors of `v` against `s`, as JSON-pointer-ish paths.
pub fn validate(s: &Value, v: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(s, v, "", &mut errors);
    errors
}

pub fn assert_valid(name: &str, stdout: &str) -> Value {
    let v: Value = serde_json::from_str(stdout).unwrap_or_else(|e| panic!("{name}: not JSON ({e}): {stdout}"));
    let errors = validate(&schema(name), &v);
    assert!(errors.is_empty(), "{name}: {errors:?}");
    v
}

fn type_ok(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_u64() || v.is_i64(),
        other => panic!("unsupported type {other}"),
    }
}

fn check(s: &Value, v: &Value, at: &str, errors: &mut Vec<String>) {
    let obj = s.as_object().expect("schema must be an object");
    for (k, rule) in obj {
        match k.as_str() {
            "$schema" | "title" | "description" => {}
            "type" => {
                let ok = match rule {
                    Value::String(t) => type_ok(t, v),
                    Value::Array(ts) => ts.iter().any(|t| type_ok(t.as_str().unwrap(), v)),
                    _ => panic!("bad type keyword"),
                };
                if !ok {
                    errors.push(format!("{at}: expected type {rule}, got {v}"));
                }
            }
            "enum" => {
                if !rule.as_array().unwrap().contains(v) {
                    errors.push(format!("{at}: {v} not in {rule}"));
                }
            }
            "minimum" => {
                if let (Some(x), Some(m)) = (v.as_f64(), rule.as_f64()) {
                    if x < m {
                        errors.push(format!("{at}: {x} < {m}"));
                    }
                }
            }
            "maximum" => {
                if let (Some(x), Some(m)) = (v.as_f64(), rule.as_f64()) {
                    if x > m {
                        errors.push(format!("{at}: {x} > {m}"));
                    }
                }
            }
            "minItems" | "maxItems" => {
                if let Some(a) = v.as_array() {
                    let m = rule.as_u64().unwrap() as usize;
                    if (k == "minItems" && a.len() < m) || (k == "maxItems" && a.len() > m) {
                        errors.push(format!("{at}: {k} {m} violated by length {}", a.len()));
                    }
                }
            }
            "items" => {
                if let Some(a) = v.as_array() {
                    for (i, x) in a.iter().enumerate() {
                        check(rule, x, &format!("{at}/{i}"), errors);
                    }
                }
            }
            "required" => {
                if let Some(o) = v.as_object() {
                    for r in rule.as_array().unwrap() {
                        if !o.contains_key(r.as_str().unwrap()) {
                            errors.push(format!("{at}: missing {r}"));
                        }
                    }
                }
            }
            "properties" => {
                if let Some(o) = v.as_object() {
                    for (p, ps) in rule.as_object().unwrap() {
                        if let Some(x) = o.get(p) {
                            check(ps, x, &format!("{at}/{p}"), errors);
                        }
                    }
                }
            }
            "additionalProperties" => {
                assert_eq!(rule, &Value::Bool(false), "only additionalProperties: false is supported");
                if let Some(o) = v.as_object() {
                    let known = obj.get("properties").and_then(Value::as_object);
                    for key in o.keys() {
                        if !known.is_some_and(|p| p.contains_key(key)) {
                            errors.push(format!("{at}: unexpected property {key}"));
                        }
                    }
                }
            }
            "oneOf" => {
                let matches = rule.as_array().unwrap().iter().filter(|b| validate(b, v).is_empty()).count();
                if matches != 1 {
                    errors.push(format!("{at}: {matches} oneOf branches match"));
                }
            }
            other => panic!("unsupported schema keyword {other}"),
        }
    }
}
