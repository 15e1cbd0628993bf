//! Shared test helpers: a scripted SPARQL endpoint, a JSON Schema checker
//! and fixture paths.
#![allow(dead_code)]

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::thread;

use rdd_core::check::{evaluate_constraint, CheckOptions};
use rdd_core::sparql::bundle;
use rdd_core::{ConstraintSet, Dataset};
use serde_json::Value;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel)
}

pub struct Request {
    pub method: String,
    pub target: String,
    pub headers: HashMap<String, String>,
    pub body: String,
}

/// What the stub sends back: status and body.
pub type Reply = (u16, String);

type Handler = dyn Fn(&Request, usize) -> Reply + Send + Sync;

/// An HTTP endpoint on localhost that answers each request with a handler.
/// The handler also receives how many times the same body was seen before.
pub struct Stub {
    pub url: String,
    seen: Arc<Mutex<HashMap<String, usize>>>,
}

impl Stub {
    pub fn start(handler: impl Fn(&Request, usize) -> Reply + Send + Sync + 'static) -> Stub {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let url = format!("http://{}/sparql", listener.local_addr().unwrap());
        let seen: Arc<Mutex<HashMap<String, usize>>> = Arc::default();
        let handler: Arc<Handler> = Arc::new(handler);
        let counts = seen.clone();
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(stream) = stream else { continue };
                let handler = handler.clone();
                let counts = counts.clone();
                thread::spawn(move || serve(stream, &*handler, &counts));
            }
        });
        Stub { url, seen }
    }

    /// Number of requests received with exactly this body.
    pub fn hits(&self, body: &str) -> usize {
        self.seen.lock().unwrap().get(body).copied().unwrap_or(0)
    }

    pub fn total_hits(&self) -> usize {
        self.seen.lock().unwrap().values().sum()
    }
}

fn serve(stream: TcpStream, handler: &Handler, seen: &Mutex<HashMap<String, usize>>) {
    let mut reader = BufReader::new(stream.try_clone().unwrap());
    let mut line = String::new();
    if reader.read_line(&mut line).unwrap_or(0) == 0 {
        return;
    }
    let mut parts = line.split_whitespace();
    let method = parts.next().unwrap_or_default().to_owned();
    let target = parts.next().unwrap_or_default().to_owned();
    let mut headers = HashMap::new();
    loop {
        line.clear();
        reader.read_line(&mut line).unwrap();
        let l = line.trim_end();
        if l.is_empty() {
            break;
        }
        if let Some((k, v)) = l.split_once(':') {
            headers.insert(k.trim().to_ascii_lowercase(), v.trim().to_owned());
        }
    }
    let len: usize = headers.get("content-length").and_then(|v| v.parse().ok()).unwrap_or(0);
    let mut body = vec![0; len];
    reader.read_exact(&mut body).unwrap();
    let body = String::from_utf8(body).unwrap();
    let attempt = {
        let mut seen = seen.lock().unwrap();
        let n = seen.entry(body.clone()).or_insert(0);
        *n += 1;
        *n - 1
    };
    let req = Request { method, target, headers, body };
    let (status, reply) = handler(&req, attempt);
    let mut stream = stream;
    let head = format!(
        "HTTP/1.1 {status} Stub\r\nContent-Type: application/sparql-results+json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
        reply.len()
    );
    let _ = stream.write_all(head.as_bytes());
    let _ = stream.write_all(reply.as_bytes());
}

pub fn boolean(b: bool) -> Reply {
    (200, format!("{{\"head\":{{}},\"boolean\":{b}}}"))
}

/// ASK text → whether the local checker finds the constraint violated.
pub fn local_answers(set: &ConstraintSet, d: &Dataset) -> HashMap<String, bool> {
    bundle(set)
        .into_iter()
        .zip(set.iter())
        .map(|(q, c)| (q.text, !evaluate_constraint(d, c, &CheckOptions::default()).is_empty()))
        .collect()
}

/// A well-behaved endpoint whose answers come from `answers`; requests that
/// break the protocol get a 4xx.
pub fn scripted(answers: HashMap<String, bool>) -> impl Fn(&Request, usize) -> Reply + Send + Sync {
    move |req, _| {
        if req.method != "POST" {
            return (405, String::new());
        }
        if req.headers.get("content-type").map(String::as_str) != Some("application/sparql-query") {
            return (415, String::new());
        }
        if req.headers.get("accept").map(String::as_str) != Some("application/sparql-results+json") {
            return (406, String::new());
        }
        match answers.get(&req.body) {
            Some(b) => boolean(*b),
            None => (400, "unknown query".into()),
        }
    }
}

/// Validates `instance` against the subset of JSON Schema the published
/// report schema uses. Unknown keywords fail loudly.
pub fn schema_errors(schema: &Value, instance: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    validate(schema, schema, instance, "$", &mut errors);
    errors
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        other => panic!("unknown type {other}"),
    }
}

fn validate(root: &Value, schema: &Value, v: &Value, at: &str, errors: &mut Vec<String>) {
    let obj = schema.as_object().expect("schema object");
    for (key, rule) in obj {
        match key.as_str() {
            "$schema" | "$id" | "title" | "description" | "$defs" => {}
            "$ref" => {
                let mut target = root;
                for part in rule.as_str().unwrap().trim_start_matches("#/").split('/') {
                    target = &target[part];
                }
                validate(root, target, v, at, errors);
            }
            "type" => {
                let ok = match rule {
                    Value::String(t) => type_matches(t, v),
                    Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
                    _ => panic!("bad type rule"),
                };
                if !ok {
                    errors.push(format!("{at}: expected type {rule}"));
                }
            }
            "enum" => {
                if !rule.as_array().unwrap().contains(v) {
                    errors.push(format!("{at}: {v} not in enum"));
                }
            }
            "minimum" => {
                if let Some(n) = v.as_f64() {
                    if n < rule.as_f64().unwrap() {
                        errors.push(format!("{at}: {n} below minimum"));
                    }
                }
            }
            "minItems" => {
                if let Some(a) = v.as_array() {
                    if (a.len() as u64) < rule.as_u64().unwrap() {
                        errors.push(format!("{at}: too few items"));
                    }
                }
            }
            "pattern" => {
                if let Some(s) = v.as_str() {
                    if !regex::Regex::new(rule.as_str().unwrap()).unwrap().is_match(s) {
                        errors.push(format!("{at}: {s:?} does not match {rule}"));
                    }
                }
            }
            "required" => {
                if let Some(o) = v.as_object() {
                    for name in rule.as_array().unwrap() {
                        if !o.contains_key(name.as_str().unwrap()) {
                            errors.push(format!("{at}: missing {name}"));
                        }
                    }
                }
            }
            "properties" => {
                if let Some(o) = v.as_object() {
                    for (name, sub) in rule.as_object().unwrap() {
                        if let Some(x) = o.get(name) {
                            validate(root, sub, x, &format!("{at}.{name}"), errors);
                        }
                    }
                }
            }
            "additionalProperties" => {
                if let Some(o) = v.as_object() {
                    let declared = obj.get("properties").and_then(Value::as_object);
                    for (name, x) in o {
                        if declared.is_some_and(|d| d.contains_key(name)) {
                            continue;
                        }
                        match rule {
                            Value::Bool(false) => errors.push(format!("{at}: unexpected member {name}")),
                            Value::Bool(true) => {}
                            sub => validate(root, sub, x, &format!("{at}.{name}"), errors),
                        }
                    }
                }
            }
            "items" => {
                if let Some(a) = v.as_array() {
                    for (i, x) in a.iter().enumerate() {
                        validate(root, rule, x, &format!("{at}[{i}]"), errors);
                    }
                }
            }
            other => panic!("schema keyword {other} not supported by the test validator"),
        }
    }
}
