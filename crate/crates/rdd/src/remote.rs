//! Running ASK bundles against a SPARQL 1.1 Protocol endpoint.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use base64::prelude::*;
use rdd_core::check::{Report, Violation};
use rdd_core::sparql::{bundle, AskQuery};
use rdd_core::ConstraintSet;

use crate::json::JsonQueryError;

#[derive(Clone, Debug)]
pub struct EndpointConfig {
    pub url: String,
    pub timeout: Duration,
    pub bearer_token: Option<String>,
    /// `user:password` for HTTP basic authentication.
    pub basic_auth: Option<String>,
    /// Sent as the `default-graph-uri` protocol parameter.
    pub default_graph: Option<String>,
    /// Maximum number of requests in flight.
    pub parallel: usize,
}

impl EndpointConfig {
    pub fn new(url: impl Into<String>) -> Self {
        EndpointConfig {
            url: url.into(),
            timeout: Duration::from_secs(30),
            bearer_token: None,
            basic_auth: None,
            default_graph: None,
            parallel: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryError {
    pub id: String,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct RemoteReport {
    /// Violations carry no witness: ASK answers are bare booleans.
    pub report: Report,
    /// Queries that failed twice; they count neither as violated nor as
    /// satisfied.
    pub errors: Vec<QueryError>,
}

impl RemoteReport {
    pub fn json_errors(&self) -> Vec<JsonQueryError> {
        self.errors.iter().map(|e| JsonQueryError { query: e.id.clone(), message: e.message.clone() }).collect()
    }
}

/// Parses a SPARQL results document of an ASK query.
pub fn parse_boolean(body: &str) -> Result<bool, String> {
    let value: serde_json::Value = serde_json::from_str(body).map_err(|e| format!("malformed results document: {e}"))?;
    value
        .get("boolean")
        .and_then(|b| b.as_bool())
        .ok_or_else(|| "malformed results document: no boolean member".to_owned())
}

fn agent(cfg: &EndpointConfig) -> ureq::Agent {
    ureq::Agent::config_builder().timeout_global(Some(cfg.timeout)).http_status_as_error(false).build().into()
}

fn ask_once(agent: &ureq::Agent, cfg: &EndpointConfig, query: &str) -> Result<bool, String> {
    let mut req = agent
        .post(&cfg.url)
        .header("Content-Type", "application/sparql-query")
        .header("Accept", "application/sparql-results+json");
    if let Some(graph) = &cfg.default_graph {
        req = req.query("default-graph-uri", graph);
    }
    if let Some(token) = &cfg.bearer_token {
        req = req.header("Authorization", &format!("Bearer {token}"));
    } else if let Some(credentials) = &cfg.basic_auth {
        req = req.header("Authorization", &format!("Basic {}", BASE64_STANDARD.encode(credentials)));
    }
    let mut resp = req.send(query).map_err(|e| e.to_string())?;
    let status = resp.status();
    let body = resp.body_mut().read_to_string().map_err(|e| e.to_string())?;
    if !status.is_success() {
        return Err(format!("HTTP {}", status.as_u16()));
    }
    parse_boolean(&body)
}

/// The ASK answer for one query, retrying once on any failure.
pub fn ask(agent: &ureq::Agent, cfg: &EndpointConfig, query: &AskQuery) -> Result<bool, String> {
    ask_once(agent, cfg, &query.text).or_else(|_| ask_once(agent, cfg, &query.text))
}

/// Runs the set's bundle with at most `cfg.parallel` requests in flight.
pub fn run_remote(set: &ConstraintSet, cfg: &EndpointConfig) -> RemoteReport {
    let start = Instant::now();
    let queries = bundle(set);
    let agent = agent(cfg);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<bool, String>>>> = Mutex::new(vec![None; queries.len()]);
    let workers = cfg.parallel.max(1).min(queries.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(q) = queries.get(i) else { break };
                let r = ask(&agent, cfg, q);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let results = results.into_inner().unwrap();

    let mut violations = Vec::new();
    let mut errors = Vec::new();
    for ((q, c), r) in queries.iter().zip(set.iter()).zip(results) {
        match r.expect("every query answered") {
            Ok(answer) if answer == q.violated_when => violations.push(vec![Violation {
                constraint: Arc::new(c.clone()),
                witness: Vec::new(),
                message: format!("ASK {} answered {}", q.id, answer),
            }]),
            Ok(_) => {}
            Err(message) => errors.push(QueryError { id: q.id.clone(), message }),
        }
    }
    let mut report = Report::assemble(violations, set.len(), 0);
    report.stats.millis = start.elapsed().as_millis() as u64;
    RemoteReport { report, errors }
}
