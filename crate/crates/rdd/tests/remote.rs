mod support;

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use rdd::input::{load_data, load_rdd};
use rdd::remote::{run_remote, EndpointConfig};
use rdd::check_parallel;
use rdd_core::check::CheckOptions;
use rdd_core::sparql::bundle;
use rdd_core::ConstraintSet;

use support::{boolean, fixture, local_answers, scripted, Stub};

fn people() -> ConstraintSet {
    load_rdd(&fixture("rdd/people.rdd"), false).unwrap().constraints
}

fn cfg(stub: &Stub) -> EndpointConfig {
    let mut cfg = EndpointConfig::new(stub.url.clone());
    cfg.timeout = Duration::from_secs(10);
    cfg
}

#[test]
fn all_false_is_consistent() {
    let set = people();
    let stub = Stub::start(|_, _| boolean(false));
    let r = run_remote(&set, &cfg(&stub));
    assert!(r.report.consistent && r.errors.is_empty());
    assert_eq!(r.report.stats.constraints, 35);
    assert_eq!(stub.total_hits(), 35);
}

#[test]
fn one_true_is_one_witnessless_violation() {
    let set = people();
    let target = bundle(&set)[6].text.clone();
    let stub = Stub::start(move |req, _| boolean(req.body == target));
    let r = run_remote(&set, &cfg(&stub));
    assert!(!r.report.consistent && r.errors.is_empty());
    assert_eq!(r.report.violations.len(), 1);
    let v = &r.report.violations[0];
    assert!(v.witness.is_empty());
    assert_eq!(*v.constraint, *set.get(6).unwrap());
}

#[test]
fn server_error_twice_is_recorded_not_violated() {
    let set = people();
    let target = bundle(&set)[2].text.clone();
    let t = target.clone();
    let stub = Stub::start(move |req, _| if req.body == t { (500, "boom".into()) } else { boolean(false) });
    let r = run_remote(&set, &cfg(&stub));
    assert_eq!(stub.hits(&target), 2, "one retry");
    assert_eq!(r.errors.len(), 1);
    assert_eq!(r.errors[0].id, "c0003");
    assert!(r.errors[0].message.contains("500"), "{}", r.errors[0].message);
    assert!(r.report.violations.is_empty());
}

#[test]
fn retry_recovers_from_one_failure() {
    let set = people();
    let stub = Stub::start(|_, attempt| if attempt == 0 { (503, String::new()) } else { boolean(false) });
    let r = run_remote(&set, &cfg(&stub));
    assert!(r.errors.is_empty(), "{:?}", r.errors);
    assert!(r.report.consistent);
    assert_eq!(stub.total_hits(), 70);
}

#[test]
fn malformed_results_are_errors() {
    let set = people();
    let stub = Stub::start(|_, _| (200, "{\"results\":{}}".into()));
    let r = run_remote(&set, &cfg(&stub));
    assert_eq!(r.errors.len(), 35);
    assert!(r.errors.iter().all(|e| e.message.contains("malformed")));
    let ids: Vec<&str> = r.errors.iter().map(|e| e.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn timeout_is_an_error() {
    let set = load_rdd(&fixture("rdd/people.rdd"), false).unwrap().constraints;
    let stub = Stub::start(|_, _| {
        std::thread::sleep(Duration::from_millis(400));
        boolean(false)
    });
    let mut c = cfg(&stub);
    c.timeout = Duration::from_millis(100);
    c.parallel = 16;
    let r = run_remote(&set, &c);
    assert_eq!(r.errors.len(), 35);
}

#[test]
fn unreachable_endpoint_is_an_error() {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/sparql", listener.local_addr().unwrap());
    drop(listener);
    let r = run_remote(&people(), &EndpointConfig::new(url));
    assert_eq!(r.errors.len(), 35);
}

#[test]
fn credentials_and_default_graph_are_sent() {
    let set = people();
    type Log = Arc<Mutex<Vec<(Option<String>, String)>>>;
    let seen: Log = Arc::default();
    let log = seen.clone();
    let stub = Stub::start(move |req, _| {
        log.lock().unwrap().push((req.headers.get("authorization").cloned(), req.target.clone()));
        boolean(false)
    });
    let mut c = cfg(&stub);
    c.bearer_token = Some("t0k".into());
    c.default_graph = Some("http://g.org/x".into());
    run_remote(&set, &c);
    let seen = seen.lock().unwrap();
    assert_eq!(seen.len(), 35);
    for (auth, target) in seen.iter() {
        assert_eq!(auth.as_deref(), Some("Bearer t0k"));
        assert!(target.contains("default-graph-uri=http%3A%2F%2Fg.org%2Fx"), "{target}");
    }
    drop(seen);

    let basic: Arc<Mutex<Option<String>>> = Arc::default();
    let b = basic.clone();
    let stub = Stub::start(move |req, _| {
        *b.lock().unwrap() = req.headers.get("authorization").cloned();
        boolean(false)
    });
    let mut c = cfg(&stub);
    c.basic_auth = Some("alice:secret".into());
    run_remote(&set, &c);
    // base64("alice:secret")
    assert_eq!(basic.lock().unwrap().as_deref(), Some("Basic YWxpY2U6c2VjcmV0"));
}

fn fixture_cases() -> Vec<(&'static str, Vec<&'static str>)> {
    let data = [
        vec!["nt/empty.nt"],
        vec!["nt/two_labels.nt"],
        vec!["nt/persons.nt"],
        vec!["nt/student.nt"],
        vec!["nt/persons.nt", "nt/student.nt"],
    ];
    let mut out = Vec::new();
    for rdd in ["rdd/people.rdd", "rdd/university.rdd"] {
        for d in &data {
            out.push((rdd, d.clone()));
        }
    }
    out
}

#[test]
fn stub_reproduces_local_decisions_on_fixtures() {
    let mut decisions = BTreeSet::new();
    for (rdd, data) in fixture_cases() {
        let set = load_rdd(&fixture(rdd), false).unwrap().constraints;
        let paths: Vec<PathBuf> = data.iter().map(|p| fixture(p)).collect();
        let d = load_data(&paths).unwrap();
        let local = check_parallel(&d, &set, &CheckOptions::default());
        decisions.insert(local.consistent);
        let stub = Stub::start(scripted(local_answers(&set, &d)));
        for parallel in [1, 4] {
            let mut c = cfg(&stub);
            c.parallel = parallel;
            let remote = run_remote(&set, &c);
            assert!(remote.errors.is_empty(), "{rdd} {data:?}: {:?}", remote.errors);
            assert_eq!(remote.report.consistent, local.consistent, "{rdd} {data:?}");
            let violated = |r: &rdd_core::Report| -> BTreeSet<String> {
                r.violations.iter().map(|v| v.constraint.fol_text.clone()).collect()
            };
            assert_eq!(violated(&remote.report), violated(&local), "{rdd} {data:?}");
        }
    }
    assert_eq!(decisions.len(), 2, "fixtures cover both outcomes");
}

#[test]
fn scripted_stub_rejects_protocol_mistakes() {
    let stub = Stub::start(scripted(HashMap::new()));
    let agent: ureq::Agent = ureq::Agent::config_builder().http_status_as_error(false).build().into();
    let resp = agent.post(&stub.url).header("Content-Type", "text/plain").send("ASK {}").unwrap();
    assert_eq!(resp.status().as_u16(), 415);
}
