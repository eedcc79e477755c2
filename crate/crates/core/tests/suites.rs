use std::time::Instant;

use nahmkit::verify::{run_suite, Suite};

fn check(suite: Suite) {
    let start = Instant::now();
    let r = run_suite(suite, 1, None);
    eprintln!("{suite}: {}/{} in {:?}", r.passed, r.cases, start.elapsed());
    assert!(r.pass, "{}", serde_json::to_string_pretty(&r.failures[0]).unwrap());
}

#[test]
fn roundtrip() {
    check(Suite::Roundtrip);
}

#[test]
fn duality() {
    check(Suite::Duality);
}

#[test]
fn hurtubise() {
    check(Suite::Hurtubise);
}

#[test]
fn casimir() {
    check(Suite::Casimir);
}

#[test]
fn halfpower() {
    check(Suite::Halfpower);
}

#[test]
fn dimension() {
    check(Suite::Dimension);
}

#[test]
fn realflow() {
    check(Suite::Realflow);
}

#[test]
fn suite_names() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("unknown".parse::<Suite>().is_err());
}
