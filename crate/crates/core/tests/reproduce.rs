use ranksat_core::cert::{verify_certificate, Certificate};
use ranksat_core::reproduce::{run_suite, SuiteOptions};

fn check(name: &str) {
    let rep = run_suite(name, &SuiteOptions::default()).unwrap();
    for c in &rep.claims {
        assert!(c.pass, "{name}: {} failed: {}", c.label, c.detail);
        if let Some(cert) = &c.cert {
            let back = Certificate::parse(&cert.to_text()).unwrap();
            for chk in verify_certificate(&back).unwrap() {
                assert!(!chk.falsified(), "{name}: {}: {:?}", c.label, chk);
            }
        }
    }
}

#[test]
fn bounds_table() {
    check("bounds-table");
}

#[test]
fn moore_grid() {
    check("moore-grid");
}

#[test]
fn hscattered() {
    check("hscattered");
}

#[test]
fn case_sweep_q2() {
    check("case-sweep");
}

#[test]
fn appendix_q2() {
    check("appendix-q2");
}

#[test]
fn search_q2m4() {
    check("search-q2m4");
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(run_suite("nope", &SuiteOptions::default()).is_err());
}
