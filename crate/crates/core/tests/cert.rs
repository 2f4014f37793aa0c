use ranksat_core::appendix::{transcription_findings, AppendixContext};
use ranksat_core::cert::*;
use ranksat_core::constructions::{moore_system, rank5_example, MooreParams};
use ranksat_core::rankcov::{code_from_system, covering_radius};
use ranksat_core::search::Reduction;
use ranksat_core::FieldSpec;

fn moore_cert() -> Certificate {
    let f = FieldSpec::gf(2, 1, 3).unwrap();
    let u = moore_system(&MooreParams::new(&f, 2, 2)).unwrap();
    let mut c = Certificate::for_system(&u);
    c.claims.push(Claim::Saturating { rho: 2, result: true, witness: None });
    c.claims.push(Claim::Index { value: Some(2) });
    c.claims.push(Claim::Scattered { result: true });
    let cr = covering_radius(&code_from_system(&u).unwrap().dual()).unwrap();
    c.claims.push(Claim::CoveringRadius { value: cr });
    c.provenance = Some(Provenance::now(1));
    c
}

fn all_verified(c: &Certificate) -> bool {
    verify_certificate(c).unwrap().iter().all(|x| x.status == CheckStatus::Verified)
}

#[test]
fn round_trip_preserves_claims_and_verdicts() {
    let c = moore_cert();
    let text = c.to_text();
    assert!(text.starts_with(CERT_MAGIC));
    let back = Certificate::parse(&text).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.to_text(), text);
    assert!(all_verified(&back));
    assert_eq!(verify_certificate(&back).unwrap(), verify_certificate(&c).unwrap());
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = moore_cert().to_text().replace("\nk ", "\n# a comment\n\nk ");
    assert!(all_verified(&Certificate::parse(&text).unwrap()));
}

#[test]
fn tampered_generator_is_caught() {
    let text = moore_cert().to_text();
    let gens: Vec<&str> = text.lines().filter(|l| l.starts_with("gen")).collect();
    // duplicate the first generator over the second
    let tampered = text.replacen(gens[1], gens[0], 1);
    let checks = verify_certificate(&Certificate::parse(&tampered).unwrap()).unwrap();
    assert!(checks.iter().any(|c| c.falsified()));
    assert!(checks
        .iter()
        .any(|c| matches!(c.claim, Claim::Rank { .. }) && c.falsified()));
}

#[test]
fn false_claims_are_falsified() {
    let mut c = moore_cert();
    c.claims = vec![
        Claim::Saturating { rho: 3, result: true, witness: None },
        Claim::Scattered { result: false },
        Claim::Index { value: Some(1) },
    ];
    assert!(verify_certificate(&c).unwrap().iter().all(|x| x.falsified()));
}

#[test]
fn witness_points_are_checked() {
    let f = FieldSpec::gf(2, 1, 4).unwrap();
    let u = rank5_example(&f).unwrap();
    let rep = ranksat_core::rankcov::saturation_report(&u, Some(3)).unwrap();
    assert_eq!(rep.index, Some(2));
    let mut c = Certificate::for_system(&u);
    c.claims.push(Claim::Saturating { rho: 1, result: false, witness: Some(rep.witnesses[0].1.coords().to_vec()) });
    assert!(all_verified(&Certificate::parse(&c.to_text()).unwrap()));
    // a point of L_U is not a valid witness at level 1
    c.claims[2] = Claim::Saturating { rho: 1, result: false, witness: Some(vec![0, 0, 1]) };
    assert!(verify_certificate(&c).unwrap()[2].falsified());
}

#[test]
fn search_claims_reverify() {
    let f = FieldSpec::gf(2, 1, 4).unwrap();
    let mut c = Certificate::new(Some(&f));
    c.claims.push(Claim::SearchValue { k: 3, rho: 2, ranks: (4, 5), reduction: Reduction::Canonical, value: Some(5) });
    c.claims.push(Claim::Search {
        k: 3,
        rho: 2,
        rank: 4,
        reduction: Reduction::Canonical,
        verdict: SearchVerdict::None,
        total: 511,
        checked: 7,
    });
    let back = Certificate::parse(&c.to_text()).unwrap();
    assert_eq!(back, c);
    assert!(all_verified(&back));
    c.claims[0] = Claim::SearchValue { k: 3, rho: 2, ranks: (4, 5), reduction: Reduction::Canonical, value: Some(4) };
    assert!(verify_certificate(&c).unwrap()[0].falsified());
}

#[test]
fn bounds_claims_need_no_field() {
    let c = Certificate {
        claims: vec![Claim::Bounds { q: 3, m: 4, k: 3, rho: 2, lower: 4, upper: 6, known: Some((5, 5)) }],
        ..Certificate::new(None)
    };
    let back = Certificate::parse(&c.to_text()).unwrap();
    assert!(all_verified(&back));
}

#[test]
fn findings_round_trip() {
    let f = FieldSpec::gf(2, 1, 4).unwrap();
    let ctx = AppendixContext::new(&f, 1, 1).unwrap();
    let mut c = Certificate::new(Some(&f));
    for x in transcription_findings(&ctx, 3).unwrap() {
        c.claims.push(Claim::Finding { alpha: 1, beta: 1, c: 3, finding: x });
    }
    c.claims.push(Claim::Identities { alpha: 1, beta: 1, c: 3, result: true });
    let back = Certificate::parse(&c.to_text()).unwrap();
    assert_eq!(back, c);
    assert!(all_verified(&back));
}

#[test]
fn malformed_input_is_a_parse_error() {
    assert!(Certificate::parse("field p=2 a=1 m=3").is_err());
    assert!(Certificate::parse(&format!("{CERT_MAGIC}\nclaim rank")).is_err());
    assert!(Certificate::parse(&format!("{CERT_MAGIC}\nbogus 1")).is_err());
    assert!(Certificate::parse(&format!("{CERT_MAGIC}\nfinding u agree")).is_err());
}
