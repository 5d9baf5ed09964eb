//! Runs every suite on the default corpus and prints one PASS/FAIL line per
//! acceptance criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use actkit::corpus::{generate_corpus, CorpusSpec};
use actkit::suite::{run_suite, Status, SUITES};

const CRITERIA: [(&str, &str); 10] = [
    ("bicyclic-counting", "left divisors in the bicyclic monoid are at most s+1; multiplication is associative"),
    ("purity-chain", "pure implies 2-pure implies 1-pure, split implies pure, on every corpus epi"),
    ("pure-congruence", "a right congruence on S is pure exactly when S/rho is strongly flat"),
    ("sf-epi-agreement", "for epis with strongly flat domain: codomain SF, pure and 2-pure agree"),
    ("e-and-cp-purity", "condition (E) and 1-purity agree; 2-pure epis preserve (P); the converse fails"),
    ("colimits", "directed and generated colimits agree; quotient chains; minimum group congruence"),
    ("closure", "SF, CP and pure epis closed under directed colimits; pullbacks of pure epis"),
    ("cover-existence", "covers exist, verify, are unique, match projective covers, have no pure quotients"),
    ("p-system", "1000 random condition-(P) systems are solved and the solutions re-validate"),
    ("unitary", "purity of Y -> Y/X forces the unitary and meeting conditions on X"),
];

fn main() -> ExitCode {
    assert_eq!(CRITERIA.map(|c| c.0), SUITES, "criteria follow the suite order");
    let start = Instant::now();
    let corpus = generate_corpus(&CorpusSpec::default()).expect("default corpus");
    let acts: usize = corpus.monoids.iter().map(|m| m.acts.len()).sum();
    println!("corpus: {} monoids, {} acts ({:.1}s)", corpus.monoids.len(), acts, start.elapsed().as_secs_f64());

    let mut failures = 0;
    for (n, (id, summary)) in CRITERIA.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = match run_suite(id, &corpus) {
            Ok(report) => {
                let checked: u64 = report.properties.iter().map(|p| p.checked).sum();
                let failed: Vec<_> = report.properties.iter().filter(|p| p.status == Status::Fail).collect();
                for p in &failed {
                    println!(
                        "    FAIL {}: {}",
                        p.property,
                        p.witness.as_ref().map(|w| w.to_string()).unwrap_or_default()
                    );
                }
                let status = if failed.is_empty() { "PASS" } else { "FAIL" };
                (status, format!("{} properties, {} instances", report.properties.len(), checked))
            }
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {} {} ({}, {:.1}s): {}",
            n + 1,
            status,
            id,
            detail,
            t.elapsed().as_secs_f64(),
            summary
        );
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
