use catenary::corpus::small_corpus;
use catenary::ginvariant::DEFAULT_ORACLE_LIMIT;
use catenary::verify::verify;

#[test]
fn deep_identity_suite_on_corpus() {
    let corpus = small_corpus();
    assert!(corpus.len() >= 60);
    let mut bad = Vec::new();
    for nm in &corpus {
        let rep = verify(&nm.matroid, true, DEFAULT_ORACLE_LIMIT);
        for f in rep.failures() {
            bad.push(format!("{}: {} ({})", nm.name, f.name, f.detail.clone().unwrap_or_default()));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
