use hyperfourier::verify::{run_suite, Suite};

#[test]
fn every_suite_passes() {
    let checks = run_suite(Suite::All, 20261018).unwrap();
    let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| c.to_string()).collect();
    for c in &checks {
        println!("{c}");
    }
    assert!(failed.is_empty(), "failed checks:\n{}", failed.join("\n"));
}
