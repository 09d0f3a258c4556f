macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(check_number, "check_number.rs");
example!(verify_theorem, "verify_theorem.rs");
example!(scan_with_checkpoint, "scan_with_checkpoint.rs");
example!(family_analysis, "family_analysis.rs");
example!(tightness_gaps, "tightness_gaps.rs");
example!(bulk_sigma, "bulk_sigma.rs");
example!(mutation_canary, "mutation_canary.rs");

#[test]
fn check_number_runs() {
    assert!(check_number::describe(16).unwrap().contains("almost perfect: true"));
    assert!(check_number::describe(0).is_err());
}

#[test]
fn verify_theorem_runs() {
    verify_theorem::run_example().expect("verify example should run");
}

#[test]
fn scan_with_checkpoint_runs() {
    scan_with_checkpoint::run_example().expect("scan example should run");
}

#[test]
fn family_analysis_runs() {
    family_analysis::run_example().expect("family example should run");
}

#[test]
fn tightness_gaps_runs() {
    tightness_gaps::run_example().expect("gaps example should run");
}

#[test]
fn bulk_sigma_runs() {
    bulk_sigma::run_example().expect("bulk sigma example should run");
}

#[test]
fn mutation_canary_runs() {
    mutation_canary::run_example().expect("canary example should run");
}
