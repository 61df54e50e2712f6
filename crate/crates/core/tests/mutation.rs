mod common;

use kum3_core::config::{Config, ConfigValue};
use kum3_core::report::Status;
use kum3_core::suites::{run_suite, SuiteName};

#[test]
fn every_single_perturbation_is_detected() {
    let all = common::perturbations(&Config::bundled().document);
    assert!(all.len() > 33);
    let undetected: Vec<String> = all
        .into_iter()
        .filter(|(_, doc)| !common::detected(doc.clone()))
        .map(|(label, _)| label)
        .collect();
    assert!(
        undetected.is_empty(),
        "undetected perturbations: {undetected:?}"
    );
}

#[test]
fn c2_cubed_mutation_names_z3_derivation() {
    let mut doc = Config::bundled().document;
    let entry = doc
        .fujiki_table
        .iter_mut()
        .find(|e| e.key == "C(c2^3)")
        .expect("table has C(c2^3)");
    entry.value = ConfigValue::Scalar("30209".into());
    let report = run_suite(SuiteName::FujikiTable, &Config::from_document(doc).unwrap());
    let failing: Vec<_> = report
        .checks
        .iter()
        .filter(|c| c.status == Status::Fail)
        .collect();
    assert!(
        failing
            .iter()
            .any(|c| c.paper_ref.contains("z³ derivation")),
        "{failing:#?}"
    );
    assert_eq!(report.status, Status::Fail);
}

#[test]
fn mutating_hodge_rows_fails_bookkeeping_only() {
    let mut doc = Config::bundled().document;
    let entry = doc
        .hodge_data
        .iter_mut()
        .find(|e| e.key == "kum3_hodge_row_6")
        .unwrap();
    if let ConfigValue::List(xs) = &mut entry.value {
        xs[3] = (xs[3].parse::<i64>().unwrap() + 2).to_string();
    }
    let cfg = Config::from_document(doc).unwrap();
    assert!(run_suite(SuiteName::Bookkeeping, &cfg).failed() > 0);
    assert_eq!(run_suite(SuiteName::BasisLemma, &cfg).failed(), 0);
}
