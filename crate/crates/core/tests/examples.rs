//! Every runnable example also runs as a test.

#[allow(dead_code)]
#[path = "../examples/exact_scalars.rs"]
mod exact_scalars;

#[allow(dead_code)]
#[path = "../examples/canonical_form.rs"]
mod canonical_form;

#[allow(dead_code)]
#[path = "../examples/integration_by_parts.rs"]
mod integration_by_parts;

#[allow(dead_code)]
#[path = "../examples/operators.rs"]
mod operators;

#[allow(dead_code)]
#[path = "../examples/verify_identities.rs"]
mod verify_identities;

#[allow(dead_code)]
#[path = "../examples/rigidity_conditions.rs"]
mod rigidity_conditions;

#[allow(dead_code)]
#[path = "../examples/equivalence_and_scaling.rs"]
mod equivalence_and_scaling;

#[allow(dead_code)]
#[path = "../examples/cli_check.rs"]
mod cli_check;

#[test]
fn exact_scalars_runs() {
    exact_scalars::run_example().unwrap();
}

#[test]
fn canonical_form_runs() {
    canonical_form::run_example().unwrap();
}

#[test]
fn integration_by_parts_runs() {
    integration_by_parts::run_example().unwrap();
}

#[test]
fn operators_runs() {
    operators::run_example().unwrap();
}

#[test]
fn verify_identities_runs() {
    verify_identities::run_example().unwrap();
}

#[test]
fn rigidity_conditions_runs() {
    rigidity_conditions::run_example().unwrap();
}

#[test]
fn equivalence_and_scaling_runs() {
    equivalence_and_scaling::run_example().unwrap();
}

#[test]
fn cli_check_runs() {
    cli_check::run_example().unwrap();
}
