use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::expr::Expression;
use crate::scalar::ScalarExact;

use super::script::StepKind;
use super::suite::{cube_root_sample_check, printed_cube_root_coeffs, script, DEFAULT_SEED};

/// Result of perturbing one identity's golden expected values.
#[derive(Clone, Debug, Serialize)]
pub struct MutationReport {
    pub id: String,
    pub label: String,
    pub mutants: usize,
    pub killed: usize,
    pub survivors: Vec<String>,
}

impl MutationReport {
    pub fn all_killed(&self) -> bool {
        self.mutants > 0 && self.killed == self.mutants
    }
}

const NUMERIC_MUTATION_SAMPLES: usize = 20_000;

/// For every golden comparison step and every monomial `m` of its expected
/// side, replaces `rhs` by `rhs + m` and reruns the step. A mutant is killed
/// when the step fails. The cube-root estimate is mutated by adding `1` to
/// each printed coefficient.
pub fn mutate(key: &str) -> Result<MutationReport> {
    let s = script(key)?;
    let mut mutants = 0;
    let mut survivors = Vec::new();
    if s.id == "cube-root-estimate" {
        for k in 0..3 {
            let mut c = printed_cube_root_coeffs();
            c[k] += Complex64::new(1.0, 0.0);
            mutants += 1;
            if cube_root_sample_check(c, NUMERIC_MUTATION_SAMPLES, DEFAULT_SEED).passed() {
                survivors.push(format!("coefficient {k} + 1"));
            }
        }
    }
    for step in s.steps.iter().filter(|s| s.golden) {
        let StepKind::Compare { rhs, .. } = &step.kind else {
            continue;
        };
        for (m, _) in rhs.iter() {
            let mut bumped = rhs.clone();
            bumped.add_monomial(m.clone(), ScalarExact::one());
            mutants += 1;
            if step.with_rhs(bumped).run(false)?.passed {
                let mut shown = Expression::zero();
                shown.add_monomial(m.clone(), ScalarExact::one());
                survivors.push(format!("{}: +{}", step.label, shown));
            }
        }
    }
    Ok(MutationReport {
        id: s.id,
        label: s.label,
        killed: mutants - survivors.len(),
        mutants,
        survivors,
    })
}
