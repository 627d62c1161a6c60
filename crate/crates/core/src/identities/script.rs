use serde::Serialize;

use crate::calculus::{
    equal_canonical, equal_mod_ibp, integrate_by_parts, NormalizeOptions, RewriteTrace, Rule,
    RuleId, DEFAULT_REWRITE_LIMIT,
};
use crate::error::Result;
use crate::expr::Expression;

/// How the two sides of a comparison step are related.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StepMode {
    /// Equal after canonicalization and rules.
    Canonical,
    /// Equal modulo integration by parts.
    ModIbp,
    /// `rhs` is `lhs` after one integration by parts on the named factor.
    Exact { factor: String },
}

impl StepMode {
    fn name(&self) -> String {
        match self {
            StepMode::Canonical => "canonical".into(),
            StepMode::ModIbp => "mod-ibp".into(),
            StepMode::Exact { factor } => format!("ibp[{factor}]"),
        }
    }
}

/// Whether a step must close or must leave a residual (a negative control).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Expect {
    Equal,
    Residual,
}

#[derive(Clone, Debug)]
pub enum StepKind {
    Compare {
        lhs: Expression,
        rhs: Expression,
        mode: StepMode,
        rules: Vec<Rule>,
        expect: Expect,
    },
    /// A check computed outside the rewriting engine (numeric sampling,
    /// coefficient arithmetic).
    Fact { passed: bool, detail: String },
}

#[derive(Clone, Debug)]
pub struct Step {
    pub label: String,
    pub kind: StepKind,
    /// Mutation testing perturbs the `rhs` of golden steps.
    pub golden: bool,
}

impl Step {
    pub fn compare(
        label: &str,
        lhs: Expression,
        rhs: Expression,
        mode: StepMode,
        rules: Vec<Rule>,
    ) -> Step {
        Step {
            label: label.to_string(),
            kind: StepKind::Compare {
                lhs,
                rhs,
                mode,
                rules,
                expect: Expect::Equal,
            },
            golden: true,
        }
    }

    pub fn control(
        label: &str,
        lhs: Expression,
        rhs: Expression,
        mode: StepMode,
        rules: Vec<Rule>,
    ) -> Step {
        Step {
            label: label.to_string(),
            kind: StepKind::Compare {
                lhs,
                rhs,
                mode,
                rules,
                expect: Expect::Residual,
            },
            golden: false,
        }
    }

    pub fn fact(label: &str, passed: bool, detail: impl Into<String>) -> Step {
        Step {
            label: label.to_string(),
            kind: StepKind::Fact {
                passed,
                detail: detail.into(),
            },
            golden: false,
        }
    }

    pub fn not_golden(mut self) -> Step {
        self.golden = false;
        self
    }

    /// Copy with `rhs` replaced; only meaningful for comparison steps.
    pub fn with_rhs(&self, rhs: Expression) -> Step {
        let mut s = self.clone();
        if let StepKind::Compare { rhs: r, .. } = &mut s.kind {
            *r = rhs;
        }
        s
    }

    pub fn rhs(&self) -> Option<&Expression> {
        match &self.kind {
            StepKind::Compare { rhs, .. } => Some(rhs),
            StepKind::Fact { .. } => None,
        }
    }

    pub fn run(&self, trace: bool) -> Result<StepReport> {
        let (lhs, rhs, mode, rules, expect) = match &self.kind {
            StepKind::Fact { passed, detail } => {
                return Ok(StepReport {
                    label: self.label.clone(),
                    mode: "fact".into(),
                    expect: Expect::Equal,
                    passed: *passed,
                    residual: String::new(),
                    rewrites: 0,
                    detail: detail.clone(),
                    trace: None,
                })
            }
            StepKind::Compare {
                lhs,
                rhs,
                mode,
                rules,
                expect,
            } => (lhs, rhs, mode, rules, *expect),
        };
        let mut opts = NormalizeOptions::with_rules(rules.clone()).limit(DEFAULT_REWRITE_LIMIT);
        if trace {
            opts = opts.traced();
        }
        let (equal, residual, rewrites, tr) = match mode {
            StepMode::Canonical => {
                let o = equal_canonical(lhs, rhs, &opts)?;
                (o.equal, o.residual, o.steps, o.trace)
            }
            StepMode::ModIbp => {
                let o = equal_mod_ibp(lhs, rhs, &opts)?;
                (o.equal, o.residual, o.steps, o.trace)
            }
            StepMode::Exact { factor } => {
                let (after, tr) = exact_ibp(lhs, factor, trace)?;
                let residual = after - rhs.clone();
                (residual.is_zero(), residual, 1, tr)
            }
        };
        let passed = match expect {
            Expect::Equal => equal,
            Expect::Residual => !equal,
        };
        Ok(StepReport {
            label: self.label.clone(),
            mode: mode.name(),
            expect,
            passed,
            residual: residual.to_string(),
            rewrites,
            detail: String::new(),
            trace: tr,
        })
    }
}

fn exact_ibp(
    lhs: &Expression,
    factor: &str,
    trace: bool,
) -> Result<(Expression, Option<RewriteTrace>)> {
    for (t, (m, _)) in lhs.iter().enumerate() {
        if let Some(k) = m.factors.iter().position(|f| f.to_string() == factor) {
            let after = integrate_by_parts(lhs, t, k)?;
            let tr = trace.then(|| {
                let mut tr = RewriteTrace::new();
                let letter = m.factors[k]
                    .derivs
                    .last()
                    .map(|d| d.letter())
                    .unwrap_or('?');
                tr.push(RuleId::IntegrateByParts(letter), lhs.clone(), after.clone());
                tr
            });
            return Ok((after, tr));
        }
    }
    Err(crate::error::Error::Precondition(format!(
        "no factor {factor} in {lhs}"
    )))
}

/// An ordered derivation checked step by step.
#[derive(Clone, Debug)]
pub struct DerivationScript {
    pub id: String,
    pub label: String,
    pub title: String,
    pub steps: Vec<Step>,
}

impl DerivationScript {
    pub fn run(&self) -> Result<ScriptReport> {
        self.run_with(false)
    }

    pub fn run_with(&self, trace: bool) -> Result<ScriptReport> {
        let steps = self
            .steps
            .iter()
            .map(|s| s.run(trace))
            .collect::<Result<Vec<_>>>()?;
        Ok(ScriptReport {
            id: self.id.clone(),
            label: self.label.clone(),
            title: self.title.clone(),
            passed: steps.iter().all(|s| s.passed),
            steps,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub label: String,
    pub mode: String,
    pub expect: Expect,
    pub passed: bool,
    /// Residual of `lhs - rhs` in canonical text, `0` when closed.
    pub residual: String,
    pub rewrites: usize,
    pub detail: String,
    #[serde(skip)]
    pub trace: Option<RewriteTrace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScriptReport {
    pub id: String,
    pub label: String,
    pub title: String,
    pub passed: bool,
    pub steps: Vec<StepReport>,
}

impl ScriptReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "[{}] {} ({}): {}\n",
            self.label,
            self.id,
            self.title,
            if self.passed { "PASS" } else { "FAIL" }
        );
        for s in &self.steps {
            let tag = match (s.passed, s.expect) {
                (true, Expect::Equal) => "ok",
                (true, Expect::Residual) => "ok (residual expected)",
                (false, _) => "FAILED",
            };
            out.push_str(&format!("  - {} [{}] {}", s.label, s.mode, tag));
            if !s.detail.is_empty() {
                out.push_str(&format!(": {}", s.detail));
            }
            out.push('\n');
            if s.residual != "0" && !s.residual.is_empty() {
                out.push_str(&format!("    residual: {}\n", s.residual));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn exact_step_and_control() {
        let s = Step::compare(
            "ibp",
            parse("INT[R*E11_{1}*Eb1b1_{b}]").unwrap(),
            parse("-INT[R*E11_{1b}*Eb1b1] - INT[R_{b}*E11_{1}*Eb1b1]").unwrap(),
            StepMode::Exact {
                factor: "Eb1b1_{b}".into(),
            },
            vec![],
        );
        let r = s.run(true).unwrap();
        assert!(r.passed);
        assert_eq!(r.trace.unwrap().len(), 1);
        let c = Step::control(
            "ctl",
            parse("f_{1b}").unwrap(),
            parse("f_{b1}").unwrap(),
            StepMode::Canonical,
            vec![],
        );
        let r = c.run(false).unwrap();
        assert!(r.passed);
        assert_eq!(r.residual, "i*f_{0}");
    }

    #[test]
    fn missing_factor_is_an_error() {
        let s = Step::compare(
            "x",
            parse("INT[f*f]").unwrap(),
            parse("0").unwrap(),
            StepMode::Exact { factor: "R".into() },
            vec![],
        );
        assert!(s.run(false).is_err());
    }
}
