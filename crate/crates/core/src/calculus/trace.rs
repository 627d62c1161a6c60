use std::fmt;

use serde::Serialize;

use crate::expr::Expression;

/// Identifies the rewrite applied in a [`TraceStep`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RuleId {
    /// Commutation of an adjacent derivative pair, e.g. `commute(b1)`.
    Commute(String),
    /// Integration by parts of a trailing `1` or `1̄` derivative.
    IntegrateByParts(char),
    /// `c_{,w0} = -i (c_{,w11̄} - c_{,w1̄1} - α c_{,w} R)`, used on pivots.
    ZeroElimination,
    /// Symmetrisation of a repeated free field into tagged copies.
    Polarize,
    /// A named substitution rule (Bianchi, vanishing torsion, on-shell rules).
    Substitute(String),
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Commute(pair) => write!(f, "commute({pair})"),
            RuleId::IntegrateByParts(d) => write!(f, "ibp({d})"),
            RuleId::ZeroElimination => write!(f, "zero-elim"),
            RuleId::Polarize => write!(f, "polarize"),
            RuleId::Substitute(name) => write!(f, "subst({name})"),
        }
    }
}

/// One rewrite: the single term `before` (with its coefficient) was replaced
/// by `after`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub rule: RuleId,
    pub before: Expression,
    pub after: Expression,
}

#[derive(Serialize)]
struct StepRecord {
    rule: String,
    before: String,
    after: String,
}

/// Ordered audit trail of a derivation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RewriteTrace {
    pub steps: Vec<TraceStep>,
}

impl RewriteTrace {
    pub fn new() -> Self {
        RewriteTrace { steps: Vec::new() }
    }

    pub fn push(&mut self, rule: RuleId, before: Expression, after: Expression) {
        self.steps.push(TraceStep {
            rule,
            before,
            after,
        });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn extend(&mut self, other: RewriteTrace) {
        self.steps.extend(other.steps);
    }

    /// Applies every step to `start`; reproduces the traced end expression.
    pub fn replay(&self, start: &Expression) -> Expression {
        self.steps.iter().fold(start.clone(), |acc, s| {
            acc - s.before.clone() + s.after.clone()
        })
    }

    /// Replays the trace backwards from `end`.
    pub fn replay_backwards(&self, end: &Expression) -> Expression {
        self.steps.iter().rev().fold(end.clone(), |acc, s| {
            acc - s.after.clone() + s.before.clone()
        })
    }

    /// One line per step: `rule<TAB>before<TAB>=> after`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!("{}\t{}\t=> {}\n", s.rule, s.before, s.after));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let recs: Vec<StepRecord> = self
            .steps
            .iter()
            .map(|s| StepRecord {
                rule: s.rule.to_string(),
                before: s.before.to_string(),
                after: s.after.to_string(),
            })
            .collect();
        serde_json::to_value(recs).expect("trace records serialize")
    }
}
