use crate::error::CalculusError;
use crate::expr::{Expression, Monomial};
use crate::symbol::word_string;

use super::trace::{RewriteTrace, RuleId};
use super::{commute_swap, times_factors, without};

/// Hard cap on rewrite steps per query.
pub const DEFAULT_REWRITE_LIMIT: usize = 10_000;

/// Step counter with an optional audit trace, shared by every rewrite in
/// one query.
#[derive(Debug, Clone)]
pub struct Rewriter {
    pub limit: usize,
    pub steps: usize,
    pub trace: Option<RewriteTrace>,
}

impl Default for Rewriter {
    fn default() -> Self {
        Rewriter::new(DEFAULT_REWRITE_LIMIT)
    }
}

impl Rewriter {
    pub fn new(limit: usize) -> Self {
        Rewriter {
            limit,
            steps: 0,
            trace: None,
        }
    }

    pub fn tracing(limit: usize) -> Self {
        Rewriter {
            limit,
            steps: 0,
            trace: Some(RewriteTrace::new()),
        }
    }

    pub(crate) fn record(
        &mut self,
        rule: RuleId,
        m: &Monomial,
        c: &crate::scalar::ScalarExact,
        after: &Expression,
    ) -> Result<(), CalculusError> {
        self.steps += 1;
        if self.steps > self.limit {
            let mut before = Expression::zero();
            before.add_monomial(m.clone(), c.clone());
            return Err(CalculusError::GuardExceeded {
                limit: self.limit,
                term: before.to_string(),
            });
        }
        if let Some(t) = self.trace.as_mut() {
            let mut before = Expression::zero();
            before.add_monomial(m.clone(), c.clone());
            t.push(rule, before, after.scale(c));
        }
        Ok(())
    }
}

/// Positions `(factor, pair)` of every adjacent derivative inversion.
fn inversions(m: &Monomial) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (k, f) in m.factors.iter().enumerate() {
        for p in 0..f.derivs.len().saturating_sub(1) {
            if f.derivs[p] > f.derivs[p + 1] {
                out.push((k, p));
            }
        }
    }
    out
}

/// Sorts every derivative string into the order `1 < 1̄ < 0` using the
/// commutation relations, collecting like terms. The first inversion of each
/// term is resolved in every sweep.
pub fn canonicalize(e: &Expression, rw: &mut Rewriter) -> Result<Expression, CalculusError> {
    canonicalize_with(e, rw, &mut |_| 0)
}

/// As [`canonicalize`], with `choose(n)` picking which of the `n` available
/// inversions of a term to resolve next.
pub fn canonicalize_with(
    e: &Expression,
    rw: &mut Rewriter,
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<Expression, CalculusError> {
    let mut current = e.clone();
    loop {
        let mut next = Expression::zero();
        let mut changed = false;
        for (m, c) in current.iter() {
            let inv = inversions(m);
            if inv.is_empty() {
                next.add_monomial(m.clone(), c.clone());
                continue;
            }
            changed = true;
            let (k, p) = inv[choose(inv.len()) % inv.len()];
            let f = &m.factors[k];
            let pair = word_string(&f.derivs[p..p + 2]);
            let swapped = commute_swap(f, p)?;
            let after = times_factors(&swapped, &without(&m.factors, k), m.integrated);
            rw.record(RuleId::Commute(pair), m, c, &after)?;
            next.add_scaled(&after, c);
        }
        current = next;
        if !changed {
            return Ok(current);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn canon(s: &str) -> Expression {
        canonicalize(&parse(s).unwrap(), &mut Rewriter::default()).unwrap()
    }

    #[test]
    fn bar_one_function() {
        assert_eq!(canon("f_{b1}"), parse("f_{1b} - i*f_{0}").unwrap());
    }

    #[test]
    fn canonical_is_fixpoint() {
        let e = parse("f_{11bb} + A11_{1b0}*E11 - 3*R_{1}*Eb1b1_{b}").unwrap();
        assert_eq!(canon(&e.to_string()), e);
    }

    #[test]
    fn output_has_no_inversions() {
        let out = canon("E11_{0b1b} + f_{bb11} + A11_{0b1}*Ab1b1_{b01}");
        for (m, _) in out.iter() {
            assert!(m.factors.iter().all(|f| f.is_canonical()), "{out}");
        }
    }

    #[test]
    fn trace_replays_to_result() {
        let start = parse("f_{bb11} + E11_{0b1}").unwrap();
        let mut rw = Rewriter::tracing(DEFAULT_REWRITE_LIMIT);
        let end = canonicalize(&start, &mut rw).unwrap();
        let trace = rw.trace.unwrap();
        assert!(!trace.is_empty());
        assert_eq!(trace.replay(&start), end);
        assert_eq!(trace.replay_backwards(&end), start);
    }

    #[test]
    fn guard_trips() {
        let mut rw = Rewriter::new(3);
        let r = canonicalize(&parse("f_{bbb111}").unwrap(), &mut rw);
        assert!(matches!(r, Err(CalculusError::GuardExceeded { .. })));
    }
}
