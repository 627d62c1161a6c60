use crate::error::CalculusError;
use crate::expr::{Expression, Monomial};
use crate::scalar::{rat, ScalarExact};
use crate::symbol::{DerivIndex, Factor, Symbol};

use super::canonical::{canonicalize, Rewriter, DEFAULT_REWRITE_LIMIT};
use super::ibp::ibp_monomial;
use super::rules::{apply_rules, Rule};
use super::trace::{RewriteTrace, RuleId};
use super::{differentiate_word, times_factors, without};

/// Settings for [`normal_form`] and the equality checks.
#[derive(Clone, Debug)]
pub struct NormalizeOptions {
    /// Substitutions applied alongside canonicalization.
    pub rules: Vec<Rule>,
    /// Rewrite-step guard.
    pub limit: usize,
    /// Record a [`RewriteTrace`].
    pub trace: bool,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions {
            rules: Vec::new(),
            limit: DEFAULT_REWRITE_LIMIT,
            trace: false,
        }
    }
}

impl NormalizeOptions {
    pub fn with_rules(rules: Vec<Rule>) -> Self {
        NormalizeOptions {
            rules,
            ..Default::default()
        }
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn traced(mut self) -> Self {
        self.trace = true;
        self
    }

    fn rewriter(&self) -> Rewriter {
        if self.trace {
            Rewriter::tracing(self.limit)
        } else {
            Rewriter::new(self.limit)
        }
    }
}

/// Result of an equality query.
#[derive(Clone, Debug)]
pub struct EqualityOutcome {
    pub equal: bool,
    /// Normal form of `lhs - rhs`.
    pub residual: Expression,
    pub steps: usize,
    pub trace: Option<RewriteTrace>,
}

/// Canonicalization and rule application iterated to a fixpoint.
fn reduce(e: &Expression, rules: &[Rule], rw: &mut Rewriter) -> Result<Expression, CalculusError> {
    let mut current = e.clone();
    loop {
        let c = canonicalize(&current, rw)?;
        let r = apply_rules(&c, rules, rw)?;
        if r == c {
            return Ok(r);
        }
        current = r;
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Replaces `k` untagged copies of a free symbol in an integrated term by
/// the symmetrisation over tags `1..=k`. The result is equal to the input
/// once tags are erased.
pub fn polarize(e: &Expression, rw: &mut Rewriter) -> Result<Expression, CalculusError> {
    let mut out = Expression::zero();
    for (m, c) in e.iter() {
        let mut pieces: Vec<(Vec<Factor>, ScalarExact)> =
            vec![(m.factors.clone(), ScalarExact::one())];
        let mut touched = false;
        for s in crate::symbol::ALL_SYMBOLS.iter().filter(|s| s.is_free()) {
            let count = m
                .factors
                .iter()
                .filter(|f| f.symbol == *s && f.tag == 0)
                .count();
            if !m.integrated || count < 2 {
                continue;
            }
            touched = true;
            let perms = permutations(count);
            let weight = ScalarExact::from_rational(rat(1, factorial(count)));
            let mut next = Vec::new();
            for (fs, w) in &pieces {
                let slots: Vec<usize> = fs
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.symbol == *s && f.tag == 0)
                    .map(|(k, _)| k)
                    .collect();
                for p in &perms {
                    let mut g = fs.clone();
                    for (j, &slot) in slots.iter().enumerate() {
                        g[slot].tag = (p[j] + 1) as u8;
                    }
                    next.push((g, w * &weight));
                }
            }
            pieces = next;
        }
        if !touched {
            out.add_monomial(m.clone(), c.clone());
            continue;
        }
        let mut after = Expression::zero();
        for (fs, w) in pieces {
            after.add_monomial(Monomial::new(fs, true), w);
        }
        rw.record(RuleId::Polarize, m, c, &after)?;
        out.add_scaled(&after, c);
    }
    Ok(out)
}

/// Index of the factor from which derivatives are removed: the greatest
/// free factor by `(tag, symbol)`, else the greatest factor by symbol.
fn pivot(m: &Monomial) -> Option<usize> {
    let free = m
        .factors
        .iter()
        .enumerate()
        .filter(|(_, f)| f.symbol.is_free())
        .max_by_key(|(_, f)| (f.tag, f.symbol))
        .map(|(k, _)| k);
    free.or_else(|| {
        m.factors
            .iter()
            .enumerate()
            .max_by_key(|(_, f)| (f.symbol, f.tag))
            .map(|(k, _)| k)
    })
}

/// `c_{,w0} = -i (c_{,w11̄} - c_{,w1̄1} - α c_{,w} R)` for factor `k`.
fn zero_elimination(m: &Monomial, k: usize) -> Expression {
    let f = &m.factors[k];
    let mut base = f.clone();
    base.derivs.pop();
    let alpha = ScalarExact::from_int(base.alpha());
    let b = Expression::from_factor(base.clone());
    let mut inner = differentiate_word(&b, &[DerivIndex::One, DerivIndex::Bar]).expect("plain");
    inner = inner - differentiate_word(&b, &[DerivIndex::Bar, DerivIndex::One]).expect("plain");
    inner.add_scaled(
        &Expression::from_factors(vec![base, Factor::bare(Symbol::R)]),
        &-alpha,
    );
    let replaced = inner.scale(&-ScalarExact::i());
    times_factors(&replaced, &without(&m.factors, k), m.integrated)
}

/// Moves every derivative off the pivot of each integrated term.
fn strip_pivots(e: &Expression, rw: &mut Rewriter) -> Result<Expression, CalculusError> {
    let mut current = e.clone();
    loop {
        let mut next = Expression::zero();
        let mut changed = false;
        for (m, c) in current.iter() {
            let Some(k) = pivot(m).filter(|&k| m.integrated && !m.factors[k].derivs.is_empty())
            else {
                next.add_monomial(m.clone(), c.clone());
                continue;
            };
            changed = true;
            let last = *m.factors[k].derivs.last().expect("non-empty");
            let (rule, after) = match last {
                DerivIndex::Zero => (RuleId::ZeroElimination, zero_elimination(m, k)),
                d => (RuleId::IntegrateByParts(d.letter()), ibp_monomial(m, k)?),
            };
            rw.record(rule, m, c, &after)?;
            next.add_scaled(&after, c);
        }
        current = next;
        if !changed {
            return Ok(current);
        }
    }
}

/// Normal form modulo integration by parts. Non-integrated terms are only
/// canonicalized and reduced by the rules.
pub fn normal_form(
    e: &Expression,
    rules: &[Rule],
    rw: &mut Rewriter,
) -> Result<Expression, CalculusError> {
    let (plain, integrated) = e.split_integrated();
    let plain = reduce(&plain, rules, rw)?;
    let mut int = reduce(&integrated, rules, rw)?;
    loop {
        // rules may create new repeated free factors, so polarize every round
        let next = reduce(&strip_pivots(&polarize(&int, rw)?, rw)?, rules, rw)?;
        if next == int {
            break;
        }
        int = next;
    }
    Ok(plain + int)
}

fn outcome(residual: Expression, rw: Rewriter) -> EqualityOutcome {
    EqualityOutcome {
        equal: residual.is_zero(),
        residual,
        steps: rw.steps,
        trace: rw.trace,
    }
}

/// Decides `a = b` modulo integration by parts, the commutation relations
/// and `opts.rules`.
pub fn equal_mod_ibp(
    a: &Expression,
    b: &Expression,
    opts: &NormalizeOptions,
) -> Result<EqualityOutcome, CalculusError> {
    let mut rw = opts.rewriter();
    let residual = normal_form(&(a.clone() - b.clone()), &opts.rules, &mut rw)?;
    Ok(outcome(residual, rw))
}

/// Decides `a = b` after canonicalization and rules only (no integration by
/// parts).
pub fn equal_canonical(
    a: &Expression,
    b: &Expression,
    opts: &NormalizeOptions,
) -> Result<EqualityOutcome, CalculusError> {
    let mut rw = opts.rewriter();
    let residual = reduce(&(a.clone() - b.clone()), &opts.rules, &mut rw)?;
    Ok(outcome(residual, rw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn eq(a: &str, b: &str) -> bool {
        equal_mod_ibp(
            &parse(a).unwrap(),
            &parse(b).unwrap(),
            &NormalizeOptions::default(),
        )
        .unwrap()
        .equal
    }

    #[test]
    fn total_derivatives_vanish() {
        assert!(eq("INT[(R*f*f_{b})_{1}]", "0"));
        assert!(eq("INT[(A11*Eb1b1*f_{1})_{b}]", "0"));
    }

    #[test]
    fn zero_direction_is_not_a_divergence_for_weighted_fields() {
        // ∫ T(E) Ē is not a boundary term, but ∫ f_{,0} is
        assert!(eq("INT[f_{0}]", "0"));
        assert!(!eq("INT[E11_{0}*Eb1b1]", "0"));
    }

    #[test]
    fn worked_example() {
        assert!(eq("INT[Ab1b1_{11}*f*f]", "-2*INT[Ab1b1_{1}*f_{1}*f]"));
    }

    #[test]
    fn gradient_square() {
        assert!(eq("INT[f_{1}*f_{b}]", "-INT[f_{1b}*f]"));
        assert!(eq("INT[f_{1}*f_{b}]", "-INT[f_{b1}*f]"));
        assert!(!eq("INT[f_{1}*f_{b}]", "INT[f_{1b}*f]"));
    }

    #[test]
    fn polarization_preserves_value() {
        let e = parse("INT[R*f_{1}*f_{b}*f]").unwrap();
        let mut rw = Rewriter::default();
        let p = polarize(&e, &mut rw).unwrap();
        let erased = p.flat_map(|m| {
            let fs = m.factors.iter().map(|f| f.clone().with_tag(0)).collect();
            let mut x = Expression::zero();
            x.add_monomial(Monomial::new(fs, m.integrated), ScalarExact::one());
            x
        });
        assert_eq!(erased, e);
    }

    #[test]
    fn non_integrated_terms_compare_canonically() {
        assert!(eq("f_{b1}", "f_{1b} - i*f_{0}"));
        assert!(!eq("f_{1}*R", "-f*R_{1}"));
    }

    #[test]
    fn trace_replays() {
        let a = parse("INT[R*E11_{1}*Eb1b1_{b}] + INT[E11_{b1}*Eb1b1]").unwrap();
        let mut rw = Rewriter::tracing(DEFAULT_REWRITE_LIMIT);
        let n = normal_form(&a, &[], &mut rw).unwrap();
        assert_eq!(rw.trace.unwrap().replay(&a), n);
    }
}
