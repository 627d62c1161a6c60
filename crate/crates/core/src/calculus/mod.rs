//! The pseudohermitian rewriting engine: covariant differentiation, the
//! commutation relations, integration by parts and the normal form used to
//! decide equality of integrals.

mod adjoint;
mod canonical;
mod commute;
mod ibp;
mod normal;
mod rules;
mod trace;

pub use adjoint::{adjoint, check_linear_template, Domain};
pub use canonical::{canonicalize, canonicalize_with, Rewriter, DEFAULT_REWRITE_LIMIT};
pub use commute::commute_swap;
pub use ibp::integrate_by_parts;
pub use normal::{
    equal_canonical, equal_mod_ibp, normal_form, polarize, EqualityOutcome, NormalizeOptions,
};
pub use rules::{apply_rules, eliminate_r0, prefix_rule, Rule};
pub use trace::{RewriteTrace, RuleId, TraceStep};

use crate::error::CalculusError;
use crate::expr::{Expression, Monomial};
use crate::symbol::{DerivIndex, Factor};

/// Leibniz rule on a factor list: one summand per factor.
pub(crate) fn leibniz(factors: &[Factor], idx: DerivIndex) -> Vec<Vec<Factor>> {
    (0..factors.len())
        .map(|k| {
            let mut fs = factors.to_vec();
            fs[k] = fs[k].derived(idx);
            fs
        })
        .collect()
}

/// Covariant derivative in direction `idx`; constants differentiate to zero.
pub fn differentiate(e: &Expression, idx: DerivIndex) -> Result<Expression, CalculusError> {
    let mut out = Expression::zero();
    for (m, c) in e.iter() {
        if m.integrated {
            return Err(CalculusError::DifferentiateIntegrated);
        }
        for fs in leibniz(&m.factors, idx) {
            out.add_monomial(Monomial::new(fs, false), c.clone());
        }
    }
    Ok(out)
}

/// Applies the letters of `word` left to right.
pub fn differentiate_word(
    e: &Expression,
    word: &[DerivIndex],
) -> Result<Expression, CalculusError> {
    let mut out = e.clone();
    for &d in word {
        out = differentiate(&out, d)?;
    }
    Ok(out)
}

/// Product of one expression with a fixed list of extra factors, keeping the
/// integration flag.
pub(crate) fn times_factors(e: &Expression, others: &[Factor], integrated: bool) -> Expression {
    let mut out = Expression::zero();
    for (m, c) in e.iter() {
        let mut fs = m.factors.clone();
        fs.extend(others.iter().cloned());
        out.add_monomial(Monomial::new(fs, integrated || m.integrated), c.clone());
    }
    out
}

/// The monomial with factor `k` removed.
pub(crate) fn without(factors: &[Factor], k: usize) -> Vec<Factor> {
    let mut fs = factors.to_vec();
    fs.remove(k);
    fs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::symbol::DerivIndex::*;

    #[test]
    fn leibniz_on_product() {
        let e = parse("A11*Eb1b1").unwrap();
        let d = differentiate(&e, One).unwrap();
        assert_eq!(d, parse("A11_{1}*Eb1b1 + A11*Eb1b1_{1}").unwrap());
    }

    #[test]
    fn constant_derivative_vanishes() {
        assert!(differentiate(&parse("1").unwrap(), One).unwrap().is_zero());
    }

    #[test]
    fn integrated_input_rejected() {
        let e = parse("INT[f]").unwrap();
        assert_eq!(
            differentiate(&e, Bar),
            Err(CalculusError::DifferentiateIntegrated)
        );
    }

    #[test]
    fn grouped_second_derivative_in_cartan_variation() {
        // (i/3)(A11 Eb1b1)_{,11}
        let e = parse("i/3*(A11*Eb1b1)_{11}").unwrap();
        let expect =
            parse("i/3*A11_{11}*Eb1b1 + 2*i/3*A11_{1}*Eb1b1_{1} + i/3*A11*Eb1b1_{11}").unwrap();
        assert_eq!(e, expect);
        assert_eq!(e.len(), 3);
    }
}
