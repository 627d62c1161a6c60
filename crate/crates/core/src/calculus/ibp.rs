use crate::error::CalculusError;
use crate::expr::{Expression, Monomial};
use crate::scalar::ScalarExact;
use crate::symbol::DerivIndex;

use super::leibniz;

/// `∫ P_{,w d} G = -∫ P_{,w} G_{,d}` for the factor at `k` with trailing
/// letter `d ∈ {1, 1̄}`. A lone factor integrates to zero.
pub(crate) fn ibp_monomial(m: &Monomial, k: usize) -> Result<Expression, CalculusError> {
    if !m.integrated {
        return Err(CalculusError::NotIntegrated);
    }
    if m.alpha() != 0 {
        return Err(CalculusError::Unbalanced(
            Expression::from_factors(m.factors.clone()).to_string(),
            m.alpha(),
        ));
    }
    let f = m.factors.get(k).ok_or(CalculusError::FactorOutOfRange(k))?;
    let d = *f
        .derivs
        .last()
        .ok_or_else(|| CalculusError::NoDerivative(f.to_string()))?;
    if d == DerivIndex::Zero {
        return Err(CalculusError::ZeroDirection(f.to_string()));
    }
    let mut popped = f.clone();
    popped.derivs.pop();
    let mut others = m.factors.clone();
    others.remove(k);
    let mut out = Expression::zero();
    for mut fs in leibniz(&others, d) {
        fs.push(popped.clone());
        out.add_monomial(Monomial::new(fs, true), ScalarExact::from_int(-1));
    }
    Ok(out)
}

/// Moves the last derivative of factor `factor` in term `term` (terms in the
/// expression's canonical order) onto the remaining factors.
pub fn integrate_by_parts(
    e: &Expression,
    term: usize,
    factor: usize,
) -> Result<Expression, CalculusError> {
    let (m, c) = e
        .iter()
        .nth(term)
        .ok_or(CalculusError::TermOutOfRange(term))?;
    let moved = ibp_monomial(m, factor)?;
    let mut out = e.clone();
    out.add_monomial(m.clone(), -c.clone());
    out.add_scaled(&moved, c);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn idx_of(e: &Expression, needle: &str) -> (usize, usize) {
        for (t, (m, _)) in e.iter().enumerate() {
            for (k, f) in m.factors.iter().enumerate() {
                if f.to_string() == needle {
                    return (t, k);
                }
            }
        }
        panic!("{needle} not in {e}");
    }

    #[test]
    fn worked_example_read_in_reverse() {
        // ∫ A_1̄1̄,11 f² = -2 ∫ A_1̄1̄,1 f_,1 f
        let e = parse("INT[Ab1b1_{11}*f*f]").unwrap();
        let (t, k) = idx_of(&e, "Ab1b1_{11}");
        let r = integrate_by_parts(&e, t, k).unwrap();
        assert_eq!(r, parse("-2*INT[Ab1b1_{1}*f_{1}*f]").unwrap());
    }

    #[test]
    fn total_derivative_integrates_to_zero() {
        let e = parse("INT[f_{1b}]").unwrap();
        assert!(integrate_by_parts(&e, 0, 0).unwrap().is_zero());
    }

    #[test]
    fn curvature_weighted_deformation_square() {
        // ∫ R E11_{,1} Eb1b1_{,1̄} = -∫ R E11_{,11̄} Eb1b1 - ∫ R_{,1̄} E11_{,1} Eb1b1
        let e = parse("INT[R*E11_{1}*Eb1b1_{b}]").unwrap();
        let (t, k) = idx_of(&e, "Eb1b1_{b}");
        let r = integrate_by_parts(&e, t, k).unwrap();
        assert_eq!(
            r,
            parse("-INT[R*E11_{1b}*Eb1b1] - INT[R_{b}*E11_{1}*Eb1b1]").unwrap()
        );
    }

    #[test]
    fn errors() {
        let e = parse("INT[f*R_{0}] + A11").unwrap();
        let (t, k) = idx_of(&e, "R_{0}");
        assert!(matches!(
            integrate_by_parts(&e, t, k),
            Err(CalculusError::ZeroDirection(_))
        ));
        let (t, k) = idx_of(&e, "f");
        assert!(matches!(
            integrate_by_parts(&e, t, k),
            Err(CalculusError::NoDerivative(_))
        ));
        let (t, k) = idx_of(&e, "A11");
        assert_eq!(
            integrate_by_parts(&e, t, k),
            Err(CalculusError::NotIntegrated)
        );
        assert_eq!(
            integrate_by_parts(&e, 9, 0),
            Err(CalculusError::TermOutOfRange(9))
        );
        let u = parse("INT[R*R_{1}]").unwrap();
        assert!(matches!(
            integrate_by_parts(&u, 0, 1),
            Err(CalculusError::Unbalanced(_, 1))
        ));
    }

    #[test]
    fn twice_on_the_same_derivative_is_identity() {
        let e = parse("INT[E11_{1b}*Eb1b1_{b1}]").unwrap();
        let (t, k) = idx_of(&e, "E11_{1b}");
        let once = integrate_by_parts(&e, t, k).unwrap();
        let (t, k) = idx_of(&once, "Eb1b1_{b1b}");
        let twice = integrate_by_parts(&once, t, k).unwrap();
        assert_eq!(twice, e);
    }
}
