use std::fmt;

use serde::Serialize;

use crate::error::CalculusError;
use crate::expr::{Expression, Monomial};
use crate::symbol::{Factor, Symbol};

use super::canonical::Rewriter;
use super::normal::normal_form;

const U_TAG: u8 = 9;
const V_TAG: u8 = 1;

/// The space an operator template acts on, with its placeholder symbols and
/// its `L²` pairing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Domain {
    /// Real functions, placeholder `f`, pairing `∫ u v`.
    RealFunction,
    /// Complex functions, placeholder `g` (conjugate `gb`), pairing `∫ u v̄`.
    ComplexFunction,
    /// Symmetric 2-tensors `E₁₁ θ¹⊗θ¹ + conj`, placeholders `E11`/`Eb1b1`,
    /// pairing `∫ (u₁₁ v̄₁₁ + ū₁₁ v₁₁)`.
    Tensor11,
}

impl Domain {
    /// `(placeholder, conjugate placeholder)`; equal for real functions.
    pub fn placeholders(self) -> (Symbol, Symbol) {
        match self {
            Domain::RealFunction => (Symbol::F, Symbol::F),
            Domain::ComplexFunction => (Symbol::G, Symbol::Gb),
            Domain::Tensor11 => (Symbol::E11, Symbol::Eb1b1),
        }
    }

    fn hermitian(self) -> bool {
        self == Domain::ComplexFunction
    }

    fn is_placeholder(self, s: Symbol) -> bool {
        let (a, b) = self.placeholders();
        s == a || s == b
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::RealFunction => "real function",
            Domain::ComplexFunction => "complex function",
            Domain::Tensor11 => "(1,1)-tensor",
        })
    }
}

fn retag(e: &Expression, from: u8, to: u8, domain: Domain) -> Expression {
    e.flat_map(|m| {
        let fs = m
            .factors
            .iter()
            .map(|f| {
                if f.tag == from && domain.is_placeholder(f.symbol) {
                    f.clone().with_tag(to)
                } else {
                    f.clone()
                }
            })
            .collect();
        let mut x = Expression::zero();
        x.add_monomial(
            Monomial::new(fs, m.integrated),
            crate::scalar::ScalarExact::one(),
        );
        x
    })
}

/// Checks that every term of `body` has exactly one placeholder factor.
pub fn check_linear_template(body: &Expression, domain: Domain) -> Result<(), CalculusError> {
    for (m, c) in body.iter() {
        let n = m
            .factors
            .iter()
            .filter(|f| f.tag == 0 && domain.is_placeholder(f.symbol))
            .count();
        if n != 1 || m.integrated {
            let mut t = Expression::zero();
            t.add_monomial(m.clone(), c.clone());
            return Err(CalculusError::Nonlinear(t.to_string()));
        }
    }
    Ok(())
}

/// Formal adjoint of the linear operator `body` from `domain` to `codomain`.
///
/// The pairing `⟨T u, v⟩` is formed with tagged copies of the placeholders,
/// every derivative is moved off `u` by integration by parts, and `T* v` is
/// read off the coefficient of `u`. The result is a template in the
/// placeholders of `codomain`.
pub fn adjoint(
    body: &Expression,
    domain: Domain,
    codomain: Domain,
) -> Result<Expression, CalculusError> {
    if domain.hermitian() != codomain.hermitian() {
        return Err(CalculusError::PairingMismatch(
            domain.to_string(),
            codomain.to_string(),
        ));
    }
    check_linear_template(body, domain)?;
    let tu = retag(body, 0, U_TAG, domain);
    let (v, vb) = codomain.placeholders();
    let v = Expression::from_factor(Factor::bare(v).with_tag(V_TAG));
    let vb = Expression::from_factor(Factor::bare(vb).with_tag(V_TAG));
    let pairing = match codomain {
        Domain::RealFunction => tu * v,
        Domain::ComplexFunction => tu * vb,
        Domain::Tensor11 => tu.clone() * vb + tu.conjugate() * v,
    };
    let pairing = pairing.integrate().expect("plain pairing");
    for (m, _) in pairing.iter() {
        if m.alpha() != 0 {
            return Err(CalculusError::Unbalanced(
                Expression::from_factors(m.factors.clone()).to_string(),
                m.alpha(),
            ));
        }
    }
    let mut rw = Rewriter::new(usize::MAX);
    let normal = normal_form(&pairing, &[], &mut rw)?;

    let (u, _) = domain.placeholders();
    let mut w = Expression::zero();
    let mut w_bar = Expression::zero();
    for (m, c) in normal.iter() {
        let k = m
            .factors
            .iter()
            .position(|f| f.tag == U_TAG && domain.is_placeholder(f.symbol))
            .expect("pairing is linear in u");
        debug_assert!(m.factors[k].derivs.is_empty());
        let rest = Monomial::new(crate::calculus::without(&m.factors, k), false);
        if m.factors[k].symbol == u {
            w.add_monomial(rest, c.clone());
        } else {
            w_bar.add_monomial(rest, c.clone());
        }
    }
    let s = match domain {
        Domain::RealFunction => w,
        Domain::ComplexFunction => {
            if !w_bar.is_zero() {
                return Err(CalculusError::Antilinear(w_bar.to_string()));
            }
            w.conjugate()
        }
        Domain::Tensor11 => w_bar,
    };
    Ok(retag(&s, V_TAG, 0, codomain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::canonicalize;
    use crate::parse::parse;

    fn canon(e: &Expression) -> Expression {
        canonicalize(e, &mut Rewriter::default()).unwrap()
    }

    #[test]
    fn identity_is_self_adjoint() {
        let id = parse("f").unwrap();
        assert_eq!(
            adjoint(&id, Domain::RealFunction, Domain::RealFunction).unwrap(),
            id
        );
        let id = parse("g").unwrap();
        assert_eq!(
            adjoint(&id, Domain::ComplexFunction, Domain::ComplexFunction).unwrap(),
            id
        );
    }

    #[test]
    fn derivative_adjoint() {
        // ∫ A_11 g_{,1̄1̄} v̄ = ∫ g conj((A_1̄1̄ v)_{,11})
        let d = parse("A11*g_{bb}").unwrap();
        let star = adjoint(&d, Domain::ComplexFunction, Domain::ComplexFunction).unwrap();
        assert_eq!(canon(&star), canon(&parse("(Ab1b1*g)_{11}").unwrap()));
    }

    #[test]
    fn cartan_type_operator_adjoint() {
        let dj = parse("f_{11} + i*A11*f").unwrap();
        let star = adjoint(&dj, Domain::RealFunction, Domain::Tensor11).unwrap();
        let expect = parse("E11_{bb} + i*A11*Eb1b1 + Eb1b1_{11} - i*Ab1b1*E11").unwrap();
        assert_eq!(canon(&star), canon(&expect));
        let back = adjoint(&star, Domain::Tensor11, Domain::RealFunction).unwrap();
        assert_eq!(canon(&back), canon(&dj));
    }

    #[test]
    fn nonlinear_rejected() {
        let q = parse("f*f_{1}").unwrap();
        assert!(matches!(
            adjoint(&q, Domain::RealFunction, Domain::RealFunction),
            Err(CalculusError::Nonlinear(_))
        ));
        let c = parse("f + 1").unwrap();
        assert!(matches!(
            adjoint(&c, Domain::RealFunction, Domain::RealFunction),
            Err(CalculusError::Nonlinear(_))
        ));
    }

    #[test]
    fn unbalanced_template_rejected() {
        let t = parse("R*f_{10}").unwrap();
        assert!(matches!(
            adjoint(&t, Domain::RealFunction, Domain::RealFunction),
            Err(CalculusError::Unbalanced(_, 1))
        ));
    }

    #[test]
    fn antilinear_rejected() {
        let a = parse("gb").unwrap();
        assert!(matches!(
            adjoint(&a, Domain::ComplexFunction, Domain::ComplexFunction),
            Err(CalculusError::Antilinear(_))
        ));
    }
}
