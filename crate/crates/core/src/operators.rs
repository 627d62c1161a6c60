//! Named operators as linear templates in a placeholder symbol.

use std::fmt;

use crate::calculus::{adjoint, check_linear_template, prefix_rule, Domain, Rule};
use crate::error::{CalculusError, Error, Result};
use crate::expr::{Expression, Monomial};
use crate::parse::parse;
use crate::scalar::ScalarExact;
use crate::symbol::Symbol;

/// A linear operator `domain → codomain`, written as an expression in the
/// placeholders of `domain`. Tensor-valued operators store the `(1,1)`
/// coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorTemplate {
    pub name: String,
    pub domain: Domain,
    pub codomain: Domain,
    pub body: Expression,
}

impl OperatorTemplate {
    pub fn new(name: &str, domain: Domain, codomain: Domain, body: Expression) -> Result<Self> {
        check_linear_template(&body, domain)?;
        Ok(OperatorTemplate {
            name: name.to_string(),
            domain,
            codomain,
            body,
        })
    }

    fn parsed(name: &str, domain: Domain, codomain: Domain, text: &str) -> Self {
        Self::new(
            name,
            domain,
            codomain,
            parse(text).expect("builder text parses"),
        )
        .expect("builder is linear")
    }

    /// The placeholder symbol, e.g. `f` or `E11`.
    pub fn placeholder(&self) -> Symbol {
        self.domain.placeholders().0
    }

    /// Substitutes `arg` (and its conjugate) for the placeholders.
    pub fn apply(&self, arg: &Expression) -> Result<Expression> {
        if arg.has_integrated() {
            return Err(CalculusError::DifferentiateIntegrated.into());
        }
        let (p, pb) = self.domain.placeholders();
        let arg_bar = arg.conjugate();
        let mut out = Expression::zero();
        for (m, c) in self.body.iter() {
            let mut acc = Expression::constant(c.clone());
            for f in &m.factors {
                let piece = if f.tag == 0 && f.symbol == p {
                    crate::calculus::differentiate_word(arg, &f.derivs)?
                } else if f.tag == 0 && f.symbol == pb {
                    crate::calculus::differentiate_word(&arg_bar, &f.derivs)?
                } else {
                    let mut x = Expression::zero();
                    x.add_monomial(Monomial::new(vec![f.clone()], false), ScalarExact::one());
                    x
                };
                acc = acc * piece;
            }
            out = out + acc;
        }
        Ok(out)
    }

    /// Applies the operator to its own placeholder, giving `T f`, `T g` or `T E`.
    pub fn expression(&self) -> Expression {
        self.body.clone()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &OperatorTemplate) -> Result<OperatorTemplate> {
        if inner.codomain != self.domain {
            return Err(Error::Precondition(format!(
                "cannot compose {} after {}: {} vs {}",
                self.name, inner.name, self.domain, inner.codomain
            )));
        }
        Ok(OperatorTemplate {
            name: format!("{}{}", self.name, inner.name),
            domain: inner.domain,
            codomain: self.codomain,
            body: self.apply(&inner.body)?,
        })
    }

    /// Formal adjoint with respect to the `L²` pairings of domain and codomain.
    pub fn adjoint(&self) -> Result<OperatorTemplate> {
        let body = adjoint(&self.body, self.domain, self.codomain)?;
        let name = match self.name.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{}*", self.name),
        };
        Ok(OperatorTemplate {
            name,
            domain: self.codomain,
            codomain: self.domain,
            body,
        })
    }
}

impl fmt::Display for OperatorTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} -> {}\n  {}({}) = {}",
            self.name,
            self.domain,
            self.codomain,
            self.name,
            self.placeholder(),
            self.body
        )
    }
}

/// `D_J f = 2Re[(f_{,11} + i A_11 f) θ¹⊗θ¹]`; the template is the `(1,1)`
/// coefficient.
pub fn build_dj() -> OperatorTemplate {
    OperatorTemplate::parsed(
        "DJ",
        Domain::RealFunction,
        Domain::Tensor11,
        "f_{11} + i*A11*f",
    )
}

/// `D_J* E = E_11,1̄1̄ + i A_11 E_1̄1̄ + conj`.
pub fn build_dj_star() -> OperatorTemplate {
    OperatorTemplate::parsed(
        "DJ*",
        Domain::Tensor11,
        Domain::RealFunction,
        "E11_{bb} + i*A11*Eb1b1 + Eb1b1_{11} - i*Ab1b1*E11",
    )
}

/// `L_α g = Δ_b g + i α g_{,0}`.
pub fn build_l_alpha(alpha: &ScalarExact) -> OperatorTemplate {
    let mut body = parse("-g_{1b} - g_{b1}").expect("parses");
    body.add_scaled(
        &parse("g_{0}").expect("parses"),
        &(ScalarExact::i() * alpha.clone()),
    );
    OperatorTemplate::new(
        &format!("L[{alpha}]"),
        Domain::ComplexFunction,
        Domain::ComplexFunction,
        body,
    )
    .expect("linear")
}

/// `Δ_b f = -(f_{,11̄} + f_{,1̄1})`.
pub fn build_sublaplacian() -> OperatorTemplate {
    OperatorTemplate::parsed(
        "Lap_b",
        Domain::RealFunction,
        Domain::RealFunction,
        "-f_{1b} - f_{b1}",
    )
}

/// `|∇_b u|²_θ = u_{,1} ū_{,1̄} + u_{,1̄} ū_{,1}`, which is `2 f_{,1} f_{,1̄}` for
/// real `f`. Quadratic, so returned as an expression.
pub fn build_subgradient_sq(u: &Expression) -> Result<Expression> {
    use crate::calculus::differentiate;
    use crate::symbol::DerivIndex::{Bar, One};
    let ub = u.conjugate();
    Ok(differentiate(u, One)? * differentiate(&ub, Bar)?
        + differentiate(u, Bar)? * differentiate(&ub, One)?)
}

/// `Q_11 = (1/6) R_{,11} + (i/2) R A_11 - A_11,0 - (2i/3) A_11,1̄1`.
pub fn build_q11() -> Expression {
    parse("1/6*R_{11} + i/2*R*A11 - A11_{0} - 2*i/3*A11_{b1}").expect("parses")
}

/// `R_{,0} → A_11,1̄1̄ + A_1̄1̄,11`.
pub fn bianchi_rule() -> Rule {
    Rule::Bianchi
}

/// `A_11 = 0` (and its conjugate).
pub fn torsion_free_rule() -> Rule {
    Rule::Vanish(Symbol::A11)
}

/// `D_J f = 0` read as `f_{,11} → -i A_11 f`, with conjugate.
pub fn dj_kernel_rule() -> Rule {
    prefix_rule("DJf=0", Symbol::F, "11", "-i*A11*f")
}

/// `D_J* E = 0` read as `E_11,1̄1̄ → -(i A_11 E_1̄1̄ + E_1̄1̄,11 - i A_1̄1̄ E_11)`.
pub fn dj_star_kernel_rule() -> Rule {
    Rule::Prefix {
        name: "DJ*E=0".to_string(),
        symbol: Symbol::E11,
        prefix: crate::symbol::parse_word("bb").expect("word"),
        replacement: parse("-i*A11*Eb1b1 - Eb1b1_{11} + i*Ab1b1*E11").expect("parses"),
        with_conjugate: false,
    }
}

/// Coefficient `X` of the right side of the Cartan-tensor variation
/// `-DQ_J(2E) + (1/6) D_J D_J* E = 2Re[X θ¹⊗θ¹]`.
pub fn build_dqj_rhs() -> OperatorTemplate {
    let body = crate::identities::Corpus::builtin()
        .get("cartan-variation")
        .and_then(|r| r.rhs_expr())
        .expect("builtin corpus record");
    OperatorTemplate {
        name: "DQJ-rhs".to_string(),
        domain: Domain::Tensor11,
        codomain: Domain::Tensor11,
        body,
    }
}

/// `-DQ_J(2E) = X - (1/6) D_J D_J* E`, coefficientwise.
pub fn build_minus_dqj() -> OperatorTemplate {
    let x = build_dqj_rhs();
    let djdjs = build_dj().compose(&build_dj_star()).expect("composable");
    OperatorTemplate {
        name: "-DQJ".to_string(),
        domain: Domain::Tensor11,
        codomain: Domain::Tensor11,
        body: x.body - djdjs.body.scale(&ScalarExact::from_frac(1, 6)),
    }
}

/// Registry names accepted by [`lookup`].
pub const OPERATOR_NAMES: [&str; 9] = [
    "DJ",
    "DJ*",
    "L",
    "L_sqrt3",
    "L_4+sqrt3",
    "Lap_b",
    "Q11",
    "DQJ-rhs",
    "-DQJ",
];

/// Looks an operator up by name; `L_sqrt3` and `L_4+sqrt3` are `L_α` for
/// `α = i√3` and `α = 4 + i√3`, `L` is `L_0`.
pub fn lookup(name: &str) -> Result<OperatorTemplate> {
    let s3i = ScalarExact::sqrt3() * ScalarExact::i();
    Ok(match name {
        "DJ" => build_dj(),
        "DJ*" => build_dj_star(),
        "L" => build_l_alpha(&ScalarExact::zero()),
        "L_sqrt3" => build_l_alpha(&s3i),
        "L_4+sqrt3" => build_l_alpha(&(ScalarExact::from_int(4) + s3i)),
        "Lap_b" => build_sublaplacian(),
        "DQJ-rhs" => build_dqj_rhs(),
        "-DQJ" => build_minus_dqj(),
        "Q11" => {
            return Err(Error::Precondition(
                "Q11 is a tensor expression, not an operator; use build_q11".to_string(),
            ))
        }
        other => return Err(Error::UnknownOperator(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{canonicalize, equal_canonical, NormalizeOptions, Rewriter};

    fn canon(e: &Expression) -> Expression {
        canonicalize(e, &mut Rewriter::default()).unwrap()
    }

    #[test]
    fn dj_on_constant() {
        assert_eq!(
            build_dj().apply(&Expression::one()).unwrap(),
            parse("i*A11").unwrap()
        );
    }

    #[test]
    fn dj_star_is_adjoint_of_dj() {
        let adj = build_dj().adjoint().unwrap();
        assert_eq!(adj.name, "DJ*");
        assert_eq!(canon(&adj.body), canon(&build_dj_star().body));
    }

    #[test]
    fn torsion_free_dj_star() {
        let mut rw = Rewriter::default();
        let e =
            crate::calculus::apply_rules(&build_dj_star().body, &[torsion_free_rule()], &mut rw)
                .unwrap();
        assert_eq!(e, parse("E11_{bb} + Eb1b1_{11}").unwrap());
    }

    #[test]
    fn l_alpha_zero_is_sublaplacian() {
        let l0 = build_l_alpha(&ScalarExact::zero());
        let lap = build_sublaplacian();
        assert_eq!(l0.apply(&parse("f").unwrap()).unwrap(), lap.body);
    }

    #[test]
    fn l_alpha_adjoint_conjugates_alpha() {
        let a = ScalarExact::from_int(4) + ScalarExact::sqrt3() * ScalarExact::i();
        let adj = build_l_alpha(&a).adjoint().unwrap();
        assert_eq!(canon(&adj.body), canon(&build_l_alpha(&a.conj()).body));
        let back = adj.adjoint().unwrap();
        assert_eq!(canon(&back.body), canon(&build_l_alpha(&a).body));
    }

    #[test]
    fn sublaplacian_self_adjoint() {
        let lap = build_sublaplacian();
        assert_eq!(canon(&lap.adjoint().unwrap().body), canon(&lap.body));
        assert!(lap.apply(&Expression::one()).unwrap().is_zero());
    }

    #[test]
    fn subgradient_square_of_real_function() {
        let g = build_subgradient_sq(&parse("f").unwrap()).unwrap();
        assert_eq!(g, parse("2*f_{1}*f_{b}").unwrap());
        assert!(g.is_self_conjugate());
    }

    #[test]
    fn q11_weights_and_torsion_free_constant_curvature() {
        let q = build_q11();
        assert!(q.terms().iter().all(|t| t.weight() == 4));
        let mut rw = Rewriter::default();
        let t = crate::calculus::apply_rules(&q, &[torsion_free_rule()], &mut rw).unwrap();
        assert_eq!(t, parse("1/6*R_{11}").unwrap());
    }

    #[test]
    fn dj_kernel_rule_on_torsion_product() {
        let e = parse("Ab1b1*f_{11}").unwrap();
        let out = equal_canonical(
            &e,
            &parse("-i*A11*Ab1b1*f").unwrap(),
            &NormalizeOptions::with_rules(vec![dj_kernel_rule()]),
        )
        .unwrap();
        assert!(out.equal);
    }

    #[test]
    fn dqj_rhs_has_uniform_alpha_and_vanishes_at_zero() {
        let x = build_dqj_rhs();
        assert!(x.body.terms().iter().all(|t| t.alpha() == 2));
        assert!(x.apply(&Expression::zero()).unwrap().is_zero());
    }

    #[test]
    fn registry() {
        for n in OPERATOR_NAMES {
            if n != "Q11" {
                assert!(lookup(n).is_ok(), "{n}");
            }
        }
        assert!(matches!(lookup("nope"), Err(Error::UnknownOperator(_))));
    }

    #[test]
    fn nonlinear_template_rejected() {
        let r = OperatorTemplate::new(
            "sq",
            Domain::RealFunction,
            Domain::RealFunction,
            parse("f*f").unwrap(),
        );
        assert!(r.is_err());
    }
}
