//! Terms and expressions over `Q(i, √3)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::ExprError;
use crate::scalar::ScalarExact;
use crate::symbol::{Factor, Symbol};

/// The coefficient-free part of a term: a sorted factor multiset, possibly
/// under `∫ dv_θ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    pub integrated: bool,
    pub factors: Vec<Factor>,
}

impl Monomial {
    pub fn new(mut factors: Vec<Factor>, integrated: bool) -> Self {
        factors.sort();
        Monomial {
            integrated,
            factors,
        }
    }

    pub fn one() -> Self {
        Monomial {
            integrated: false,
            factors: Vec::new(),
        }
    }

    pub fn conj(&self) -> Self {
        Monomial::new(
            self.factors.iter().map(Factor::conj).collect(),
            self.integrated,
        )
    }

    pub fn weight(&self) -> i64 {
        self.factors.iter().map(Factor::weight).sum()
    }

    pub fn alpha(&self) -> i64 {
        self.factors.iter().map(Factor::alpha).sum()
    }

    pub fn contains_symbol(&self, s: Symbol) -> bool {
        self.factors.iter().any(|f| f.symbol == s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    pub coeff: ScalarExact,
    pub factors: Vec<Factor>,
    pub integrated: bool,
}

impl Term {
    pub fn new(coeff: ScalarExact, factors: Vec<Factor>, integrated: bool) -> Self {
        let m = Monomial::new(factors, integrated);
        Term {
            coeff,
            factors: m.factors,
            integrated: m.integrated,
        }
    }

    pub fn monomial(&self) -> Monomial {
        Monomial {
            integrated: self.integrated,
            factors: self.factors.clone(),
        }
    }

    /// Sum of factor weights: a `1`/`1̄` derivative weighs 1, a `0`
    /// derivative 2, and `R`, `A` carry base weight 2.
    pub fn weight(&self) -> i64 {
        self.factors.iter().map(Factor::weight).sum()
    }

    pub fn alpha(&self) -> i64 {
        self.factors.iter().map(Factor::alpha).sum()
    }

    pub fn to_expression(&self) -> Expression {
        let mut e = Expression::zero();
        e.add_monomial(self.monomial(), self.coeff.clone());
        e
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expression())
    }
}

/// A sum of terms with like terms collected. Zero coefficients are never
/// stored, so the empty map is the zero expression.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Expression {
    terms: BTreeMap<Monomial, ScalarExact>,
}

impl Expression {
    pub fn zero() -> Self {
        Expression {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: ScalarExact) -> Self {
        let mut e = Expression::zero();
        e.add_monomial(Monomial::one(), c);
        e
    }

    pub fn one() -> Self {
        Self::constant(ScalarExact::one())
    }

    pub fn from_factor(f: Factor) -> Self {
        Self::from_factors(vec![f])
    }

    pub fn from_factors(factors: Vec<Factor>) -> Self {
        let mut e = Expression::zero();
        e.add_monomial(Monomial::new(factors, false), ScalarExact::one());
        e
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::from_factor(Factor::bare(s))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, m: Monomial, c: ScalarExact) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self
                .terms
                .entry(m.clone())
                .or_insert_with(ScalarExact::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    pub fn add_term(&mut self, t: Term) {
        let m = t.monomial();
        self.add_monomial(m, t.coeff);
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Expression, c: &ScalarExact) {
        for (m, k) in &other.terms {
            self.add_monomial(m.clone(), k * c);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &ScalarExact)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(m, c)| Term {
                coeff: c.clone(),
                factors: m.factors.clone(),
                integrated: m.integrated,
            })
            .collect()
    }

    pub fn coeff_of(&self, m: &Monomial) -> ScalarExact {
        self.terms.get(m).cloned().unwrap_or_else(ScalarExact::zero)
    }

    pub fn scale(&self, c: &ScalarExact) -> Expression {
        let mut out = Expression::zero();
        out.add_scaled(self, c);
        out
    }

    /// Coefficientwise complex conjugation with every index and symbol flipped.
    pub fn conjugate(&self) -> Expression {
        let mut out = Expression::zero();
        for (m, c) in &self.terms {
            out.add_monomial(m.conj(), c.conj());
        }
        out
    }

    /// `X + conj(X)`, the expansion of `2Re[X]`.
    pub fn two_re(&self) -> Expression {
        self.clone() + self.conjugate()
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    /// Wraps every term in `∫ dv_θ`.
    pub fn integrate(&self) -> Result<Expression, ExprError> {
        let mut out = Expression::zero();
        for (m, c) in &self.terms {
            if m.integrated {
                return Err(ExprError::NestedIntegral);
            }
            out.add_monomial(
                Monomial {
                    integrated: true,
                    factors: m.factors.clone(),
                },
                c.clone(),
            );
        }
        Ok(out)
    }

    /// Split into (non-integrated, integrated) parts.
    pub fn split_integrated(&self) -> (Expression, Expression) {
        let mut plain = Expression::zero();
        let mut int = Expression::zero();
        for (m, c) in &self.terms {
            if m.integrated {
                int.add_monomial(m.clone(), c.clone());
            } else {
                plain.add_monomial(m.clone(), c.clone());
            }
        }
        (plain, int)
    }

    pub fn has_integrated(&self) -> bool {
        self.terms.keys().any(|m| m.integrated)
    }

    pub fn try_mul(&self, rhs: &Expression) -> Result<Expression, ExprError> {
        let mut out = Expression::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let integrated = match (m1.integrated, m2.integrated) {
                    (true, true) => return Err(ExprError::IntegralProduct),
                    (true, false) if !m2.factors.is_empty() => {
                        return Err(ExprError::IntegralProduct)
                    }
                    (false, true) if !m1.factors.is_empty() => {
                        return Err(ExprError::IntegralProduct)
                    }
                    (a, b) => a || b,
                };
                let mut fs = m1.factors.clone();
                fs.extend(m2.factors.iter().cloned());
                out.add_monomial(Monomial::new(fs, integrated), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Replace every monomial by `f(monomial)` (scaled by its coefficient).
    pub fn flat_map<F>(&self, mut f: F) -> Expression
    where
        F: FnMut(&Monomial) -> Expression,
    {
        let mut out = Expression::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Terms for which `keep` returns true.
    pub fn filter<F>(&self, mut keep: F) -> Expression
    where
        F: FnMut(&Monomial) -> bool,
    {
        let mut out = Expression::zero();
        for (m, c) in &self.terms {
            if keep(m) {
                out.add_monomial(m.clone(), c.clone());
            }
        }
        out
    }

    pub fn max_weight(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::weight).max()
    }
}

impl Add for Expression {
    type Output = Expression;
    fn add(mut self, rhs: Expression) -> Expression {
        for (m, c) in rhs.terms {
            self.add_monomial(m, c);
        }
        self
    }
}

impl Sub for Expression {
    type Output = Expression;
    fn sub(mut self, rhs: Expression) -> Expression {
        for (m, c) in rhs.terms {
            self.add_monomial(m, -c);
        }
        self
    }
}

impl Neg for Expression {
    type Output = Expression;
    fn neg(self) -> Expression {
        self.scale(&ScalarExact::from_int(-1))
    }
}

impl Mul for Expression {
    type Output = Expression;
    /// Panics when both sides carry non-constant integrated terms; use
    /// [`Expression::try_mul`] on untrusted input.
    fn mul(self, rhs: Expression) -> Expression {
        self.try_mul(&rhs)
            .expect("product of integrated expressions")
    }
}

impl Mul<ScalarExact> for Expression {
    type Output = Expression;
    fn mul(self, rhs: ScalarExact) -> Expression {
        self.scale(&rhs)
    }
}

impl From<ScalarExact> for Expression {
    fn from(c: ScalarExact) -> Self {
        Expression::constant(c)
    }
}

fn body_string(m: &Monomial) -> String {
    let fac = m
        .factors
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join("*");
    if m.integrated {
        format!("INT[{}]", if fac.is_empty() { "1" } else { &fac })
    } else {
        fac
    }
}

impl fmt::Display for Expression {
    /// Canonical text; `parse(print(e)) == e` for every expression.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_monomial();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (k == 0, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            let body = body_string(m);
            if mag.is_one() {
                if body.is_empty() {
                    write!(f, "1")?;
                } else {
                    write!(f, "{}", body)?;
                }
            } else if body.is_empty() {
                write!(f, "{}", mag)?;
            } else {
                write!(f, "{}*{}", mag, body)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_word;

    fn fac(s: Symbol, w: &str) -> Factor {
        Factor::new(s, parse_word(w).unwrap())
    }

    #[test]
    fn like_terms_collect_and_cancel() {
        let a = Expression::from_factors(vec![fac(Symbol::A11, ""), fac(Symbol::F, "1")]);
        let b = Expression::from_factors(vec![fac(Symbol::F, "1"), fac(Symbol::A11, "")]);
        assert_eq!((a.clone() + b.clone()).len(), 1);
        assert!((a - b).is_zero());
    }

    #[test]
    fn weight_of_torsion_times_deformation() {
        let t = Term::new(
            ScalarExact::one(),
            vec![fac(Symbol::A11, ""), fac(Symbol::Eb1b1, "")],
            false,
        );
        assert_eq!(t.weight(), 2);
    }

    #[test]
    fn conjugate_example() {
        let e = Expression::from_factors(vec![fac(Symbol::A11, ""), fac(Symbol::F, "")])
            .scale(&ScalarExact::i());
        let c = e.conjugate();
        assert_eq!(c.to_string(), "-i*Ab1b1*f");
        assert_eq!(c.conjugate(), e);
    }

    #[test]
    fn integral_products_rejected() {
        let x = Expression::symbol(Symbol::F).integrate().unwrap();
        assert!(x.try_mul(&Expression::symbol(Symbol::R)).is_err());
        assert!(x
            .try_mul(&Expression::constant(ScalarExact::from_int(2)))
            .is_ok());
        assert!(x.integrate().is_err());
    }
}
