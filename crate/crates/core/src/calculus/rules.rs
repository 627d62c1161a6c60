use crate::error::CalculusError;
use crate::expr::{Expression, Monomial};
use crate::parse::parse;
use crate::symbol::{DerivIndex, Factor, Symbol};

use super::canonical::Rewriter;
use super::trace::RuleId;
use super::{commute_swap, differentiate_word, times_factors, without};

/// A substitution applied to individual factors.
#[derive(Clone, Debug, PartialEq)]
pub enum Rule {
    /// The symbol and its conjugate are identically zero (e.g. `A11 = 0`).
    Vanish(Symbol),
    /// `R_{,0} = A_{11,1̄1̄} + A_{1̄1̄,11}`, applied to every `R` jet that
    /// contains a `0` letter after moving that letter to the front.
    Bianchi,
    /// `symbol_{,prefix w} → (replacement)_{,w}`, and the conjugate rule
    /// when `with_conjugate` is set.
    Prefix {
        name: String,
        symbol: Symbol,
        prefix: Vec<DerivIndex>,
        replacement: Expression,
        with_conjugate: bool,
    },
}

impl Rule {
    pub fn name(&self) -> String {
        match self {
            Rule::Vanish(s) => format!("{}=0", s),
            Rule::Bianchi => "bianchi".to_string(),
            Rule::Prefix { name, .. } => name.clone(),
        }
    }

    /// Replacement for `f`, or `None` when the rule does not apply.
    fn rewrite(&self, f: &Factor) -> Option<Expression> {
        match self {
            Rule::Vanish(s) => (f.symbol == *s || f.symbol == s.conj()).then(Expression::zero),
            Rule::Bianchi => (f.symbol == Symbol::R && f.derivs.contains(&DerivIndex::Zero))
                .then(|| eliminate_r0(f)),
            Rule::Prefix {
                symbol,
                prefix,
                replacement,
                with_conjugate,
                ..
            } => {
                let try_match = |sym: Symbol, pre: &[DerivIndex], repl: &Expression| {
                    if f.symbol == sym && f.derivs.starts_with(pre) {
                        let repl = retag_free(repl, f.tag);
                        Some(
                            differentiate_word(&repl, &f.derivs[pre.len()..])
                                .expect("plain replacement"),
                        )
                    } else {
                        None
                    }
                };
                try_match(*symbol, prefix, replacement).or_else(|| {
                    if *with_conjugate {
                        let cpre: Vec<_> = prefix.iter().map(|d| d.conj()).collect();
                        try_match(symbol.conj(), &cpre, &replacement.conjugate())
                    } else {
                        None
                    }
                })
            }
        }
    }
}

/// Copies of free fields in a replacement inherit the tag of the factor
/// being replaced.
fn retag_free(e: &Expression, tag: u8) -> Expression {
    if tag == 0 {
        return e.clone();
    }
    e.flat_map(|m| {
        let fs = m
            .factors
            .iter()
            .map(|g| {
                if g.symbol.is_free() {
                    g.clone().with_tag(tag)
                } else {
                    g.clone()
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

/// Rewrites an `R` jet containing a `0` letter into torsion jets via the
/// Bianchi identity. The first `0` is commuted to the front, then
/// `R_{,0 w} = (A_{11,1̄1̄} + A_{1̄1̄,11})_{,w}`; correction terms are handled
/// recursively, so no `R` factor in the result has a `0` letter.
pub fn eliminate_r0(f: &Factor) -> Expression {
    let Some(p) = f.derivs.iter().position(|d| *d == DerivIndex::Zero) else {
        return Expression::from_factor(f.clone());
    };
    if f.symbol != Symbol::R {
        return Expression::from_factor(f.clone());
    }
    if p == 0 {
        let base = parse("A11_{bb} + Ab1b1_{11}").expect("bianchi replacement parses");
        return differentiate_word(&base, &f.derivs[1..]).expect("plain");
    }
    let swapped = commute_swap(f, p - 1).expect("position in range");
    let mut out = Expression::zero();
    for (m, c) in swapped.iter() {
        let mut acc = Expression::one();
        for g in &m.factors {
            let piece = if g.symbol == Symbol::R {
                eliminate_r0(g)
            } else {
                Expression::from_factor(g.clone())
            };
            acc = acc * piece;
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// Applies `rules` until none matches. Each rewrite replaces one factor of one
/// term.
pub fn apply_rules(
    e: &Expression,
    rules: &[Rule],
    rw: &mut Rewriter,
) -> Result<Expression, CalculusError> {
    if rules.is_empty() {
        return Ok(e.clone());
    }
    let mut current = e.clone();
    loop {
        let mut next = Expression::zero();
        let mut changed = false;
        for (m, c) in current.iter() {
            match first_match(m, rules) {
                None => next.add_monomial(m.clone(), c.clone()),
                Some((k, rule, repl)) => {
                    changed = true;
                    let after = times_factors(&repl, &without(&m.factors, k), m.integrated);
                    let label = format!("{}:{}", rule, m.factors[k].symbol);
                    rw.record(RuleId::Substitute(label), m, c, &after)?;
                    next.add_scaled(&after, c);
                }
            }
        }
        current = next;
        if !changed {
            return Ok(current);
        }
    }
}

fn first_match(m: &Monomial, rules: &[Rule]) -> Option<(usize, String, Expression)> {
    for (k, f) in m.factors.iter().enumerate() {
        for r in rules {
            if let Some(repl) = r.rewrite(f) {
                return Some((k, r.name(), repl));
            }
        }
    }
    None
}

/// Builds a [`Rule::Prefix`] from text, e.g. `prefix_rule("DJf=0", Symbol::F, "11", "-i*A11*f")`
/// for `f_{,11} → -i A_11 f` together with its conjugate.
pub fn prefix_rule(name: &str, symbol: Symbol, prefix: &str, replacement: &str) -> Rule {
    Rule::Prefix {
        name: name.to_string(),
        symbol,
        prefix: crate::symbol::parse_word(prefix).expect("valid word"),
        replacement: parse(replacement).expect("valid replacement"),
        with_conjugate: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::canonicalize;

    #[test]
    fn bianchi_on_bare_r0() {
        let r = eliminate_r0(&Factor::new(Symbol::R, vec![DerivIndex::Zero]));
        assert_eq!(r, parse("A11_{bb} + Ab1b1_{11}").unwrap());
    }

    #[test]
    fn bianchi_trailing_zero_is_an_identity() {
        // R_{,10} rewritten, then compared with R_{,01} - R_{,1̄} A11 expanded by hand
        let f = Factor::new(Symbol::R, vec![DerivIndex::One, DerivIndex::Zero]);
        let got = eliminate_r0(&f);
        let expect = parse("(A11_{bb} + Ab1b1_{11})_{1} - R_{b}*A11").unwrap();
        assert_eq!(got, expect);
    }

    #[test]
    fn torsion_free_bianchi_kills_r0() {
        let mut rw = Rewriter::default();
        let e = parse("s3*R_{0}*f*f").unwrap();
        let out = apply_rules(&e, &[Rule::Bianchi, Rule::Vanish(Symbol::A11)], &mut rw).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn prefix_rule_and_conjugate() {
        let rule = prefix_rule("DJf=0", Symbol::F, "11", "-i*A11*f");
        let mut rw = Rewriter::default();
        let out = apply_rules(
            &parse("Ab1b1*f_{11} + A11*f_{bb}").unwrap(),
            &[rule],
            &mut rw,
        )
        .unwrap();
        assert_eq!(out, parse("-i*A11*Ab1b1*f + i*A11*Ab1b1*f").unwrap());
        assert!(out.is_zero());
    }

    #[test]
    fn rules_then_canonicalize_terminates() {
        let mut rw = Rewriter::new(100_000);
        let e = parse("R_{b10}*E11 + R_{0b}*Eb1b1_{1}").unwrap();
        let mut x = e;
        for _ in 0..20 {
            let y = apply_rules(
                &canonicalize(&x, &mut rw).unwrap(),
                &[Rule::Bianchi],
                &mut rw,
            )
            .unwrap();
            if y == x {
                break;
            }
            x = y;
        }
        for (m, _) in x.iter() {
            assert!(m
                .factors
                .iter()
                .all(|f| f.symbol != Symbol::R || !f.derivs.contains(&DerivIndex::Zero)));
        }
    }
}
