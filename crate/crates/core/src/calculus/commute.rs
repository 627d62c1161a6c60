use crate::error::CalculusError;
use crate::expr::Expression;
use crate::scalar::ScalarExact;
use crate::symbol::{word_alpha, DerivIndex, Factor, Symbol};

use super::differentiate_word;

/// Swaps the derivative letters at `position` and `position + 1` of `f`,
/// returning the swapped factor plus the curvature/torsion corrections:
///
/// ```text
/// c_{,1 1̄} - c_{,1̄ 1} = i c_{,0} + α c R
/// c_{,0 1} - c_{,1 0} = c_{,1̄} A_11 - α c A_11,1̄
/// c_{,0 1̄} - c_{,1̄ 0} = c_{,1} A_1̄1̄ + α c A_1̄1̄,1
/// ```
///
/// `c` is the factor truncated before the pair and `α` counts `#1 - #1̄`
/// over its base indices and the derivatives left of the pair. Letters to the
/// right of the pair are applied to every correction term by Leibniz.
pub fn commute_swap(f: &Factor, position: usize) -> Result<Expression, CalculusError> {
    if position + 1 >= f.derivs.len() {
        return Err(CalculusError::PositionOutOfRange {
            factor: f.to_string(),
            position,
        });
    }
    let left = f.derivs[position];
    let right = f.derivs[position + 1];
    let mut swapped = f.clone();
    swapped.derivs.swap(position, position + 1);
    let mut out = Expression::from_factor(swapped);
    if left == right {
        return Ok(out);
    }

    let prefix = Factor {
        symbol: f.symbol,
        tag: f.tag,
        derivs: f.derivs[..position].to_vec(),
    };
    let rest = &f.derivs[position + 2..];
    let alpha = ScalarExact::from_int(f.symbol.base_alpha() + word_alpha(&prefix.derivs));

    use DerivIndex::*;
    // Corrections for the ordered pair (a, b) with a "before" b in the
    // relation as printed; `sign` flips when the requested swap is reversed.
    let (pair, sign) = match (left, right) {
        (One, Bar) => ((One, Bar), 1),
        (Bar, One) => ((One, Bar), -1),
        (Zero, One) => ((Zero, One), 1),
        (One, Zero) => ((Zero, One), -1),
        (Zero, Bar) => ((Zero, Bar), 1),
        (Bar, Zero) => ((Zero, Bar), -1),
        _ => unreachable!("equal letters handled above"),
    };
    let p = |d: Option<DerivIndex>| {
        let mut g = prefix.clone();
        if let Some(d) = d {
            g.derivs.push(d);
        }
        g
    };
    let mut corr = Expression::zero();
    match pair {
        (One, Bar) => {
            corr.add_scaled(&Expression::from_factor(p(Some(Zero))), &ScalarExact::i());
            corr.add_scaled(
                &Expression::from_factors(vec![p(None), Factor::bare(Symbol::R)]),
                &alpha,
            );
        }
        (Zero, One) => {
            corr.add_scaled(
                &Expression::from_factors(vec![p(Some(Bar)), Factor::bare(Symbol::A11)]),
                &ScalarExact::one(),
            );
            corr.add_scaled(
                &Expression::from_factors(vec![p(None), Factor::new(Symbol::A11, vec![Bar])]),
                &-alpha.clone(),
            );
        }
        (Zero, Bar) => {
            corr.add_scaled(
                &Expression::from_factors(vec![p(Some(One)), Factor::bare(Symbol::Ab1b1)]),
                &ScalarExact::one(),
            );
            corr.add_scaled(
                &Expression::from_factors(vec![p(None), Factor::new(Symbol::Ab1b1, vec![One])]),
                &alpha,
            );
        }
        _ => unreachable!(),
    }
    let corr = differentiate_word(&corr, rest).expect("corrections are not integrated");
    // swap(left,right): c_{left right} = c_{right left} + sign * corr
    out.add_scaled(&corr, &ScalarExact::from_int(sign));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::symbol::parse_word;

    fn fac(s: Symbol, w: &str) -> Factor {
        Factor::new(s, parse_word(w).unwrap())
    }

    #[test]
    fn function_horizontal_pair() {
        let r = commute_swap(&fac(Symbol::F, "1b"), 0).unwrap();
        assert_eq!(r, parse("f_{b1} + i*f_{0}").unwrap());
    }

    #[test]
    fn function_zero_one_pair() {
        let r = commute_swap(&fac(Symbol::F, "01"), 0).unwrap();
        assert_eq!(r, parse("f_{10} + f_{b}*A11").unwrap());
    }

    #[test]
    fn function_zero_bar_pair() {
        let r = commute_swap(&fac(Symbol::F, "0b"), 0).unwrap();
        assert_eq!(r, parse("f_{b0} + f_{1}*Ab1b1").unwrap());
    }

    #[test]
    fn torsion_pair_counts_base_indices() {
        // A11 carries α = 2 from its base indices.
        let r = commute_swap(&fac(Symbol::A11, "1b"), 0).unwrap();
        assert_eq!(r, parse("A11_{b1} + i*A11_{0} + 2*A11*R").unwrap());
    }

    #[test]
    fn alpha_counts_letters_left_of_pair() {
        // E11_{1 | 1 b}: α = 2 + 1 = 3 at the swap site
        let r = commute_swap(&fac(Symbol::E11, "11b"), 1).unwrap();
        assert_eq!(r, parse("E11_{1b1} + i*E11_{10} + 3*E11_{1}*R").unwrap());
    }

    #[test]
    fn trailing_letters_distribute() {
        let r = commute_swap(&fac(Symbol::F, "011"), 0).unwrap();
        assert_eq!(r, parse("f_{101} + (f_{b}*A11)_{1}").unwrap());
    }

    #[test]
    fn reversed_pair_is_inverse() {
        let fwd = commute_swap(&fac(Symbol::A11, "0b"), 0).unwrap();
        let back = commute_swap(&fac(Symbol::A11, "b0"), 0).unwrap();
        // c_{0b} = c_{b0} + X and c_{b0} = c_{0b} - X
        let x = fwd.clone() - parse("A11_{b0}").unwrap();
        assert_eq!(back, parse("A11_{0b}").unwrap() - x);
    }

    #[test]
    fn out_of_range() {
        assert!(commute_swap(&fac(Symbol::F, "1"), 0).is_err());
        assert!(commute_swap(&fac(Symbol::F, "1b"), 1).is_err());
    }

    #[test]
    fn corrections_preserve_weight() {
        for w in ["1b", "b1", "01", "10", "0b", "b0", "1b01", "b10b"] {
            let f = fac(Symbol::E11, w);
            for pos in 0..f.derivs.len() - 1 {
                let r = commute_swap(&f, pos).unwrap();
                for t in r.terms() {
                    assert_eq!(t.weight(), f.weight(), "{w} at {pos}: {}", t);
                    assert_eq!(t.alpha(), f.alpha());
                }
            }
        }
    }
}
