use cr_bochner::calculus::{
    adjoint, canonicalize, canonicalize_with, equal_canonical, equal_mod_ibp, integrate_by_parts,
    normal_form, Domain, NormalizeOptions, Rewriter, Rule,
};
use cr_bochner::rigidity::{
    parse_points, random_point, scale_check, HermitianForm, PointData, DEFAULT_EPS,
};
use cr_bochner::symbol::ALL_SYMBOLS;
use cr_bochner::{parse, DerivIndex, Expression, Factor, ScalarExact, Symbol, Term};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = ScalarExact> {
    (
        -6i64..=6,
        1i64..=5,
        -6i64..=6,
        1i64..=5,
        -3i64..=3,
        -3i64..=3,
    )
        .prop_map(|(a, da, b, db, c, d)| {
            ScalarExact::from_frac(a, da)
                + ScalarExact::from_frac(b, db) * ScalarExact::i()
                + ScalarExact::from_int(c) * ScalarExact::sqrt3()
                + ScalarExact::from_int(d) * ScalarExact::i() * ScalarExact::sqrt3()
        })
}

fn word(max: usize) -> impl Strategy<Value = Vec<DerivIndex>> {
    prop::collection::vec(
        prop::sample::select(vec![DerivIndex::One, DerivIndex::Bar, DerivIndex::Zero]),
        0..=max,
    )
}

fn factor(max: usize) -> impl Strategy<Value = Factor> {
    (prop::sample::select(ALL_SYMBOLS.to_vec()), word(max)).prop_map(|(s, w)| Factor::new(s, w))
}

fn expression(integrated: bool) -> impl Strategy<Value = Expression> {
    prop::collection::vec((scalar(), prop::collection::vec(factor(3), 1..=2)), 1..=3).prop_map(
        move |terms| {
            let mut e = Expression::zero();
            for (c, fs) in terms {
                e.add_term(Term::new(c, fs, integrated));
            }
            e
        },
    )
}

/// Appends letters to the last factor until the product is fully contracted.
fn balance(mut fs: Vec<Factor>) -> Vec<Factor> {
    let alpha: i64 = fs.iter().map(Factor::alpha).sum();
    let fix = if alpha > 0 {
        DerivIndex::Bar
    } else {
        DerivIndex::One
    };
    let last = fs.last_mut().unwrap();
    last.derivs
        .extend(std::iter::repeat_n(fix, alpha.unsigned_abs() as usize));
    fs
}

fn canon(e: &Expression) -> Expression {
    canonicalize(e, &mut Rewriter::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn scalar_field_axioms(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x * &(y.clone() + z.clone()), &x * &y + &x * &z);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        if let Some(inv) = x.inv() {
            prop_assert!((&x * &inv).is_one());
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn display_parse_round_trip(e in expression(false)) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn conjugation_is_an_involution(e in expression(true)) {
        prop_assert_eq!(e.conjugate().conjugate(), e.clone());
        prop_assert!(e.two_re().is_self_conjugate());
    }

    #[test]
    fn canonicalization_is_idempotent(e in expression(false)) {
        let once = canon(&e);
        prop_assert_eq!(canon(&once), once);
    }

    #[test]
    fn canonicalization_is_confluent(e in expression(false), picks in prop::collection::vec(0usize..8, 64)) {
        let mut k = 0;
        let mut choose = |n: usize| {
            k += 1;
            picks[k % picks.len()] % n
        };
        // the commutation relations are consistent only modulo the Bianchi identity
        let other = canonicalize_with(&e, &mut Rewriter::default(), &mut choose).unwrap();
        let gap = normal_form(&(other - canon(&e)), &[Rule::Bianchi], &mut Rewriter::default()).unwrap();
        prop_assert!(gap.is_zero(), "gap {}", gap);
    }

    #[test]
    fn canonicalization_preserves_weight_and_alpha(f in factor(4)) {
        let e = Expression::from_factor(f.clone());
        let w = Term::new(ScalarExact::one(), vec![f.clone()], false);
        for (m, _) in canon(&e).iter() {
            prop_assert_eq!(m.alpha(), w.alpha());
            prop_assert!(m.weight() <= w.weight());
        }
    }

    #[test]
    fn ibp_preserves_the_class(coeff in factor(2), field in prop::sample::select(vec![Symbol::F, Symbol::E11, Symbol::Eb1b1]), w in word(2)) {
        // a free field keeps the pivot off the coefficients, where the Bianchi
        // rule could feed it back indefinitely
        let fs = balance(vec![coeff, Factor::new(field, w)]);
        prop_assume!(fs.iter().map(|f| f.derivs.len()).sum::<usize>() <= 5);
        let e = Term::new(ScalarExact::one(), fs, true).to_expression();
        let (m, _) = e.iter().next().unwrap();
        let opts = NormalizeOptions::with_rules(vec![Rule::Bianchi]).limit(100_000);
        for (k, f) in m.factors.iter().enumerate() {
            if matches!(f.derivs.last(), Some(DerivIndex::One | DerivIndex::Bar)) {
                let moved = integrate_by_parts(&e, 0, k).unwrap();
                let out = equal_mod_ibp(&e, &moved, &opts).unwrap();
                prop_assert!(out.equal, "residual {}", out.residual);
            }
        }
    }

    #[test]
    fn uncontracted_integrands_are_rejected(fs in prop::collection::vec(factor(2), 2..=3)) {
        let e = Term::new(ScalarExact::one(), fs, true).to_expression();
        let (m, _) = e.iter().next().unwrap();
        prop_assume!(m.alpha() != 0);
        if let Some(k) = m.factors.iter().position(|f| matches!(f.derivs.last(), Some(DerivIndex::One | DerivIndex::Bar))) {
            prop_assert!(integrate_by_parts(&e, 0, k).is_err());
        }
    }

    #[test]
    fn adjoint_is_an_involution(coeffs in prop::collection::vec((scalar(), word(1), word(2)), 1..=3)) {
        let mut body = Expression::zero();
        for (c, cw, fw) in coeffs {
            let fs = balance(vec![Factor::new(Symbol::R, cw), Factor::new(Symbol::F, fw)]);
            body.add_term(Term::new(c, fs, false));
        }
        let d = Domain::RealFunction;
        let twice = adjoint(&adjoint(&body, d, d).unwrap(), d, d).unwrap();
        let out = equal_canonical(&twice, &body, &NormalizeOptions::with_rules(vec![Rule::Bianchi])).unwrap();
        prop_assert!(out.equal, "residual {}", out.residual);
    }

    #[test]
    fn sylvester_agrees_with_eigenvalues(diag in prop::collection::vec(-4.0f64..6.0, 4), off in prop::collection::vec((-1.5f64..1.5, -1.5f64..1.5), 6)) {
        let mut it = off.iter();
        let mut upper = vec![vec![Complex64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            upper[i][i] = Complex64::new(diag[i], 0.0);
            for cell in upper[i].iter_mut().skip(i + 1) {
                let (re, im) = it.next().unwrap();
                *cell = Complex64::new(*re, *im);
            }
        }
        let form = HermitianForm::from_upper(4, |i, j| upper[i][j]).unwrap();
        let m = DMatrix::from_fn(4, 4, |i, j| form.get(i, j));
        let eig = m.symmetric_eigenvalues();
        let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assume!(min.abs() > 1e-6);
        prop_assert_eq!(form.is_positive_definite().0, min > 0.0);
    }

    #[test]
    fn condition_values_scale_homogeneously(seed in any::<u64>(), k in 0.05f64..50.0) {
        let p = random_point(&mut ChaCha8Rng::seed_from_u64(seed));
        let c = scale_check(&p, k, DEFAULT_EPS);
        prop_assert!(c.max_rel_err < 1e-10, "{:?}", c.values);
    }

    #[test]
    fn point_json_round_trip(seed in any::<u64>()) {
        let p = random_point(&mut ChaCha8Rng::seed_from_u64(seed)).with_id("p");
        let text = serde_json::to_string(&vec![p.clone()]).unwrap();
        let back: Vec<PointData> = parse_points(&text).unwrap();
        prop_assert_eq!(&back[0], &p, "{}", text);
    }
}
