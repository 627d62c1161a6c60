//! Integration by parts: a single exact step, and equality of integrals
//! modulo divergences.

use cr_bochner::calculus::{equal_mod_ibp, integrate_by_parts, NormalizeOptions};
use cr_bochner::{parse, Result};

pub fn run_example() -> Result<()> {
    let e = parse("INT[Ab1b1_{11}*f*f]")?;
    let (term, factor) = (0, 0);
    let moved = integrate_by_parts(&e, term, factor)?;
    println!("{e}  =  {moved}");

    let a = parse("INT[R*|E11_{1}|^2]")?;
    let b = parse("-INT[R*(E11_{b1} + i*E11_{0} + 2*R*E11)*Eb1b1 + R_{b}*E11_{1}*Eb1b1]")?;
    let out = equal_mod_ibp(&a, &b, &NormalizeOptions::default())?;
    println!(
        "{a}\n  == {b}\n  mod ibp: {} ({} rewrites)",
        out.equal, out.steps
    );
    assert!(out.equal);

    let wrong = b.clone() + parse("INT[R*R*E11*Eb1b1]")?;
    let out = equal_mod_ibp(&a, &wrong, &NormalizeOptions::default())?;
    println!(
        "perturbed: equal = {}, residual {}",
        out.equal, out.residual
    );
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
