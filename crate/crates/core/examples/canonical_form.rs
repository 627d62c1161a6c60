//! Parsing tensor expressions and sorting derivative strings with the
//! commutation relations.

use cr_bochner::calculus::{canonicalize, commute_swap, Rewriter};
use cr_bochner::{parse, Factor, Result, Symbol};

pub fn run_example() -> Result<()> {
    let e = parse("f_{b1} + A11_{b1}*Eb1b1 + 1/3*(R*E11)_{1}")?;
    println!("input:     {e}");
    let mut rw = Rewriter::default();
    let c = canonicalize(&e, &mut rw)?;
    println!("canonical: {c}  ({} rewrites)", rw.steps);

    let f = Factor::new(
        Symbol::E11,
        cr_bochner::symbol::parse_word("1b").expect("word"),
    );
    println!("{f} = {}", commute_swap(&f, 0)?);

    let sq = parse("|E11_{1}|^2")?;
    println!("|E11_1|^2 = {sq}, real: {}", sq.is_self_conjugate());
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
