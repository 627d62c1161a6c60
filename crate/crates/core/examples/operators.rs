//! The differential operators and their formal adjoints.

use cr_bochner::operators::{build_dj, build_dj_star, build_l_alpha, lookup, OPERATOR_NAMES};
use cr_bochner::{parse, Result, ScalarExact};

pub fn run_example() -> Result<()> {
    for name in OPERATOR_NAMES {
        match lookup(name) {
            Ok(op) => println!("{op}"),
            Err(e) => println!("{name}: {e}"),
        }
    }

    let dj = build_dj();
    let back = dj.adjoint()?.adjoint()?;
    println!("D_J** == D_J: {}", back.body == dj.body);

    let square = build_dj_star().compose(&dj)?;
    println!("D_J* D_J f = {}", square.body);

    let l = build_l_alpha(&(ScalarExact::i() * ScalarExact::sqrt3()));
    println!("L f = {}", l.apply(&parse("f")?)?);
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
