//! Arithmetic in Q(i, √3), the coefficient field of every identity.

use cr_bochner::{Result, ScalarExact};

pub fn run_example() -> Result<()> {
    let s3 = ScalarExact::sqrt3();
    let i = ScalarExact::i();
    let alpha = i.clone() * s3.clone();
    println!("alpha = {alpha}, alpha^2 = {}", alpha.pow(2));

    // (1 + i√3)/2 is a primitive sixth root of unity
    let zeta = (ScalarExact::one() + alpha) * ScalarExact::from_frac(1, 2);
    println!("zeta = {zeta}, zeta^6 = {}", zeta.pow(6));
    assert!(zeta.pow(6).is_one());

    let x = ScalarExact::from_frac(2, 3) + s3 * ScalarExact::from_frac(-1, 4);
    let inv = x.inv().expect("nonzero");
    println!("1/({x}) = {inv}");
    assert!((x * inv).is_one());
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
