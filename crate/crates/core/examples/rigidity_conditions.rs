//! Pointwise rigidity conditions and the Hermitian forms behind them.

use cr_bochner::rigidity::{
    block_condition, evaluate, full_condition, full_form, reduced_form, Condition, PointData,
    DEFAULT_EPS,
};
use cr_bochner::Result;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let sphere = PointData::constant_curvature(1.0).with_id("sphere");
    let r = evaluate(
        &sphere,
        &[Condition::TorsionFree, Condition::PositiveCurvature],
        DEFAULT_EPS,
    )?;
    println!("{}: values {:?}, passed {}", r.id, r.values, r.passed);

    let mut p = PointData::constant_curvature(2.0).with_id("torsion");
    p.a11 = Complex64::new(0.05, 0.02);
    p.a11_1 = Complex64::new(0.01, -0.03);
    p.a11_b = Complex64::new(0.2, 0.0);
    p.r1 = Complex64::new(0.1, 0.3);
    println!(
        "block condition {:.6}, full condition {:.6e}",
        block_condition(&p).value,
        full_condition(&p).value
    );
    let (pd4, m4) = reduced_form(&p).is_positive_definite();
    let (pd5, m5) = full_form(&p).is_positive_definite();
    println!("reduced form: {pd4} {m4:?}\nfull form: {pd5} {m5:?}");
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
