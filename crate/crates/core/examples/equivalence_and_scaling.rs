//! The determinant equivalences on random points and the scaling laws under
//! a constant change of contact form.

use cr_bochner::rigidity::{
    equivalence_battery, scale_check, PointData, DEFAULT_BAND, DEFAULT_EPS, DEFAULT_SCALES,
};
use cr_bochner::Result;
use num_complex::Complex64;

pub fn run_example() -> Result<()> {
    let rep = equivalence_battery(5_000, 1, DEFAULT_BAND);
    println!(
        "{} samples: {} + {} mismatches, kappa = {:.12} (spread {:.1e})",
        rep.samples, rep.reduced_mismatches, rep.full_mismatches, rep.kappa_mean, rep.kappa_spread
    );

    let mut p = PointData::constant_curvature(1.5).with_id("p");
    p.a11 = Complex64::new(0.03, 0.01);
    p.a11_bb = Complex64::new(0.0, -0.2);
    for k in DEFAULT_SCALES {
        let c = scale_check(&p, k, DEFAULT_EPS);
        println!(
            "k = {k:.4}: max relative error {:.1e}, verdicts invariant {}",
            c.max_rel_err, c.verdicts_invariant
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
