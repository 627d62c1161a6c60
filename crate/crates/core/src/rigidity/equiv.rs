use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::scalar::ScalarExact;

use super::conditions::{block_condition, full_condition};
use super::forms::{det_exact, full_form, reduced_form, ExactPoint};
use super::point::PointData;

/// Relative half-width of the band around a decision boundary inside which
/// floating verdicts are not compared.
pub const DEFAULT_BAND: f64 = 1e-9;

/// `det(full form) = KAPPA * full condition`.
pub const KAPPA: f64 = 1.0 / 9.0;

/// Only points whose full condition is at least this far from zero
/// (relative) enter the floating `κ` estimate.
const KAPPA_MIN_RELATIVE: f64 = 1e-3;

/// Exact checks are limited to this many leading points per battery.
const EXACT_BLOCK_POINTS: usize = 1_000;
const EXACT_KAPPA_POINTS: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceCheck {
    /// Sylvester verdict on the form.
    pub form_pd: bool,
    /// Verdict from the scalar conditions.
    pub condition: bool,
    pub agree: bool,
    /// Within the band around the boundary; disagreement there is not counted.
    pub in_band: bool,
    pub minors: Vec<f64>,
    /// Exact determinant identity for this point: the torsion block for the
    /// reduced form, `det = κ · condition` for the full form (when computed).
    pub exact: Option<bool>,
    /// Floating `det / condition` when the condition is well away from zero.
    pub kappa: Option<f64>,
}

impl EquivalenceCheck {
    pub fn mismatch(&self) -> bool {
        !self.agree && !self.in_band
    }
}

fn reduced_in_band(p: &PointData, band: f64) -> bool {
    p.r == 0.0 || block_condition(p).relative() < band
}

/// Reduced form positive definite iff `R > 0` and the block condition holds;
/// the torsion-block determinant is compared with `1/9` of the block
/// condition in exact arithmetic.
pub fn check_reduced_equivalence(p: &PointData, band: f64, exact: bool) -> EquivalenceCheck {
    let (form_pd, minors) = reduced_form(p).is_positive_definite();
    let condition = p.r > 0.0 && block_condition(p).value > 0.0;
    let exact = exact.then(|| {
        let e = ExactPoint::new(p);
        det_exact(e.torsion_block()) == e.block_condition() * ScalarExact::from_frac(1, 9)
    });
    EquivalenceCheck {
        form_pd,
        condition,
        agree: form_pd == condition,
        in_band: reduced_in_band(p, band),
        minors,
        exact,
        kappa: None,
    }
}

/// Full form positive definite iff the reduced form is and the full
/// condition holds. With `exact`, also checks `det = κ · condition` over
/// `Q(i, √3)`.
pub fn check_full_equivalence(p: &PointData, band: f64, exact: bool) -> EquivalenceCheck {
    let (form_pd, minors) = full_form(p).is_positive_definite();
    let full = full_condition(p);
    let reduced_ok = p.r > 0.0 && block_condition(p).value > 0.0;
    let condition = reduced_ok && full.value > 0.0;
    let kappa = (full.relative() > KAPPA_MIN_RELATIVE).then(|| minors[4] / full.value);
    let exact = exact.then(|| {
        let e = ExactPoint::new(p);
        det_exact(e.form(5)) == e.full_condition() * ScalarExact::from_frac(1, 9)
    });
    EquivalenceCheck {
        form_pd,
        condition,
        agree: form_pd == condition,
        in_band: reduced_in_band(p, band) || full.relative() < band,
        minors,
        exact,
        kappa,
    }
}

/// A complex number of magnitude at most `unit * spread * √2`.
/// The torsion-block determinant minus `1/9` of the block condition is a
/// polynomial of degree at most 2 in each of `R`, `|A_11,1|^{2/3}`,
/// `Re A_11`, `Im A_11`. Vanishing on a `3^4` grid of rational points
/// therefore proves the identity for all inputs.
pub fn block_identity_proof() -> bool {
    let grid = [-1.5, 0.25, 2.0];
    for r in grid {
        for s in grid {
            for ar in grid {
                for ai in grid {
                    let mut p = PointData::constant_curvature(r);
                    p.a11 = Complex64::new(ar, ai);
                    let mut e = ExactPoint::new(&p);
                    e.s = ScalarExact::from_rational(
                        num_rational::BigRational::from_float(s).expect("finite"),
                    );
                    if det_exact(e.torsion_block())
                        != e.block_condition() * ScalarExact::from_frac(1, 9)
                    {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn complex(rng: &mut ChaCha8Rng, unit: f64, spread: f64) -> Complex64 {
    let mag = unit * rng.random_range(0.0..spread);
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * mag
}

/// A random point whose torsion is comparable to its curvature, so that all
/// verdict combinations occur. `R_{,0}` is set from the Bianchi identity.
pub fn random_point(rng: &mut ChaCha8Rng) -> PointData {
    let r: f64 = rng.random_range(-2.0..2.0);
    let size = r.abs().max(0.05);
    let a11 = complex(rng, size, 0.15);
    let a11_1 = complex(rng, size.powf(1.5), 0.1);
    let a11_b = complex(rng, size.powf(1.5), 0.5);
    let a11_bb = complex(rng, size * size, 0.05);
    let r1 = complex(rng, size.powf(1.5), 1.0);
    let lap_r = size * size * rng.random_range(-0.5..0.5);
    PointData {
        id: String::new(),
        r,
        r0: 2.0 * a11_bb.re,
        r1,
        lap_r,
        a11,
        a11_1,
        a11_b,
        a11_bb,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub samples: usize,
    pub seed: u64,
    pub band: f64,
    pub reduced_pd: usize,
    pub full_pd: usize,
    pub reduced_mismatches: usize,
    pub full_mismatches: usize,
    pub reduced_in_band: usize,
    pub full_in_band: usize,
    pub exact_block_checked: usize,
    pub exact_block_failures: usize,
    pub exact_kappa_checked: usize,
    pub exact_kappa_failures: usize,
    pub kappa_samples: usize,
    pub kappa_mean: f64,
    /// `(max - min) / |mean|` of the floating `κ` estimates.
    pub kappa_spread: f64,
    pub counterexample: Option<PointData>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.reduced_mismatches == 0
            && self.full_mismatches == 0
            && self.exact_block_failures == 0
            && self.exact_kappa_failures == 0
    }
}

/// Seeded battery over random points for both equivalences.
pub fn equivalence_battery(samples: usize, seed: u64, band: f64) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = BatteryReport {
        samples,
        seed,
        band,
        reduced_pd: 0,
        full_pd: 0,
        reduced_mismatches: 0,
        full_mismatches: 0,
        reduced_in_band: 0,
        full_in_band: 0,
        exact_block_checked: 0,
        exact_block_failures: 0,
        exact_kappa_checked: 0,
        exact_kappa_failures: 0,
        kappa_samples: 0,
        kappa_mean: f64::NAN,
        kappa_spread: f64::NAN,
        counterexample: None,
    };
    let (mut kmin, mut kmax, mut ksum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for k in 0..samples {
        let p = random_point(&mut rng).with_id(&format!("sample-{k}"));
        let red = check_reduced_equivalence(&p, band, k < EXACT_BLOCK_POINTS);
        let full = check_full_equivalence(&p, band, k < EXACT_KAPPA_POINTS);
        rep.reduced_pd += red.form_pd as usize;
        rep.full_pd += full.form_pd as usize;
        rep.reduced_in_band += red.in_band as usize;
        rep.full_in_band += full.in_band as usize;
        let mut bad = false;
        if red.mismatch() {
            rep.reduced_mismatches += 1;
            bad = true;
        }
        if full.mismatch() {
            rep.full_mismatches += 1;
            bad = true;
        }
        if let Some(ok) = red.exact {
            rep.exact_block_checked += 1;
            if !ok {
                rep.exact_block_failures += 1;
                bad = true;
            }
        }
        if let Some(ok) = full.exact {
            rep.exact_kappa_checked += 1;
            if !ok {
                rep.exact_kappa_failures += 1;
                bad = true;
            }
        }
        if let Some(kappa) = full.kappa {
            rep.kappa_samples += 1;
            ksum += kappa;
            kmin = kmin.min(kappa);
            kmax = kmax.max(kappa);
        }
        if bad && rep.counterexample.is_none() {
            rep.counterexample = Some(p);
        }
    }
    if rep.kappa_samples > 0 {
        rep.kappa_mean = ksum / rep.kappa_samples as f64;
        rep.kappa_spread = (kmax - kmin) / rep.kappa_mean.abs();
    }
    rep
}
