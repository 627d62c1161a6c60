use serde::Serialize;

use crate::error::{Error, Result};

use super::point::PointData;

/// Default relative tolerance for `> 0` versus `= 0` decisions.
pub const DEFAULT_EPS: f64 = 1e-12;

/// A condition value together with the sum of the magnitudes of its terms,
/// which sets the scale for tolerance decisions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Valued {
    pub value: f64,
    pub scale: f64,
}

impl Valued {
    pub fn positive(&self, eps: f64) -> bool {
        self.value > eps * self.scale
    }

    pub fn near_zero(&self, eps: f64) -> bool {
        self.value.abs() <= eps * self.scale
    }

    /// `|value| / scale`, or `0` for an all-zero expression.
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            0.0
        } else {
            self.value.abs() / self.scale
        }
    }
}

/// Negative-curvature rigidity test: `√3 R_{,0} - 2Im(A_11,1̄1̄)` with `R < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NegativeCurvature {
    pub value: f64,
    /// `R < 0` and value `> 0`.
    pub strict: bool,
    /// `R < 0` and value within tolerance of `0`.
    pub borderline: bool,
}

pub fn negative_curvature_value(p: &PointData) -> Valued {
    let s3 = 3f64.sqrt();
    Valued {
        value: s3 * p.r0 - 2.0 * p.a11_bb.im,
        scale: s3 * p.r0.abs() + 2.0 * p.a11_bb.im.abs(),
    }
}

pub fn negative_curvature_test(p: &PointData, eps: f64) -> NegativeCurvature {
    let v = negative_curvature_value(p);
    let neg = p.r < 0.0;
    NegativeCurvature {
        value: v.value,
        strict: neg && v.positive(eps),
        borderline: neg && v.near_zero(eps),
    }
}

/// `(3/8)R² - 2R|A_11,1|^{2/3} - 25|A_11|²`.
pub fn block_condition(p: &PointData) -> Valued {
    let s = p.a1_two_thirds();
    let a2 = p.a11.norm_sqr();
    Valued {
        value: 0.375 * p.r * p.r - 2.0 * p.r * s - 25.0 * a2,
        scale: 0.375 * p.r * p.r + 2.0 * p.r.abs() * s + 25.0 * a2,
    }
}

/// The bracketed factor multiplying the block condition in the full
/// condition, and its magnitude.
fn full_bracket(p: &PointData) -> Valued {
    let s = p.a1_two_thirds();
    let a2 = p.a11.norm_sqr();
    let terms = [
        83.0 / 3456.0 * p.r * p.r,
        55.0 / 1152.0 * p.lap_r,
        1.25 * a2,
        -5.0 / 36.0 * s * s,
        -10.0 / 9.0 * p.a11_bb.im,
    ];
    Valued {
        value: terms.iter().sum(),
        scale: terms.iter().map(|t| t.abs()).sum(),
    }
}

/// `|(5/48)R_{,1̄} - 2iA_1̄1̄,1|²`.
pub(crate) fn cross_modulus_sq(p: &PointData) -> f64 {
    (p.r1.conj() * (5.0 / 48.0) - num_complex::Complex64::i() * 2.0 * p.a11_b.conj()).norm_sqr()
}

/// Block condition times the bracket, minus `(15/8)(R/8 - (2/3)|A_11,1|^{2/3})`
/// times the cross modulus.
pub fn full_condition(p: &PointData) -> Valued {
    let c = block_condition(p);
    let b = full_bracket(p);
    let s = p.a1_two_thirds();
    let w = cross_modulus_sq(p);
    let tail = 15.0 / 8.0 * (p.r / 8.0 - 2.0 / 3.0 * s) * w;
    Valued {
        value: c.value * b.value - tail,
        scale: c.scale * b.scale + 15.0 / 8.0 * (p.r.abs() / 8.0 + 2.0 / 3.0 * s) * w,
    }
}

/// `4R(5R² + 3Δ_b R) - 3|∇_b R|²` without the torsion precondition.
pub fn torsion_free_value(p: &PointData) -> Valued {
    let g = 3.0 * p.subgradient_sq();
    Valued {
        value: 4.0 * p.r * (5.0 * p.r * p.r + 3.0 * p.lap_r) - g,
        scale: 4.0 * p.r.abs() * (5.0 * p.r * p.r + 3.0 * p.lap_r.abs()) + g,
    }
}

/// Torsion-free rigidity test. Fails with a precondition error when the
/// point carries torsion.
pub fn torsion_free_test(p: &PointData, eps: f64) -> Result<(f64, bool)> {
    if !p.is_torsion_free() {
        return Err(Error::Precondition(format!(
            "point '{}' has nonzero torsion",
            p.id
        )));
    }
    let v = torsion_free_value(p);
    Ok((v.value, p.r > 0.0 && v.positive(eps)))
}

/// `R > 0` with both block and full conditions positive.
pub fn positive_curvature_test(p: &PointData, eps: f64) -> bool {
    p.r > 0.0 && block_condition(p).positive(eps) && full_condition(p).positive(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-14 * b.abs().max(1.0)
    }

    #[test]
    fn negative_curvature_examples() {
        let mut p = PointData::constant_curvature(-1.0);
        let t = negative_curvature_test(&p, DEFAULT_EPS);
        assert!(t.borderline && !t.strict);
        p.r0 = 1.0;
        let t = negative_curvature_test(&p, DEFAULT_EPS);
        assert!(close(t.value, 3f64.sqrt()) && t.strict);
        p.r = 1.0;
        let t = negative_curvature_test(&p, DEFAULT_EPS);
        assert!(!t.strict && !t.borderline);
    }

    #[test]
    fn block_condition_examples() {
        assert!(close(
            block_condition(&PointData::constant_curvature(1.0)).value,
            0.375
        ));
        let mut p = PointData::constant_curvature(2.0);
        p.a11 = Complex64::new(0.1, 0.0);
        assert!(close(block_condition(&p).value, 1.25));
    }

    #[test]
    fn full_condition_torsion_free() {
        let v = full_condition(&PointData::constant_curvature(1.0)).value;
        assert!(close(v, 83.0 / 9216.0));
    }

    #[test]
    fn torsion_free_examples() {
        let (v, ok) = torsion_free_test(&PointData::constant_curvature(1.0), DEFAULT_EPS).unwrap();
        assert!(close(v, 20.0) && ok);
        let mut p = PointData::constant_curvature(1.0);
        p.r1 = Complex64::new(10f64.sqrt(), 0.0);
        let (v, ok) = torsion_free_test(&p, DEFAULT_EPS).unwrap();
        assert!(v < 0.0 && !ok);
        p.a11 = Complex64::new(0.0, 1e-3);
        assert!(torsion_free_test(&p, DEFAULT_EPS).is_err());
    }
}
