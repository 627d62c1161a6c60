use serde::Serialize;

use super::conditions::{
    block_condition, full_condition, negative_curvature_test, negative_curvature_value,
    positive_curvature_test, torsion_free_value, Valued,
};
use super::point::PointData;

pub const DEFAULT_SCALES: [f64; 4] = [1.0 / 7.0, 0.5, 3.0, 100.0];

#[derive(Clone, Debug, Serialize)]
pub struct ScaledValue {
    pub name: &'static str,
    /// The value scales by `k^power`.
    pub power: f64,
    pub base: f64,
    pub scaled: f64,
    /// `|scaled - k^power base|` relative to the scaled term magnitudes.
    pub rel_err: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScaleCheck {
    pub id: String,
    pub k: f64,
    pub values: Vec<ScaledValue>,
    pub verdicts: Vec<(&'static str, bool)>,
    pub verdicts_invariant: bool,
    pub max_rel_err: f64,
}

impl ScaleCheck {
    pub fn passed(&self, tol: f64) -> bool {
        self.verdicts_invariant && self.max_rel_err < tol
    }
}

fn verdicts(p: &PointData, eps: f64) -> Vec<(&'static str, bool)> {
    let na = negative_curvature_test(p, eps);
    let tf = torsion_free_value(p);
    vec![
        ("thm-a", na.strict),
        ("thm-a-borderline", na.borderline),
        ("3.11", p.r > 0.0 && block_condition(p).positive(eps)),
        ("3.12", full_condition(p).positive(eps)),
        ("thm-b", positive_curvature_test(p, eps)),
        (
            "corollaryC",
            p.is_torsion_free() && p.r > 0.0 && tf.positive(eps),
        ),
    ]
}

/// Condition name, scaling exponent and evaluator.
type ScalingLaw = (&'static str, f64, fn(&PointData) -> Valued);

/// Compares every condition at `p` and at `p.scale(k)`.
pub fn scale_check(p: &PointData, k: f64, eps: f64) -> ScaleCheck {
    let q = p.scale(k);
    let table: [ScalingLaw; 4] = [
        ("thm-a", -2.0, negative_curvature_value),
        ("3.11", -2.0, block_condition),
        ("corollaryC", -3.0, torsion_free_value),
        ("3.12", -4.0, full_condition),
    ];
    let values: Vec<ScaledValue> = table
        .iter()
        .map(|&(name, power, f)| {
            let (a, b) = (f(p), f(&q));
            let kp = k.powf(power);
            let denom = b.scale.max(kp * a.scale);
            let rel_err = if denom == 0.0 {
                0.0
            } else {
                (b.value - kp * a.value).abs() / denom
            };
            ScaledValue {
                name,
                power,
                base: a.value,
                scaled: b.value,
                rel_err,
            }
        })
        .collect();
    let before = verdicts(p, eps);
    let after = verdicts(&q, eps);
    ScaleCheck {
        id: p.id.clone(),
        k,
        max_rel_err: values.iter().map(|v| v.rel_err).fold(0.0, f64::max),
        verdicts_invariant: before == after,
        values,
        verdicts: before,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::DEFAULT_EPS;
    use num_complex::Complex64;

    #[test]
    fn block_condition_scales_by_inverse_square() {
        let mut p = PointData::constant_curvature(2.0);
        p.a11 = Complex64::new(0.1, 0.05);
        p.a11_1 = Complex64::new(0.02, 0.0);
        let c = scale_check(&p, 4.0, DEFAULT_EPS);
        let v = &c.values[1];
        assert!((v.scaled - v.base / 16.0).abs() < 1e-15);
        assert!(c.passed(1e-12));
    }

    #[test]
    fn unit_scale_is_exact() {
        let p = PointData::constant_curvature(-0.5);
        let c = scale_check(&p, 1.0, DEFAULT_EPS);
        assert_eq!(c.max_rel_err, 0.0);
        assert!(c.verdicts_invariant);
    }
}
