use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

use super::conditions::{
    block_condition, full_condition, negative_curvature_test, positive_curvature_test,
    torsion_free_test,
};
use super::forms::{full_form, reduced_form};
use super::point::PointData;

/// Conditions selectable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// Negative curvature, strict or borderline.
    NegativeCurvature,
    /// `R > 0` with the block and full conditions.
    PositiveCurvature,
    /// Torsion-free positive curvature.
    TorsionFree,
    Block,
    Full,
    Bianchi,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::NegativeCurvature,
        Condition::PositiveCurvature,
        Condition::TorsionFree,
        Condition::Block,
        Condition::Full,
        Condition::Bianchi,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Condition::NegativeCurvature => "thm-a",
            Condition::PositiveCurvature => "thm-b",
            Condition::TorsionFree => "corollaryC",
            Condition::Block => "3.11",
            Condition::Full => "3.12",
            Condition::Bianchi => "bianchi",
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        Condition::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown condition '{s}'")))
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub id: String,
    pub values: BTreeMap<String, f64>,
    pub verdicts: BTreeMap<String, bool>,
    pub minors_reduced: Vec<f64>,
    pub minors_full: Vec<f64>,
    pub bianchi_defect: f64,
    /// Every requested condition holds.
    pub passed: bool,
}

/// Evaluates the requested conditions at one point.
pub fn evaluate(p: &PointData, conds: &[Condition], eps: f64) -> Result<ConditionReport> {
    let mut values = BTreeMap::new();
    let mut verdicts = BTreeMap::new();
    for &c in conds {
        let ok = match c {
            Condition::NegativeCurvature => {
                let t = negative_curvature_test(p, eps);
                values.insert("thm-a".to_string(), t.value);
                verdicts.insert("thm-a(a)".to_string(), t.strict);
                verdicts.insert("thm-a(b)".to_string(), t.borderline);
                t.strict || t.borderline
            }
            Condition::PositiveCurvature => {
                values.insert("3.11".to_string(), block_condition(p).value);
                values.insert("3.12".to_string(), full_condition(p).value);
                positive_curvature_test(p, eps)
            }
            Condition::TorsionFree => {
                let (v, ok) = torsion_free_test(p, eps)?;
                values.insert("corollaryC".to_string(), v);
                ok
            }
            Condition::Block => {
                let v = block_condition(p);
                values.insert("3.11".to_string(), v.value);
                v.positive(eps)
            }
            Condition::Full => {
                let v = full_condition(p);
                values.insert("3.12".to_string(), v.value);
                v.positive(eps)
            }
            Condition::Bianchi => {
                values.insert("bianchi".to_string(), p.bianchi_defect());
                p.bianchi_consistent(1e-9)
            }
        };
        verdicts.insert(c.label().to_string(), ok);
    }
    let passed = conds.iter().all(|c| verdicts[c.label()]);
    Ok(ConditionReport {
        id: p.id.clone(),
        values,
        verdicts,
        minors_reduced: reduced_form(p).leading_minors(),
        minors_full: full_form(p).leading_minors(),
        bianchi_defect: p.bianchi_defect(),
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::DEFAULT_EPS;

    #[test]
    fn sphere_like_point() {
        let p = PointData::constant_curvature(1.0).with_id("sphere");
        let r = evaluate(&p, &[Condition::TorsionFree], DEFAULT_EPS).unwrap();
        assert!(r.passed);
        assert!((r.values["corollaryC"] - 20.0).abs() < 1e-12);
        let r = evaluate(
            &p,
            &[Condition::PositiveCurvature, Condition::Bianchi],
            DEFAULT_EPS,
        )
        .unwrap();
        assert!(r.passed);
        assert!(
            !evaluate(&p, &[Condition::NegativeCurvature], DEFAULT_EPS)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn labels_round_trip() {
        for c in Condition::ALL {
            assert_eq!(Condition::from_label(c.label()).unwrap(), c);
        }
        assert!(Condition::from_label("3.13").is_err());
    }
}
