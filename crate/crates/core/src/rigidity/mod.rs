//! Pointwise rigidity conditions, the Hermitian forms behind them, and the
//! equivalence and scaling checks that tie them together.

mod conditions;
mod equiv;
mod forms;
mod hermitian;
mod point;
mod report;
mod scaling;

pub use conditions::{
    block_condition, full_condition, negative_curvature_test, negative_curvature_value,
    positive_curvature_test, torsion_free_test, torsion_free_value, NegativeCurvature, Valued,
    DEFAULT_EPS,
};
pub use equiv::{
    block_identity_proof, check_full_equivalence, check_reduced_equivalence, equivalence_battery,
    random_point, BatteryReport, EquivalenceCheck, DEFAULT_BAND, KAPPA,
};
pub use forms::{corner_entry, det_exact, full_form, reduced_form, ExactPoint};
pub use hermitian::HermitianForm;
pub use point::{parse_points, PointData};
pub use report::{evaluate, Condition, ConditionReport};
pub use scaling::{scale_check, ScaleCheck, ScaledValue, DEFAULT_SCALES};
