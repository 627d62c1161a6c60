//! Replayable derivation scripts over the golden identity corpus.

mod corpus;
mod mutation;
mod script;
mod suite;

pub use corpus::{Corpus, CorpusRecord};
pub use mutation::{mutate, MutationReport};
pub use script::{DerivationScript, Expect, ScriptReport, Step, StepKind, StepMode, StepReport};
pub use suite::{
    cartan_leading, cartan_variation, cube_root_estimate, cube_root_sample_check,
    curvature_gradient, dj_square, final_estimate, kernel_identity, l_alpha_square,
    norm_difference, script, square_completion, torsion_free_bochner, torsionful_bochner, verify,
    verify_all, CubeRootOutcome, DEFAULT_SAMPLES, DEFAULT_SEED,
};
