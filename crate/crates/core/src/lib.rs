//! Evaluation of dense multivariate polynomials over finite fields by
//! iterated Frobenius decomposition, with every field multiplication
//! accounted for in a ledger and checked against closed-form counts.

pub mod costmodel;
pub mod error;
pub mod evaluator;
pub mod format;
pub mod gf;
pub mod mpoly;
pub mod random;

pub use costmodel::{
    implemented_cost, max_depth, optimal_depth, predicted_cost, AsymptoticInterval, CostBreakdown,
    CostFn,
};
pub use error::{Error, Result};
pub use evaluator::{
    eval_auto, eval_batch_shared, eval_extension, eval_frobenius, eval_naive, eval_naive_embedded,
    EvalResult,
};
pub use gf::{
    find_irreducible, subfield_embed, CountMode, ExtElement, ExtField, MulCategory, MulCounts,
    MulLedger, PrimeModulus, SubfieldEmbedding,
};
pub use mpoly::{
    deglex_rank, deglex_unrank, frobenius_decompose, m_r, recompose, split_base_field,
    DecomposedPoly, DensePoly, ExponentVec,
};
pub use random::{random_point, random_poly};
