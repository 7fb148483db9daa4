pub mod action;
pub mod charp;
pub mod error;
pub mod hopf;
mod json;
pub mod ore;
pub mod pipeline;
pub mod reduce;
pub mod scalar;
pub mod subspace;

pub use action::{
    act, annihilator_of_tensor_power, faithfulness_certificate, inner_faithful_radical, validate_module_algebra,
    ActionSpec, Certificate,
};
pub use charp::{central_tower, frobenius_centrals, p_polynomial_for_derivation, verify_freeness_rank, Central, CentralSubringData, PPolynomial};
pub use error::{Error, Result};
pub use hopf::{
    dual_hopf, find_left_integral, grouplike_elements, is_cocommutative, quotient_by_hopf_ideal,
    validate_hopf_axioms, Axiom, HopfData, HopfIdealData, IntegralResult,
};
pub use ore::{apply_derivation, is_central, multiply, validate_tower, OreElement, OreTower};
pub use pipeline::{emit_report, parse_spec, run_pipeline, PipelineConfig, PrimeRecord, ReductionReport, ReportFormat, Verdict};
pub use reduce::{certificate_mod_p, good_primes, reduce_mod_p, structure_constant_ring, subdirect_injectivity_check, PrimeSite, StructureConstantRing};
pub use scalar::{Domain, Matrix, Scalar, ScalarDomain};
pub use subspace::Subspace;
