//! Picard-Fuchs operators of one-parameter cyclic covers: the exact
//! certificate, local exponents, and numeric monodromy and periods.

pub mod frobenius;
pub mod monodromy;
pub mod mum;
pub mod operator;
pub mod period;
pub mod series;

pub use frobenius::{
    all_indicial_exponents, exponent_sum, indicial_exponents, is_maximally_unipotent, local_monodromy_class,
    theta_form, IndicialData, MonodromyClass, SingularPoint,
};
pub use monodromy::{
    eigenvalues_match, monodromy_triple, numeric_monodromy, IntegrationOptions, LoopSpec, Mat2, MonodromyResult,
};
pub use mum::{mum_absent_for_cy3, mum_absent_with_operator, MumReason, MumVerdict};
pub use operator::{exact_certificate, pf_operator, Certificate, PFOperator, PFParams};
pub use period::{
    elliptic_k, numeric_period, period_ode_residual, period_on_path, BranchPoint, PeriodPath, PeriodResidual,
    QuadratureOptions,
};
pub use series::{hypergeometric_coefficients, series_relative_residual, truncated_series_residual};
