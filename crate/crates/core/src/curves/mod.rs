//! Cyclic covers of the projective line: genus, holomorphic differentials,
//! automorphism eigenvalues and quotient-map identities.

pub mod automorphism;
pub mod cyclic;
pub mod forms;
pub mod quotient;

pub use automorphism::{automorphism_eigenvalues, MonomialAutomorphism};
pub use cyclic::{genus, Branch, CyclicCover, Place, RamificationDatum};
pub use forms::{form_valuations, holomorphic_form_basis, is_holomorphic, DifferentialForm, PlaceValuation};
pub use quotient::{
    generic_polynomial, reduce, shioda_inose_quotient, twisted_product_quotient, verify_quotient_map,
    QuotientProblem, RewriteRule,
};
