//! Exact arithmetic: rationals, polynomials, rational functions and the
//! cyclic-cover differential algebra.

pub mod cover;
pub mod cover_coeff;
pub mod expr;
pub mod mpoly;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod root_of_unity;

pub use cover::{CoverCoeff, CoverData, CoverElement, QLambda};
pub use expr::{parse_mpoly, parse_unipoly};
pub use mpoly::{MPoly, Monomial};
pub use poly::{squarefree_decompose, Poly, UniPoly};
pub use ratfunc::RatFunc;
pub use rational::{fmt_rational, parse_rational, q, qi, rem_euclid_q, sqrt_exact, to_f64, Field, Q};
pub use root_of_unity::RootOfUnity;
