//! Numerical verification of Bernstein-type inequalities for complex
//! polynomials under the modified Smirnov operator.
//!
//! Modules build bottom-up: [`poly`] (dense complex polynomials), [`roots`]
//! (zero location), [`circle_max`] (certified maximum modulus on circles),
//! [`operators`] (the Smirnov-type transforms), [`inequalities`] (the
//! catalog of checkable bounds) and [`lab`] (generation, sharpness probes,
//! counterexample search and sweeps).

pub mod circle_max;
pub mod error;
pub mod inequalities;
pub mod lab;
pub mod operators;
pub mod poly;
pub mod roots;

pub use circle_max::{max_modulus_on_circle, sup_ratio_on_circle, CertifiedBracket, RadialProfile};
pub use error::{Error, Result};
pub use inequalities::{
    certify_on_circle, certify_on_grid, check_domination_pair, check_pointwise, CheckConfig, CheckReport,
    HypothesisClass, InequalityId, MaxMode, Subject,
};
pub use operators::{
    composite_t, limit_expression, omega_membership, smirnov, smirnov_modified, OperatorDegree, ParameterSet,
};
pub use poly::{linear_combine, ComplexPolynomial};
pub use roots::{classify_zero_location, count_zeros_argument_principle, find_roots, ZeroLocationReport};
