//! Error bounds for the two-parameter family of quadrature rules
//! `λ(αf(a) + (1-α)f(b)) + (1-λ)f(αa + (1-α)b)` (midpoint, trapezoid, Simpson
//! and every blend) when `|f'|^q` is h-convex or h-concave, together with an
//! adaptive-quadrature oracle that checks every bound numerically.
//!
//! ```
//! use hquad_core::{bound_power_mean, lhs_error, ClassCertificate, HModulus, RuleParams, TestFunction};
//!
//! let cert = ClassCertificate::convex(HModulus::Identity, 1.0).unwrap();
//! let tf = TestFunction::new(f64::exp, f64::exp, 0.0, 1.0, cert).unwrap();
//! let simpson = RuleParams::simpson(1.0).unwrap();
//! let bound = bound_power_mean(&tf, &simpson).unwrap();
//! assert!(lhs_error(&tf, &simpson).unwrap() <= bound.value);
//! ```

// `!(x >= 1.0)` also rejects NaN, which is the point.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod classes;
pub mod corpus;
pub mod error;
pub mod means;
pub mod moments;
pub mod oracle;

pub use bounds::{
    bound_holder_hconcave, bound_holder_hconvex, bound_power_mean, bound_power_mean_constant_h, bound_prior,
    bound_sconvex_powermean, BoundKind, BoundResult, PriorBound,
};
pub use classes::{
    certify, certify_membership, CertificateReport, ClassCertificate, ClassKind, ClassWitness, HModulus,
    TestFunction,
};
pub use corpus::{FunctionSpec, PoolClass};
pub use error::{Error, Result};
pub use means::{
    arith_mean, log_mean, p_log_mean, proposition1_check, proposition2_check, weighted_arith_mean,
    PropositionReport,
};
pub use moments::{
    abs_moment_p, branch_select, epsilon_coeffs, gamma_coeffs, mu_eta_star, upsilon_coeffs, weighted_moment,
    CaseBranch, MuEta, RuleParams, Side,
};
pub use oracle::{
    hadamard_check, integrate_adaptive, lemma_identity_residual, lhs_error, HadamardReport, HadamardVariant,
    QuadratureResult,
};
