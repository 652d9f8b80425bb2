//! Symbolic verification engine for a symplectic construction on R^6.
//!
//! Everything runs over exact rational arithmetic: sparse polynomials in the
//! six coordinates, differential forms with polynomial coefficients, exact
//! rational linear algebra, and a rational-endpoint interval branch-and-bound
//! certifier for global polynomial lower bounds. `construction` assembles
//! the domain objects (the potential 1-form, its derived 5-form and Hodge
//! dual, and the reduction polynomials); `certify` produces replayable
//! certificates for the positivity claims.

pub mod certify;
pub mod construction;
pub mod forms;
pub mod gen;
pub mod interval;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use certify::{
    bb_lower_bound, grid_oracle_min, poly_range, replay_certificate, Budget, CertStatus,
    Certificate, CertificateResult, Constraint, Relation,
};
pub use construction::{build_all, reduced_system, ConstructionSet, ReducedSystem};
pub use forms::{DiffForm, Matrix6, MultiIndex};
pub use interval::{Interval, IntervalBox};
pub use poly::{ExponentVector, Polynomial, NVARS};
pub use rational::Rational;
