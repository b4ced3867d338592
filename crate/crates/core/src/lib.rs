//! Inverse matroid optimization under the max-norm with exact rational
//! arithmetic.
//!
//! Given a matroid, a weighting, and a constrained subset of the ground
//! set (or a target basis), the solvers find a nearest weighting — in the
//! ℓ∞ distance — under which the subset holds the prescribed relation to
//! the maximum-weight bases: contains one, contains only maximum ones,
//! contains exactly the maximum ones, or loses them entirely. All
//! arithmetic is exact (`num_rational::BigRational`); solvers return
//! machine-checkable certificates, and a brute-force oracle module
//! recomputes every optimum by basis enumeration at small sizes.
//!
//! Entry points:
//! - [`concrete::ConcreteMatroid`] builds uniform, partition, graphic,
//!   linear, and combinator matroids; anything implementing
//!   [`matroid::Matroid`] works too.
//! - [`greedy::check_feasible`] decides feasibility of a weighting for any
//!   problem variant with a constant number of greedy runs.
//! - `solve_*` functions in [`im`], [`exists`], [`all_only`], and [`not`]
//!   compute optima with certificates.
//! - [`solve::solve_instance`] dispatches on a [`greedy::Variant`] tag;
//!   [`oracle`] provides the enumeration-based ground truth.

pub mod all_only;
pub mod concrete;
pub mod error;
pub mod exists;
pub mod greedy;
pub mod im;
pub mod matroid;
pub mod not;
pub mod oracle;
pub mod set;
pub mod solve;
pub mod weights;

pub use all_only::{solve_all, solve_all_integral, solve_only, AllCertificate, HomogenizationPlan};
pub use concrete::ConcreteMatroid;
pub use error::{Error, Result};
pub use exists::{
    check_exists_feasible_closure, solve_exists_binary, solve_exists_integral,
    solve_exists_reduction, ExistsCertificate,
};
pub use greedy::{
    check_feasible, greedy_basis, greedy_basis_within, Sense, TieBreakPolicy, Variant,
};
pub use im::{minmax_value, solve_im, solve_im_integral, ImCertificate, MinmaxMode};
pub use matroid::{
    connected_components, connected_components_within, exchange_bijection, find_basis,
    fundamental_circuit, Basis, CountingMatroid, Matroid,
};
pub use not::{
    solve_not_all, solve_not_exists, solve_not_only, solve_relaxed_not_exists,
    solve_relaxed_not_exists_integral, NotAllBranch, NotAllCertificate, NotExistsCertificate,
};
pub use oracle::{
    brute_all, brute_all_integral, brute_exists, brute_im, brute_not_all, brute_not_exists,
    brute_not_only, brute_only, brute_optimum, brute_relaxed, brute_relaxed_integral,
    definition_feasible, enumerate_bases, BasisList, DEFAULT_ENUM_BOUND,
};
pub use set::GroundSubset;
pub use solve::{
    oracle_delta, solve_instance, solve_instance_counted, validate_instance, verify_solution,
    Certificate, ExistsMethod, ProblemInstance, Solution,
};
pub use weights::{
    format_rational, half_difference_candidates, parse_rational, rational, rational_int, Rational,
    Weighting,
};
