//! Instance-level façade: a validated problem instance, dispatch to the
//! matching solver, re-verification of outputs, and the brute-force
//! counterpart for cross-checking.

use crate::all_only::{solve_all, solve_all_integral, solve_only, AllCertificate};
use crate::concrete::ConcreteMatroid;
use crate::error::{Error, Result};
use crate::exists::{
    solve_exists_binary, solve_exists_integral, solve_exists_reduction, ExistsCertificate,
};
use crate::greedy::{check_feasible, second_basis_exists, some_basis_escapes, Variant};
use crate::im::{solve_im, solve_im_integral, ImCertificate};
use crate::matroid::{find_basis, Basis, CountingMatroid, Matroid};
use crate::not::{
    solve_not_all, solve_not_exists, solve_not_only, solve_relaxed_not_exists,
    solve_relaxed_not_exists_integral, NotAllCertificate, NotExistsCertificate,
};
use crate::oracle;
use crate::set::GroundSubset;
use crate::weights::{Rational, Weighting};
use num_traits::Zero;

/// Which subset-constrained solver to run for the "exists" variant.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ExistsMethod {
    #[default]
    Binary,
    Reduction,
}

/// A fully validated problem: matroid, constrained subset (or target basis
/// for the core variant), weights, variant tag, and whether integral output
/// is required.
pub struct ProblemInstance {
    pub matroid: ConcreteMatroid,
    pub s0: GroundSubset,
    pub weights: Weighting,
    pub variant: Variant,
    pub integral: bool,
}

/// The variant-specific evidence attached to a solution, when the solver
/// produces one.
pub enum Certificate {
    Im(ImCertificate),
    Exists(ExistsCertificate),
    All(AllCertificate),
    NotExists(NotExistsCertificate),
    NotAll(NotAllCertificate),
}

/// A solver run: the optimum, the output weighting, and optional evidence.
pub struct Solution {
    pub variant: Variant,
    pub integral: bool,
    pub delta_star: Rational,
    pub weights_out: Weighting,
    pub certificate: Option<Certificate>,
}

fn structural_preconditions(
    m: &impl Matroid,
    s0: &GroundSubset,
    variant: Variant,
) -> Result<()> {
    let precondition = |ok: bool, message: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::precondition(message.to_string()))
        }
    };
    match variant {
        Variant::Im => precondition(m.is_basis(s0), "target set is not a basis"),
        Variant::ImExists | Variant::ImOnly => precondition(
            find_basis(m, s0).is_some(),
            "constrained subset contains no basis",
        ),
        Variant::ImAll => Ok(()),
        Variant::ImNotExists | Variant::RelaxedNotExists => precondition(
            some_basis_escapes(m, s0),
            "every basis lies inside the constrained subset",
        ),
        Variant::ImNotAll => {
            precondition(
                find_basis(m, s0).is_some(),
                "constrained subset contains no basis",
            )?;
            precondition(
                some_basis_escapes(m, s0),
                "every basis lies inside the constrained subset",
            )
        }
        Variant::ImNotOnly => precondition(
            (find_basis(m, s0).is_some() && second_basis_exists(m)) || some_basis_escapes(m, s0),
            "no basis within the constrained subset can be demoted and none escapes it",
        ),
    }
}

/// Checks shapes, integrality demands, and the variant's structural
/// precondition, with the diagnostics the file format documents.
pub fn validate_instance(instance: &ProblemInstance) -> Result<()> {
    let n = instance.matroid.ground_size();
    if instance.s0.universe() != n || instance.weights.len() != n {
        return Err(Error::malformed(
            "constrained subset or weighting does not match the ground set",
        ));
    }
    if (instance.variant.requires_integral_weights() || instance.integral)
        && !instance.weights.integral()
    {
        return Err(Error::precondition(
            "integral solver requires integer weights",
        ));
    }
    structural_preconditions(&instance.matroid, &instance.s0, instance.variant)
}

fn solve_with(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    variant: Variant,
    integral: bool,
    method: ExistsMethod,
) -> Result<Solution> {
    let (delta_star, weights_out, certificate) = match (variant, integral) {
        (Variant::Im, false) => {
            let b_star = Basis::new(m, s0.clone())?;
            let (w_star, certificate) = solve_im(m, &b_star, w)?;
            (
                certificate.delta_star.clone(),
                w_star,
                Some(Certificate::Im(certificate)),
            )
        }
        (Variant::Im, true) => {
            let b_star = Basis::new(m, s0.clone())?;
            let (w_star, delta) = solve_im_integral(m, &b_star, w)?;
            (delta, w_star, None)
        }
        (Variant::ImExists, false) => {
            let (w_star, certificate) = match method {
                ExistsMethod::Binary => solve_exists_binary(m, s0, w)?,
                ExistsMethod::Reduction => solve_exists_reduction(m, s0, w)?,
            };
            (
                certificate.delta_star.clone(),
                w_star,
                Some(Certificate::Exists(certificate)),
            )
        }
        (Variant::ImExists, true) => {
            let (w_star, delta) = solve_exists_integral(m, s0, w)?;
            (delta, w_star, None)
        }
        (Variant::ImAll, false) => {
            let (w_star, certificate) = solve_all(m, s0, w)?;
            (
                certificate.delta_star.clone(),
                w_star,
                Some(Certificate::All(certificate)),
            )
        }
        (Variant::ImAll, true) => {
            let (w_star, delta) = solve_all_integral(m, s0, w)?;
            (delta, w_star, None)
        }
        (Variant::ImOnly, _) => {
            let (w_star, delta) = solve_only(m, s0, w)?;
            (delta, w_star, None)
        }
        (Variant::ImNotExists, _) => {
            let (w_star, delta, certificate) = solve_not_exists(m, s0, w)?;
            (delta, w_star, Some(Certificate::NotExists(certificate)))
        }
        (Variant::RelaxedNotExists, false) => {
            let (w_star, delta) = solve_relaxed_not_exists(m, s0, w)?;
            (delta, w_star, None)
        }
        (Variant::RelaxedNotExists, true) => {
            let (w_star, delta) = solve_relaxed_not_exists_integral(m, s0, w)?;
            (delta, w_star, None)
        }
        (Variant::ImNotAll, _) => {
            let (w_star, delta, certificate) = solve_not_all(m, s0, w)?;
            (delta, w_star, Some(Certificate::NotAll(certificate)))
        }
        (Variant::ImNotOnly, _) => {
            let (w_star, delta) = solve_not_only(m, s0, w)?;
            (delta, w_star, None)
        }
    };
    Ok(Solution {
        variant,
        integral,
        delta_star,
        weights_out,
        certificate,
    })
}

/// Validates and solves the instance.
pub fn solve_instance(instance: &ProblemInstance, method: ExistsMethod) -> Result<Solution> {
    validate_instance(instance)?;
    solve_with(
        &instance.matroid,
        &instance.s0,
        &instance.weights,
        instance.variant,
        instance.integral,
        method,
    )
}

/// Like [`solve_instance`], additionally reporting how many independence
/// queries the whole run issued.
pub fn solve_instance_counted(
    instance: &ProblemInstance,
    method: ExistsMethod,
) -> Result<(Solution, u64)> {
    validate_instance(instance)?;
    let counted = CountingMatroid::new(&instance.matroid);
    let solution = solve_with(
        &counted,
        &instance.s0,
        &instance.weights,
        instance.variant,
        instance.integral,
        method,
    )?;
    Ok((solution, counted.calls()))
}

/// Re-derives the solution's claims: the output weighting must pass the
/// variant's feasibility checker, deviate by exactly the reported optimum,
/// and carry a certificate whose own checks succeed.
pub fn verify_solution(instance: &ProblemInstance, solution: &Solution) -> Result<bool> {
    let m = &instance.matroid;
    let s0 = &instance.s0;
    let w = &instance.weights;
    let w_out = &solution.weights_out;
    if w.linf_distance(w_out) != solution.delta_star {
        return Ok(false);
    }
    if solution.integral && !w_out.integral() {
        return Ok(false);
    }
    // The "all" solver accepts subsets spanning no basis and returns the
    // input unchanged; the feasibility checker has no meaning there.
    if solution.variant == Variant::ImAll && find_basis(m, s0).is_none() {
        return Ok(solution.delta_star.is_zero() && w_out == w);
    }
    if !check_feasible(m, s0, w_out, solution.variant)? {
        return Ok(false);
    }
    let certificate_ok = match &solution.certificate {
        None => true,
        Some(Certificate::Im(c)) => {
            let b_star = Basis::new(m, s0.clone())?;
            c.verify(m, &b_star, w).is_ok()
        }
        Some(Certificate::Exists(c)) => c.verify(m, s0, w, w_out).is_ok(),
        Some(Certificate::All(c)) => c.verify(m, s0, w, w_out).is_ok(),
        Some(Certificate::NotExists(c)) => c.verify(m, s0, w, w_out).is_ok(),
        Some(Certificate::NotAll(c)) => c.verify(m, s0, w, w_out).is_ok(),
    };
    Ok(certificate_ok)
}

/// The brute-force optimum for the instance, honoring the integral flag.
pub fn oracle_delta(instance: &ProblemInstance, enum_bound: usize) -> Result<Rational> {
    validate_instance(instance)?;
    let m = &instance.matroid;
    let s0 = &instance.s0;
    let w = &instance.weights;
    match (instance.variant, instance.integral) {
        // For the core and "exists" variants an integral optimum is the
        // ceiling of the fractional one: deviations between integral
        // weightings are integers, and the structured family stays feasible
        // at every larger level.
        (Variant::Im, true) => Ok(oracle::brute_optimum(m, s0, w, Variant::Im, enum_bound)?.ceil()),
        (Variant::ImExists, true) => Ok(oracle::brute_exists(m, s0, w, enum_bound)?.ceil()),
        (Variant::ImAll, true) => oracle::brute_all_integral(m, s0, w, enum_bound),
        (Variant::RelaxedNotExists, true) => oracle::brute_relaxed_integral(m, s0, w, enum_bound),
        (variant, _) => oracle::brute_optimum(m, s0, w, variant, enum_bound),
    }
}
