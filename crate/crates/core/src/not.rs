//! Smallest weight change under which the constrained subset loses its
//! grip on the maximum-weight bases: no maximum basis inside ("not
//! exists"), some maximum basis outside ("relaxed"), some inside basis
//! below the maximum ("not all"), or the failure of exclusivity ("not
//! only").

use crate::error::{Error, Result};
use crate::greedy::{
    below_max_within, check_feasible, greedy_basis, greedy_basis_within, second_basis_exists,
    some_basis_escapes, Sense, TieBreakPolicy, Variant,
};
use crate::matroid::{circuit_with_independent, find_basis, Basis, Matroid};
use crate::set::GroundSubset;
use crate::weights::{half_difference_candidates, rational_int, Rational, Weighting};
use num_traits::Zero;

/// Evidence for an optimal "not exists" solution: the fractional optimum of
/// the relaxed problem, the integer level actually applied (the ceiling or
/// one more), and a maximum-weight basis escaping the subset under the
/// output weights.
pub struct NotExistsCertificate {
    pub relaxed_delta: Rational,
    pub chosen_delta: Rational,
    pub witness_basis_outside: Basis,
}

impl NotExistsCertificate {
    /// Re-derives every claim of the certificate.
    pub fn verify(
        &self,
        m: &impl Matroid,
        s0: &GroundSubset,
        w: &Weighting,
        w_star: &Weighting,
    ) -> Result<()> {
        if self.relaxed_delta < Rational::zero() || !self.chosen_delta.is_integer() {
            return Err(Error::internal("malformed certificate levels"));
        }
        let ceiling = self.relaxed_delta.ceil();
        let one = rational_int(1);
        if self.chosen_delta != ceiling && self.chosen_delta != &ceiling + &one {
            return Err(Error::internal(
                "chosen level is neither the ceiling nor its successor",
            ));
        }
        if *w_star != w.structured(&self.chosen_delta, &s0.complement()) {
            return Err(Error::internal(
                "output weighting is not the signed shift at the chosen level",
            ));
        }
        let witness = &self.witness_basis_outside;
        if !m.is_basis(witness.as_set()) || witness.is_subset_of(s0) {
            return Err(Error::internal(
                "witness is not a basis escaping the constrained subset",
            ));
        }
        let best = greedy_basis(m, w_star, &TieBreakPolicy::plain(), Sense::Max);
        if w_star.weight_of(witness.as_set()) != w_star.weight_of(best.as_set()) {
            return Err(Error::internal(
                "witness basis is not maximum-weight under the output",
            ));
        }
        if !check_feasible(m, s0, w_star, Variant::ImNotExists)? {
            return Err(Error::internal(
                "output weighting still admits a maximum basis inside",
            ));
        }
        Ok(())
    }
}

/// Which of the three steps of the "not all" solver produced the answer.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NotAllBranch {
    AlreadyFeasible,
    DecrementBasis,
    ExchangeBound,
}

/// Evidence for an optimal "not all" solution: the branch taken, the anchor
/// basis for the two non-trivial branches, the deviation, and for the
/// exchange branch the pair attaining the minimum rounded half-gap.
pub struct NotAllCertificate {
    pub branch: NotAllBranch,
    pub basis_b0: Option<Basis>,
    pub delta: Rational,
    pub pair: Option<(usize, usize)>,
}

impl NotAllCertificate {
    /// Re-derives every claim of the certificate; the caller must have
    /// established that `s0` spans a basis.
    pub fn verify(
        &self,
        m: &impl Matroid,
        s0: &GroundSubset,
        w: &Weighting,
        w_star: &Weighting,
    ) -> Result<()> {
        match self.branch {
            NotAllBranch::AlreadyFeasible => {
                if !self.delta.is_zero() || w_star != w || self.pair.is_some() {
                    return Err(Error::internal("trivial branch must change nothing"));
                }
            }
            NotAllBranch::DecrementBasis => {
                let b0 = self.anchor(m, s0)?;
                if self.delta != rational_int(1) || self.pair.is_some() {
                    return Err(Error::internal("decrement branch must cost exactly one"));
                }
                if *w_star != w.add_indicator(b0.as_set(), &rational_int(-1)) {
                    return Err(Error::internal(
                        "output is not the anchor decremented by one",
                    ));
                }
            }
            NotAllBranch::ExchangeBound => {
                let b0 = self.anchor(m, s0)?;
                let (best, _) = exchange_bound(m, b0, w)?;
                if self.delta != best {
                    return Err(Error::internal(
                        "deviation is not the minimum rounded half-gap",
                    ));
                }
                let (e, f) = self
                    .pair
                    .ok_or_else(|| Error::internal("exchange branch without its pair"))?;
                if b0.contains(f) || !b0.contains(e) {
                    return Err(Error::internal("pair elements are on the wrong sides"));
                }
                let circuit = circuit_with_independent(m, b0.as_set(), f)
                    .ok_or_else(|| Error::internal("anchor plus pair element is independent"))?;
                if !circuit.contains(e) {
                    return Err(Error::internal(
                        "pair element lies outside the fundamental circuit",
                    ));
                }
                if rounded_half_gap(&w[e], &w[f]) != self.delta {
                    return Err(Error::internal("pair does not attain the minimum"));
                }
                if *w_star != w.structured(&self.delta, &b0.complement()) {
                    return Err(Error::internal(
                        "output is not the signed shift around the anchor",
                    ));
                }
            }
        }
        if !below_max_within(m, s0, w_star) {
            return Err(Error::internal(
                "output weighting keeps every inside basis at the maximum",
            ));
        }
        Ok(())
    }

    fn anchor(&self, m: &impl Matroid, s0: &GroundSubset) -> Result<&Basis> {
        let b0 = self
            .basis_b0
            .as_ref()
            .ok_or_else(|| Error::internal("branch requires an anchor basis"))?;
        if !m.is_basis(b0.as_set()) || !b0.is_subset_of(s0) {
            return Err(Error::internal(
                "anchor is not a basis inside the constrained subset",
            ));
        }
        Ok(b0)
    }
}

fn validate_shapes(m: &impl Matroid, s0: &GroundSubset, w: &Weighting) -> Result<()> {
    if w.len() != m.ground_size() || s0.universe() != m.ground_size() {
        return Err(Error::malformed(
            "constrained subset or weighting does not match the ground set",
        ));
    }
    Ok(())
}

fn require_integral(w: &Weighting) -> Result<()> {
    if w.integral() {
        Ok(())
    } else {
        Err(Error::precondition(
            "integral solver requires integer weights",
        ))
    }
}

fn require_escape(m: &impl Matroid, s0: &GroundSubset) -> Result<()> {
    if some_basis_escapes(m, s0) {
        Ok(())
    } else {
        Err(Error::precondition(
            "every basis lies inside the constrained subset",
        ))
    }
}

/// Fractional solver for the relaxed problem: the least level of the signed
/// shift `w − δ·χ_{s0} + δ·χ_{S∖s0}` under which some maximum-weight basis
/// escapes `s0`, found by binary search over the half-difference candidates.
pub fn solve_relaxed_not_exists(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
) -> Result<(Weighting, Rational)> {
    validate_shapes(m, s0, w)?;
    require_escape(m, s0)?;
    let outside = s0.complement();
    let candidates = half_difference_candidates(w, s0, &outside);
    let feasible = |delta: &Rational| -> Result<bool> {
        check_feasible(m, s0, &w.structured(delta, &outside), Variant::RelaxedNotExists)
    };
    let mut lo = 0usize;
    let mut hi = candidates.len() - 1;
    if !feasible(&candidates[hi])? {
        return Err(Error::internal(
            "largest candidate level is infeasible for the shift family",
        ));
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(&candidates[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let delta = candidates[lo].clone();
    Ok((w.structured(&delta, &outside), delta))
}

/// Integral variant: the ceiling of the fractional optimum in the same
/// signed shift form.
pub fn solve_relaxed_not_exists_integral(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
) -> Result<(Weighting, Rational)> {
    require_integral(w)?;
    let (_, fractional) = solve_relaxed_not_exists(m, s0, w)?;
    let delta = fractional.ceil();
    Ok((w.structured(&delta, &s0.complement()), delta))
}

/// Integral solver for driving every maximum-weight basis out of `s0`: the
/// relaxed optimum rounded up, bumped by one more unit when rounding alone
/// still leaves a maximum basis inside.
pub fn solve_not_exists(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
) -> Result<(Weighting, Rational, NotExistsCertificate)> {
    validate_shapes(m, s0, w)?;
    require_integral(w)?;
    require_escape(m, s0)?;
    let (_, relaxed_delta) = solve_relaxed_not_exists(m, s0, w)?;
    let outside = s0.complement();
    let one = rational_int(1);
    let mut chosen = relaxed_delta.ceil();
    let mut w_star = w.structured(&chosen, &outside);
    if !check_feasible(m, s0, &w_star, Variant::ImNotExists)? {
        chosen = &chosen + &one;
        w_star = w.structured(&chosen, &outside);
        if !check_feasible(m, s0, &w_star, Variant::ImNotExists)? {
            return Err(Error::internal(
                "neither rounding candidate clears the inside maxima",
            ));
        }
    }
    let witness = greedy_basis(
        m,
        &w_star,
        &TieBreakPolicy::prefer_inside(s0.clone()),
        Sense::Max,
    );
    if witness.is_subset_of(s0) {
        return Err(Error::internal(
            "feasible output yet the greedy witness stayed inside",
        ));
    }
    let certificate = NotExistsCertificate {
        relaxed_delta,
        chosen_delta: chosen,
        witness_basis_outside: witness,
    };
    Ok((w_star, certificate.chosen_delta.clone(), certificate))
}

/// `⌈(w(e) − w(f) + 1)/2⌉`.
fn rounded_half_gap(w_e: &Rational, w_f: &Rational) -> Rational {
    ((w_e - w_f + rational_int(1)) / rational_int(2)).ceil()
}

/// Minimum rounded half-gap over exchange pairs of the anchor, with the
/// first pair attaining it (outside element ascending, then circuit element
/// ascending).
fn exchange_bound(
    m: &impl Matroid,
    b0: &Basis,
    w: &Weighting,
) -> Result<(Rational, (usize, usize))> {
    let mut best: Option<(Rational, (usize, usize))> = None;
    for f in b0.complement().iter() {
        let Some(circuit) = circuit_with_independent(m, b0.as_set(), f) else {
            continue;
        };
        for e in circuit.iter().filter(|&e| e != f) {
            let value = rounded_half_gap(&w[e], &w[f]);
            if best.as_ref().is_none_or(|(current, _)| value < *current) {
                best = Some((value, (e, f)));
            }
        }
    }
    best.ok_or_else(|| Error::internal("anchor admits no exchange pair"))
}

/// The three-branch solver body, shared with the "not only" solver, which
/// may call it when no basis escapes the subset. Callers must have
/// established that `w` is integral and `s0` spans a basis.
pub(crate) fn not_all_pipeline(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
) -> Result<(Weighting, Rational, NotAllCertificate)> {
    if below_max_within(m, s0, w) {
        let certificate = NotAllCertificate {
            branch: NotAllBranch::AlreadyFeasible,
            basis_b0: None,
            delta: Rational::zero(),
            pair: None,
        };
        return Ok((w.clone(), Rational::zero(), certificate));
    }
    let b0 = Basis::new_unchecked(greedy_basis_within(
        m,
        s0,
        w,
        &TieBreakPolicy::plain(),
        Sense::Max,
    ));
    let one = rational_int(1);
    let decremented = w.add_indicator(b0.as_set(), &rational_int(-1));
    if below_max_within(m, s0, &decremented) {
        let certificate = NotAllCertificate {
            branch: NotAllBranch::DecrementBasis,
            basis_b0: Some(b0),
            delta: one.clone(),
            pair: None,
        };
        return Ok((decremented, one, certificate));
    }
    let (delta, pair) = exchange_bound(m, &b0, w)?;
    let w_star = w.structured(&delta, &b0.complement());
    if !below_max_within(m, s0, &w_star) {
        return Err(Error::internal(
            "exchange-bound shift failed to demote an inside basis",
        ));
    }
    let certificate = NotAllCertificate {
        branch: NotAllBranch::ExchangeBound,
        basis_b0: Some(b0),
        delta: delta.clone(),
        pair: Some(pair),
    };
    Ok((w_star, delta, certificate))
}

/// Integral solver for making some inside basis fall below the maximum.
pub fn solve_not_all(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
) -> Result<(Weighting, Rational, NotAllCertificate)> {
    validate_shapes(m, s0, w)?;
    require_integral(w)?;
    if find_basis(m, s0).is_none() {
        return Err(Error::precondition("constrained subset contains no basis"));
    }
    require_escape(m, s0)?;
    not_all_pipeline(m, s0, w)
}

/// Integral solver for breaking exclusivity: the better of demoting an
/// inside basis and letting a maximum basis escape, ties to the former.
pub fn solve_not_only(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
) -> Result<(Weighting, Rational)> {
    validate_shapes(m, s0, w)?;
    require_integral(w)?;
    let demotion_possible = find_basis(m, s0).is_some() && second_basis_exists(m);
    let escape_possible = some_basis_escapes(m, s0);
    if !demotion_possible && !escape_possible {
        return Err(Error::precondition(
            "no basis within the constrained subset can be demoted and none escapes it",
        ));
    }
    let candidate1 = if demotion_possible {
        let (w_star, delta, _) = not_all_pipeline(m, s0, w)?;
        Some((w_star, delta))
    } else {
        None
    };
    let candidate2 = if escape_possible {
        Some(solve_relaxed_not_exists_integral(m, s0, w)?)
    } else {
        None
    };
    let (w_star, delta) = match (candidate1, candidate2) {
        (Some(c1), Some(c2)) => {
            if c1.1 <= c2.1 {
                c1
            } else {
                c2
            }
        }
        (Some(c1), None) => c1,
        (None, Some(c2)) => c2,
        (None, None) => unreachable!("guarded by the precondition above"),
    };
    if !check_feasible(m, s0, &w_star, Variant::ImNotOnly)? {
        return Err(Error::internal(
            "chosen candidate fails the feasibility checker",
        ));
    }
    Ok((w_star, delta))
}
