//! Brute-force ground truth at desk scale.
//!
//! Everything here decides feasibility by enumerating all bases and applying
//! the problem definitions directly — never by greedy runs — so these
//! oracles are an independent cross-check for the solvers and checkers.
//! Candidate weightings come from the structured families that provably
//! contain an optimum; feasibility of each candidate is still decided purely
//! by enumeration.

use crate::error::{Error, Result};
use crate::greedy::Variant;
use crate::matroid::{connected_components_within, Basis, Matroid};
use crate::set::GroundSubset;
use crate::weights::{rational_int, Rational, Weighting};
use num_traits::{Signed, Zero};

/// Default ground-size cap for basis enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 12;

/// Every basis of a matroid, with their common size.
pub struct BasisList {
    pub bases: Vec<Basis>,
    pub rank: usize,
}

impl BasisList {
    /// Splits basis indices into (contained in `s0`, not contained).
    pub fn split(&self, s0: &GroundSubset) -> (Vec<usize>, Vec<usize>) {
        let mut inside = Vec::new();
        let mut outside = Vec::new();
        for (i, b) in self.bases.iter().enumerate() {
            if b.is_subset_of(s0) {
                inside.push(i);
            } else {
                outside.push(i);
            }
        }
        (inside, outside)
    }
}

/// Enumerates all bases by testing every rank-sized subset.
pub fn enumerate_bases(m: &impl Matroid, enum_bound: usize) -> Result<BasisList> {
    let n = m.ground_size();
    if n > enum_bound {
        return Err(Error::Capacity {
            limit: enum_bound,
            actual: n,
        });
    }
    let rank = m.rank_full();
    let mut bases = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if mask.count_ones() as usize != rank {
            continue;
        }
        let candidate =
            GroundSubset::from_elements(n, (0..n).filter(|&e| mask >> e & 1 == 1));
        if m.is_independent(&candidate) {
            bases.push(Basis::new_unchecked(candidate));
        }
    }
    Ok(BasisList { bases, rank })
}

/// Decides feasibility of `w` for a variant straight from the definition,
/// using only the enumerated basis weights.
pub fn definition_feasible(
    list: &BasisList,
    s0: &GroundSubset,
    w: &Weighting,
    variant: Variant,
) -> Result<bool> {
    let weights: Vec<Rational> = list.bases.iter().map(|b| w.weight_of(b.as_set())).collect();
    let max_weight = weights
        .iter()
        .max()
        .ok_or_else(|| Error::internal("matroid with no bases"))?
        .clone();
    let (inside, outside) = list.split(s0);
    let exists_def = inside.iter().any(|&i| weights[i] == max_weight);
    let all_def = !inside.is_empty() && inside.iter().all(|&i| weights[i] == max_weight);
    let only_def = all_def && outside.iter().all(|&i| weights[i] < max_weight);
    let relaxed_def = outside.iter().any(|&i| weights[i] == max_weight);

    match variant {
        Variant::Im => {
            if !list.bases.iter().any(|b| b.as_set() == s0) {
                return Err(Error::precondition("target set is not a basis"));
            }
            Ok(w.weight_of(s0) == max_weight)
        }
        Variant::ImExists => {
            require_nonempty(&inside, "constrained subset contains no basis")?;
            Ok(exists_def)
        }
        Variant::ImAll => {
            require_nonempty(&inside, "constrained subset contains no basis")?;
            Ok(all_def)
        }
        Variant::ImOnly => {
            require_nonempty(&inside, "constrained subset contains no basis")?;
            Ok(only_def)
        }
        Variant::ImNotExists => {
            require_nonempty(&outside, "every basis lies inside the constrained subset")?;
            Ok(!exists_def)
        }
        Variant::RelaxedNotExists => {
            require_nonempty(&outside, "every basis lies inside the constrained subset")?;
            Ok(relaxed_def)
        }
        Variant::ImNotAll => {
            require_nonempty(&inside, "constrained subset contains no basis")?;
            require_nonempty(&outside, "every basis lies inside the constrained subset")?;
            Ok(!all_def)
        }
        Variant::ImNotOnly => {
            if (inside.is_empty() || list.bases.len() < 2) && outside.is_empty() {
                return Err(Error::precondition(
                    "no basis within the constrained subset can be demoted and none escapes it",
                ));
            }
            Ok(!only_def)
        }
    }
}

fn require_nonempty(indices: &[usize], message: &str) -> Result<()> {
    if indices.is_empty() {
        Err(Error::precondition(message.to_string()))
    } else {
        Ok(())
    }
}

fn require_integral(w: &Weighting) -> Result<()> {
    if w.integral() {
        Ok(())
    } else {
        Err(Error::precondition(
            "integral oracle requires integer weights",
        ))
    }
}

/// `max(0, max over bases B ≠ b_star of (w(B) − w(b_star)) / |B △ b_star|)`.
pub fn brute_im(
    m: &impl Matroid,
    b_star: &Basis,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    let list = enumerate_bases(m, enum_bound)?;
    if !list.bases.iter().any(|b| b.as_set() == b_star.as_set()) {
        return Err(Error::precondition("target set is not a basis"));
    }
    Ok(im_formula(&list, b_star.as_set(), w))
}

fn im_formula(list: &BasisList, b_star: &GroundSubset, w: &Weighting) -> Rational {
    let target_weight = w.weight_of(b_star);
    let mut best = Rational::zero();
    for b in &list.bases {
        let diff = b.symmetric_difference(b_star);
        if diff.is_empty() {
            continue;
        }
        let candidate =
            (w.weight_of(b.as_set()) - &target_weight) / rational_int(diff.len() as i64);
        if candidate > best {
            best = candidate;
        }
    }
    best
}

/// Minimum over bases inside `s0` of the [`brute_im`] value: the smallest
/// deviation that makes some inside basis maximum-weight.
pub fn brute_exists(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    let list = enumerate_bases(m, enum_bound)?;
    let (inside, _) = list.split(s0);
    require_nonempty(&inside, "constrained subset contains no basis")?;
    inside
        .iter()
        .map(|&i| im_formula(&list, list.bases[i].as_set(), w))
        .min()
        .ok_or_else(|| Error::internal("empty minimum"))
}

/// Per-component data for the constant-on-components candidate family.
struct ComponentFamily {
    components: Vec<GroundSubset>,
    minima: Vec<Rational>,
}

impl ComponentFamily {
    fn new(m: &impl Matroid, s0: &GroundSubset, w: &Weighting) -> Self {
        let components = connected_components_within(m, s0);
        let minima = components
            .iter()
            .map(|c| w.min_over(c).expect("components are nonempty"))
            .collect();
        ComponentFamily { components, minima }
    }

    /// Largest within-component half-gap: a lower bound on any deviation
    /// achieved by a weighting constant on each component.
    fn rho_pairs(&self, w: &Weighting) -> Rational {
        self.components
            .iter()
            .map(|c| {
                (w.max_over(c).unwrap() - w.min_over(c).unwrap()) / rational_int(2)
            })
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// The candidate weighting at level `delta`: per-component minimum plus
    /// `delta` on each component, `w − delta` outside `s0`.
    fn weighting_at(&self, s0: &GroundSubset, w: &Weighting, delta: &Rational) -> Weighting {
        let mut values: Vec<Rational> = w
            .values()
            .iter()
            .enumerate()
            .map(|(e, v)| if s0.contains(e) { v.clone() } else { v - delta })
            .collect();
        for (component, minimum) in self.components.iter().zip(&self.minima) {
            for e in component.iter() {
                values[e] = minimum + delta;
            }
        }
        Weighting::from_rationals(values)
    }
}

/// Smallest deviation making every basis inside `s0` maximum-weight,
/// via per-competitor linear thresholds on the component-constant family.
pub fn brute_all(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    let list = enumerate_bases(m, enum_bound)?;
    let (inside, outside) = list.split(s0);
    if inside.is_empty() {
        return Ok(Rational::zero());
    }
    let family = ComponentFamily::new(m, s0, w);
    let mut delta_star = family.rho_pairs(w);

    // Weight of any inside basis at level δ is K + rank·δ; a competitor B
    // weighs Σ_{e∈B∩S₀} (min_{comp(e)} + δ) + Σ_{e∈B∖S₀} (w(e) − δ), so the
    // domination constraint is linear in δ with slope 2|B∖S₀|.
    let component_min_of = |e: usize| -> Rational {
        family
            .components
            .iter()
            .position(|c| c.contains(e))
            .map(|i| family.minima[i].clone())
            .expect("inside element must lie in a component")
    };
    let k_inside: Rational = list.bases[inside[0]].iter().map(component_min_of).sum();
    for &i in &outside {
        let b = &list.bases[i];
        let b_in = b.intersection(s0);
        let b_out = b.difference(s0);
        let c_b = &k_inside
            - b_in.iter().map(component_min_of).sum::<Rational>()
            - w.weight_of(&b_out);
        let k_b = rational_int(2 * b_out.len() as i64);
        let threshold = -c_b / k_b;
        if threshold > delta_star {
            delta_star = threshold;
        }
    }
    if delta_star < Rational::zero() {
        delta_star = Rational::zero();
    }

    // The threshold arithmetic must agree with the definition.
    let candidate = family.weighting_at(s0, w, &delta_star);
    if !definition_feasible(&list, s0, &candidate, Variant::ImAll)? {
        return Err(Error::internal(
            "threshold optimum is infeasible by enumeration",
        ));
    }
    Ok(delta_star)
}

/// Upper bound (plus slack) on how far the integral walks may need to go.
fn weight_span_cap(w: &Weighting, slack: usize, doubled: bool) -> Result<usize> {
    let max = w.values().iter().max().cloned().unwrap_or_else(Rational::zero);
    let min = w.values().iter().min().cloned().unwrap_or_else(Rational::zero);
    let span: usize = usize::try_from((max - min).ceil().to_integer())
        .map_err(|_| Error::internal("weight span too large for oracle walk"))?;
    Ok(span * if doubled { 2 } else { 1 } + slack)
}

/// Walks δ = 0, 1, 2, … up to `cap`, returning the first δ accepted.
fn integral_walk(
    cap: usize,
    mut accept: impl FnMut(&Rational) -> Result<bool>,
) -> Result<Rational> {
    for step in 0..=cap {
        let delta = rational_int(step as i64);
        if accept(&delta)? {
            return Ok(delta);
        }
    }
    Err(Error::internal(
        "no feasible deviation within the oracle walk bound",
    ))
}

/// Integral counterpart of [`brute_all`]: the first integer level whose
/// family weighting is feasible by enumeration and within the deviation.
pub fn brute_all_integral(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    require_integral(w)?;
    let list = enumerate_bases(m, enum_bound)?;
    let (inside, _) = list.split(s0);
    if inside.is_empty() {
        return Ok(Rational::zero());
    }
    let family = ComponentFamily::new(m, s0, w);
    let cap = weight_span_cap(w, 4, false)?;
    integral_walk(cap, |delta| {
        let candidate = family.weighting_at(s0, w, delta);
        Ok(w.linf_distance(&candidate) <= *delta
            && definition_feasible(&list, s0, &candidate, Variant::ImAll)?)
    })
}

/// Integral optimum for making exactly the inside bases maximum-weight,
/// walking the same family as [`brute_all_integral`].
pub fn brute_only(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    require_integral(w)?;
    let list = enumerate_bases(m, enum_bound)?;
    let (inside, _) = list.split(s0);
    require_nonempty(&inside, "constrained subset contains no basis")?;
    let family = ComponentFamily::new(m, s0, w);
    let cap = weight_span_cap(w, 6, true)?;
    integral_walk(cap, |delta| {
        let candidate = family.weighting_at(s0, w, delta);
        Ok(w.linf_distance(&candidate) <= *delta
            && definition_feasible(&list, s0, &candidate, Variant::ImOnly)?)
    })
}

/// Sorted candidate levels `{0} ∪ {|w(x) − w(y)|/2}` over all element pairs.
fn all_pair_half_differences(w: &Weighting) -> Vec<Rational> {
    let two = rational_int(2);
    let mut candidates = vec![Rational::zero()];
    for x in 0..w.len() {
        for y in x + 1..w.len() {
            candidates.push((&w[x] - &w[y]).abs() / &two);
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates
}

/// Fractional optimum for making some maximum-weight basis escape `s0`:
/// smallest candidate level whose signed shift is feasible by enumeration.
pub fn brute_relaxed(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    let list = enumerate_bases(m, enum_bound)?;
    let (_, outside) = list.split(s0);
    require_nonempty(&outside, "every basis lies inside the constrained subset")?;
    for delta in all_pair_half_differences(w) {
        let candidate = w.structured(&delta, &s0.complement());
        if definition_feasible(&list, s0, &candidate, Variant::RelaxedNotExists)? {
            return Ok(delta);
        }
    }
    Err(Error::internal(
        "no candidate level restores an escaping maximum basis",
    ))
}

/// Integral counterpart of [`brute_relaxed`].
pub fn brute_relaxed_integral(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    require_integral(w)?;
    let list = enumerate_bases(m, enum_bound)?;
    let (_, outside) = list.split(s0);
    require_nonempty(&outside, "every basis lies inside the constrained subset")?;
    let cap = weight_span_cap(w, 3, false)?;
    integral_walk(cap, |delta| {
        let candidate = w.structured(delta, &s0.complement());
        definition_feasible(&list, s0, &candidate, Variant::RelaxedNotExists)
    })
}

/// Integral optimum for driving every maximum-weight basis out of `s0`.
pub fn brute_not_exists(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    require_integral(w)?;
    let list = enumerate_bases(m, enum_bound)?;
    let (_, outside) = list.split(s0);
    require_nonempty(&outside, "every basis lies inside the constrained subset")?;
    let cap = weight_span_cap(w, 3, false)?;
    integral_walk(cap, |delta| {
        let candidate = w.structured(delta, &s0.complement());
        definition_feasible(&list, s0, &candidate, Variant::ImNotExists)
    })
}

/// Scans the per-anchor family `w + δ·(χ_{S∖B₀} − χ_{B₀})` over every inside
/// basis `B₀` and integer `δ`, returning the smallest feasible deviation
/// for the given definition-level predicate.
fn scan_anchor_family(
    list: &BasisList,
    s0: &GroundSubset,
    w: &Weighting,
    anchors: &[usize],
    cap: usize,
    variant: Variant,
) -> Result<Option<Rational>> {
    let base_weights: Vec<Rational> =
        list.bases.iter().map(|b| w.weight_of(b.as_set())).collect();
    let rank = list.rank as i64;
    let (inside, _) = list.split(s0);
    let mut best: Option<Rational> = None;

    for &a in anchors {
        let anchor = &list.bases[a];
        // w_δ(B) = w(B) + δ·(rank − 2|B ∩ B₀|), so each level is a cheap
        // integer update of the cached base weights.
        let slopes: Vec<i64> = list
            .bases
            .iter()
            .map(|b| rank - 2 * b.intersection(anchor.as_set()).len() as i64)
            .collect();
        for step in 0..=cap {
            let delta = rational_int(step as i64);
            if let Some(current) = &best {
                if delta >= *current {
                    break;
                }
            }
            let weights: Vec<Rational> = base_weights
                .iter()
                .zip(&slopes)
                .map(|(base, &slope)| base + &delta * rational_int(slope))
                .collect();
            let max_weight = weights.iter().max().unwrap().clone();
            let feasible = match variant {
                Variant::ImNotAll => inside.iter().any(|&i| weights[i] < max_weight),
                Variant::ImNotOnly => {
                    let all_def = !inside.is_empty()
                        && inside.iter().all(|&i| weights[i] == max_weight);
                    let only_def = all_def
                        && list
                            .bases
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| !inside.contains(i))
                            .all(|(i, _)| weights[i] < max_weight);
                    !only_def
                }
                _ => unreachable!("anchor family only serves the Not-All and Not-Only scans"),
            };
            if feasible {
                best = Some(delta);
                break;
            }
        }
    }
    Ok(best)
}

/// Integral optimum for making some inside basis fall below the maximum.
pub fn brute_not_all(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    require_integral(w)?;
    let list = enumerate_bases(m, enum_bound)?;
    let (inside, outside) = list.split(s0);
    require_nonempty(&inside, "constrained subset contains no basis")?;
    require_nonempty(&outside, "every basis lies inside the constrained subset")?;
    let cap = weight_span_cap(w, 3, false)?;
    scan_anchor_family(&list, s0, w, &inside, cap, Variant::ImNotAll)?
        .ok_or_else(|| Error::internal("no feasible deviation within the oracle walk bound"))
}

/// Integral optimum for breaking "the inside bases are exactly the maximum
/// ones": the better of the demotion family and the escape family.
pub fn brute_not_only(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    enum_bound: usize,
) -> Result<Rational> {
    require_integral(w)?;
    let list = enumerate_bases(m, enum_bound)?;
    let (inside, outside) = list.split(s0);
    let demotion_possible = !inside.is_empty() && list.bases.len() >= 2;
    let escape_possible = !outside.is_empty();
    if !demotion_possible && !escape_possible {
        return Err(Error::precondition(
            "no basis within the constrained subset can be demoted and none escapes it",
        ));
    }
    let cap = weight_span_cap(w, 3, false)?;

    let mut best: Option<Rational> = None;
    if demotion_possible {
        best = scan_anchor_family(&list, s0, w, &inside, cap, Variant::ImNotOnly)?;
    }
    if escape_possible {
        for step in 0..=cap {
            let delta = rational_int(step as i64);
            if let Some(current) = &best {
                if delta >= *current {
                    break;
                }
            }
            let candidate = w.structured(&delta, &s0.complement());
            if definition_feasible(&list, s0, &candidate, Variant::ImNotOnly)? {
                best = Some(delta);
                break;
            }
        }
    }
    best.ok_or_else(|| Error::internal("no feasible deviation within the oracle walk bound"))
}

/// Dispatches to the brute oracle matching `variant`; for the core variant
/// `s0` plays the role of the target basis.
pub fn brute_optimum(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    variant: Variant,
    enum_bound: usize,
) -> Result<Rational> {
    match variant {
        Variant::Im => {
            let list = enumerate_bases(m, enum_bound)?;
            if !list.bases.iter().any(|b| b.as_set() == s0) {
                return Err(Error::precondition("target set is not a basis"));
            }
            Ok(im_formula(&list, s0, w))
        }
        Variant::ImExists => brute_exists(m, s0, w, enum_bound),
        Variant::ImAll => brute_all(m, s0, w, enum_bound),
        Variant::ImOnly => brute_only(m, s0, w, enum_bound),
        Variant::ImNotExists => brute_not_exists(m, s0, w, enum_bound),
        Variant::RelaxedNotExists => brute_relaxed(m, s0, w, enum_bound),
        Variant::ImNotAll => brute_not_all(m, s0, w, enum_bound),
        Variant::ImNotOnly => brute_not_only(m, s0, w, enum_bound),
    }
}
