//! The core inverse problem: given a target basis, find the nearest weights
//! (in the max-norm) under which that basis is maximum-weight.

use crate::error::{Error, Result};
use crate::greedy::{greedy_basis, Sense, TieBreakPolicy};
use crate::matroid::{fundamental_circuit, Basis, Matroid};
use crate::oracle;
use crate::weights::{rational_int, Rational, Weighting};
use num_traits::Zero;

/// Optimality witness for the core inverse problem.
///
/// For a positive optimum, `pair = (f, e)` names an exchange with
/// `(w(f) − w(e))/2 = delta_star`, and `witness_basis = b_star + f − e` is
/// the basis whose weight catches up with the target exactly at the optimum.
#[derive(Clone, Debug)]
pub struct ImCertificate {
    pub delta_star: Rational,
    pub pair: Option<(usize, usize)>,
    pub witness_basis: Option<Basis>,
}

impl ImCertificate {
    /// Checks the certificate's internal invariants against the instance.
    pub fn verify(&self, m: &impl Matroid, b_star: &Basis, w: &Weighting) -> Result<()> {
        if self.delta_star < Rational::zero() {
            return Err(Error::internal("negative optimum in certificate"));
        }
        if self.delta_star.is_zero() {
            return Ok(());
        }
        let (f, e) = self
            .pair
            .ok_or_else(|| Error::internal("positive optimum without an exchange pair"))?;
        let witness = self
            .witness_basis
            .as_ref()
            .ok_or_else(|| Error::internal("positive optimum without a witness basis"))?;
        if !m.is_basis(witness.as_set()) {
            return Err(Error::internal("witness is not a basis"));
        }
        if witness.as_set() != &b_star.minus(e).plus(f) {
            return Err(Error::internal("witness does not equal b_star + f − e"));
        }
        if witness.symmetric_difference(b_star).len() != 2 {
            return Err(Error::internal("witness differs from b_star by more than one exchange"));
        }
        if (&w[f] - &w[e]) != &self.delta_star * rational_int(2) {
            return Err(Error::internal("pair gap does not equal twice the optimum"));
        }
        Ok(())
    }
}

/// The target basis sorted by decreasing weight, ties by ascending id.
fn sort_by_weight_desc(b_star: &Basis, w: &Weighting) -> Vec<usize> {
    let mut sorted: Vec<usize> = b_star.iter().collect();
    sorted.sort_by(|&a, &b| w[b].cmp(&w[a]).then_with(|| a.cmp(&b)));
    sorted
}

/// Solves the core inverse problem for `b_star` under `w`.
///
/// One greedy run finds a maximum-weight basis; if the target already
/// matches its weight the answer is `w` itself. Otherwise, for every
/// element `f` of the greedy basis missing from the target, a binary search
/// over prefixes of the weight-sorted target finds the heaviest prefix
/// whose span first captures `f`; the largest weight gap over those
/// exchange pairs, halved, is the optimum, and the output weights move the
/// target up and everything else down by that amount.
pub fn solve_im(
    m: &impl Matroid,
    b_star: &Basis,
    w: &Weighting,
) -> Result<(Weighting, ImCertificate)> {
    if w.len() != m.ground_size() {
        return Err(Error::malformed("weighting does not match the ground set"));
    }
    if !m.is_basis(b_star.as_set()) {
        return Err(Error::precondition("target set is not a basis"));
    }

    let b_max = greedy_basis(m, w, &TieBreakPolicy::plain(), Sense::Max);
    if w.weight_of(b_max.as_set()) <= w.weight_of(b_star.as_set()) {
        return Ok((
            w.clone(),
            ImCertificate {
                delta_star: Rational::zero(),
                pair: None,
                witness_basis: None,
            },
        ));
    }

    let sorted = sort_by_weight_desc(b_star, w);
    let r = sorted.len();
    // prefixes[i] is the independent set of the first i sorted elements.
    let mut prefixes: Vec<crate::set::GroundSubset> =
        Vec::with_capacity(r + 1);
    prefixes.push(crate::set::GroundSubset::empty(m.ground_size()));
    for &e in &sorted {
        prefixes.push(prefixes.last().unwrap().plus(e));
    }

    let mut best_gap = Rational::zero();
    let mut best_pair: Option<(usize, usize)> = None;
    for f in b_max.difference(b_star).iter() {
        // Least i with f in the span of the first i target elements; the
        // full target is a basis, so i = r always qualifies.
        let (mut lo, mut hi) = (1usize, r);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if m.is_independent(&prefixes[mid].plus(f)) {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let e = sorted[lo - 1];
        let gap = &w[f] - &w[e];
        // Strict improvement keeps the lexicographically smallest (f, e)
        // attaining pair, because f ascends and e is determined by f.
        if gap > best_gap {
            best_gap = gap;
            best_pair = Some((f, e));
        }
    }

    let (f, e) = best_pair.ok_or_else(|| {
        Error::internal("greedy basis outweighs the target but no exchange improves it")
    })?;
    let delta_star = best_gap / rational_int(2);
    let w_star = w.structured(&delta_star, b_star.as_set());
    let witness = Basis::new_unchecked(b_star.minus(e).plus(f));
    Ok((
        w_star,
        ImCertificate {
            delta_star,
            pair: Some((f, e)),
            witness_basis: Some(witness),
        },
    ))
}

/// Integral version: the optimum is the ceiling of the fractional optimum,
/// applied in the same signed structured form.
pub fn solve_im_integral(
    m: &impl Matroid,
    b_star: &Basis,
    w: &Weighting,
) -> Result<(Weighting, Rational)> {
    if !w.integral() {
        return Err(Error::precondition(
            "integral solver requires integer weights",
        ));
    }
    let (_, certificate) = solve_im(m, b_star, w)?;
    let delta = certificate.delta_star.ceil();
    let w_star = w.structured(&delta, b_star.as_set());
    Ok((w_star, delta))
}

/// Which evaluation of the min-max formula to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MinmaxMode {
    /// Enumerate every basis (guarded by `enum_bound`).
    All,
    /// Only bases one exchange away from the target, via fundamental
    /// circuits.
    Diff2,
}

/// Evaluates `max(0, max_B (w(B) − w(b_star)) / |B △ b_star|)` — the dual
/// expression whose value equals the [`solve_im`] optimum.
pub fn minmax_value(
    m: &impl Matroid,
    b_star: &Basis,
    w: &Weighting,
    mode: MinmaxMode,
    enum_bound: usize,
) -> Result<Rational> {
    if !m.is_basis(b_star.as_set()) {
        return Err(Error::precondition("target set is not a basis"));
    }
    match mode {
        MinmaxMode::All => oracle::brute_im(m, b_star, w, enum_bound),
        MinmaxMode::Diff2 => {
            let mut best = Rational::zero();
            for f in b_star.complement().iter() {
                let circuit = fundamental_circuit(m, b_star, f)?;
                for e in circuit.minus(f).iter() {
                    let candidate = (&w[f] - &w[e]) / rational_int(2);
                    if candidate > best {
                        best = candidate;
                    }
                }
            }
            Ok(best)
        }
    }
}
