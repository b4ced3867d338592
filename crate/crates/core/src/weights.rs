//! Exact rational weight vectors and the arithmetic helpers the solvers share.

use crate::error::{Error, Result};
use crate::set::GroundSubset;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::str::FromStr;

/// Exact rational scalar used for all weights and optimum values.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for an integer-valued rational.
pub fn rational_int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Convenience constructor for `numerator / denominator`.
///
/// Panics on a zero denominator; intended for literals in code, not for
/// parsing user input (use [`parse_rational`] for that).
pub fn rational(numerator: i64, denominator: i64) -> Rational {
    assert!(denominator != 0, "zero denominator");
    Rational::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// Parses `"n"` or `"n/d"` into an exact rational.
///
/// Rejects zero denominators, embedded whitespace, and anything that is not
/// a plain integer or a single fraction.
pub fn parse_rational(text: &str) -> Result<Rational> {
    Rational::from_str(text)
        .map_err(|_| Error::malformed(format!("invalid rational literal {text:?}")))
}

/// Formats a rational as `"n"` (for integers) or `"n/d"` in lowest terms.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// An exact rational weight vector over the ground set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Weighting {
    values: Vec<Rational>,
    integral: bool,
}

impl Weighting {
    /// Builds a weighting from rational values; the integrality flag is
    /// derived (true exactly when every value is an integer).
    pub fn from_rationals(values: Vec<Rational>) -> Self {
        let integral = values.iter().all(|v| v.is_integer());
        Weighting { values, integral }
    }

    /// Builds an integral weighting from machine integers.
    pub fn from_i64s(values: &[i64]) -> Self {
        Weighting::from_rationals(values.iter().map(|&v| rational_int(v)).collect())
    }

    /// The all-zero weighting over a ground set of size `n`.
    pub fn zeros(n: usize) -> Self {
        Weighting::from_rationals(vec![Rational::zero(); n])
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Whether the vector is empty.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether every value is an integer.
    pub fn integral(&self) -> bool {
        self.integral
    }

    /// The underlying values.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Total weight of a subset.
    pub fn weight_of(&self, set: &GroundSubset) -> Rational {
        assert_eq!(set.universe(), self.len(), "weighting/universe mismatch");
        set.iter().map(|e| self.values[e].clone()).sum()
    }

    /// Max-norm distance `max_e |self(e) − other(e)|`.
    pub fn linf_distance(&self, other: &Weighting) -> Rational {
        assert_eq!(self.len(), other.len(), "weighting length mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// The signed perturbation `w + δ·(χ_plus − χ_complement)`: adds `delta`
    /// on `plus_set` and subtracts it everywhere else.
    pub fn structured(&self, delta: &Rational, plus_set: &GroundSubset) -> Weighting {
        assert_eq!(plus_set.universe(), self.len(), "weighting/universe mismatch");
        Weighting::from_rationals(
            self.values
                .iter()
                .enumerate()
                .map(|(e, v)| {
                    if plus_set.contains(e) {
                        v + delta
                    } else {
                        v - delta
                    }
                })
                .collect(),
        )
    }

    /// `w + coeff·χ_set`: adds `coeff` on `set`, leaves the rest unchanged.
    pub fn add_indicator(&self, set: &GroundSubset, coeff: &Rational) -> Weighting {
        assert_eq!(set.universe(), self.len(), "weighting/universe mismatch");
        Weighting::from_rationals(
            self.values
                .iter()
                .enumerate()
                .map(|(e, v)| if set.contains(e) { v + coeff } else { v.clone() })
                .collect(),
        )
    }

    /// Replaces the value at one element.
    pub fn with_value(&self, element: usize, value: Rational) -> Weighting {
        let mut values = self.values.clone();
        values[element] = value;
        Weighting::from_rationals(values)
    }

    /// Largest value over a subset, if the subset is nonempty.
    pub fn max_over(&self, set: &GroundSubset) -> Option<Rational> {
        set.iter().map(|e| self.values[e].clone()).max()
    }

    /// Smallest value over a subset, if the subset is nonempty.
    pub fn min_over(&self, set: &GroundSubset) -> Option<Rational> {
        set.iter().map(|e| self.values[e].clone()).min()
    }
}

impl std::ops::Index<usize> for Weighting {
    type Output = Rational;

    fn index(&self, element: usize) -> &Rational {
        &self.values[element]
    }
}

/// The sorted, deduplicated candidate list `{0} ∪ {|w(a) − w(b)|/2}` over
/// all pairs `a ∈ a_set, b ∈ b_set`.
///
/// Every optimum of the perturbation searches is either zero or half the
/// gap between two original weights, so this list always contains it.
pub fn half_difference_candidates(
    w: &Weighting,
    a_set: &GroundSubset,
    b_set: &GroundSubset,
) -> Vec<Rational> {
    let two = rational_int(2);
    let mut candidates = vec![Rational::zero()];
    for a in a_set.iter() {
        for b in b_set.iter() {
            candidates.push((&w[a] - &w[b]).abs() / &two);
        }
    }
    candidates.sort();
    candidates.dedup();
    candidates
}
