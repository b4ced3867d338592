//! Deterministic greedy basis computation with explicit tie-breaking, the
//! problem-variant tags, and the per-variant feasibility checkers.
//!
//! Every checker decides feasibility with a constant number of greedy runs,
//! never by enumerating bases; the enumeration-based ground truth lives in
//! the oracle module and must agree.

use crate::error::{Error, Result};
use crate::matroid::{find_basis, Basis, Matroid};
use crate::set::GroundSubset;
use crate::weights::Weighting;

/// Whether greedy maximizes or minimizes total weight.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Max,
    Min,
}

/// Primary tie-break class: which elements are preferred at equal weight.
#[derive(Clone, Debug)]
pub enum Preference {
    /// No class preference.
    Plain,
    /// Prefer members of the given set.
    Inside(GroundSubset),
    /// Prefer non-members of the given set.
    Outside(GroundSubset),
}

/// Total element order used by greedy: weight (by sense), then the primary
/// preference class, then an optional secondary prefer-inside class, then
/// ascending element id. The same class order applies in both senses.
#[derive(Clone, Debug)]
pub struct TieBreakPolicy {
    primary: Preference,
    secondary: Option<GroundSubset>,
}

impl TieBreakPolicy {
    /// Ties break by ascending element id only.
    pub fn plain() -> Self {
        TieBreakPolicy {
            primary: Preference::Plain,
            secondary: None,
        }
    }

    /// Ties prefer members of `set` first.
    pub fn prefer_inside(set: GroundSubset) -> Self {
        TieBreakPolicy {
            primary: Preference::Inside(set),
            secondary: None,
        }
    }

    /// Ties prefer non-members of `set` first.
    pub fn prefer_outside(set: GroundSubset) -> Self {
        TieBreakPolicy {
            primary: Preference::Outside(set),
            secondary: None,
        }
    }

    /// Adds a secondary prefer-inside class applied after the primary one.
    pub fn then_inside(mut self, set: GroundSubset) -> Self {
        self.secondary = Some(set);
        self
    }

    fn primary_class(&self, e: usize) -> u8 {
        match &self.primary {
            Preference::Plain => 0,
            Preference::Inside(set) => u8::from(!set.contains(e)),
            Preference::Outside(set) => u8::from(set.contains(e)),
        }
    }

    fn secondary_class(&self, e: usize) -> u8 {
        match &self.secondary {
            Some(set) => u8::from(!set.contains(e)),
            None => 0,
        }
    }
}

/// The elements of `scope` in the total order induced by `(w, tb, sense)`.
fn greedy_order(
    scope: &GroundSubset,
    w: &Weighting,
    tb: &TieBreakPolicy,
    sense: Sense,
) -> Vec<usize> {
    let mut order: Vec<usize> = scope.iter().collect();
    order.sort_by(|&a, &b| {
        let by_weight = match sense {
            Sense::Max => w[b].cmp(&w[a]),
            Sense::Min => w[a].cmp(&w[b]),
        };
        by_weight
            .then_with(|| tb.primary_class(a).cmp(&tb.primary_class(b)))
            .then_with(|| tb.secondary_class(a).cmp(&tb.secondary_class(b)))
            .then_with(|| a.cmp(&b))
    });
    order
}

/// A maximum-weight subset of `scope` that is a basis of the restriction of
/// `m` to `scope`, in original element indices.
pub fn greedy_basis_within(
    m: &impl Matroid,
    scope: &GroundSubset,
    w: &Weighting,
    tb: &TieBreakPolicy,
    sense: Sense,
) -> GroundSubset {
    assert_eq!(w.len(), m.ground_size(), "weighting/ground mismatch");
    let mut current = GroundSubset::empty(m.ground_size());
    for e in greedy_order(scope, w, tb, sense) {
        let candidate = current.plus(e);
        if m.is_independent(&candidate) {
            current = candidate;
        }
    }
    current
}

/// The deterministic greedy basis of `m` under `(w, tb, sense)`.
///
/// Greedy over a matroid always returns a maximum-weight (resp.
/// minimum-weight) basis; tie-breaking picks a specific one.
pub fn greedy_basis(m: &impl Matroid, w: &Weighting, tb: &TieBreakPolicy, sense: Sense) -> Basis {
    Basis::new_unchecked(greedy_basis_within(m, &m.full_ground(), w, tb, sense))
}

/// Problem-variant tag; the four Not/Only variants demand integral weights.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variant {
    Im,
    ImExists,
    ImAll,
    ImOnly,
    ImNotExists,
    RelaxedNotExists,
    ImNotAll,
    ImNotOnly,
}

impl Variant {
    /// All variants, in a fixed order.
    pub const ALL: [Variant; 8] = [
        Variant::Im,
        Variant::ImExists,
        Variant::ImAll,
        Variant::ImOnly,
        Variant::ImNotExists,
        Variant::RelaxedNotExists,
        Variant::ImNotAll,
        Variant::ImNotOnly,
    ];

    /// The stable kebab-case tag used by the file format and CLI.
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Im => "im",
            Variant::ImExists => "im-exists",
            Variant::ImAll => "im-all",
            Variant::ImOnly => "im-only",
            Variant::ImNotExists => "im-not-exists",
            Variant::RelaxedNotExists => "relaxed-not-exists",
            Variant::ImNotAll => "im-not-all",
            Variant::ImNotOnly => "im-not-only",
        }
    }

    /// Parses a kebab-case tag.
    pub fn from_tag(tag: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.tag() == tag)
            .ok_or_else(|| Error::malformed(format!("unknown problem tag {tag:?}")))
    }

    /// Whether this variant is defined only for integral weightings.
    pub fn requires_integral_weights(self) -> bool {
        matches!(
            self,
            Variant::ImOnly | Variant::ImNotExists | Variant::ImNotAll | Variant::ImNotOnly
        )
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Whether some basis of `m` is not contained in `s0`, decided by one
/// zero-weight greedy run that prefers elements outside `s0`.
pub(crate) fn some_basis_escapes(m: &impl Matroid, s0: &GroundSubset) -> bool {
    let zeros = Weighting::zeros(m.ground_size());
    let basis = greedy_basis(m, &zeros, &TieBreakPolicy::prefer_outside(s0.clone()), Sense::Max);
    !basis.is_subset_of(s0)
}

/// Whether `m` has at least two distinct bases: some non-loop element lies
/// outside a fixed basis.
pub(crate) fn second_basis_exists(m: &impl Matroid) -> bool {
    let b = m.max_independent_subset(&m.full_ground());
    b.complement()
        .iter()
        .any(|f| m.is_independent(&GroundSubset::singleton(m.ground_size(), f)))
}

fn require(condition: bool, message: &str) -> Result<()> {
    if condition {
        Ok(())
    } else {
        Err(Error::precondition(message.to_string()))
    }
}

/// Whether some basis within `s0` weighs strictly less than the heaviest
/// basis overall (callers must have established that `s0` spans a basis).
pub(crate) fn below_max_within(m: &impl Matroid, s0: &GroundSubset, w: &Weighting) -> bool {
    let min_inside = greedy_basis_within(m, s0, w, &TieBreakPolicy::plain(), Sense::Min);
    let global_max = greedy_basis(m, w, &TieBreakPolicy::plain(), Sense::Max);
    w.weight_of(&min_inside) < w.weight_of(global_max.as_set())
}

/// Whether a maximum-weight basis not contained in `s0` exists, by one
/// greedy run preferring elements outside `s0`.
pub(crate) fn some_max_basis_escapes(m: &impl Matroid, s0: &GroundSubset, w: &Weighting) -> bool {
    let basis = greedy_basis(m, w, &TieBreakPolicy::prefer_outside(s0.clone()), Sense::Max);
    !basis.is_subset_of(s0)
}

/// Decides feasibility of `w` for the given variant with a constant number
/// of greedy runs, after validating the variant's structural precondition
/// on `s0`.
pub fn check_feasible(
    m: &impl Matroid,
    s0: &GroundSubset,
    w: &Weighting,
    variant: Variant,
) -> Result<bool> {
    if s0.universe() != m.ground_size() || w.len() != m.ground_size() {
        return Err(Error::malformed(
            "constrained subset or weighting does not match the ground set",
        ));
    }
    let plain = TieBreakPolicy::plain();
    match variant {
        Variant::Im => {
            require(m.is_basis(s0), "target set is not a basis")?;
            let max_basis = greedy_basis(m, w, &plain, Sense::Max);
            Ok(w.weight_of(s0) == w.weight_of(max_basis.as_set()))
        }
        Variant::ImExists => {
            require(
                find_basis(m, s0).is_some(),
                "constrained subset contains no basis",
            )?;
            let max_inside = greedy_basis_within(m, s0, w, &plain, Sense::Max);
            let global_max = greedy_basis(m, w, &plain, Sense::Max);
            Ok(w.weight_of(&max_inside) == w.weight_of(global_max.as_set()))
        }
        Variant::ImAll => {
            require(
                find_basis(m, s0).is_some(),
                "constrained subset contains no basis",
            )?;
            let max_inside = greedy_basis_within(m, s0, w, &plain, Sense::Max);
            let min_inside = greedy_basis_within(m, s0, w, &plain, Sense::Min);
            let global_max = greedy_basis(m, w, &plain, Sense::Max);
            Ok(w.weight_of(&max_inside) == w.weight_of(&min_inside)
                && w.weight_of(&max_inside) >= w.weight_of(global_max.as_set()))
        }
        Variant::ImOnly => {
            let all = check_feasible(m, s0, w, Variant::ImAll)?;
            Ok(all && !some_max_basis_escapes(m, s0, w))
        }
        Variant::ImNotExists => {
            require(
                some_basis_escapes(m, s0),
                "every basis lies inside the constrained subset",
            )?;
            let most_inside =
                greedy_basis(m, w, &TieBreakPolicy::prefer_inside(s0.clone()), Sense::Max);
            Ok(!most_inside.is_subset_of(s0))
        }
        Variant::RelaxedNotExists => {
            require(
                some_basis_escapes(m, s0),
                "every basis lies inside the constrained subset",
            )?;
            Ok(some_max_basis_escapes(m, s0, w))
        }
        Variant::ImNotAll => {
            require(
                find_basis(m, s0).is_some(),
                "constrained subset contains no basis",
            )?;
            require(
                some_basis_escapes(m, s0),
                "every basis lies inside the constrained subset",
            )?;
            Ok(below_max_within(m, s0, w))
        }
        Variant::ImNotOnly => {
            let path_not_all = find_basis(m, s0).is_some() && second_basis_exists(m);
            let path_relaxed = some_basis_escapes(m, s0);
            require(
                path_not_all || path_relaxed,
                "no basis within the constrained subset can be demoted and none escapes it",
            )?;
            Ok((path_not_all && below_max_within(m, s0, w))
                || (path_relaxed && some_max_basis_escapes(m, s0, w)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concrete::fixtures::{prism, prism_s0, prism_weights};
    use crate::concrete::ConcreteMatroid;
    use crate::weights::{rational, Weighting};

    fn u32_matroid() -> ConcreteMatroid {
        ConcreteMatroid::uniform(3, 2).unwrap()
    }

    #[test]
    fn greedy_max_on_prism_is_the_heavy_tree() {
        let b = greedy_basis(
            &prism(),
            &prism_weights(),
            &TieBreakPolicy::plain(),
            Sense::Max,
        );
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 4, 5, 6, 8]);
        assert_eq!(
            prism_weights().weight_of(b.as_set()),
            crate::weights::rational_int(28)
        );
    }

    #[test]
    fn greedy_top_two_in_uniform() {
        let b = greedy_basis(
            &u32_matroid(),
            &Weighting::from_i64s(&[3, 1, 0]),
            &TieBreakPolicy::plain(),
            Sense::Max,
        );
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn min_sense_takes_the_light_end() {
        let b = greedy_basis(
            &u32_matroid(),
            &Weighting::from_i64s(&[3, 1, 0]),
            &TieBreakPolicy::plain(),
            Sense::Min,
        );
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn preference_classes_break_ties() {
        let m = u32_matroid();
        let w = Weighting::from_i64s(&[1, 1, 1]);
        let inside = GroundSubset::from_elements(3, [0, 2]);
        let b_in = greedy_basis(&m, &w, &TieBreakPolicy::prefer_inside(inside.clone()), Sense::Max);
        assert_eq!(b_in.iter().collect::<Vec<_>>(), vec![0, 2]);
        let b_out = greedy_basis(&m, &w, &TieBreakPolicy::prefer_outside(inside), Sense::Max);
        assert_eq!(b_out.iter().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn secondary_class_refines_primary() {
        let m = ConcreteMatroid::uniform(4, 2).unwrap();
        let w = Weighting::zeros(4);
        let primary = GroundSubset::from_elements(4, [0, 1]);
        let secondary = GroundSubset::from_elements(4, [1, 3]);
        // Outside {0,1} first (so 2 and 3), inside {1,3} preferred among
        // ties (so 3 before 2); then inside the primary class 1 before 0.
        let tb = TieBreakPolicy::prefer_outside(primary).then_inside(secondary);
        let b = greedy_basis(&m, &w, &tb, Sense::Max);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![2, 3]);
    }

    #[test]
    fn greedy_is_deterministic() {
        let m = prism();
        let w = prism_weights();
        let tb = TieBreakPolicy::prefer_inside(prism_s0());
        let a = greedy_basis(&m, &w, &tb, Sense::Max);
        let b = greedy_basis(&m, &w, &tb, Sense::Max);
        assert_eq!(a, b);
    }

    #[test]
    fn variant_tags_roundtrip() {
        for v in Variant::ALL {
            assert_eq!(Variant::from_tag(v.tag()).unwrap(), v);
        }
        assert!(matches!(
            Variant::from_tag("irm"),
            Err(Error::MalformedInput(_))
        ));
        assert!(Variant::ImOnly.requires_integral_weights());
        assert!(!Variant::RelaxedNotExists.requires_integral_weights());
    }

    #[test]
    fn feasible_im_compares_against_max() {
        let m = u32_matroid();
        let b = GroundSubset::from_elements(3, [1, 2]);
        assert!(!check_feasible(&m, &b, &Weighting::from_i64s(&[3, 1, 0]), Variant::Im).unwrap());
        assert!(check_feasible(&m, &b, &Weighting::from_i64s(&[0, 1, 1]), Variant::Im).unwrap());
        assert!(matches!(
            check_feasible(
                &m,
                &GroundSubset::singleton(3, 0),
                &Weighting::zeros(3),
                Variant::Im
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn feasible_exists_and_all_on_prism() {
        let m = prism();
        let s0 = prism_s0();
        let w = prism_weights();
        assert!(!check_feasible(&m, &s0, &w, Variant::ImExists).unwrap());
        assert!(!check_feasible(&m, &s0, &w, Variant::ImAll).unwrap());

        // Constant-per-component target weights that make every tree inside
        // the constrained subset as heavy as any tree at all.
        let w_star = Weighting::from_rationals(vec![
            rational(7, 2),
            rational(7, 2),
            rational(7, 2),
            rational(7, 2),
            rational(19, 2),
            rational(9, 2),
            rational(9, 2),
            rational(9, 2),
            rational(5, 2),
        ]);
        assert!(check_feasible(&m, &s0, &w_star, Variant::ImExists).unwrap());
        assert!(check_feasible(&m, &s0, &w_star, Variant::ImAll).unwrap());
    }

    #[test]
    fn feasible_exists_requires_spanning_subset() {
        let m = u32_matroid();
        assert!(matches!(
            check_feasible(
                &m,
                &GroundSubset::singleton(3, 0),
                &Weighting::zeros(3),
                Variant::ImExists
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn feasible_only_rejects_outside_ties() {
        let m = u32_matroid();
        let s0 = GroundSubset::from_elements(3, [0, 1]);
        assert!(check_feasible(&m, &s0, &Weighting::from_i64s(&[2, 2, 0]), Variant::ImOnly).unwrap());
        // At equal weights the basis {e0, e2} ties with the inside bases.
        assert!(!check_feasible(&m, &s0, &Weighting::from_i64s(&[2, 2, 2]), Variant::ImOnly).unwrap());
    }

    #[test]
    fn feasible_not_exists_tracks_the_unique_max() {
        let m = ConcreteMatroid::uniform(2, 1).unwrap();
        let s0 = GroundSubset::singleton(2, 0);
        assert!(!check_feasible(&m, &s0, &Weighting::from_i64s(&[2, 1]), Variant::ImNotExists).unwrap());
        assert!(check_feasible(&m, &s0, &Weighting::from_i64s(&[1, 2]), Variant::ImNotExists).unwrap());
        // A tie is enough for the relaxed variant but not the strict one.
        let tied = Weighting::from_i64s(&[1, 1]);
        assert!(!check_feasible(&m, &s0, &tied, Variant::ImNotExists).unwrap());
        assert!(check_feasible(&m, &s0, &tied, Variant::RelaxedNotExists).unwrap());
    }

    #[test]
    fn not_variant_preconditions() {
        let m = ConcreteMatroid::uniform(2, 1).unwrap();
        let everything = GroundSubset::full(2);
        for variant in [Variant::ImNotExists, Variant::RelaxedNotExists, Variant::ImNotAll] {
            assert!(matches!(
                check_feasible(&m, &everything, &Weighting::zeros(2), variant),
                Err(Error::Precondition(_))
            ));
        }
        // Not-Only still works with everything constrained: demoting one of
        // the two bases remains possible.
        assert!(
            !check_feasible(&m, &everything, &Weighting::zeros(2), Variant::ImNotOnly).unwrap()
        );
        assert!(
            check_feasible(&m, &everything, &Weighting::from_i64s(&[1, 0]), Variant::ImNotOnly)
                .unwrap()
        );
    }

    #[test]
    fn not_all_needs_a_strict_laggard_inside() {
        let m = u32_matroid();
        let s0 = GroundSubset::from_elements(3, [0, 1]);
        assert!(!check_feasible(&m, &s0, &Weighting::from_i64s(&[1, 1, 1]), Variant::ImNotAll).unwrap());
        assert!(check_feasible(&m, &s0, &Weighting::from_i64s(&[1, 0, 1]), Variant::ImNotAll).unwrap());
    }
}
