//! The independence-oracle interface and structural queries derived from it.
//!
//! Everything a matroid algorithm needs is the pair (ground size, independence
//! oracle); all other quantities — rank, closure, circuits, exchange
//! bijections, connected components — are computed from oracle calls alone.

use crate::error::{Error, Result};
use crate::set::GroundSubset;
use std::sync::atomic::{AtomicU64, Ordering};

/// Independence-oracle interface.
///
/// Implementations must satisfy the matroid axioms: the empty set is
/// independent, subsets of independent sets are independent, and the exchange
/// axiom holds. Queries are pure and must not mutate observable state.
pub trait Matroid {
    /// Number of elements in the ground set.
    fn ground_size(&self) -> usize;

    /// Whether `x` is independent. `x` must live in this matroid's universe.
    fn is_independent(&self, x: &GroundSubset) -> bool;

    /// The full ground set as a subset value.
    fn full_ground(&self) -> GroundSubset {
        GroundSubset::full(self.ground_size())
    }

    /// A maximum independent subset of `scope`, grown by greedy augmentation
    /// in ascending element order (so the result is deterministic).
    fn max_independent_subset(&self, scope: &GroundSubset) -> GroundSubset {
        let mut current = GroundSubset::empty(self.ground_size());
        for e in scope.iter() {
            let candidate = current.plus(e);
            if self.is_independent(&candidate) {
                current = candidate;
            }
        }
        current
    }

    /// Rank of `scope`: the size of a maximum independent subset.
    fn rank(&self, scope: &GroundSubset) -> usize {
        self.max_independent_subset(scope).len()
    }

    /// Rank of the whole ground set.
    fn rank_full(&self) -> usize {
        self.rank(&self.full_ground())
    }

    /// Whether `x` is a basis: independent and of full rank.
    fn is_basis(&self, x: &GroundSubset) -> bool {
        self.is_independent(x) && x.len() == self.rank_full()
    }

    /// Closure of `x`: all elements whose addition does not raise the rank.
    ///
    /// Computed with one greedy pass (a maximum independent subset `I` of
    /// `x`) plus one probe per outside element: `s ∈ cl(x)` iff `s ∈ x` or
    /// `I + s` is dependent.
    fn closure(&self, x: &GroundSubset) -> GroundSubset {
        let base = self.max_independent_subset(x);
        let mut cl = x.clone();
        for s in 0..self.ground_size() {
            if !cl.contains(s) && !self.is_independent(&base.plus(s)) {
                cl.insert(s);
            }
        }
        cl
    }
}

/// Any reference to a matroid is itself a matroid.
impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn is_independent(&self, x: &GroundSubset) -> bool {
        (**self).is_independent(x)
    }
}

/// A set verified to be a basis at construction time.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Basis {
    elements: GroundSubset,
}

impl Basis {
    /// Wraps `elements` after checking it really is a basis of `m`.
    pub fn new(m: &impl Matroid, elements: GroundSubset) -> Result<Self> {
        if elements.universe() != m.ground_size() {
            return Err(Error::malformed(format!(
                "basis universe {} does not match ground size {}",
                elements.universe(),
                m.ground_size()
            )));
        }
        if !m.is_basis(&elements) {
            return Err(Error::precondition(format!(
                "{elements:?} is not a basis"
            )));
        }
        Ok(Basis { elements })
    }

    /// Wraps a set already known to be a basis (callers inside this crate
    /// only, where basis-ness is an established invariant).
    pub(crate) fn new_unchecked(elements: GroundSubset) -> Self {
        Basis { elements }
    }

    /// The underlying element set.
    pub fn as_set(&self) -> &GroundSubset {
        &self.elements
    }

    /// Consumes the basis, returning the element set.
    pub fn into_set(self) -> GroundSubset {
        self.elements
    }
}

impl std::ops::Deref for Basis {
    type Target = GroundSubset;

    fn deref(&self) -> &GroundSubset {
        &self.elements
    }
}

/// Wrapper that counts independence-oracle calls made through it.
///
/// Used by tests that assert query-complexity bounds.
pub struct CountingMatroid<'a, M: Matroid> {
    inner: &'a M,
    calls: AtomicU64,
}

impl<'a, M: Matroid> CountingMatroid<'a, M> {
    /// Wraps `inner` with a fresh zeroed counter.
    pub fn new(inner: &'a M) -> Self {
        CountingMatroid {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    /// Number of `is_independent` calls made so far.
    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    /// Resets the counter to zero.
    pub fn reset(&self) {
        self.calls.store(0, Ordering::Relaxed);
    }
}

impl<M: Matroid> Matroid for CountingMatroid<'_, M> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, x: &GroundSubset) -> bool {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.is_independent(x)
    }
}

/// The unique circuit inside `b + f`, for an independent set `b` with
/// `b + f` dependent: `{f} ∪ {e ∈ b : b − e + f independent}`.
///
/// Returns `None` when `b + f` is independent (no circuit to report).
pub(crate) fn circuit_with_independent(
    m: &impl Matroid,
    b: &GroundSubset,
    f: usize,
) -> Option<GroundSubset> {
    let with_f = b.plus(f);
    if m.is_independent(&with_f) {
        return None;
    }
    let mut circuit = GroundSubset::singleton(b.universe(), f);
    for e in b.iter() {
        if m.is_independent(&with_f.minus(e)) {
            circuit.insert(e);
        }
    }
    Some(circuit)
}

/// The fundamental circuit `C(b, f)`: the unique circuit contained in
/// `b + f`, equal to `{f} ∪ {e ∈ b : b − e + f is a basis}`.
pub fn fundamental_circuit(m: &impl Matroid, b: &Basis, f: usize) -> Result<GroundSubset> {
    if !m.is_basis(b.as_set()) {
        return Err(Error::precondition(
            "fundamental_circuit requires a basis of this matroid",
        ));
    }
    if b.contains(f) {
        return Err(Error::precondition(format!(
            "fundamental_circuit requires f outside the basis, got f = {f}"
        )));
    }
    // A basis plus any outside element is dependent, so the circuit exists.
    circuit_with_independent(m, b.as_set(), f)
        .ok_or_else(|| Error::internal("basis plus outside element reported independent"))
}

/// A bijection `φ : b1∖b2 → b2∖b1` such that `b1 − e + φ(e)` is a basis for
/// every `e`, returned as pairs `(e, φ(e))` sorted ascending by `e`.
///
/// Found by maximum bipartite matching over the valid exchange pairs; such a
/// perfect matching always exists for two bases of the same matroid.
pub fn exchange_bijection(m: &impl Matroid, b1: &Basis, b2: &Basis) -> Result<Vec<(usize, usize)>> {
    if !m.is_basis(b1.as_set()) || !m.is_basis(b2.as_set()) {
        return Err(Error::precondition(
            "exchange_bijection requires two bases of this matroid",
        ));
    }
    let left: Vec<usize> = b1.difference(b2).iter().collect();
    let right: Vec<usize> = b2.difference(b1).iter().collect();
    // |b1∖b2| = |b2∖b1| because all bases share the same size.
    let valid: Vec<Vec<bool>> = left
        .iter()
        .map(|&e| {
            right
                .iter()
                .map(|&f| m.is_independent(&b1.minus(e).plus(f)))
                .collect()
        })
        .collect();

    // Kuhn's augmenting-path algorithm; `match_right[j]` holds the index
    // into `left` currently matched to `right[j]`.
    let mut match_right: Vec<Option<usize>> = vec![None; right.len()];

    fn augment(
        i: usize,
        valid: &[Vec<bool>],
        visited: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for j in 0..valid[i].len() {
            if valid[i][j] && !visited[j] {
                visited[j] = true;
                if match_right[j].is_none()
                    || augment(match_right[j].unwrap(), valid, visited, match_right)
                {
                    match_right[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }

    for i in 0..left.len() {
        let mut visited = vec![false; right.len()];
        if !augment(i, &valid, &mut visited, &mut match_right) {
            return Err(Error::internal(
                "no perfect matching in the exchange-validity graph",
            ));
        }
    }

    let mut pairs: Vec<(usize, usize)> = match_right
        .iter()
        .enumerate()
        .map(|(j, i)| (left[i.unwrap()], right[j]))
        .collect();
    pairs.sort_unstable();
    Ok(pairs)
}

/// Disjoint-set forest used for component and acyclicity computations.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Merges the two classes; returns false when already merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Connected components of the restriction of `m` to `scope`, expressed in
/// the original element indices and sorted by smallest member.
///
/// Computed by fixing a maximum independent subset `B` of `scope` and
/// union-finding over the fundamental circuits `C(B, e)` for `e ∈ scope∖B`;
/// loops and coloops of the restriction end up as singletons.
pub fn connected_components_within(m: &impl Matroid, scope: &GroundSubset) -> Vec<GroundSubset> {
    let b = m.max_independent_subset(scope);
    let mut uf = UnionFind::new(m.ground_size());
    for e in scope.difference(&b).iter() {
        // B is maximal independent within scope, so B + e is dependent and
        // the circuit exists; for a loop it is the singleton {e}.
        let circuit = circuit_with_independent(m, &b, e)
            .expect("maximal independent subset plus scope element must be dependent");
        let anchor = circuit.min_element().unwrap();
        for x in circuit.iter() {
            uf.union(anchor, x);
        }
    }

    let mut by_root: Vec<(usize, GroundSubset)> = Vec::new();
    for e in scope.iter() {
        let root = uf.find(e);
        match by_root.iter_mut().find(|(r, _)| *r == root) {
            Some((_, comp)) => comp.insert(e),
            None => by_root.push((root, GroundSubset::singleton(m.ground_size(), e))),
        }
    }
    let mut components: Vec<GroundSubset> = by_root.into_iter().map(|(_, c)| c).collect();
    components.sort_by_key(|c| c.min_element().unwrap());
    components
}

/// Connected components of the whole matroid; see
/// [`connected_components_within`].
pub fn connected_components(m: &impl Matroid) -> Vec<GroundSubset> {
    connected_components_within(m, &m.full_ground())
}

/// A basis of `m` contained in `within`, if one exists.
///
/// A basis fits inside `within` exactly when `rank(within) = rank(S)`; in
/// that case the greedy maximum independent subset of `within` is returned.
pub fn find_basis(m: &impl Matroid, within: &GroundSubset) -> Option<Basis> {
    let candidate = m.max_independent_subset(within);
    if candidate.len() == m.rank_full() {
        Some(Basis::new_unchecked(candidate))
    } else {
        None
    }
}
