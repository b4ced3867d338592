//! Shared helpers for the integration suites: the nine-edge prism fixture
//! with its hand-checked optima, a seeded generator of small random
//! instances satisfying each variant's preconditions, and exhaustive
//! structural checks reused by the property and acceptance tests.

#![allow(dead_code)]

use invmat::{
    enumerate_bases, exchange_bijection, greedy_basis, rational_int, validate_instance,
    ConcreteMatroid, GroundSubset, Matroid, ProblemInstance, Rational, Sense, TieBreakPolicy,
    Variant, Weighting,
};
use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The triangular prism graph on six vertices; elements 0..9 are the edges
/// ab, ac, ae, ce, cd, db, df, bf, ef with a..f numbered 0..6.
pub fn prism() -> ConcreteMatroid {
    ConcreteMatroid::graphic(
        6,
        vec![
            (0, 1),
            (0, 2),
            (0, 4),
            (2, 4),
            (2, 3),
            (3, 1),
            (3, 5),
            (1, 5),
            (4, 5),
        ],
    )
    .unwrap()
}

pub fn prism_weights() -> Weighting {
    Weighting::from_i64s(&[7, 0, 0, 1, 6, 6, 3, 1, 6])
}

/// Every prism edge except ab and ef.
pub fn prism_s0() -> GroundSubset {
    GroundSubset::from_elements(9, 1..=7)
}

/// A uniform, partition, graphic, or linear matroid of desk-checkable size
/// (ground set at most eight elements), drawn uniformly over the four kinds.
pub fn random_matroid(rng: &mut ChaCha8Rng) -> ConcreteMatroid {
    match rng.random_range(0..4u32) {
        0 => {
            let n = rng.random_range(1..=8);
            let r = rng.random_range(0..=n);
            ConcreteMatroid::uniform(n, r).unwrap()
        }
        1 => random_partition(rng),
        2 => random_graphic(rng),
        _ => random_linear(rng),
    }
}

fn random_partition(rng: &mut ChaCha8Rng) -> ConcreteMatroid {
    let n = rng.random_range(1..=8usize);
    let block_count = rng.random_range(1..=3usize);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); block_count];
    for e in 0..n {
        // One slot past the last block leaves the element outside every block.
        let slot = rng.random_range(0..=block_count);
        if slot < block_count {
            members[slot].push(e);
        }
    }
    let mut blocks = Vec::new();
    let mut capacities = Vec::new();
    for list in members {
        if list.is_empty() {
            continue;
        }
        let cap = rng.random_range(0..=list.len().min(3));
        blocks.push(GroundSubset::from_elements(n, list));
        capacities.push(cap);
    }
    ConcreteMatroid::partition(n, blocks, capacities).unwrap()
}

fn random_graphic(rng: &mut ChaCha8Rng) -> ConcreteMatroid {
    let vertices = rng.random_range(2..=6usize);
    let edge_count = rng.random_range(1..=8usize);
    let edges = (0..edge_count)
        .map(|_| {
            (
                rng.random_range(0..vertices),
                rng.random_range(0..vertices),
            )
        })
        .collect();
    ConcreteMatroid::graphic(vertices, edges).unwrap()
}

fn random_linear(rng: &mut ChaCha8Rng) -> ConcreteMatroid {
    let rows = rng.random_range(1..=4usize);
    let cols = rng.random_range(1..=8usize);
    let matrix = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| rational_int(rng.random_range(-2..=2)))
                .collect()
        })
        .collect();
    ConcreteMatroid::linear_rational(matrix).unwrap()
}

/// Integer weights drawn uniformly from -9..=9.
pub fn random_weights(rng: &mut ChaCha8Rng, n: usize) -> Weighting {
    let values: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
    Weighting::from_i64s(&values)
}

/// Each element kept with probability one half, with an occasional fully
/// empty or full draw so boundary subsets stay represented.
pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> GroundSubset {
    match rng.random_range(0..20u32) {
        0 => GroundSubset::full(n),
        1 => GroundSubset::empty(n),
        _ => GroundSubset::from_elements(n, (0..n).filter(|_| rng.random_bool(0.5))),
    }
}

/// A random instance of `variant` whose constraint set passes validation.
/// The target-basis variant samples a greedy basis under throwaway weights;
/// the rest rejection-sample subsets, redrawing the matroid if forty
/// candidate subsets all fail the variant's structural precondition.
pub fn random_instance(rng: &mut ChaCha8Rng, variant: Variant, integral: bool) -> ProblemInstance {
    loop {
        let matroid = random_matroid(rng);
        let n = matroid.ground_size();
        let weights = random_weights(rng, n);
        for _ in 0..40 {
            let s0 = if variant == Variant::Im {
                let probe = random_weights(rng, n);
                greedy_basis(&matroid, &probe, &TieBreakPolicy::plain(), Sense::Max).into_set()
            } else {
                random_subset(rng, n)
            };
            let candidate = ProblemInstance {
                matroid: matroid.clone(),
                s0,
                weights: weights.clone(),
                variant,
                integral,
            };
            if validate_instance(&candidate).is_ok() {
                return candidate;
            }
        }
    }
}

/// All subsets of 0..n in mask order.
pub fn subsets(n: usize) -> impl Iterator<Item = GroundSubset> {
    (0u64..1u64 << n).map(move |mask| mask_subset(n, mask))
}

pub fn mask_subset(n: usize, mask: u64) -> GroundSubset {
    GroundSubset::from_elements(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

/// Checks the three independence axioms over every subset (and every subset
/// pair for augmentation); panics with context on the first violation.
pub fn assert_independence_axioms(m: &impl Matroid) {
    let n = m.ground_size();
    assert!(n <= 12, "exhaustive axiom check wants a small ground set");
    let sets: Vec<GroundSubset> = subsets(n).collect();
    let indep: Vec<bool> = sets.iter().map(|x| m.is_independent(x)).collect();
    assert!(indep[0], "the empty set must be independent");
    for (x, &ok) in sets.iter().zip(&indep) {
        if !ok {
            continue;
        }
        for e in x.iter() {
            assert!(
                m.is_independent(&x.minus(e)),
                "downward closure fails: {x:?} is independent but {x:?} minus {e} is not"
            );
        }
    }
    for (x, &x_ok) in sets.iter().zip(&indep) {
        if !x_ok {
            continue;
        }
        for (y, &y_ok) in sets.iter().zip(&indep) {
            if !y_ok || y.len() <= x.len() {
                continue;
            }
            let found = y
                .iter()
                .any(|e| !x.contains(e) && m.is_independent(&x.plus(e)));
            assert!(found, "augmentation fails from {x:?} into {y:?}");
        }
    }
}

/// rank(A ∪ B) + rank(A ∩ B) <= rank(A) + rank(B) over every mask pair.
pub fn assert_rank_submodular(m: &impl Matroid) {
    let n = m.ground_size();
    assert!(n <= 8, "exhaustive submodularity check wants a small ground set");
    let ranks: Vec<usize> = (0u64..1 << n).map(|a| m.rank(&mask_subset(n, a))).collect();
    for a in 0u64..1 << n {
        for b in a..1 << n {
            assert!(
                ranks[(a | b) as usize] + ranks[(a & b) as usize]
                    <= ranks[a as usize] + ranks[b as usize],
                "submodularity fails at masks {a:#b}, {b:#b}"
            );
        }
    }
}

/// Closure is extensive, monotone, and idempotent over every subset.
pub fn assert_closure_laws(m: &impl Matroid) {
    let n = m.ground_size();
    assert!(n <= 8, "exhaustive closure check wants a small ground set");
    let closures: Vec<GroundSubset> = (0u64..1 << n)
        .map(|a| m.closure(&mask_subset(n, a)))
        .collect();
    for a in 0u64..1 << n {
        let x = mask_subset(n, a);
        let cl = &closures[a as usize];
        assert!(x.is_subset_of(cl), "closure is not extensive at {x:?}");
        assert_eq!(m.closure(cl), *cl, "closure is not idempotent at {x:?}");
        // Every superset mask, by adding one free bit at a time.
        for bit in 0..n as u64 {
            let b = a | 1 << bit;
            if b != a {
                assert!(
                    cl.is_subset_of(&closures[b as usize]),
                    "closure is not monotone between {a:#b} and {b:#b}"
                );
            }
        }
    }
}

/// The double dual agrees with the original on every subset.
pub fn assert_dual_involution(m: &ConcreteMatroid) {
    let n = m.ground_size();
    assert!(n <= 10, "exhaustive dual check wants a small ground set");
    let double = ConcreteMatroid::dual(ConcreteMatroid::dual(m.clone()));
    for x in subsets(n) {
        assert_eq!(
            m.is_independent(&x),
            double.is_independent(&x),
            "double dual disagrees at {x:?}"
        );
    }
}

/// Every exchange bijection between enumerated basis pairs is a bijection of
/// the symmetric difference whose single swaps all yield bases.
pub fn assert_exchange_bijections(m: &impl Matroid, max_pairs: usize) {
    let list = enumerate_bases(m, 12).unwrap();
    let mut seen = 0usize;
    'outer: for b1 in &list.bases {
        for b2 in &list.bases {
            if seen >= max_pairs {
                break 'outer;
            }
            seen += 1;
            let pairs = exchange_bijection(m, b1, b2).unwrap();
            let only_b1 = b1.as_set().difference(b2.as_set());
            let only_b2 = b2.as_set().difference(b1.as_set());
            assert_eq!(pairs.len(), only_b1.len(), "bijection misses elements");
            let mut used = GroundSubset::empty(m.ground_size());
            for &(e, f) in &pairs {
                assert!(only_b1.contains(e), "left side {e} is not exclusive to b1");
                assert!(only_b2.contains(f), "right side {f} is not exclusive to b2");
                assert!(!used.contains(f), "right side {f} is matched twice");
                used.insert(f);
                let swapped = b1.as_set().minus(e).plus(f);
                assert!(
                    m.is_basis(&swapped),
                    "swap {e}->{f} between {b1:?} and {b2:?} is not a basis"
                );
            }
        }
    }
}

/// Connected components of `scope` computed straight from the definition:
/// the transitive closure of "appears in a common circuit inside `scope`",
/// with untouched elements as singletons, sorted by minimum element.
pub fn circuit_components_within(m: &impl Matroid, scope: &GroundSubset) -> Vec<GroundSubset> {
    let n = m.ground_size();
    assert!(scope.len() <= 16, "circuit enumeration wants a small scope");
    let elements: Vec<usize> = scope.iter().collect();
    let k = elements.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for mask in 1u64..1 << k {
        let subset = GroundSubset::from_elements(
            n,
            (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| elements[i]),
        );
        if m.is_independent(&subset) {
            continue;
        }
        // Minimal dependent iff every one-element deletion is independent.
        let minimal = (0..k)
            .filter(|&i| mask >> i & 1 == 1)
            .all(|i| m.is_independent(&subset.minus(elements[i])));
        if !minimal {
            continue;
        }
        let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        for pair in members.windows(2) {
            let a = find(&mut parent, pair[0]);
            let b = find(&mut parent, pair[1]);
            parent[a] = b;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..k {
        let root = find(&mut parent, i);
        groups.entry(elements[root]).or_default().push(elements[i]);
    }
    let mut components: Vec<GroundSubset> = groups
        .into_values()
        .map(|list| GroundSubset::from_elements(n, list))
        .collect();
    components.sort_by_key(|c| c.iter().next().unwrap());
    components
}

/// Number of maximal spanning forests of a multigraph, via the matrix-tree
/// determinant evaluated per connected vertex component.
pub fn forest_count_by_determinant(vertices: usize, edges: &[(usize, usize)]) -> Rational {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let mut components: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..vertices {
        let root = find(&mut parent, v);
        components.entry(root).or_default().push(v);
    }
    let mut product = Rational::one();
    for members in components.values() {
        if members.len() == 1 {
            continue;
        }
        // Reduced Laplacian: drop the first vertex of the component.
        let index: std::collections::BTreeMap<usize, usize> = members
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let k = members.len() - 1;
        let mut lap = vec![vec![Rational::zero(); k]; k];
        for &(u, v) in edges {
            if u == v || !members.contains(&u) {
                continue;
            }
            if let Some(&i) = index.get(&u) {
                lap[i][i] += Rational::one();
            }
            if let Some(&j) = index.get(&v) {
                lap[j][j] += Rational::one();
            }
            if let (Some(&i), Some(&j)) = (index.get(&u), index.get(&v)) {
                lap[i][j] -= Rational::one();
                lap[j][i] -= Rational::one();
            }
        }
        product *= determinant(lap);
    }
    product
}

fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let k = a.len();
    let mut det = Rational::one();
    for col in 0..k {
        let Some(pivot_row) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot_row != col {
            a.swap(pivot_row, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= pivot.clone();
        for r in col + 1..k {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pivot;
            for c in col..k {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}
