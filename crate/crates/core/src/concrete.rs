//! Concrete matroid classes and the combinators that derive new matroids
//! from existing ones (direct sum, dual, restriction, contraction).
//!
//! All constructors validate their arguments; a successfully built
//! [`ConcreteMatroid`] always satisfies the matroid axioms.

use crate::error::{Error, Result};
use crate::matroid::{Matroid, UnionFind};
use crate::set::GroundSubset;
use crate::weights::Rational;
use num_traits::Zero;

/// A validated concrete matroid.
#[derive(Clone, Debug)]
pub struct ConcreteMatroid {
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    /// Independent iff the subset has at most `r` elements.
    Uniform { n: usize, r: usize },
    /// Independent iff each block's intersection stays within its capacity;
    /// elements covered by no block are unconstrained.
    Partition {
        ground: usize,
        blocks: Vec<GroundSubset>,
        capacities: Vec<usize>,
    },
    /// Independent iff the edge subset is acyclic (self-loops are loops).
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Independent iff the selected columns are linearly independent over
    /// the rationals; `columns[e]` is the column of element `e`.
    LinearRational { columns: Vec<Vec<Rational>> },
    /// Disjoint union; `offsets[i]` is the first global index of part `i`.
    DirectSum {
        parts: Vec<ConcreteMatroid>,
        offsets: Vec<usize>,
        ground: usize,
    },
    /// Independent iff the complement spans the inner matroid.
    Dual {
        inner: Box<ConcreteMatroid>,
        inner_rank: usize,
    },
    /// Inner matroid restricted to `keep` (re-indexed to 0..keep.len()).
    Restriction {
        inner: Box<ConcreteMatroid>,
        keep: Vec<usize>,
    },
    /// Inner matroid contracted to `keep`: everything outside `keep` is
    /// contracted, using a fixed maximum independent subset of it.
    Contraction {
        inner: Box<ConcreteMatroid>,
        keep: Vec<usize>,
        contracted_base: GroundSubset,
    },
}

impl ConcreteMatroid {
    /// The uniform matroid: subsets of at most `r` of `n` elements.
    pub fn uniform(n: usize, r: usize) -> Result<Self> {
        if r > n {
            return Err(Error::malformed(format!(
                "uniform matroid rank {r} exceeds ground size {n}"
            )));
        }
        Ok(ConcreteMatroid {
            repr: Repr::Uniform { n, r },
        })
    }

    /// The partition matroid over `ground` elements with pairwise-disjoint
    /// `blocks` and per-block `capacities`; uncovered elements are free.
    pub fn partition(
        ground: usize,
        blocks: Vec<GroundSubset>,
        capacities: Vec<usize>,
    ) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return Err(Error::malformed(format!(
                "{} blocks but {} capacities",
                blocks.len(),
                capacities.len()
            )));
        }
        for block in &blocks {
            if block.universe() != ground {
                return Err(Error::malformed(format!(
                    "block universe {} does not match ground size {ground}",
                    block.universe()
                )));
            }
        }
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if !blocks[i].is_disjoint(&blocks[j]) {
                    return Err(Error::malformed(format!(
                        "partition blocks {i} and {j} overlap"
                    )));
                }
            }
        }
        Ok(ConcreteMatroid {
            repr: Repr::Partition {
                ground,
                blocks,
                capacities,
            },
        })
    }

    /// The graphic matroid of a multigraph on `vertices` vertices; element
    /// `e` is the edge `edges[e]`. Self-loops become matroid loops.
    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::malformed(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertices}"
                )));
            }
        }
        Ok(ConcreteMatroid {
            repr: Repr::Graphic { vertices, edges },
        })
    }

    /// The linear matroid of the given matrix over the rationals, one row
    /// per `rows` entry and one column per element.
    pub fn linear_rational(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != n) {
            return Err(Error::malformed("matrix rows have differing lengths"));
        }
        let columns = (0..n)
            .map(|c| rows.iter().map(|row| row[c].clone()).collect())
            .collect();
        Ok(ConcreteMatroid {
            repr: Repr::LinearRational { columns },
        })
    }

    /// The direct sum of the given matroids, ground sets concatenated in
    /// order.
    pub fn direct_sum(parts: Vec<ConcreteMatroid>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(parts.len());
        let mut ground = 0;
        for part in &parts {
            offsets.push(ground);
            ground += part.ground_size();
        }
        Ok(ConcreteMatroid {
            repr: Repr::DirectSum {
                parts,
                offsets,
                ground,
            },
        })
    }

    /// The dual matroid: a set is independent iff its complement spans the
    /// inner matroid.
    pub fn dual(inner: ConcreteMatroid) -> Self {
        let inner_rank = inner.rank_full();
        ConcreteMatroid {
            repr: Repr::Dual {
                inner: Box::new(inner),
                inner_rank,
            },
        }
    }

    /// The restriction of `inner` to `keep`, re-indexed so the kept
    /// elements become `0..keep.len()` in ascending original order.
    pub fn restriction(inner: ConcreteMatroid, keep: &GroundSubset) -> Result<Self> {
        if keep.universe() != inner.ground_size() {
            return Err(Error::malformed(format!(
                "restriction set universe {} does not match ground size {}",
                keep.universe(),
                inner.ground_size()
            )));
        }
        Ok(ConcreteMatroid {
            repr: Repr::Restriction {
                inner: Box::new(inner),
                keep: keep.iter().collect(),
            },
        })
    }

    /// The contraction of `inner` onto `keep`: the complement of `keep` is
    /// contracted, re-indexing as in [`ConcreteMatroid::restriction`].
    pub fn contraction(inner: ConcreteMatroid, keep: &GroundSubset) -> Result<Self> {
        if keep.universe() != inner.ground_size() {
            return Err(Error::malformed(format!(
                "contraction set universe {} does not match ground size {}",
                keep.universe(),
                inner.ground_size()
            )));
        }
        let contracted_base = inner.max_independent_subset(&keep.complement());
        Ok(ConcreteMatroid {
            repr: Repr::Contraction {
                inner: Box::new(inner),
                keep: keep.iter().collect(),
                contracted_base,
            },
        })
    }
}

/// Whether the rational columns indexed by `chosen` are linearly
/// independent, via Gaussian elimination.
fn columns_independent(columns: &[Vec<Rational>], chosen: &GroundSubset) -> bool {
    // Reduced vectors found so far, each with its pivot row recorded.
    let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new();
    for e in chosen.iter() {
        let mut v = columns[e].clone();
        for (pivot, basis_vec) in &reduced {
            if !v[*pivot].is_zero() {
                let factor = &v[*pivot] / &basis_vec[*pivot];
                for (x, b) in v.iter_mut().zip(basis_vec) {
                    *x -= &factor * b;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => reduced.push((pivot, v)),
            None => return false,
        }
    }
    true
}

impl Matroid for ConcreteMatroid {
    fn ground_size(&self) -> usize {
        match &self.repr {
            Repr::Uniform { n, .. } => *n,
            Repr::Partition { ground, .. } => *ground,
            Repr::Graphic { edges, .. } => edges.len(),
            Repr::LinearRational { columns } => columns.len(),
            Repr::DirectSum { ground, .. } => *ground,
            Repr::Dual { inner, .. } => inner.ground_size(),
            Repr::Restriction { keep, .. } => keep.len(),
            Repr::Contraction { keep, .. } => keep.len(),
        }
    }

    fn is_independent(&self, x: &GroundSubset) -> bool {
        assert_eq!(
            x.universe(),
            self.ground_size(),
            "query universe does not match ground size"
        );
        match &self.repr {
            Repr::Uniform { r, .. } => x.len() <= *r,
            Repr::Partition {
                blocks, capacities, ..
            } => blocks
                .iter()
                .zip(capacities)
                .all(|(block, &cap)| x.intersection(block).len() <= cap),
            Repr::Graphic { vertices, edges } => {
                let mut uf = UnionFind::new(*vertices);
                x.iter().all(|e| {
                    let (u, v) = edges[e];
                    u != v && uf.union(u, v)
                })
            }
            Repr::LinearRational { columns } => columns_independent(columns, x),
            Repr::DirectSum {
                parts, offsets, ..
            } => parts.iter().zip(offsets).all(|(part, &offset)| {
                let local = GroundSubset::from_elements(
                    part.ground_size(),
                    x.iter()
                        .filter(|&e| e >= offset && e < offset + part.ground_size())
                        .map(|e| e - offset),
                );
                part.is_independent(&local)
            }),
            Repr::Dual { inner, inner_rank } => inner.rank(&x.complement()) == *inner_rank,
            Repr::Restriction { inner, keep } => {
                let mapped = GroundSubset::from_elements(
                    inner.ground_size(),
                    x.iter().map(|e| keep[e]),
                );
                inner.is_independent(&mapped)
            }
            Repr::Contraction {
                inner,
                keep,
                contracted_base,
            } => {
                let mapped = GroundSubset::from_elements(
                    inner.ground_size(),
                    x.iter().map(|e| keep[e]),
                );
                inner.is_independent(&mapped.union(contracted_base))
            }
        }
    }
}
