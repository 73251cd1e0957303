//! Convex regions in V-representation: finite lists of exact rational
//! generator points. The empty generator list is the empty region.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::lp::feasible;
use super::matrix::{midpoint, Q};
use super::GeometryError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub dim: usize,
    /// Canonical: sorted lexicographically, deduplicated.
    pub generators: Vec<Vec<Q>>,
    /// All generators are standard basis vectors; hull intersections of
    /// such regions reduce to generator-set intersections.
    pub one_hot: bool,
}

fn is_basis_vector(v: &[Q]) -> bool {
    let mut ones = 0;
    for x in v {
        if x.is_one() {
            ones += 1;
        } else if !x.is_zero() {
            return false;
        }
    }
    ones == 1
}

impl Region {
    pub fn empty(dim: usize) -> Self {
        Region {
            dim,
            generators: Vec::new(),
            one_hot: true,
        }
    }

    pub fn from_generators(dim: usize, mut gens: Vec<Vec<Q>>) -> Result<Self, GeometryError> {
        for g in &gens {
            if g.len() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
        }
        gens.sort();
        gens.dedup();
        let one_hot = gens.iter().all(|g| is_basis_vector(g));
        Ok(Region {
            dim,
            generators: gens,
            one_hot,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Exact hull membership: `p` is a convex combination of the
    /// generators, decided by rational linear feasibility
    /// (`λ >= 0, Σλ = 1, Gλ = p`).
    pub fn contains_point(&self, p: &[Q]) -> Result<bool, GeometryError> {
        if p.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        if self.generators.iter().any(|g| g.as_slice() == p) {
            return Ok(true);
        }
        let n = self.generators.len();
        let mut a: Vec<Vec<Q>> = Vec::with_capacity(self.dim + 1);
        for d in 0..self.dim {
            a.push((0..n).map(|k| self.generators[k][d].clone()).collect());
        }
        a.push((0..n).map(|_| Q::one()).collect());
        let mut b: Vec<Q> = p.to_vec();
        b.push(Q::one());
        Ok(feasible(&a, &b))
    }

    /// Midpoints of all generator pairs (used for convexity spot checks
    /// and probe sets).
    pub fn generator_midpoints(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            for h in &self.generators[i + 1..] {
                out.push(midpoint(g, h));
            }
        }
        out
    }

    /// Hull intersection on the one-hot family: the intersection of hulls
    /// of subsets of an affinely independent set is the hull of the
    /// intersection of the subsets.
    pub fn intersect_one_hot(&self, other: &Region) -> Option<Region> {
        if !self.one_hot || !other.one_hot || self.dim != other.dim {
            return None;
        }
        let gens: Vec<Vec<Q>> = self
            .generators
            .iter()
            .filter(|g| other.generators.contains(g))
            .cloned()
            .collect();
        Some(Region {
            dim: self.dim,
            generators: gens,
            one_hot: true,
        })
    }
}

/// Exact emptiness of the hull intersection: feasibility of
/// `G λ = H μ, λ,μ >= 0, Σλ = Σμ = 1`.
pub fn regions_disjoint(r1: &Region, r2: &Region) -> Result<bool, GeometryError> {
    if r1.dim != r2.dim {
        return Err(GeometryError::DimensionMismatch {
            expected: r1.dim,
            got: r2.dim,
        });
    }
    if r1.is_empty() || r2.is_empty() {
        return Ok(true);
    }
    let n1 = r1.generators.len();
    let n2 = r2.generators.len();
    let mut a: Vec<Vec<Q>> = Vec::with_capacity(r1.dim + 2);
    for d in 0..r1.dim {
        let mut row: Vec<Q> = Vec::with_capacity(n1 + n2);
        for k in 0..n1 {
            row.push(r1.generators[k][d].clone());
        }
        for k in 0..n2 {
            row.push(-r2.generators[k][d].clone());
        }
        a.push(row);
    }
    let mut ones1: Vec<Q> = Vec::with_capacity(n1 + n2);
    let mut ones2: Vec<Q> = Vec::with_capacity(n1 + n2);
    for _ in 0..n1 {
        ones1.push(Q::one());
        ones2.push(Q::zero());
    }
    for _ in 0..n2 {
        ones1.push(Q::zero());
        ones2.push(Q::one());
    }
    a.push(ones1);
    a.push(ones2);
    let mut b: Vec<Q> = (0..r1.dim).map(|_| Q::zero()).collect();
    b.push(Q::one());
    b.push(Q::one());
    Ok(!feasible(&a, &b))
}
