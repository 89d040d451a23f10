//! Simplicial cones and fans with exact membership and completeness tests.
//!
//! A [`Fan`] stores a deduplicated, lexicographically sorted list of primitive
//! integer rays and its maximal cones as sorted index sets. Every maximal cone
//! must be full-dimensional; lower faces are implicit.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gvec::SeedGraph;
use crate::linalg;
use crate::matrix::{IntMatrix, Vector};

/// Divides a nonzero integer vector by the gcd of its entries.
pub fn primitive(v: &[BigInt]) -> Option<Vector> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / &g).collect())
}

/// A cone spanned by linearly independent primitive rays, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialCone {
    rays: Vec<Vector>,
}

impl SimplicialCone {
    /// Normalizes the generators to primitive vectors in lexicographic order.
    /// Fails if a generator is zero or the generators are dependent.
    pub fn new(generators: Vec<Vector>) -> Result<Self> {
        let dim = generators.first().map_or(0, Vec::len);
        let mut rays = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            rays.push(primitive(g).ok_or(Error::RaysDependent)?);
        }
        rays.sort();
        if rays.len() > dim {
            return Err(Error::RaysDependent);
        }
        // Independent iff the Gram matrix is nonsingular.
        let k = rays.len();
        let mut gram = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                let dot: BigInt = rays[i].iter().zip(&rays[j]).map(|(a, b)| a * b).sum();
                gram.set(i, j, dot);
            }
        }
        if linalg::determinant(&gram).is_zero() {
            return Err(Error::RaysDependent);
        }
        Ok(SimplicialCone { rays })
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rays.first().map_or(0, Vec::len)
    }

    /// The positive orthant spanned by the standard basis of `Z^n`.
    pub fn orthant(n: usize) -> Self {
        let id = IntMatrix::identity(n);
        SimplicialCone::new((0..n).map(|i| id.column(i)).collect()).expect("basis is independent")
    }
}

/// Completeness status carried by a fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Completeness {
    Complete,
    Incomplete,
    Unknown,
}

impl Completeness {
    pub fn as_option(self) -> Option<bool> {
        match self {
            Completeness::Complete => Some(true),
            Completeness::Incomplete => Some(false),
            Completeness::Unknown => None,
        }
    }

    pub fn from_option(flag: Option<bool>) -> Self {
        match flag {
            Some(true) => Completeness::Complete,
            Some(false) => Completeness::Incomplete,
            None => Completeness::Unknown,
        }
    }
}

/// Precomputed data for membership in one full-dimensional cone: with `G` the
/// ray matrix, a point `p` is inside iff `sign(det G) * adj(G) p >= 0`.
#[derive(Clone, Debug)]
struct ConeSolver {
    adjugate: IntMatrix,
    det: BigInt,
    small: Option<Vec<i64>>,
}

impl ConeSolver {
    fn new(rays: &[Vector]) -> Result<Self> {
        let g = IntMatrix::from_columns(rays)?;
        let det = linalg::determinant(&g);
        if det.is_zero() {
            return Err(Error::RaysDependent);
        }
        let mut adjugate = linalg::adjugate(&g);
        if det.is_negative() {
            for i in 0..adjugate.rows() {
                for j in 0..adjugate.cols() {
                    let v = -adjugate.get(i, j);
                    adjugate.set(i, j, v);
                }
            }
        }
        let det = det.abs();
        let small = adjugate
            .to_rows()
            .into_iter()
            .flatten()
            .map(|x| x.to_i64())
            .collect::<Option<Vec<_>>>();
        Ok(ConeSolver {
            adjugate,
            det,
            small,
        })
    }

    fn numerators(&self, p: &[BigInt]) -> Vec<BigInt> {
        (0..self.adjugate.rows())
            .map(|i| self.adjugate.row(i).iter().zip(p).map(|(a, x)| a * x).sum())
            .collect()
    }

    fn contains(&self, p: &[BigInt]) -> bool {
        self.numerators(p).iter().all(|x| !x.is_negative())
    }

    fn contains_small(&self, p: &[i64]) -> Option<bool> {
        let adj = self.small.as_ref()?;
        let n = p.len();
        Some(adj.chunks(n).all(|row| {
            row.iter()
                .zip(p)
                .map(|(&a, &x)| a as i128 * x as i128)
                .sum::<i128>()
                >= 0
        }))
    }
}

/// Result of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `p = sum_i coefficients[i] * rays[cone[i]]` with nonnegative coefficients.
    Inside {
        cone: usize,
        coefficients: Vec<BigRational>,
    },
    Outside,
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }
}

/// Why a fan failed the completeness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    Empty,
    /// A facet (as sorted global ray indices) lying in only one maximal cone.
    UnmatchedFacet(Vec<usize>),
    /// A facet shared by more than two maximal cones; not a valid fan.
    OvermatchedFacet {
        facet: Vec<usize>,
        count: usize,
    },
    /// Facets pair up but the cones split into several adjacency components.
    Disconnected {
        components: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessReport {
    Complete,
    Incomplete(Defect),
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        matches!(self, CompletenessReport::Complete)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeCover {
    /// Every lattice point of the box lies in some cone.
    Covered { points: u64 },
    /// The lexicographically first lattice point outside the support.
    Missing(Vector),
}

impl LatticeCover {
    pub fn is_covered(&self) -> bool {
        matches!(self, LatticeCover::Covered { .. })
    }
}

/// A pure simplicial fan of full-dimensional cones.
#[derive(Clone)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vector>,
    cones: Vec<Vec<usize>>,
    completeness: Completeness,
    solvers: Vec<ConeSolver>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.rays == other.rays
            && self.cones == other.cones
            && self.completeness == other.completeness
    }
}

impl Eq for Fan {}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fan")
            .field("dim", &self.dim)
            .field("rays", &self.rays)
            .field("cones", &self.cones)
            .field("completeness", &self.completeness)
            .finish()
    }
}

impl Fan {
    /// Builds the canonical fan with the given maximal cones. Duplicates are
    /// dropped; each cone must have exactly `dim` rays in `Z^dim`.
    pub fn new<I>(dim: usize, cones: I, completeness: Completeness) -> Result<Self>
    where
        I: IntoIterator<Item = SimplicialCone>,
    {
        let cones: BTreeSet<SimplicialCone> = cones.into_iter().collect();
        for c in &cones {
            if c.ambient_dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.ambient_dim(),
                });
            }
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.dim(),
                });
            }
        }
        let rays: Vec<Vector> = cones
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let position: HashMap<&Vector, usize> =
            rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut index_sets: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c.rays().iter().map(|r| position[r]).collect();
                idx.sort_unstable();
                idx
            })
            .collect();
        index_sets.sort();
        let solvers = index_sets
            .iter()
            .map(|idx| {
                let cone_rays: Vec<Vector> = idx.iter().map(|&i| rays[i].clone()).collect();
                ConeSolver::new(&cone_rays)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Fan {
            dim,
            rays,
            cones: index_sets,
            completeness,
            solvers,
        })
    }

    /// Rebuilds a fan from a ray list and index sets, re-canonicalizing.
    pub fn from_parts(
        dim: usize,
        rays: &[Vector],
        cones: &[Vec<usize>],
        completeness: Completeness,
    ) -> Result<Self> {
        let mut out = Vec::with_capacity(cones.len());
        for idx in cones {
            let mut gens = Vec::with_capacity(idx.len());
            for &i in idx {
                let r = rays.get(i).ok_or(Error::IndexOutOfRange {
                    k: i,
                    n: rays.len(),
                })?;
                gens.push(r.clone());
            }
            out.push(SimplicialCone::new(gens)?);
        }
        Fan::new(dim, out, completeness)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    /// Maximal cones as sorted index sets into [`Fan::rays`].
    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> SimplicialCone {
        SimplicialCone {
            rays: self.cones[i]
                .iter()
                .map(|&r| self.rays[r].clone())
                .collect(),
        }
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn with_completeness(mut self, completeness: Completeness) -> Self {
        self.completeness = completeness;
        self
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// First maximal cone (canonical order) containing the lattice point.
    pub fn contains_lattice_point(&self, p: &[BigInt]) -> Result<Membership> {
        self.check_dim(p.len())?;
        Ok(self.locate(p, &BigInt::one()))
    }

    /// First maximal cone (canonical order) containing the rational point.
    /// The origin lies in every cone.
    pub fn contains_point(&self, p: &[BigRational]) -> Result<Membership> {
        self.check_dim(p.len())?;
        let scale = p.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<BigInt> = p.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
        Ok(self.locate(&scaled, &scale))
    }

    fn locate(&self, p: &[BigInt], scale: &BigInt) -> Membership {
        for (idx, solver) in self.solvers.iter().enumerate() {
            let num = solver.numerators(p);
            if num.iter().all(|x| !x.is_negative()) {
                let denom = &solver.det * scale;
                let coefficients = num
                    .into_iter()
                    .map(|x| BigRational::new(x, denom.clone()))
                    .collect();
                return Membership::Inside {
                    cone: idx,
                    coefficients,
                };
            }
        }
        Membership::Outside
    }

    /// Indices of every maximal cone containing the lattice point.
    pub fn cones_containing(&self, p: &[BigInt]) -> Result<Vec<usize>> {
        self.check_dim(p.len())?;
        Ok(self
            .solvers
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(p))
            .map(|(i, _)| i)
            .collect())
    }

    fn covers_small(&self, p: &[i64]) -> bool {
        self.solvers.iter().any(|s| match s.contains_small(p) {
            Some(inside) => inside,
            None => {
                let big: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
                s.contains(&big)
            }
        })
    }

    /// Facet-pairing completeness test.
    ///
    /// Each maximal cone contributes its `n` facets, keyed by the sorted set
    /// of global ray indices. The fan is complete iff every facet lies in
    /// exactly two maximal cones and the facet-adjacency graph is connected.
    /// For `n = 1` the only facet is the origin, so this reduces to both rays
    /// `+1` and `-1` being present.
    pub fn check_complete(&self) -> CompletenessReport {
        if self.cones.is_empty() {
            return CompletenessReport::Incomplete(Defect::Empty);
        }
        let mut facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (ci, cone) in self.cones.iter().enumerate() {
            for skip in 0..cone.len() {
                let facet: Vec<usize> = cone
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &r)| r)
                    .collect();
                facets.entry(facet).or_default().push(ci);
            }
        }
        for (facet, owners) in &facets {
            match owners.len() {
                2 => {}
                1 => return CompletenessReport::Incomplete(Defect::UnmatchedFacet(facet.clone())),
                count => {
                    return CompletenessReport::Incomplete(Defect::OvermatchedFacet {
                        facet: facet.clone(),
                        count,
                    })
                }
            }
        }
        let components = adjacency_components(self.cones.len(), facets.values());
        if components == 1 {
            CompletenessReport::Complete
        } else {
            CompletenessReport::Incomplete(Defect::Disconnected { components })
        }
    }

    /// Scans `[-radius, radius]^n` in lexicographic order for a lattice point
    /// outside the support.
    pub fn lattice_cover(&self, radius: u32) -> LatticeCover {
        let r = i64::from(radius);
        let n = self.dim;
        let mut point = vec![-r; n];
        let mut count = 0u64;
        loop {
            count += 1;
            if !self.covers_small(&point) {
                return LatticeCover::Missing(point.iter().map(|&x| BigInt::from(x)).collect());
            }
            // odometer, last coordinate fastest
            let mut i = n;
            loop {
                if i == 0 {
                    return LatticeCover::Covered { points: count };
                }
                i -= 1;
                if point[i] < r {
                    point[i] += 1;
                    break;
                }
                point[i] = -r;
            }
        }
    }
}

fn adjacency_components<'a>(
    count: usize,
    facet_owners: impl Iterator<Item = &'a Vec<usize>>,
) -> usize {
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = count;
    for owners in facet_owners {
        for pair in owners.windows(2) {
            let (a, b) = (find(&mut parent, pair[0]), find(&mut parent, pair[1]));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components
}

/// The fan of all distinct g-cones in a seed graph.
///
/// Exhausted graphs get their completeness flag from the facet test;
/// truncated ones are marked [`Completeness::Unknown`].
pub fn build_fan(graph: &SeedGraph) -> Result<Fan> {
    let fan = Fan::new(
        graph.ambient().rank(),
        graph.cones()?,
        Completeness::Unknown,
    )?;
    if graph.is_exhausted() {
        let flag = if fan.check_complete().is_complete() {
            Completeness::Complete
        } else {
            Completeness::Incomplete
        };
        Ok(fan.with_completeness(flag))
    } else {
        Ok(fan)
    }
}
