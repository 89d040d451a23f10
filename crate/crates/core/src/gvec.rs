//! g-vector seeds and the labeled exchange graph.
//!
//! A seed pairs a `2n x n` extended matrix `C` with an ordered tuple of
//! g-vectors. All seeds of one enumeration share the ambient matrix `B` of the
//! initial seed: the mutation rule subtracts columns of that fixed `B`, never
//! of the current upper block of `C`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::SimplicialCone;
use crate::linalg;
use crate::matrix::{positive_part, ExchangeMatrix, ExtendedMatrix, IntMatrix, Vector};

/// Default cap on the number of labeled seeds an enumeration may produce.
pub const DEFAULT_SEED_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct GVectorSeed {
    ambient: Arc<ExchangeMatrix>,
    c_matrix: ExtendedMatrix,
    g_vectors: Vec<Vector>,
}

impl PartialEq for GVectorSeed {
    fn eq(&self, other: &Self) -> bool {
        self.c_matrix == other.c_matrix && self.g_vectors == other.g_vectors
    }
}

impl Eq for GVectorSeed {}

impl Hash for GVectorSeed {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c_matrix.hash(state);
        self.g_vectors.hash(state);
    }
}

impl GVectorSeed {
    /// `(B-hat, (e_1, ..., e_n))`.
    pub fn initial(ambient: Arc<ExchangeMatrix>) -> Self {
        let n = ambient.rank();
        let c_matrix = ExtendedMatrix::principal(&ambient);
        let g_vectors = (0..n).map(|i| IntMatrix::identity(n).column(i)).collect();
        GVectorSeed {
            ambient,
            c_matrix,
            g_vectors,
        }
    }

    /// Assembles a seed from parts, checking dimensions only.
    pub fn from_parts(
        ambient: Arc<ExchangeMatrix>,
        c_matrix: ExtendedMatrix,
        g_vectors: Vec<Vector>,
    ) -> Result<Self> {
        let n = ambient.rank();
        if c_matrix.rank() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c_matrix.rank(),
            });
        }
        if g_vectors.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g_vectors.len(),
            });
        }
        if let Some(g) = g_vectors.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.len(),
            });
        }
        Ok(GVectorSeed {
            ambient,
            c_matrix,
            g_vectors,
        })
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn ambient(&self) -> &Arc<ExchangeMatrix> {
        &self.ambient
    }

    pub fn c_matrix(&self) -> &ExtendedMatrix {
        &self.c_matrix
    }

    pub fn g_vectors(&self) -> &[Vector] {
        &self.g_vectors
    }

    /// Seed mutation at `k` (0-based).
    ///
    /// The new `g_k` is `-g_k + sum_i [c_ik]_+ g_i - sum_j [c_{n+j,k}]_+ b_j`,
    /// with `c` read before mutation and `b_j` the columns of the ambient `B`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { k, n });
        }
        let c = &self.c_matrix;
        let mut g_k: Vector = self.g_vectors[k].iter().map(|x| -x).collect();
        for i in 0..n {
            let coeff = positive_part(c.entry(i, k));
            if coeff.is_zero() {
                continue;
            }
            for (acc, x) in g_k.iter_mut().zip(&self.g_vectors[i]) {
                *acc += &coeff * x;
            }
        }
        for j in 0..n {
            let coeff = positive_part(c.entry(n + j, k));
            if coeff.is_zero() {
                continue;
            }
            for (row, acc) in g_k.iter_mut().enumerate() {
                *acc -= &coeff * self.ambient.entry(row, j);
            }
        }
        let mut g_vectors = self.g_vectors.clone();
        g_vectors[k] = g_k;
        Ok(GVectorSeed {
            ambient: Arc::clone(&self.ambient),
            c_matrix: c.mutate(k)?,
            g_vectors,
        })
    }

    /// The G-matrix, with the g-vectors as columns.
    pub fn g_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.g_vectors).expect("g-vectors have equal length")
    }

    pub fn g_determinant(&self) -> BigInt {
        linalg::determinant(&self.g_matrix())
    }

    /// `det G = +-1`.
    pub fn is_unimodular(&self) -> bool {
        self.g_determinant().abs().is_one()
    }

    pub fn is_sign_coherent(&self) -> bool {
        self.c_matrix.is_sign_coherent()
    }

    /// The g-vectors as a sorted list, forgetting the labeling.
    pub fn unordered_tuple(&self) -> Vec<Vector> {
        let mut t = self.g_vectors.clone();
        t.sort();
        t
    }

    pub fn cone(&self) -> Result<SimplicialCone> {
        SimplicialCone::new(self.g_vectors.clone())
    }
}

/// Seeds reached by breadth-first mutation from the initial seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedGraph {
    ambient: Arc<ExchangeMatrix>,
    seeds: Vec<GVectorSeed>,
    edges: Vec<(usize, usize, usize)>,
    exhausted: bool,
}

impl SeedGraph {
    pub fn new(
        ambient: Arc<ExchangeMatrix>,
        seeds: Vec<GVectorSeed>,
        edges: Vec<(usize, usize, usize)>,
        exhausted: bool,
    ) -> Self {
        SeedGraph {
            ambient,
            seeds,
            edges,
            exhausted,
        }
    }

    pub fn ambient(&self) -> &Arc<ExchangeMatrix> {
        &self.ambient
    }

    /// Seeds in discovery order; index 0 is the initial seed.
    pub fn seeds(&self) -> &[GVectorSeed] {
        &self.seeds
    }

    /// Mutation edges `(from, k, to)` with `from < to`, each listed once.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// True when every mutation of every seed is in the graph.
    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn labeled_count(&self) -> usize {
        self.seeds.len()
    }

    /// Distinct g-vector tuples up to reordering, sorted.
    pub fn unordered_tuples(&self) -> Vec<Vec<Vector>> {
        let set: HashSet<Vec<Vector>> = self.seeds.iter().map(|s| s.unordered_tuple()).collect();
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort();
        out
    }

    /// Distinct g-cones in canonical form, sorted.
    pub fn cones(&self) -> Result<Vec<SimplicialCone>> {
        let mut set = HashSet::new();
        for s in &self.seeds {
            set.insert(s.cone()?);
        }
        let mut out: Vec<_> = set.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Seeds sorted by `(c_matrix, g_vectors)`, for order-free comparison.
    pub fn sorted_seeds(&self) -> Vec<(ExtendedMatrix, Vec<Vector>)> {
        let mut out: Vec<_> = self
            .seeds
            .iter()
            .map(|s| (s.c_matrix.clone(), s.g_vectors.clone()))
            .collect();
        out.sort();
        out
    }
}

/// Configurable breadth-first enumeration of labeled seeds.
#[derive(Clone, Debug)]
pub struct SeedEnumerator {
    ambient: Arc<ExchangeMatrix>,
    budget: usize,
    max_depth: Option<usize>,
    directions: Vec<usize>,
}

impl SeedEnumerator {
    pub fn new(b: &ExchangeMatrix) -> Self {
        SeedEnumerator {
            ambient: Arc::new(b.clone()),
            budget: DEFAULT_SEED_BUDGET,
            max_depth: None,
            directions: (0..b.rank()).collect(),
        }
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    /// Stops after seeds at mutation distance `depth` from the initial seed.
    pub fn max_depth(mut self, depth: usize) -> Self {
        self.max_depth = Some(depth);
        self
    }

    /// Order in which mutation directions are tried from each seed.
    pub fn directions(mut self, order: Vec<usize>) -> Self {
        self.directions = order;
        self
    }

    /// Runs the search. A depth-limited run that stops early returns a
    /// non-exhausted graph; running out of budget is an error either way.
    pub fn run(&self) -> Result<SeedGraph> {
        let n = self.ambient.rank();
        let mut sorted_dirs = self.directions.clone();
        sorted_dirs.sort_unstable();
        if sorted_dirs != (0..n).collect::<Vec<_>>() {
            return Err(Error::Malformed(format!(
                "direction order {:?} is not a permutation of 0..{n}",
                self.directions
            )));
        }

        let initial = GVectorSeed::initial(Arc::clone(&self.ambient));
        let mut index: HashMap<GVectorSeed, usize> = HashMap::new();
        index.insert(initial.clone(), 0);
        let mut seeds = vec![initial];
        let mut depth = vec![0usize];
        let mut edges = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        let mut exhausted = true;

        while let Some(idx) = queue.pop_front() {
            let at_limit = self.max_depth.is_some_and(|d| depth[idx] >= d);
            for &k in &self.directions {
                let child = seeds[idx].mutate(k)?;
                if let Some(&j) = index.get(&child) {
                    if idx < j {
                        edges.push((idx, k, j));
                    }
                    continue;
                }
                if at_limit {
                    exhausted = false;
                    continue;
                }
                if seeds.len() >= self.budget {
                    return Err(Error::BudgetExceeded {
                        budget: self.budget,
                    });
                }
                let j = seeds.len();
                index.insert(child.clone(), j);
                seeds.push(child);
                depth.push(depth[idx] + 1);
                edges.push((idx, k, j));
                queue.push_back(j);
            }
        }
        edges.sort_unstable();
        Ok(SeedGraph {
            ambient: Arc::clone(&self.ambient),
            seeds,
            edges,
            exhausted,
        })
    }
}

/// Enumerates all labeled seeds of `b`. Fails with
/// [`Error::BudgetExceeded`] when `b` is not of finite type (or the class is
/// larger than `budget`).
pub fn enumerate_seeds(b: &ExchangeMatrix, budget: usize) -> Result<SeedGraph> {
    SeedEnumerator::new(b).budget(budget).run()
}

/// Enumerates labeled seeds up to mutation distance `depth`.
pub fn enumerate_to_depth(b: &ExchangeMatrix, depth: usize, budget: usize) -> Result<SeedGraph> {
    SeedEnumerator::new(b).budget(budget).max_depth(depth).run()
}
