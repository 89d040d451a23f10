//! Integer exchange matrices and their mutation.
//!
//! An [`ExchangeMatrix`] is a square integer matrix `B` together with the
//! minimal positive diagonal `D = diag(d_1, ..., d_n)` making `DB`
//! skew-symmetric. An [`ExtendedMatrix`] stacks an exchange matrix on top of
//! an `n x n` coefficient block. Both mutate by the same entrywise rule, see
//! [`IntMatrix::mutate`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer vector.
pub type Vector = Vec<BigInt>;

/// `[a]_+ = max(a, 0)`.
pub(crate) fn positive_part(a: &BigInt) -> BigInt {
    if a.is_positive() {
        a.clone()
    } else {
        BigInt::zero()
    }
}

/// Converts a slice of machine integers into a [`Vector`].
pub fn vector(entries: &[i64]) -> Vector {
    entries.iter().map(|&x| BigInt::from(x)).collect()
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. Fails on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Ragged {
                    row,
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| vector(r.as_ref())).collect())
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// The top-left `rows x cols` block.
    pub fn block(&self, row_start: usize, rows: usize, cols: usize) -> IntMatrix {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = self.get(row_start + i, j).clone();
            }
        }
        m
    }

    /// Largest absolute value of an entry.
    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Matrix mutation at column `k` (0-based).
    ///
    /// Row `k` and column `k` are negated; every other entry becomes
    /// `b_ij + b_ik [b_kj]_+ + [-b_ik]_+ b_kj`. Applies to all rows, so an
    /// extended `2n x n` matrix mutates in one pass. Requires `rows >= cols`.
    #[allow(clippy::needless_range_loop)]
    pub fn mutate(&self, k: usize) -> Result<IntMatrix> {
        if k >= self.cols || self.rows < self.cols {
            return Err(Error::IndexOutOfRange { k, n: self.cols });
        }
        let mut out = self.clone();
        let row_k = self.row(k);
        for i in 0..self.rows {
            let b_ik = self.get(i, k);
            for j in 0..self.cols {
                let entry = &mut out.data[i * self.cols + j];
                if i == k || j == k {
                    *entry = -self.get(i, j);
                    continue;
                }
                let b_kj = &row_k[j];
                if b_ik.is_positive() && b_kj.is_positive() {
                    *entry += b_ik * b_kj;
                } else if b_ik.is_negative() && b_kj.is_negative() {
                    *entry -= b_ik * b_kj;
                }
            }
        }
        Ok(out)
    }

    /// Applies a mutation sequence (0-based indices) left to right.
    pub fn mutate_along(&self, path: &[usize]) -> Result<IntMatrix> {
        path.iter().try_fold(self.clone(), |m, &k| m.mutate(k))
    }

    /// Simultaneous permutation of rows and columns of a square matrix:
    /// entry `(i, j)` moves to `(perm[i], perm[j])`.
    pub fn permute(&self, perm: &[usize]) -> Result<IntMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if perm.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: perm.len(),
            });
        }
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[perm[i] * n + perm[j]] = self.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Checks `d_i b_ij = -d_j b_ji` for all `i, j` of the leading square block.
    pub fn is_skew_symmetrized_by(&self, d: &[BigInt]) -> bool {
        let n = self.cols;
        if d.len() != n || self.rows < n {
            return false;
        }
        (0..n).all(|i| (0..n).all(|j| &d[i] * self.get(i, j) == -(&d[j] * self.get(j, i))))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Finds the minimal positive skew-symmetrizer of a square matrix.
///
/// Ratios `d_j / d_i = -b_ij / b_ji` are propagated along a spanning forest of
/// the graph with an edge `{i, j}` whenever `b_ij != 0`; every remaining edge
/// is then checked. Each connected component is scaled to coprime integers,
/// and isolated vertices get `d_i = 1`.
#[allow(clippy::needless_range_loop)]
pub fn find_skew_symmetrizer(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    for i in 0..n {
        if !m.get(i, i).is_zero() {
            return Err(Error::NonSkewSymmetrizable {
                reason: format!("nonzero diagonal entry at ({}, {})", i + 1, i + 1),
            });
        }
        for j in i + 1..n {
            let (a, b) = (m.get(i, j), m.get(j, i));
            if a.is_zero() != b.is_zero() || (!a.is_zero() && a.signum() == b.signum()) {
                return Err(Error::NonSkewSymmetrizable {
                    reason: format!(
                        "entries ({}, {}) = {a} and ({}, {}) = {b} are not sign-skew-symmetric",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    ),
                });
            }
        }
    }

    let mut ratio: Vec<Option<BigRational>> = vec![None; n];
    let mut d = vec![BigInt::zero(); n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(BigRational::one());
        let mut component = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let r_i = ratio[i].clone().expect("visited");
            for j in 0..n {
                if j == i || m.get(i, j).is_zero() {
                    continue;
                }
                let r_j = r_i.clone() * BigRational::new(m.get(i, j).clone(), -m.get(j, i));
                match &ratio[j] {
                    None => {
                        ratio[j] = Some(r_j);
                        component.push(j);
                        stack.push(j);
                    }
                    Some(existing) if *existing != r_j => {
                        return Err(Error::NonSkewSymmetrizable {
                            reason: format!(
                                "inconsistent ratios around a cycle through {} and {}",
                                i + 1,
                                j + 1
                            ),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
        let lcm = component.iter().fold(BigInt::one(), |acc, &i| {
            acc.lcm(ratio[i].as_ref().expect("visited").denom())
        });
        let scaled: Vec<BigInt> = component
            .iter()
            .map(|&i| {
                let r = ratio[i].as_ref().expect("visited");
                r.numer() * (&lcm / r.denom())
            })
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&i, x) in component.iter().zip(scaled) {
            d[i] = x / &g;
        }
    }
    Ok(d)
}

/// A skew-symmetrizable square integer matrix with its minimal symmetrizer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    matrix: IntMatrix,
    symmetrizer: Vec<BigInt>,
}

impl ExchangeMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let symmetrizer = find_skew_symmetrizer(&matrix)?;
        if matrix.rows() == 0 {
            return Err(Error::Malformed("empty matrix".into()));
        }
        Ok(ExchangeMatrix {
            matrix,
            symmetrizer,
        })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    /// The rank-2 matrix `[[0, c], [-b, 0]]`.
    pub fn rank2(b: i64, c: i64) -> Result<Self> {
        Self::from_i64_rows(&[[0, c], [-b, 0]])
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.matrix.get(i, j)
    }

    /// `b_j`, the `j`-th column.
    pub fn column(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    pub fn symmetrizer(&self) -> &[BigInt] {
        &self.symmetrizer
    }

    /// `mu_k(B)`. The symmetrizer carries over unchanged.
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        Ok(ExchangeMatrix {
            matrix: self.matrix.mutate(k)?,
            symmetrizer: self.symmetrizer.clone(),
        })
    }

    pub fn mutate_along(&self, path: &[usize]) -> Result<ExchangeMatrix> {
        path.iter().try_fold(self.clone(), |m, &k| m.mutate(k))
    }

    pub fn permute(&self, perm: &[usize]) -> Result<ExchangeMatrix> {
        ExchangeMatrix::new(self.matrix.permute(perm)?)
    }

    /// The principal submatrix on the given indices, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<IntMatrix> {
        let n = self.rank();
        if let Some(&k) = indices.iter().find(|&&k| k >= n) {
            return Err(Error::IndexOutOfRange { k, n });
        }
        IntMatrix::from_rows(
            indices
                .iter()
                .map(|&i| indices.iter().map(|&j| self.entry(i, j).clone()).collect())
                .collect(),
        )
    }

    /// First pair `i < j` (lexicographic) with `|b_ij b_ji| >= 4`.
    pub fn two_finiteness_violation(&self) -> Option<(usize, usize)> {
        let n = self.rank();
        let four = BigInt::from(4);
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| (self.entry(i, j) * self.entry(j, i)).abs() >= four)
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

/// A `2n x n` matrix whose upper `n x n` block is skew-symmetrizable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedMatrix {
    matrix: IntMatrix,
}

impl ExtendedMatrix {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let n = matrix.cols();
        if matrix.rows() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: matrix.rows(),
            });
        }
        find_skew_symmetrizer(&matrix.block(0, n, n))?;
        Ok(ExtendedMatrix { matrix })
    }

    /// `B` stacked over the identity.
    pub fn principal(b: &ExchangeMatrix) -> Self {
        let n = b.rank();
        let mut matrix = IntMatrix::zeros(2 * n, n);
        for i in 0..n {
            for j in 0..n {
                matrix.set(i, j, b.entry(i, j).clone());
            }
            matrix.set(n + i, i, BigInt::one());
        }
        ExtendedMatrix { matrix }
    }

    pub fn rank(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.matrix.get(i, j)
    }

    pub fn upper(&self) -> IntMatrix {
        self.matrix.block(0, self.rank(), self.rank())
    }

    pub fn lower(&self) -> IntMatrix {
        self.matrix.block(self.rank(), self.rank(), self.rank())
    }

    pub fn mutate(&self, k: usize) -> Result<ExtendedMatrix> {
        Ok(ExtendedMatrix {
            matrix: self.matrix.mutate(k)?,
        })
    }

    /// Every column of the lower block has entries all `>= 0` or all `<= 0`.
    pub fn is_sign_coherent(&self) -> bool {
        let n = self.rank();
        (0..n).all(|j| {
            let col = (n..2 * n).map(|i| self.entry(i, j));
            let (mut pos, mut neg) = (false, false);
            for x in col {
                pos |= x.is_positive();
                neg |= x.is_negative();
            }
            !(pos && neg)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        vector(xs)
    }

    #[test]
    fn symmetrizer_examples() {
        let m = IntMatrix::from_i64_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(find_skew_symmetrizer(&m).unwrap(), ints(&[1, 1]));
        let m = IntMatrix::from_i64_rows(&[[0, 1], [-2, 0]]).unwrap();
        assert_eq!(find_skew_symmetrizer(&m).unwrap(), ints(&[2, 1]));
        let m = IntMatrix::from_i64_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(matches!(
            find_skew_symmetrizer(&m),
            Err(Error::NonSkewSymmetrizable { .. })
        ));
    }

    #[test]
    fn symmetrizer_rejects_inconsistent_cycle() {
        // d2 = 2 d1, d3 = d2, d1 = d3 forces d1 = 2 d1.
        let m = IntMatrix::from_i64_rows(&[[0, 2, -1], [-1, 0, 1], [1, -1, 0]]).unwrap();
        assert!(matches!(
            find_skew_symmetrizer(&m),
            Err(Error::NonSkewSymmetrizable { .. })
        ));
    }

    #[test]
    fn symmetrizer_handles_components_and_zero_patterns() {
        // B3-like block plus an isolated vertex.
        let m =
            IntMatrix::from_i64_rows(&[[0, 1, 0, 0], [-1, 0, 2, 0], [0, -1, 0, 0], [0, 0, 0, 0]])
                .unwrap();
        let d = find_skew_symmetrizer(&m).unwrap();
        assert_eq!(d, ints(&[1, 1, 2, 1]));
        assert!(m.is_skew_symmetrized_by(&d));

        let m = IntMatrix::from_i64_rows(&[[0, 1], [0, 0]]).unwrap();
        assert!(find_skew_symmetrizer(&m).is_err());
        let m = IntMatrix::from_i64_rows(&[[1, 0], [0, 0]]).unwrap();
        assert!(find_skew_symmetrizer(&m).is_err());
        let m = IntMatrix::from_i64_rows(&[[0, 1, 0]]).unwrap();
        assert!(matches!(
            find_skew_symmetrizer(&m),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn mutation_examples() {
        let b = ExchangeMatrix::from_i64_rows(&[[0, 1], [-1, 0]]).unwrap();
        assert_eq!(
            b.mutate(0).unwrap().matrix(),
            &IntMatrix::from_i64_rows(&[[0, -1], [1, 0]]).unwrap()
        );

        let hat = ExtendedMatrix::principal(&b).mutate(0).unwrap();
        assert_eq!(
            hat.matrix(),
            &IntMatrix::from_i64_rows(&[[0, -1], [1, 0], [-1, 1], [0, 1]]).unwrap()
        );
        assert!(b.mutate(2).is_err());
    }

    #[test]
    fn mutation_of_a3_matches_hand_computation() {
        // 1 -> 2 -> 3, mutate at 2: b'_13 = 0 + 1*[1]_+ + 0 = 1.
        let b = ExchangeMatrix::from_i64_rows(&[[0, 1, 0], [-1, 0, 1], [0, -1, 0]]).unwrap();
        let m = b.mutate(1).unwrap();
        assert_eq!(
            m.matrix(),
            &IntMatrix::from_i64_rows(&[[0, -1, 1], [1, 0, -1], [-1, 1, 0]]).unwrap()
        );
    }

    #[test]
    fn extended_matrix_validation() {
        let m = IntMatrix::from_i64_rows(&[[0, 1], [-1, 0], [1, 0]]).unwrap();
        assert!(ExtendedMatrix::new(m).is_err());
        let m = IntMatrix::from_i64_rows(&[[0, 1], [1, 0], [1, 0], [0, 1]]).unwrap();
        assert!(ExtendedMatrix::new(m).is_err());
        let m = IntMatrix::from_i64_rows(&[[0, 1], [-1, 0], [1, -1], [0, 1]]).unwrap();
        let e = ExtendedMatrix::new(m).unwrap();
        assert!(!e.is_sign_coherent());
    }

    #[test]
    fn violation_detection() {
        let markov = ExchangeMatrix::from_i64_rows(&[[0, 2, -2], [-2, 0, 2], [2, -2, 0]]).unwrap();
        assert_eq!(markov.two_finiteness_violation(), Some((0, 1)));
        let g2 = ExchangeMatrix::rank2(3, 1).unwrap();
        assert_eq!(g2.two_finiteness_violation(), None);
    }
}
