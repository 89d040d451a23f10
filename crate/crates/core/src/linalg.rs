//! Exact determinant and adjugate of small integer matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols(), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Adjugate `adj(M)` with `M adj(M) = det(M) I`, via cofactors.
pub fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    assert_eq!(n, m.cols(), "adjugate of a non-square matrix");
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj.set(0, 0, BigInt::one());
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let minor = IntMatrix::from_rows(
                (0..n)
                    .filter(|&r| r != i)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m.get(r, c).clone())
                            .collect()
                    })
                    .collect(),
            )
            .expect("minor is rectangular");
            let cof = determinant(&minor);
            // adj = transpose of the cofactor matrix
            adj.set(j, i, if (i + j) % 2 == 0 { cof } else { -cof });
        }
    }
    adj
}
