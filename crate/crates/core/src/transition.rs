//! Piecewise-linear transition maps between the fans of `B` and `mu_k(B)`.
//!
//! The forward map for `(B, k)` sends `v` to `v'` with `v'_k = -v_k` and
//! `v'_i = v_i + [b_ik]_+ v_k - b_ik min(v_k, 0)` otherwise. It is linear on
//! each of the half-spaces `v_k >= 0` and `v_k <= 0`. Its inverse is the
//! forward map of `(mu_k(B), k)`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{Fan, SimplicialCone};
use crate::matrix::{positive_part, ExchangeMatrix, Vector};

/// Scalars the transition maps act on: integers and rationals.
pub trait Coordinate:
    Clone
    + Ord
    + Zero
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + From<BigInt>
{
}

impl Coordinate for BigInt {}
impl Coordinate for BigRational {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMap {
    base: ExchangeMatrix,
    k: usize,
    direction: Direction,
    /// The matrix whose column `k` drives the formula: `base` for the
    /// forward map, `mu_k(base)` for the inverse.
    driver: ExchangeMatrix,
}

impl TransitionMap {
    pub fn new(base: &ExchangeMatrix, k: usize, direction: Direction) -> Result<Self> {
        let driver = match direction {
            Direction::Forward => {
                if k >= base.rank() {
                    return Err(Error::IndexOutOfRange { k, n: base.rank() });
                }
                base.clone()
            }
            Direction::Inverse => base.mutate(k)?,
        };
        Ok(TransitionMap {
            base: base.clone(),
            k,
            direction,
            driver,
        })
    }

    pub fn forward(base: &ExchangeMatrix, k: usize) -> Result<Self> {
        Self::new(base, k, Direction::Forward)
    }

    pub fn inverse(base: &ExchangeMatrix, k: usize) -> Result<Self> {
        Self::new(base, k, Direction::Inverse)
    }

    pub fn base(&self) -> &ExchangeMatrix {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn apply<T: Coordinate>(&self, v: &[T]) -> Result<Vec<T>> {
        let n = self.driver.rank();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        let k = self.k;
        let v_k = v[k].clone();
        let negative_part = if v_k < T::zero() {
            v_k.clone()
        } else {
            T::zero()
        };
        Ok(v.iter()
            .enumerate()
            .map(|(i, x)| {
                if i == k {
                    return -x.clone();
                }
                let b_ik = self.driver.entry(i, k);
                if b_ik.is_zero() {
                    return x.clone();
                }
                x.clone() + T::from(positive_part(b_ik)) * v_k.clone()
                    - T::from(b_ik.clone()) * negative_part.clone()
            })
            .collect())
    }

    /// True if the cone spanned by `rays` lies in one linearity domain, i.e.
    /// the `k`-th coordinates do not take both signs.
    pub fn is_linear_on(&self, rays: &[Vector]) -> bool {
        let k = self.k;
        let pos = rays.iter().any(|r| r[k].is_positive());
        let neg = rays.iter().any(|r| r[k].is_negative());
        !(pos && neg)
    }
}

/// Maps every cone of `f` (a fan of `B`) ray-wise by the forward map of
/// `(B, k)`. Cones whose rays have strictly mixed signs in coordinate `k`
/// are rejected, since the map is not linear across that wall.
pub fn transport_fan(f: &Fan, b: &ExchangeMatrix, k: usize) -> Result<Fan> {
    let map = TransitionMap::forward(b, k)?;
    if f.dim() != b.rank() {
        return Err(Error::DimensionMismatch {
            expected: b.rank(),
            found: f.dim(),
        });
    }
    let mut cones = Vec::with_capacity(f.cones().len());
    for ci in 0..f.cones().len() {
        let cone = f.cone(ci);
        if !map.is_linear_on(cone.rays()) {
            return Err(Error::ConeStraddlesWall { cone: ci, k });
        }
        let rays = cone
            .rays()
            .iter()
            .map(|r| map.apply(r))
            .collect::<Result<Vec<_>>>()?;
        cones.push(SimplicialCone::new(rays)?);
    }
    Fan::new(f.dim(), cones, f.completeness())
}

/// Composes transition maps along a mutation path.
///
/// `Forward` carries a point of the fan of `B` to the fan of
/// `mu_{k_m} ... mu_{k_1}(B)`; `Inverse` carries a point of the latter back
/// to the fan of `B`.
pub fn transport_point_along_path(
    v: &[BigInt],
    b: &ExchangeMatrix,
    path: &[usize],
    direction: Direction,
) -> Result<Vector> {
    if v.len() != b.rank() {
        return Err(Error::DimensionMismatch {
            expected: b.rank(),
            found: v.len(),
        });
    }
    // matrices[t] = mu_{k_t} ... mu_{k_1}(B)
    let mut matrices = vec![b.clone()];
    for &k in path {
        let next = matrices.last().expect("nonempty").mutate(k)?;
        matrices.push(next);
    }
    let mut point = v.to_vec();
    match direction {
        Direction::Forward => {
            for (t, &k) in path.iter().enumerate() {
                point = TransitionMap::forward(&matrices[t], k)?.apply(&point)?;
            }
        }
        Direction::Inverse => {
            for (t, &k) in path.iter().enumerate().rev() {
                point = TransitionMap::inverse(&matrices[t], k)?.apply(&point)?;
            }
        }
    }
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vector;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_i64_rows(&[[0, 1], [-1, 0]]).unwrap()
    }

    #[test]
    fn forward_examples() {
        let t = TransitionMap::forward(&a2(), 0).unwrap();
        assert_eq!(t.apply(&vector(&[1, 0])).unwrap(), vector(&[-1, 0]));
        // v_2' = 1 + 0 - (-1) * min(-1, 0) = 0
        assert_eq!(t.apply(&vector(&[-1, 1])).unwrap(), vector(&[1, 0]));
        assert!(t.apply(&vector(&[1])).is_err());
        assert!(TransitionMap::forward(&a2(), 2).is_err());
    }

    #[test]
    fn zero_driving_coordinate_is_fixed() {
        let b = ExchangeMatrix::from_i64_rows(&[[0, 2, -2], [-2, 0, 2], [2, -2, 0]]).unwrap();
        for k in 0..3 {
            let mut v = vector(&[3, -7, 5]);
            v[k] = BigInt::zero();
            let t = TransitionMap::forward(&b, k).unwrap();
            assert_eq!(t.apply(&v).unwrap(), v);
        }
    }

    #[test]
    fn inverse_undoes_forward() {
        let b = ExchangeMatrix::from_i64_rows(&[[0, 1, 0], [-2, 0, 3], [0, -1, 0]]).unwrap();
        for k in 0..3 {
            let f = TransitionMap::forward(&b, k).unwrap();
            let g = TransitionMap::inverse(&b, k).unwrap();
            for v in [[1, 2, 3], [-4, 5, -6], [0, -1, 7], [9, -9, -9]] {
                let v = vector(&v);
                assert_eq!(g.apply(&f.apply(&v).unwrap()).unwrap(), v);
                assert_eq!(f.apply(&g.apply(&v).unwrap()).unwrap(), v);
            }
        }
    }

    #[test]
    fn rational_points() {
        let t = TransitionMap::forward(&a2(), 0).unwrap();
        let half = BigRational::new((-1).into(), 2.into());
        let v = vec![half.clone(), BigRational::from_integer(1.into())];
        // v_2' = 1 - (-1) * (-1/2) = 1/2
        assert_eq!(
            t.apply(&v).unwrap(),
            vec![-half.clone(), BigRational::new(1.into(), 2.into())]
        );
    }

    #[test]
    fn path_transport() {
        let b = a2();
        let v = vector(&[-3, 8]);
        assert_eq!(
            transport_point_along_path(&v, &b, &[], Direction::Forward).unwrap(),
            v
        );
        let there =
            transport_point_along_path(&v, &b, &[0, 1, 1, 0, 1], Direction::Forward).unwrap();
        let back =
            transport_point_along_path(&there, &b, &[0, 1, 1, 0, 1], Direction::Inverse).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn straddling_cone_rejected() {
        let cone = SimplicialCone::new(vec![vector(&[1, 1]), vector(&[-1, 1])]).unwrap();
        let fan = Fan::new(2, [cone], crate::fan::Completeness::Unknown).unwrap();
        assert_eq!(
            transport_fan(&fan, &a2(), 0),
            Err(Error::ConeStraddlesWall { cone: 0, k: 0 })
        );
    }
}
