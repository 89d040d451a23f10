//! Rank-2 exchange matrices `B_{b,c} = [[0, c], [-b, 0]]`.
//!
//! For `bc <= 3` the g-fan is finite and complete. For `bc >= 4` the rays
//! produced by the two alternating mutation sequences accumulate at two
//! limiting rays of slope `s_- <= s_+` in the half-plane `x < 0`, and no
//! g-cone meets the open cone between them. The lattice point `(-2, b)` lies
//! on the ray of slope `-b/2`, inside that gap.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fan::{build_fan, Completeness, Fan};
use crate::gvec::{enumerate_seeds, GVectorSeed, DEFAULT_SEED_BUDGET};
use crate::matrix::{ExchangeMatrix, Vector};
use crate::quadratic::QuadraticNumber;

/// Parameters of `B_{b,c}`, normalized to `b, c > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rank2Params {
    b: BigInt,
    c: BigInt,
}

impl Rank2Params {
    /// Requires `bc > 0`. Negative pairs are normalized by swapping the two
    /// indices, which turns `B_{b,c}` into `B_{-c,-b}`.
    pub fn new(b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let (b, c) = (b.into(), c.into());
        if (&b * &c) <= BigInt::zero() {
            return Err(Error::InvalidRank2(format!(
                "bc = {} is not positive",
                &b * &c
            )));
        }
        if b.is_negative() {
            Ok(Rank2Params { b: -c, c: -b })
        } else {
            Ok(Rank2Params { b, c })
        }
    }

    /// Reads `(b, c)` from a 2x2 exchange matrix `[[0, c], [-b, 0]]`.
    pub fn from_matrix(m: &ExchangeMatrix) -> Result<Self> {
        if m.rank() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: m.rank(),
            });
        }
        Self::new(-m.entry(1, 0), m.entry(0, 1).clone())
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn product(&self) -> BigInt {
        &self.b * &self.c
    }

    pub fn is_finite_type(&self) -> bool {
        self.product() <= BigInt::from(3)
    }

    pub fn matrix(&self) -> ExchangeMatrix {
        let rows = vec![
            vec![BigInt::zero(), self.c.clone()],
            vec![-&self.b, BigInt::zero()],
        ];
        ExchangeMatrix::new(crate::matrix::IntMatrix::from_rows(rows).expect("2x2"))
            .expect("B_{b,c} with bc > 0 is skew-symmetrizable")
    }
}

/// Which alternating mutation sequence to follow from the initial seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Mutations 1, 2, 1, ...; rays approach `s_-` from below.
    First,
    /// Mutations 2, 1, 2, ...; rays approach `s_+` from above.
    Second,
}

impl Side {
    fn start(self) -> usize {
        match self {
            Side::First => 0,
            Side::Second => 1,
        }
    }
}

/// Seeds along one alternating mutation sequence, excluding the initial seed.
pub fn side_seeds(p: &Rank2Params, side: Side, count: usize) -> Vec<GVectorSeed> {
    let mut seed = GVectorSeed::initial(Arc::new(p.matrix()));
    let mut k = side.start();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        seed = seed.mutate(k).expect("k < 2");
        out.push(seed.clone());
        k = 1 - k;
    }
    out
}

/// The new g-vector created at each of the first `count` steps of a side.
pub fn side_rays(p: &Rank2Params, side: Side, count: usize) -> Vec<Vector> {
    let mut k = side.start();
    side_seeds(p, side, count)
        .into_iter()
        .map(|s| {
            let ray = s.g_vectors()[k].clone();
            k = 1 - k;
            ray
        })
        .collect()
}

/// The g-fan of `B_{b,c}`: complete for finite type, otherwise the initial
/// cone plus cones from the two sides, alternating, up to `max_cones` cones
/// and flagged incomplete.
pub fn rank2_fan(p: &Rank2Params, max_cones: usize) -> Result<Fan> {
    if p.is_finite_type() {
        return build_fan(&enumerate_seeds(&p.matrix(), DEFAULT_SEED_BUDGET)?);
    }
    let extra = max_cones.saturating_sub(1);
    let first = side_seeds(p, Side::First, extra.div_ceil(2));
    let second = side_seeds(p, Side::Second, extra / 2);
    let initial = GVectorSeed::initial(Arc::new(p.matrix()));
    let cones = std::iter::once(&initial)
        .take(max_cones.min(1))
        .chain(first.iter())
        .chain(second.iter())
        .map(GVectorSeed::cone)
        .collect::<Result<Vec<_>>>()?;
    Fan::new(2, cones, Completeness::Incomplete)
}

/// Slope `y / x` of a planar vector, or `None` on the vertical axis.
pub fn slope(v: &[BigInt]) -> Option<BigRational> {
    if v.len() != 2 || v[0].is_zero() {
        return None;
    }
    Some(BigRational::new(v[1].clone(), v[0].clone()))
}

/// Where a planar vector sits relative to the closed gap between the
/// limiting rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapPosition {
    /// Strictly between the limiting rays.
    Interior,
    /// On one of the limiting rays.
    Boundary,
    Outside,
}

/// The limiting slopes `s_- <= s_+`, with `s_± = (-bc ± sqrt(bc(bc-4))) / 2c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitingSlopes {
    pub lower: QuadraticNumber,
    pub upper: QuadraticNumber,
}

impl LimitingSlopes {
    /// Position of a vector relative to the gap. Only the half-plane `x < 0`
    /// holds limiting rays; everything else, including the origin, is outside.
    pub fn position(&self, v: &[BigInt]) -> GapPosition {
        if v.len() != 2 || !v[0].is_negative() {
            return GapPosition::Outside;
        }
        let s = slope(v).expect("x < 0");
        let lo = self.lower.cmp_rational(&s);
        let hi = self.upper.cmp_rational(&s);
        match (lo, hi) {
            (Ordering::Less, Ordering::Greater) => GapPosition::Interior,
            (Ordering::Equal, _) | (_, Ordering::Equal) => GapPosition::Boundary,
            _ => GapPosition::Outside,
        }
    }

    /// True when the vector lies in the closed gap `s_- <= y/x <= s_+`, `x < 0`.
    pub fn closed_gap_contains(&self, v: &[BigInt]) -> bool {
        self.position(v) != GapPosition::Outside
    }
}

pub fn limiting_slopes(p: &Rank2Params) -> Result<LimitingSlopes> {
    let bc = p.product();
    if bc < BigInt::from(4) {
        return Err(Error::FiniteTypeNoLimit {
            product: bc.to_string(),
        });
    }
    let radicand: BigInt = &bc * (&bc - BigInt::from(4));
    let two_c = BigInt::from(2) * p.c();
    let center = BigRational::new(-&bc, two_c.clone());
    let spread = BigRational::new(BigInt::one(), two_c);
    Ok(LimitingSlopes {
        lower: QuadraticNumber::new(center.clone(), -spread.clone(), radicand.clone())?,
        upper: QuadraticNumber::new(center, spread, radicand)?,
    })
}

/// `(-2, b)`, a lattice point on the ray of slope `-b/2` inside the gap.
pub fn badlands_lattice_point(p: &Rank2Params) -> Result<Vector> {
    if p.is_finite_type() {
        return Err(Error::FiniteTypeNoLimit {
            product: p.product().to_string(),
        });
    }
    Ok(vec![BigInt::from(-2), p.b().clone()])
}

/// Floating-point direction of a ray, for plotting only.
pub fn ray_to_f64(v: &[BigInt]) -> (f64, f64) {
    (
        v[0].to_f64().unwrap_or(f64::NAN),
        v[1].to_f64().unwrap_or(f64::NAN),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vector;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization() {
        let p = Rank2Params::new(-1, -4).unwrap();
        assert_eq!((p.b(), p.c()), (&BigInt::from(4), &BigInt::from(1)));
        assert!(Rank2Params::new(1, -1).is_err());
        assert!(Rank2Params::new(0, 3).is_err());
        let m = ExchangeMatrix::rank2(5, 1).unwrap();
        assert_eq!(
            Rank2Params::from_matrix(&m).unwrap(),
            Rank2Params::new(5, 1).unwrap()
        );
    }

    #[test]
    fn affine_double_slope() {
        let s = limiting_slopes(&Rank2Params::new(4, 1).unwrap()).unwrap();
        assert_eq!(s.lower.cmp_rational(&q(-2, 1)), Ordering::Equal);
        assert_eq!(s.upper.cmp_rational(&q(-2, 1)), Ordering::Equal);
        let s = limiting_slopes(&Rank2Params::new(2, 2).unwrap()).unwrap();
        assert_eq!(s.lower.cmp_rational(&q(-1, 1)), Ordering::Equal);
        assert_eq!(s.upper.cmp_rational(&q(-1, 1)), Ordering::Equal);
        assert!(matches!(
            limiting_slopes(&Rank2Params::new(3, 1).unwrap()),
            Err(Error::FiniteTypeNoLimit { .. })
        ));
    }

    #[test]
    fn slopes_for_five() {
        let s = limiting_slopes(&Rank2Params::new(5, 1).unwrap()).unwrap();
        assert!((s.upper.to_f64() + 1.381_966).abs() < 1e-6);
        assert!((s.lower.to_f64() + 3.618_034).abs() < 1e-6);
        assert_eq!(s.upper.rational_part(), &q(-5, 2));
        assert_eq!(s.upper.irrational_part(), &q(1, 2));
        assert_eq!(s.upper.radicand(), &BigInt::from(5));
    }

    #[test]
    fn lattice_points() {
        for (b, c) in [(4, 1), (5, 1), (2, 2)] {
            let p = Rank2Params::new(b, c).unwrap();
            let z = badlands_lattice_point(&p).unwrap();
            assert_eq!(z, vector(&[-2, b]));
            let s = limiting_slopes(&p).unwrap();
            let expected = if b * c == 4 {
                GapPosition::Boundary
            } else {
                GapPosition::Interior
            };
            assert_eq!(s.position(&z), expected);
        }
        assert!(badlands_lattice_point(&Rank2Params::new(1, 1).unwrap()).is_err());
    }

    #[test]
    fn first_side_rays() {
        let p = Rank2Params::new(4, 1).unwrap();
        assert_eq!(
            side_rays(&p, Side::First, 3),
            vec![vector(&[-1, 4]), vector(&[-1, 3]), vector(&[-3, 8])]
        );
        assert_eq!(
            side_rays(&p, Side::Second, 3),
            vec![vector(&[0, -1]), vector(&[-1, 0]), vector(&[-1, 1])]
        );
    }

    #[test]
    fn fan_sizes() {
        let b21 = rank2_fan(&Rank2Params::new(2, 1).unwrap(), 100).unwrap();
        assert_eq!(b21.cones().len(), 6);
        assert_eq!(b21.completeness(), Completeness::Complete);
        let a2 = rank2_fan(&Rank2Params::new(1, 1).unwrap(), 100).unwrap();
        assert_eq!(a2.cones().len(), 5);
        let k = rank2_fan(&Rank2Params::new(4, 1).unwrap(), 20).unwrap();
        assert_eq!(k.cones().len(), 20);
        assert_eq!(k.completeness(), Completeness::Incomplete);
        let s = limiting_slopes(&Rank2Params::new(4, 1).unwrap()).unwrap();
        assert!(k
            .rays()
            .iter()
            .all(|r| s.position(r) != GapPosition::Interior));
    }
}
