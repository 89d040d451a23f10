//! Exact g-vector fans of skew-symmetrizable matrices.
//!
//! The crate mutates exchange matrices and g-vector seeds over arbitrary
//! precision integers, decides finite type by searching the mutation class,
//! assembles the g-fan and tests it for completeness and lattice coverage,
//! and, for infinite type, builds a lattice point outside the fan together
//! with a certificate that can be rechecked.
//!
//! ```
//! use gfan_core::{decide_finite_type, ExchangeMatrix, FiniteTypeVerdict};
//!
//! let b = ExchangeMatrix::from_i64_rows(&[[0, 1], [-1, 0]]).unwrap();
//! let verdict = decide_finite_type(&b, 1_000).unwrap();
//! assert_eq!(verdict, FiniteTypeVerdict::Finite { class_size: 2 });
//! ```

pub mod error;
pub mod fan;
pub mod finite_type;
pub mod gvec;
pub mod json;
mod linalg;
pub mod matrix;
pub mod quadratic;
pub mod rank2;
pub mod svg;
pub mod transition;
pub mod witness;

pub use error::{Error, Result};
pub use fan::{
    build_fan, Completeness, CompletenessReport, Defect, Fan, LatticeCover, Membership,
    SimplicialCone,
};
pub use finite_type::{decide_finite_type, FiniteTypeVerdict, DEFAULT_CLASS_BUDGET};
pub use gvec::{
    enumerate_seeds, enumerate_to_depth, GVectorSeed, SeedEnumerator, SeedGraph,
    DEFAULT_SEED_BUDGET,
};
pub use linalg::determinant;
pub use matrix::{
    find_skew_symmetrizer, vector, ExchangeMatrix, ExtendedMatrix, IntMatrix, Vector,
};
pub use quadratic::QuadraticNumber;
pub use rank2::{
    badlands_lattice_point, limiting_slopes, rank2_fan, GapPosition, LimitingSlopes, Rank2Params,
    Side,
};
pub use transition::{transport_fan, transport_point_along_path, Direction, TransitionMap};
pub use witness::{
    find_witness, verify_witness, VerificationReport, WitnessCertificate, WitnessOutcome,
};
