//! Certified lattice points outside the g-fan of an infinite-type matrix.
//!
//! When the mutation search finds `B' = mu_{k_m} ... mu_{k_1}(B)` with a
//! principal 2x2 block `B'_I = B_{b,c}`, `bc >= 4`, the vector with `-2` at
//! `I_0`, `b` at `I_1` and zeros elsewhere projects into the gap of the rank-2
//! fan of `B_{b,c}`, so no g-cone of `B'` contains it. Carrying it back along
//! the inverse transition maps gives a lattice point outside the fan of `B`.
//!
//! [`verify_witness`] rechecks every step it can. Non-membership in an
//! infinite fan is only checked against the g-cones within a bounded mutation
//! distance; the report says so.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::build_fan;
use crate::finite_type::{decide_finite_type, FiniteTypeVerdict};
use crate::gvec::{enumerate_to_depth, DEFAULT_SEED_BUDGET};
use crate::matrix::{ExchangeMatrix, Vector};
use crate::rank2::{limiting_slopes, Rank2Params};
use crate::transition::{transport_point_along_path, Direction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub input: ExchangeMatrix,
    /// Mutation path (0-based) from the input to `B'`.
    pub path: Vec<usize>,
    /// `I = (i, j)` oriented so that `B'_ij > 0`.
    pub pair: (usize, usize),
    pub params: Rank2Params,
    /// `-2` at `i`, `b` at `j`, zero elsewhere.
    pub witness_at_bprime: Vector,
    /// The same point carried back to the coordinates of the input.
    pub witness: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum WitnessOutcome {
    FiniteType { class_size: usize },
    Witness(WitnessCertificate),
}

/// Builds a certificate from a verdict's path and violating pair.
pub fn certificate_from_violation(
    b: &ExchangeMatrix,
    path: &[usize],
    pair: (usize, usize),
) -> Result<WitnessCertificate> {
    let target = b.mutate_along(path)?;
    let (i, j) = if target.entry(pair.0, pair.1).is_positive() {
        pair
    } else {
        (pair.1, pair.0)
    };
    let c = target.entry(i, j).clone();
    let b_param = -target.entry(j, i);
    let params = Rank2Params::new(b_param, c)?;
    if params.is_finite_type() {
        return Err(Error::InvalidRank2(format!(
            "pair ({}, {}) has bc = {} < 4",
            i + 1,
            j + 1,
            params.product()
        )));
    }
    let mut witness_at_bprime = vec![BigInt::zero(); b.rank()];
    witness_at_bprime[i] = BigInt::from(-2);
    witness_at_bprime[j] = params.b().clone();
    let witness = transport_point_along_path(&witness_at_bprime, b, path, Direction::Inverse)?;
    Ok(WitnessCertificate {
        input: b.clone(),
        path: path.to_vec(),
        pair: (i, j),
        params,
        witness_at_bprime,
        witness,
    })
}

/// Decides finite type and, for infinite type, constructs the certificate.
pub fn find_witness(b: &ExchangeMatrix, budget: usize) -> Result<WitnessOutcome> {
    match decide_finite_type(b, budget)? {
        FiniteTypeVerdict::Finite { class_size } => Ok(WitnessOutcome::FiniteType { class_size }),
        FiniteTypeVerdict::Infinite { path, pair } => Ok(WitnessOutcome::Witness(
            certificate_from_violation(b, &path, pair)?,
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// Replaying the path yields `B'_I = B_{b,c}` with `bc >= 4`, and the
    /// point at `B'` has the prescribed shape.
    Replay,
    /// Forward transport of the witness gives the point at `B'` and back.
    Transport,
    /// No g-cone within the depth bound contains the witness.
    Enumeration,
    /// The projection to `I` lies in the closed gap `[s_-, s_+]`.
    Rank2Gap,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Replay => "replay",
            CheckKind::Transport => "transport",
            CheckKind::Enumeration => "enumeration",
            CheckKind::Rank2Gap => "rank2_gap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Mutation distance bound of the enumeration check.
    pub depth: usize,
    pub cones_examined: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, kind: CheckKind) -> Option<&Check> {
        self.checks.iter().find(|c| c.kind == kind)
    }

    /// Scope statement for the enumeration check.
    pub fn scope(&self) -> String {
        format!(
            "partial: non-membership checked against the {} g-cones within mutation distance {} \
             of the initial seed; cones beyond that bound are not examined",
            self.cones_examined, self.depth
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} {:<12} {}", c.kind.name(), c.detail)?;
        }
        write!(f, "{}", self.scope())
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn check_replay(cert: &WitnessCertificate) -> Check {
    let kind = CheckKind::Replay;
    let n = cert.input.rank();
    let (i, j) = cert.pair;
    if i >= n || j >= n || i == j || cert.witness_at_bprime.len() != n {
        return Check {
            kind,
            passed: false,
            detail: format!(
                "pair ({}, {}) or point shape invalid for rank {n}",
                i + 1,
                j + 1
            ),
        };
    }
    let target = match cert.input.mutate_along(&cert.path) {
        Ok(t) => t,
        Err(e) => {
            return Check {
                kind,
                passed: false,
                detail: format!("path does not replay: {e}"),
            }
        }
    };
    let block_ok = target.entry(i, j) == cert.params.c()
        && &-target.entry(j, i) == cert.params.b()
        && !cert.params.is_finite_type();
    let shape_ok = cert.witness_at_bprime.iter().enumerate().all(|(t, x)| {
        if t == i {
            *x == BigInt::from(-2)
        } else if t == j {
            x == cert.params.b()
        } else {
            x.is_zero()
        }
    });
    Check {
        kind,
        passed: block_ok && shape_ok,
        detail: format!(
            "B'_I = [[0, {}], [{}, 0]], expected b = {}, c = {}; point at B' {}",
            target.entry(i, j),
            target.entry(j, i),
            cert.params.b(),
            cert.params.c(),
            fmt_vec(&cert.witness_at_bprime)
        ),
    }
}

fn check_transport(cert: &WitnessCertificate) -> (Check, Option<Vector>) {
    let kind = CheckKind::Transport;
    let forward =
        transport_point_along_path(&cert.witness, &cert.input, &cert.path, Direction::Forward);
    let back = transport_point_along_path(
        &cert.witness_at_bprime,
        &cert.input,
        &cert.path,
        Direction::Inverse,
    );
    match (forward, back) {
        (Ok(fwd), Ok(back)) => {
            let passed = fwd == cert.witness_at_bprime && back == cert.witness;
            let detail = format!(
                "forward {} -> {}, inverse {} -> {}",
                fmt_vec(&cert.witness),
                fmt_vec(&fwd),
                fmt_vec(&cert.witness_at_bprime),
                fmt_vec(&back)
            );
            (
                Check {
                    kind,
                    passed,
                    detail,
                },
                Some(fwd),
            )
        }
        (Err(e), _) | (_, Err(e)) => (
            Check {
                kind,
                passed: false,
                detail: format!("transport failed: {e}"),
            },
            None,
        ),
    }
}

fn check_enumeration(cert: &WitnessCertificate, depth: usize) -> Result<(Check, usize)> {
    let graph = enumerate_to_depth(&cert.input, depth, DEFAULT_SEED_BUDGET)?;
    let fan = build_fan(&graph)?;
    let containing = fan.cones_containing(&cert.witness)?;
    let count = fan.cones().len();
    let detail = match containing.first() {
        None => format!(
            "{count} g-cones within distance {depth}; none contains {}",
            fmt_vec(&cert.witness)
        ),
        Some(&ci) => format!(
            "{} lies in g-cone {:?}",
            fmt_vec(&cert.witness),
            fan.cone(ci).rays()
        ),
    };
    Ok((
        Check {
            kind: CheckKind::Enumeration,
            passed: containing.is_empty(),
            detail,
        },
        count,
    ))
}

fn check_gap(cert: &WitnessCertificate, at_bprime: Option<&Vector>) -> Check {
    let kind = CheckKind::Rank2Gap;
    let Some(point) = at_bprime else {
        return Check {
            kind,
            passed: false,
            detail: "no transported point to project".into(),
        };
    };
    let slopes = match limiting_slopes(&cert.params) {
        Ok(s) => s,
        Err(e) => {
            return Check {
                kind,
                passed: false,
                detail: e.to_string(),
            }
        }
    };
    let (i, j) = cert.pair;
    let (Some(x), Some(y)) = (point.get(i), point.get(j)) else {
        return Check {
            kind,
            passed: false,
            detail: "pair out of range".into(),
        };
    };
    let projected = vec![x.clone(), y.clone()];
    let passed = slopes.closed_gap_contains(&projected);
    Check {
        kind,
        passed,
        detail: format!(
            "projection {} against [s-, s+] = [{}, {}]{}",
            fmt_vec(&projected),
            slopes.lower,
            slopes.upper,
            if passed { "" } else { ": outside" }
        ),
    }
}

/// Rechecks a certificate. The enumeration check only covers g-cones within
/// mutation distance `depth`; see [`VerificationReport::scope`].
pub fn verify_witness(cert: &WitnessCertificate, depth: usize) -> Result<VerificationReport> {
    if cert.witness.len() != cert.input.rank() {
        return Err(Error::DimensionMismatch {
            expected: cert.input.rank(),
            found: cert.witness.len(),
        });
    }
    let replay = check_replay(cert);
    let (transport, forward) = check_transport(cert);
    let (enumeration, cones_examined) = check_enumeration(cert, depth)?;
    let gap = check_gap(cert, forward.as_ref());
    Ok(VerificationReport {
        checks: vec![replay, transport, enumeration, gap],
        depth,
        cones_examined,
    })
}
