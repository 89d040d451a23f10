//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::oracle::{stable_tuples, to_i64};
use common::*;
use gfan_core::rank2::{side_rays, slope};
use gfan_core::{
    build_fan, decide_finite_type, enumerate_seeds, enumerate_to_depth, find_witness,
    limiting_slopes, rank2_fan, transport_fan, vector, CompletenessReport, ExchangeMatrix, Fan,
    GapPosition, QuadraticNumber, Rank2Params, Side, TransitionMap, Vector, WitnessOutcome,
    DEFAULT_CLASS_BUDGET, DEFAULT_SEED_BUDGET,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn full_fan(b: &ExchangeMatrix) -> Fan {
    build_fan(&enumerate_seeds(b, DEFAULT_SEED_BUDGET).unwrap()).unwrap()
}

/// Depth of the truncated fan used for infinite-type matrices.
const TRUNCATION_DEPTH: usize = 8;

fn criterion_1() -> Outcome {
    let cases = suite();
    ensure!(cases.len() >= 20, "suite has only {} matrices", cases.len());
    let mut finite = 0;
    for case in &cases {
        let b = &case.matrix;
        let verdict = decide_finite_type(b, DEFAULT_CLASS_BUDGET)
            .map_err(|e| format!("{}: {e}", case.name))?;
        let is_finite = verdict.is_finite();
        let fan = if is_finite {
            full_fan(b)
        } else {
            build_fan(&enumerate_to_depth(b, TRUNCATION_DEPTH, DEFAULT_SEED_BUDGET).unwrap())
                .unwrap()
        };
        let complete = fan.check_complete() == CompletenessReport::Complete;
        let covered = fan.lattice_cover(6).is_covered();
        ensure!(
            is_finite == complete && complete == covered,
            "{}: finite={is_finite} complete={complete} covered={covered}",
            case.name
        );
        ensure!(
            is_finite == case.finite,
            "{}: expected finite={}",
            case.name,
            case.finite
        );
        finite += usize::from(is_finite);
    }
    Ok(format!(
        "{} matrices ({finite} finite, {} infinite), three predicates agree",
        cases.len(),
        cases.len() - finite
    ))
}

fn criterion_2() -> Outcome {
    let mut found = Vec::new();
    for ((b, c), expected) in [
        ((1, 1), 5),
        ((2, 1), 6),
        ((3, 1), 8),
        ((1, 2), 6),
        ((1, 3), 8),
    ] {
        let m = rank2(b, c);
        let fan = rank2_fan(&Rank2Params::new(b, c).unwrap(), usize::MAX).unwrap();
        let oracle = stable_tuples(&to_i64(&m));
        let tuples = enumerate_seeds(&m, DEFAULT_SEED_BUDGET)
            .unwrap()
            .unordered_tuples();
        ensure!(
            fan.cones().len() == expected && oracle.len() == expected && tuples.len() == expected,
            "({b},{c}): fan {} tuples {} oracle {} expected {expected}",
            fan.cones().len(),
            tuples.len(),
            oracle.len()
        );
        found.push(format!("bc={}: {}", b * c, fan.cones().len()));
    }
    Ok(found[..3].join(", "))
}

/// `c s^2 + bc s + b = 0`, evaluated exactly.
fn is_root(s: &QuadraticNumber, b: i64, c: i64) -> bool {
    let (r, q, d) = (
        s.rational_part(),
        s.irrational_part(),
        BigRational::from_integer(s.radicand().clone()),
    );
    let b = BigRational::from_integer(b.into());
    let c = BigRational::from_integer(c.into());
    let bc = &b * &c;
    let rational = &c * (r * r + q * q * &d) + &bc * r + &b;
    let irrational = &c * BigRational::from_integer(2.into()) * r * q + &bc * q;
    rational.is_zero() && (irrational.is_zero() || d.is_zero())
}

/// `|limit - x|` as an exact quadratic number.
fn distance(limit: &QuadraticNumber, x: &BigRational) -> QuadraticNumber {
    let diff = QuadraticNumber::new(
        limit.rational_part() - x,
        limit.irrational_part().clone(),
        limit.radicand().clone(),
    )
    .unwrap();
    if diff.cmp_rational(&BigRational::zero()).is_lt() {
        QuadraticNumber::new(
            -diff.rational_part(),
            -diff.irrational_part(),
            diff.radicand().clone(),
        )
        .unwrap()
    } else {
        diff
    }
}

fn criterion_3() -> Outcome {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());

    let double = limiting_slopes(&Rank2Params::new(4, 1).unwrap()).unwrap();
    ensure!(
        double.lower.cmp_rational(&q(-2, 1)).is_eq()
            && double.upper.cmp_rational(&q(-2, 1)).is_eq(),
        "(4,1): slopes {} and {}",
        double.lower,
        double.upper
    );

    let p = Rank2Params::new(5, 1).unwrap();
    let s = limiting_slopes(&p).unwrap();
    ensure!(
        s.lower.rational_part() == &q(-5, 2)
            && s.lower.irrational_part() == &q(-1, 2)
            && s.upper.rational_part() == &q(-5, 2)
            && s.upper.irrational_part() == &q(1, 2)
            && s.lower.radicand() == &BigInt::from(5)
            && s.upper.radicand() == &BigInt::from(5),
        "(5,1): slopes {} and {}",
        s.lower,
        s.upper
    );
    ensure!(
        is_root(&s.lower, 5, 1) && is_root(&s.upper, 5, 1),
        "slopes are not roots of s^2 + 5s + 5"
    );

    for (side, limit) in [(Side::First, &s.lower), (Side::Second, &s.upper)] {
        let rays: Vec<Vector> = side_rays(&p, side, 40)
            .into_iter()
            .filter(|r| r[0].is_negative())
            .take(30)
            .collect();
        ensure!(
            rays.len() == 30,
            "{side:?}: only {} rays with x < 0",
            rays.len()
        );
        let slopes: Vec<BigRational> = rays.iter().map(|r| slope(r).unwrap()).collect();
        for (r, sl) in rays.iter().zip(&slopes) {
            ensure!(
                s.position(r) == GapPosition::Outside,
                "{side:?}: ray {r:?} in the closed gap"
            );
            let towards = match side {
                Side::First => limit.cmp_rational(sl).is_gt(),
                Side::Second => limit.cmp_rational(sl).is_lt(),
            };
            ensure!(towards, "{side:?}: slope {sl} on the wrong side of {limit}");
        }
        for w in slopes.windows(2) {
            let monotone = match side {
                Side::First => w[0] < w[1],
                Side::Second => w[0] > w[1],
            };
            ensure!(monotone, "{side:?}: slopes {} then {}", w[0], w[1]);
            let (g0, g1) = (distance(limit, &w[0]), distance(limit, &w[1]));
            ensure!(
                g1.try_cmp(&g0) == Some(std::cmp::Ordering::Less),
                "{side:?}: gap did not shrink"
            );
        }
    }
    Ok("(4,1) double slope -2; (5,1) slopes (-5 ± sqrt 5)/2; 30 rays per side monotone, none in the gap".into())
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for (b, expected) in [(4i64, [-2i64, 4]), (5, [-2, 5])] {
        let m = rank2(b, 1);
        let WitnessOutcome::Witness(cert) = find_witness(&m, DEFAULT_CLASS_BUDGET).unwrap() else {
            return Err(format!("B_{{{b},1}} reported finite type"));
        };
        ensure!(
            cert.witness == vector(&expected),
            "B_{{{b},1}}: witness {:?}",
            cert.witness
        );
        let report = gfan_core::verify_witness(&cert, 12).unwrap();
        ensure!(report.passed(), "B_{{{b},1}}:\n{report}");
        let fan = build_fan(&enumerate_to_depth(&m, 12, DEFAULT_SEED_BUDGET).unwrap()).unwrap();
        ensure!(
            fan.cones_containing(&cert.witness).unwrap().is_empty(),
            "B_{{{b},1}}: a cone contains the witness"
        );
        parts.push(format!(
            "B_{{{b},1}} -> ({}, {}) ok over {} cones",
            expected[0], expected[1], report.cones_examined
        ));
    }
    Ok(parts.join("; "))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0usize;
    let mut transported = 0usize;
    for case in suite() {
        let b = &case.matrix;
        let n = b.rank();
        for k in 0..n {
            let fwd = TransitionMap::forward(b, k).unwrap();
            let inv = TransitionMap::inverse(b, k).unwrap();
            for _ in 0..1000 {
                let v: Vector = (0..n)
                    .map(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)))
                    .collect();
                ensure!(
                    inv.apply(&fwd.apply(&v).unwrap()).unwrap() == v,
                    "{} k={}: inverse(forward({v:?}))",
                    case.name,
                    k + 1
                );
                ensure!(
                    fwd.apply(&inv.apply(&v).unwrap()).unwrap() == v,
                    "{} k={}: forward(inverse({v:?}))",
                    case.name,
                    k + 1
                );
                checked += 1;
            }
            if case.finite {
                let moved = transport_fan(&full_fan(b), b, k)
                    .map_err(|e| format!("{} k={}: {e}", case.name, k + 1))?;
                ensure!(
                    moved == full_fan(&b.mutate(k).unwrap()),
                    "{} k={}: transported fan differs",
                    case.name,
                    k + 1
                );
                transported += 1;
            }
        }
    }
    Ok(format!(
        "{checked} round trips; {transported} transported fans equal direct enumeration"
    ))
}

fn criterion_6() -> Outcome {
    let mut seeds = 0usize;
    for case in suite().into_iter().filter(|c| c.finite) {
        let b = &case.matrix;
        for k in 0..b.rank() {
            ensure!(
                b.mutate(k).unwrap().mutate(k).unwrap() == *b,
                "{}: matrix involution at k={}",
                case.name,
                k + 1
            );
        }
        let graph = enumerate_seeds(b, DEFAULT_SEED_BUDGET).unwrap();
        let distinct: BTreeSet<_> = graph.sorted_seeds().into_iter().collect();
        ensure!(
            distinct.len() == graph.labeled_count(),
            "{}: duplicate seeds",
            case.name
        );
        for seed in graph.seeds() {
            let det = seed.g_determinant();
            ensure!(det.abs() == BigInt::from(1), "{}: det G = {det}", case.name);
            ensure!(
                seed.is_sign_coherent(),
                "{}: c-vectors not sign-coherent",
                case.name
            );
            for k in 0..b.rank() {
                let back = seed.mutate(k).unwrap().mutate(k).unwrap();
                ensure!(
                    back == *seed,
                    "{}: seed involution at k={}",
                    case.name,
                    k + 1
                );
                let c = seed.c_matrix();
                ensure!(
                    c.mutate(k).unwrap().mutate(k).unwrap() == *c,
                    "{}: extended matrix involution",
                    case.name
                );
            }
            seeds += 1;
        }
    }
    Ok(format!("{seeds} seeds, zero violations"))
}

fn criterion_7() -> Outcome {
    let WitnessOutcome::Witness(cert) = find_witness(&rank2(4, 1), DEFAULT_CLASS_BUDGET).unwrap()
    else {
        return Err("B_{4,1} reported finite type".into());
    };
    let report = gfan_core::verify_witness(&cert, 12).unwrap();
    let scope = report.scope();
    ensure!(
        scope.starts_with("partial") && scope.contains("distance 12"),
        "scope statement missing: {scope}"
    );
    println!("    the general statement for every rank is not checkable by enumeration;");
    println!("    it is covered here by the property suites, the exact rank-2 gap check,");
    println!("    and depth-bounded witness verification:");
    println!("    {scope}");
    Ok("scope stated".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("finite type, completeness and coverage agree", criterion_1),
        ("rank-2 cone counts", criterion_2),
        ("limiting slopes", criterion_3),
        ("canonical witness", criterion_4),
        ("transition-map identities", criterion_5),
        ("structural invariants", criterion_6),
        ("non-reproducible content stated", criterion_7),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
