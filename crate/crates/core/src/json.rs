//! JSON encodings of matrices, seed graphs, fans, verdicts and certificates.
//!
//! Integers are written as plain JSON numbers of arbitrary length, and object
//! keys keep a fixed order so output is byte-stable. Mutation
//! indices and index pairs are 1-based in every document; seed indices in the
//! `edges` list are positions in the `seeds` array.

use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::fan::{Completeness, CompletenessReport, Defect, Fan, LatticeCover, Membership};
use crate::finite_type::FiniteTypeVerdict;
use crate::gvec::{GVectorSeed, SeedGraph};
use crate::matrix::{ExchangeMatrix, ExtendedMatrix, IntMatrix, Vector};
use crate::rank2::Rank2Params;
use crate::witness::{VerificationReport, WitnessCertificate, WitnessOutcome};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub fn int_to_json(x: &BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse::<Number>()
            .expect("decimal integers are valid JSON numbers"),
    )
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| malformed(format!("expected an integer, found {n}"))),
        other => Err(malformed(format!("expected an integer, found {other}"))),
    }
}

pub fn vector_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

pub fn vector_from_json(v: &Value) -> Result<Vector> {
    v.as_array()
        .ok_or_else(|| malformed(format!("expected an integer array, found {v}")))?
        .iter()
        .map(int_from_json)
        .collect()
}

pub fn rows_to_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn rows_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| malformed(format!("expected an array of rows, found {v}")))?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| malformed(format!("missing field \"{key}\"")))
}

fn usize_from_json(v: &Value) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| malformed(format!("expected a nonnegative index, found {v}")))
}

/// Reads a 1-based index list into 0-based indices.
fn indices_from_json(v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| malformed(format!("expected an index array, found {v}")))?
        .iter()
        .map(|x| {
            let k = usize_from_json(x)?;
            k.checked_sub(1)
                .ok_or_else(|| malformed("indices are 1-based"))
        })
        .collect()
}

fn indices_to_json(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|&k| json!(k + 1)).collect())
}

fn check_n(obj: &Value, expected: usize) -> Result<()> {
    if let Some(n) = obj.get("n") {
        let n = usize_from_json(n)?;
        if n != expected {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: expected,
            });
        }
    }
    Ok(())
}

pub fn exchange_matrix_to_json(b: &ExchangeMatrix) -> Value {
    json!({ "n": b.rank(), "b": rows_to_json(b.matrix()) })
}

/// Accepts `{"n": 2, "b": [[...]]}` or a bare array of rows.
pub fn exchange_matrix_from_json(v: &Value) -> Result<ExchangeMatrix> {
    let m = if v.is_array() {
        rows_from_json(v)?
    } else {
        let m = rows_from_json(field(v, "b")?)?;
        check_n(v, m.rows())?;
        m
    };
    ExchangeMatrix::new(m)
}

pub fn extended_matrix_to_json(c: &ExtendedMatrix) -> Value {
    json!({ "n": c.rank(), "c": rows_to_json(c.matrix()) })
}

/// Accepts `{"n": 2, "c": [[...]]}` or a bare array of `2n` rows.
pub fn extended_matrix_from_json(v: &Value) -> Result<ExtendedMatrix> {
    let m = if v.is_array() {
        rows_from_json(v)?
    } else {
        let m = rows_from_json(field(v, "c")?)?;
        check_n(v, m.cols())?;
        m
    };
    ExtendedMatrix::new(m)
}

pub fn verdict_to_json(v: &FiniteTypeVerdict) -> Value {
    match v {
        FiniteTypeVerdict::Finite { class_size } => {
            json!({ "kind": "finite", "class_size": class_size })
        }
        FiniteTypeVerdict::Infinite { path, pair } => json!({
            "kind": "infinite",
            "path": indices_to_json(path),
            "pair": indices_to_json(&[pair.0, pair.1]),
        }),
    }
}

pub fn verdict_from_json(v: &Value) -> Result<FiniteTypeVerdict> {
    match field(v, "kind")?.as_str() {
        Some("finite") => Ok(FiniteTypeVerdict::Finite {
            class_size: usize_from_json(field(v, "class_size")?)?,
        }),
        Some("infinite") => {
            let pair = indices_from_json(field(v, "pair")?)?;
            if pair.len() != 2 {
                return Err(malformed("pair must have two entries"));
            }
            Ok(FiniteTypeVerdict::Infinite {
                path: indices_from_json(field(v, "path")?)?,
                pair: (pair[0], pair[1]),
            })
        }
        _ => Err(malformed("kind must be \"finite\" or \"infinite\"")),
    }
}

/// Seed-set export. The extra `exhausted` flag records whether the
/// enumeration ran to completion.
pub fn seed_graph_to_json(g: &SeedGraph) -> Value {
    let seeds: Vec<Value> = g
        .seeds()
        .iter()
        .map(|s| {
            json!({
                "c": rows_to_json(s.c_matrix().matrix()),
                "g": Value::Array(s.g_vectors().iter().map(|v| vector_to_json(v)).collect()),
            })
        })
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|&(a, k, b)| json!([a, k + 1, b]))
        .collect();
    json!({
        "b": rows_to_json(g.ambient().matrix()),
        "seeds": seeds,
        "edges": edges,
        "exhausted": g.is_exhausted(),
    })
}

pub fn seed_graph_from_json(v: &Value) -> Result<SeedGraph> {
    let ambient = Arc::new(ExchangeMatrix::new(rows_from_json(field(v, "b")?)?)?);
    let seeds = field(v, "seeds")?
        .as_array()
        .ok_or_else(|| malformed("seeds must be an array"))?
        .iter()
        .map(|s| {
            let c = ExtendedMatrix::new(rows_from_json(field(s, "c")?)?)?;
            let g = field(s, "g")?
                .as_array()
                .ok_or_else(|| malformed("g must be an array of vectors"))?
                .iter()
                .map(vector_from_json)
                .collect::<Result<Vec<_>>>()?;
            GVectorSeed::from_parts(Arc::clone(&ambient), c, g)
        })
        .collect::<Result<Vec<_>>>()?;
    let edges = field(v, "edges")?
        .as_array()
        .ok_or_else(|| malformed("edges must be an array"))?
        .iter()
        .map(|e| {
            let e = e
                .as_array()
                .filter(|e| e.len() == 3)
                .ok_or_else(|| malformed("each edge is [from, k, to]"))?;
            let k = usize_from_json(&e[1])?
                .checked_sub(1)
                .ok_or_else(|| malformed("indices are 1-based"))?;
            Ok((usize_from_json(&e[0])?, k, usize_from_json(&e[2])?))
        })
        .collect::<Result<Vec<_>>>()?;
    if edges
        .iter()
        .any(|&(a, _, b)| a >= seeds.len() || b >= seeds.len())
    {
        return Err(malformed("edge refers to a missing seed"));
    }
    let exhausted = v.get("exhausted").and_then(Value::as_bool).unwrap_or(false);
    Ok(SeedGraph::new(ambient, seeds, edges, exhausted))
}

pub fn fan_to_json(f: &Fan) -> Value {
    json!({
        "dim": f.dim(),
        "rays": Value::Array(f.rays().iter().map(|r| vector_to_json(r)).collect()),
        "cones": f.cones(),
        "complete": f.completeness().as_option(),
    })
}

pub fn fan_from_json(v: &Value) -> Result<Fan> {
    let dim = usize_from_json(field(v, "dim")?)?;
    let rays = field(v, "rays")?
        .as_array()
        .ok_or_else(|| malformed("rays must be an array"))?
        .iter()
        .map(vector_from_json)
        .collect::<Result<Vec<_>>>()?;
    let cones = field(v, "cones")?
        .as_array()
        .ok_or_else(|| malformed("cones must be an array"))?
        .iter()
        .map(|c| {
            c.as_array()
                .ok_or_else(|| malformed("each cone is an array of ray indices"))?
                .iter()
                .map(usize_from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let complete = match v.get("complete") {
        None | Some(Value::Null) => None,
        Some(Value::Bool(b)) => Some(*b),
        Some(other) => {
            return Err(malformed(format!(
                "complete must be a boolean or null, found {other}"
            )))
        }
    };
    Fan::from_parts(dim, &rays, &cones, Completeness::from_option(complete))
}

/// `{"complete", "max_cones"}`, plus a `defect` object when incomplete.
/// Facets are given as positions in the fan's ray list, like cones.
pub fn completeness_to_json(report: &CompletenessReport, fan: &Fan) -> Value {
    let mut out = json!({
        "complete": report.is_complete(),
        "max_cones": fan.cones().len(),
    });
    if let CompletenessReport::Incomplete(defect) = report {
        let defect = match defect {
            Defect::Empty => json!({ "kind": "empty" }),
            Defect::UnmatchedFacet(facet) => json!({ "kind": "unmatched_facet", "facet": facet }),
            Defect::OvermatchedFacet { facet, count } => {
                json!({ "kind": "overmatched_facet", "facet": facet, "count": count })
            }
            Defect::Disconnected { components } => {
                json!({ "kind": "disconnected", "components": components })
            }
        };
        out["defect"] = defect;
    }
    out
}

pub fn membership_to_json(m: &Membership) -> Value {
    match m {
        Membership::Inside { cone, coefficients } => json!({
            "inside": true,
            "cone": cone,
            "coefficients": coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        Membership::Outside => json!({ "inside": false }),
    }
}

pub fn lattice_cover_to_json(c: &LatticeCover, radius: u32) -> Value {
    match c {
        LatticeCover::Covered { points } => {
            json!({ "covered": true, "radius": radius, "points": points })
        }
        LatticeCover::Missing(z) => {
            json!({ "covered": false, "radius": radius, "missing": vector_to_json(z) })
        }
    }
}

pub fn certificate_to_json(c: &WitnessCertificate) -> Value {
    json!({
        "b": rows_to_json(c.input.matrix()),
        "path": indices_to_json(&c.path),
        "pair": indices_to_json(&[c.pair.0, c.pair.1]),
        "bc": [int_to_json(c.params.b()), int_to_json(c.params.c())],
        "witness": vector_to_json(&c.witness),
        "witness_at_bprime": vector_to_json(&c.witness_at_bprime),
    })
}

/// The certificate, or `{"kind": "finite", "class_size"}` for finite type.
pub fn witness_outcome_to_json(o: &WitnessOutcome) -> Value {
    match o {
        WitnessOutcome::FiniteType { class_size } => {
            json!({ "kind": "finite", "class_size": class_size })
        }
        WitnessOutcome::Witness(cert) => certificate_to_json(cert),
    }
}

pub fn certificate_from_json(v: &Value) -> Result<WitnessCertificate> {
    let input = ExchangeMatrix::new(rows_from_json(field(v, "b")?)?)?;
    let pair = indices_from_json(field(v, "pair")?)?;
    if pair.len() != 2 {
        return Err(malformed("pair must have two entries"));
    }
    let bc = vector_from_json(field(v, "bc")?)?;
    if bc.len() != 2 {
        return Err(malformed("bc must have two entries"));
    }
    Ok(WitnessCertificate {
        input,
        path: indices_from_json(field(v, "path")?)?,
        pair: (pair[0], pair[1]),
        params: Rank2Params::new(bc[0].clone(), bc[1].clone())?,
        witness_at_bprime: vector_from_json(field(v, "witness_at_bprime")?)?,
        witness: vector_from_json(field(v, "witness")?)?,
    })
}

pub fn report_to_json(r: &VerificationReport) -> Value {
    let mut checks = Map::new();
    for c in &r.checks {
        checks.insert(
            c.kind.name().to_string(),
            json!({ "passed": c.passed, "detail": c.detail }),
        );
    }
    json!({
        "passed": r.passed(),
        "checks": checks,
        "depth": r.depth,
        "cones_examined": r.cones_examined,
        "scope": r.scope(),
    })
}
