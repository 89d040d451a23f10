//! Plain-text renderings for `--human`.

use std::fmt::Write;

use gfan_core::{
    CompletenessReport, Defect, ExchangeMatrix, Fan, FiniteTypeVerdict, IntMatrix, LatticeCover,
    SeedGraph, WitnessOutcome,
};
use num_bigint::BigInt;

fn tuple(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn one_based(path: &[usize]) -> String {
    if path.is_empty() {
        return "(none)".into();
    }
    let parts: Vec<String> = path.iter().map(|k| (k + 1).to_string()).collect();
    parts.join(" ")
}

pub fn matrix(m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "{}", padded.join("  ")).unwrap();
    }
    out
}

pub fn verdict(b: &ExchangeMatrix, v: &FiniteTypeVerdict) -> String {
    match v {
        FiniteTypeVerdict::Finite { class_size } => {
            format!("finite type: mutation class has {class_size} matrices\n")
        }
        FiniteTypeVerdict::Infinite { path, pair: (i, j) } => {
            let target = b.mutate_along(path).expect("verdict path is valid");
            format!(
                "infinite type\nmutation path: {}\npair ({}, {}): b_{}{} = {}, b_{}{} = {}\n",
                one_based(path),
                i + 1,
                j + 1,
                i + 1,
                j + 1,
                target.entry(*i, *j),
                j + 1,
                i + 1,
                target.entry(*j, *i),
            )
        }
    }
}

pub fn seed_graph(g: &SeedGraph) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{} labeled seeds, {} g-vector tuples, {} edges{}",
        g.labeled_count(),
        g.unordered_tuples().len(),
        g.edges().len(),
        if g.is_exhausted() { "" } else { " (truncated)" }
    )
    .unwrap();
    for (i, s) in g.seeds().iter().enumerate() {
        let gs: Vec<String> = s.g_vectors().iter().map(|v| tuple(v)).collect();
        writeln!(out, "{i:>6}  {}", gs.join(" ")).unwrap();
    }
    out
}

pub fn fan(f: &Fan) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "dimension {}, {} rays, {} maximal cones, complete: {}",
        f.dim(),
        f.rays().len(),
        f.cones().len(),
        match f.completeness().as_option() {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        }
    )
    .unwrap();
    for (i, r) in f.rays().iter().enumerate() {
        writeln!(out, "ray {i:>4}  {}", tuple(r)).unwrap();
    }
    for (i, c) in f.cones().iter().enumerate() {
        let idx: Vec<String> = c.iter().map(ToString::to_string).collect();
        writeln!(out, "cone {i:>3}  {}", idx.join(" ")).unwrap();
    }
    out
}

pub fn completeness(report: &CompletenessReport, f: &Fan) -> String {
    let n = f.cones().len();
    match report {
        CompletenessReport::Complete => format!("complete ({n} maximal cones)\n"),
        CompletenessReport::Incomplete(d) => {
            let why = match d {
                Defect::Empty => "no cones".to_string(),
                Defect::UnmatchedFacet(facet) => format!("facet {facet:?} lies in one cone only"),
                Defect::OvermatchedFacet { facet, count } => {
                    format!("facet {facet:?} lies in {count} cones")
                }
                Defect::Disconnected { components } => {
                    format!("cones split into {components} components")
                }
            };
            format!("incomplete ({n} maximal cones): {why}\n")
        }
    }
}

pub fn lattice_cover(c: &LatticeCover, dim: usize, radius: u32) -> String {
    match c {
        LatticeCover::Covered { points } => {
            format!("covered: all {points} lattice points of [-{radius}, {radius}]^{dim}\n")
        }
        LatticeCover::Missing(z) => format!("not covered: {} lies outside the fan\n", tuple(z)),
    }
}

pub fn witness(o: &WitnessOutcome) -> String {
    match o {
        WitnessOutcome::FiniteType { class_size } => format!(
            "finite type (mutation class of {class_size}): the fan is complete, no witness exists\n"
        ),
        WitnessOutcome::Witness(c) => format!(
            "witness          {}\nmutation path    {}\npair             ({}, {})\nrank-2 block     b = {}, c = {}\nat mutated seed  {}\n",
            tuple(&c.witness),
            one_based(&c.path),
            c.pair.0 + 1,
            c.pair.1 + 1,
            c.params.b(),
            c.params.c(),
            tuple(&c.witness_at_bprime),
        ),
    }
}
