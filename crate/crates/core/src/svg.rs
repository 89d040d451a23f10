//! SVG plots of rank-2 g-fans.
//!
//! Each ray is drawn as a segment from the origin to the boundary of the unit
//! square, so rays near the limiting directions end at height 1. For infinite
//! type the limiting rays are drawn in red and the point `(-2, b)` is marked.

use std::fmt::Write;

use num_bigint::BigInt;

use crate::error::Result;
use crate::rank2::{
    badlands_lattice_point, limiting_slopes, rank2_fan, ray_to_f64, side_rays, Rank2Params, Side,
};

const SIZE: f64 = 360.0;
const SCALE: f64 = 140.0;

fn to_canvas(x: f64, y: f64) -> (f64, f64) {
    (SIZE / 2.0 + SCALE * x, SIZE / 2.0 - SCALE * y)
}

/// Scales a direction onto the boundary of `[-1, 1]^2`.
fn unit_square(x: f64, y: f64) -> (f64, f64) {
    let m = x.abs().max(y.abs());
    if m == 0.0 || !m.is_finite() {
        (0.0, 0.0)
    } else {
        (x / m, y / m)
    }
}

fn segment(out: &mut String, dir: (f64, f64), style: &str) {
    let (x, y) = unit_square(dir.0, dir.1);
    let (x0, y0) = to_canvas(0.0, 0.0);
    let (x1, y1) = to_canvas(x, y);
    writeln!(
        out,
        r#"  <line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" {style}/>"#
    )
    .expect("write to String");
}

/// Renders the fan of `B_{b,c}` with `depth` rays per side (all rays for
/// finite type).
pub fn render_rank2(p: &Rank2Params, depth: usize) -> Result<String> {
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .expect("write to String");
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).expect("write");

    let axis = r##"stroke="#999" stroke-width="1""##;
    for dir in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
        segment(&mut out, dir, axis);
    }

    let ray_style = r##"stroke="#222" stroke-width="1.2""##;
    let rays: Vec<Vec<BigInt>> = if p.is_finite_type() {
        rank2_fan(p, usize::MAX)?.rays().to_vec()
    } else {
        let mut rays = vec![vec![1.into(), 0.into()], vec![0.into(), 1.into()]];
        rays.extend(side_rays(p, Side::First, depth));
        rays.extend(side_rays(p, Side::Second, depth));
        rays
    };
    for r in &rays {
        segment(&mut out, ray_to_f64(r), ray_style);
    }

    if let Ok(slopes) = limiting_slopes(p) {
        let limit = r##"stroke="#d00" stroke-width="1.6""##;
        for s in [&slopes.lower, &slopes.upper] {
            segment(&mut out, (-1.0, -s.to_f64()), limit);
        }
        let z = badlands_lattice_point(p)?;
        let (zx, zy) = ray_to_f64(&z);
        let (x, y) = unit_square(zx, zy);
        let (cx, cy) = to_canvas(x, y);
        writeln!(
            out,
            r##"  <circle cx="{cx:.3}" cy="{cy:.3}" r="4" fill="none" stroke="#06c" stroke-width="1.5"/>"##
        )
        .expect("write");
    }
    writeln!(
        out,
        r#"  <text x="8" y="{:.0}" font-family="sans-serif" font-size="13">B_{{{},{}}}</text>"#,
        SIZE - 10.0,
        p.b(),
        p.c()
    )
    .expect("write");
    out.push_str("</svg>\n");
    Ok(out)
}
