//! Machine-integer reimplementation of matrix and g-vector mutation, written
//! directly from the mutation rules and sharing no code with the library.

use std::collections::BTreeSet;

use gfan_core::ExchangeMatrix;
use num_traits::ToPrimitive;

pub type Mat = Vec<Vec<i64>>;

pub fn to_i64(b: &ExchangeMatrix) -> Mat {
    b.matrix()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

pub fn pos(x: i64) -> i64 {
    x.max(0)
}

/// `b'_ij = b_ij + sgn(b_ik) [b_ik b_kj]_+` off row and column `k`.
pub fn mutate_sign_form(b: &Mat, k: usize) -> Mat {
    let mut out = b.clone();
    for i in 0..b.len() {
        for j in 0..b[0].len() {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + b[i][k].signum() * pos(b[i][k] * b[k][j])
            };
        }
    }
    out
}

#[derive(Clone)]
pub struct Seed {
    pub c: Mat,
    pub g: Vec<Vec<i64>>,
}

pub fn initial(b: &Mat) -> Seed {
    let n = b.len();
    let mut c = b.clone();
    for i in 0..n {
        let mut row = vec![0; n];
        row[i] = 1;
        c.push(row);
    }
    let g = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    Seed { c, g }
}

pub fn mutate_seed(b: &Mat, s: &Seed, k: usize) -> Seed {
    let n = b.len();
    let mut g = s.g.clone();
    let mut gk = vec![0i64; n];
    for t in 0..n {
        gk[t] = -s.g[k][t];
        for i in 0..n {
            gk[t] += pos(s.c[i][k]) * s.g[i][t];
        }
        for j in 0..n {
            gk[t] -= pos(s.c[n + j][k]) * b[t][j];
        }
    }
    g[k] = gk;
    Seed {
        c: mutate_sign_form(&s.c, k),
        g,
    }
}

/// Distinct unordered g-tuples reachable within `depth` mutations.
pub fn tuples_to_depth(b: &Mat, depth: usize) -> BTreeSet<Vec<Vec<i64>>> {
    let n = b.len();
    let mut out = BTreeSet::new();
    let mut stack = vec![(initial(b), usize::MAX, 0usize)];
    while let Some((s, last, d)) = stack.pop() {
        let mut t = s.g.clone();
        t.sort();
        out.insert(t);
        if d == depth {
            continue;
        }
        for k in 0..n {
            if k != last {
                stack.push((mutate_seed(b, &s, k), k, d + 1));
            }
        }
    }
    out
}

/// Enumerates with growing depth until two consecutive depths agree.
pub fn stable_tuples(b: &Mat) -> BTreeSet<Vec<Vec<i64>>> {
    let mut depth = 1;
    let mut prev = tuples_to_depth(b, 0);
    loop {
        let next = tuples_to_depth(b, depth);
        if next == prev {
            return next;
        }
        prev = next;
        depth += 1;
    }
}
