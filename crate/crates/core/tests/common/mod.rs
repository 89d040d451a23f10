#![allow(dead_code, clippy::needless_range_loop)]

pub mod oracle;

use gfan_core::{decide_finite_type, ExchangeMatrix, DEFAULT_CLASS_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn m(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::from_i64_rows(rows).unwrap()
}

pub fn a3() -> ExchangeMatrix {
    m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])
}

pub fn a4() -> ExchangeMatrix {
    m(&[
        &[0, 1, 0, 0],
        &[-1, 0, 1, 0],
        &[0, -1, 0, 1],
        &[0, 0, -1, 0],
    ])
}

pub fn b3() -> ExchangeMatrix {
    m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -2, 0]])
}

pub fn c3() -> ExchangeMatrix {
    m(&[&[0, 1, 0], &[-1, 0, 2], &[0, -1, 0]])
}

pub fn d4() -> ExchangeMatrix {
    m(&[
        &[0, -1, 0, 0],
        &[1, 0, 1, 1],
        &[0, -1, 0, 0],
        &[0, -1, 0, 0],
    ])
}

pub fn markov() -> ExchangeMatrix {
    m(&[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]])
}

/// `[[0, c], [-b, 0]]`.
pub fn rank2(b: i64, c: i64) -> ExchangeMatrix {
    ExchangeMatrix::rank2(b, c).unwrap()
}

/// Random skew-symmetrizable matrix: `d_i` in `1..=max_d`, and
/// `d_i b_ij = t * lcm(d_i, d_j)` with `t` in `-max_t..=max_t`.
pub fn random_skew_symmetrizable(
    rng: &mut impl Rng,
    n: usize,
    max_d: i64,
    max_t: i64,
) -> ExchangeMatrix {
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=max_d)).collect();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let lcm = num_integer::lcm(d[i], d[j]);
            let s = rng.gen_range(-max_t..=max_t) * lcm;
            rows[i][j] = s / d[i];
            rows[j][i] = -s / d[j];
        }
    }
    ExchangeMatrix::from_i64_rows(&rows).unwrap()
}

/// The first `count` random 3x3 matrices (fixed seed) that are of infinite
/// type but only after at least one mutation.
pub fn random_infinite_3x3(count: usize) -> Vec<ExchangeMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6_fa4);
    let mut out = Vec::new();
    while out.len() < count {
        let b = random_skew_symmetrizable(&mut rng, 3, 2, 2);
        if b.two_finiteness_violation().is_some() {
            continue;
        }
        if !decide_finite_type(&b, DEFAULT_CLASS_BUDGET)
            .unwrap()
            .is_finite()
        {
            out.push(b);
        }
    }
    out
}

pub struct Case {
    pub name: String,
    pub matrix: ExchangeMatrix,
    pub finite: bool,
}

/// The equivalence suite: rank 2 with bc in 1..=6, A1, A3, A4, B3, C3, D4,
/// Markov and two random infinite-type 3x3 matrices.
pub fn suite() -> Vec<Case> {
    let mut cases = Vec::new();
    for (b, c) in [
        (1, 1),
        (2, 1),
        (1, 2),
        (3, 1),
        (1, 3),
        (4, 1),
        (2, 2),
        (1, 4),
        (5, 1),
        (1, 5),
        (6, 1),
        (3, 2),
        (2, 3),
        (1, 6),
    ] {
        cases.push(Case {
            name: format!("B_{{{b},{c}}}"),
            matrix: rank2(b, c),
            finite: b * c <= 3,
        });
    }
    for (name, matrix) in [
        ("A1", m(&[&[0]])),
        ("A3", a3()),
        ("A4", a4()),
        ("B3", b3()),
        ("C3", c3()),
        ("D4", d4()),
    ] {
        cases.push(Case {
            name: name.into(),
            matrix,
            finite: true,
        });
    }
    cases.push(Case {
        name: "Markov".into(),
        matrix: markov(),
        finite: false,
    });
    for (i, matrix) in random_infinite_3x3(2).into_iter().enumerate() {
        cases.push(Case {
            name: format!("random-{}", i + 1),
            matrix,
            finite: false,
        });
    }
    cases
}
