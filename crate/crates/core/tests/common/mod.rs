//! Shared builders for the integration and acceptance suites.
#![allow(dead_code)]

use entrobetti_core::{LaurentMatrix, LaurentPoly, Point, SubshiftPresentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn poly(dim: usize, exps: &[Point]) -> LaurentPoly {
    LaurentPoly::from_exponents(dim, exps.iter().copied())
}

pub fn ledrappier() -> SubshiftPresentation {
    let rel =
        LaurentMatrix::from_entries(1, 1, 2, vec![poly(2, &[[0, 0, 0], [1, 0, 0], [0, 1, 0]])])
            .unwrap();
    SubshiftPresentation::new(1, 2, rel).unwrap()
}

pub fn constants_d1() -> SubshiftPresentation {
    let rel = LaurentMatrix::from_entries(1, 1, 1, vec![poly(1, &[[0, 0, 0], [1, 0, 0]])]).unwrap();
    SubshiftPresentation::new(1, 1, rel).unwrap()
}

pub fn zero_subshift(dim: usize) -> SubshiftPresentation {
    SubshiftPresentation::new(1, dim, LaurentMatrix::identity(1, dim)).unwrap()
}

pub fn two_stencil_d2() -> SubshiftPresentation {
    let rel = LaurentMatrix::from_entries(
        2,
        1,
        2,
        vec![
            poly(2, &[[0, 0, 0], [1, 0, 0]]),
            poly(2, &[[0, 0, 0], [0, 1, 0]]),
        ],
    )
    .unwrap();
    SubshiftPresentation::new(1, 2, rel).unwrap()
}

/// The preset battery the oracle- and duality-facing criteria run over.
pub fn preset_battery() -> Vec<(&'static str, SubshiftPresentation)> {
    vec![
        (
            "full-shift-d1",
            SubshiftPresentation::full_shift(1, 1).unwrap(),
        ),
        (
            "full-shift-d2",
            SubshiftPresentation::full_shift(1, 2).unwrap(),
        ),
        ("ledrappier", ledrappier()),
        ("constants-d1", constants_d1()),
        ("zero-d1", zero_subshift(1)),
        ("two-stencil-d2", two_stencil_d2()),
    ]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random Laurent matrix with entries supported in the ℓ¹ ball of the
/// given radius, up to three terms per entry.
pub fn random_laurent(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    dim: usize,
    radius: i64,
) -> LaurentMatrix {
    let mut m = LaurentMatrix::zero(rows, cols, dim);
    for r in 0..rows {
        for c in 0..cols {
            let terms = rng.random_range(0..4);
            let exps: Vec<Point> = (0..terms)
                .map(|_| loop {
                    let mut e = [0i64; 3];
                    for x in e.iter_mut().take(dim) {
                        *x = rng.random_range(-radius..=radius);
                    }
                    if e.iter().map(|x| x.unsigned_abs()).sum::<u64>() <= radius as u64 {
                        break e;
                    }
                })
                .collect();
            m.set(r, c, LaurentPoly::from_exponents(dim, exps));
        }
    }
    m
}

/// Random presentation over d=2 with r, s ≤ 3 and stencil radius ≤ 2.
pub fn random_presentation(rng: &mut ChaCha8Rng) -> SubshiftPresentation {
    let r = rng.random_range(1..=3);
    let s = rng.random_range(1..=3);
    let relations = random_laurent(rng, s, r, 2, 2);
    SubshiftPresentation::new(r, 2, relations).unwrap()
}
