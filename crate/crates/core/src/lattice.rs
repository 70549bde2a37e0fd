//! Geometry of Z^d (1 ≤ d ≤ 3): finite windows, ℓ¹ balls and boundaries,
//! Følner boxes, ε-quasi-tiling verification, and finite-index quotients.
//!
//! The word metric is fixed to the standard symmetric generator set
//! {±e_1,…,±e_d}, i.e. the ℓ¹ metric. Entropy limits do not depend on the
//! generator choice, so the simplest one is used throughout.

use std::collections::{HashMap, HashSet};

use crate::error::Error;

/// A lattice point. Coordinates past the active dimension are zero.
pub type Point = [i64; 3];

pub(crate) fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn neg(a: Point) -> Point {
    [-a[0], -a[1], -a[2]]
}

pub(crate) fn l1(a: Point) -> u64 {
    a.iter().map(|x| x.unsigned_abs()).sum()
}

/// All offsets of ℓ¹ norm ≤ r in dimension `dim`, lexicographically sorted.
pub(crate) fn ball_offsets(dim: usize, r: u64) -> Vec<Point> {
    let r = r as i64;
    let range = |active: bool| if active { -r..=r } else { 0..=0 };
    let mut out = Vec::new();
    for x in range(dim >= 1) {
        for y in range(dim >= 2) {
            for z in range(dim >= 3) {
                let p = [x, y, z];
                if l1(p) <= r as u64 {
                    out.push(p);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// A finite subset of Z^d with its points kept sorted and distinct.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeWindow {
    dim: usize,
    points: Vec<Point>,
}

impl LatticeWindow {
    /// Builds a window from arbitrary points; duplicates are dropped.
    pub fn new(dim: usize, mut points: Vec<Point>) -> Result<Self, Error> {
        check_dim(dim)?;
        if let Some(p) = points.iter().find(|p| p[dim..].iter().any(|&x| x != 0)) {
            return Err(Error::argument(format!(
                "point {p:?} has nonzero coordinates beyond dimension {dim}"
            )));
        }
        points.sort_unstable();
        points.dedup();
        Ok(LatticeWindow { dim, points })
    }

    pub fn empty(dim: usize) -> Self {
        LatticeWindow {
            dim,
            points: Vec::new(),
        }
    }

    /// The Følner box [0,n)^d.
    pub fn folner_box(n: usize, dim: usize) -> Result<Self, Error> {
        check_dim(dim)?;
        if n == 0 {
            return Err(Error::argument("Følner box size must be ≥ 1"));
        }
        let n = n as i64;
        let range = |active: bool| if active { 0..n } else { 0..1 };
        let mut points = Vec::with_capacity((n as usize).pow(dim as u32));
        for x in range(dim >= 1) {
            for y in range(dim >= 2) {
                for z in range(dim >= 3) {
                    points.push([x, y, z]);
                }
            }
        }
        points.sort_unstable();
        Ok(LatticeWindow { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    /// Position of `p` in the sorted point list.
    pub fn position(&self, p: Point) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    pub fn index_map(&self) -> HashMap<Point, usize> {
        self.points
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect()
    }

    pub fn translate(&self, offset: Point) -> LatticeWindow {
        let mut points: Vec<Point> = self.points.iter().map(|&p| add(p, offset)).collect();
        points.sort_unstable();
        LatticeWindow {
            dim: self.dim,
            points,
        }
    }

    /// The ℓ¹ ball B_r(self) = {a : ∃h, d(a,h) ≤ r}; ball(·, 0) = self.
    pub fn ball(&self, r: u64) -> LatticeWindow {
        if r == 0 {
            return self.clone();
        }
        let offsets = ball_offsets(self.dim, r);
        let mut set: HashSet<Point> = HashSet::with_capacity(self.points.len() * 2);
        for &p in &self.points {
            for &o in &offsets {
                set.insert(add(p, o));
            }
        }
        let mut points: Vec<Point> = set.into_iter().collect();
        points.sort_unstable();
        LatticeWindow {
            dim: self.dim,
            points,
        }
    }

    /// The r-boundary ∂_r = B_r(self) \ self.
    pub fn boundary(&self, r: u64) -> LatticeWindow {
        let ball = self.ball(r);
        let points: Vec<Point> = ball
            .points
            .into_iter()
            .filter(|&p| !self.contains(p))
            .collect();
        LatticeWindow {
            dim: self.dim,
            points,
        }
    }

    pub fn is_subset_of(&self, other: &LatticeWindow) -> bool {
        self.points.iter().all(|&p| other.contains(p))
    }
}

fn check_dim(dim: usize) -> Result<(), Error> {
    if (1..=3).contains(&dim) {
        Ok(())
    } else {
        Err(Error::argument(format!(
            "unsupported dimension {dim} (1 ≤ d ≤ 3)"
        )))
    }
}

/// Witness of an ε-disjointness failure inside one tile family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonWitness {
    pub family: usize,
    pub center: Point,
    /// Points the greedy sub-tile kept after removing previously claimed ones.
    pub kept: usize,
    pub tile_size: usize,
}

/// Outcome of checking a candidate quasi-tiling against a target window.
#[derive(Clone, Debug, PartialEq)]
pub struct TilingReport {
    /// First point shared by two distinct families, if any.
    pub cross_family_witness: Option<(usize, usize, Point)>,
    /// First translate whose greedy sub-tile falls under the 1−ε ratio.
    pub epsilon_witness: Option<EpsilonWitness>,
    pub covered: u64,
    pub target_size: u64,
    pub coverage_pass: bool,
    /// Informational: whether the identity lies in the first tile and the
    /// tiles are nested T_1 ⊆ T_2 ⊆ … .
    pub contains_identity: bool,
    pub nested: bool,
    pub epsilon: f64,
}

impl TilingReport {
    pub fn cross_family_pass(&self) -> bool {
        self.cross_family_witness.is_none()
    }

    pub fn epsilon_disjoint_pass(&self) -> bool {
        self.epsilon_witness.is_none()
    }

    pub fn pass(&self) -> bool {
        self.cross_family_pass() && self.epsilon_disjoint_pass() && self.coverage_pass
    }
}

/// Checks the three quasi-tile conditions for `tiles` translated by
/// `centers` against `target`:
/// (1) cross-family translate sets are pairwise disjoint,
/// (2) within each family the translates are ε-disjoint (greedy sub-tiles
///     in center order serve as the certificate),
/// (3) the union (1−ε)-covers the target.
pub fn verify_quasi_tiling(
    tiles: &[LatticeWindow],
    centers: &[Vec<Point>],
    target: &LatticeWindow,
    epsilon: f64,
) -> Result<TilingReport, Error> {
    if tiles.len() != centers.len() {
        return Err(Error::argument(format!(
            "{} tiles but {} center sets",
            tiles.len(),
            centers.len()
        )));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::argument(format!("ε = {epsilon} outside [0, 1)")));
    }
    if let Some(t) = tiles.iter().find(|t| t.dim() != target.dim()) {
        return Err(Error::argument(format!(
            "tile dimension {} does not match target dimension {}",
            t.dim(),
            target.dim()
        )));
    }

    // Condition 1: cross-family disjointness.
    let family_unions: Vec<HashSet<Point>> = tiles
        .iter()
        .zip(centers)
        .map(|(tile, cs)| {
            let mut u = HashSet::new();
            for &c in cs {
                for &t in tile.points() {
                    u.insert(add(c, t));
                }
            }
            u
        })
        .collect();
    let mut cross_family_witness = None;
    'outer: for i in 0..family_unions.len() {
        for j in i + 1..family_unions.len() {
            if let Some(&p) = family_unions[i].intersection(&family_unions[j]).min() {
                cross_family_witness = Some((i, j, p));
                break 'outer;
            }
        }
    }

    // Condition 2: ε-disjointness within each family, greedy in center order.
    let mut epsilon_witness = None;
    'families: for (fi, (tile, cs)) in tiles.iter().zip(centers).enumerate() {
        let mut claimed: HashSet<Point> = HashSet::new();
        for &c in cs {
            let mut kept = 0usize;
            let mut fresh = Vec::with_capacity(tile.len());
            for &t in tile.points() {
                let p = add(c, t);
                if !claimed.contains(&p) {
                    kept += 1;
                    fresh.push(p);
                }
            }
            if !tile.is_empty() && (kept as f64) < (1.0 - epsilon) * tile.len() as f64 {
                epsilon_witness = Some(EpsilonWitness {
                    family: fi,
                    center: c,
                    kept,
                    tile_size: tile.len(),
                });
                break 'families;
            }
            claimed.extend(fresh);
        }
    }

    // Condition 3: (1−ε)-coverage of the target.
    let covered = target
        .points()
        .iter()
        .filter(|p| family_unions.iter().any(|u| u.contains(*p)))
        .count() as u64;
    let target_size = target.len() as u64;
    let coverage_pass = target_size == 0 || covered as f64 >= (1.0 - epsilon) * target_size as f64;

    let origin = [0i64; 3];
    let contains_identity = tiles.first().is_some_and(|t| t.contains(origin));
    let nested = tiles.windows(2).all(|w| w[0].is_subset_of(&w[1]));

    Ok(TilingReport {
        cross_family_witness,
        epsilon_witness,
        covered,
        target_size,
        coverage_pass,
        contains_identity,
        nested,
        epsilon,
    })
}

type Mat3 = [[i64; 3]; 3];

const IDENT3: Mat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn mat_vec(m: &Mat3, v: Point) -> Point {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn det3(m: &Mat3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Inverse of a unimodular integer matrix via the adjugate.
fn inv_unimodular(m: &Mat3) -> Mat3 {
    let det = det3(m);
    debug_assert!(det == 1 || det == -1, "matrix is not unimodular");
    let cof = |r: usize, c: usize| -> i64 {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let minor = m[rs[0]][cs[0]] * m[rs[1]][cs[1]] - m[rs[0]][cs[1]] * m[rs[1]][cs[0]];
        if (r + c).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    let mut inv = [[0i64; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            inv[r][c] = cof(c, r) / det;
        }
    }
    inv
}

/// A finite-index quotient Z^d / Λ where Λ is the column lattice of `basis`.
///
/// Coset representatives and the canonical reduction map are derived from a
/// Smith-style diagonalization U·B·V = diag(d_1,…).
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    dim: usize,
    basis: Mat3,
    index: u64,
    diag: [i64; 3],
    u: Mat3,
    u_inv: Mat3,
    reps: Vec<Point>,
    rep_positions: HashMap<Point, usize>,
}

impl FiniteQuotient {
    /// `basis` columns generate the sublattice; entries beyond `dim` are
    /// ignored and padded with the identity.
    pub fn new(dim: usize, basis: &[Vec<i64>]) -> Result<Self, Error> {
        check_dim(dim)?;
        if basis.len() != dim || basis.iter().any(|row| row.len() != dim) {
            return Err(Error::argument(format!(
                "quotient basis must be a {dim}×{dim} matrix"
            )));
        }
        let mut b = IDENT3;
        for r in 0..dim {
            for c in 0..dim {
                b[r][c] = basis[r][c];
            }
        }
        let det = det3(&b);
        if det == 0 {
            return Err(Error::argument("quotient basis is singular"));
        }

        let (u, diag) = diagonalize(b);
        let u_inv = inv_unimodular(&u);
        let index = diag.iter().map(|&d| d as u64).product::<u64>();
        debug_assert_eq!(index, det.unsigned_abs());

        let mut reps = Vec::with_capacity(index as usize);
        for x in 0..diag[0] {
            for y in 0..diag[1] {
                for z in 0..diag[2] {
                    reps.push(mat_vec(&u_inv, [x, y, z]));
                }
            }
        }
        let rep_positions = reps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        Ok(FiniteQuotient {
            dim,
            basis: b,
            index,
            diag,
            u,
            u_inv,
            reps,
            rep_positions,
        })
    }

    /// Quotient by the diagonal sublattice n·Z^d.
    pub fn diagonal(dim: usize, n: u64) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::argument("diagonal quotient parameter must be ≥ 1"));
        }
        check_dim(dim)?;
        let basis: Vec<Vec<i64>> = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| if r == c { n as i64 } else { 0 })
                    .collect()
            })
            .collect();
        FiniteQuotient::new(dim, &basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn basis(&self) -> &Mat3 {
        &self.basis
    }

    /// Coset representatives, in a fixed order.
    pub fn representatives(&self) -> &[Point] {
        &self.reps
    }

    /// Canonical representative of the coset of `p`.
    pub fn reduce(&self, p: Point) -> Point {
        let y = mat_vec(&self.u, p);
        let m = [
            y[0].rem_euclid(self.diag[0]),
            y[1].rem_euclid(self.diag[1]),
            y[2].rem_euclid(self.diag[2]),
        ];
        mat_vec(&self.u_inv, m)
    }

    /// Index of the coset of `p` in [`Self::representatives`].
    pub fn position(&self, p: Point) -> usize {
        self.rep_positions[&self.reduce(p)]
    }
}

/// Diagonalizes `b` with unimodular row operations tracked in `u` and
/// untracked column operations: returns (U, diag) with U·b·V = diag for
/// some unimodular V, diag entries positive.
fn diagonalize(mut b: Mat3) -> (Mat3, [i64; 3]) {
    let mut u = IDENT3;
    for t in 0..3 {
        loop {
            // Move the smallest nonzero entry of the trailing block to (t,t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..3 {
                for j in t..3 {
                    if b[i][j] != 0 && best.is_none_or(|(bi, bj)| b[i][j].abs() < b[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            if pi != t {
                b.swap(pi, t);
                u.swap(pi, t);
            }
            if pj != t {
                for row in &mut b {
                    row.swap(pj, t);
                }
            }
            let mut clean = true;
            for i in t + 1..3 {
                let q = b[i][t].div_euclid(b[t][t]);
                if q != 0 {
                    for j in 0..3 {
                        b[i][j] -= q * b[t][j];
                        u[i][j] -= q * u[t][j];
                    }
                }
                if b[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..3 {
                let q = b[t][j].div_euclid(b[t][t]);
                if q != 0 {
                    for row in &mut b {
                        row[j] -= q * row[t];
                    }
                }
                if b[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if b[t][t] < 0 {
            for j in 0..3 {
                b[t][j] = -b[t][j];
                u[t][j] = -u[t][j];
            }
        }
    }
    (u, [b[0][0], b[1][1], b[2][2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Brute-force ℓ¹ dilation over a padded coordinate box: the
    /// independent oracle for ball and boundary counts.
    fn brute_ball(w: &LatticeWindow, r: u64) -> Vec<Point> {
        let r = r as i64;
        let mut out = Vec::new();
        let lo = -200i64;
        let hi = 200i64;
        let range = |active: bool| if active { lo..=hi } else { 0..=0 };
        for x in range(w.dim() >= 1) {
            for y in range(w.dim() >= 2) {
                for z in range(w.dim() >= 3) {
                    let p = [x, y, z];
                    if w.points()
                        .iter()
                        .any(|&h| l1([p[0] - h[0], p[1] - h[1], p[2] - h[2]]) <= r as u64)
                    {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn folner_box_examples() {
        let b = LatticeWindow::folner_box(2, 2).unwrap();
        assert_eq!(b.points(), &[[0, 0, 0], [0, 1, 0], [1, 0, 0], [1, 1, 0]]);
        let b = LatticeWindow::folner_box(1, 3).unwrap();
        assert_eq!(b.points(), &[[0, 0, 0]]);
        assert!(LatticeWindow::folner_box(0, 2).is_err());
        assert!(LatticeWindow::folner_box(2, 4).is_err());
    }

    #[test]
    fn folner_boxes_nest() {
        for d in 1..=3 {
            for n in 1..5 {
                let small = LatticeWindow::folner_box(n, d).unwrap();
                let big = LatticeWindow::folner_box(n + 1, d).unwrap();
                assert!(small.is_subset_of(&big));
                assert_eq!(small.len(), n.pow(d as u32));
            }
        }
    }

    #[test]
    fn unit_ball_in_d2() {
        let origin = LatticeWindow::new(2, vec![[0, 0, 0]]).unwrap();
        assert_eq!(origin.ball(1).len(), 5);
        assert_eq!(LatticeWindow::empty(2).ball(3).len(), 0);
    }

    #[test]
    fn ball_of_box_matches_brute_force() {
        let b = LatticeWindow::folner_box(3, 2).unwrap();
        let fast = b.ball(2);
        let brute = brute_ball(&b, 2);
        assert_eq!(fast.points(), brute.as_slice());
        assert_eq!(fast.len(), 37);
    }

    #[test]
    fn boundary_of_box() {
        // ∂₁ of [0,4)² in the ℓ¹ word metric, against the brute-force oracle.
        let b = LatticeWindow::folner_box(4, 2).unwrap();
        let boundary = b.boundary(1);
        let brute: Vec<Point> = brute_ball(&b, 1)
            .into_iter()
            .filter(|&p| !b.contains(p))
            .collect();
        assert_eq!(boundary.points(), brute.as_slice());
        assert_eq!(boundary.len(), 16);
        for p in boundary.points() {
            assert!(!b.contains(*p));
        }
    }

    #[test]
    fn boundary_in_d1() {
        let origin = LatticeWindow::new(1, vec![[0, 0, 0]]).unwrap();
        assert_eq!(origin.boundary(1).points(), &[[-1, 0, 0], [1, 0, 0]]);
    }

    #[test]
    fn ball_monotone_and_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..15 {
            let d = rng.random_range(1..=3usize);
            let pts: Vec<Point> = (0..rng.random_range(1..6))
                .map(|_| {
                    let mut p = [0i64; 3];
                    for x in p.iter_mut().take(d) {
                        *x = rng.random_range(-3..3);
                    }
                    p
                })
                .collect();
            let w = LatticeWindow::new(d, pts).unwrap();
            let a = rng.random_range(0..3u64);
            let b = rng.random_range(0..3u64);
            assert!(w.ball(a).is_subset_of(&w.ball(a + 1)));
            assert_eq!(w.ball(a).ball(b), w.ball(a + b));
        }
    }

    #[test]
    fn folner_ratio_decreases() {
        let ratios: Vec<f64> = [4usize, 8, 16, 32]
            .iter()
            .map(|&n| {
                let b = LatticeWindow::folner_box(n, 2).unwrap();
                b.boundary(2).len() as f64 / b.len() as f64
            })
            .collect();
        for pair in ratios.windows(2) {
            assert!(pair[1] < pair[0]);
        }
        assert!(ratios.last().unwrap() < &0.6);
    }

    fn grid_centers(step: i64, count: i64) -> Vec<Point> {
        let mut cs = Vec::new();
        for x in 0..count {
            for y in 0..count {
                cs.push([x * step, y * step, 0]);
            }
        }
        cs
    }

    #[test]
    fn exact_partition_passes_and_larger_target_fails() {
        let tile = LatticeWindow::folner_box(2, 2).unwrap();
        let centers = vec![grid_centers(2, 4)];
        let target = LatticeWindow::folner_box(8, 2).unwrap();
        let report =
            verify_quasi_tiling(std::slice::from_ref(&tile), &centers, &target, 0.0).unwrap();
        assert!(report.pass(), "{report:?}");
        assert_eq!(report.covered, 64);

        let bigger = LatticeWindow::folner_box(9, 2).unwrap();
        let report = verify_quasi_tiling(&[tile], &centers, &bigger, 0.0).unwrap();
        assert!(!report.coverage_pass);
        assert!(report.cross_family_pass() && report.epsilon_disjoint_pass());
        assert_eq!((report.covered, report.target_size), (64, 81));
    }

    #[test]
    fn epsilon_disjoint_overlap() {
        // Two translates of a 4-point tile sharing one point: the greedy
        // sub-tile of the second keeps 3 of 4 points.
        let tile = LatticeWindow::new(1, (0..4).map(|x| [x, 0, 0]).collect()).unwrap();
        let centers = vec![vec![[0, 0, 0], [3, 0, 0]]];
        let target = LatticeWindow::new(1, (0..7).map(|x| [x, 0, 0]).collect()).unwrap();
        let report =
            verify_quasi_tiling(std::slice::from_ref(&tile), &centers, &target, 0.25).unwrap();
        assert!(report.epsilon_disjoint_pass());
        assert!(report.pass());

        // At ε = 0 the same overlap is a failure with the expected witness.
        let report = verify_quasi_tiling(&[tile], &centers, &target, 0.0).unwrap();
        let w = report.epsilon_witness.expect("overlap must be witnessed");
        assert_eq!(
            (w.family, w.center, w.kept, w.tile_size),
            (0, [3, 0, 0], 3, 4)
        );
    }

    #[test]
    fn cross_family_overlap_witnessed() {
        let t1 = LatticeWindow::folner_box(2, 1).unwrap();
        let t2 = LatticeWindow::folner_box(3, 1).unwrap();
        let centers = vec![vec![[0, 0, 0]], vec![[1, 0, 0]]];
        let target = LatticeWindow::folner_box(4, 1).unwrap();
        let report = verify_quasi_tiling(&[t1, t2], &centers, &target, 0.5).unwrap();
        assert_eq!(report.cross_family_witness, Some((0, 1, [1, 0, 0])));
    }

    #[test]
    fn tiling_argument_errors() {
        let tile = LatticeWindow::folner_box(2, 2).unwrap();
        let target = LatticeWindow::folner_box(4, 2).unwrap();
        assert!(verify_quasi_tiling(std::slice::from_ref(&tile), &[], &target, 0.0).is_err());
        assert!(verify_quasi_tiling(std::slice::from_ref(&tile), &[vec![]], &target, 1.5).is_err());
        let target_d1 = LatticeWindow::folner_box(4, 1).unwrap();
        assert!(verify_quasi_tiling(&[tile], &[vec![]], &target_d1, 0.0).is_err());
    }

    #[test]
    fn quotient_diagonal() {
        let q = FiniteQuotient::diagonal(2, 3).unwrap();
        assert_eq!(q.index(), 9);
        let box3 = LatticeWindow::folner_box(3, 2).unwrap();
        let reps = LatticeWindow::new(2, q.representatives().to_vec()).unwrap();
        assert_eq!(reps.points(), box3.points());
        assert_eq!(q.reduce([4, -2, 0]), [1, 1, 0]);
    }

    #[test]
    fn quotient_d1() {
        let q = FiniteQuotient::new(1, &[vec![3]]).unwrap();
        assert_eq!(q.index(), 3);
        let mut reps = q.representatives().to_vec();
        reps.sort_unstable();
        assert_eq!(reps, vec![[0, 0, 0], [1, 0, 0], [2, 0, 0]]);
    }

    #[test]
    fn quotient_shear_basis() {
        // [[2,1],[0,1]] has |det| = 2; elimination gives diag(1,2).
        let q = FiniteQuotient::new(2, &[vec![2, 1], vec![0, 1]]).unwrap();
        assert_eq!(q.index(), 2);
        assert_eq!(q.representatives().len(), 2);
    }

    #[test]
    fn quotient_rejects_singular() {
        assert!(FiniteQuotient::new(2, &[vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn reduce_is_idempotent_and_constant_on_cosets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let d = rng.random_range(1..=3usize);
            let basis: Vec<Vec<i64>> = (0..d)
                .map(|_| (0..d).map(|_| rng.random_range(-4..=4i64)).collect())
                .collect();
            let Ok(q) = FiniteQuotient::new(d, &basis) else {
                continue;
            };
            assert_eq!(q.representatives().len() as u64, q.index());
            for _ in 0..10 {
                let mut p = [0i64; 3];
                for x in p.iter_mut().take(d) {
                    *x = rng.random_range(-20..20);
                }
                let r = q.reduce(p);
                assert_eq!(q.reduce(r), r);
                // Shifting by basis columns stays in the same coset.
                for c in 0..d {
                    let mut shifted = p;
                    for (row, s) in shifted.iter_mut().enumerate().take(d) {
                        *s += basis[row][c];
                    }
                    assert_eq!(q.reduce(shifted), r);
                }
                assert!(q.position(p) < q.index() as usize);
            }
        }
    }
}
