//! Entropy Betti numbers of finite cell complexes carrying a free Z^d
//! cover: equivariant coboundaries as Laurent matrices, the image-entropy
//! route to the Betti values, cohomology of Følner subcomplexes, and
//! finite-cover cohomology towers.
//!
//! Built-in examples:
//! - `circle`: one vertex, one edge over d=1; the cover is the line.
//! - `torus`: one vertex, two edges, one square over d=2; the cover is the
//!   plane grid.
//! - `decorated_lattice_rp2` (+ `_d2`): the circle/torus complex with a
//!   projective-plane cell block glued at each vertex. The block keeps its
//!   own vertex w and cells a (degree 1), b (degree 2); over GF(2) the
//!   attaching maps vanish (the loop a hits w twice, b wraps a twice), so
//!   the block's cochain complex has zero coboundaries and contributes
//!   dim H⁰ = dim H¹ = dim H² = 1 per site — the degree-2 class survives
//!   with GF(2) coefficients even though its real counterpart dies.

use std::collections::HashMap;

use crate::error::{CoboundaryViolation, Error};
use crate::exec::{map_windows, EvalOptions};
use crate::gf2::BitMatrix;
use crate::lattice::{add, FiniteQuotient, LatticeWindow, Point};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::subshift::{image_dim, EntropyEstimate, EstimateMode};

/// Which finite subcomplex a window spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcomplexMode {
    /// Cells whose incident lattice labels all lie in the Følner box.
    Spanned,
    /// Cells with labels in the box thickened by twice the stencil radius.
    Thickened,
}

/// Per-degree dimensions of a finite cochain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyDims {
    pub dims: Vec<usize>,
    pub cell_counts: Vec<usize>,
}

impl CohomologyDims {
    pub fn alternating_sum(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Residual series of the Euler-characteristic identity
/// Σ (−1)^p b_E^p = e(K).
#[derive(Clone, Debug)]
pub struct EulerCheck {
    pub schedule: Vec<usize>,
    pub volumes: Vec<u64>,
    pub alternating: Vec<f64>,
    pub residual: Vec<f64>,
    pub combined_uncertainty: Vec<f64>,
    pub euler: i64,
}

/// Finite cell data of a compact complex with a free Z^d cover.
///
/// Cells of the quotient complex are counted per degree; the coboundary in
/// degree p is a `cells[p+1] × cells[p]` Laurent matrix. `d∘d = 0` is
/// verified symbolically at construction.
#[derive(Clone, Debug)]
pub struct PeriodicComplex {
    dim: usize,
    cells: Vec<usize>,
    coboundaries: Vec<LaurentMatrix>,
    /// Per degree, per cell: lattice labels of the cell's incident vertices
    /// relative to its own label. Derived from coboundary supports; a cell
    /// always carries its own label.
    offsets: Vec<Vec<Vec<Point>>>,
}

impl PeriodicComplex {
    pub fn new(
        dim: usize,
        cells: Vec<usize>,
        coboundaries: Vec<LaurentMatrix>,
    ) -> Result<Self, Error> {
        if cells.is_empty() {
            return Err(Error::argument("complex needs at least one degree"));
        }
        if coboundaries.len() + 1 != cells.len() {
            return Err(Error::argument(format!(
                "{} degrees need {} coboundaries, got {}",
                cells.len(),
                cells.len() - 1,
                coboundaries.len()
            )));
        }
        for (p, d) in coboundaries.iter().enumerate() {
            if d.rows() != cells[p + 1] || d.cols() != cells[p] || d.dim() != dim {
                return Err(Error::argument(format!(
                    "coboundary d_{p} is {}×{} over d={}, expected {}×{} over d={dim}",
                    d.rows(),
                    d.cols(),
                    d.dim(),
                    cells[p + 1],
                    cells[p]
                )));
            }
        }
        check_coboundaries(&coboundaries).map_err(Error::InvalidComplex)?;

        let mut offsets: Vec<Vec<Vec<Point>>> = Vec::with_capacity(cells.len());
        offsets.push(vec![vec![[0, 0, 0]]; cells[0]]);
        for (p, d) in coboundaries.iter().enumerate() {
            let mut level: Vec<Vec<Point>> = Vec::with_capacity(cells[p + 1]);
            for c_up in 0..cells[p + 1] {
                let mut pts = vec![[0i64, 0, 0]];
                for c_lo in 0..cells[p] {
                    for &e in d.entry(c_up, c_lo).support() {
                        for &o in &offsets[p][c_lo] {
                            pts.push(add(e, o));
                        }
                    }
                }
                pts.sort_unstable();
                pts.dedup();
                level.push(pts);
            }
            offsets.push(level);
        }
        Ok(PeriodicComplex {
            dim,
            cells,
            coboundaries,
            offsets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn coboundaries(&self) -> &[LaurentMatrix] {
        &self.coboundaries
    }

    pub fn top_degree(&self) -> usize {
        self.cells.len() - 1
    }

    /// Euler characteristic Σ (−1)^p |K_p| of the quotient complex.
    pub fn euler(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(p, &c)| if p % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Conservative box-bound cell budget for the schedule, mirroring the
    /// entropy engine's guard.
    fn check_budget(&self, schedule: &[usize], opts: &EvalOptions) -> Result<(), Error> {
        let k = self
            .coboundaries
            .iter()
            .map(LaurentMatrix::support_radius)
            .max()
            .unwrap_or(0) as usize;
        let width = self.cells.iter().copied().max().unwrap_or(0).max(1);
        let feasible = |n: usize| -> bool {
            (n + 2 * k)
                .checked_pow(self.dim as u32)
                .and_then(|v| v.checked_mul(width))
                .is_some_and(|cells| cells <= opts.max_cells)
        };
        if let Some(&bad) = schedule.iter().find(|&&n| !feasible(n)) {
            let largest = schedule.iter().copied().filter(|&n| feasible(n)).max();
            return Err(Error::resource(
                format!(
                    "window n={bad} exceeds the cell budget {} ({} cells per site, stencil radius {k})",
                    opts.max_cells, width
                ),
                largest,
            ));
        }
        Ok(())
    }

    /// d_p with the out-of-range degrees realized as zero maps.
    fn coboundary_at(&self, p: usize) -> LaurentMatrix {
        if p < self.coboundaries.len() {
            self.coboundaries[p].clone()
        } else {
            LaurentMatrix::zero(0, self.cells[self.top_degree()], self.dim)
        }
    }

    fn coboundary_below(&self, p: usize) -> LaurentMatrix {
        if p == 0 {
            LaurentMatrix::zero(self.cells[0], 0, self.dim)
        } else {
            self.coboundaries[p - 1].clone()
        }
    }

    /// The p-th entropy Betti estimator over the schedule, computed through
    /// the image-entropy telescoping
    /// `|K_p| − h(Im d_p) − h(Im d_{p−1})`.
    ///
    /// Raw per-window values are reported unclamped; small windows may dip
    /// below zero within the stated uncertainty. The cross-check series is
    /// the spanned-subcomplex cohomology ratio `dim H^p(L_n)/|F_n|`.
    pub fn betti(
        &self,
        p: usize,
        schedule: &[usize],
        opts: &EvalOptions,
    ) -> Result<EntropyEstimate, Error> {
        if p > self.top_degree() {
            return Err(Error::argument(format!(
                "degree {p} out of range 0..={}",
                self.top_degree()
            )));
        }
        if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) || schedule[0] == 0 {
            return Err(Error::argument(
                "schedule must be nonempty, positive, increasing",
            ));
        }
        self.check_budget(schedule, opts)?;
        type WindowRecord = (u64, i64, f64, Option<f64>);
        let above = self.coboundary_at(p);
        let below = self.coboundary_below(p);
        let k_above = above.support_radius();
        let k_below = below.support_radius();
        let per_window: Vec<Result<WindowRecord, Error>> =
            map_windows(schedule, opts.threads, |&n| {
                let w = LatticeWindow::folner_box(n, self.dim)?;
                let vol = w.len() as u64;
                let img_above = image_dim(&above, &w)?;
                let img_below = image_dim(&below, &w)?;
                let dim = self.cells[p] as i64 * vol as i64 - img_above as i64 - img_below as i64;
                let boundary = w.boundary(1);
                let unc = (above.cols() as f64 * boundary.ball(k_above).len() as f64
                    + below.cols() as f64 * boundary.ball(k_below).len() as f64)
                    / vol as f64;
                let cross = if opts.cross_check {
                    let fins = self.folner_cohomology(n, SubcomplexMode::Spanned)?;
                    Some(fins.dims[p] as f64 / vol as f64)
                } else {
                    None
                };
                Ok((vol, dim, unc, cross))
            });
        let per_window = per_window.into_iter().collect::<Result<Vec<_>, _>>()?;
        let volumes: Vec<u64> = per_window.iter().map(|x| x.0).collect();
        let dims: Vec<i64> = per_window.iter().map(|x| x.1).collect();
        let values: Vec<f64> = dims
            .iter()
            .zip(&volumes)
            .map(|(&d, &v)| d as f64 / v as f64)
            .collect();
        let uncertainty: Vec<f64> = per_window.iter().map(|x| x.2).collect();
        let cross_check = per_window.iter().map(|x| x.3).collect::<Option<Vec<f64>>>();
        let snapped = EntropyEstimate::snap_values(&values);
        Ok(EntropyEstimate {
            mode: EstimateMode::Image,
            schedule: schedule.to_vec(),
            volumes,
            dims,
            values,
            uncertainty,
            cross_check,
            snapped,
        })
    }

    /// Per-window residual of Σ (−1)^p (betti value) against the Euler
    /// characteristic. The image terms telescope, so the residual is the
    /// alternating sum of window boundary defects and must stay below the
    /// combined uncertainty.
    pub fn euler_check(&self, schedule: &[usize], opts: &EvalOptions) -> Result<EulerCheck, Error> {
        let inner = EvalOptions {
            cross_check: false,
            ..opts.clone()
        };
        let mut alternating_dims: Vec<i64> = vec![0; schedule.len()];
        let mut combined: Vec<f64> = vec![0.0; schedule.len()];
        let mut volumes: Vec<u64> = Vec::new();
        for p in 0..=self.top_degree() {
            let est = self.betti(p, schedule, &inner)?;
            let sign = if p % 2 == 0 { 1i64 } else { -1 };
            for i in 0..schedule.len() {
                alternating_dims[i] += sign * est.dims[i];
                combined[i] += est.uncertainty[i];
            }
            volumes = est.volumes;
        }
        let euler = self.euler();
        let alternating: Vec<f64> = alternating_dims
            .iter()
            .zip(&volumes)
            .map(|(&d, &v)| d as f64 / v as f64)
            .collect();
        let residual: Vec<f64> = alternating
            .iter()
            .map(|a| (a - euler as f64).abs())
            .collect();
        Ok(EulerCheck {
            schedule: schedule.to_vec(),
            volumes,
            alternating,
            residual,
            combined_uncertainty: combined,
            euler,
        })
    }

    /// Cohomology dimensions of the finite subcomplex spanned by the cells
    /// whose incident lattice labels lie in the Følner box (or its
    /// thickening), per degree, via GF(2) ranks of the restricted
    /// coboundaries.
    pub fn folner_cohomology(
        &self,
        n: usize,
        mode: SubcomplexMode,
    ) -> Result<CohomologyDims, Error> {
        let base = LatticeWindow::folner_box(n, self.dim)?;
        let radius = self
            .coboundaries
            .iter()
            .map(LaurentMatrix::support_radius)
            .max()
            .unwrap_or(0);
        let labels = match mode {
            SubcomplexMode::Spanned => base,
            SubcomplexMode::Thickened => base.ball(2 * radius),
        };
        // Cells present per degree, with a position index for each.
        let mut present: Vec<Vec<(usize, Point)>> = Vec::with_capacity(self.cells.len());
        let mut index: Vec<HashMap<(usize, Point), usize>> = Vec::with_capacity(self.cells.len());
        for p in 0..self.cells.len() {
            let mut level = Vec::new();
            for c in 0..self.cells[p] {
                for &g in labels.points() {
                    if self.offsets[p][c]
                        .iter()
                        .all(|&o| labels.contains(add(g, o)))
                    {
                        level.push((c, g));
                    }
                }
            }
            level.sort_unstable();
            let map = level.iter().enumerate().map(|(i, &cg)| (cg, i)).collect();
            present.push(level);
            index.push(map);
        }
        let mut ranks: Vec<usize> = Vec::with_capacity(self.coboundaries.len());
        for (p, d) in self.coboundaries.iter().enumerate() {
            let mut m = BitMatrix::zero(present[p + 1].len(), present[p].len());
            for (row, &(c_up, g)) in present[p + 1].iter().enumerate() {
                for c_lo in 0..self.cells[p] {
                    for &e in d.entry(c_up, c_lo).support() {
                        let face = (c_lo, add(g, e));
                        let col = index[p][&face];
                        m.set(row, col, true);
                    }
                }
            }
            ranks.push(m.rank());
        }
        let dims: Vec<usize> = (0..self.cells.len())
            .map(|p| {
                let above = if p < ranks.len() { ranks[p] } else { 0 };
                let below = if p > 0 { ranks[p - 1] } else { 0 };
                present[p].len() - above - below
            })
            .collect();
        Ok(CohomologyDims {
            dims,
            cell_counts: present.iter().map(Vec::len).collect(),
        })
    }

    /// Cohomology dimensions of the finite cover attached to the quotient:
    /// coboundaries are folded onto the quotient lattice and the ranks
    /// taken there. The alternating sum equals `index · e(K)` exactly.
    pub fn cover_cohomology(&self, quotient: &FiniteQuotient) -> Result<CohomologyDims, Error> {
        if quotient.dim() != self.dim {
            return Err(Error::argument(format!(
                "quotient dimension {} does not match complex dimension {}",
                quotient.dim(),
                self.dim
            )));
        }
        let index = quotient.index() as usize;
        let ranks: Vec<usize> = self
            .coboundaries
            .iter()
            .map(|d| d.fold(quotient).map(|m| m.rank()))
            .collect::<Result<_, _>>()?;
        let dims: Vec<usize> = (0..self.cells.len())
            .map(|p| {
                let above = if p < ranks.len() { ranks[p] } else { 0 };
                let below = if p > 0 { ranks[p - 1] } else { 0 };
                self.cells[p] * index - above - below
            })
            .collect();
        Ok(CohomologyDims {
            dims,
            cell_counts: self.cells.iter().map(|&c| c * index).collect(),
        })
    }

    /// Built-in example complexes; see the module docs for the cell
    /// structures.
    pub fn example(name: &str) -> Result<PeriodicComplex, Error> {
        let poly = |d: usize, exps: &[Point]| LaurentPoly::from_exponents(d, exps.iter().copied());
        match name {
            "circle" => {
                let d0 =
                    LaurentMatrix::from_entries(1, 1, 1, vec![poly(1, &[[0, 0, 0], [1, 0, 0]])])?;
                PeriodicComplex::new(1, vec![1, 1], vec![d0])
            }
            "torus" => {
                let d0 = LaurentMatrix::from_entries(
                    2,
                    1,
                    2,
                    vec![
                        poly(2, &[[0, 0, 0], [1, 0, 0]]),
                        poly(2, &[[0, 0, 0], [0, 1, 0]]),
                    ],
                )?;
                let d1 = LaurentMatrix::from_entries(
                    1,
                    2,
                    2,
                    vec![
                        poly(2, &[[0, 0, 0], [0, 1, 0]]),
                        poly(2, &[[0, 0, 0], [1, 0, 0]]),
                    ],
                )?;
                PeriodicComplex::new(2, vec![1, 2, 1], vec![d0, d1])
            }
            "decorated_lattice_rp2" => {
                // Cells per site: vertices (v, w), degree 1 (lattice edge e,
                // block cell a), degree 2 (block cell b). All block
                // coboundaries vanish mod 2.
                let d0 = LaurentMatrix::from_entries(
                    2,
                    2,
                    1,
                    vec![
                        poly(1, &[[0, 0, 0], [1, 0, 0]]),
                        LaurentPoly::zero(1),
                        LaurentPoly::zero(1),
                        LaurentPoly::zero(1),
                    ],
                )?;
                let d1 = LaurentMatrix::zero(1, 2, 1);
                PeriodicComplex::new(1, vec![2, 2, 1], vec![d0, d1])
            }
            "decorated_lattice_rp2_d2" => {
                let d0 = LaurentMatrix::from_entries(
                    3,
                    2,
                    2,
                    vec![
                        poly(2, &[[0, 0, 0], [1, 0, 0]]),
                        LaurentPoly::zero(2),
                        poly(2, &[[0, 0, 0], [0, 1, 0]]),
                        LaurentPoly::zero(2),
                        LaurentPoly::zero(2),
                        LaurentPoly::zero(2),
                    ],
                )?;
                let d1 = LaurentMatrix::from_entries(
                    2,
                    3,
                    2,
                    vec![
                        poly(2, &[[0, 0, 0], [0, 1, 0]]),
                        poly(2, &[[0, 0, 0], [1, 0, 0]]),
                        LaurentPoly::zero(2),
                        LaurentPoly::zero(2),
                        LaurentPoly::zero(2),
                        LaurentPoly::zero(2),
                    ],
                )?;
                PeriodicComplex::new(2, vec![2, 3, 2], vec![d0, d1])
            }
            other => Err(Error::argument(format!(
                "unknown example complex '{other}'"
            ))),
        }
    }
}

/// Symbolic `d_{p+1}∘d_p = 0` check over the Laurent ring, reporting the
/// first offending entry.
pub fn check_coboundaries(coboundaries: &[LaurentMatrix]) -> Result<(), CoboundaryViolation> {
    for p in 0..coboundaries.len().saturating_sub(1) {
        let product = coboundaries[p + 1]
            .compose(&coboundaries[p])
            .expect("shapes validated before composition");
        for r in 0..product.rows() {
            for c in 0..product.cols() {
                if !product.entry(r, c).is_zero() {
                    return Err(CoboundaryViolation {
                        degree: p,
                        row: r,
                        col: c,
                        entry: format!("{:?}", product.entry(r, c)),
                    });
                }
            }
        }
    }
    Ok(())
}
