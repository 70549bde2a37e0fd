//! Linear subshift presentations and their window invariants: local kernel
//! dimensions, restriction dimensions, image dimensions, entropy estimator
//! series with boundary-term uncertainty, additivity and quotient
//! operations, fixed-point counts on finite quotients, and exhaustive
//! oracles for desk-scale verification.
//!
//! The computable per-window object is the space of patterns satisfying
//! every relation instance whose stencil lies fully inside the window.
//! These spaces contain the true restrictions of the subshift and have the
//! same entropy; the reported uncertainty is the pigeonhole boundary term
//! separating the two, which is an honest convergence-scale indicator and
//! not a certified enclosure.

use crate::error::Error;
use crate::exec::{map_windows, EvalOptions};
use crate::gf2::BitMatrix;
use crate::lattice::{add, FiniteQuotient, LatticeWindow, Point};
use crate::laurent::LaurentMatrix;

/// Which window route produced an estimate series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EstimateMode {
    Kernel,
    Image,
}

/// An estimator series over a window schedule.
///
/// `values[i] = dims[i] / volumes[i]` in bits per site; `uncertainty` is the
/// per-window boundary term. `snapped` holds the integer the series has
/// settled on, when the last two windows agree on a nearest integer within
/// distance 0.25.
#[derive(Clone, Debug)]
pub struct EntropyEstimate {
    pub mode: EstimateMode,
    pub schedule: Vec<usize>,
    pub volumes: Vec<u64>,
    pub dims: Vec<i64>,
    pub values: Vec<f64>,
    pub uncertainty: Vec<f64>,
    /// Independent route evaluated at the same windows, where one exists
    /// (for kernel series: alphabet rank minus the image-route value).
    pub cross_check: Option<Vec<f64>>,
    pub snapped: Option<i64>,
}

impl EntropyEstimate {
    pub fn last_value(&self) -> f64 {
        *self.values.last().expect("schedule is nonempty")
    }

    /// The snapping rule: the last two values agree on a nearest integer
    /// and each lies within 0.25 of it. Finite windows can overshoot, so
    /// settling requires two consecutive agreeing windows.
    pub fn snap_values(values: &[f64]) -> Option<i64> {
        if values.len() < 2 {
            return None;
        }
        let a = values[values.len() - 2];
        let b = values[values.len() - 1];
        let ia = a.round();
        let ib = b.round();
        if ia == ib && (a - ia).abs() < 0.25 && (b - ib).abs() < 0.25 {
            Some(ia as i64)
        } else {
            None
        }
    }
}

/// Result of the ε = 1 separated-set oracle: the cardinality of the true
/// window restriction, certified by margin stabilization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedCount {
    /// Smallest margin at which the restriction dimension was constant over
    /// three consecutive margins.
    pub stabilized_margin: usize,
    pub dim: usize,
    pub count: u128,
}

/// A linear subshift given as the kernel of a Laurent-matrix action on the
/// r-fold full shift. Zero relation rows present the full shift itself.
#[derive(Clone, Debug)]
pub struct SubshiftPresentation {
    rank: usize,
    dim: usize,
    relations: LaurentMatrix,
    stencil_radius: u64,
    /// Union of entry supports per relation row, empty rows skipped later.
    row_supports: Vec<Vec<Point>>,
}

impl SubshiftPresentation {
    pub fn new(rank: usize, dim: usize, relations: LaurentMatrix) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::argument("alphabet rank must be ≥ 1"));
        }
        if !(1..=3).contains(&dim) {
            return Err(Error::argument(format!("unsupported dimension {dim}")));
        }
        if relations.cols() != rank || relations.dim() != dim {
            return Err(Error::argument(format!(
                "relations are {}×{} over d={}, expected {} columns over d={}",
                relations.rows(),
                relations.cols(),
                relations.dim(),
                rank,
                dim
            )));
        }
        let stencil_radius = relations.support_radius();
        let row_supports = (0..relations.rows())
            .map(|i| {
                let mut pts: Vec<Point> = (0..relations.cols())
                    .flat_map(|j| relations.entry(i, j).support().to_vec())
                    .collect();
                pts.sort_unstable();
                pts.dedup();
                pts
            })
            .collect();
        Ok(SubshiftPresentation {
            rank,
            dim,
            relations,
            stencil_radius,
            row_supports,
        })
    }

    /// The full shift on `rank` symbols: no relations at all.
    pub fn full_shift(rank: usize, dim: usize) -> Result<Self, Error> {
        SubshiftPresentation::new(rank, dim, LaurentMatrix::zero(0, rank, dim))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn relations(&self) -> &LaurentMatrix {
        &self.relations
    }

    /// Cached stencil radius of the relations.
    pub fn stencil_radius(&self) -> u64 {
        self.stencil_radius
    }

    /// Relation instances anchored so their whole stencil lies inside `w`,
    /// one GF(2) row per instance, in (row, anchor) lexicographic order.
    /// Columns are component-major over the points of `w`.
    pub fn constraint_matrix(&self, w: &LatticeWindow) -> BitMatrix {
        let instances = self.instances(w, w);
        let index = w.index_map();
        let mut m = BitMatrix::zero(instances.len(), self.rank * w.len());
        for (row, &(i, anchor)) in instances.iter().enumerate() {
            for j in 0..self.rank {
                for &e in self.relations.entry(i, j).support() {
                    let col = j * w.len() + index[&add(anchor, e)];
                    m.set(row, col, true);
                }
            }
        }
        m
    }

    /// Anchors γ (relation row, translate) with γ + row-stencil ⊆ `inside`,
    /// searched over translates hitting `hit`.
    fn instances(&self, hit: &LatticeWindow, inside: &LatticeWindow) -> Vec<(usize, Point)> {
        let mut out = Vec::new();
        for (i, supp) in self.row_supports.iter().enumerate() {
            if supp.is_empty() {
                continue;
            }
            let first = supp[0];
            let mut anchors: Vec<Point> = hit
                .points()
                .iter()
                .map(|&p| [p[0] - first[0], p[1] - first[1], p[2] - first[2]])
                .filter(|&g| supp.iter().all(|&e| inside.contains(add(g, e))))
                .collect();
            anchors.sort_unstable();
            out.extend(anchors.into_iter().map(|g| (i, g)));
        }
        out
    }

    /// dim of the space of patterns on `w` satisfying every relation whose
    /// stencil lies inside `w`: `rank·|w| − rank(constraint matrix)`.
    pub fn local_kernel_dim(&self, w: &LatticeWindow) -> usize {
        self.rank * w.len() - self.constraint_matrix(w).rank()
    }

    /// Dimension of the projection onto `w` of the local kernel of the
    /// margin-enlarged window `ball(w, margin)`. Non-increasing in the
    /// margin; equals [`Self::local_kernel_dim`] at margin 0.
    pub fn restriction_dim(&self, w: &LatticeWindow, margin: u64) -> usize {
        if margin == 0 {
            return self.local_kernel_dim(w);
        }
        let big = w.ball(margin);
        let m = self.constraint_matrix(&big);
        let mut coords: Vec<usize> = Vec::with_capacity(self.rank * w.len());
        for j in 0..self.rank {
            for &p in w.points() {
                coords.push(j * big.len() + big.position(p).expect("w ⊆ ball(w, m)"));
            }
        }
        m.projection_dim(&coords)
            .expect("projection coordinates are in range by construction")
    }

    /// Exhaustively lists all patterns on `w` (component-major bit layout)
    /// satisfying every relation instance with stencil inside `w`.
    ///
    /// Independent of the rank-based route: plain filtering of all
    /// `2^{rank·|w|}` candidates. Capped at `rank·|w| ≤ 24`.
    pub fn enumerate_oracle(&self, w: &LatticeWindow) -> Result<Vec<u32>, Error> {
        let bits = self.rank * w.len();
        if bits > 24 {
            return Err(Error::resource(
                format!("enumeration window has {bits} > 24 cells"),
                None,
            ));
        }
        let index = w.index_map();
        let mut masks: Vec<u32> = Vec::new();
        for &(i, anchor) in &self.instances(w, w) {
            let mut mask = 0u32;
            for j in 0..self.rank {
                for &e in self.relations.entry(i, j).support() {
                    mask ^= 1 << (j * w.len() + index[&add(anchor, e)]);
                }
            }
            masks.push(mask);
        }
        let mut out = Vec::new();
        for pattern in 0u32..1u32 << bits {
            if masks.iter().all(|&m| (pattern & m).count_ones() % 2 == 0) {
                out.push(pattern);
            }
        }
        Ok(out)
    }

    /// Searches `w` for a nonzero pattern whose extension by zero is a
    /// global configuration of the subshift. The certificate is exact:
    /// every relation instance whose stencil meets `w` is checked against
    /// the zero-extended pattern.
    pub fn finitely_supported_witness(&self, w: &LatticeWindow) -> Result<Option<u32>, Error> {
        let bits = self.rank * w.len();
        if bits > 24 {
            return Err(Error::resource(
                format!("witness window has {bits} > 24 cells"),
                None,
            ));
        }
        let reach = w.ball(2 * self.stencil_radius + 1);
        let index = w.index_map();
        let mut masks: Vec<u32> = Vec::new();
        for &(i, anchor) in &self.instances(&reach, &reach) {
            let mut mask = 0u32;
            for j in 0..self.rank {
                for &e in self.relations.entry(i, j).support() {
                    if let Some(&pos) = index.get(&add(anchor, e)) {
                        mask ^= 1 << (j * w.len() + pos);
                    }
                }
            }
            if mask != 0 {
                masks.push(mask);
            }
        }
        for pattern in 1u32..1u32 << bits {
            if masks.iter().all(|&m| (pattern & m).count_ones() % 2 == 0) {
                return Ok(Some(pattern));
            }
        }
        Ok(None)
    }

    /// The ε = 1 separated-count oracle: the cardinality of the true window
    /// restriction on the box [0,n)^d, certified when the restriction
    /// dimension is constant over three consecutive margins.
    pub fn separated_count_oracle(
        &self,
        n: usize,
        max_margin: u64,
    ) -> Result<SeparatedCount, Error> {
        let w = LatticeWindow::folner_box(n, self.dim)?;
        let mut dims: Vec<usize> = Vec::new();
        for m in 0..=max_margin {
            dims.push(self.restriction_dim(&w, m));
            let len = dims.len();
            if len >= 3 && dims[len - 1] == dims[len - 2] && dims[len - 2] == dims[len - 3] {
                let dim = dims[len - 1];
                if dim >= 127 {
                    return Err(Error::resource(
                        format!("restriction dimension {dim} too large to count"),
                        None,
                    ));
                }
                return Ok(SeparatedCount {
                    stabilized_margin: (m - 2) as usize,
                    dim,
                    count: 1u128 << dim,
                });
            }
        }
        Err(Error::Inconclusive(format!(
            "restriction dimension did not stabilize within margin {max_margin}: {dims:?}"
        )))
    }

    /// Per-window entropy estimator over the schedule of Følner boxes.
    ///
    /// `values[i] = local_kernel_dim(F_n)/|F_n|`, `uncertainty[i] =
    /// rank·|B_k(∂F_n)|/|F_n|`, and the cross-check series is
    /// `rank − image_dim(relations, F_n)/|F_n|`, the same quantity computed
    /// through the image route.
    pub fn entropy(
        &self,
        schedule: &[usize],
        opts: &EvalOptions,
    ) -> Result<EntropyEstimate, Error> {
        check_schedule(schedule)?;
        self.check_budget(schedule, opts)?;
        let per_window = map_windows(schedule, opts.threads, |&n| {
            let w = LatticeWindow::folner_box(n, self.dim).expect("schedule validated");
            let dim = self.local_kernel_dim(&w);
            let unc = self.boundary_term(&w);
            let cross = if opts.cross_check {
                let img = image_dim(&self.relations, &w).expect("dims validated");
                Some(self.rank as f64 - img as f64 / w.len() as f64)
            } else {
                None
            };
            (w.len() as u64, dim, unc, cross)
        });
        let volumes: Vec<u64> = per_window.iter().map(|x| x.0).collect();
        let dims: Vec<i64> = per_window.iter().map(|x| x.1 as i64).collect();
        let values: Vec<f64> = per_window.iter().map(|x| x.1 as f64 / x.0 as f64).collect();
        let uncertainty: Vec<f64> = per_window.iter().map(|x| x.2).collect();
        let cross_check = per_window.iter().map(|x| x.3).collect::<Option<Vec<f64>>>();
        let snapped = EntropyEstimate::snap_values(&values);
        Ok(EntropyEstimate {
            mode: EstimateMode::Kernel,
            schedule: schedule.to_vec(),
            volumes,
            dims,
            values,
            uncertainty,
            cross_check,
            snapped,
        })
    }

    /// Boundary term rank·|B_k(∂F)|/|F| of a window.
    pub fn boundary_term(&self, w: &LatticeWindow) -> f64 {
        self.rank as f64 * w.boundary(1).ball(self.stencil_radius).len() as f64 / w.len() as f64
    }

    /// Block-diagonal direct sum; window dimensions add exactly.
    pub fn direct_sum(&self, other: &SubshiftPresentation) -> Result<SubshiftPresentation, Error> {
        if self.dim != other.dim {
            return Err(Error::argument("direct_sum dimension mismatch"));
        }
        SubshiftPresentation::new(
            self.rank + other.rank,
            self.dim,
            self.relations.block_diag(&other.relations)?,
        )
    }

    /// Entropy of the quotient of this subshift by the sub-subshift cut out
    /// by the additional relation rows `extra`: the per-window difference of
    /// the two kernel series, with combined uncertainty.
    pub fn quotient_entropy(
        &self,
        extra: &LaurentMatrix,
        schedule: &[usize],
        opts: &EvalOptions,
    ) -> Result<EntropyEstimate, Error> {
        if extra.cols() != self.rank || extra.dim() != self.dim {
            return Err(Error::argument(format!(
                "extra relations are {}×{} over d={}, expected {} columns over d={}",
                extra.rows(),
                extra.cols(),
                extra.dim(),
                self.rank,
                self.dim
            )));
        }
        let sub = SubshiftPresentation::new(self.rank, self.dim, self.relations.stack(extra)?)?;
        let inner = EvalOptions {
            cross_check: false,
            ..opts.clone()
        };
        let big = self.entropy(schedule, &inner)?;
        let small = sub.entropy(schedule, &inner)?;
        let dims: Vec<i64> = big
            .dims
            .iter()
            .zip(&small.dims)
            .map(|(a, b)| a - b)
            .collect();
        let values: Vec<f64> = dims
            .iter()
            .zip(&big.volumes)
            .map(|(&d, &v)| d as f64 / v as f64)
            .collect();
        let uncertainty: Vec<f64> = big
            .uncertainty
            .iter()
            .zip(&small.uncertainty)
            .map(|(a, b)| a + b)
            .collect();
        let snapped = EntropyEstimate::snap_values(&values);
        Ok(EntropyEstimate {
            mode: EstimateMode::Kernel,
            schedule: schedule.to_vec(),
            volumes: big.volumes,
            dims,
            values,
            uncertainty,
            cross_check: None,
            snapped,
        })
    }

    /// log₂ of the number of configurations fixed by the quotient lattice:
    /// the nullity of the folded relation matrix.
    pub fn fixed_point_log_count(&self, quotient: &FiniteQuotient) -> Result<usize, Error> {
        let folded = self.relations.fold(quotient)?;
        Ok(folded.cols() - folded.rank())
    }

    fn check_budget(&self, schedule: &[usize], opts: &EvalOptions) -> Result<(), Error> {
        check_cell_budget(
            schedule,
            self.dim,
            self.stencil_radius as usize,
            self.rank,
            opts,
        )
    }
}

/// Box-bound feasibility of a schedule: `width · (n + 2k)^d` cells per
/// window must fit the budget. Reports the largest feasible schedule entry
/// on failure.
pub(crate) fn check_cell_budget(
    schedule: &[usize],
    dim: usize,
    k: usize,
    width: usize,
    opts: &EvalOptions,
) -> Result<(), Error> {
    let width = width.max(1);
    let feasible = |n: usize| -> bool {
        (n + 2 * k)
            .checked_pow(dim as u32)
            .and_then(|v| v.checked_mul(width))
            .is_some_and(|cells| cells <= opts.max_cells)
    };
    if let Some(&bad) = schedule.iter().find(|&&n| !feasible(n)) {
        let largest = schedule.iter().copied().filter(|&n| feasible(n)).max();
        return Err(Error::resource(
            format!(
                "window n={bad} exceeds the cell budget {} ({width} components, stencil radius {k})",
                opts.max_cells
            ),
            largest,
        ));
    }
    Ok(())
}

fn check_schedule(schedule: &[usize]) -> Result<(), Error> {
    if schedule.is_empty() {
        return Err(Error::argument("schedule must be nonempty"));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::argument("schedule must be strictly increasing"));
    }
    if schedule[0] == 0 {
        return Err(Error::argument("window sizes must be ≥ 1"));
    }
    Ok(())
}

/// dim of the image window space of the map `m` on `w`: the rank of the
/// window section from `ball(w, k)` into `w`.
pub fn image_dim(m: &LaurentMatrix, w: &LatticeWindow) -> Result<usize, Error> {
    let domain = w.ball(m.support_radius());
    Ok(m.window_matrix(&domain, w)?.rank())
}

/// Image-route estimator series for the map `m` over Følner boxes, with
/// uncertainty `cols(m)·|B_k(∂F_n)|/|F_n|`.
pub fn image_entropy(
    m: &LaurentMatrix,
    schedule: &[usize],
    opts: &EvalOptions,
) -> Result<EntropyEstimate, Error> {
    check_schedule(schedule)?;
    let k = m.support_radius();
    check_cell_budget(schedule, m.dim(), k as usize, m.cols().max(m.rows()), opts)?;
    let per_window: Vec<Result<(u64, usize, f64), Error>> =
        map_windows(schedule, opts.threads, |&n| {
            let w = LatticeWindow::folner_box(n, m.dim())?;
            let dim = image_dim(m, &w)?;
            let unc = m.cols() as f64 * w.boundary(1).ball(k).len() as f64 / w.len() as f64;
            Ok((w.len() as u64, dim, unc))
        });
    let per_window = per_window.into_iter().collect::<Result<Vec<_>, _>>()?;
    let volumes: Vec<u64> = per_window.iter().map(|x| x.0).collect();
    let dims: Vec<i64> = per_window.iter().map(|x| x.1 as i64).collect();
    let values: Vec<f64> = per_window.iter().map(|x| x.1 as f64 / x.0 as f64).collect();
    let uncertainty: Vec<f64> = per_window.iter().map(|x| x.2).collect();
    let snapped = EntropyEstimate::snap_values(&values);
    Ok(EntropyEstimate {
        mode: EstimateMode::Image,
        schedule: schedule.to_vec(),
        volumes,
        dims,
        values,
        uncertainty,
        cross_check: None,
        snapped,
    })
}
