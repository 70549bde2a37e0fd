//! Job dispatch: turns a validated [`JobDocument`] into a [`ResultTable`].
//! Output is deterministic for a fixed document and seed.

use entrobetti_core::duality::{grothendieck_additivity_check, perp_entropy_check};
use entrobetti_core::lattice::verify_quasi_tiling;
use entrobetti_core::{
    EntropyEstimate, Error, EvalOptions, FiniteQuotient, LatticeWindow, LaurentMatrix, LaurentPoly,
    ModulePresentation, PeriodicComplex, Point, SubshiftPresentation,
};

use crate::job::{parse_matrix, to_point, JobDocument, DEFAULT_SCHEDULE};
use crate::table::{ResultRow, ResultTable};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub threads: usize,
    pub max_cells: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threads: 1,
            max_cells: None,
        }
    }
}

/// A failed run with its process exit code: 2 argument, 3 resource,
/// 4 verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunError {
    pub exit_code: i32,
    pub message: String,
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for RunError {}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        let exit_code = match &e {
            Error::Argument(_) => 2,
            Error::Resource { .. } => 3,
            Error::Inconclusive(_) => 3,
            Error::InvalidComplex(_) => 4,
        };
        RunError {
            exit_code,
            message: e.to_string(),
        }
    }
}

fn argument(message: impl Into<String>) -> RunError {
    RunError {
        exit_code: 2,
        message: message.into(),
    }
}

/// Result of a successful dispatch. `verification_failed` marks tables
/// whose summary reports a failed check (exit code 4 at the process level).
#[derive(Debug, Clone, PartialEq)]
pub struct JobOutcome {
    pub table: ResultTable,
    pub verification_failed: bool,
}

impl JobOutcome {
    fn ok(table: ResultTable) -> Self {
        JobOutcome {
            table,
            verification_failed: false,
        }
    }
}

fn eval_options(cfg: &RunConfig) -> EvalOptions {
    let mut opts = EvalOptions::default().with_threads(cfg.threads);
    if let Some(cells) = cfg.max_cells {
        opts = opts.with_max_cells(cells);
    }
    opts
}

/// Cell budget for quotient-indexed jobs: `width · n^d` must fit.
fn check_index_budget(width: usize, n: u64, d: usize, cfg: &RunConfig) -> Result<(), RunError> {
    let budget = cfg
        .max_cells
        .unwrap_or_else(|| EvalOptions::default().max_cells);
    let fits = (n as usize)
        .checked_pow(d as u32)
        .and_then(|v| v.checked_mul(width.max(1)))
        .is_some_and(|cells| cells <= budget);
    if fits {
        Ok(())
    } else {
        Err(RunError {
            exit_code: 3,
            message: format!("quotient side {n} exceeds the cell budget {budget}"),
        })
    }
}

fn rows_from_estimate(est: &EntropyEstimate) -> Vec<ResultRow> {
    est.schedule
        .iter()
        .enumerate()
        .map(|(i, &n)| ResultRow {
            n: n as u64,
            volume: est.volumes[i],
            dim: est.dims[i],
            value: est.values[i],
            uncertainty: est.uncertainty[i],
            crosscheck: est.cross_check.as_ref().map(|c| c[i]),
        })
        .collect()
}

fn schedule_or_default(schedule: &Option<Vec<usize>>) -> Vec<usize> {
    schedule
        .clone()
        .unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec())
}

fn build_complex(
    d: usize,
    cells: &[usize],
    coboundaries: &[Vec<Vec<String>>],
) -> Result<PeriodicComplex, RunError> {
    let mats: Vec<LaurentMatrix> = coboundaries
        .iter()
        .enumerate()
        .map(|(p, block)| {
            parse_matrix(block, cells[p], d, &format!("coboundaries[{p}]"))
                .map_err(|e| argument(e.to_string()))
        })
        .collect::<Result<_, _>>()?;
    Ok(PeriodicComplex::new(d, cells.to_vec(), mats)?)
}

/// Deterministic generator for the seeded random duality battery.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_presentation(gen: &mut SplitMix64, d: usize) -> SubshiftPresentation {
    let r = 1 + gen.below(3) as usize;
    let s = 1 + gen.below(3) as usize;
    let mut m = LaurentMatrix::zero(s, r, d);
    for i in 0..s {
        for j in 0..r {
            let terms = gen.below(4);
            let exps: Vec<Point> = (0..terms)
                .map(|_| loop {
                    let mut e = [0i64; 3];
                    for x in e.iter_mut().take(d) {
                        *x = gen.below(5) as i64 - 2;
                    }
                    if e.iter().map(|x| x.unsigned_abs()).sum::<u64>() <= 2 {
                        break e;
                    }
                })
                .collect();
            m.set(i, j, LaurentPoly::from_exponents(d, exps));
        }
    }
    SubshiftPresentation::new(r, d, m).expect("generated shapes are valid")
}

pub fn run_job(doc: &JobDocument, cfg: &RunConfig) -> Result<JobOutcome, RunError> {
    match doc {
        JobDocument::Entropy {
            r,
            d,
            relations,
            schedule,
            ..
        } => {
            let m = parse_matrix(relations, *r, *d, "relations")
                .map_err(|e| argument(e.to_string()))?;
            let p = SubshiftPresentation::new(*r, *d, m)?;
            let est = p.entropy(&schedule_or_default(schedule), &eval_options(cfg))?;
            Ok(JobOutcome::ok(ResultTable {
                rows: rows_from_estimate(&est),
                summary: ResultTable::summary_for(est.snapped),
                residuals: None,
                notes: vec![],
            }))
        }

        JobDocument::Betti {
            d,
            cells,
            coboundaries,
            degree,
            schedule,
            ..
        } => {
            let complex = build_complex(*d, cells, coboundaries)?;
            let schedule = schedule_or_default(schedule);
            match degree {
                Some(p) => {
                    let est = complex.betti(*p, &schedule, &eval_options(cfg))?;
                    Ok(JobOutcome::ok(ResultTable {
                        rows: rows_from_estimate(&est),
                        summary: ResultTable::summary_for(est.snapped),
                        residuals: None,
                        notes: vec![format!(
                            "crosscheck column: dim H^{p} of the spanned Følner subcomplex per site"
                        )],
                    }))
                }
                None => {
                    let check = complex.euler_check(&schedule, &eval_options(cfg))?;
                    let rows: Vec<ResultRow> = schedule
                        .iter()
                        .enumerate()
                        .map(|(i, &n)| ResultRow {
                            n: n as u64,
                            volume: check.volumes[i],
                            dim: (check.alternating[i] * check.volumes[i] as f64).round() as i64,
                            value: check.alternating[i],
                            uncertainty: check.combined_uncertainty[i],
                            crosscheck: Some(check.euler as f64),
                        })
                        .collect();
                    let passed = check
                        .residual
                        .last()
                        .zip(check.combined_uncertainty.last())
                        .is_some_and(|(r, u)| r <= u);
                    let table = ResultTable {
                        rows,
                        summary: if passed {
                            "pass".into()
                        } else {
                            "fail: euler residual above combined uncertainty".into()
                        },
                        residuals: Some(check.residual),
                        notes: vec![format!("euler characteristic e(K) = {}", check.euler)],
                    };
                    Ok(JobOutcome {
                        verification_failed: !passed,
                        table,
                    })
                }
            }
        }

        JobDocument::Covers {
            d,
            cells,
            coboundaries,
            degree,
            indices,
            ..
        } => {
            let complex = build_complex(*d, cells, coboundaries)?;
            let radius = complex
                .coboundaries()
                .iter()
                .map(LaurentMatrix::support_radius)
                .max()
                .unwrap_or(0);
            let total_cells: usize = cells.iter().sum();
            let mut rows = Vec::with_capacity(indices.len());
            let mut exact_euler = true;
            for &n in indices {
                check_index_budget(total_cells, n, *d, cfg)?;
                let q = FiniteQuotient::diagonal(*d, n)?;
                let h = complex.cover_cohomology(&q)?;
                let fundamental = LatticeWindow::folner_box(n as usize, *d)?;
                let unc = cells[*degree] as f64 * fundamental.boundary(1).ball(radius).len() as f64
                    / fundamental.len() as f64;
                exact_euler &= h.alternating_sum() == q.index() as i64 * complex.euler();
                rows.push(ResultRow {
                    n,
                    volume: q.index(),
                    dim: h.dims[*degree] as i64,
                    value: h.dims[*degree] as f64 / q.index() as f64,
                    uncertainty: unc,
                    crosscheck: Some(h.alternating_sum() as f64 / q.index() as f64),
                });
            }
            let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
            let table = ResultTable {
                rows,
                summary: ResultTable::summary_for(EntropyEstimate::snap_values(&values)),
                residuals: None,
                notes: vec![format!(
                    "crosscheck column: alternating cohomology sum per index (= e(K) exactly: {exact_euler})"
                )],
            };
            Ok(JobOutcome {
                verification_failed: !exact_euler,
                table,
            })
        }

        JobDocument::Fixpoints {
            r,
            d,
            relations,
            indices,
            ..
        } => {
            let m = parse_matrix(relations, *r, *d, "relations")
                .map_err(|e| argument(e.to_string()))?;
            let p = SubshiftPresentation::new(*r, *d, m)?;
            let mut rows = Vec::with_capacity(indices.len());
            for &n in indices {
                check_index_budget(*r, n, *d, cfg)?;
                let q = FiniteQuotient::diagonal(*d, n)?;
                let log_count = p.fixed_point_log_count(&q)?;
                let w = LatticeWindow::folner_box(n as usize, *d)?;
                rows.push(ResultRow {
                    n,
                    volume: q.index(),
                    dim: log_count as i64,
                    value: log_count as f64 / q.index() as f64,
                    uncertainty: p.boundary_term(&w),
                    crosscheck: Some(p.local_kernel_dim(&w) as f64 / w.len() as f64),
                });
            }
            let values: Vec<f64> = rows.iter().map(|r| r.value).collect();
            Ok(JobOutcome::ok(ResultTable {
                rows,
                summary: ResultTable::summary_for(EntropyEstimate::snap_values(&values)),
                residuals: None,
                notes: vec![
                    "crosscheck column: kernel-route entropy value at the same window".into(),
                ],
            }))
        }

        JobDocument::Duality {
            d,
            r,
            relations,
            random,
            schedule,
            seed,
        } => {
            let schedule = schedule_or_default(schedule);
            let opts = eval_options(cfg);
            match (relations, random) {
                (Some(rows), None) => {
                    let rank = r.expect("validated");
                    let m = parse_matrix(rows, rank, *d, "relations")
                        .map_err(|e| argument(e.to_string()))?;
                    let p = SubshiftPresentation::new(rank, *d, m)?;
                    let check = perp_entropy_check(&p, &schedule, &opts)?;
                    let table_rows: Vec<ResultRow> = schedule
                        .iter()
                        .enumerate()
                        .map(|(i, &n)| ResultRow {
                            n: n as u64,
                            volume: check.kernel.volumes[i],
                            dim: check.kernel.dims[i],
                            value: check.kernel.values[i],
                            uncertainty: check.combined_uncertainty[i],
                            crosscheck: Some(rank as f64 - check.adjoint_image.values[i]),
                        })
                        .collect();
                    let passed = check
                        .residual
                        .last()
                        .zip(check.combined_uncertainty.last())
                        .is_some_and(|(r, u)| r <= u);
                    Ok(JobOutcome {
                        verification_failed: !passed,
                        table: ResultTable {
                            rows: table_rows,
                            summary: if passed {
                                "pass".into()
                            } else {
                                "fail: duality residual above combined uncertainty".into()
                            },
                            residuals: Some(check.residual),
                            notes: vec![
                                "crosscheck column: r − adjoint-image value (duality route)".into(),
                            ],
                        },
                    })
                }
                (None, Some(count)) => {
                    let mut gen = SplitMix64(seed.unwrap_or(0));
                    let mut worst: Vec<(f64, f64, usize)> =
                        vec![(0.0, f64::INFINITY, 0); schedule.len()];
                    for case in 0..*count {
                        let p = random_presentation(&mut gen, *d);
                        let check = perp_entropy_check(&p, &schedule, &opts)?;
                        for i in 0..schedule.len() {
                            if check.residual[i] >= worst[i].0 {
                                worst[i] = (check.residual[i], check.combined_uncertainty[i], case);
                            }
                        }
                    }
                    let rows: Vec<ResultRow> = schedule
                        .iter()
                        .enumerate()
                        .map(|(i, &n)| ResultRow {
                            n: n as u64,
                            volume: (n as u64).pow(*d as u32),
                            dim: worst[i].2 as i64,
                            value: worst[i].0,
                            uncertainty: worst[i].1,
                            crosscheck: None,
                        })
                        .collect();
                    let passed = rows.iter().all(|r| r.value <= r.uncertainty);
                    Ok(JobOutcome {
                        verification_failed: !passed,
                        table: ResultTable {
                            rows,
                            summary: if passed {
                                "pass".into()
                            } else {
                                "fail: duality residual above combined uncertainty".into()
                            },
                            residuals: None,
                            notes: vec![format!(
                                "random battery of {count} presentations (seed {}): rows report the worst residual per window; dim column is the offending case",
                                seed.unwrap_or(0)
                            )],
                        },
                    })
                }
                _ => unreachable!("validated"),
            }
        }

        JobDocument::Grothendieck {
            r,
            d,
            relations,
            extra,
            schedule,
            ..
        } => {
            let m = parse_matrix(relations, *r, *d, "relations")
                .map_err(|e| argument(e.to_string()))?;
            let extra =
                parse_matrix(extra, *r, *d, "extra").map_err(|e| argument(e.to_string()))?;
            let l = ModulePresentation::new(*r, *d, m)?;
            let check = grothendieck_additivity_check(
                &l,
                &extra,
                &schedule_or_default(schedule),
                &eval_options(cfg),
            )?;
            let mut rows = rows_from_estimate(&check.difference);
            for row in &mut rows {
                row.crosscheck = check.target.map(|t| t as f64);
            }
            Ok(JobOutcome::ok(ResultTable {
                rows,
                summary: ResultTable::summary_for(check.target),
                residuals: if check.residual.is_empty() {
                    None
                } else {
                    Some(check.residual)
                },
                notes: vec![
                    "value column: h(dual L) − h(dual L/extra), the rank of the extra-generated submodule".into(),
                ],
            }))
        }

        JobDocument::Oracle {
            r, d, relations, n, ..
        } => {
            let m = parse_matrix(relations, *r, *d, "relations")
                .map_err(|e| argument(e.to_string()))?;
            let cells = n
                .checked_pow(*d as u32)
                .and_then(|v| v.checked_mul(*r))
                .unwrap_or(usize::MAX);
            if cells > 24 {
                return Err(RunError {
                    exit_code: 3,
                    message: format!(
                        "oracle window has {cells} cells; exhaustive enumeration is capped at 24"
                    ),
                });
            }
            let p = SubshiftPresentation::new(*r, *d, m)?;
            let w = LatticeWindow::folner_box(*n, *d)?;
            let patterns = p.enumerate_oracle(&w)?;
            let dim = p.local_kernel_dim(&w);
            let agrees = patterns.len() == 1usize << dim;
            let table = ResultTable {
                rows: vec![ResultRow {
                    n: *n as u64,
                    volume: w.len() as u64,
                    dim: dim as i64,
                    value: patterns.len() as f64,
                    uncertainty: p.boundary_term(&w),
                    crosscheck: Some((1u64 << dim) as f64),
                }],
                summary: if agrees {
                    "pass".into()
                } else {
                    "fail: enumeration disagrees with the rank route".into()
                },
                residuals: None,
                notes: vec![format!(
                    "exhaustive enumeration found {} patterns; rank route predicts 2^{dim}",
                    patterns.len()
                )],
            };
            Ok(JobOutcome {
                verification_failed: !agrees,
                table,
            })
        }

        JobDocument::TilingVerify {
            d,
            tiles,
            centers,
            target_box,
            target,
            epsilon,
            ..
        } => {
            let tile_windows: Vec<LatticeWindow> = tiles
                .iter()
                .map(|pts| LatticeWindow::new(*d, pts.iter().map(|p| to_point(p)).collect()))
                .collect::<Result<_, _>>()?;
            let center_points: Vec<Vec<Point>> = centers
                .iter()
                .map(|cs| cs.iter().map(|p| to_point(p)).collect())
                .collect();
            let target_window = match (target_box, target) {
                (Some(side), None) => LatticeWindow::folner_box(*side, *d)?,
                (None, Some(pts)) => {
                    LatticeWindow::new(*d, pts.iter().map(|p| to_point(p)).collect())?
                }
                _ => unreachable!("validated"),
            };
            let report =
                verify_quasi_tiling(&tile_windows, &center_points, &target_window, *epsilon)?;
            let mut notes = Vec::new();
            match &report.cross_family_witness {
                None => notes.push("condition (1) cross-family disjointness: pass".into()),
                Some((i, j, p)) => notes.push(format!(
                    "condition (1) cross-family disjointness: FAIL — families {i} and {j} share point ({}, {}, {})",
                    p[0], p[1], p[2]
                )),
            }
            match &report.epsilon_witness {
                None => notes.push("condition (2) ε-disjointness: pass".into()),
                Some(w) => notes.push(format!(
                    "condition (2) ε-disjointness: FAIL — family {} center ({}, {}, {}) keeps {}/{} points",
                    w.family, w.center[0], w.center[1], w.center[2], w.kept, w.tile_size
                )),
            }
            notes.push(format!(
                "condition (3) coverage: {} — {}/{} target points covered",
                if report.coverage_pass { "pass" } else { "FAIL" },
                report.covered,
                report.target_size
            ));
            notes.push(format!(
                "nesting (informational): identity in first tile = {}, tiles nested = {}",
                report.contains_identity, report.nested
            ));
            let passed = report.pass();
            let summary = if passed {
                "pass".to_string()
            } else {
                let failing = if !report.cross_family_pass() {
                    "(1)"
                } else if !report.epsilon_disjoint_pass() {
                    "(2)"
                } else {
                    "(3)"
                };
                format!("fail: condition {failing}")
            };
            let table = ResultTable {
                rows: vec![ResultRow {
                    n: 0,
                    volume: report.target_size,
                    dim: report.covered as i64,
                    value: if report.target_size == 0 {
                        1.0
                    } else {
                        report.covered as f64 / report.target_size as f64
                    },
                    uncertainty: if report.target_size == 0 {
                        1.0
                    } else {
                        1.0 / report.target_size as f64
                    },
                    crosscheck: Some(1.0 - epsilon),
                }],
                summary,
                residuals: None,
                notes,
            };
            Ok(JobOutcome {
                verification_failed: !passed,
                table,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::parse_job;

    fn run(text: &str) -> JobOutcome {
        let doc = parse_job(text).unwrap();
        run_job(&doc, &RunConfig::default()).unwrap()
    }

    #[test]
    fn full_shift_entropy_job() {
        let out = run(r#"{"kind":"entropy","r":1,"d":2,"relations":[],"schedule":[2,4,8]}"#);
        assert!(out.table.rows.iter().all(|r| r.value == 1.0));
        assert_eq!(out.table.summary, "snapped 1");
    }

    #[test]
    fn ledrappier_entropy_job() {
        let out = run(
            r#"{"kind":"entropy","r":1,"d":2,"relations":[["1 + x0 + x1"]],"schedule":[2,4,8,16,32]}"#,
        );
        let values: Vec<f64> = out.table.rows.iter().map(|r| r.value).collect();
        assert!(
            values.windows(2).all(|w| w[1] < w[0]),
            "decreasing: {values:?}"
        );
        assert_eq!(out.table.summary, "snapped 0");
    }

    #[test]
    fn euler_check_job_torus() {
        let doc = crate::presets::preset("torus").unwrap();
        let out = run_job(&doc, &RunConfig::default()).unwrap();
        assert_eq!(out.table.summary, "pass");
        assert!(out.table.residuals.unwrap().iter().all(|&r| r == 0.0));
    }

    #[test]
    fn tiling_jobs() {
        let out = run(r#"{"kind":"tiling-verify","d":2,
                "tiles":[[[0,0],[0,1],[1,0],[1,1]]],
                "centers":[[[0,0],[0,2],[0,4],[0,6],[2,0],[2,2],[2,4],[2,6],[4,0],[4,2],[4,4],[4,6],[6,0],[6,2],[6,4],[6,6]]],
                "target_box":8,"epsilon":0.0}"#);
        assert_eq!(out.table.summary, "pass");
        assert!(!out.verification_failed);

        let doc = parse_job(
            r#"{"kind":"tiling-verify","d":2,
                "tiles":[[[0,0],[0,1],[1,0],[1,1]]],
                "centers":[[[0,0],[0,2],[0,4],[0,6],[2,0],[2,2],[2,4],[2,6],[4,0],[4,2],[4,4],[4,6],[6,0],[6,2],[6,4],[6,6]]],
                "target_box":9,"epsilon":0.0}"#,
        )
        .unwrap();
        let out = run_job(&doc, &RunConfig::default()).unwrap();
        assert_eq!(out.table.summary, "fail: condition (3)");
        assert!(out.verification_failed);
        let row = &out.table.rows[0];
        assert_eq!((row.dim, row.volume), (64, 81));
    }

    #[test]
    fn oracle_job_counts() {
        let out = run(r#"{"kind":"oracle","r":1,"d":2,"relations":[["1 + x0 + x1"]],"n":3}"#);
        assert_eq!(out.table.summary, "pass");
        assert_eq!(out.table.rows[0].value, 32.0);
        assert_eq!(out.table.rows[0].dim, 5);
    }

    #[test]
    fn fixpoints_job() {
        let out = run(
            r#"{"kind":"fixpoints","r":1,"d":2,"relations":[["1 + x0 + x1"]],"indices":[2,3,4]}"#,
        );
        let dims: Vec<i64> = out.table.rows.iter().map(|r| r.dim).collect();
        assert_eq!(dims, vec![0, 2, 0]);
    }

    #[test]
    fn duality_random_battery_is_deterministic() {
        let text = r#"{"kind":"duality","d":2,"random":5,"seed":7,"schedule":[4,8]}"#;
        let a = run(text);
        let b = run(text);
        assert_eq!(a, b);
        assert_eq!(a.table.summary, "pass");
    }

    #[test]
    fn grothendieck_job() {
        let out = run(
            r#"{"kind":"grothendieck","r":2,"d":1,"relations":[],"extra":[["0","1"]],"schedule":[2,4,8]}"#,
        );
        assert_eq!(out.table.summary, "snapped 1");
        assert!(out.table.rows.iter().all(|r| r.value == 1.0));
    }

    #[test]
    fn covers_job_decorated() {
        let doc = crate::presets::preset("decorated-lattice-rp2-covers").unwrap();
        let out = run_job(&doc, &RunConfig::default()).unwrap();
        assert!(out.table.rows.iter().all(|r| r.value == 1.0));
        assert_eq!(out.table.summary, "snapped 1");
    }

    #[test]
    fn invalid_complex_maps_to_exit_4() {
        let doc = parse_job(
            r#"{"kind":"betti","d":2,"cells":[1,2,1],
                "coboundaries":[[["1 + x0"],["1 + x1"]],[["1 + x1","1 + x1"]]],
                "schedule":[2,4]}"#,
        )
        .unwrap();
        let err = run_job(&doc, &RunConfig::default()).unwrap_err();
        assert_eq!(err.exit_code, 4);
    }

    #[test]
    fn resource_error_maps_to_exit_3() {
        let doc = parse_job(r#"{"kind":"oracle","r":1,"d":2,"relations":[["1 + x0 + x1"]],"n":8}"#)
            .unwrap();
        let err = run_job(&doc, &RunConfig::default()).unwrap_err();
        assert_eq!(err.exit_code, 3);
    }
}
