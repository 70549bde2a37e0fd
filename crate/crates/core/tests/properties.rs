//! Cross-module properties on randomized batteries: the pigeonhole
//! sandwich, monotonicity under stacking, continuity of nested families,
//! duality round trips, and the tiling-partition law.

mod common;

use common::*;
use entrobetti_core::duality::{module_rank, perp};
use entrobetti_core::lattice::verify_quasi_tiling;
use entrobetti_core::subshift::image_dim;
use entrobetti_core::{
    EvalOptions, LatticeWindow, LaurentMatrix, ModulePresentation, SubshiftPresentation,
};
use rand::Rng;

#[test]
fn sandwich_holds_on_random_presentations() {
    let mut rng = rng(101);
    for _ in 0..12 {
        let p = random_presentation(&mut rng);
        for n in [3usize, 5] {
            let w = LatticeWindow::folner_box(n, 2).unwrap();
            let local = p.local_kernel_dim(&w);
            for m in 0..=2u64 {
                let restr = p.restriction_dim(&w, m);
                assert!(restr <= local);
                let band = w.boundary(1).ball(p.stencil_radius() + m).len();
                assert!(
                    local - restr <= p.rank() * band,
                    "sandwich width violated: local={local} restr={restr} band={band}"
                );
            }
        }
    }
}

#[test]
fn window_rank_nullity_is_exact_on_random_maps() {
    let mut rng = rng(103);
    for _ in 0..12 {
        let p = random_presentation(&mut rng);
        for n in [2usize, 4] {
            let w = LatticeWindow::folner_box(n, 2).unwrap();
            let domain = w.ball(p.stencil_radius());
            let section = p.relations().window_matrix(&domain, &w).unwrap();
            assert_eq!(
                section.kernel_basis().len() + section.rank(),
                p.rank() * domain.len()
            );
        }
    }
}

#[test]
fn stacking_relations_never_raises_window_values() {
    let mut rng = rng(107);
    for _ in 0..12 {
        let p = random_presentation(&mut rng);
        let extra = random_laurent(&mut rng, 1, p.rank(), 2, 2);
        let stacked =
            SubshiftPresentation::new(p.rank(), 2, p.relations().stack(&extra).unwrap()).unwrap();
        for n in [2usize, 4, 6] {
            let w = LatticeWindow::folner_box(n, 2).unwrap();
            assert!(stacked.local_kernel_dim(&w) <= p.local_kernel_dim(&w));
        }
    }
}

#[test]
fn nested_family_values_reach_the_intersection() {
    let mut rng = rng(109);
    for _ in 0..8 {
        let r = 2;
        let r1 = random_laurent(&mut rng, 1, r, 2, 1);
        let r2 = random_laurent(&mut rng, 1, r, 2, 1);
        // Family V1 ⊃ V2 ⊃ V3 with the third stage repeating the first
        // block: stacked stencils have stabilized at stage two.
        let s1 = r1.clone();
        let s2 = r1.stack(&r2).unwrap();
        let s3 = s2.stack(&r1).unwrap();
        let family: Vec<SubshiftPresentation> = [s1, s2.clone(), s3]
            .into_iter()
            .map(|rel| SubshiftPresentation::new(r, 2, rel).unwrap())
            .collect();
        let intersection = SubshiftPresentation::new(r, 2, s2).unwrap();
        for n in [2usize, 4] {
            let w = LatticeWindow::folner_box(n, 2).unwrap();
            let dims: Vec<usize> = family.iter().map(|p| p.local_kernel_dim(&w)).collect();
            assert!(dims[0] >= dims[1] && dims[1] >= dims[2]);
            assert_eq!(dims[2], intersection.local_kernel_dim(&w));
            assert_eq!(dims[1], dims[2], "values stabilize once stencils repeat");
        }
    }
}

#[test]
fn oracle_matches_rank_route_on_random_presentations() {
    let mut rng = rng(113);
    let mut checked = 0;
    while checked < 10 {
        let p = random_presentation(&mut rng);
        let n = 2usize;
        if p.rank() * n * n > 16 {
            continue;
        }
        let w = LatticeWindow::folner_box(n, 2).unwrap();
        let patterns = p.enumerate_oracle(&w).unwrap();
        assert_eq!(patterns.len(), 1 << p.local_kernel_dim(&w));
        checked += 1;
    }
}

#[test]
fn positive_entropy_from_a_finitely_supported_witness() {
    // v1 = v2: finitely supported elements exist, and the entropy stays
    // above the density of disjoint support translates.
    let rel = LaurentMatrix::from_entries(
        1,
        2,
        1,
        vec![
            entrobetti_core::LaurentPoly::one(1),
            entrobetti_core::LaurentPoly::one(1),
        ],
    )
    .unwrap();
    let p = SubshiftPresentation::new(2, 1, rel).unwrap();
    let w = LatticeWindow::folner_box(2, 1).unwrap();
    let witness = p.finitely_supported_witness(&w).unwrap();
    assert!(witness.is_some());
    let est = p.entropy(&[4, 8, 16], &EvalOptions::default()).unwrap();
    let support_ball = w.ball(p.stencil_radius()).len();
    let density = 1.0 / (2.0 * support_ball as f64);
    assert!(est.values.iter().all(|&v| v >= density));

    // Constants admit no finitely supported witness, and none is claimed.
    let c = constants_d1();
    let w = LatticeWindow::folner_box(3, 1).unwrap();
    assert!(c.finitely_supported_witness(&w).unwrap().is_none());
}

#[test]
fn duality_round_trip_on_random_presentations() {
    let mut rng = rng(127);
    for _ in 0..10 {
        let p = random_presentation(&mut rng);
        let back = perp(&p).dual_subshift();
        assert_eq!(back.relations(), p.relations());
        for n in [2usize, 3] {
            let w = LatticeWindow::folner_box(n, 2).unwrap();
            assert_eq!(back.local_kernel_dim(&w), p.local_kernel_dim(&w));
        }
    }
}

#[test]
fn module_rank_block_additivity_random() {
    let mut rng = rng(131);
    for _ in 0..8 {
        let rows_a = rng.random_range(0..3);
        let rows_b = rng.random_range(0..3);
        let a = random_laurent(&mut rng, rows_a, 2, 2, 1);
        let b = random_laurent(&mut rng, rows_b, 1, 2, 1);
        let ma = ModulePresentation::new(2, 2, a.clone()).unwrap();
        let mb = ModulePresentation::new(1, 2, b.clone()).unwrap();
        let block = ModulePresentation::new(3, 2, a.block_diag(&b).unwrap()).unwrap();
        for n in [2usize, 4] {
            let w = LatticeWindow::folner_box(n, 2).unwrap();
            assert_eq!(
                block.dual_subshift().local_kernel_dim(&w),
                ma.dual_subshift().local_kernel_dim(&w) + mb.dual_subshift().local_kernel_dim(&w)
            );
        }
    }
}

#[test]
fn free_module_rank_is_exact_at_every_window() {
    for r in 1..=3usize {
        let free = ModulePresentation::free(r, 2).unwrap();
        let est = module_rank(&free, &[2, 4, 8], &EvalOptions::default()).unwrap();
        assert!(est.values.iter().all(|&v| v == r as f64));
    }
}

#[test]
fn image_dim_additive_over_block_diagonal() {
    let mut rng = rng(137);
    for _ in 0..8 {
        let a = random_laurent(&mut rng, 2, 2, 2, 1);
        let b = random_laurent(&mut rng, 1, 2, 2, 1);
        let block = a.block_diag(&b).unwrap();
        for n in [2usize, 3] {
            let w = LatticeWindow::folner_box(n, 2).unwrap();
            assert_eq!(
                image_dim(&block, &w).unwrap(),
                image_dim(&a, &w).unwrap() + image_dim(&b, &w).unwrap()
            );
        }
    }
}

#[test]
fn exact_partitions_verify_and_larger_targets_fail() {
    let mut rng = rng(139);
    for _ in 0..10 {
        let d = rng.random_range(1..=2usize);
        let side = rng.random_range(1..=3usize);
        let copies = rng.random_range(1..=3i64);
        let tile = LatticeWindow::folner_box(side, d).unwrap();
        let mut centers = Vec::new();
        let counts = |active: bool| if active { 0..copies } else { 0..1 };
        for x in counts(d >= 1) {
            for y in counts(d >= 2) {
                centers.push([x * side as i64, y * side as i64, 0]);
            }
        }
        let target = LatticeWindow::folner_box(side * copies as usize, d).unwrap();
        let report = verify_quasi_tiling(
            std::slice::from_ref(&tile),
            &[centers.clone()],
            &target,
            0.0,
        )
        .unwrap();
        assert!(report.pass(), "partition must verify: {report:?}");

        let bigger = LatticeWindow::folner_box(side * copies as usize + 1, d).unwrap();
        let report = verify_quasi_tiling(&[tile], &[centers], &bigger, 0.0).unwrap();
        assert!(!report.pass(), "strictly larger target must fail coverage");
        assert!(!report.coverage_pass);
    }
}

#[test]
fn all_routes_agree_on_marker_examples() {
    use entrobetti_core::FiniteQuotient;
    // v1 = v2 inside the rank-2 full shift: every route reports 1 exactly.
    let rel = LaurentMatrix::from_entries(
        1,
        2,
        1,
        vec![
            entrobetti_core::LaurentPoly::one(1),
            entrobetti_core::LaurentPoly::one(1),
        ],
    )
    .unwrap();
    let p = SubshiftPresentation::new(2, 1, rel).unwrap();
    let est = p.entropy(&[2, 4, 8, 16], &EvalOptions::default()).unwrap();
    assert!(est.values.iter().all(|&v| v == 1.0));
    assert!(est.cross_check.unwrap().iter().all(|&v| v == 1.0));
    assert_eq!(est.snapped, Some(1));
    for m in [2u64, 3, 5, 8] {
        let q = FiniteQuotient::diagonal(1, m).unwrap();
        let log = p.fixed_point_log_count(&q).unwrap();
        assert_eq!(log as u64, m, "fixed-point route at index {m}");
    }
    let sep = p.separated_count_oracle(3, 4).unwrap();
    assert_eq!(sep.count, 8, "2^n separated restrictions at n=3");

    // Constants in d=1: entropy 0, one fixed point per index beyond zero.
    let c = constants_d1();
    for m in [2u64, 5, 16] {
        let q = FiniteQuotient::diagonal(1, m).unwrap();
        assert_eq!(c.fixed_point_log_count(&q).unwrap(), 1);
    }
    let est = c
        .entropy(&[2, 4, 8, 16, 32], &EvalOptions::default())
        .unwrap();
    assert_eq!(est.snapped, Some(0));
}

#[test]
fn estimate_values_bounded_and_uncertainty_shrinks() {
    let mut rng = rng(149);
    for _ in 0..10 {
        let p = random_presentation(&mut rng);
        let est = p.entropy(&[2, 4, 8, 16], &EvalOptions::default()).unwrap();
        for (i, &v) in est.values.iter().enumerate() {
            assert!((0.0..=p.rank() as f64).contains(&v));
            assert!(est.uncertainty[i] > 0.0);
        }
        // The boundary term shrinks along a geometric schedule (beyond the
        // first windows, where the stencil can dominate the box).
        let u = &est.uncertainty;
        assert!(u[u.len() - 1] < u[u.len() - 2]);
        assert!(u[u.len() - 2] < u[u.len() - 3]);
    }
}

#[test]
fn betti_respects_cell_budget() {
    let c = entrobetti_core::PeriodicComplex::example("torus").unwrap();
    let opts = EvalOptions::default().with_max_cells(100);
    let err = c.betti(1, &[2, 4, 64], &opts).unwrap_err();
    match err {
        entrobetti_core::Error::Resource {
            largest_feasible, ..
        } => assert_eq!(largest_feasible, Some(4)),
        other => panic!("expected resource error, got {other:?}"),
    }
}

#[test]
fn separated_count_flags_budget_exhaustion() {
    // A margin budget of zero can never certify three equal margins.
    let p = ledrappier();
    let err = p.separated_count_oracle(2, 1).unwrap_err();
    assert!(matches!(err, entrobetti_core::Error::Inconclusive(_)));
}
