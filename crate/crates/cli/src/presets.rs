//! Named presets: every built-in example and battery is reachable through
//! a single `--preset` invocation.

use entrobetti_core::PeriodicComplex;

use crate::job::JobDocument;

fn entropy_preset(r: usize, d: usize, relations: Vec<Vec<&str>>) -> JobDocument {
    JobDocument::Entropy {
        r,
        d,
        relations: relations
            .into_iter()
            .map(|row| row.into_iter().map(String::from).collect())
            .collect(),
        schedule: None,
        seed: None,
    }
}

fn complex_blocks(name: &str) -> (usize, Vec<usize>, Vec<Vec<Vec<String>>>) {
    let c = PeriodicComplex::example(name).expect("built-in example");
    let blocks = c
        .coboundaries()
        .iter()
        .map(|m| {
            (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect())
                .collect()
        })
        .collect();
    (c.dim(), c.cells().to_vec(), blocks)
}

fn betti_preset(name: &str, degree: Option<usize>) -> JobDocument {
    let (d, cells, coboundaries) = complex_blocks(name);
    JobDocument::Betti {
        d,
        cells,
        coboundaries,
        degree,
        schedule: None,
        seed: None,
    }
}

fn covers_preset(name: &str, degree: usize, indices: Vec<u64>) -> JobDocument {
    let (d, cells, coboundaries) = complex_blocks(name);
    JobDocument::Covers {
        d,
        cells,
        coboundaries,
        degree,
        indices,
        seed: None,
    }
}

const TILE_2X2: [[i64; 2]; 4] = [[0, 0], [0, 1], [1, 0], [1, 1]];

fn grid_centers(step: i64, count: i64) -> Vec<Vec<i64>> {
    let mut cs = Vec::new();
    for x in 0..count {
        for y in 0..count {
            cs.push(vec![step * x, step * y]);
        }
    }
    cs
}

fn tiling_preset(target_box: usize, epsilon: f64) -> JobDocument {
    JobDocument::TilingVerify {
        d: 2,
        tiles: vec![TILE_2X2.iter().map(|p| p.to_vec()).collect()],
        centers: vec![grid_centers(2, 4)],
        target_box: Some(target_box),
        target: None,
        epsilon,
        seed: None,
    }
}

/// Looks up a preset by name; the document is already canonical.
pub fn preset(name: &str) -> Option<JobDocument> {
    let doc = match name {
        "full-shift-d1" => entropy_preset(1, 1, vec![]),
        "full-shift-d2" => entropy_preset(1, 2, vec![]),
        "ledrappier" => entropy_preset(1, 2, vec![vec!["1 + x0 + x1"]]),
        "constants-d1" => entropy_preset(1, 1, vec![vec!["1 + x0"]]),
        "zero-d1" => entropy_preset(1, 1, vec![vec!["1"]]),
        "two-stencil-d2" => entropy_preset(1, 2, vec![vec!["1 + x0"], vec!["1 + x1"]]),
        "circle" => betti_preset("circle", None),
        "torus" => betti_preset("torus", None),
        "decorated-lattice-rp2" => betti_preset("decorated_lattice_rp2", None),
        "decorated-lattice-rp2-d2" => betti_preset("decorated_lattice_rp2_d2", None),
        "decorated-lattice-rp2-b2" => betti_preset("decorated_lattice_rp2", Some(2)),
        "torus-covers" => covers_preset("torus", 1, vec![2, 3, 4, 8]),
        "decorated-lattice-rp2-covers" => {
            covers_preset("decorated_lattice_rp2", 2, vec![2, 3, 4, 8, 16])
        }
        "ledrappier-fixpoints" => JobDocument::Fixpoints {
            r: 1,
            d: 2,
            relations: vec![vec!["1 + x0 + x1".into()]],
            indices: vec![2, 3, 4, 8, 16, 32],
            seed: None,
        },
        "ledrappier-duality" => JobDocument::Duality {
            d: 2,
            r: Some(1),
            relations: Some(vec![vec!["1 + x0 + x1".into()]]),
            random: None,
            schedule: Some(vec![8, 16, 32]),
            seed: None,
        },
        "duality-random-battery" => JobDocument::Duality {
            d: 2,
            r: None,
            relations: None,
            random: Some(20),
            schedule: Some(vec![8, 16, 32]),
            seed: Some(1005),
        },
        "grothendieck-split" => JobDocument::Grothendieck {
            r: 2,
            d: 1,
            relations: vec![],
            extra: vec![vec!["0".into(), "1".into()]],
            schedule: None,
            seed: None,
        },
        "ledrappier-oracle" => JobDocument::Oracle {
            r: 1,
            d: 2,
            relations: vec![vec!["1 + x0 + x1".into()]],
            n: 3,
            seed: None,
        },
        "tiling-exact" => tiling_preset(8, 0.0),
        "tiling-overcover" => tiling_preset(9, 0.0),
        "tiling-overlap" => JobDocument::TilingVerify {
            d: 1,
            tiles: vec![(0..4).map(|x| vec![x]).collect()],
            centers: vec![vec![vec![0], vec![3]]],
            target_box: Some(7),
            target: None,
            epsilon: 0.25,
            seed: None,
        },
        _ => return None,
    };
    Some(doc.validate().expect("presets are valid"))
}

pub const PRESET_NAMES: [&str; 21] = [
    "full-shift-d1",
    "full-shift-d2",
    "ledrappier",
    "constants-d1",
    "zero-d1",
    "two-stencil-d2",
    "circle",
    "torus",
    "decorated-lattice-rp2",
    "decorated-lattice-rp2-d2",
    "decorated-lattice-rp2-b2",
    "torus-covers",
    "decorated-lattice-rp2-covers",
    "ledrappier-fixpoints",
    "ledrappier-duality",
    "duality-random-battery",
    "grothendieck-split",
    "ledrappier-oracle",
    "tiling-exact",
    "tiling-overcover",
    "tiling-overlap",
];
