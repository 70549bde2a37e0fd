//! Pontryagin duality between finitely generated modules over the Laurent
//! group algebra and linear subshifts: the dual subshift of a module
//! presentation, the annihilator of a subshift, entropy-level duality
//! residuals, and the rank homomorphism on the Grothendieck side.
//!
//! Module equality is never decided here; every duality statement is
//! checked at the entropy or window-rank level, which is what the
//! underlying propositions quantify. The exponent involution γ ↦ −γ is
//! applied entrywise (shape-preserving) when moving between relation rows
//! and annihilator generators, so round trips are exact on presentations.

use crate::error::Error;
use crate::exec::EvalOptions;
use crate::laurent::LaurentMatrix;
use crate::subshift::{image_entropy, EntropyEstimate, SubshiftPresentation};

/// A finitely generated module over the group algebra, presented as the
/// cokernel of the map whose rows are `relations`.
///
/// Zero relation rows present the free module of rank `rank`. The same row
/// data doubles as a generator list for the row-spanned submodule of the
/// free module; which reading applies is stated at each use site.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    rank: usize,
    dim: usize,
    relations: LaurentMatrix,
}

impl ModulePresentation {
    pub fn new(rank: usize, dim: usize, relations: LaurentMatrix) -> Result<Self, Error> {
        if rank == 0 {
            return Err(Error::argument("module generator count must be ≥ 1"));
        }
        if relations.cols() != rank || relations.dim() != dim {
            return Err(Error::argument(format!(
                "module relations are {}×{} over d={}, expected {} columns over d={}",
                relations.rows(),
                relations.cols(),
                relations.dim(),
                rank,
                dim
            )));
        }
        Ok(ModulePresentation {
            rank,
            dim,
            relations,
        })
    }

    /// The free module of the given rank.
    pub fn free(rank: usize, dim: usize) -> Result<Self, Error> {
        ModulePresentation::new(rank, dim, LaurentMatrix::zero(0, rank, dim))
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

    /// The dual linear subshift: the configurations annihilated by every
    /// translate of the involuted relation rows. The dual of the free
    /// module of rank r is the full shift of rank r.
    pub fn dual_subshift(&self) -> SubshiftPresentation {
        SubshiftPresentation::new(self.rank, self.dim, self.relations.involute())
            .expect("module presentation validated shapes")
    }
}

/// The annihilator of the subshift inside finitely supported functions,
/// presented by its generating rows (the involuted relation rows).
///
/// Read as a cokernel presentation, the same rows present the dual module
/// of the subshift, so `perp(p).dual_subshift()` recovers `p` exactly.
pub fn perp(p: &SubshiftPresentation) -> ModulePresentation {
    ModulePresentation::new(p.rank(), p.dim(), p.relations().involute())
        .expect("subshift presentation validated shapes")
}

/// Residual series of the duality identity h(V) + h(V^⊥) = r.
///
/// The annihilator closure is realized as the image of the adjoint map, so
/// the residual at window n is |kernel value + adjoint-image value − r|.
/// That realization is verified numerically across the test battery, not
/// proven here; the residual must fall below the combined uncertainty for
/// large windows.
#[derive(Clone, Debug)]
pub struct PerpCheck {
    pub kernel: EntropyEstimate,
    pub adjoint_image: EntropyEstimate,
    pub residual: Vec<f64>,
    pub combined_uncertainty: Vec<f64>,
}

pub fn perp_entropy_check(
    p: &SubshiftPresentation,
    schedule: &[usize],
    opts: &EvalOptions,
) -> Result<PerpCheck, Error> {
    let inner = EvalOptions {
        cross_check: false,
        ..opts.clone()
    };
    let kernel = p.entropy(schedule, &inner)?;
    let adjoint_image = image_entropy(&p.relations().adjoint(), schedule, &inner)?;
    let r = p.rank() as f64;
    let residual: Vec<f64> = kernel
        .values
        .iter()
        .zip(&adjoint_image.values)
        .map(|(a, b)| (a + b - r).abs())
        .collect();
    let combined_uncertainty: Vec<f64> = kernel
        .uncertainty
        .iter()
        .zip(&adjoint_image.uncertainty)
        .map(|(a, b)| a + b)
        .collect();
    Ok(PerpCheck {
        kernel,
        adjoint_image,
        residual,
        combined_uncertainty,
    })
}

/// Entropy of the dual subshift: the rank of the module class in the
/// Grothendieck group. Free modules report their rank exactly at every
/// window.
pub fn module_rank(
    m: &ModulePresentation,
    schedule: &[usize],
    opts: &EvalOptions,
) -> Result<EntropyEstimate, Error> {
    m.dual_subshift().entropy(schedule, opts)
}

/// Windowed additivity check for a constructed short exact sequence:
/// `L` presented, `N = L/(extra)`, and the submodule generated by `extra`
/// realizing its rank as the entropy difference of the dual subshifts.
#[derive(Clone, Debug)]
pub struct GrothendieckCheck {
    /// Per-window difference h(dual L) − h(dual N): the rank estimate of
    /// the extra-generated submodule.
    pub difference: EntropyEstimate,
    /// Integer the difference settles on, when snapped.
    pub target: Option<i64>,
    /// |difference − target| per window, empty when unsettled.
    pub residual: Vec<f64>,
}

pub fn grothendieck_additivity_check(
    l: &ModulePresentation,
    extra: &LaurentMatrix,
    schedule: &[usize],
    opts: &EvalOptions,
) -> Result<GrothendieckCheck, Error> {
    if extra.cols() != l.rank() || extra.dim() != l.dim() {
        return Err(Error::argument(format!(
            "extra rows are {}×{} over d={}, expected {} columns over d={}",
            extra.rows(),
            extra.cols(),
            extra.dim(),
            l.rank(),
            l.dim()
        )));
    }
    let n = ModulePresentation::new(l.rank(), l.dim(), l.relations().stack(extra)?)?;
    let inner = EvalOptions {
        cross_check: false,
        ..opts.clone()
    };
    let big = module_rank(l, schedule, &inner)?;
    let small = module_rank(&n, schedule, &inner)?;
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
    let residual = match snapped {
        Some(t) => values.iter().map(|v| (v - t as f64).abs()).collect(),
        None => Vec::new(),
    };
    let difference = EntropyEstimate {
        mode: big.mode,
        schedule: schedule.to_vec(),
        volumes: big.volumes,
        dims,
        values,
        uncertainty,
        cross_check: None,
        snapped,
    };
    Ok(GrothendieckCheck {
        difference,
        target: snapped,
        residual,
    })
}
