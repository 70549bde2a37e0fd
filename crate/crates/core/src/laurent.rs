//! The group algebra of Z^d over GF(2) (Laurent polynomials with exponent
//! vectors as support), matrices over it, and their evaluation on finite
//! windows and finite quotients as [`BitMatrix`] sections.
//!
//! Convention, fixed once: a matrix M acts on configurations by the
//! right-translation stencil `(M·v)_i(γ) = Σ_j Σ_{e ∈ supp M_ij} v_j(γ + e)`,
//! which commutes with left translation. Sign conventions silently flip
//! adjoints, so every duality-facing operation below states which direction
//! it uses.

use std::collections::HashMap;

use crate::error::Error;
use crate::gf2::BitMatrix;
use crate::lattice::{add, l1, neg, FiniteQuotient, LatticeWindow, Point};

/// A Laurent polynomial over GF(2): coefficients are implicit, the support
/// is a duplicate-free set of exponent vectors. Empty support is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    dim: usize,
    support: Vec<Point>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly {
            dim,
            support: Vec::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        LaurentPoly {
            dim,
            support: vec![[0, 0, 0]],
        }
    }

    pub fn monomial(dim: usize, exponent: Point) -> Self {
        LaurentPoly {
            dim,
            support: vec![exponent],
        }
    }

    /// Builds a polynomial from exponents, cancelling duplicates mod 2.
    pub fn from_exponents(dim: usize, exponents: impl IntoIterator<Item = Point>) -> Self {
        let mut counts: HashMap<Point, bool> = HashMap::new();
        for e in exponents {
            *counts.entry(e).or_insert(false) ^= true;
        }
        let mut support: Vec<Point> = counts
            .into_iter()
            .filter_map(|(e, odd)| odd.then_some(e))
            .collect();
        support.sort_unstable();
        LaurentPoly { dim, support }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &[Point] {
        &self.support
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        LaurentPoly::from_exponents(self.dim, self.support.iter().chain(&other.support).copied())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.dim, other.dim, "polynomial dimension mismatch");
        LaurentPoly::from_exponents(
            self.dim,
            self.support
                .iter()
                .flat_map(|&a| other.support.iter().map(move |&b| add(a, b))),
        )
    }

    /// Negates every exponent (the involution γ ↦ γ⁻¹ of the group algebra).
    pub fn involute(&self) -> LaurentPoly {
        LaurentPoly::from_exponents(self.dim, self.support.iter().map(|&e| neg(e)))
    }

    /// Largest ℓ¹ norm over the support; 0 for the zero polynomial.
    pub fn support_radius(&self) -> u64 {
        self.support.iter().map(|&e| l1(e)).max().unwrap_or(0)
    }
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// Canonical text form: terms in exponent-lexicographic order joined by
/// " + ", factors like `x0^-2`, the empty product as `1`, zero as `0`.
impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .support
            .iter()
            .map(|e| {
                let factors: Vec<String> = (0..self.dim)
                    .filter(|&i| e[i] != 0)
                    .map(|i| {
                        if e[i] == 1 {
                            format!("x{i}")
                        } else {
                            format!("x{i}^{}", e[i])
                        }
                    })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join(" ")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// An s×r matrix over the Laurent algebra, presenting an equivariant map
/// from r-component to s-component configurations.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(rows: usize, cols: usize, dim: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            dim,
            entries: vec![LaurentPoly::zero(dim); rows * cols],
        }
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        let mut m = LaurentMatrix::zero(n, n, dim);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(dim));
        }
        m
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        dim: usize,
        entries: Vec<LaurentPoly>,
    ) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::argument(format!(
                "expected {rows}×{cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.dim() != dim) {
            return Err(Error::argument(format!(
                "entry dimension {} does not match matrix dimension {dim}",
                e.dim()
            )));
        }
        Ok(LaurentMatrix {
            rows,
            cols,
            dim,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, poly: LaurentPoly) {
        assert_eq!(poly.dim(), self.dim, "entry dimension mismatch");
        self.entries[r * self.cols + c] = poly;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Max ℓ¹ exponent norm over all entries; 0 for scalar or zero matrices.
    pub fn support_radius(&self) -> u64 {
        self.entries
            .iter()
            .map(LaurentPoly::support_radius)
            .max()
            .unwrap_or(0)
    }

    /// The adjoint: transpose with every exponent negated.
    /// `adjoint(adjoint(m)) = m`.
    pub fn adjoint(&self) -> LaurentMatrix {
        let mut out = LaurentMatrix::zero(self.cols, self.rows, self.dim);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.entry(r, c).involute());
            }
        }
        out
    }

    /// Entrywise exponent negation without transposition. This is the
    /// shape-preserving half of the adjoint used by the duality operations.
    pub fn involute(&self) -> LaurentMatrix {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            dim: self.dim,
            entries: self.entries.iter().map(LaurentPoly::involute).collect(),
        }
    }

    /// Vertical concatenation; the stacked kernel is the intersection of
    /// the two kernels.
    pub fn stack(&self, other: &LaurentMatrix) -> Result<LaurentMatrix, Error> {
        if self.cols != other.cols || self.dim != other.dim {
            return Err(Error::argument(format!(
                "stack shape mismatch: {}×{} (d={}) over {}×{} (d={})",
                self.rows, self.cols, self.dim, other.rows, other.cols, other.dim
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(LaurentMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            dim: self.dim,
            entries,
        })
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &LaurentMatrix) -> Result<LaurentMatrix, Error> {
        if self.dim != other.dim {
            return Err(Error::argument("block_diag dimension mismatch"));
        }
        let mut out = LaurentMatrix::zero(self.rows + other.rows, self.cols + other.cols, self.dim);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.entry(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.entry(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Symbolic matrix product over the Laurent algebra; the composite of
    /// the two stencil actions.
    pub fn compose(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix, Error> {
        if self.cols != rhs.rows || self.dim != rhs.dim {
            return Err(Error::argument(format!(
                "compose shape mismatch: {}×{} · {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = LaurentMatrix::zero(self.rows, rhs.cols, self.dim);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = LaurentPoly::zero(self.dim);
                for k in 0..self.cols {
                    acc = acc.add(&self.entry(r, k).mul(rhs.entry(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// The GF(2) matrix of the stencil action from functions on `domain`
    /// to functions on `codomain`.
    ///
    /// The output at component i, point γ sums `v_j(γ+e)` over exponents e
    /// of entry (i,j), counting only samples with `γ+e ∈ domain`; samples
    /// outside the domain are dropped, not zero-padded. Size:
    /// `rows·|codomain| × cols·|domain|`, coordinates component-major.
    pub fn window_matrix(
        &self,
        domain: &LatticeWindow,
        codomain: &LatticeWindow,
    ) -> Result<BitMatrix, Error> {
        if domain.dim() != self.dim || codomain.dim() != self.dim {
            return Err(Error::argument(format!(
                "window dimensions ({}, {}) do not match matrix dimension {}",
                domain.dim(),
                codomain.dim(),
                self.dim
            )));
        }
        let dom_index = domain.index_map();
        let mut out = BitMatrix::zero(self.rows * codomain.len(), self.cols * domain.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let supp = self.entry(i, j).support();
                if supp.is_empty() {
                    continue;
                }
                for (gi, &g) in codomain.points().iter().enumerate() {
                    let row = i * codomain.len() + gi;
                    for &e in supp {
                        if let Some(&di) = dom_index.get(&add(g, e)) {
                            out.set(row, j * domain.len() + di, true);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The matrix of the induced action on configurations periodic under
    /// the quotient lattice: exponents are reduced modulo the quotient
    /// before placement, with GF(2) cancellation of collisions.
    pub fn fold(&self, quotient: &FiniteQuotient) -> Result<BitMatrix, Error> {
        if quotient.dim() != self.dim {
            return Err(Error::argument(format!(
                "quotient dimension {} does not match matrix dimension {}",
                quotient.dim(),
                self.dim
            )));
        }
        let index = quotient.index() as usize;
        let mut out = BitMatrix::zero(self.rows * index, self.cols * index);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let supp = self.entry(i, j).support();
                for (a, &rep) in quotient.representatives().iter().enumerate() {
                    let row = i * index + a;
                    for &e in supp {
                        let b = quotient.position(add(rep, e));
                        out.flip(row, j * index + b);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl std::fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "LaurentMatrix {}x{} (d={}):",
            self.rows, self.cols, self.dim
        )?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| format!("{:?}", self.entry(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
