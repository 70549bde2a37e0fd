//! Exact linear algebra over the two-element field on dense bit-packed matrices.
//!
//! Everything downstream reduces to three questions about a finite GF(2)
//! matrix: its rank, a basis of its kernel, and the dimension of a
//! coordinate projection of that kernel. Matrices are stored row-major,
//! 64 columns per word, and eliminated with a table-accelerated
//! ("four Russians") row reduction. All operations are pure: inputs are
//! never mutated, results are exact.

use crate::error::Error;

/// A dense GF(2) vector packed into `u64` words.
///
/// Padding bits past `len` are kept zero so derived equality is valid.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0u64; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        if value {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "xor_assign: length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Indices of set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitVec[{}; ", self.len)?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

/// A dense row-major GF(2) matrix.
///
/// `0×n` and `n×0` matrices are valid; window constructions produce them
/// at small sizes. Padding bits in each row word block stay zero.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

/// Panel width for the table-accelerated elimination.
const PANEL: usize = 8;

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0u64; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        (self.bits[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let w = r * self.words_per_row + c / 64;
        if value {
            self.bits[w] |= 1u64 << (c % 64);
        } else {
            self.bits[w] &= !(1u64 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        self.bits[r * self.words_per_row + c / 64] ^= 1u64 << (c % 64);
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.bits[r * self.words_per_row..(r + 1) * self.words_per_row].to_vec(),
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            let base = r * self.words_per_row;
            for wi in 0..self.words_per_row {
                let mut w = self.bits[base + wi];
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    t.set(wi * 64 + b, r, true);
                }
            }
        }
        t
    }

    /// Matrix-vector product `self · v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len, self.cols, "mul_vec: dimension mismatch");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let base = r * self.words_per_row;
            let mut acc = 0u64;
            for (wi, vw) in v.words.iter().enumerate() {
                acc ^= self.bits[base + wi] & vw;
            }
            if acc.count_ones() % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Matrix product `self · rhs`. Test- and validation-scale only.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows, "mul: dimension mismatch");
        let mut out = BitMatrix::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            let base = r * self.words_per_row;
            for wi in 0..self.words_per_row {
                let mut w = self.bits[base + wi];
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    let k = wi * 64 + b;
                    let src = k * rhs.words_per_row;
                    let dst = r * out.words_per_row;
                    for j in 0..rhs.words_per_row {
                        out.bits[dst + j] ^= rhs.bits[src + j];
                    }
                }
            }
        }
        out
    }

    /// GF(2) rank. The input is not modified.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.echelonize(false).len()
    }

    /// A basis of the right kernel `{v : self·v = 0}`.
    ///
    /// The basis has exactly `cols − rank` vectors; for a `0×n` matrix it
    /// is the n standard basis vectors.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut work = self.clone();
        let pivots = work.echelonize(true);
        let mut is_pivot = vec![usize::MAX; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            is_pivot[col] = row;
        }
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in 0..self.cols {
            if is_pivot[free] != usize::MAX {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (row, &col) in pivots.iter().enumerate() {
                if work.get(row, free) {
                    v.set(col, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Dimension of the image of `kernel(self)` under coordinate projection
    /// onto `coords`.
    ///
    /// Equals `(cols − rank) − dim{v ∈ ker : v|coords = 0}`; computed as the
    /// rank of the kernel basis restricted to the chosen coordinates.
    pub fn projection_dim(&self, coords: &[usize]) -> Result<usize, Error> {
        let mut sorted: Vec<usize> = coords.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&c| c >= self.cols) {
            return Err(Error::argument(format!(
                "projection coordinate {bad} out of range for {} columns",
                self.cols
            )));
        }
        let basis = self.kernel_basis();
        if basis.is_empty() || sorted.is_empty() {
            return Ok(0);
        }
        let restricted =
            BitMatrix::from_fn(basis.len(), sorted.len(), |r, c| basis[r].get(sorted[c]));
        Ok(restricted.rank())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for i in 0..w {
            self.bits.swap(a * w + i, b * w + i);
        }
    }

    /// XOR row `src` into row `dst`, starting at word `word_lo`.
    fn xor_row_into(&mut self, dst: usize, src: usize, word_lo: usize) {
        debug_assert_ne!(dst, src);
        let w = self.words_per_row;
        if dst > src {
            let (head, tail) = self.bits.split_at_mut(dst * w);
            let src_row = &head[src * w..src * w + w];
            let dst_row = &mut tail[..w];
            for i in word_lo..w {
                dst_row[i] ^= src_row[i];
            }
        } else {
            let (head, tail) = self.bits.split_at_mut(src * w);
            let dst_row = &mut head[dst * w..dst * w + w];
            let src_row = &tail[..w];
            for i in word_lo..w {
                dst_row[i] ^= src_row[i];
            }
        }
    }

    /// In-place row reduction; returns the pivot columns in ascending order.
    ///
    /// Forward elimination proceeds over panels of up to [`PANEL`] columns:
    /// pivots inside the panel are found by ordinary elimination, brought to
    /// reduced form among themselves, expanded into a 2^m combination table,
    /// and every remaining row is cleared with a single table lookup. With
    /// `reduced` the rows above each panel are swept too, leaving the matrix
    /// in reduced row echelon form.
    fn echelonize(&mut self, reduced: bool) -> Vec<usize> {
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0usize;
        let mut c = 0usize;
        let w = self.words_per_row;
        while r < self.rows && c < self.cols {
            let k = PANEL.min(self.cols - c);
            let word_lo = c / 64;
            // Find up to k pivots in columns c..c+k among rows r.. .
            let mut panel_cols: Vec<usize> = Vec::with_capacity(k);
            for cc in c..c + k {
                let mut found = None;
                let mut i = r + panel_cols.len();
                while i < self.rows {
                    // Reduce the candidate against the pivots already found
                    // in this panel so its leading bits are meaningful.
                    for (p, &pc) in panel_cols.iter().enumerate() {
                        if self.get(i, pc) {
                            self.xor_row_into(i, r + p, word_lo);
                        }
                    }
                    if self.get(i, cc) {
                        found = Some(i);
                        break;
                    }
                    i += 1;
                }
                if let Some(i) = found {
                    self.swap_rows(r + panel_cols.len(), i);
                    panel_cols.push(cc);
                }
            }
            let m = panel_cols.len();
            if m == 0 {
                c += k;
                continue;
            }
            // Mutual (Jordan) reduction of the panel pivot rows.
            for b in 0..m {
                for a in 0..m {
                    if a != b && self.get(r + a, panel_cols[b]) {
                        self.xor_row_into(r + a, r + b, word_lo);
                    }
                }
            }
            // Combination table over the panel pivots.
            let tw = w - word_lo;
            let mut table = vec![0u64; (1usize << m) * tw];
            for mask in 1usize..(1 << m) {
                let prev = mask & (mask - 1);
                let bit = (mask ^ prev).trailing_zeros() as usize;
                let src = (r + bit) * w + word_lo;
                for i in 0..tw {
                    table[mask * tw + i] = table[prev * tw + i] ^ self.bits[src + i];
                }
            }
            // Sweep the remaining rows (and the rows above, for RREF).
            let sweep = |this: &mut Self, i: usize, table: &[u64]| {
                let mut idx = 0usize;
                for (p, &pc) in panel_cols.iter().enumerate() {
                    if this.get(i, pc) {
                        idx |= 1 << p;
                    }
                }
                if idx != 0 {
                    let base = i * w + word_lo;
                    for j in 0..tw {
                        this.bits[base + j] ^= table[idx * tw + j];
                    }
                }
            };
            for i in r + m..self.rows {
                sweep(self, i, &table);
            }
            if reduced {
                for i in 0..r {
                    sweep(self, i, &table);
                }
            }
            pivot_cols.extend_from_slice(&panel_cols);
            r += m;
            c += k;
        }
        pivot_cols
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}:", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
