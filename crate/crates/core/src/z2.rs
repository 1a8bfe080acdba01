//! Exact linear algebra over Z2 on bit-packed matrices.
//!
//! Matrices are dense and row-major with 64 entries per word. The column
//! routines (earliest basis, coordinates, solving) reduce columns left to
//! right against a pivot table keyed by the lowest set bit, which yields the
//! column rank profile directly: a column enters the basis exactly when it is
//! not spanned by the columns to its left.

use std::fmt;

use crate::bits::{words_for, BitVec, WORD_BITS};
use crate::error::{Error, Result};

/// Dense matrix over Z2, bit-packed row-major.
///
/// Padding bits past `cols` in each row are always zero. Values are immutable
/// once built; use [`Z2MatrixBuilder`] or one of the constructors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl Z2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.put(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of `0`/`1` entries. All rows must have equal
    /// length; an empty slice gives the 0x0 matrix.
    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows in from_dense");
            for (j, &x) in row.iter().enumerate() {
                m.put(i, j, x & 1 == 1);
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has length {} not {cols}", r.len());
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has length {} not {rows}", c.len());
            for i in c.iter_ones() {
                m.put(i, j, true);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) out of range");
        (self.words[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    fn put(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.words[i * self.stride + j / WORD_BITS];
        let m = 1u64 << (j % WORD_BITS);
        if value {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVec {
        let mut v = BitVec::zeros(self.cols);
        v.words_mut().copy_from_slice(self.row_words(i));
        v
    }

    pub fn column(&self, j: usize) -> BitVec {
        assert!(j < self.cols);
        let mut v = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    /// All columns, extracted in one pass over the set bits.
    pub fn columns(&self) -> Vec<BitVec> {
        let mut out = vec![BitVec::zeros(self.rows); self.cols];
        for i in 0..self.rows {
            for (w, &word) in self.row_words(i).iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    let j = w * WORD_BITS + word.trailing_zeros() as usize;
                    out[j].set(i, true);
                    word &= word - 1;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> Z2Matrix {
        Z2Matrix::from_rows(self.rows, &self.columns())
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Z2Matrix) -> Result<Z2Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Ok(Z2Matrix::from_columns(self.rows, &cols))
    }

    /// The submatrix formed by the listed columns, in the listed order.
    pub fn select_columns(&self, indices: &[usize]) -> Z2Matrix {
        let mut m = Z2Matrix::zeros(self.rows, indices.len());
        for (k, &j) in indices.iter().enumerate() {
            for i in 0..self.rows {
                if self.get(i, j) {
                    m.put(i, k, true);
                }
            }
        }
        m
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Z2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Z2Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Z2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Incremental construction of a [`Z2Matrix`].
#[derive(Debug, Clone)]
pub struct Z2MatrixBuilder {
    inner: Z2Matrix,
}

impl Z2MatrixBuilder {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            inner: Z2Matrix::zeros(rows, cols),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) -> &mut Self {
        assert!(
            i < self.inner.rows && j < self.inner.cols,
            "entry ({i},{j}) out of range"
        );
        self.inner.put(i, j, value);
        self
    }

    pub fn toggle(&mut self, i: usize, j: usize) -> &mut Self {
        let v = self.inner.get(i, j);
        self.inner.put(i, j, !v);
        self
    }

    pub fn build(self) -> Z2Matrix {
        self.inner
    }
}

/// Column-permuted factorisation `A P = B_opt [I_r | R]`.
///
/// `permutation` lists the basis columns first (increasing) followed by the
/// remaining columns (increasing); column `k` of `R` holds the coordinates of
/// column `permutation[rank + k]` of `A` in the earliest basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateDecomposition {
    pub basis_indices: Vec<usize>,
    pub permutation: Vec<usize>,
    pub remainder: Z2Matrix,
    pub rank: usize,
}

impl CoordinateDecomposition {
    /// Coordinates of column `j` of the decomposed matrix in the earliest basis.
    pub fn coordinates(&self, j: usize) -> BitVec {
        match self.basis_indices.binary_search(&j) {
            Ok(pos) => BitVec::unit(self.rank, pos),
            Err(_) => {
                let k = self.permutation[self.rank..]
                    .binary_search(&j)
                    .expect("column index out of range");
                self.remainder.column(k)
            }
        }
    }

    /// Non-basis column indices, increasing.
    pub fn dependent_indices(&self) -> &[usize] {
        &self.permutation[self.rank..]
    }
}

const NO_SLOT: u32 = u32::MAX;

/// Echelon basis of a growing set of column vectors.
///
/// Each stored vector has a distinct lowest set bit (its pivot), and
/// optionally records which inserted columns it is the sum of.
#[derive(Debug, Clone)]
pub(crate) struct ColumnBasis {
    pivot_slot: Vec<u32>,
    reduced: Vec<BitVec>,
    origins: Option<Vec<BitVec>>,
    coord_len: usize,
}

impl ColumnBasis {
    pub(crate) fn new(rows: usize) -> Self {
        Self {
            pivot_slot: vec![NO_SLOT; rows],
            reduced: Vec::new(),
            origins: None,
            coord_len: 0,
        }
    }

    /// Tracks coordinates over at most `capacity` inserted columns.
    pub(crate) fn with_coordinates(rows: usize, capacity: usize) -> Self {
        Self {
            origins: Some(Vec::new()),
            coord_len: capacity,
            ..Self::new(rows)
        }
    }

    #[inline]
    pub(crate) fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// Reduces `v` in place. Returns the pivot of the residue, or `None`
    /// when `v` lies in the span. `comb` accumulates the coordinates of the
    /// subtracted part over the inserted columns.
    pub(crate) fn reduce(&self, v: &mut BitVec, mut comb: Option<&mut BitVec>) -> Option<usize> {
        let mut start = 0;
        while let Some(low) = v.first_one_from(start) {
            let slot = self.pivot_slot[low];
            if slot == NO_SLOT {
                return Some(low);
            }
            let slot = slot as usize;
            v.xor_assign_from(&self.reduced[slot], low / WORD_BITS);
            if let (Some(c), Some(origins)) = (comb.as_deref_mut(), self.origins.as_ref()) {
                c.xor_assign(&origins[slot]);
            }
            start = low + 1;
        }
        None
    }

    /// Inserts an already-reduced residue with pivot `low`. With coordinate
    /// tracking, `comb` is the value produced by [`Self::reduce`] for it.
    pub(crate) fn push(&mut self, residue: BitVec, low: usize, comb: Option<BitVec>) -> usize {
        let slot = self.reduced.len();
        debug_assert_eq!(self.pivot_slot[low], NO_SLOT);
        self.pivot_slot[low] = slot as u32;
        self.reduced.push(residue);
        if let Some(origins) = self.origins.as_mut() {
            let mut c = comb.unwrap_or_else(|| BitVec::zeros(self.coord_len));
            c.toggle(slot);
            origins.push(c);
        }
        slot
    }

    /// Reduces and inserts; returns whether `v` was independent.
    pub(crate) fn insert(&mut self, mut v: BitVec) -> bool {
        match self.reduce(&mut v, None) {
            Some(low) => {
                self.push(v, low, None);
                true
            }
            None => false,
        }
    }
}

fn check_mul(a: &Z2Matrix, b: &Z2Matrix) -> Result<()> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(())
}

/// Exact product over Z2 using eight-row Gray-code tables (method of four
/// Russians) on the right operand.
pub fn mat_mul(a: &Z2Matrix, b: &Z2Matrix) -> Result<Z2Matrix> {
    check_mul(a, b)?;
    const K: usize = 8;
    let mut c = Z2Matrix::zeros(a.rows, b.cols);
    let stride = b.stride;
    if stride == 0 || a.rows == 0 {
        return Ok(c);
    }
    let mut table = vec![0u64; (1 << K) * stride];
    for k0 in (0..a.cols).step_by(K) {
        let kb = K.min(a.cols - k0);
        for idx in 1usize..(1 << kb) {
            let low = idx.trailing_zeros() as usize;
            let prev = idx & (idx - 1);
            let (head, tail) = table.split_at_mut(idx * stride);
            let dst = &mut tail[..stride];
            dst.copy_from_slice(&head[prev * stride..(prev + 1) * stride]);
            for (d, s) in dst.iter_mut().zip(b.row_words(k0 + low)) {
                *d ^= s;
            }
        }
        let word = k0 / WORD_BITS;
        let shift = k0 % WORD_BITS;
        let mask = (1u64 << kb) - 1;
        for i in 0..a.rows {
            let idx = ((a.words[i * a.stride + word] >> shift) & mask) as usize;
            if idx != 0 {
                let src = &table[idx * stride..(idx + 1) * stride];
                for (d, s) in c.row_words_mut(i).iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
    }
    Ok(c)
}

/// Inverse of a square matrix by Gauss-Jordan elimination on `[A | I]`.
pub fn inverse(a: &Z2Matrix) -> Result<Z2Matrix> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(format!(
            "inverse of non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    let mut left: Vec<BitVec> = (0..n).map(|i| a.row(i)).collect();
    let mut right: Vec<BitVec> = (0..n).map(|i| BitVec::unit(n, i)).collect();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| left[r].get(c)) else {
            return Err(Error::Singular { rank: rank(a), size: n });
        };
        left.swap(c, p);
        right.swap(c, p);
        let (pl, pr) = (left[c].clone(), right[c].clone());
        for r in 0..n {
            if r != c && left[r].get(c) {
                left[r].xor_assign_from(&pl, c / WORD_BITS);
                right[r].xor_assign(&pr);
            }
        }
    }
    Ok(Z2Matrix::from_rows(n, &right))
}

/// Indices of the lexicographically earliest maximal set of independent
/// columns.
pub fn earliest_basis(a: &Z2Matrix) -> Vec<usize> {
    earliest_basis_of_columns(a.rows, a.columns())
}

pub(crate) fn earliest_basis_of_columns(rows: usize, columns: Vec<BitVec>) -> Vec<usize> {
    let mut basis = ColumnBasis::new(rows);
    let mut out = Vec::new();
    for (j, c) in columns.into_iter().enumerate() {
        if basis.rank() == rows {
            break;
        }
        if basis.insert(c) {
            out.push(j);
        }
    }
    out
}

/// Earliest basis computed block by block: the columns are split into
/// consecutive blocks of `block` columns, and the running index set `J` is
/// replaced after each block by the earliest basis of `[A_J | A_block]`.
///
/// Gives the same index set as [`earliest_basis`]; each step only touches
/// `|J| + block` columns, so it suits short, very wide matrices.
pub fn earliest_basis_blocked(a: &Z2Matrix, block: usize) -> Vec<usize> {
    earliest_basis_blocked_columns(a.rows, &a.columns(), block)
}

pub(crate) fn earliest_basis_blocked_columns(rows: usize, columns: &[BitVec], block: usize) -> Vec<usize> {
    let block = block.max(1);
    let mut kept: Vec<usize> = Vec::new();
    for (b, chunk) in columns.chunks(block).enumerate() {
        if kept.len() == rows {
            break;
        }
        let offset = b * block;
        let candidates: Vec<usize> = kept.iter().copied().chain(offset..offset + chunk.len()).collect();
        let sub: Vec<BitVec> = candidates.iter().map(|&j| columns[j].clone()).collect();
        kept = earliest_basis_of_columns(rows, sub)
            .into_iter()
            .map(|k| candidates[k])
            .collect();
    }
    kept
}

pub fn rank(a: &Z2Matrix) -> usize {
    earliest_basis(a).len()
}

/// Computes `A P = B_opt [I_r | R]` with one left-to-right column reduction.
pub fn coordinate_decomposition(a: &Z2Matrix) -> CoordinateDecomposition {
    decompose_columns(a.rows, a.columns())
}

pub(crate) fn decompose_columns(rows: usize, columns: Vec<BitVec>) -> CoordinateDecomposition {
    let n = columns.len();
    let capacity = rows.min(n);
    let mut basis = ColumnBasis::with_coordinates(rows, capacity);
    let mut basis_indices = Vec::new();
    let mut dependents: Vec<(usize, BitVec)> = Vec::new();
    for (j, mut v) in columns.into_iter().enumerate() {
        let mut comb = BitVec::zeros(capacity);
        match basis.reduce(&mut v, Some(&mut comb)) {
            Some(low) => {
                basis.push(v, low, Some(comb));
                basis_indices.push(j);
            }
            None => dependents.push((j, comb)),
        }
    }
    let r = basis_indices.len();
    let mut remainder = Z2Matrix::zeros(r, dependents.len());
    for (k, (_, comb)) in dependents.iter().enumerate() {
        for i in comb.iter_ones() {
            remainder.put(i, k, true);
        }
    }
    let mut permutation = basis_indices.clone();
    permutation.extend(dependents.iter().map(|(j, _)| *j));
    debug_assert_eq!(permutation.len(), n);
    CoordinateDecomposition {
        basis_indices,
        permutation,
        remainder,
        rank: r,
    }
}

/// Solves `basis · X = targets` for a basis of full column rank.
pub fn express_in_basis(basis: &Z2Matrix, targets: &Z2Matrix) -> Result<Z2Matrix> {
    if basis.rows != targets.rows {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} rows, targets have {}",
            basis.rows, targets.rows
        )));
    }
    let k = basis.cols;
    let mut reducer = ColumnBasis::with_coordinates(basis.rows, k);
    for (j, mut c) in basis.columns().into_iter().enumerate() {
        let mut comb = BitVec::zeros(k);
        match reducer.reduce(&mut c, Some(&mut comb)) {
            Some(low) => {
                reducer.push(c, low, Some(comb));
            }
            None => {
                return Err(Error::RankDeficientBasis { rank: j, cols: k });
            }
        }
    }
    let mut solution = Vec::with_capacity(targets.cols);
    for (j, mut t) in targets.columns().into_iter().enumerate() {
        let mut comb = BitVec::zeros(k);
        if reducer.reduce(&mut t, Some(&mut comb)).is_some() {
            return Err(Error::Inconsistent { column: j });
        }
        solution.push(comb);
    }
    Ok(Z2Matrix::from_columns(k, &solution))
}

/// Whether `v` is a sum of columns of `a`.
pub fn in_column_space(a: &Z2Matrix, v: &BitVec) -> Result<bool> {
    if v.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} against {} rows",
            v.len(),
            a.rows
        )));
    }
    let mut basis = ColumnBasis::new(a.rows);
    for c in a.columns() {
        basis.insert(c);
    }
    let mut v = v.clone();
    Ok(basis.reduce(&mut v, None).is_none())
}
