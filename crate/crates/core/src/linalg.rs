//! Dense matrices over `F_p` and exact row reduction.
//!
//! Every hom-space, kernel and splitting test in the crate bottoms out here.
//! Pivoting is deterministic: columns are scanned left to right and, within a
//! column, the first nonzero entry at or below the current row is used.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, is_supported_prime, mul_mod, neg_mod, sub_mod, Fp};

/// A column vector, stored as residues.
pub type Vector = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Output of [`solve_linear`]: one particular solution and a basis of the
/// homogeneous solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Mat,
    pub kernel: Vec<Vector>,
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        debug_assert!(is_supported_prime(p));
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn scalar(p: u32, n: usize, c: u32) -> Self {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    /// Builds a matrix from rows of signed integers, reducing mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Mat::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = crate::field::reduce_signed(v, p);
            }
        }
        m
    }

    /// Builds a matrix from row-major residues (already reduced or not).
    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Mat { p, rows, cols, data: data.into_iter().map(|v| v % p).collect() }
    }

    /// Builds a `rows x cols.len()` matrix whose columns are the given vectors.
    pub fn from_cols(p: u32, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Mat::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v % p;
            }
        }
        m
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Mat::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % p;
            }
        }
        m
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
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
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn entry(&self, r: usize, c: usize) -> Fp {
        Fp::new(self.get(r, c), self.p)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    /// `Some(c)` when the matrix is `c * I`.
    pub fn as_scalar(&self) -> Option<u32> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(0);
        }
        let c = self.get(0, 0);
        let ok = (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { c } else { 0 }));
        ok.then_some(c)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        assert_eq!(self.p, rhs.p, "mixed moduli");
        let p = self.p;
        let mut out = Mat::zeros(p, self.rows, rhs.cols);
        if self.rows == 0 || rhs.cols == 0 || self.cols == 0 {
            return out;
        }
        // Products are below 2^32, so a u64 accumulator cannot overflow here.
        let mut acc = vec![0u64; rhs.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (slot, &b) in acc.iter_mut().zip(rrow) {
                    *slot += a as u64 * b as u64;
                }
            }
            for (j, a) in acc.iter().enumerate() {
                out.data[i * rhs.cols + j] = (a % p as u64) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (k, &x) in v.iter().enumerate() {
                    acc = (acc + self.data[i * self.cols + k] as u64 * x as u64) % self.p as u64;
                }
                acc as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let p = self.p;
        Mat {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| add_mod(a, b, p)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in difference");
        let p = self.p;
        Mat {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| sub_mod(a, b, p)).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        let p = self.p;
        Mat { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| neg_mod(a, p)).collect() }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let p = self.p;
        let c = c % p;
        Mat { p, rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| mul_mod(a, c, p)).collect() }
    }

    /// `self + c * rhs`.
    pub fn add_scaled(&self, rhs: &Mat, c: u32) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let p = self.p;
        Mat {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| add_mod(a, mul_mod(b, c % p, p), p)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Mat::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horizontal concatenation; all blocks share a row count.
    pub fn hstack(p: u32, rows: usize, blocks: &[&Mat]) -> Mat {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(p, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "row mismatch in hstack");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.data[i * cols + off + j] = b.get(i, j);
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks share a column count.
    pub fn vstack(p: u32, cols: usize, blocks: &[&Mat]) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols, "column mismatch in vstack");
            data.extend_from_slice(&b.data);
        }
        Mat { p, rows, cols, data }
    }

    /// Block diagonal matrix.
    pub fn block_diag(p: u32, blocks: &[&Mat]) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j);
            }
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        Mat::from_fn(self.p, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.p, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.p, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Row-major flattening.
    pub fn flatten(&self) -> Vector {
        self.data.clone()
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn kernel_basis(&self) -> Vec<Vector> {
        kernel_basis(self)
    }

    pub fn image_basis(&self) -> Vec<Vector> {
        image_basis(self)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Mat::hstack(self.p, n, &[self, &Mat::identity(self.p, n)]);
        let r = rref(&aug);
        if r.pivots.iter().take_while(|&&c| c < n).count() < n {
            return None;
        }
        Some(r.reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// A left inverse `L` with `L * self = I` for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Mat> {
        let t = rref(&self.transpose());
        if t.rank != self.cols {
            return None;
        }
        // Pivot columns of the transpose are independent rows of `self`.
        let sub = self.select_rows(&t.pivots);
        let inv = sub.inverse()?;
        let mut out = Mat::zeros(self.p, self.cols, self.rows);
        for (k, &r) in t.pivots.iter().enumerate() {
            for i in 0..self.cols {
                out.set(i, r, inv.get(i, k));
            }
        }
        Some(out)
    }

    /// Extends the (independent) columns of `self` to a basis of the ambient
    /// space, returning the added standard vectors' indices.
    pub fn complement_indices(&self) -> Vec<usize> {
        let n = self.rows;
        let aug = Mat::hstack(self.p, n, &[self, &Mat::identity(self.p, n)]);
        let r = rref(&aug);
        r.pivots.iter().filter(|&&c| c >= self.cols).map(|&c| c - self.cols).collect()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} mod {}]", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with deterministic pivoting.
pub fn rref(m: &Mat) -> Rref {
    let p = m.p;
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        if inv != 1 {
            for j in c..cols {
                a[r * cols + j] = mul_mod(a[r * cols + j], inv, p);
            }
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a[i * cols + c];
            if factor == 0 {
                continue;
            }
            let nf = neg_mod(factor, p) as u64;
            for j in c..cols {
                let pv = a[r * cols + j];
                if pv != 0 {
                    let cur = a[i * cols + j] as u64;
                    a[i * cols + j] = ((cur + nf * pv as u64) % p as u64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = pivots.len();
    Rref { reduced: Mat { p, rows, cols, data: a }, pivots, rank }
}

/// Basis of the right null space, one vector per free column.
pub fn kernel_basis(m: &Mat) -> Vec<Vector> {
    let r = rref(m);
    kernel_from_rref(&r, m.cols)
}

fn kernel_from_rref(r: &Rref, cols: usize) -> Vec<Vector> {
    let p = r.reduced.p;
    let mut is_pivot = vec![false; cols];
    for &c in &r.pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::with_capacity(cols - r.rank);
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1 % p;
        for (i, &pc) in r.pivots.iter().enumerate() {
            v[pc] = neg_mod(r.reduced.get(i, free), p);
        }
        out.push(v);
    }
    out
}

/// Basis of the column space: the original columns at pivot positions.
pub fn image_basis(m: &Mat) -> Vec<Vector> {
    rref(m).pivots.iter().map(|&c| m.col(c)).collect()
}

/// Solves `a * x = b`. `Ok(None)` when the system is inconsistent.
pub fn solve_linear(a: &Mat, b: &Mat) -> Result<Option<Solution>> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch { context: "solve_linear", expected: a.rows, found: b.rows });
    }
    if a.p != b.p {
        return Err(Error::ModulusMismatch { left: a.p, right: b.p });
    }
    let p = a.p;
    let aug = Mat::hstack(p, a.rows, &[a, b]);
    let r = rref(&aug);
    if r.pivots.iter().any(|&c| c >= a.cols) {
        return Ok(None);
    }
    let mut x = Mat::zeros(p, a.cols, b.cols);
    for (i, &pc) in r.pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.reduced.get(i, a.cols + j));
        }
    }
    let a_r = Rref { reduced: r.reduced.block(0, r.reduced.rows, 0, a.cols), pivots: r.pivots.clone(), rank: r.rank };
    Ok(Some(Solution { particular: x, kernel: kernel_from_rref(&a_r, a.cols) }))
}

/// Solves `a * x = v` for a single column.
pub fn solve_vec(a: &Mat, v: &[u32]) -> Option<Vector> {
    let b = Mat::from_cols(a.p, v.len(), &[v.to_vec()]);
    solve_linear(a, &b).ok().flatten().map(|s| s.particular.col(0))
}

/// Monic polynomial of least degree with `poly(m) v = 0`, coefficients from the
/// constant term upwards.
pub fn local_min_poly(m: &Mat, v: &[u32]) -> Vector {
    let p = m.p;
    let mut span = SpanBuilder::new(p, v.len());
    let mut krylov: Vec<Vector> = Vec::new();
    let mut cur = v.to_vec();
    while span.insert(&cur) {
        krylov.push(cur.clone());
        cur = m.mul_vec(&cur);
    }
    let a = Mat::from_cols(p, v.len(), &krylov);
    let c = solve_vec(&a, &cur).expect("Krylov vector lies in the span");
    let mut poly: Vector = c.iter().map(|&x| neg_mod(x, p)).collect();
    poly.push(1 % p);
    poly
}

/// Roots in `F_p` of a polynomial given from the constant term upwards, ascending.
pub fn poly_roots(poly: &[u32], p: u32) -> Vec<u32> {
    (0..p).filter(|&x| poly.iter().rev().fold(0u32, |acc, &c| add_mod(mul_mod(acc, x, p), c, p)) == 0).collect()
}

/// Incremental span membership tester: keeps an echelon basis of the vectors
/// inserted so far.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    p: u32,
    len: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(p: u32, len: usize) -> Self {
        SpanBuilder { p, len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduced basis rows, in insertion order.
    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    /// Pivot column of each row of [`SpanBuilder::rows`].
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                let nc = neg_mod(c, p);
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = add_mod(*x, mul_mod(nc, y, p), p);
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], self.p);
        for x in w.iter_mut() {
            *x = mul_mod(*x, inv, self.p);
        }
        // Keep existing rows reduced at the new pivot.
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let nc = neg_mod(c, self.p);
                for (x, &y) in row.iter_mut().zip(&w) {
                    if y != 0 {
                        *x = add_mod(*x, mul_mod(nc, y, self.p), self.p);
                    }
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_and_zero() {
        let id = Mat::identity(2, 2);
        let r = rref(&id);
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 2);
        let z = Mat::zeros(2, 3, 4);
        let r = rref(&z);
        assert!(r.reduced.is_zero());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn rref_all_ones_over_f2() {
        let m = Mat::from_rows(2, &[vec![1, 1], vec![1, 1]]);
        let r = rref(&m);
        assert_eq!(r.reduced, Mat::from_rows(2, &[vec![1, 1], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn solve_examples() {
        let b = Mat::from_rows(5, &[vec![3], vec![4]]);
        let s = solve_linear(&Mat::identity(5, 2), &b).unwrap().unwrap();
        assert_eq!(s.particular, b);
        assert!(s.kernel.is_empty());

        let s = solve_linear(&Mat::zeros(2, 2, 3), &Mat::zeros(2, 2, 1)).unwrap().unwrap();
        assert!(s.particular.is_zero());
        assert_eq!(s.kernel.len(), 3);

        let a = Mat::from_rows(3, &[vec![1, 0], vec![0, 0]]);
        let b = Mat::from_rows(3, &[vec![1], vec![0]]);
        let s = solve_linear(&a, &b).unwrap().unwrap();
        assert_eq!(s.particular, Mat::from_rows(3, &[vec![1], vec![0]]));
        assert_eq!(s.kernel.len(), 1);

        let inconsistent = Mat::from_rows(3, &[vec![0], vec![1]]);
        assert!(solve_linear(&a, &inconsistent).unwrap().is_none());
        assert!(solve_linear(&a, &Mat::zeros(3, 3, 1)).is_err());
    }

    #[test]
    fn kernel_and_image_examples() {
        assert!(kernel_basis(&Mat::identity(2, 3)).is_empty());
        let k = kernel_basis(&Mat::zeros(2, 3, 3));
        assert_eq!(k, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(kernel_basis(&Mat::from_rows(2, &[vec![1, 1]])), vec![vec![1, 1]]);

        assert_eq!(image_basis(&Mat::identity(2, 2)), vec![vec![1, 0], vec![0, 1]]);
        assert!(image_basis(&Mat::zeros(2, 2, 2)).is_empty());
        assert_eq!(image_basis(&Mat::from_rows(2, &[vec![1, 1], vec![1, 1]])), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_and_left_inverse() {
        let m = Mat::from_rows(7, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Mat::from_rows(2, &[vec![1, 1], vec![1, 1]]).inverse().is_none());

        let tall = Mat::from_rows(3, &[vec![1, 0], vec![2, 1], vec![0, 1]]);
        let l = tall.left_inverse().unwrap();
        assert!(l.mul(&tall).is_identity());
    }

    #[test]
    fn min_poly_and_roots() {
        let m = Mat::from_rows(5, &[vec![2, 0], vec![0, 3]]);
        let poly = local_min_poly(&m, &[1, 1]);
        assert_eq!(poly_roots(&poly, 5), vec![2, 3]);
        assert_eq!(poly.len(), 3);
    }

    #[test]
    fn span_builder_tracks_rank() {
        let mut s = SpanBuilder::new(3, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1]));
        assert!(s.contains(&[2, 1, 0]));
        assert_eq!(s.dim(), 2);
    }
}
