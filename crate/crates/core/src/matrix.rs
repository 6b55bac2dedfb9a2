//! Dense matrices over GF(p).
//!
//! Matrices act on row vectors from the right: `v -> v * A`. Products
//! therefore read in the order the maps are applied, `v (A B) = (v A) B`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Prime;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Mat {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Mat {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Mat {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting unreduced values.
    pub fn new(p: Prime, rows: usize, cols: usize, entries: &[u32]) -> Result<Mat> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeError(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let data = entries.iter().map(|&v| p.check_entry(v)).collect::<Result<Vec<_>>>()?;
        Ok(Mat { p, rows, cols, data })
    }

    pub fn from_rows(p: Prime, cols: usize, rows: &[Vec<u32>]) -> Result<Mat> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeError(format!("row of length {} where {cols} expected", r.len())));
            }
            entries.extend_from_slice(r);
        }
        Mat::new(p, rows.len(), cols, &entries)
    }

    pub(crate) fn from_raw(p: Prime, rows: usize, cols: usize, data: Vec<u8>) -> Mat {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|&v| v < p.get()));
        Mat { p, rows, cols, data }
    }

    pub(crate) fn from_row_slices<'a>(p: Prime, cols: usize, rows: impl IntoIterator<Item = &'a [u8]>) -> Mat {
        let mut data = Vec::new();
        let mut count = 0;
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
            count += 1;
        }
        Mat::from_raw(p, count, cols, data)
    }

    #[inline]
    pub fn prime(&self) -> Prime {
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
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        assert!(v < self.p.get(), "entry {v} not reduced mod {}", self.p);
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(|r| r.iter().map(|&v| v as u32).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_modulus(&self, other: &Mat) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }

    /// Exact product; `self.cols` must equal `other.rows`.
    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_modulus(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Mat) -> Mat {
        let p = self.p;
        let mut out = vec![0u8; self.rows * other.cols];
        for i in 0..self.rows {
            let out_row = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o = p.add(*o, p.mul(a, b));
                }
            }
        }
        Mat::from_raw(p, self.rows, other.cols, out)
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.rows);
        let p = self.p;
        let mut out = vec![0u8; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                *o = p.add(*o, p.mul(a, b));
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_modulus(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeError("cannot add matrices of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.p.add(a, b)).collect();
        Ok(Mat::from_raw(self.p, self.rows, self.cols, data))
    }

    pub fn scale(&self, c: u8) -> Mat {
        let data = self.data.iter().map(|&a| self.p.mul(a, c)).collect();
        Mat::from_raw(self.p, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Mat {
        let mut data = vec![0u8; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        Mat::from_raw(self.p, self.cols, self.rows, data)
    }

    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.check_modulus(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeError("vstack of matrices with different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat::from_raw(self.p, self.rows + other.rows, self.cols, data))
    }

    /// Columns `range` of every row.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Mat {
        let width = range.len();
        let mut data = Vec::with_capacity(self.rows * width);
        for r in self.row_iter() {
            data.extend_from_slice(&r[range.clone()]);
        }
        Mat::from_raw(self.p, self.rows, width, data)
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pivot_row) = (lead..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(lead, pivot_row);
            let inv = p.inv(m.get(lead, col)).expect("pivot is nonzero");
            for c in 0..m.cols {
                let v = m.get(lead, c);
                m.data[lead * m.cols + c] = p.mul(v, inv);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = p.sub(m.get(r, c), p.mul(factor, m.get(lead, c)));
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            lead += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis (as rows) of the nonzero rows of the RREF, i.e. of the row space.
    pub fn row_space_basis(&self) -> Mat {
        let r = self.rref();
        let k = r.rank();
        Mat::from_raw(self.p, k, self.cols, r.matrix.data[..k * self.cols].to_vec())
    }

    /// Basis of the left kernel `{v : v * self = 0}`, one vector per row.
    pub fn left_kernel_basis(&self) -> Mat {
        // v A = 0  <=>  A^T v^T = 0; solve the right kernel of A^T
        let t = self.transpose();
        let r = t.rref();
        let n = self.rows;
        let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
        let p = self.p;
        let mut data = Vec::with_capacity(free.len() * n);
        for &f in &free {
            let mut v = vec![0u8; n];
            v[f] = 1;
            for (i, &pc) in r.pivots.iter().enumerate() {
                v[pc] = p.neg(r.matrix.get(i, f));
            }
            data.extend_from_slice(&v);
        }
        Mat::from_raw(p, free.len(), n, data)
    }

    pub fn invert(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeError(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let mut aug = Mat::zeros(self.p, n, 2 * n);
        for r in 0..n {
            aug.data[r * 2 * n..r * 2 * n + n].copy_from_slice(self.row(r));
            aug.data[r * 2 * n + n + r] = 1;
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return Err(Error::NotInvertible);
        }
        Ok(red.matrix.columns(n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solves `x * self = rhs` for every row of `rhs`. Returns `None` when some
    /// row is outside the row space. Free coordinates are set to zero.
    pub fn solve_left(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.cols, rhs.cols, "solve_left width mismatch");
        let p = self.p;
        // Work on [self^T | rhs^T]: self^T x^T = rhs^T
        let at = self.transpose();
        let bt = rhs.transpose();
        let k = self.rows;
        let mut aug = Mat::zeros(p, at.rows, k + bt.cols);
        for r in 0..at.rows {
            aug.data[r * (k + bt.cols)..r * (k + bt.cols) + k].copy_from_slice(at.row(r));
            aug.data[r * (k + bt.cols) + k..(r + 1) * (k + bt.cols)].copy_from_slice(bt.row(r));
        }
        let red = aug.rref();
        if red.pivots.iter().any(|&c| c >= k) {
            return None;
        }
        let mut x = Mat::zeros(p, rhs.rows, k);
        for (i, &pc) in red.pivots.iter().enumerate() {
            for j in 0..rhs.rows {
                x.data[j * k + pc] = red.matrix.get(i, k + j);
            }
        }
        Some(x)
    }

    /// Parses the `"1,0;0,1"` text format: rows split on `;`, entries on `,`.
    pub fn parse(s: &str, p: Prime) -> Result<Mat> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        let mut rows = Vec::new();
        for row in s.split(';') {
            let entries = row
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad entry {:?}", e.trim())))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(entries);
        }
        let cols = rows[0].len();
        Mat::from_rows(p, cols, &rows)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn m(p: u32, s: &str) -> Mat {
        Mat::parse(s, gf(p)).unwrap()
    }

    #[test]
    fn product_examples() {
        assert_eq!(m(2, "1,0;0,0").mul(&m(2, "0,0;0,1")).unwrap(), m(2, "0,0;0,0"));
        let swap = m(2, "0,1;1,0");
        assert_eq!(swap.mul(&swap).unwrap(), Mat::identity(gf(2), 2));
        let a = m(3, "1,2;0,2");
        assert_eq!(Mat::identity(gf(3), 2).mul(&a).unwrap(), a);
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = m(3, "1,2;0,1");
        let b = m(3, "0,1;1,0");
        let v = [2u8, 1];
        assert_eq!(a.mul(&b).unwrap().apply(&v), b.apply(&a.apply(&v)));
    }

    #[test]
    fn shape_and_modulus_errors() {
        assert!(matches!(m(2, "1,0").mul(&m(2, "1,0")), Err(Error::ShapeError(_))));
        assert!(matches!(m(2, "1").mul(&m(3, "1")), Err(Error::ModulusMismatch(2, 3))));
        assert!(matches!(m(2, "1,0").invert(), Err(Error::ShapeError(_))));
    }

    #[test]
    fn rank_kernel_of_all_ones() {
        let a = m(2, "1,1;1,1");
        assert_eq!(a.rank(), 1);
        assert_eq!(a.row_space_basis(), m(2, "1,1"));
        assert_eq!(a.left_kernel_basis(), m(2, "1,1"));
    }

    #[test]
    fn zero_and_identity_kernels() {
        let z = Mat::zeros(gf(3), 3, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.left_kernel_basis().rows(), 3);
        let i = Mat::identity(gf(3), 3);
        assert_eq!(i.rank(), 3);
        assert_eq!(i.left_kernel_basis().rows(), 0);
    }

    #[test]
    fn inverses() {
        let swap = m(2, "0,1;1,0");
        assert_eq!(swap.invert().unwrap(), swap);
        assert_eq!(m(2, "1,0;0,0").invert(), Err(Error::NotInvertible));
        let u = m(2, "1,1;0,1");
        assert_eq!(u.invert().unwrap(), u);
        let g = m(5, "2,1;3,3");
        assert_eq!(g.mul(&g.invert().unwrap()).unwrap(), Mat::identity(gf(5), 2));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(Mat::parse("1,2", gf(2)), Err(Error::EntryOutOfRange { .. })));
        assert!(matches!(Mat::parse("1,x", gf(2)), Err(Error::Parse(_))));
        assert!(matches!(Mat::parse("1,0;1", gf(2)), Err(Error::ShapeError(_))));
        assert_eq!(m(3, "1,2;0,1").to_string(), "1,2;0,1");
    }

    #[test]
    fn solve_left_finds_coordinates() {
        let a = m(3, "1,0,2;0,1,1");
        let rhs = m(3, "2,1,2");
        let x = a.solve_left(&rhs).unwrap();
        assert_eq!(x.mul(&a).unwrap(), rhs);
        assert!(a.solve_left(&m(3, "0,0,1")).is_none());
    }
}
