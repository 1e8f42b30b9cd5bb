//! Exact dense linear algebra over the prime field `F_p`.
//!
//! Everything downstream (Hom spaces, Ext groups, closure scans) reduces to
//! rank / kernel / solve on small matrices, so these are kept simple and
//! deterministic: Gaussian elimination with first-nonzero pivoting, canonical
//! representatives `0..p-1`, no floating point anywhere.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
}

/// A validated prime modulus. Copy it around freely; all matrix constructors
/// take one so that zero-sized matrices still know their field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    /// Canonical representative of an arbitrary integer.
    pub fn reduce(self, x: i64) -> u32 {
        let p = self.p as i64;
        (((x % p) + p) % p) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        ((a as u64 + p - b as u64) % p) as u32
    }

    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse via Fermat; panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    fn pow(self, mut base: u32, mut e: u32) -> u32 {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over `F_p`. Zero-dimensional shapes are first-class
/// citizens: kernels of empty maps, maps into zero spaces and so on all show
/// up constantly when quiver vertices carry dimension 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<u32>,
}

impl Mat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from integer rows, reducing entries mod p.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows in matrix literal"
        );
        let mut m = Mat::zero(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.reduce(x));
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

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(r < self.rows && c < self.cols);
        debug_assert!(v < self.field.p);
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.field, other.field);
        let mut out = self.clone();
        for (x, &y) in out.entries.iter_mut().zip(&other.entries) {
            *x = self.field.add(*x, y);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.field, other.field);
        let mut out = self.clone();
        for (x, &y) in out.entries.iter_mut().zip(&other.entries) {
            *x = self.field.sub(*x, y);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Mat {
        let mut out = self.clone();
        for x in out.entries.iter_mut() {
            *x = self.field.mul(*x, c);
        }
        out
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        assert_eq!(self.field, other.field);
        let p = self.field.p as u64;
        let mut out = Mat::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) as u64;
                    out.set(i, j, ((cur + a * other.get(k, j) as u64) % p) as u32);
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[a | b | ...]`. All blocks must agree on rows.
    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&Mat]) -> Mat {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            assert_eq!(b.field, field);
            for r in 0..rows {
                for c in 0..b.cols {
                    out.set(r, off + c, b.get(r, c));
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation. All blocks must agree on columns.
    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&Mat]) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zero(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            assert_eq!(b.field, field);
            for r in 0..b.rows {
                for c in 0..cols {
                    out.set(off + r, c, b.get(r, c));
                }
            }
            off += b.rows;
        }
        out
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn write_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        let mut out = Mat::zero(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot column indices.
    /// First nonzero entry in each column is chosen as pivot, so the result
    /// is a deterministic function of the input.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    let a = m.get(row, c);
                    let b = m.get(pr, c);
                    m.set(row, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = f.inv(m.get(row, col));
            for c in 0..m.cols {
                m.set(row, c, f.mul(m.get(row, c), inv));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, returned as the columns of a
    /// `cols x (cols - rank)` matrix. `self * kernel_basis(self) == 0`.
    pub fn kernel_basis(&self) -> Mat {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zero(f, self.cols, free.len());
        for (kcol, &fc) in free.iter().enumerate() {
            k.set(fc, kcol, 1);
            for (prow, &pc) in pivots.iter().enumerate() {
                k.set(pc, kcol, f.neg(r.get(prow, fc)));
            }
        }
        k
    }

    /// Rows spanning the left null space: `result * self == 0` with
    /// `rows(self) - rank(self)` independent rows.
    pub fn left_kernel_rows(&self) -> Mat {
        self.transpose().kernel_basis().transpose()
    }

    /// Solve `self * x = b` column by column; `None` when inconsistent.
    /// Free variables are set to zero, so the solution is deterministic.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(
            self.rows, b.rows,
            "solve: lhs has {} rows, rhs has {}",
            self.rows, b.rows
        );
        assert_eq!(self.field, b.field);
        let aug = Mat::hstack(self.field, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Mat::zero(self.field, self.cols, b.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(prow, self.cols + j));
            }
        }
        Some(x)
    }

    /// Basis of the column space: the pivot columns of the original matrix.
    pub fn col_space_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        let mut out = Mat::zero(self.field, self.rows, pivots.len());
        for (j, &c) in pivots.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// Row-major entries, exposed for serialization.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}
