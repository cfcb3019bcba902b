use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

use super::subspace::FpSubspace;

/// Dense matrix over `F_p`, row-major. Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix[{}x{} mod {}]", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::input(format!("row of length {} in a matrix with {cols} columns", r.len())));
            }
            data.extend(r.iter().map(|&x| x % p));
        }
        Ok(FpMatrix { p, rows: rows.len(), cols, data })
    }

    pub fn from_flat(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FpMatrix { p, rows, cols, data: data.into_iter().map(|x| x % p).collect() }
    }

    /// Scalar multiple of the identity.
    pub fn scalar(p: u32, n: usize, c: u32) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = c % p;
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..self.cols).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for r in 0..self.rows {
            let orow = &mut out[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b as u64;
                }
            }
            // p < 2^16 keeps the accumulated sum below 2^64 for any practical inner dimension.
            for o in orow.iter_mut() {
                *o %= p;
            }
        }
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: other.cols, data: out.into_iter().map(|x| x as u32).collect() })
    }

    pub fn checked_add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::input(format!("cannot add {:?} and {:?}", self.shape(), other.shape())));
        }
        let p = self.p;
        Ok(FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect(),
        })
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p as u64;
        let c = c as u64 % p;
        FpMatrix { data: self.data.iter().map(|&x| (x as u64 * c % p) as u32).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> FpMatrix {
        self.scale(self.p - 1)
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let p = self.p as u64;
        (0..self.rows)
            .map(|r| (self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32)
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.cols {
            return Err(Error::input("vstack column mismatch"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows {
            return Err(Error::input("hstack row mismatch"));
        }
        let mut m = FpMatrix::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            m.data[r * m.cols..r * m.cols + self.cols].copy_from_slice(self.row(r));
            m.data[r * m.cols + self.cols..(r + 1) * m.cols].copy_from_slice(other.row(r));
        }
        Ok(m)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> FpMatrix {
        let mut m = FpMatrix::zeros(self.p, rows.len(), cols.len());
        for (i, r) in rows.enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.data[i * m.cols + j] = self.get(r, c);
            }
        }
        m
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.data[r * cols + c] != 0) else { continue };
            if pr != row {
                for k in 0..cols {
                    self.data.swap(pr * cols + k, row * cols + k);
                }
            }
            let inv = inv_mod(self.data[row * cols + c], self.p) as u64;
            for k in c..cols {
                self.data[row * cols + k] = (self.data[row * cols + k] as u64 * inv % p) as u32;
            }
            let pivot_row: Vec<u32> = self.data[row * cols + c..(row + 1) * cols].to_vec();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.data[r * cols + c] as u64;
                if f == 0 {
                    continue;
                }
                let neg = p - f;
                for (k, &pv) in pivot_row.iter().enumerate() {
                    let idx = r * cols + c + k;
                    self.data[idx] = ((self.data[idx] as u64 + neg * pv as u64) % p) as u32;
                }
            }
            pivots.push(c);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{v : A v = 0}`
    pub fn kernel(&self) -> FpSubspace {
        let (r, pivots) = self.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![0u32; self.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let a = r.get(i, f);
                v[pc] = (p - a) % p;
            }
            basis.push(v);
        }
        FpSubspace::from_vectors(p, self.cols, &basis)
    }

    /// Column space.
    pub fn image(&self) -> FpSubspace {
        FpSubspace::from_vectors(self.p, self.rows, &self.transpose().row_vecs())
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&FpMatrix::identity(self.p, n)).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Mul for &FpMatrix {
    type Output = FpMatrix;

    fn mul(self, rhs: &FpMatrix) -> FpMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl Add for &FpMatrix {
    type Output = FpMatrix;

    fn add(self, rhs: &FpMatrix) -> FpMatrix {
        self.checked_add(rhs).expect("matrix shapes agree")
    }
}

impl Sub for &FpMatrix {
    type Output = FpMatrix;

    fn sub(self, rhs: &FpMatrix) -> FpMatrix {
        self.checked_add(&rhs.neg()).expect("matrix shapes agree")
    }
}
