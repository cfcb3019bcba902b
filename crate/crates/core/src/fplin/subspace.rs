use crate::error::{Error, Result};

use super::matrix::FpMatrix;

/// Subspace of `F_p^n` stored by its reduced row echelon basis, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpSubspace {
    p: u32,
    ambient: usize,
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl FpSubspace {
    pub fn zero(p: u32, ambient: usize) -> Self {
        FpSubspace { p, ambient, basis: FpMatrix::zeros(p, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        FpSubspace { p, ambient, basis: FpMatrix::identity(p, ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the given vectors.
    pub fn from_vectors(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(p, ambient);
        }
        let m = FpMatrix::from_rows(p, ambient, vectors).expect("vectors have the ambient length");
        Self::row_space(&m)
    }

    pub fn row_space(m: &FpMatrix) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0..pivots.len(), 0..m.cols());
        FpSubspace { p: m.prime(), ambient: m.cols(), basis, pivots }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as the rows of a `dim x ambient` matrix.
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    fn check(&self, other: &FpSubspace) -> Result<()> {
        if self.ambient != other.ambient || self.p != other.p {
            return Err(Error::input(format!(
                "subspaces of F_{}^{} and F_{}^{} are not comparable",
                self.p, self.ambient, other.p, other.ambient
            )));
        }
        Ok(())
    }

    /// Coordinates with respect to the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let p = self.p as u64;
        let coords: Vec<u32> = self.pivots.iter().map(|&c| v[c]).collect();
        let mut residual: Vec<u64> = v.iter().map(|&x| x as u64).collect();
        for (i, &a) in coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let neg = p - a as u64;
            for (r, &b) in residual.iter_mut().zip(self.basis.row(i)) {
                *r = (*r + neg * b as u64) % p;
            }
        }
        residual.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Vector with the given coordinates.
    pub fn combination(&self, coords: &[u32]) -> Vec<u32> {
        assert_eq!(coords.len(), self.dim());
        let p = self.p as u64;
        let mut out = vec![0u64; self.ambient];
        for (i, &a) in coords.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = (*o + a as u64 * b as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        self.ambient == other.ambient && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &FpSubspace) -> Result<FpSubspace> {
        self.check(other)?;
        Ok(FpSubspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection via the kernel of `[U^T | -W^T]`.
    pub fn intersect(&self, other: &FpSubspace) -> Result<FpSubspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FpSubspace::zero(self.p, self.ambient));
        }
        let stacked = self.basis.transpose().hstack(&other.basis.neg().transpose())?;
        let k = self.dim();
        let vecs: Vec<Vec<u32>> = stacked
            .kernel()
            .basis_vectors()
            .into_iter()
            .map(|sol| self.combination(&sol[..k]))
            .collect();
        Ok(FpSubspace::from_vectors(self.p, self.ambient, &vecs))
    }

    /// Image of the subspace under a linear map (`m` acting on columns).
    pub fn map(&self, m: &FpMatrix) -> FpSubspace {
        let vecs: Vec<Vec<u32>> = self.basis_vectors().iter().map(|v| m.apply(v)).collect();
        FpSubspace::from_vectors(self.p, m.rows(), &vecs)
    }

    /// `{w : <w, u> = 0 for all u}` under the standard bilinear form.
    pub fn annihilator(&self) -> FpSubspace {
        if self.is_zero() {
            return FpSubspace::full(self.p, self.ambient);
        }
        self.basis.kernel()
    }

    pub fn is_invariant_under(&self, m: &FpMatrix) -> bool {
        self.basis_vectors().iter().all(|v| self.contains(&m.apply(v)))
    }

    /// Matrix of `m` restricted to this (invariant) subspace in the echelon basis.
    pub fn restricted_matrix(&self, m: &FpMatrix) -> Option<FpMatrix> {
        let d = self.dim();
        let mut out = FpMatrix::zeros(self.p, d, d);
        for (j, v) in self.basis_vectors().iter().enumerate() {
            let coords = self.coordinates(&m.apply(v))?;
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Some(out)
    }
}
