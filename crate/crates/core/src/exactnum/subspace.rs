use alloc::vec::Vec;

use super::{Matrix, Scalar, Vector};

/// A linear subspace of `F^n`, stored as the nonzero rows of a reduced row
/// echelon form. Two subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| Vector::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let m = Matrix::from_fn(vectors.len(), ambient, |i, j| vectors[i][j].clone());
        let e = m.rref();
        let basis = (0..e.pivots.len()).map(|i| Vector(e.matrix.row(i).to_vec())).collect();
        Subspace { ambient, basis, pivots: e.pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient x dim` matrix whose columns are the basis vectors.
    pub fn column_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = Vector::zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                rebuilt = rebuilt.add_scaled(c, b);
            }
        }
        (rebuilt.0 == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        let mut v = Vector::zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = v.add_scaled(c, b);
            }
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, &all)
    }

    /// Linear functionals (as vectors) vanishing exactly on this subspace.
    pub fn annihilator(&self) -> Vec<Vector> {
        if self.basis.is_empty() {
            return (0..self.ambient).map(|i| Vector::unit(self.ambient, i)).collect();
        }
        let m = Matrix::from_fn(self.dim(), self.ambient, |i, j| self.basis[i][j].clone());
        m.kernel_basis()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let ann = other.annihilator();
        if ann.is_empty() {
            return self.clone();
        }
        // c with sum_i c_i (f . b_i) = 0 for every functional f
        let m = Matrix::from_fn(ann.len(), self.dim(), |i, j| ann[i].dot(&self.basis[j]));
        let ker = m.kernel_basis();
        let vs: Vec<Vector> = ker.iter().map(|c| self.combine(c)).collect();
        Subspace::from_spanning(self.ambient, &vs)
    }

    /// Image of this subspace under a linear map given as a square matrix.
    pub fn image(&self, m: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_spanning(m.rows(), &vs)
    }
}
