//! Symmetric bilinear forms and Frobenius forms, `(uv, w) = (u, vw)`.

use alloc::format;
use alloc::vec::Vec;

use crate::algebra::{Algebra, SubspaceBasis};
use crate::catalog::NsType;
use crate::exactnum::{dot, Matrix, NumError, Scalar, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("form is degenerate on the given subspace (rank {rank} < {dim})")]
    Degenerate { rank: usize, dim: usize },
    #[error("vector of length {found} used with a form of size {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no type assigned to the pair ({0}, {1})")]
    Unassigned(usize, usize),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// A symmetric bilinear form, stored as its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn new(gram: Matrix) -> Result<Self, NumError> {
        if !gram.is_symmetric() {
            return Err(NumError::NotSymmetric);
        }
        gram.field()?;
        Ok(BilinearForm { gram })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &self.gram.mul_vec(v))
    }

    pub fn is_positive_definite(&self) -> Result<bool, NumError> {
        self.gram.is_positive_definite()
    }

    /// Whether `(b_i b_j, b_k) = (b_i, b_j b_k)` on every basis triple.
    pub fn is_frobenius(&self, alg: &Algebra) -> bool {
        let n = alg.dim();
        if n != self.dim() {
            return false;
        }
        let e = |i| alg.basis_vector(i);
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| self.eval(alg.product(i, j), &e(k)) == self.eval(&e(i), alg.product(j, k)))
            })
        })
    }
}

/// `(v, v)`.
pub fn length(f: &BilinearForm, v: &[Scalar]) -> Result<Scalar, FormError> {
    if v.len() != f.dim() {
        return Err(FormError::DimensionMismatch { expected: f.dim(), found: v.len() });
    }
    Ok(f.eval(v, v))
}

/// Index of the unknown `g_{ij}` (`i <= j`) among the upper-triangular
/// Gram entries.
fn slot(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

/// Basis of the space of all Frobenius forms on `alg`.
pub fn frobenius_space(alg: &Algebra) -> Vec<BilinearForm> {
    let n = alg.dim();
    let unknowns = n * (n + 1) / 2;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                // (b_i b_j, b_k) - (b_i, b_j b_k)
                let mut row = alloc::vec![Scalar::zero(); unknowns];
                for (l, c) in alg.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        row[slot(n, l, k)] += c;
                    }
                }
                for (l, c) in alg.product(j, k).iter().enumerate() {
                    if !c.is_zero() {
                        row[slot(n, i, l)] -= c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..unknowns).map(|u| Vector::unit(unknowns, u)).collect()
    } else {
        Matrix::from_rows(rows).expect("one field").kernel_basis()
    };
    basis
        .into_iter()
        .map(|v| {
            let g = Matrix::from_fn(n, n, |i, j| v[slot(n, i, j)].clone());
            BilinearForm { gram: g }
        })
        .collect()
}

/// `{v : (v, s) = 0 for all s in sub}`; requires the form to be
/// non-degenerate on `sub`.
pub fn orthogonal_complement(f: &BilinearForm, sub: &SubspaceBasis) -> Result<SubspaceBasis, FormError> {
    let n = f.dim();
    if sub.ambient_dim() != n {
        return Err(FormError::DimensionMismatch { expected: n, found: sub.ambient_dim() });
    }
    if sub.is_zero() {
        return Ok(Subspace::full(n));
    }
    let vs = sub.vectors();
    let restricted = Matrix::from_fn(vs.len(), vs.len(), |i, j| f.eval(&vs[i], &vs[j]));
    let rank = restricted.rank();
    if rank < vs.len() {
        return Err(FormError::Degenerate { rank, dim: vs.len() });
    }
    let rows: Vec<Vec<Scalar>> = vs.iter().map(|v| f.gram.mul_vec(v).0).collect();
    let m = Matrix::from_rows(rows)?;
    Ok(Subspace::from_spanning(n, &m.kernel_basis()))
}

/// Gram matrix of a set of `size` axes whose pairwise Norton-Sakuma types are
/// given by `pair_type(i, j)` for `i < j`: unit diagonal, and `(a_0, a_1)` of
/// the assigned type off the diagonal.
pub fn gram_from_shape(
    size: usize,
    mut pair_type: impl FnMut(usize, usize) -> Option<NsType>,
) -> Result<Matrix, FormError> {
    let mut values = alloc::collections::BTreeMap::new();
    let mut m = Matrix::identity(size);
    for i in 0..size {
        for j in i + 1..size {
            let t = pair_type(i, j).ok_or(FormError::Unassigned(i, j))?;
            let v = values.entry(t).or_insert_with(|| t.axis_product_value()).clone();
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
        }
    }
    Ok(m)
}

impl core::fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for i in 0..self.dim() {
            let row: Vec<_> = self.gram.row(i).iter().map(|x| format!("{x}")).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
